//! Seeded synthetic datasets.
//!
//! Blob datasets put two isotropic unit-variance Gaussian clusters at
//! `-(separation/2) e1` (label -1) and `+(separation/2) e1` (label +1).
//! `PatchTexture` emulates square grayscale patches: smoothed noise whose
//! amplitude and brightness depend on the class, min-max scaled to [0, 1]
//! over the whole dataset. It is a qualitative stand-in for image
//! patches, nothing more.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Dataset, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SynthKind {
    TwoBlobs,
    OverlapBlobs,
    PatchTexture,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub n_per_class: usize,
    pub dim: usize,
    /// Distance between class means in within-class standard deviations.
    pub separation: f64,
    pub seed: u64,
}

/// Mean separation used for overlapping blobs unless stated otherwise.
pub const OVERLAP_SEPARATION: f64 = 1.0;
/// Side length of the default 64x64 texture patch.
pub const PATCH_SIDE: usize = 64;

impl SynthSpec {
    pub fn two_blobs(n_per_class: usize, dim: usize, separation: f64, seed: u64) -> Self {
        SynthSpec {
            kind: SynthKind::TwoBlobs,
            n_per_class,
            dim,
            separation,
            seed,
        }
    }

    pub fn overlap_blobs(n_per_class: usize, dim: usize, seed: u64) -> Self {
        SynthSpec {
            kind: SynthKind::OverlapBlobs,
            n_per_class,
            dim,
            separation: OVERLAP_SEPARATION,
            seed,
        }
    }

    pub fn patch_texture(n_per_class: usize, separation: f64, seed: u64) -> Self {
        SynthSpec {
            kind: SynthKind::PatchTexture,
            n_per_class,
            dim: PATCH_SIDE * PATCH_SIDE,
            separation,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_per_class == 0 {
            return Err(Error::invalid("n_per_class must be at least 1"));
        }
        if self.dim == 0 {
            return Err(Error::invalid("dim must be at least 1"));
        }
        if !(self.separation.is_finite() && self.separation >= 0.0) {
            return Err(Error::invalid(format!(
                "separation must be finite and non-negative, got {}",
                self.separation
            )));
        }
        if self.kind == SynthKind::PatchTexture {
            let side = isqrt(self.dim);
            if side * side != self.dim {
                return Err(Error::invalid(format!(
                    "patch-texture dim must be a perfect square (e.g. 4096), got {}",
                    self.dim
                )));
            }
        }
        Ok(())
    }
}

fn isqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// Generates `n_per_class` negatives followed by `n_per_class` positives.
pub fn generate_synthetic(spec: &SynthSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rows = match spec.kind {
        SynthKind::TwoBlobs | SynthKind::OverlapBlobs => blobs(spec, &mut rng),
        SynthKind::PatchTexture => patches(spec, &mut rng),
    };
    Dataset::from_pairs(rows)
}

fn labels(n_per_class: usize) -> impl Iterator<Item = Label> {
    std::iter::repeat_n(Label::Negative, n_per_class).chain(std::iter::repeat_n(Label::Positive, n_per_class))
}

fn blobs(spec: &SynthSpec, rng: &mut ChaCha8Rng) -> Vec<(Vec<f64>, Label)> {
    labels(spec.n_per_class)
        .map(|y| {
            let mut x: Vec<f64> = (0..spec.dim).map(|_| StandardNormal.sample(rng)).collect();
            x[0] += y.sign() * spec.separation / 2.0;
            (x, y)
        })
        .collect()
}

const BLUR_RADIUS: usize = 2;

fn patches(spec: &SynthSpec, rng: &mut ChaCha8Rng) -> Vec<(Vec<f64>, Label)> {
    let side = isqrt(spec.dim);
    let mut rows: Vec<(Vec<f64>, Label)> = labels(spec.n_per_class)
        .map(|y| {
            let noise: Vec<f64> = (0..spec.dim).map(|_| StandardNormal.sample(rng)).collect();
            let smooth = box_blur(&noise, side, BLUR_RADIUS);
            // box blur shrinks the variance by the window area
            let window = (2 * BLUR_RADIUS + 1).pow(2) as f64;
            let amplitude = match y {
                Label::Negative => 1.0,
                Label::Positive => 1.5,
            } * window.sqrt();
            let brightness = y.sign() * spec.separation / (2.0 * side as f64);
            let img = smooth.iter().map(|v| brightness + amplitude * v).collect();
            (img, y)
        })
        .collect();

    let (lo, hi) = rows
        .iter()
        .flat_map(|(x, _)| x.iter())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let range = if hi > lo { hi - lo } else { 1.0 };
    for (x, _) in rows.iter_mut() {
        for v in x.iter_mut() {
            *v = (*v - lo) / range;
        }
    }
    rows
}

/// Mean over a `(2 radius + 1)^2` window, clamped at the borders.
fn box_blur(img: &[f64], side: usize, radius: usize) -> Vec<f64> {
    let mut out = vec![0.0; img.len()];
    for r in 0..side {
        for c in 0..side {
            let (r0, r1) = (r.saturating_sub(radius), (r + radius).min(side - 1));
            let (c0, c1) = (c.saturating_sub(radius), (c + radius).min(side - 1));
            let mut sum = 0.0;
            for rr in r0..=r1 {
                sum += img[rr * side + c0..=rr * side + c1].iter().sum::<f64>();
            }
            out[r * side + c] = sum / ((r1 - r0 + 1) * (c1 - c0 + 1)) as f64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_balanced() {
        let spec = SynthSpec::two_blobs(25, 3, 4.0, 7);
        let a = generate_synthetic(&spec).unwrap();
        assert_eq!(a, generate_synthetic(&spec).unwrap());
        assert_eq!(a.class_counts(), (25, 25));
        assert_eq!(a.dim(), 3);
        assert_ne!(a, generate_synthetic(&SynthSpec { seed: 8, ..spec }).unwrap());
    }

    #[test]
    fn blob_means_sit_on_first_axis() {
        let ds = generate_synthetic(&SynthSpec::two_blobs(2000, 2, 6.0, 1)).unwrap();
        for label in [Label::Negative, Label::Positive] {
            let pts: Vec<_> = ds.iter().filter(|e| e.y == label).collect();
            let m0 = pts.iter().map(|e| e.x[0]).sum::<f64>() / pts.len() as f64;
            let m1 = pts.iter().map(|e| e.x[1]).sum::<f64>() / pts.len() as f64;
            assert!((m0 - 3.0 * label.sign()).abs() < 0.1, "{m0}");
            assert!(m1.abs() < 0.1, "{m1}");
        }
    }

    #[test]
    fn patch_texture_is_unit_scaled() {
        let ds = generate_synthetic(&SynthSpec::patch_texture(3, 1.0, 2)).unwrap();
        assert_eq!(ds.dim(), 4096);
        assert_eq!(ds.len(), 6);
        let all: Vec<f64> = ds.iter().flat_map(|e| e.x.iter().copied()).collect();
        assert_eq!(all.iter().cloned().fold(f64::INFINITY, f64::min), 0.0);
        assert_eq!(all.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 1.0);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate_synthetic(&SynthSpec::two_blobs(0, 2, 1.0, 0)).is_err());
        assert!(generate_synthetic(&SynthSpec::two_blobs(5, 0, 1.0, 0)).is_err());
        assert!(generate_synthetic(&SynthSpec::two_blobs(5, 2, -1.0, 0)).is_err());
        let bad_patch = SynthSpec {
            dim: 4095,
            ..SynthSpec::patch_texture(2, 1.0, 0)
        };
        assert!(generate_synthetic(&bad_patch).is_err());
    }

    #[test]
    fn blur_of_constant_is_constant() {
        let img = vec![2.5; 16];
        assert!(box_blur(&img, 4, 2).iter().all(|&v| (v - 2.5).abs() < 1e-15));
    }
}
