//! Training algorithms: the stochastic sub-gradient solver for the
//! abstaining classifier, a Pegasos linear SVM, a 1-nearest-neighbor
//! baseline, and a brute-force grid minimizer used as a test oracle.

mod lwa;
mod nn;
mod oracle;
mod svm;

pub use lwa::{train_lwa, train_lwa_traced, TrainingTrace};
pub use nn::{predict_nn, train_nn, NnModel};
pub use oracle::{oracle_minimize_lwa, OracleGrid};
pub use svm::train_svm;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform example sampler. ChaCha8 seeded from a `u64`, drawing indices
/// through a 64-bit range so the stream does not depend on pointer width.
pub(crate) struct IndexSampler {
    rng: ChaCha8Rng,
    n: u64,
}

impl IndexSampler {
    pub(crate) fn new(seed: u64, n: usize) -> Self {
        IndexSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n: n as u64,
        }
    }

    #[inline]
    pub(crate) fn next_index(&mut self) -> usize {
        self.rng.random_range(0..self.n) as usize
    }
}
