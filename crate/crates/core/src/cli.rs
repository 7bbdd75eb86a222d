//! Batch command-line interface.
//!
//! Exit codes: 0 on success, 1 for data / model / I/O failures, 2 for usage
//! and flag validation errors. All flag values are validated before any
//! input is read.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::data::{
    self, apply_normalizer, fit_normalizer, load_csv, load_features_csv, save_csv, save_model, save_report,
    save_sweep_table, Model, SavedModel, SynthKind, SynthSpec,
};
use crate::error::Error;
use crate::eval::{
    expand_grid, loocv_with, sweep_c_with, LoocvOptions, SelectionGrid, SelectionOptions, SvmParams, Trainer,
};
use crate::loss::stochastic_objective_value;
use crate::solvers::{train_lwa, train_svm};
use crate::types::{validate_cost, EvalReport, FeatureVector, Hyperparameters, PredictionOutcome};

const DEFAULT_LAMBDA: f64 = 1e-3;
const DEFAULT_ITERS: u64 = 100_000;
const DEFAULT_C: f64 = 0.45;

#[derive(Debug, Parser)]
#[command(
    name = "lwa",
    version,
    about = "Linear classification with abstention, SVM and 1-NN baselines"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a model and write it to a JSON model file.
    Train(TrainArgs),
    /// Score a CSV with a saved model.
    Predict(PredictArgs),
    /// Leave-one-out evaluation; writes a JSON report.
    Evaluate(EvaluateArgs),
    /// LOOCV of the abstaining classifier over a grid of abstention costs.
    Sweep(SweepArgs),
    /// Generate a synthetic dataset CSV.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrainAlgo {
    Lwa,
    Svm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalAlgo {
    Lwa,
    Svm,
    Nn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    TwoBlobs,
    OverlapBlobs,
    PatchTexture,
}

#[derive(Debug, Args)]
pub struct HyperFlags {
    /// Abstention cost, in (0, 0.5) [default: 0.45]
    #[arg(long)]
    pub c: Option<f64>,
    /// Regularization of the discriminant weights [default: 1e-3]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Regularization of the rejection weights [default: 1e-3]
    #[arg(long = "lambda-prime")]
    pub lambda_prime: Option<f64>,
    /// Training iterations [default: 100000]
    #[arg(long)]
    pub iters: Option<u64>,
    /// RNG seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, value_enum)]
    pub algo: TrainAlgo,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub hyper: HyperFlags,
    /// Min-max scale features; the scaling is stored in the model file
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Input rows hold features only (no leading label column)
    #[arg(long = "no-labels")]
    pub no_labels: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, value_enum)]
    pub algo: EvalAlgo,
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub hyper: HyperFlags,
    #[arg(long)]
    pub report: PathBuf,
    /// Refit min-max scaling on each fold's training portion
    #[arg(long)]
    pub normalize: bool,
    /// Worker threads [default: available parallelism]
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Re-select c inside every fold over start:stop:step (lwa only)
    #[arg(long = "nested-c-grid")]
    pub nested_c_grid: Option<String>,
    /// Abstention cap for nested selection
    #[arg(long = "max-abstention", default_value_t = 0.25)]
    pub max_abstention: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Abstention costs as start:stop:step, all inside (0, 0.5)
    #[arg(long = "c-grid")]
    pub c_grid: String,
    /// Regularization of the discriminant weights [default: 1e-3]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Regularization of the rejection weights [default: 1e-3]
    #[arg(long = "lambda-prime")]
    pub lambda_prime: Option<f64>,
    /// Training iterations [default: 100000]
    #[arg(long)]
    pub iters: Option<u64>,
    /// RNG seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long)]
    pub normalize: bool,
    /// Worker threads [default: available parallelism]
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Examples per class
    #[arg(long)]
    pub n: usize,
    /// Feature dimension [default: 2, or 4096 for patch-texture]
    #[arg(long)]
    pub dim: Option<usize>,
    /// Distance between class means in standard deviations [default: 4 for two-blobs, 1 otherwise]
    #[arg(long)]
    pub separation: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn validated<T>(r: crate::error::Result<T>) -> CliResult<T> {
    r.map_err(|e| usage(e.to_string()))
}

/// Parses `args` (including the program name) and runs the command,
/// writing human-readable output to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(CliError::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Train(a) => cmd_train(a, out),
        Command::Predict(a) => cmd_predict(a, out),
        Command::Evaluate(a) => cmd_evaluate(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Synth(a) => cmd_synth(a, out),
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Runtime(Error::io(path, e))
}

fn lwa_hyper(flags: &HyperFlags) -> CliResult<Hyperparameters> {
    validated(Hyperparameters::new(
        flags.lambda.unwrap_or(DEFAULT_LAMBDA),
        flags.lambda_prime.unwrap_or(DEFAULT_LAMBDA),
        flags.c.unwrap_or(DEFAULT_C),
        flags.iters.unwrap_or(DEFAULT_ITERS),
        flags.seed.unwrap_or(0),
    ))
}

fn svm_params(flags: &HyperFlags) -> CliResult<SvmParams> {
    if flags.c.is_some() || flags.lambda_prime.is_some() {
        return Err(usage("--c and --lambda-prime only apply to --algo lwa"));
    }
    let p = SvmParams {
        lambda_w: flags.lambda.unwrap_or(DEFAULT_LAMBDA),
        iterations: flags.iters.unwrap_or(DEFAULT_ITERS),
        seed: flags.seed.unwrap_or(0),
    };
    validated(crate::types::validate_lambda("lambda", p.lambda_w))?;
    if p.iterations == 0 {
        return Err(usage("--iters must be at least 1"));
    }
    Ok(p)
}

fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| usage(format!("grid '{spec}' must be start:stop:step")))?;
    let grid = match nums.as_slice() {
        [start, stop, step] => validated(expand_grid(*start, *stop, *step))?,
        [single] => vec![*single],
        _ => return Err(usage(format!("grid '{spec}' must be start:stop:step"))),
    };
    for &c in &grid {
        validated(validate_cost(c))?;
    }
    Ok(grid)
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let threads = match jobs {
        Some(0) => return Err(usage("--jobs must be at least 1")),
        Some(j) => j,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| usage(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn cmd_train(a: TrainArgs, out: &mut dyn Write) -> CliResult<()> {
    enum Plan {
        Lwa(Hyperparameters),
        Svm(SvmParams),
    }
    let plan = match a.algo {
        TrainAlgo::Lwa => Plan::Lwa(lwa_hyper(&a.hyper)?),
        TrainAlgo::Svm => Plan::Svm(svm_params(&a.hyper)?),
    };
    let raw = load_csv(&a.input)?;
    let (data, normalizer) = if a.normalize {
        let p = fit_normalizer(&raw)?;
        (apply_normalizer(&p, &raw)?, Some(p))
    } else {
        (raw, None)
    };

    let started = Instant::now();
    let (model, summary) = match plan {
        Plan::Lwa(h) => {
            let (m, _) = train_lwa(&data, &h)?;
            let obj = stochastic_objective_value(&data, &m)?;
            (Model::Lwa(m), format!("objective={obj:.6}"))
        }
        Plan::Svm(p) => {
            let m = train_svm(&data, p.lambda_w, p.iterations, p.seed)?;
            let hinge: f64 = data
                .iter()
                .map(|e| crate::loss::hinge_loss(e.y, m.h(&e.x)))
                .sum::<f64>()
                / data.len() as f64;
            let obj = 0.5 * p.lambda_w * crate::types::dot(&m.w, &m.w) + hinge;
            (Model::Svm(m), format!("objective={obj:.6}"))
        }
    };
    let elapsed = started.elapsed().as_secs_f64();
    let saved = SavedModel { model, normalizer };
    save_model(&saved, &a.model)?;
    writeln!(
        out,
        "trained {} model: n={} dim={} {} wall={:.3}s -> {}",
        saved.model.kind(),
        data.len(),
        data.dim(),
        summary,
        elapsed,
        a.model.display()
    )
    .map_err(io_err(&a.model))?;
    Ok(())
}

fn cmd_predict(a: PredictArgs, out: &mut dyn Write) -> CliResult<()> {
    let saved = data::load_model(&a.model)?;
    let rows: Vec<FeatureVector> = if a.no_labels {
        load_features_csv(&a.input)?
    } else {
        load_csv(&a.input)?.into_examples().into_iter().map(|e| e.x).collect()
    };
    let mut text = String::from("h_score,r_score,outcome\n");
    let mut rejected = 0usize;
    for x in &rows {
        let outcome = saved.predict_raw(x)?;
        let (h, r) = (outcome.h_score(), outcome.r_score());
        let label = match outcome {
            PredictionOutcome::Rejected { .. } => {
                rejected += 1;
                "REJECT".to_string()
            }
            PredictionOutcome::Accepted { label, .. } => label.to_string(),
        };
        let r = r.map(|v| format!("{v:?}")).unwrap_or_default();
        text.push_str(&format!("{h:?},{r},{label}\n"));
    }
    std::fs::write(&a.output, text).map_err(io_err(&a.output))?;
    writeln!(
        out,
        "predicted {} rows ({} rejected) -> {}",
        rows.len(),
        rejected,
        a.output.display()
    )
    .map_err(io_err(&a.output))?;
    Ok(())
}

/// Table of the headline metrics, one metric per row.
pub fn headline_table(name: &str, r: &EvalReport) -> String {
    let pct = |v: Option<f64>| v.map(|x| format!("{:.1}", 100.0 * x)).unwrap_or_else(|| "n/a".into());
    let mut s = String::new();
    s.push_str(&format!("{:<44}{:>10}\n", "metric", name));
    s.push_str(&format!("{:<44}{:>10}\n", "# Misclassifications", r.n_misclassified));
    s.push_str(&format!("{:<44}{:>10}\n", "# Abstentions", r.n_abstained));
    s.push_str(&format!("{:<44}{:>10}\n", "AUC ROC (%)", pct(r.auc_roc)));
    s.push_str(&format!("{:<44}{:>10}\n", "Accuracy (%)", pct(r.accuracy_on_accepted)));
    s.push_str(&format!(
        "{:<44}{:>10}\n",
        "Accuracy, rejections as errors (%)",
        pct(Some(r.overall_accuracy_counting_rejects_as_errors))
    ));
    s.push_str(&format!(
        "{:<44}{:>10}\n",
        "Abstention fraction (%)",
        pct(Some(r.abstention_fraction))
    ));
    s
}

fn cmd_evaluate(a: EvaluateArgs, out: &mut dyn Write) -> CliResult<()> {
    let trainer = match a.algo {
        EvalAlgo::Lwa => {
            let base = lwa_hyper(&a.hyper)?;
            match &a.nested_c_grid {
                None => Trainer::Lwa(base),
                Some(spec) => {
                    if !(0.0..=1.0).contains(&a.max_abstention) {
                        return Err(usage("--max-abstention must lie in [0, 1]"));
                    }
                    Trainer::LwaTuned {
                        base,
                        grid: SelectionGrid {
                            lambda_w: vec![base.lambda_w],
                            lambda_u: vec![base.lambda_u],
                            c: parse_grid(spec)?,
                        },
                        options: SelectionOptions {
                            max_abstention: a.max_abstention,
                            ..SelectionOptions::default()
                        },
                    }
                }
            }
        }
        EvalAlgo::Svm | EvalAlgo::Nn if a.nested_c_grid.is_some() => {
            return Err(usage("--nested-c-grid only applies to --algo lwa"))
        }
        EvalAlgo::Svm => Trainer::Svm(svm_params(&a.hyper)?),
        EvalAlgo::Nn => {
            let h = &a.hyper;
            if h.c.is_some() || h.lambda.is_some() || h.lambda_prime.is_some() || h.iters.is_some() || h.seed.is_some()
            {
                return Err(usage(
                    "--algo nn takes no hyperparameter flags (--c, --lambda, --lambda-prime, --iters, --seed)",
                ));
            }
            Trainer::Nn
        }
    };
    let data = load_csv(&a.input)?;
    let options = LoocvOptions { normalize: a.normalize };
    let report = with_jobs(a.jobs, || loocv_with(&data, &trainer, &options))??;
    save_report(&report, &a.report)?;
    let name = match a.algo {
        EvalAlgo::Lwa => "LWA",
        EvalAlgo::Svm => "SVM",
        EvalAlgo::Nn => "NN",
    };
    write!(out, "{}", headline_table(name, &report)).map_err(io_err(&a.report))?;
    Ok(())
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    let grid = parse_grid(&a.c_grid)?;
    let base = validated(Hyperparameters::new(
        a.lambda.unwrap_or(DEFAULT_LAMBDA),
        a.lambda_prime.unwrap_or(DEFAULT_LAMBDA),
        grid[0],
        a.iters.unwrap_or(DEFAULT_ITERS),
        a.seed.unwrap_or(0),
    ))?;
    let data = load_csv(&a.input)?;
    let options = LoocvOptions { normalize: a.normalize };
    let points = with_jobs(a.jobs, || sweep_c_with(&data, &base, &grid, &options))??;
    save_sweep_table(&points, &a.output)?;
    writeln!(out, "{:>6} {:>10} {:>10} {:>10}", "c", "abstain", "acc", "auc").map_err(io_err(&a.output))?;
    let fmt = |v: Option<f64>| v.map(|x| format!("{x:.3}")).unwrap_or_else(|| "n/a".into());
    for p in &points {
        writeln!(
            out,
            "{:>6.3} {:>10.3} {:>10} {:>10}",
            p.c,
            p.abstention_fraction,
            fmt(p.accuracy_on_accepted),
            fmt(p.auc_roc)
        )
        .map_err(io_err(&a.output))?;
    }
    Ok(())
}

fn cmd_synth(a: SynthArgs, out: &mut dyn Write) -> CliResult<()> {
    let kind = match a.kind {
        Kind::TwoBlobs => SynthKind::TwoBlobs,
        Kind::OverlapBlobs => SynthKind::OverlapBlobs,
        Kind::PatchTexture => SynthKind::PatchTexture,
    };
    let spec = SynthSpec {
        kind,
        n_per_class: a.n,
        dim: a.dim.unwrap_or(if kind == SynthKind::PatchTexture { 4096 } else { 2 }),
        separation: a.separation.unwrap_or(if kind == SynthKind::TwoBlobs {
            4.0
        } else {
            data::OVERLAP_SEPARATION
        }),
        seed: a.seed,
    };
    validated(spec.validate())?;
    let ds = data::generate_synthetic(&spec)?;
    save_csv(&ds, &a.output)?;
    writeln!(
        out,
        "wrote {} examples of dim {} -> {}",
        ds.len(),
        ds.dim(),
        a.output.display()
    )
    .map_err(io_err(&a.output))?;
    Ok(())
}

impl From<CliError> for Error {
    fn from(e: CliError) -> Self {
        match e {
            CliError::Usage(m) => Error::InvalidInput(m),
            CliError::Runtime(e) => e,
        }
    }
}
