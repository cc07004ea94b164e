//! Command-line front end: `generate`, `train`, `predict`, `filter`, `eval`.
//!
//! Exit codes: 0 on success, 1 on runtime failure, 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use crate::error::{Error, Result};
use crate::init::{initialize, largest_power_of_two, random_init, InitConfig};
use crate::model_io;
use crate::network::Network;
use crate::postprocess::low_pass;
use crate::signal::{
    csv_column_count, fmt_real, gen_mackey_glass, gen_sine_trend_with_step, load_csv, load_csv_timed, rmse,
    sine_trend_default_step, std_dev, write_file, MackeyGlassParams, TimeSeries, MACKEY_GLASS_BURN_IN,
    MACKEY_GLASS_STRIDE,
};
use crate::trainer::{baseline_train, train, write_log_csv, BaselineConfig, EpochRecord, TrainConfig};

#[derive(Debug, Parser)]
#[command(name = "deep-fourier", version, about = "Fit and extrapolate time series with deep Fourier networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic series as a `t,value` CSV.
    Generate(GenerateArgs),
    /// Initialize and train a model on a CSV series.
    Train(TrainArgs),
    /// Evaluate a model on a grid of inputs (input `n / k` is training sample `n`).
    Predict(PredictArgs),
    /// Zero the output weights of the highest-frequency sinusoid units.
    Filter(FilterArgs),
    /// Report the RMSE of a model against a CSV series.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    SineTrend,
    MackeyGlass,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub series: SeriesKind,
    #[arg(long)]
    pub n: usize,
    /// Accepted for uniformity; both generators are deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sine-trend grid spacing (default 6π/128: three periods per 128 samples).
    #[arg(long)]
    pub step: Option<f64>,
    /// Mackey–Glass integration steps discarded before sampling.
    #[arg(long, default_value_t = MACKEY_GLASS_BURN_IN)]
    pub burn_in: usize,
    /// Mackey–Glass integration steps between emitted samples.
    #[arg(long, default_value_t = MACKEY_GLASS_STRIDE)]
    pub stride: usize,
    #[arg(long, default_value_t = 17.0)]
    pub tau: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// CSV file; with two or more columns the first is read as time.
    #[arg(long)]
    pub data: PathBuf,
    /// Value column (default: the last column).
    #[arg(long)]
    pub column: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, default_value_t = 200_000)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sinusoid units (power of two); default is the largest power of two
    /// not exceeding the series length. Only the first `k` samples are used.
    #[arg(long)]
    pub k: Option<usize>,
    /// Random initialization and fixed-rate training instead of the full pipeline.
    #[arg(long)]
    pub no_fourier_init: bool,
    #[arg(long)]
    pub out_model: PathBuf,
    #[arg(long)]
    pub out_log: Option<PathBuf>,
    #[arg(long, default_value_t = InitConfig::DEFAULT_H)]
    pub h: usize,
    #[arg(long, default_value_t = InitConfig::DEFAULT_S)]
    pub s: f64,
    #[arg(long, default_value_t = InitConfig::DEFAULT_PERTURB_SD)]
    pub perturb_sd: f64,
    #[arg(long, default_value_t = 0.1)]
    pub target_ratio: f64,
    #[arg(long, default_value_t = 0.2)]
    pub guard_ratio: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda0: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub eta0: f64,
    #[arg(long, default_value_t = 1.001)]
    pub lambda_gain: f64,
    #[arg(long, default_value_t = 1.01)]
    pub eta_gain: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eta_cut: f64,
    /// Fixed learning rate for --no-fourier-init.
    #[arg(long, default_value_t = BaselineConfig::default().eta)]
    pub baseline_eta: f64,
    /// Fixed regularization strength for --no-fourier-init.
    #[arg(long, default_value_t = BaselineConfig::default().lambda)]
    pub baseline_lambda: f64,
    /// Weight scale of the random initialization for --no-fourier-init.
    #[arg(long, default_value_t = 0.1)]
    pub baseline_init_sd: f64,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// First network input (0 is the first training sample, 1 is one window later).
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    #[arg(long, default_value_t = 2.0)]
    pub to: f64,
    #[arg(long, default_value_t = 1.0 / 256.0)]
    pub step: f64,
    /// Output CSV `t,value` with `t` in the original time units.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub keep_fraction: f64,
    #[arg(long)]
    pub out_model: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub data: DataArgs,
    /// First data row to score (0-based, after any header).
    #[arg(long, default_value_t = 0)]
    pub from_row: usize,
    /// One past the last data row to score (default: all rows).
    #[arg(long)]
    pub to_row: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Runtime(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Parses `args` (including the program name), runs the command, prints any
/// error to stderr and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command and returns the text it reports on stdout.
pub fn run(command: &Command) -> std::result::Result<String, CliError> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Train(a) => cmd_train(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Filter(a) => cmd_filter(a),
        Command::Eval(a) => cmd_eval(a),
    }
}

pub fn cmd_generate(a: &GenerateArgs) -> std::result::Result<String, CliError> {
    if a.n < 2 {
        return usage("--n must be at least 2");
    }
    let series = match a.series {
        SeriesKind::SineTrend => {
            let step = a.step.unwrap_or_else(|| sine_trend_default_step(128));
            if !(step > 0.0 && step.is_finite()) {
                return usage("--step must be positive");
            }
            gen_sine_trend_with_step(a.n, step)?
        }
        SeriesKind::MackeyGlass => {
            if a.stride == 0 {
                return usage("--stride must be positive");
            }
            let params = MackeyGlassParams {
                tau: a.tau,
                ..Default::default()
            };
            gen_mackey_glass(a.n, &params, a.burn_in, a.stride)?
        }
    };
    series.write_csv(&a.out)?;
    Ok(format!("wrote {} samples to {}\n", series.len(), a.out.display()))
}

/// Loads a series; a leading time column, when present, sets the grid.
pub fn load_series(data: &DataArgs) -> Result<TimeSeries> {
    let cols = csv_column_count(&data.data)?;
    let column = data.column.unwrap_or(cols.saturating_sub(1));
    if cols >= 2 && column != 0 {
        load_csv_timed(&data.data, 0, column)
    } else {
        load_csv(&data.data, column)
    }
}

pub fn cmd_train(a: &TrainArgs) -> std::result::Result<String, CliError> {
    let series = load_series(&a.data)?;
    let k = a.k.unwrap_or_else(|| largest_power_of_two(series.len()));
    if !k.is_power_of_two() || k < 2 {
        return usage(format!("--k {k} must be a power of two of at least 2"));
    }
    if k > series.len() {
        return usage(format!("--k {k} exceeds the {} available samples", series.len()));
    }
    let train_series = series.prefix(k)?;
    let init_cfg = InitConfig {
        k,
        h: a.h,
        s: a.s,
        perturb_sd: a.perturb_sd,
        seed: a.seed,
    };
    let sigma = train_series.std_dev();
    let (net, log): (Network, Vec<EpochRecord>) = if a.no_fourier_init {
        let net = random_init(&train_series, &init_cfg, a.baseline_init_sd)?;
        let cfg = BaselineConfig {
            epochs: a.epochs,
            eta: a.baseline_eta,
            lambda: a.baseline_lambda,
            seed: a.seed,
            ..Default::default()
        };
        baseline_train(net, &train_series, &cfg)?
    } else {
        let net = initialize(&train_series, &init_cfg)?;
        let cfg = TrainConfig {
            epochs: a.epochs,
            target_ratio: a.target_ratio,
            guard_ratio: a.guard_ratio,
            lambda0: a.lambda0,
            eta0: a.eta0,
            lambda_gain: a.lambda_gain,
            eta_gain: a.eta_gain,
            eta_cut: a.eta_cut,
            seed: a.seed,
        };
        let (net, state) = train(net, &train_series, &cfg)?;
        (net, state.log)
    };
    model_io::save(&net, &a.out_model)?;
    if let Some(path) = &a.out_log {
        write_log_csv(&log, path)?;
    }
    let preds = training_predictions(&net, k);
    let eps = rmse(&preds, train_series.values())?;
    info!("trained {k} sinusoids for {} epochs", a.epochs);
    Ok(format!(
        "train rmse {}\nsigma {}\nrmse/sigma {}\n",
        fmt_real(eps),
        fmt_real(sigma),
        fmt_real(eps / sigma)
    ))
}

fn training_predictions(net: &Network, k: usize) -> Vec<f64> {
    (0..k).map(|n| net.predict(n as f64 / k as f64)).collect()
}

pub fn cmd_predict(a: &PredictArgs) -> std::result::Result<String, CliError> {
    if !(a.step > 0.0 && a.step.is_finite()) {
        return usage("--step must be positive");
    }
    if !(a.from.is_finite() && a.to.is_finite() && a.to >= a.from) {
        return usage("--from and --to must be finite with --to >= --from");
    }
    let net = model_io::load(&a.model)?;
    let ts = net.time_scale();
    let rows = predict_grid(a.from, a.to, a.step);
    let mut out = String::from("t,value\n");
    for t in &rows {
        writeln!(out, "{},{}", fmt_real(ts.time_for_input(*t)), fmt_real(net.predict(*t))).unwrap();
    }
    write_file(&a.out, &out)?;
    Ok(format!("wrote {} predictions to {}\n", rows.len(), a.out.display()))
}

/// `floor((to - from) / step) + 1` inputs starting at `from`.
pub fn predict_grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    // Tolerate ratios like 0.9999999999 that are integral up to rounding.
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| from + i as f64 * step).collect()
}

pub fn cmd_filter(a: &FilterArgs) -> std::result::Result<String, CliError> {
    if !(a.keep_fraction > 0.0 && a.keep_fraction <= 1.0) {
        return usage("--keep-fraction must lie in (0, 1]");
    }
    let net = model_io::load(&a.model)?;
    let filtered = low_pass(&net, a.keep_fraction)?;
    model_io::save(&filtered, &a.out_model)?;
    Ok(format!("wrote filtered model to {}\n", a.out_model.display()))
}

/// Network inputs for each data row.
///
/// With a time column every time must fall on the model's training grid;
/// without one, rows are taken as consecutive grid points from the start.
fn eval_inputs(net: &Network, series: &TimeSeries, timed: bool) -> Result<Vec<f64>> {
    let ts = net.time_scale();
    (0..series.len())
        .map(|i| {
            if !timed {
                return Ok(ts.input_for_index(i as f64));
            }
            let time = series.time(i);
            let index = (time - ts.start_time) / ts.step;
            if (index - index.round()).abs() > 1e-6 * index.abs().max(1.0) {
                return Err(Error::TimeGrid(format!(
                    "row {i} at time {time} is not on the model grid (start {}, step {})",
                    ts.start_time, ts.step
                )));
            }
            Ok(ts.input_for_index(index.round()))
        })
        .collect()
}

pub fn cmd_eval(a: &EvalArgs) -> std::result::Result<String, CliError> {
    let net = model_io::load(&a.model)?;
    let series = load_series(&a.data)?;
    let timed = csv_column_count(&a.data.data)? >= 2 && a.data.column != Some(0);
    if timed {
        check_grid_step(&net, &series, &a.data.data)?;
    }
    let to = a.to_row.unwrap_or(series.len());
    if a.from_row >= to || to > series.len() {
        return usage(format!(
            "row range {}..{to} is empty or exceeds the {} data rows",
            a.from_row,
            series.len()
        ));
    }
    let inputs = eval_inputs(&net, &series, timed)?;
    let preds: Vec<f64> = inputs[a.from_row..to].iter().map(|&t| net.predict(t)).collect();
    let actual = &series.values()[a.from_row..to];
    let err = rmse(&preds, actual)?;
    let sigma = std_dev(actual);
    Ok(format!(
        "rows {}\nrmse {}\nsigma {}\nrmse/sigma {}\n",
        actual.len(),
        fmt_real(err),
        fmt_real(sigma),
        fmt_real(err / sigma)
    ))
}

fn check_grid_step(net: &Network, series: &TimeSeries, path: &Path) -> Result<()> {
    let model_step = net.time_scale().step;
    if series.len() >= 2 && ((series.step() - model_step) / model_step).abs() > 1e-9 {
        return Err(Error::TimeGrid(format!(
            "{} has time step {} but the model was trained with step {model_step}",
            path.display(),
            series.step()
        )));
    }
    Ok(())
}
