//! Univariate time series: loading, synthetic generators, splitting and
//! summary statistics.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Samples on a uniform time grid: sample `i` sits at `start_time + i * step`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    start_time: f64,
    step: f64,
}

impl TimeSeries {
    /// Builds a series on the unit grid starting at 0.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_grid(values, 0.0, 1.0)
    }

    pub fn with_grid(values: Vec<f64>, start_time: f64, step: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if !(step.is_finite() && step > 0.0 && start_time.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "time grid start {start_time}, step {step}"
            )));
        }
        Ok(Self {
            values,
            start_time,
            step,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn start_time(&self) -> f64 {
        self.start_time
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Time of sample `i`.
    pub fn time(&self, i: usize) -> f64 {
        self.start_time + i as f64 * self.step
    }

    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }

    pub fn std_dev(&self) -> f64 {
        std_dev(&self.values)
    }

    /// First `len` samples, keeping the grid.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(Error::TooShort {
                needed: len.max(1),
                got: self.len(),
            });
        }
        Self::with_grid(self.values[..len].to_vec(), self.start_time, self.step)
    }

    /// Writes `t,value` rows with 17 significant digits.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = String::from("t,value\n");
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{},{}", fmt_real(self.time(i)), fmt_real(*v)).unwrap();
        }
        write_file(path.as_ref(), &out)
    }
}

/// 17 significant digits: enough for any `f64` to parse back bit-exactly.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes named columns side by side. Shorter columns leave empty cells.
pub fn write_columns(path: impl AsRef<Path>, columns: &[(&str, &[f64])]) -> Result<()> {
    let mut out = columns.iter().map(|c| c.0).collect::<Vec<_>>().join(",");
    out.push('\n');
    let rows = columns.iter().map(|c| c.1.len()).max().unwrap_or(0);
    for r in 0..rows {
        let cells: Vec<String> = columns
            .iter()
            .map(|c| c.1.get(r).map_or_else(String::new, |v| fmt_real(*v)))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    write_file(path.as_ref(), &out)
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation (divisor `len`).
pub fn std_dev(values: &[f64]) -> f64 {
    let mu = mean(values);
    let ss: f64 = values.iter().map(|v| (v - mu) * (v - mu)).sum();
    (ss / values.len() as f64).sqrt()
}

pub fn rmse(pred: &[f64], actual: &[f64]) -> Result<f64> {
    if pred.len() != actual.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: actual.len(),
        });
    }
    if pred.is_empty() {
        return Err(Error::TooShort { needed: 1, got: 0 });
    }
    let ss: f64 = pred
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a) * (p - a))
        .sum();
    Ok((ss / pred.len() as f64).sqrt())
}

/// Splits into a training prefix of `floor(fraction * len)` samples and the
/// remaining test suffix. The suffix keeps its position on the time grid.
pub fn split(series: &TimeSeries, fraction: f64) -> Result<(TimeSeries, TimeSeries)> {
    let len = series.len();
    let degenerate = || Error::DegenerateSplit { fraction, len };
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(degenerate());
    }
    let n_train = (fraction * len as f64).floor() as usize;
    if n_train == 0 || n_train >= len {
        return Err(degenerate());
    }
    let train = TimeSeries::with_grid(
        series.values[..n_train].to_vec(),
        series.start_time,
        series.step,
    )?;
    let test = TimeSeries::with_grid(
        series.values[n_train..].to_vec(),
        series.time(n_train),
        series.step,
    )?;
    Ok((train, test))
}

/// Grid spacing giving three periods of `sin(t)` across `n` samples.
pub fn sine_trend_default_step(n: usize) -> f64 {
    6.0 * std::f64::consts::PI / n as f64
}

/// `sin(t) + 0.1 t` sampled at `t = i * 6π/n`.
pub fn gen_sine_trend(n: usize) -> Result<TimeSeries> {
    gen_sine_trend_with_step(n, sine_trend_default_step(n))
}

/// `sin(t) + 0.1 t` sampled at `t = i * step`.
pub fn gen_sine_trend_with_step(n: usize, step: f64) -> Result<TimeSeries> {
    if n < 2 {
        return Err(Error::TooShort { needed: 2, got: n });
    }
    let values = (0..n)
        .map(|i| {
            let t = i as f64 * step;
            t.sin() + 0.1 * t
        })
        .collect();
    TimeSeries::with_grid(values, 0.0, step)
}

/// Mackey–Glass delay equation parameters:
/// `dx/dt = beta * x(t - tau) / (1 + x(t - tau)^exponent) - gamma * x(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MackeyGlassParams {
    pub beta: f64,
    pub gamma: f64,
    pub exponent: f64,
    pub tau: f64,
    /// Integration step.
    pub step: f64,
    /// Constant history for `t <= 0`.
    pub x0: f64,
}

impl Default for MackeyGlassParams {
    fn default() -> Self {
        Self {
            beta: 0.2,
            gamma: 0.1,
            exponent: 10.0,
            tau: 17.0,
            step: 0.1,
            x0: 1.2,
        }
    }
}

pub const MACKEY_GLASS_BURN_IN: usize = 1000;
pub const MACKEY_GLASS_STRIDE: usize = 10;

/// Integrates the Mackey–Glass equation with classical RK4 and a constant
/// history, discards `burn_in` steps, then keeps every `stride`-th state.
///
/// The delayed term at the half step is the mean of the two neighbouring
/// history samples.
pub fn gen_mackey_glass(
    n: usize,
    params: &MackeyGlassParams,
    burn_in: usize,
    stride: usize,
) -> Result<TimeSeries> {
    if n < 2 {
        return Err(Error::TooShort { needed: 2, got: n });
    }
    let MackeyGlassParams {
        beta,
        gamma,
        exponent,
        tau,
        step: h,
        x0,
    } = *params;
    if !(h > 0.0 && h.is_finite()) || stride == 0 {
        return Err(Error::InvalidParam(format!("step {h}, stride {stride}")));
    }
    if !(tau >= 1.0 && tau.is_finite()) {
        return Err(Error::InvalidParam(format!("tau {tau} must be >= 1")));
    }
    let delay = (tau / h).round() as usize;
    let total = burn_in + (n - 1) * stride;
    let rhs = |x: f64, lagged: f64| beta * lagged / (1.0 + lagged.powf(exponent)) - gamma * x;

    let mut xs = Vec::with_capacity(total + 1);
    xs.push(x0);
    let hist = |xs: &[f64], i: isize| if i < 0 { x0 } else { xs[i as usize] };
    for i in 0..total {
        let x = xs[i];
        let lag0 = hist(&xs, i as isize - delay as isize);
        let lag1 = hist(&xs, i as isize + 1 - delay as isize);
        let lag_mid = 0.5 * (lag0 + lag1);
        let k1 = rhs(x, lag0);
        let k2 = rhs(x + 0.5 * h * k1, lag_mid);
        let k3 = rhs(x + 0.5 * h * k2, lag_mid);
        let k4 = rhs(x + h * k3, lag1);
        let next = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !next.is_finite() {
            return Err(Error::IntegrationBlowUp { step: i + 1 });
        }
        xs.push(next);
    }
    let values = (0..n).map(|m| xs[burn_in + m * stride]).collect();
    TimeSeries::with_grid(values, burn_in as f64 * h, stride as f64 * h)
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

fn read_rows(path: &Path) -> Result<Vec<Vec<String>>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect())
}

/// Reads one numeric column. A first row whose cell in that column is not
/// numeric is treated as a header and skipped.
pub fn load_csv(path: impl AsRef<Path>, column: usize) -> Result<TimeSeries> {
    let (values, _) = load_columns(path.as_ref(), column, None)?;
    TimeSeries::new(values)
}

/// Like [`load_csv`], but takes the time grid from `time_column`: the start
/// time is its first value and the step the difference of the first two.
pub fn load_csv_timed(
    path: impl AsRef<Path>,
    time_column: usize,
    value_column: usize,
) -> Result<TimeSeries> {
    let (values, times) = load_columns(path.as_ref(), value_column, Some(time_column))?;
    let times = times.unwrap_or_default();
    TimeSeries::with_grid(values, times[0], times[1] - times[0])
}

/// Number of comma-separated columns in the first non-empty row.
pub fn csv_column_count(path: impl AsRef<Path>) -> Result<usize> {
    let rows = read_rows(path.as_ref())?;
    Ok(rows.first().map_or(0, Vec::len))
}

fn load_columns(
    path: &Path,
    column: usize,
    time_column: Option<usize>,
) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let rows = read_rows(path)?;
    let header = rows
        .first()
        .is_some_and(|r| r.get(column).and_then(|c| parse_cell(c)).is_none());
    let skip = usize::from(header);
    let mut values = Vec::with_capacity(rows.len());
    let mut times = time_column.map(|_| Vec::with_capacity(rows.len()));
    for (i, row) in rows.iter().enumerate().skip(skip) {
        let cell = |col: usize| {
            let raw = row.get(col).map_or("", String::as_str);
            parse_cell(raw).ok_or_else(|| Error::BadCell {
                path: path.to_path_buf(),
                row: i + 1,
                column: col,
                cell: raw.to_owned(),
            })
        };
        values.push(cell(column)?);
        if let (Some(tc), Some(ts)) = (time_column, times.as_mut()) {
            ts.push(cell(tc)?);
        }
    }
    if values.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: values.len(),
        });
    }
    Ok((values, times))
}
