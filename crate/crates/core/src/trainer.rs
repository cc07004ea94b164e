//! Epoch loop with per-pattern regularization and SGD, plus the end-of-epoch
//! controller that tunes the learning rate and regularization strength and
//! rolls the weights back when training diverges.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use log::{debug, warn};

use crate::error::{Error, Result};
use crate::network::{Network, Scratch};
use crate::regularize::{Norm, Regularizer};
use crate::rng::Rng;
use crate::signal::{fmt_real, std_dev, write_file, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    /// RMSE target as a fraction of σ; λ grows below it and shrinks above.
    pub target_ratio: f64,
    /// RMSE above this fraction of σ counts as divergence.
    pub guard_ratio: f64,
    pub lambda0: f64,
    pub eta0: f64,
    pub lambda_gain: f64,
    pub eta_gain: f64,
    pub eta_cut: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 200_000,
            target_ratio: 0.1,
            guard_ratio: 0.2,
            lambda0: 1.0,
            eta0: 1e-9,
            lambda_gain: 1.001,
            eta_gain: 1.01,
            eta_cut: 0.1,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn with_epochs(mut self, epochs: usize) -> Self {
        self.epochs = epochs;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParam(m.to_owned()));
        if !(self.target_ratio > 0.0 && self.target_ratio < self.guard_ratio) {
            return bad("need 0 < target_ratio < guard_ratio");
        }
        if !(self.lambda_gain > 1.0 && self.eta_gain > 1.0) {
            return bad("gains must exceed 1");
        }
        if !(self.eta_cut > 0.0 && self.eta_cut < 1.0) {
            return bad("eta_cut must lie in (0, 1)");
        }
        if !(self.eta0 > 0.0 && self.lambda0 > 0.0) {
            return bad("eta0 and lambda0 must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpochEvent {
    Backup,
    Restore,
}

impl EpochEvent {
    pub fn as_str(self) -> &'static str {
        match self {
            EpochEvent::Backup => "backup",
            EpochEvent::Restore => "restore",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    /// Training RMSE measured at the end of the epoch, before tuning.
    pub rmse: f64,
    /// η and λ after tuning.
    pub eta: f64,
    pub lambda: f64,
    /// `None` for runs without the controller.
    pub event: Option<EpochEvent>,
}

#[derive(Debug, Clone)]
pub struct TrainState {
    pub eta: f64,
    pub lambda: f64,
    pub epoch: usize,
    pub backup: Network,
    /// RMSE of the most recent epoch.
    pub epsilon: f64,
    pub sigma: f64,
    pub log: Vec<EpochRecord>,
}

impl TrainState {
    pub fn new(net: &Network, sigma: f64, cfg: &TrainConfig) -> Self {
        Self {
            eta: cfg.eta0,
            lambda: cfg.lambda0,
            epoch: 0,
            backup: net.clone(),
            epsilon: f64::NAN,
            sigma,
            log: Vec::new(),
        }
    }

    /// End-of-epoch controller. In order: λ is raised when `eps` is under the
    /// target and lowered otherwise; η is grown; then the weights are either
    /// backed up (`eps` under the guard) or restored from the backup with η cut.
    pub fn tune(&mut self, net: &mut Network, eps: f64, cfg: &TrainConfig) -> EpochEvent {
        if eps < cfg.target_ratio * self.sigma {
            self.lambda *= cfg.lambda_gain;
        } else {
            self.lambda /= cfg.lambda_gain;
        }
        self.eta *= cfg.eta_gain;
        let event = if eps < cfg.guard_ratio * self.sigma {
            self.backup.clone_from(net);
            EpochEvent::Backup
        } else {
            net.clone_from(&self.backup);
            self.eta *= cfg.eta_cut;
            EpochEvent::Restore
        };
        self.epsilon = eps;
        self.log.push(EpochRecord {
            epoch: self.epoch,
            rmse: eps,
            eta: self.eta,
            lambda: self.lambda,
            event: Some(event),
        });
        self.epoch += 1;
        event
    }
}

/// Training RMSE over the first `k` samples, presented at `n / k`.
fn training_rmse(net: &Network, values: &[f64], bufs: &mut (Vec<f64>, Vec<f64>)) -> f64 {
    let k = values.len() as f64;
    let ss: f64 = values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let e = net.predict_with(n as f64 / k, &mut bufs.0, &mut bufs.1) - v;
            e * e
        })
        .sum();
    (ss / k).sqrt()
}

fn training_values<'a>(net: &Network, series: &'a TimeSeries) -> Result<&'a [f64]> {
    let k = net.time_scale().k;
    if series.len() < k {
        return Err(Error::TooShort {
            needed: k,
            got: series.len(),
        });
    }
    if series.len() > k {
        warn!("training on the first {k} of {} samples", series.len());
    }
    Ok(&series.values()[..k])
}

/// Runs one epoch of regularize-then-step presentations in shuffled order.
/// Returns `false` if an update went non-finite or regularization became
/// too strong to apply, either of which is treated as divergence.
#[allow(clippy::too_many_arguments)]
fn run_epoch(
    net: &mut Network,
    values: &[f64],
    order: &mut [usize],
    rng: &mut Rng,
    reg: &mut Regularizer,
    scratch: &mut Scratch,
    norm: Norm,
    eta: f64,
    lambda: f64,
) -> bool {
    let k = values.len() as f64;
    rng.shuffle(order);
    for &n in order.iter() {
        if reg.apply(net, norm, eta, lambda).is_err() {
            return false;
        }
        if net.sgd_step_with(scratch, n as f64 / k, values[n], eta).is_err() {
            return false;
        }
    }
    true
}

pub fn train(net: Network, series: &TimeSeries, cfg: &TrainConfig) -> Result<(Network, TrainState)> {
    train_with_progress(net, series, cfg, &AtomicUsize::new(0))
}

/// [`train`] that publishes the number of completed epochs to `progress`.
pub fn train_with_progress(
    mut net: Network,
    series: &TimeSeries,
    cfg: &TrainConfig,
    progress: &AtomicUsize,
) -> Result<(Network, TrainState)> {
    cfg.validate()?;
    let values = training_values(&net, series)?;
    let sigma = std_dev(values);
    if sigma == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let mut state = TrainState::new(&net, sigma, cfg);
    if cfg.epochs == 0 {
        return Ok((net, state));
    }
    let mut scratch = Scratch::new(&net);
    let mut trace = (Vec::new(), Vec::new());
    state.epsilon = training_rmse(&net, values, &mut trace);
    if !state.epsilon.is_finite() {
        return Err(Error::Diverged { epoch: 0 });
    }
    let mut reg = Regularizer::new(&net);
    let mut rng = Rng::new(cfg.seed);
    let mut order: Vec<usize> = (0..values.len()).collect();
    let switch = cfg.epochs / 2;
    let mut backup_eps = state.epsilon;

    for epoch in 0..cfg.epochs {
        let norm = if epoch < switch { Norm::L2 } else { Norm::L1 };
        let ok = run_epoch(
            &mut net,
            values,
            &mut order,
            &mut rng,
            &mut reg,
            &mut scratch,
            norm,
            state.eta,
            state.lambda,
        );
        let eps = if ok {
            training_rmse(&net, values, &mut trace)
        } else {
            f64::INFINITY
        };
        let eps = if eps.is_nan() { f64::INFINITY } else { eps };
        match state.tune(&mut net, eps, cfg) {
            EpochEvent::Backup => backup_eps = eps,
            EpochEvent::Restore => {
                debug!("epoch {epoch}: restore (rmse {eps:e}), eta -> {:e}", state.eta);
                if !backup_eps.is_finite() || !net.all_finite() {
                    return Err(Error::Diverged { epoch });
                }
            }
        }
        progress.store(epoch + 1, Ordering::Relaxed);
    }
    Ok((net, state))
}

/// Fixed-rate training without the controller, for comparison runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineConfig {
    pub epochs: usize,
    pub eta: f64,
    pub lambda: f64,
    /// Training RMSE above this multiple of σ is reported as divergence.
    pub divergence_ratio: f64,
    pub seed: u64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            epochs: 200_000,
            eta: 1e-3,
            lambda: 1e-3,
            divergence_ratio: 1e3,
            seed: 0,
        }
    }
}

/// Plain SGD at a fixed η with uniform-strength regularization at a fixed λ
/// (L2 for the first half of the epochs, L1 after). No tuning, no rollback:
/// divergence is returned as an error.
pub fn baseline_train(
    mut net: Network,
    series: &TimeSeries,
    cfg: &BaselineConfig,
) -> Result<(Network, Vec<EpochRecord>)> {
    if !(cfg.eta > 0.0 && cfg.lambda >= 0.0) {
        return Err(Error::InvalidParam("baseline needs eta > 0, lambda >= 0".into()));
    }
    let values = training_values(&net, series)?;
    let sigma = std_dev(values);
    let mut scratch = Scratch::new(&net);
    let mut trace = (Vec::new(), Vec::new());
    let mut reg = Regularizer::uniform(&net);
    let mut rng = Rng::new(cfg.seed);
    let mut order: Vec<usize> = (0..values.len()).collect();
    let switch = cfg.epochs / 2;
    let mut log = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        let norm = if epoch < switch { Norm::L2 } else { Norm::L1 };
        let ok = run_epoch(
            &mut net,
            values,
            &mut order,
            &mut rng,
            &mut reg,
            &mut scratch,
            norm,
            cfg.eta,
            cfg.lambda,
        );
        let eps = training_rmse(&net, values, &mut trace);
        if !ok || !eps.is_finite() || eps > cfg.divergence_ratio * sigma.max(f64::MIN_POSITIVE) {
            return Err(Error::Diverged { epoch });
        }
        log.push(EpochRecord {
            epoch,
            rmse: eps,
            eta: cfg.eta,
            lambda: cfg.lambda,
            event: None,
        });
    }
    Ok((net, log))
}

/// Writes `epoch,rmse,eta,lambda,event` rows.
pub fn write_log_csv(log: &[EpochRecord], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from("epoch,rmse,eta,lambda,event\n");
    for r in log {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.epoch,
            fmt_real(r.rmse),
            fmt_real(r.eta),
            fmt_real(r.lambda),
            r.event.map_or("", EpochEvent::as_str)
        )
        .unwrap();
    }
    write_file(path.as_ref(), &out)
}
