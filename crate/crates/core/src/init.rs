//! Network construction: Fourier-seeded sinusoid weights on top of hidden
//! layers that start out as (approximate) identity maps.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use log::warn;

use crate::error::{Error, Result};
use crate::fft::fft_real;
use crate::network::{FourierShape, Layer, Network, TimeScale, UnitKind};
use crate::rng::Rng;
use crate::signal::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitConfig {
    /// Sinusoid units; must be a power of two.
    pub k: usize,
    /// Softplus units (and, separately, identity units) per hidden layer.
    pub h: usize,
    /// Softplus shift placing its operating point in the near-linear region.
    pub s: f64,
    pub perturb_sd: f64,
    pub seed: u64,
}

impl InitConfig {
    pub const DEFAULT_H: usize = 12;
    pub const DEFAULT_S: f64 = 10.0;
    pub const DEFAULT_PERTURB_SD: f64 = 1e-5;

    pub fn new(k: usize) -> Self {
        Self {
            k,
            h: Self::DEFAULT_H,
            s: Self::DEFAULT_S,
            perturb_sd: Self::DEFAULT_PERTURB_SD,
            seed: 0,
        }
    }

    /// Uses the largest power of two not exceeding `len`.
    pub fn for_len(len: usize) -> Self {
        Self::new(largest_power_of_two(len))
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if !self.k.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.k));
        }
        if self.k < 2 {
            return Err(Error::InvalidParam("k must be at least 2".into()));
        }
        if self.h == 0 {
            return Err(Error::InvalidParam("h must be at least 1".into()));
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::InvalidParam(format!("s = {} must be positive", self.s)));
        }
        if !(self.perturb_sd >= 0.0 && self.perturb_sd.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "perturbation sd {} must be non-negative",
                self.perturb_sd
            )));
        }
        Ok(())
    }
}

pub fn largest_power_of_two(len: usize) -> usize {
    if len == 0 {
        0
    } else {
        1 << (usize::BITS - 1 - len.leading_zeros())
    }
}

/// Weight wiring each hidden unit to its counterpart in the previous layer.
///
/// Layer 1 sees only the time input, which feeds the first unit of each
/// group (identity and softplus); wider layers use the plain diagonal.
fn identity_pattern(layer: &mut Layer, shape: &FourierShape) {
    let (in_dim, hidden) = (layer.in_dim(), 2 * shape.h);
    for o in 0..hidden {
        if in_dim == 1 {
            if o % shape.h == 0 {
                *layer.weight_mut(o, 0) = 1.0;
            }
        } else {
            *layer.weight_mut(o, o) = 1.0;
        }
    }
}

/// Gives each softplus unit the input shift `s` and subtracts `s * w` from the
/// bias of every unit it feeds, so `w * softplus(x + s) + b - s * w ≈ w * x + b`.
fn shift_softplus(layers: &mut [Layer], s: f64) {
    for l in 0..layers.len() {
        for o in 0..layers[l].out_dim() {
            if layers[l].kinds()[o] == UnitKind::Softplus {
                layers[l].biases[o] += s;
            }
        }
        if l > 0 {
            let (lower, upper) = layers.split_at_mut(l);
            let src = &lower[l - 1];
            let dst = &mut upper[0];
            for o in 0..dst.out_dim() {
                let comp: f64 = src
                    .kinds()
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k == UnitKind::Softplus)
                    .map(|(j, _)| dst.weight(o, j))
                    .sum();
                dst.biases[o] -= s * comp;
            }
        }
    }
}

/// Builds the four-layer network whose sinusoid units reproduce the first
/// `cfg.k` training values exactly at inputs `n / k`. No perturbation.
pub fn fourier_init(train: &TimeSeries, cfg: &InitConfig) -> Result<Network> {
    cfg.validate()?;
    let k = cfg.k;
    if train.len() < k {
        return Err(Error::TooShort {
            needed: k,
            got: train.len(),
        });
    }
    if train.len() > k {
        warn!("using the first {k} of {} training samples", train.len());
    }
    let spectrum = fft_real(&train.values()[..k])?;
    let shape = FourierShape {
        k,
        h: cfg.h,
        s: cfg.s,
    };
    let hidden = 2 * cfg.h;
    let first_sin = shape.first_sinusoid();

    let mut l1 = Layer::zeros(1, shape.hidden_kinds());
    let mut l2 = Layer::zeros(hidden, shape.hidden_kinds());
    let mut l3 = Layer::zeros(hidden, shape.layer3_kinds());
    let mut l4 = Layer::zeros(hidden + k, vec![UnitKind::Identity]);
    identity_pattern(&mut l1, &shape);
    identity_pattern(&mut l2, &shape);
    identity_pattern(&mut l3, &shape);

    let kf = k as f64;
    for j in 1..=k {
        // Units come in (cosine, sine) pairs sharing the angular frequency 2πm.
        let m = j.div_ceil(2);
        let unit = first_sin + j - 1;
        let (amplitude, phase) = if j % 2 == 1 {
            (2.0 * spectrum[m].re / kf, FRAC_PI_2)
        } else {
            (2.0 * spectrum[m].im / kf, PI)
        };
        let nyquist = j + 1 >= k;
        *l4.weight_mut(0, unit) = if nyquist { amplitude / 2.0 } else { amplitude };
        *l3.weight_mut(unit, 0) = TAU * m as f64;
        l3.biases[unit] = phase;
    }
    l4.biases[0] = spectrum[0].re / kf;

    let mut layers = vec![l1, l2, l3, l4];
    shift_softplus(&mut layers, cfg.s);
    Network::fourier(
        layers,
        shape,
        TimeScale {
            k,
            start_time: train.start_time(),
            step: train.step(),
        },
    )
}

/// Adds independent `Normal(0, sd)` noise to every weight and bias.
pub fn perturb(net: &mut Network, seed: u64, sd: f64) {
    if sd == 0.0 {
        return;
    }
    let mut rng = Rng::new(seed);
    for p in net.params_mut() {
        *p += rng.normal(0.0, sd);
    }
}

/// Fourier initialization followed by the configured perturbation.
pub fn initialize(train: &TimeSeries, cfg: &InitConfig) -> Result<Network> {
    let mut net = fourier_init(train, cfg)?;
    perturb(&mut net, cfg.seed, cfg.perturb_sd);
    Ok(net)
}

/// Same topology as [`fourier_init`] with `Normal(0, sd)` weights and zero
/// biases; the starting point for training without spectral seeding.
pub fn random_init(train: &TimeSeries, cfg: &InitConfig, sd: f64) -> Result<Network> {
    cfg.validate()?;
    if train.len() < cfg.k {
        return Err(Error::TooShort {
            needed: cfg.k,
            got: train.len(),
        });
    }
    let shape = FourierShape {
        k: cfg.k,
        h: cfg.h,
        s: cfg.s,
    };
    let hidden = 2 * cfg.h;
    let mut rng = Rng::new(cfg.seed);
    let mut layer = |in_dim: usize, kinds: Vec<UnitKind>| {
        let weights = (0..in_dim * kinds.len()).map(|_| rng.normal(0.0, sd)).collect();
        let biases = vec![0.0; kinds.len()];
        Layer::new(in_dim, weights, biases, kinds)
    };
    let layers = vec![
        layer(1, shape.hidden_kinds())?,
        layer(hidden, shape.hidden_kinds())?,
        layer(hidden, shape.layer3_kinds())?,
        layer(hidden + cfg.k, vec![UnitKind::Identity])?,
    ];
    Network::fourier(
        layers,
        shape,
        TimeScale {
            k: cfg.k,
            start_time: train.start_time(),
            step: train.step(),
        },
    )
}

/// Largest absolute error of the network on its own training samples.
pub fn max_training_error(net: &Network, train: &TimeSeries) -> f64 {
    let ts = net.time_scale();
    train.values()[..ts.k]
        .iter()
        .enumerate()
        .map(|(n, v)| (net.predict(ts.input_for_index(n as f64)) - v).abs())
        .fold(0.0, f64::max)
}
