//! Per-pattern weight regularization whose strength depends on the kind of
//! unit a weight reads from.
//!
//! A weight is classified by its source unit: the sinusoid-to-output weights
//! are sinusoid amplitudes and get the full `ηλ`, softplus-sourced weights a
//! tenth of it and identity-sourced weights a hundredth. Weights reading the
//! raw time input and all biases are left alone.

use crate::error::{Error, Result};
use crate::network::{Network, UnitKind};

pub fn reg_factor(kind: UnitKind) -> f64 {
    match kind {
        UnitKind::Sinusoid => 1.0,
        UnitKind::Softplus => 0.1,
        UnitKind::Identity => 0.01,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
}

/// Cached per-column strength factors for one network layout.
#[derive(Debug, Clone)]
pub struct Regularizer {
    /// `factors[l][j]`: factor for weights of layer `l` reading input `j`.
    /// Empty for the first layer.
    factors: Vec<Vec<f64>>,
    buf: Vec<f64>,
}

impl Regularizer {
    /// Kind-dependent factors from [`reg_factor`].
    pub fn new(net: &Network) -> Self {
        Self::with(net, reg_factor)
    }

    /// Factor 1 for every regularized weight.
    pub fn uniform(net: &Network) -> Self {
        Self::with(net, |_| 1.0)
    }

    fn with(net: &Network, f: impl Fn(UnitKind) -> f64) -> Self {
        let layers = net.layers();
        let mut factors = vec![Vec::new()];
        for l in 1..layers.len() {
            factors.push(layers[l - 1].kinds().iter().map(|&k| f(k)).collect());
        }
        let widest = factors.iter().map(Vec::len).max().unwrap_or(0);
        Self {
            factors,
            buf: vec![0.0; widest],
        }
    }

    pub fn apply(&mut self, net: &mut Network, norm: Norm, eta: f64, lambda: f64) -> Result<()> {
        let strength = eta * lambda;
        if !eta.is_finite() || !lambda.is_finite() || eta < 0.0 || lambda < 0.0 {
            return Err(Error::InvalidParam(format!(
                "regularization needs eta, lambda >= 0 (got {eta}, {lambda})"
            )));
        }
        if strength >= 1.0 {
            return Err(Error::RegularizationTooStrong(strength));
        }
        if strength == 0.0 {
            return Ok(());
        }
        for (layer, factors) in net.layers_mut().iter_mut().zip(&self.factors).skip(1) {
            let in_dim = layer.in_dim();
            let buf = &mut self.buf[..in_dim];
            match norm {
                Norm::L2 => {
                    for (b, f) in buf.iter_mut().zip(factors) {
                        *b = 1.0 - f * strength;
                    }
                    for row in layer.weights.chunks_exact_mut(in_dim) {
                        for (w, m) in row.iter_mut().zip(buf.iter()) {
                            *w *= m;
                        }
                    }
                }
                Norm::L1 => {
                    for (b, f) in buf.iter_mut().zip(factors) {
                        *b = f * strength;
                    }
                    for row in layer.weights.chunks_exact_mut(in_dim) {
                        for (w, th) in row.iter_mut().zip(buf.iter()) {
                            *w = soft_threshold(*w, *th);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `sign(w) * max(0, |w| - threshold)`.
#[inline]
pub fn soft_threshold(w: f64, threshold: f64) -> f64 {
    let shrunk = w.abs() - threshold;
    if shrunk > 0.0 {
        shrunk.copysign(w)
    } else {
        0.0
    }
}

/// Multiplies each regularized weight by `1 - factor * ηλ`.
pub fn l2_step(net: &mut Network, eta: f64, lambda: f64) -> Result<()> {
    Regularizer::new(net).apply(net, Norm::L2, eta, lambda)
}

/// Shrinks each regularized weight toward zero by `factor * ηλ`, stopping at zero.
pub fn l1_step(net: &mut Network, eta: f64, lambda: f64) -> Result<()> {
    Regularizer::new(net).apply(net, Norm::L1, eta, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Layer;
    use UnitKind::*;

    /// Input -> [Sinusoid, Softplus, Identity] -> Identity, outgoing weights `w`.
    fn probe(w: f64) -> Network {
        let l1 = Layer::new(1, vec![1.0, 1.0, 1.0], vec![0.5, 0.5, 0.5], vec![Sinusoid, Softplus, Identity]).unwrap();
        let l2 = Layer::new(3, vec![w, w, w], vec![0.25], vec![Identity]).unwrap();
        Network::from_layers(vec![l1, l2]).unwrap()
    }

    fn out_weights(net: &Network) -> Vec<f64> {
        net.layers()[1].weights.clone()
    }

    #[test]
    fn factors() {
        assert_eq!(reg_factor(Sinusoid), 1.0);
        assert_eq!(reg_factor(Softplus), 0.1);
        assert_eq!(reg_factor(Identity), 0.01);
    }

    #[test]
    fn l2_scales_by_source_kind() {
        let mut net = probe(1.0);
        l2_step(&mut net, 1.0, 0.001).unwrap();
        let w = out_weights(&net);
        assert_eq!(w[0], 1.0 - 0.001);
        assert_eq!(w[1], 1.0 - 0.1 * 0.001);
        assert_eq!(w[2], 1.0 - 0.01 * 0.001);
        assert!((w[0] - 0.999).abs() < 1e-15);
        assert!((w[2] - 0.99999).abs() < 1e-15);
        // Input weights and biases untouched.
        assert_eq!(net.layers()[0], probe(1.0).layers()[0]);
        assert_eq!(net.layers()[1].biases, vec![0.25]);
    }

    #[test]
    fn zero_lambda_is_identity() {
        let mut net = probe(0.7);
        l2_step(&mut net, 0.1, 0.0).unwrap();
        l1_step(&mut net, 0.1, 0.0).unwrap();
        assert_eq!(net, probe(0.7));
    }

    #[test]
    fn l1_soft_threshold() {
        let mut net = probe(0.0005);
        l1_step(&mut net, 0.001, 1.0).unwrap();
        assert_eq!(out_weights(&net)[0], 0.0);

        let mut net = probe(-1.0);
        l1_step(&mut net, 0.001, 1.0).unwrap();
        assert!((out_weights(&net)[0] + 0.999).abs() < 1e-15);

        let mut net = probe(5.0);
        l1_step(&mut net, 0.001, 1.0).unwrap();
        assert!((out_weights(&net)[2] - 4.99999).abs() < 1e-12);
    }

    #[test]
    fn rejects_sign_flipping_strength() {
        let mut net = probe(1.0);
        assert!(matches!(
            l2_step(&mut net, 1.0, 1.0),
            Err(Error::RegularizationTooStrong(_))
        ));
        assert!(l1_step(&mut net, 2.0, 0.7).is_err());
        assert!(l2_step(&mut net, -1.0, 0.1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sign_preserving_contraction(w in -10f64..10.0, el in 0f64..0.9, l1 in any::<bool>()) {
                let mut net = probe(w);
                let f = if l1 { l1_step } else { l2_step };
                f(&mut net, 1.0, el).unwrap();
                for &v in &out_weights(&net) {
                    prop_assert!(v.abs() <= w.abs());
                    prop_assert!(v == 0.0 || v.signum() == w.signum());
                }
            }

            #[test]
            fn kind_ordering(w in 1e-3f64..10.0, el in 1e-6f64..0.5, l1 in any::<bool>(), neg in any::<bool>()) {
                let w = if neg { -w } else { w };
                let mut net = probe(w);
                let f = if l1 { l1_step } else { l2_step };
                f(&mut net, 1.0, el).unwrap();
                let shrink: Vec<f64> = out_weights(&net).iter().map(|v| w.abs() - v.abs()).collect();
                prop_assert!(shrink[0] >= shrink[1] && shrink[1] >= shrink[2]);
                // Strict unless the larger shrink has already clamped at zero.
                if el * 0.1 < w.abs() {
                    prop_assert!(shrink[0] > shrink[1]);
                }
                if el * 0.01 < w.abs() {
                    prop_assert!(shrink[1] > shrink[2]);
                }
            }

            #[test]
            fn l1_fixed_points(w in -1f64..1.0, th in 0f64..0.5) {
                let v = soft_threshold(w, th);
                if w.abs() <= th {
                    prop_assert_eq!(v, 0.0);
                } else {
                    prop_assert!(v != 0.0 && (v.abs() - (w.abs() - th)).abs() < 1e-15);
                }
            }
        }
    }
}
