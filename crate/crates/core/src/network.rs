//! Dense feed-forward network with sinusoid, softplus and identity units.
//!
//! The loss for one pattern is `0.5 * (prediction - target)^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitKind {
    Sinusoid,
    Softplus,
    Identity,
}

impl UnitKind {
    pub fn activate(self, x: f64) -> f64 {
        match self {
            UnitKind::Sinusoid => x.sin(),
            UnitKind::Softplus => softplus(x),
            UnitKind::Identity => x,
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            UnitKind::Sinusoid => x.cos(),
            UnitKind::Softplus => logistic(x),
            UnitKind::Identity => 1.0,
        }
    }

    /// Activation and derivative together; sinusoids share one `sin_cos`.
    #[inline]
    fn activate_both(self, x: f64) -> (f64, f64) {
        match self {
            UnitKind::Sinusoid => x.sin_cos(),
            UnitKind::Softplus => {
                let e = (-x.abs()).exp();
                let sp = x.max(0.0) + e.ln_1p();
                let lg = if x >= 0.0 { 1.0 / (1.0 + e) } else { e / (1.0 + e) };
                (sp, lg)
            }
            UnitKind::Identity => (x, 1.0),
        }
    }
}

pub fn activate(kind: UnitKind, x: f64) -> f64 {
    kind.activate(x)
}

pub fn activate_deriv(kind: UnitKind, x: f64) -> f64 {
    kind.derivative(x)
}

/// `ln(1 + e^x)` without overflow.
pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// One dense layer. `weights` is row-major `out_dim x in_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    in_dim: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
    kinds: Vec<UnitKind>,
}

impl Layer {
    pub fn new(in_dim: usize, weights: Vec<f64>, biases: Vec<f64>, kinds: Vec<UnitKind>) -> Result<Self> {
        let out = kinds.len();
        if in_dim == 0 || out == 0 {
            return Err(Error::Topology("layer with zero width".into()));
        }
        if weights.len() != out * in_dim || biases.len() != out {
            return Err(Error::Topology(format!(
                "layer {out}x{in_dim} has {} weights and {} biases",
                weights.len(),
                biases.len()
            )));
        }
        Ok(Self {
            in_dim,
            weights,
            biases,
            kinds,
        })
    }

    pub fn zeros(in_dim: usize, kinds: Vec<UnitKind>) -> Self {
        let out = kinds.len();
        Self {
            in_dim,
            weights: vec![0.0; out * in_dim],
            biases: vec![0.0; out],
            kinds,
        }
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[UnitKind] {
        &self.kinds
    }

    pub fn weight(&self, out: usize, inp: usize) -> f64 {
        self.weights[out * self.in_dim + inp]
    }

    pub fn weight_mut(&mut self, out: usize, inp: usize) -> &mut f64 {
        &mut self.weights[out * self.in_dim + inp]
    }

    pub fn row(&self, out: usize) -> &[f64] {
        &self.weights[out * self.in_dim..(out + 1) * self.in_dim]
    }
}

/// Sizes of the four-layer Fourier topology.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierShape {
    /// Sinusoid units in layer 3 (a power of two).
    pub k: usize,
    /// Softplus units, and separately identity units, per hidden layer.
    pub h: usize,
    /// Softplus input shift used at initialization.
    pub s: f64,
}

impl FourierShape {
    /// Index of the first sinusoid unit in layer 3 (identity, then softplus, then sinusoid).
    pub fn first_sinusoid(&self) -> usize {
        2 * self.h
    }

    pub fn hidden_kinds(&self) -> Vec<UnitKind> {
        let mut kinds = vec![UnitKind::Identity; self.h];
        kinds.extend(std::iter::repeat_n(UnitKind::Softplus, self.h));
        kinds
    }

    pub fn layer3_kinds(&self) -> Vec<UnitKind> {
        let mut kinds = self.hidden_kinds();
        kinds.extend(std::iter::repeat_n(UnitKind::Sinusoid, self.k));
        kinds
    }
}

/// Maps between training-sample indices, network inputs and original time.
///
/// Training sample `n` is presented at input `n / k` and sits at original
/// time `start_time + n * step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeScale {
    pub k: usize,
    pub start_time: f64,
    pub step: f64,
}

impl TimeScale {
    pub fn input_for_index(&self, n: f64) -> f64 {
        n / self.k as f64
    }

    pub fn input_for_time(&self, time: f64) -> f64 {
        (time - self.start_time) / (self.step * self.k as f64)
    }

    pub fn time_for_input(&self, t: f64) -> f64 {
        self.start_time + t * self.k as f64 * self.step
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    layers: Vec<Layer>,
    shape: Option<FourierShape>,
    time_scale: TimeScale,
}

/// Pre-activations, activations and activation slopes of one forward pass.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub input: f64,
    pub pre: Vec<Vec<f64>>,
    pub act: Vec<Vec<f64>>,
    pub slope: Vec<Vec<f64>>,
}

impl Trace {
    fn for_network(net: &Network) -> Self {
        let sized = || net.layers.iter().map(|l| vec![0.0; l.out_dim()]).collect::<Vec<_>>();
        Self {
            input: 0.0,
            pre: sized(),
            act: sized(),
            slope: sized(),
        }
    }
}

/// Partials of the loss with respect to every parameter, shaped like the network.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

/// Reusable buffers for [`Network::sgd_step_with`].
#[derive(Debug, Clone, Default)]
pub struct Scratch {
    trace: Trace,
    delta: Vec<Vec<f64>>,
}

impl Scratch {
    pub fn new(net: &Network) -> Self {
        Self {
            trace: Trace::for_network(net),
            delta: net.layers.iter().map(|l| vec![0.0; l.out_dim()]).collect(),
        }
    }
}

impl Network {
    /// A general network over a scalar input. Consecutive layers must chain.
    pub fn from_layers(layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Topology("no layers".into()));
        }
        if layers[0].in_dim() != 1 {
            return Err(Error::Topology("first layer must take one input".into()));
        }
        for (i, pair) in layers.windows(2).enumerate() {
            if pair[1].in_dim() != pair[0].out_dim() {
                return Err(Error::Topology(format!(
                    "layer {} takes {} inputs but layer {} has {} units",
                    i + 1,
                    pair[1].in_dim(),
                    i,
                    pair[0].out_dim()
                )));
            }
        }
        Ok(Self {
            layers,
            shape: None,
            time_scale: TimeScale {
                k: 1,
                start_time: 0.0,
                step: 1.0,
            },
        })
    }

    /// A four-layer Fourier network; checks the topology invariants.
    pub fn fourier(layers: Vec<Layer>, shape: FourierShape, time_scale: TimeScale) -> Result<Self> {
        let mut net = Self::from_layers(layers)?;
        net.shape = Some(shape);
        net.time_scale = time_scale;
        net.check_fourier_topology()?;
        Ok(net)
    }

    pub fn check_fourier_topology(&self) -> Result<FourierShape> {
        let shape = self
            .shape
            .ok_or_else(|| Error::Topology("network has no Fourier shape".into()))?;
        let bad = |m: String| Err(Error::Topology(m));
        if !shape.k.is_power_of_two() {
            return bad(format!("k = {} is not a power of two", shape.k));
        }
        if shape.h == 0 {
            return bad("h must be at least 1".into());
        }
        if !(shape.s > 0.0 && shape.s.is_finite()) {
            return bad(format!("s = {} must be positive", shape.s));
        }
        if self.layers.len() != 4 {
            return bad(format!("expected 4 layers, found {}", self.layers.len()));
        }
        let hidden = shape.hidden_kinds();
        let expect = [
            hidden.clone(),
            hidden,
            shape.layer3_kinds(),
            vec![UnitKind::Identity],
        ];
        for (i, (layer, kinds)) in self.layers.iter().zip(expect.iter()).enumerate() {
            if layer.kinds() != kinds.as_slice() {
                return bad(format!("layer {} unit kinds do not match k={}, h={}", i + 1, shape.k, shape.h));
            }
        }
        if self.time_scale.k != shape.k {
            return bad(format!("time scale k {} differs from k {}", self.time_scale.k, shape.k));
        }
        Ok(shape)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [Layer] {
        &mut self.layers
    }

    pub fn shape(&self) -> Option<FourierShape> {
        self.shape
    }

    pub fn time_scale(&self) -> TimeScale {
        self.time_scale
    }

    pub fn set_time_scale(&mut self, ts: TimeScale) {
        self.time_scale = ts;
    }

    pub fn param_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weights.len() + l.biases.len())
            .sum()
    }

    /// Every parameter, layer by layer, weights before biases.
    pub fn params(&self) -> impl Iterator<Item = f64> + '_ {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(l.biases.iter()).copied())
    }

    pub fn params_mut(&mut self) -> impl Iterator<Item = &mut f64> + '_ {
        self.layers
            .iter_mut()
            .flat_map(|l| l.weights.iter_mut().chain(l.biases.iter_mut()))
    }

    pub fn all_finite(&self) -> bool {
        self.params().all(f64::is_finite)
    }

    /// Prediction together with the full trace.
    pub fn forward(&self, t: f64) -> (f64, Trace) {
        let mut trace = Trace::for_network(self);
        let y = self.forward_into(t, &mut trace);
        (y, trace)
    }

    pub fn predict(&self, t: f64) -> f64 {
        self.predict_with(t, &mut Vec::new(), &mut Vec::new())
    }

    /// [`Network::predict`] reusing two caller-owned activation buffers.
    pub(crate) fn predict_with(&self, t: f64, cur: &mut Vec<f64>, next: &mut Vec<f64>) -> f64 {
        cur.clear();
        cur.push(t);
        for layer in &self.layers {
            next.clear();
            for (o, kind) in layer.kinds.iter().enumerate() {
                let z = layer.biases[o] + dot(layer.row(o), cur);
                next.push(kind.activate(z));
            }
            std::mem::swap(cur, next);
        }
        cur[0]
    }

    pub fn forward_into(&self, t: f64, trace: &mut Trace) -> f64 {
        trace.input = t;
        let input = [t];
        for (l, layer) in self.layers.iter().enumerate() {
            let (done, rest) = trace.act.split_at_mut(l);
            let prev: &[f64] = if l == 0 { &input } else { &done[l - 1] };
            let act = &mut rest[0];
            let pre = &mut trace.pre[l];
            let slope = &mut trace.slope[l];
            for (o, kind) in layer.kinds.iter().enumerate() {
                let z = layer.biases[o] + dot(layer.row(o), prev);
                let (a, d) = kind.activate_both(z);
                pre[o] = z;
                act[o] = a;
                slope[o] = d;
            }
        }
        trace.act.last().map_or(0.0, |a| a[0])
    }

    /// Reverse-mode partials of `0.5 * (prediction - target)^2`.
    pub fn gradient(&self, t: f64, target: f64) -> Gradients {
        let (y, trace) = self.forward(t);
        let n = self.layers.len();
        let mut weights: Vec<Vec<f64>> = self.layers.iter().map(|l| vec![0.0; l.weights.len()]).collect();
        let mut biases: Vec<Vec<f64>> = self.layers.iter().map(|l| vec![0.0; l.out_dim()]).collect();

        let mut delta: Vec<f64> = vec![(y - target) * trace.slope[n - 1][0]];
        for l in (0..n).rev() {
            let layer = &self.layers[l];
            let input: Vec<f64> = if l == 0 { vec![trace.input] } else { trace.act[l - 1].clone() };
            let mut back = vec![0.0; layer.in_dim];
            for (o, &d) in delta.iter().enumerate() {
                biases[l][o] = d;
                let row = layer.row(o);
                let grow = &mut weights[l][o * layer.in_dim..(o + 1) * layer.in_dim];
                for j in 0..layer.in_dim {
                    grow[j] = d * input[j];
                    back[j] += row[j] * d;
                }
            }
            if l > 0 {
                for (b, s) in back.iter_mut().zip(&trace.slope[l - 1]) {
                    *b *= s;
                }
            }
            delta = back;
        }
        Gradients { weights, biases }
    }

    /// One plain gradient-descent update on a single pattern.
    pub fn sgd_step(&mut self, t: f64, target: f64, eta: f64) -> Result<()> {
        let mut scratch = Scratch::new(self);
        self.sgd_step_with(&mut scratch, t, target, eta)
    }

    /// [`Network::sgd_step`] with caller-owned buffers. Backpropagation and the
    /// weight update share one pass per layer; each layer's outgoing delta is
    /// taken from its weights before they change.
    pub fn sgd_step_with(&mut self, scratch: &mut Scratch, t: f64, target: f64, eta: f64) -> Result<()> {
        let y = self.forward_into(t, &mut scratch.trace);
        let n = self.layers.len();
        let trace = &scratch.trace;
        scratch.delta[n - 1][0] = (y - target) * trace.slope[n - 1][0];
        let input = [t];
        for l in (0..n).rev() {
            let (lower, upper) = scratch.delta.split_at_mut(l);
            let delta = &upper[0];
            let layer = &mut self.layers[l];
            let in_dim = layer.in_dim;
            let prev: &[f64] = if l == 0 { &input } else { &trace.act[l - 1] };
            let mut finite = true;
            if l > 0 {
                let back = &mut lower[l - 1];
                back.iter_mut().for_each(|b| *b = 0.0);
                for (o, &d) in delta.iter().enumerate() {
                    let row = &mut layer.weights[o * in_dim..(o + 1) * in_dim];
                    let step = eta * d;
                    for ((w, b), a) in row.iter_mut().zip(back.iter_mut()).zip(prev) {
                        *b += *w * d;
                        *w -= step * a;
                    }
                    layer.biases[o] -= step;
                    finite &= layer.biases[o].is_finite();
                }
                for (b, s) in back.iter_mut().zip(&trace.slope[l - 1]) {
                    *b *= s;
                    finite &= b.is_finite();
                }
            } else {
                for (o, &d) in delta.iter().enumerate() {
                    let row = &mut layer.weights[o * in_dim..(o + 1) * in_dim];
                    let step = eta * d;
                    for (w, a) in row.iter_mut().zip(prev) {
                        *w -= step * a;
                    }
                    layer.biases[o] -= step;
                    finite &= layer.biases[o].is_finite() && row.iter().all(|w| w.is_finite());
                }
            }
            if !finite {
                return Err(Error::NonFiniteUpdate { layer: l + 1 });
            }
        }
        if !y.is_finite() {
            return Err(Error::NonFiniteUpdate { layer: n });
        }
        Ok(())
    }
}

/// Dot product with four independent accumulators so the reduction pipelines.
#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [0.0f64; 4];
    let mut ca = a.chunks_exact(4);
    let mut cb = b.chunks_exact(4);
    for (x, y) in (&mut ca).zip(&mut cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use std::f64::consts::{LN_2, PI};

    use UnitKind::*;

    #[test]
    fn activation_values() {
        assert!((activate(Softplus, 0.0) - LN_2).abs() < 1e-15);
        assert!((activate(Sinusoid, PI / 2.0) - 1.0).abs() < 1e-15);
        assert_eq!(activate(Softplus, 1000.0), 1000.0);
        assert_eq!(activate(Identity, -3.5), -3.5);
        assert_eq!(activate_deriv(Sinusoid, 0.0), 1.0);
        assert_eq!(activate_deriv(Softplus, 0.0), 0.5);
        assert_eq!(activate_deriv(Identity, 7.0), 1.0);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let eps = 1e-6;
        for kind in [Sinusoid, Softplus, Identity] {
            for i in -40..=40 {
                let x = i as f64 * 0.25;
                let fd = (activate(kind, x + eps) - activate(kind, x - eps)) / (2.0 * eps);
                assert!((fd - activate_deriv(kind, x)).abs() < 1e-6, "{kind:?} at {x}");
                let (a, d) = kind.activate_both(x);
                assert_eq!(a.to_bits(), activate(kind, x).to_bits());
                assert!((d - activate_deriv(kind, x)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn softplus_finite_and_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in -1000..=1000 {
            let x = i as f64 * 1e3;
            let y = softplus(x);
            assert!(y.is_finite() && y >= prev);
            prev = y;
        }
    }

    fn mixed_net(rng: &mut Rng, widths: &[usize]) -> Network {
        let kinds = [Sinusoid, Softplus, Identity];
        let mut layers = Vec::new();
        let mut in_dim = 1;
        for (l, &w) in widths.iter().enumerate() {
            let ks: Vec<UnitKind> = if l + 1 == widths.len() {
                vec![Identity; w]
            } else {
                (0..w).map(|i| kinds[i % 3]).collect()
            };
            let weights = (0..w * in_dim).map(|_| rng.normal(0.0, 0.8)).collect();
            let biases = (0..w).map(|_| rng.normal(0.0, 0.5)).collect();
            layers.push(Layer::new(in_dim, weights, biases, ks).unwrap());
            in_dim = w;
        }
        Network::from_layers(layers).unwrap()
    }

    #[test]
    fn zero_network_predicts_zero() {
        let mut rng = Rng::new(1);
        let mut net = mixed_net(&mut rng, &[4, 4, 1]);
        net.params_mut().for_each(|p| *p = 0.0);
        assert_eq!(net.forward(0.7).0, 0.0);
    }

    #[test]
    fn hand_built_sinusoid_path() {
        // Identity chains through layers 1 and 2, a sinusoid in layer 3.
        let l1 = Layer::new(1, vec![1.0], vec![0.0], vec![Identity]).unwrap();
        let l2 = Layer::new(1, vec![1.0], vec![0.0], vec![Identity]).unwrap();
        let l3 = Layer::new(1, vec![2.0 * PI], vec![PI / 2.0], vec![Sinusoid]).unwrap();
        let l4 = Layer::new(1, vec![1.0], vec![0.0], vec![Identity]).unwrap();
        let net = Network::from_layers(vec![l1, l2, l3, l4]).unwrap();
        let (y, trace) = net.forward(0.25);
        assert!(y.abs() < 1e-15);
        assert!((trace.pre[2][0] - PI).abs() < 1e-15);
    }

    #[test]
    fn single_identity_gradient() {
        let l = Layer::new(1, vec![0.0], vec![0.0], vec![Identity]).unwrap();
        let mut net = Network::from_layers(vec![l]).unwrap();
        let g = net.gradient(1.0, 1.0);
        assert_eq!(g.weights[0][0], -1.0);
        assert_eq!(g.biases[0][0], -1.0);
        net.sgd_step(1.0, 1.0, 0.1).unwrap();
        assert!((net.layers()[0].weights[0] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn gradient_zero_at_target() {
        let mut rng = Rng::new(2);
        let net = mixed_net(&mut rng, &[4, 4, 1]);
        let y = net.predict(0.3);
        let g = net.gradient(0.3, y);
        assert!(g.weights.iter().chain(&g.biases).flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn eta_zero_leaves_network() {
        let mut rng = Rng::new(3);
        let mut net = mixed_net(&mut rng, &[4, 4, 1]);
        let before = net.clone();
        net.sgd_step(0.4, 2.0, 0.0).unwrap();
        assert_eq!(net, before);
    }

    #[test]
    fn fused_step_matches_gradient() {
        let mut rng = Rng::new(4);
        let net = mixed_net(&mut rng, &[5, 6, 7, 1]);
        let g = net.gradient(0.6, -1.3);
        let mut stepped = net.clone();
        stepped.sgd_step(0.6, -1.3, 0.01).unwrap();
        for l in 0..net.layers().len() {
            let (a, b) = (&net.layers()[l], &stepped.layers()[l]);
            for i in 0..a.weights.len() {
                let expect = a.weights[i] - 0.01 * g.weights[l][i];
                assert!((b.weights[i] - expect).abs() < 1e-15);
            }
            for i in 0..a.biases.len() {
                let expect = a.biases[i] - 0.01 * g.biases[l][i];
                assert!((b.biases[i] - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn descent_on_fixed_pattern() {
        let mut rng = Rng::new(5);
        let mut net = mixed_net(&mut rng, &[4, 4, 1]);
        let (t, target) = (0.35, 0.8);
        let mut prev = 0.5 * (net.predict(t) - target).powi(2);
        for _ in 0..100 {
            net.sgd_step(t, target, 1e-3).unwrap();
            let loss = 0.5 * (net.predict(t) - target).powi(2);
            assert!(loss <= prev);
            prev = loss;
        }
    }

    #[test]
    fn divergence_is_reported() {
        let mut rng = Rng::new(6);
        let mut net = mixed_net(&mut rng, &[4, 4, 1]);
        assert!(matches!(
            net.sgd_step(0.5, 1e300, 1e300),
            Err(Error::NonFiniteUpdate { .. })
        ));
    }

    #[test]
    fn predict_matches_forward() {
        let mut rng = Rng::new(7);
        let net = mixed_net(&mut rng, &[6, 6, 6, 1]);
        for i in 0..20 {
            let t = i as f64 * 0.1 - 0.5;
            let a = net.predict(t);
            let b = net.forward(t).0;
            assert!((a - b).abs() <= 1e-15 * a.abs().max(1.0));
        }
    }

    #[test]
    fn no_oscillation_without_sinusoid_output() {
        // Softplus/identity compositions have only a handful of inflections.
        let h = 3;
        let mut rng = Rng::new(8);
        let kinds = vec![Identity, Identity, Identity, Softplus, Softplus, Softplus];
        let mut k3 = kinds.clone();
        k3.extend([Sinusoid; 8]);
        let rand_layer = |rng: &mut Rng, in_dim: usize, kinds: Vec<UnitKind>| {
            let w = (0..in_dim * kinds.len()).map(|_| rng.normal(0.0, 1.0)).collect();
            let b = (0..kinds.len()).map(|_| rng.normal(0.0, 1.0)).collect();
            Layer::new(in_dim, w, b, kinds).unwrap()
        };
        let l1 = rand_layer(&mut rng, 1, kinds.clone());
        let l2 = rand_layer(&mut rng, 6, kinds.clone());
        let l3 = rand_layer(&mut rng, 6, k3);
        let mut l4 = rand_layer(&mut rng, 14, vec![Identity]);
        for j in 6..14 {
            *l4.weight_mut(0, j) = 0.0;
        }
        let net = Network::from_layers(vec![l1, l2, l3, l4]).unwrap();
        let ys: Vec<f64> = (0..=2000).map(|i| net.predict(-2.0 + i as f64 * 0.002)).collect();
        let second: Vec<f64> = ys.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect();
        let significant: Vec<f64> = second.into_iter().filter(|d| d.abs() > 1e-12).collect();
        let changes = significant.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
        assert!(changes <= h * 3, "{changes} sign changes");
    }
}
