use deep_fourier::network::{Layer, Network, UnitKind};
use deep_fourier::rng::Rng;

const KINDS: [UnitKind; 3] = [UnitKind::Sinusoid, UnitKind::Softplus, UnitKind::Identity];

fn random_layer(rng: &mut Rng, in_dim: usize, out_dim: usize) -> Layer {
    let kinds = (0..out_dim).map(|_| KINDS[rng.below(3)]).collect();
    let weights = (0..in_dim * out_dim).map(|_| rng.normal(0.0, 1.0)).collect();
    let biases = (0..out_dim).map(|_| rng.normal(0.0, 0.5)).collect();
    Layer::new(in_dim, weights, biases, kinds).unwrap()
}

fn random_net(rng: &mut Rng) -> Network {
    let first = random_layer(rng, 1, 4);
    let second = random_layer(rng, 4, 4);
    let out = Layer::new(4, (0..4).map(|_| rng.normal(0.0, 1.0)).collect(), vec![0.3], vec![UnitKind::Identity]).unwrap();
    Network::from_layers(vec![first, second, out]).unwrap()
}

fn loss(net: &Network, t: f64, target: f64) -> f64 {
    let e = net.predict(t) - target;
    0.5 * e * e
}

fn check(analytic: f64, numeric: f64) -> bool {
    let diff = (analytic - numeric).abs();
    diff <= 1e-7 || diff <= 1e-4 * analytic.abs().max(numeric.abs())
}

#[test]
fn backprop_matches_central_differences() {
    let mut rng = Rng::new(2024);
    let h = 1e-6;
    let mut checked = 0;
    for case in 0..100 {
        let net = random_net(&mut rng);
        let t = rng.uniform() * 2.0 - 0.5;
        let target = rng.normal(0.0, 1.0);
        let g = net.gradient(t, target);
        for l in 0..net.layers().len() {
            let nw = net.layers()[l].weights.len();
            let nb = net.layers()[l].biases.len();
            for i in 0..nw + nb {
                let bump = |d: f64| {
                    let mut n = net.clone();
                    let layer = &mut n.layers_mut()[l];
                    if i < nw {
                        layer.weights[i] += d;
                    } else {
                        layer.biases[i - nw] += d;
                    }
                    loss(&n, t, target)
                };
                let numeric = (bump(h) - bump(-h)) / (2.0 * h);
                let analytic = if i < nw { g.weights[l][i] } else { g.biases[l][i - nw] };
                assert!(
                    check(analytic, numeric),
                    "case {case} layer {l} param {i}: analytic {analytic:e} numeric {numeric:e}"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 100 * (8 + 20 + 5));
}

#[test]
fn fused_step_applies_the_gradient() {
    let mut rng = Rng::new(7);
    for _ in 0..20 {
        let net = random_net(&mut rng);
        let (t, target, eta) = (rng.uniform(), rng.normal(0.0, 1.0), 1e-3);
        let g = net.gradient(t, target);
        let mut stepped = net.clone();
        stepped.sgd_step(t, target, eta).unwrap();
        for l in 0..net.layers().len() {
            for (i, w) in stepped.layers()[l].weights.iter().enumerate() {
                let expect = net.layers()[l].weights[i] - eta * g.weights[l][i];
                assert!((w - expect).abs() <= 1e-15 * expect.abs().max(1.0));
            }
            for (i, b) in stepped.layers()[l].biases.iter().enumerate() {
                let expect = net.layers()[l].biases[i] - eta * g.biases[l][i];
                assert!((b - expect).abs() <= 1e-15 * expect.abs().max(1.0));
            }
        }
    }
}
