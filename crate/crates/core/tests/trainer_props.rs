use deep_fourier::init::{initialize, random_init, InitConfig};
use deep_fourier::network::Scratch;
use deep_fourier::signal::{gen_sine_trend, rmse, TimeSeries};
use deep_fourier::trainer::{baseline_train, train, BaselineConfig, EpochEvent, TrainConfig};
use deep_fourier::{Error, Network};

fn small() -> (Network, TimeSeries) {
    let series = gen_sine_trend(32).unwrap();
    let net = initialize(&series, &InitConfig { h: 4, ..InitConfig::new(32) }.with_seed(3)).unwrap();
    (net, series)
}

fn fast_cfg(epochs: usize) -> TrainConfig {
    TrainConfig {
        eta0: 1e-4,
        ..TrainConfig::default().with_epochs(epochs).with_seed(9)
    }
}

#[test]
fn same_seed_is_bit_identical() {
    let (net, series) = small();
    let (a, sa) = train(net.clone(), &series, &fast_cfg(300)).unwrap();
    let (b, sb) = train(net, &series, &fast_cfg(300)).unwrap();
    assert!(a.params().zip(b.params()).all(|(x, y)| x.to_bits() == y.to_bits()));
    assert_eq!(sa.log, sb.log);
}

#[test]
fn log_obeys_controller_invariants() {
    let (net, series) = small();
    let cfg = fast_cfg(600);
    let (_, state) = train(net, &series, &cfg).unwrap();
    assert_eq!(state.log.len(), 600);
    let mut lambda = cfg.lambda0;
    let mut eta = cfg.eta0;
    for r in &state.log {
        let below = r.rmse < cfg.target_ratio * state.sigma;
        lambda = if below { lambda * cfg.lambda_gain } else { lambda / cfg.lambda_gain };
        eta *= cfg.eta_gain;
        let restore = r.rmse >= cfg.guard_ratio * state.sigma;
        if restore {
            eta *= cfg.eta_cut;
        }
        assert_eq!(r.lambda, lambda, "epoch {}", r.epoch);
        assert_eq!(r.eta, eta, "epoch {}", r.epoch);
        let expect = if restore { EpochEvent::Restore } else { EpochEvent::Backup };
        assert_eq!(r.event, Some(expect));
        assert!(r.lambda > 0.0 && r.lambda.is_finite());
    }
}

#[test]
fn restore_is_bit_exact_against_backup() {
    let (net, series) = small();
    let (out, state) = train(net, &series, &fast_cfg(400)).unwrap();
    if state.log.last().unwrap().event == Some(EpochEvent::Restore) {
        assert_eq!(out, state.backup);
    }
    let restores = state.log.iter().filter(|r| r.event == Some(EpochEvent::Restore)).count();
    assert!(restores > 0, "eta0 = 1e-4 should overshoot at least once");
}

#[test]
fn unregularized_descent_is_monotone() {
    let (mut net, series) = small();
    let v = series.values();
    let k = v.len();
    let eps = |n: &Network| {
        let p: Vec<f64> = (0..k).map(|i| n.predict(i as f64 / k as f64)).collect();
        rmse(&p, v).unwrap()
    };
    let mut scratch = Scratch::new(&net);
    let mut prev = eps(&net);
    for _ in 0..1000 {
        for (n, &target) in v.iter().enumerate() {
            net.sgd_step_with(&mut scratch, n as f64 / k as f64, target, 1e-9).unwrap();
        }
        let now = eps(&net);
        assert!(now <= prev * (1.0 + 1e-12), "{now} > {prev}");
        prev = now;
    }
}

#[test]
fn training_rejects_short_series() {
    let (net, series) = small();
    let short = series.prefix(16).unwrap();
    assert!(matches!(
        train(net, &short, &fast_cfg(1)),
        Err(Error::TooShort { needed: 32, got: 16 })
    ));
}

#[test]
fn baseline_never_restores() {
    let series = gen_sine_trend(32).unwrap();
    let net = random_init(&series, &InitConfig { h: 4, ..InitConfig::new(32) }, 0.1).unwrap();
    let cfg = BaselineConfig { epochs: 200, ..Default::default() };
    let (_, log) = baseline_train(net, &series, &cfg).unwrap();
    assert_eq!(log.len(), 200);
    assert!(log.iter().all(|r| r.event.is_none()));
}

#[test]
fn baseline_reports_divergence_early() {
    let series = gen_sine_trend(128).unwrap();
    let net = random_init(&series, &InitConfig::new(128).with_seed(1), 0.1).unwrap();
    let cfg = BaselineConfig {
        epochs: 100,
        eta: 1.0,
        ..Default::default()
    };
    match baseline_train(net, &series, &cfg) {
        Err(Error::Diverged { epoch }) => assert!(epoch < 100),
        other => panic!("expected divergence, got {:?}", other.map(|(_, l)| l.len())),
    }
}
