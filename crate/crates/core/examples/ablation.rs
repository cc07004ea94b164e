//! The full pipeline against plain backpropagation from random weights,
//! trained for the same number of epochs on the same split.
//!
//! ```text
//! cargo run --release --example ablation -- [epochs] [seeds]
//! ```

use deep_fourier::init::{initialize, random_init, InitConfig};
use deep_fourier::signal::{gen_sine_trend_with_step, rmse, sine_trend_default_step, split, TimeSeries};
use deep_fourier::trainer::{baseline_train, train, BaselineConfig, TrainConfig};
use deep_fourier::Network;

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn held_out(net: &Network, test: &TimeSeries) -> f64 {
    let k = net.time_scale().k;
    let preds: Vec<f64> = (0..test.len()).map(|i| net.predict(1.0 + i as f64 / k as f64)).collect();
    rmse(&preds, test.values()).unwrap()
}

fn main() -> deep_fourier::Result<()> {
    let epochs: usize = arg(1, 5_000);
    let seeds: u64 = arg(2, 3);
    let k = 128;
    let all = gen_sine_trend_with_step(2 * k, sine_trend_default_step(k))?;
    let (train_s, test_s) = split(&all, 0.5)?;

    println!("seed  fourier+tuning  random+fixed-rate");
    for seed in 1..=seeds {
        let net = initialize(&train_s, &InitConfig::new(k).with_seed(seed))?;
        let (full, _) = train(net, &train_s, &TrainConfig::default().with_epochs(epochs).with_seed(seed))?;

        let net = random_init(&train_s, &InitConfig::new(k).with_seed(seed), 0.1)?;
        let cfg = BaselineConfig {
            epochs,
            seed,
            ..Default::default()
        };
        let plain = match baseline_train(net, &train_s, &cfg) {
            Ok((n, _)) => format!("{:.4}", held_out(&n, &test_s)),
            Err(e) => format!("failed: {e}"),
        };
        println!("{seed:>4}  {:>14.4}  {plain:>17}", held_out(&full, &test_s));
    }
    Ok(())
}
