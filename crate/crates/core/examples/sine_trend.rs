//! Fit sin(t) + 0.1t on one window and extrapolate over the next.
//!
//! ```text
//! cargo run --release --example sine_trend -- [epochs] [seed] [out_dir]
//! ```
//!
//! Writes `sine_trend.csv` (columns: t, actual, repeat, trained) and
//! `sine_trend_log.csv` (the per-epoch training log).

use std::path::PathBuf;

use deep_fourier::init::{fourier_init, initialize, InitConfig};
use deep_fourier::signal::{gen_sine_trend_with_step, rmse, sine_trend_default_step, split, write_columns};
use deep_fourier::trainer::{train, write_log_csv, EpochEvent, TrainConfig};
use deep_fourier::Network;

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> deep_fourier::Result<()> {
    let epochs: usize = arg(1, 20_000);
    let seed: u64 = arg(2, 1);
    let out_dir = PathBuf::from(arg(3, "target/examples-out".to_string()));
    std::fs::create_dir_all(&out_dir).expect("create output directory");

    let k = 128;
    let all = gen_sine_trend_with_step(2 * k, sine_trend_default_step(k))?;
    let (train_s, test_s) = split(&all, 0.5)?;

    let repeat = fourier_init(&train_s, &InitConfig::new(k))?;
    let net = initialize(&train_s, &InitConfig::new(k).with_seed(seed))?;
    let (trained, state) = train(net, &train_s, &TrainConfig::default().with_epochs(epochs).with_seed(seed))?;

    let curve = |n: &Network| -> Vec<f64> { (0..2 * k).map(|i| n.predict(i as f64 / k as f64)).collect() };
    let (rep, fit) = (curve(&repeat), curve(&trained));
    let times: Vec<f64> = (0..2 * k).map(|i| all.time(i)).collect();
    write_columns(
        out_dir.join("sine_trend.csv"),
        &[("t", &times), ("actual", all.values()), ("repeat", &rep), ("trained", &fit)],
    )?;
    write_log_csv(&state.log, out_dir.join("sine_trend_log.csv"))?;

    let restores = state.log.iter().filter(|r| r.event == Some(EpochEvent::Restore)).count();
    println!("{epochs} epochs, final train rmse/sigma {:.4}, {restores} restores", state.epsilon / state.sigma);
    println!("held-out rmse: repeat {:.4}, trained {:.4}", rmse(&rep[k..], test_s.values())?, rmse(&fit[k..], test_s.values())?);
    println!("wrote {}", out_dir.display());
    Ok(())
}
