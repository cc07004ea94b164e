//! Load any single-series CSV, train on the largest power-of-two prefix and
//! forecast one window past it.
//!
//! ```text
//! cargo run --release --example csv_pipeline -- <data.csv> [epochs] [out_dir]
//! ```
//!
//! With no file a sine-trend series is written first and used instead.

use std::path::PathBuf;

use deep_fourier::init::{initialize, largest_power_of_two, InitConfig};
use deep_fourier::signal::{csv_column_count, gen_sine_trend, load_csv, load_csv_timed, write_columns};
use deep_fourier::trainer::{train, TrainConfig};

fn main() -> deep_fourier::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let epochs: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5_000);
    let out_dir = PathBuf::from(args.get(3).cloned().unwrap_or_else(|| "target/examples-out".into()));
    std::fs::create_dir_all(&out_dir).expect("create output directory");
    let data = match args.get(1) {
        Some(p) => PathBuf::from(p),
        None => {
            let p = out_dir.join("input.csv");
            gen_sine_trend(100)?.write_csv(&p)?;
            p
        }
    };

    let cols = csv_column_count(&data)?;
    let series = if cols >= 2 {
        load_csv_timed(&data, 0, cols - 1)?
    } else {
        load_csv(&data, 0)?
    };
    let k = largest_power_of_two(series.len());
    let train_s = series.prefix(k)?;
    println!("{}: {} rows, training on the first {k}", data.display(), series.len());

    let net = initialize(&train_s, &InitConfig::new(k))?;
    let (net, state) = train(net, &train_s, &TrainConfig::default().with_epochs(epochs))?;
    println!("train rmse/sigma {:.4}", state.epsilon / state.sigma);

    let ts = net.time_scale();
    let inputs: Vec<f64> = (0..2 * k).map(|n| ts.input_for_index(n as f64)).collect();
    let times: Vec<f64> = inputs.iter().map(|&t| ts.time_for_input(t)).collect();
    let preds: Vec<f64> = inputs.iter().map(|&t| net.predict(t)).collect();
    let out = out_dir.join("forecast.csv");
    write_columns(&out, &[("t", &times), ("actual", series.values()), ("prediction", &preds)])?;
    println!("wrote {}", out.display());
    Ok(())
}
