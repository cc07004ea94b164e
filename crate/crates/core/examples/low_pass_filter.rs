//! Remove the high-frequency half of a model's sinusoids and compare curves.
//!
//! ```text
//! cargo run --release --example low_pass_filter -- [keep_fraction] [out_dir]
//! ```

use std::path::PathBuf;

use deep_fourier::init::{initialize, InitConfig};
use deep_fourier::postprocess::{low_pass, zeroed_sinusoids};
use deep_fourier::signal::{gen_mackey_glass, write_columns, MackeyGlassParams, MACKEY_GLASS_BURN_IN};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> deep_fourier::Result<()> {
    let keep: f64 = arg(1, 0.5);
    let out_dir = PathBuf::from(arg(2, "target/examples-out".to_string()));
    std::fs::create_dir_all(&out_dir).expect("create output directory");

    // A stride of 2 keeps plenty of high-frequency detail in the window.
    let k = 128;
    let series = gen_mackey_glass(k, &MackeyGlassParams::default(), MACKEY_GLASS_BURN_IN, 2)?;
    let net = initialize(&series, &InitConfig::new(k).with_seed(7))?;
    let smooth = low_pass(&net, keep)?;
    let zeroed = zeroed_sinusoids(&smooth)?;
    println!(
        "zeroed {} of {k} sinusoid output weights (units {}..={})",
        zeroed.len(),
        zeroed.first().copied().unwrap_or(0),
        zeroed.last().copied().unwrap_or(0)
    );

    let steps = 8 * k;
    let inputs: Vec<f64> = (0..steps).map(|i| 2.0 * i as f64 / steps as f64).collect();
    let full: Vec<f64> = inputs.iter().map(|&t| net.predict(t)).collect();
    let filtered: Vec<f64> = inputs.iter().map(|&t| smooth.predict(t)).collect();
    let roughness = |v: &[f64]| v.windows(3).map(|w| (w[0] - 2.0 * w[1] + w[2]).abs()).sum::<f64>();
    println!(
        "second-difference roughness: full {:.4}, filtered {:.4}",
        roughness(&full),
        roughness(&filtered)
    );
    write_columns(
        out_dir.join("low_pass.csv"),
        &[("input", &inputs), ("full", &full), ("filtered", &filtered)],
    )?;
    Ok(())
}
