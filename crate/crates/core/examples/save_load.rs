//! Save a model as JSON, load it back and check nothing changed.
//!
//! ```text
//! cargo run --example save_load -- [path]
//! ```

use deep_fourier::init::{initialize, max_training_error, InitConfig};
use deep_fourier::model_io::{load, save};
use deep_fourier::signal::gen_sine_trend;

fn main() -> deep_fourier::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "target/examples-out/model.json".into());
    if let Some(dir) = std::path::Path::new(&path).parent() {
        std::fs::create_dir_all(dir).expect("create output directory");
    }
    let series = gen_sine_trend(32)?;
    let net = initialize(&series, &InitConfig::new(32).with_seed(5))?;
    save(&net, &path)?;
    let back = load(&path)?;

    let identical = back.params().zip(net.params()).all(|(a, b)| a.to_bits() == b.to_bits());
    println!("{} parameters, bit-identical after reload: {identical}", back.param_count());
    println!("max training error {:.3e}", max_training_error(&back, &series));
    let text = std::fs::read_to_string(&path).expect("read model back");
    for line in text.lines().take(12) {
        println!("  {line}");
    }
    println!("  ... ({} bytes in {path})", text.len());
    Ok(())
}
