//! Train on the first half of a Mackey-Glass sequence and extrapolate the second.
//!
//! ```text
//! cargo run --release --example mackey_glass -- [epochs] [seed] [out_dir]
//! ```

use std::path::PathBuf;

use deep_fourier::init::{fourier_init, initialize, InitConfig};
use deep_fourier::signal::{
    gen_mackey_glass, rmse, split, write_columns, MackeyGlassParams, MACKEY_GLASS_BURN_IN, MACKEY_GLASS_STRIDE,
};
use deep_fourier::trainer::{train, TrainConfig};
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
    let params = MackeyGlassParams::default();
    let all = gen_mackey_glass(2 * k, &params, MACKEY_GLASS_BURN_IN, MACKEY_GLASS_STRIDE)?;
    let (train_s, test_s) = split(&all, 0.5)?;
    println!(
        "tau {}, sampled every {} time units from t = {}",
        params.tau,
        all.step(),
        all.start_time()
    );

    let repeat = fourier_init(&train_s, &InitConfig::new(k))?;
    let net = initialize(&train_s, &InitConfig::new(k).with_seed(seed))?;
    let (trained, state) = train(net, &train_s, &TrainConfig::default().with_epochs(epochs).with_seed(seed))?;

    let curve = |n: &Network| -> Vec<f64> { (0..2 * k).map(|i| n.predict(i as f64 / k as f64)).collect() };
    let (rep, fit) = (curve(&repeat), curve(&trained));
    let times: Vec<f64> = (0..2 * k).map(|i| all.time(i)).collect();
    write_columns(
        out_dir.join("mackey_glass.csv"),
        &[("t", &times), ("actual", all.values()), ("repeat", &rep), ("trained", &fit)],
    )?;
    println!("train rmse/sigma {:.4}", state.epsilon / state.sigma);
    println!(
        "held-out rmse: repeat {:.4}, trained {:.4} (sigma {:.4})",
        rmse(&rep[k..], test_s.values())?,
        rmse(&fit[k..], test_s.values())?,
        test_s.std_dev()
    );
    Ok(())
}
