//! The radix-2 transform against direct summation, and the spectrum that
//! seeds a network.
//!
//! ```text
//! cargo run --release --example fft_oracle -- [out_dir]
//! ```

use std::path::PathBuf;
use std::time::Instant;

use deep_fourier::fft::{dft_naive, fft, fft_real};
use deep_fourier::rng::Rng;
use deep_fourier::signal::{gen_sine_trend, write_columns};
use num_complex::Complex64;

fn main() -> deep_fourier::Result<()> {
    let out_dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/examples-out".into()));
    std::fs::create_dir_all(&out_dir).expect("create output directory");

    let mut rng = Rng::new(3);
    println!("   k   max |fft - dft|   fft time   dft time");
    for log in [4, 6, 8, 10, 12] {
        let k = 1usize << log;
        let x: Vec<Complex64> = (0..k)
            .map(|_| Complex64::new(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0)))
            .collect();
        let t0 = Instant::now();
        let fast = fft(&x)?;
        let t_fast = t0.elapsed();
        let t0 = Instant::now();
        let slow = dft_naive(&x);
        let t_slow = t0.elapsed();
        let err = fast.iter().zip(&slow).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        println!("{k:>4}   {err:>15.3e}   {t_fast:>8.1?}   {t_slow:>8.1?}");
    }

    let series = gen_sine_trend(128)?;
    let spectrum = fft_real(series.values())?;
    let k = spectrum.len() as f64;
    let half = spectrum.len() / 2;
    let bins: Vec<f64> = (0..=half).map(|m| m as f64).collect();
    let amp: Vec<f64> = spectrum[..=half].iter().map(|z| z.norm() * 2.0 / k).collect();
    let mut strongest: Vec<usize> = (1..=half).collect();
    strongest.sort_by(|&a, &b| amp[b].total_cmp(&amp[a]));
    println!("sine-trend: mean {:.4}; strongest bins {:?}", spectrum[0].re / k, &strongest[..4]);
    write_columns(out_dir.join("spectrum.csv"), &[("bin", &bins), ("amplitude", &amp)])?;
    Ok(())
}
