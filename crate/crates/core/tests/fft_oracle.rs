use deep_fourier::fft::{dft_naive, fft};
use deep_fourier::rng::Rng;
use num_complex::Complex64;

fn random_input(rng: &mut Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0)))
        .collect()
}

fn max_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.re - y.re).abs().max((x.im - y.im).abs()))
        .fold(0.0, f64::max)
}

#[test]
fn matches_naive_dft_on_seeded_inputs() {
    let mut rng = Rng::new(11);
    let mut worst = 0.0f64;
    for case in 0..1000 {
        let log = 1 + (case % 10);
        let x = random_input(&mut rng, 1 << log);
        worst = worst.max(max_err(&fft(&x).unwrap(), &dft_naive(&x)));
    }
    assert!(worst <= 1e-12, "max component error {worst:e}");
}

#[test]
fn rejects_non_powers_of_two() {
    for len in [0, 3, 6, 100, 1000] {
        assert!(fft(&vec![Complex64::new(1.0, 0.0); len]).is_err(), "len {len}");
    }
}

#[test]
fn real_input_is_conjugate_symmetric_and_parseval() {
    let mut rng = Rng::new(5);
    for log in 1..=10 {
        let k = 1 << log;
        let x: Vec<Complex64> = (0..k).map(|_| Complex64::new(rng.normal(0.0, 1.0), 0.0)).collect();
        let f = fft(&x).unwrap();
        for m in 1..k {
            assert!((f[m] - f[k - m].conj()).norm() <= 1e-12 * k as f64);
        }
        let time: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let freq: f64 = f.iter().map(|z| z.norm_sqr()).sum::<f64>() / k as f64;
        assert!((time - freq).abs() <= 1e-12 * time.max(1.0) * k as f64);
    }
}
