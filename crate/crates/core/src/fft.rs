//! Forward discrete Fourier transform.
//!
//! Convention: `R[m] = sum_n x[n] * exp(-2πi m n / k)`, unscaled.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexSeq = Vec<Complex64>;

/// Iterative radix-2 Cooley–Tukey transform. The length must be a power of two.
pub fn fft(input: &[Complex64]) -> Result<ComplexSeq> {
    let k = input.len();
    if !k.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(k));
    }
    let mut data = input.to_vec();
    bit_reverse_permute(&mut data);

    // Twiddles for the largest stage; smaller stages stride through them.
    let twiddles: Vec<Complex64> = (0..k / 2)
        .map(|j| Complex64::from_polar(1.0, -TAU * j as f64 / k as f64))
        .collect();

    let mut len = 2;
    while len <= k {
        let half = len / 2;
        let stride = k / len;
        for chunk in data.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let t = twiddles[j * stride] * *b;
                *b = *a - t;
                *a += t;
            }
        }
        len *= 2;
    }
    Ok(data)
}

fn bit_reverse_permute(data: &mut [Complex64]) {
    let k = data.len();
    if k <= 2 {
        return;
    }
    let bits = k.trailing_zeros();
    for i in 0..k {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            data.swap(i, j);
        }
    }
}

/// Direct O(k²) summation with the same kernel and scaling as [`fft`].
pub fn dft_naive(input: &[Complex64]) -> ComplexSeq {
    let k = input.len();
    // Kernel value for each residue of m*n mod k, keeping every angle small and exact.
    let kernel: Vec<Complex64> = (0..k)
        .map(|r| Complex64::from_polar(1.0, -TAU * (r as f64 / k as f64)))
        .collect();
    (0..k)
        .map(|m| input.iter().enumerate().map(|(n, x)| x * kernel[(m * n) % k]).sum())
        .collect()
}

/// Spectrum of a real sequence.
pub fn fft_real(values: &[f64]) -> Result<ComplexSeq> {
    let input: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft(&input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn random_seq(rng: &mut Rng, k: usize) -> Vec<Complex64> {
        (0..k)
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
    fn zeros_stay_zero() {
        let out = fft(&[Complex64::new(0.0, 0.0); 8]).unwrap();
        assert!(out.iter().all(|c| c.re == 0.0 && c.im == 0.0));
    }

    #[test]
    fn constant_goes_to_dc() {
        let c = 2.5;
        let k = 16;
        let out = fft(&vec![Complex64::new(c, 0.0); k]).unwrap();
        assert!((out[0].re - k as f64 * c).abs() < 1e-12);
        assert!(out[0].im.abs() < 1e-12);
        assert!(out[1..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(matches!(
            fft(&[Complex64::new(1.0, 0.0); 6]),
            Err(Error::NotPowerOfTwo(6))
        ));
        assert!(fft(&[]).is_err());
    }

    #[test]
    fn length_one_is_identity() {
        let x = [Complex64::new(3.0, -4.0)];
        assert_eq!(dft_naive(&x), x.to_vec());
        assert_eq!(fft(&x).unwrap(), x.to_vec());
    }

    #[test]
    fn cosine_spectrum() {
        let k = 8;
        let x: Vec<Complex64> = (0..k)
            .map(|n| Complex64::new((TAU * n as f64 / k as f64).cos(), 0.0))
            .collect();
        let out = dft_naive(&x);
        for (m, z) in out.iter().enumerate() {
            let expect = if m == 1 || m == 7 { 4.0 } else { 0.0 };
            assert!((z.re - expect).abs() < 1e-12 && z.im.abs() < 1e-12, "bin {m}: {z}");
        }
    }

    #[test]
    fn matches_naive_len_16() {
        let mut rng = Rng::new(16);
        let x = random_seq(&mut rng, 16);
        assert!(max_err(&fft(&x).unwrap(), &dft_naive(&x)) < 1e-12);
    }

    #[test]
    fn linearity() {
        let mut rng = Rng::new(5);
        let x = random_seq(&mut rng, 64);
        let y = random_seq(&mut rng, 64);
        let (a, b) = (Complex64::new(1.5, -0.5), Complex64::new(-2.0, 0.25));
        let combo: Vec<Complex64> = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
        let lhs = fft(&combo).unwrap();
        let fx = fft(&x).unwrap();
        let fy = fft(&y).unwrap();
        let rhs: Vec<Complex64> = fx.iter().zip(&fy).map(|(p, q)| a * p + b * q).collect();
        assert!(max_err(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn real_input_conjugate_symmetry_and_parseval() {
        let mut rng = Rng::new(9);
        let k = 256;
        let v: Vec<f64> = (0..k).map(|_| rng.normal(0.0, 3.0)).collect();
        let r = fft_real(&v).unwrap();
        for m in 1..k {
            let d = r[k - m] - r[m].conj();
            assert!(d.re.abs() < 1e-10 && d.im.abs() < 1e-10);
        }
        let time: f64 = v.iter().map(|x| x * x).sum();
        let freq: f64 = r.iter().map(|z| z.norm_sqr()).sum::<f64>() / k as f64;
        assert!(((time - freq) / time).abs() < 1e-8);
    }
}
