//! Low-pass filtering of a trained model.

use crate::error::{Error, Result};
use crate::network::Network;

/// Zeroes the output weights of the highest-frequency sinusoid units.
///
/// Sinusoid units come in (cosine, sine) pairs; pair `m` (1-based) carries
/// angular frequency `2πm`. The lowest `ceil(keep_fraction * k/2)` pairs keep
/// their output weights and the rest are set to exactly zero. Nothing else
/// changes.
pub fn low_pass(net: &Network, keep_fraction: f64) -> Result<Network> {
    if !(keep_fraction > 0.0 && keep_fraction <= 1.0) {
        return Err(Error::InvalidParam(format!(
            "keep fraction {keep_fraction} must lie in (0, 1]"
        )));
    }
    let shape = net.check_fourier_topology()?;
    let pairs = shape.k / 2;
    // The small offset keeps exact products like 0.3 * 10 from rounding up.
    let keep_pairs = ((keep_fraction * pairs as f64) - 1e-9).ceil().max(0.0) as usize;
    let mut out = net.clone();
    let output = &mut out.layers_mut()[3];
    for unit in shape.first_sinusoid() + 2 * keep_pairs..shape.first_sinusoid() + shape.k {
        *output.weight_mut(0, unit) = 0.0;
    }
    Ok(out)
}

/// 1-based sinusoid indices whose output weight is exactly zero.
pub fn zeroed_sinusoids(net: &Network) -> Result<Vec<usize>> {
    let shape = net.check_fourier_topology()?;
    let output = &net.layers()[3];
    Ok((1..=shape.k)
        .filter(|j| output.weight(0, shape.first_sinusoid() + j - 1) == 0.0)
        .collect())
}
