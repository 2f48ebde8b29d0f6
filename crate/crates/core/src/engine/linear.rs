//! The linear Cantor-group Fourier transform (a Chrestenson transform), the
//! first-order term of `b` under small potentials.

use num_complex::Complex64;

use crate::cantor::{upow, Twiddles};
use crate::error::Result;

use super::StepFunction;

/// In-place unnormalized radix-`d` transform over `Z_d^digits`: output index
/// `k` holds `Σ_m v_m · exp(2πi/d · Σ_i m_i k_i)` where `m_i`, `k_i` are the
/// base-`d` digits of the indices.
pub fn chrestenson_in_place(data: &mut [Complex64], twiddles: &Twiddles) {
    let d = twiddles.radix() as usize;
    let mut stride = 1;
    let mut scratch = vec![Complex64::new(0.0, 0.0); d];
    while stride < data.len() {
        let block = stride * d;
        for base in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (k, slot) in scratch.iter_mut().enumerate() {
                    *slot = (0..d)
                        .map(|j| data[start + j * stride] * twiddles.phase(j, k))
                        .sum();
                }
                for (k, &v) in scratch.iter().enumerate() {
                    data[start + k * stride] = v;
                }
            }
        }
        stride = block;
    }
}

/// Reverse the lowest `digits` base-`d` digits of `index`.
pub fn digit_reverse(index: usize, d: usize, digits: u32) -> usize {
    let mut rest = index;
    let mut out = 0;
    for _ in 0..digits {
        out = out * d + rest % d;
        rest /= d;
    }
    out
}

/// `F f(ξ) = d^(-N_ξ) · Σ_m f(x_m) E_d(x_m, ξ)` on the grid `ξ = k·d^(-N_x)`,
/// `k = 0..d^(N_x+N_ξ)`, matching the rows of the pyramid's top layer.
pub fn linear_transform(f: &StepFunction, freq_exponent: u32) -> Result<Vec<Complex64>> {
    let d = f.radix() as usize;
    let digits = f.support_exponent() + freq_exponent;
    let mut data = f.resample(freq_exponent)?;
    chrestenson_in_place(&mut data, &Twiddles::new(f.radix()));
    let h = (f.radix() as f64).powi(-(freq_exponent as i32));
    // cell digit i pairs with frequency digit digits-1-i
    let n = upow(f.radix(), digits);
    Ok((0..n)
        .map(|k| data[digit_reverse(k, d, digits)] * h)
        .collect())
}
