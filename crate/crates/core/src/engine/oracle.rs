//! Reference evaluation of the scattering data by an ordered product of
//! exact cell solutions, one frequency at a time.

use std::ops::Range;

use rayon::prelude::*;

use crate::cantor::{character, checked_pow, upow, DadicInterval, DadicRational};
use crate::error::{invalid, NlftError, Result};
use crate::su11::{cell_transfer, Su11Element};

use super::StepFunction;

/// The grid frequency `k·d^(-N_x)`.
pub fn grid_frequency(d: u32, support_exponent: u32, k: usize) -> DadicRational {
    DadicRational::new(d, k as u64, support_exponent).expect("radix validated by caller")
}

fn check_frequency(f: &StepFunction, freq_exponent: u32, xi: &DadicRational) -> Result<()> {
    if xi.radix() != f.radix() {
        return Err(invalid(format!(
            "frequency has radix {}, function has radix {}",
            xi.radix(),
            f.radix()
        )));
    }
    if freq_exponent < f.cell_exponent() {
        return Err(NlftError::ResolutionMismatch {
            cell_exponent: f.cell_exponent(),
            freq_exponent,
        });
    }
    if xi.scale() > f.support_exponent() {
        return Err(invalid(format!(
            "frequency {xi} is finer than the grid spacing d^-{}",
            f.support_exponent()
        )));
    }
    let bound = checked_pow(f.radix(), freq_exponent + xi.scale());
    if bound.is_none_or(|b| xi.numerator() >= b) {
        return Err(invalid(format!(
            "frequency {xi} lies outside [0, {}^{freq_exponent})",
            f.radix()
        )));
    }
    Ok(())
}

fn ordered_cells(
    f: &StepFunction,
    freq_exponent: u32,
    cells: Range<usize>,
    xi: &DadicRational,
) -> Result<Su11Element> {
    let repeat = upow(f.radix(), freq_exponent - f.cell_exponent());
    let h = (f.radix() as f64).powi(-(freq_exponent as i32));
    let mut g = Su11Element::IDENTITY;
    for m in cells {
        let w = f.values()[m / repeat];
        let x = f.cell_left_endpoint(m, freq_exponent);
        g = g.compose(&cell_transfer(w * character(&x, xi)?, h)?);
    }
    Ok(g)
}

/// `G(ξ)` for a grid frequency `ξ ∈ [0, d^N_ξ)` with digits no finer than
/// `d^(-N_x)`: the ascending product over the cells of width `d^(-N_ξ)` of
/// `cell_transfer(f(x_m)·E_d(x_m, ξ), d^(-N_ξ))`.
pub fn direct_oracle(
    f: &StepFunction,
    freq_exponent: u32,
    xi: &DadicRational,
) -> Result<Su11Element> {
    check_frequency(f, freq_exponent, xi)?;
    let total = upow(f.radix(), f.support_exponent() + freq_exponent);
    ordered_cells(f, freq_exponent, 0..total, xi)
}

/// `G_I(ξ)`, the scattering data of `f·1_I`.
pub fn direct_oracle_on(
    f: &StepFunction,
    freq_exponent: u32,
    time: &DadicInterval,
    xi: &DadicRational,
) -> Result<Su11Element> {
    check_frequency(f, freq_exponent, xi)?;
    let lowest = -(freq_exponent as i32);
    if time.radix() != f.radix() || time.exponent() < lowest {
        return Err(invalid("interval is finer than the cell grid"));
    }
    if time.exponent() > f.support_exponent() as i32 {
        return Err(invalid("interval is wider than the support"));
    }
    let width = upow(f.radix(), (time.exponent() - lowest) as u32);
    let total = upow(f.radix(), f.support_exponent() + freq_exponent);
    let start = time.index() as usize * width;
    if start + width > total {
        return Err(invalid("interval extends past the support"));
    }
    ordered_cells(f, freq_exponent, start..start + width, xi)
}

/// [`direct_oracle`] at every grid frequency `k·d^(-N_x)`, `k` ascending.
pub fn direct_oracle_grid(f: &StepFunction, freq_exponent: u32) -> Result<Vec<Su11Element>> {
    let n = upow(f.radix(), f.support_exponent() + freq_exponent);
    (0..n)
        .into_par_iter()
        .map(|k| {
            let xi = grid_frequency(f.radix(), f.support_exponent(), k);
            direct_oracle(f, freq_exponent, &xi)
        })
        .collect()
}
