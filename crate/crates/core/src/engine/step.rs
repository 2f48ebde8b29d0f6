use num_complex::Complex64;
use rand::{Rng, RngExt};

use crate::cantor::{check_radix, checked_pow, upow, DadicRational};
use crate::error::{invalid, NlftError, Result};
use crate::su11::OVERFLOW_GUARD;

/// A complex step function on `[0, d^support_exponent)` that is constant on
/// cells of width `d^(-cell_exponent)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    d: u32,
    cell_exponent: u32,
    support_exponent: u32,
    values: Vec<Complex64>,
}

impl StepFunction {
    pub fn new(
        d: u32,
        cell_exponent: u32,
        support_exponent: u32,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        check_radix(d)?;
        let expected = checked_pow(d, cell_exponent + support_exponent)
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| NlftError::InputTooLarge("cell count overflows usize".into()))?;
        if values.len() != expected {
            return Err(NlftError::LengthMismatch {
                expected,
                found: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(invalid(format!("value {i} is not finite")));
        }
        let f = StepFunction {
            d,
            cell_exponent,
            support_exponent,
            values,
        };
        let l1 = f.l1_norm();
        if !(l1 < OVERFLOW_GUARD) {
            return Err(NlftError::InputTooLarge(format!(
                "‖f‖₁ = {l1} exceeds the overflow guard {OVERFLOW_GUARD}"
            )));
        }
        Ok(f)
    }

    pub fn zero(d: u32, cell_exponent: u32, support_exponent: u32) -> Result<Self> {
        check_radix(d)?;
        let n = upow(d, cell_exponent + support_exponent);
        Self::new(d, cell_exponent, support_exponent, vec![Complex64::new(0.0, 0.0); n])
    }

    /// Random values with moduli uniform in `[0, amplitude)` and uniform phases.
    pub fn random<R: Rng + ?Sized>(
        d: u32,
        cell_exponent: u32,
        support_exponent: u32,
        amplitude: f64,
        rng: &mut R,
    ) -> Result<Self> {
        check_radix(d)?;
        let n = upow(d, cell_exponent + support_exponent);
        let values = (0..n)
            .map(|_| {
                let r = amplitude * rng.random::<f64>();
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                Complex64::from_polar(r, theta)
            })
            .collect();
        Self::new(d, cell_exponent, support_exponent, values)
    }

    pub fn radix(&self) -> u32 {
        self.d
    }

    pub fn cell_exponent(&self) -> u32 {
        self.cell_exponent
    }

    pub fn support_exponent(&self) -> u32 {
        self.support_exponent
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn cell_width(&self) -> f64 {
        (self.d as f64).powi(-(self.cell_exponent as i32))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn l1_norm(&self) -> f64 {
        self.cell_width() * self.values.iter().map(|v| v.norm()).sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.cell_width() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `‖f‖_p` for `p ≥ 1`; `p = ∞` gives the sup norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let abs: Vec<f64> = self.values.iter().map(|v| v.norm()).collect();
        if p.is_infinite() {
            return abs.iter().copied().fold(0.0, f64::max);
        }
        let max = abs.iter().copied().fold(0.0, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        let sum: f64 = abs.iter().map(|&x| (x / max).powf(p)).sum();
        max * (self.cell_width() * sum).powf(1.0 / p)
    }

    /// The same function multiplied by a real factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.d,
            self.cell_exponent,
            self.support_exponent,
            self.values.iter().map(|v| v * factor).collect(),
        )
    }

    /// Multiply by a factor chosen so that `‖f‖₂ = 1`.
    pub fn normalized_l2(&self) -> Result<Self> {
        let n = self.l2_norm();
        if n == 0.0 {
            return Err(invalid("cannot normalize the zero function"));
        }
        self.scaled(1.0 / n)
    }

    /// The same function viewed on the larger support `[0, d^(support+extra))`.
    pub fn pad_support(&self, extra: u32) -> Result<Self> {
        let mut values = self.values.clone();
        let n = upow(self.d, self.cell_exponent + self.support_exponent + extra);
        values.resize(n, Complex64::new(0.0, 0.0));
        Self::new(self.d, self.cell_exponent, self.support_exponent + extra, values)
    }

    /// Values on cells of width `d^(-freq_exponent)`, each original cell
    /// repeated `d^(freq_exponent - cell_exponent)` times.
    pub fn resample(&self, freq_exponent: u32) -> Result<Vec<Complex64>> {
        if freq_exponent < self.cell_exponent {
            return Err(NlftError::ResolutionMismatch {
                cell_exponent: self.cell_exponent,
                freq_exponent,
            });
        }
        checked_pow(self.d, self.support_exponent + freq_exponent)
            .filter(|&n| n <= (1u64 << 40))
            .ok_or_else(|| NlftError::InputTooLarge("resampled grid is too large".into()))?;
        let repeat = upow(self.d, freq_exponent - self.cell_exponent);
        Ok(self
            .values
            .iter()
            .flat_map(|&v| std::iter::repeat_n(v, repeat))
            .collect())
    }

    /// Left endpoint of cell `m` at resolution `d^(-freq_exponent)`.
    pub fn cell_left_endpoint(&self, m: usize, freq_exponent: u32) -> DadicRational {
        DadicRational::new(self.d, m as u64, freq_exponent).expect("radix checked at construction")
    }
}
