//! The group SU(1,1) of matrices `[[a, conj(b)], [b, conj(a)]]` with
//! `|a|² - |b|² = 1`.

use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{NlftError, Result};

/// Largest `h·|w|` accepted by [`cell_transfer`]; `cosh` overflows near 710.
pub const OVERFLOW_GUARD: f64 = 700.0;

/// `arsinh(t)` evaluated as `log1p(t + t²/(1 + sqrt(1 + t²)))`, accurate to
/// full relative precision for small `t`.
pub fn arsinh(t: f64) -> f64 {
    if t < 0.0 {
        return -arsinh(-t);
    }
    if t > 1e150 {
        return std::f64::consts::LN_2 + t.ln();
    }
    let t2 = t * t;
    (t + t2 / (1.0 + (1.0 + t2).sqrt())).ln_1p()
}

/// One SU(1,1) element, stored as the pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su11Element {
    pub a: Complex64,
    pub b: Complex64,
}

impl Default for Su11Element {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Su11Element {
    pub const IDENTITY: Su11Element = Su11Element {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    pub fn new(a: Complex64, b: Complex64) -> Self {
        Su11Element { a, b }
    }

    /// `(cosh s, sinh s)`, the real hyperbolic boost.
    pub fn boost(s: f64) -> Self {
        Su11Element::new(Complex64::new(s.cosh(), 0.0), Complex64::new(s.sinh(), 0.0))
    }

    /// Element with `|b| = r`, `arg b = theta`, `arg a = phi`; `|a|` is fixed
    /// by the group constraint.
    pub fn from_polar(r: f64, theta: f64, phi: f64) -> Self {
        Su11Element::new(
            Complex64::from_polar((1.0 + r * r).sqrt(), phi),
            Complex64::from_polar(r, theta),
        )
    }

    /// Group constraint drift `|a|² - |b|² - 1`.
    pub fn residual(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr() - 1.0
    }

    pub fn abs_a(&self) -> f64 {
        self.a.norm()
    }

    pub fn abs_b(&self) -> f64 {
        self.b.norm()
    }

    /// `ln|a|`, computed from `b` as `½·log1p(|b|²)`.
    pub fn ln_abs_a(&self) -> f64 {
        0.5 * self.b.norm_sqr().ln_1p()
    }

    /// `(ln|a|)^(1/2)`.
    pub fn size(&self) -> f64 {
        self.ln_abs_a().sqrt()
    }

    /// Largest singular value, `|a| + |b|`.
    pub fn spectral_norm(&self) -> f64 {
        self.abs_a() + self.abs_b()
    }

    /// `[[a, conj(b)], [b, conj(a)]]` as a dense row-major matrix.
    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b.conj()], [self.b, self.a.conj()]]
    }

    /// Matrix product `self · other`.
    #[inline]
    pub fn compose(&self, other: &Su11Element) -> Su11Element {
        Su11Element {
            a: self.a * other.a + self.b.conj() * other.b,
            b: self.b * other.a + self.a.conj() * other.b,
        }
    }

    /// The same element with `b` multiplied by a unimodular phase `c`, i.e.
    /// `diag(1, c)·G·diag(1, conj c)` restricted to the `(a, b)` pair.
    #[inline]
    pub fn rotate_b(&self, phase: Complex64) -> Su11Element {
        Su11Element {
            a: self.a,
            b: self.b * phase,
        }
    }

    /// Largest absolute difference over the four matrix entries.
    pub fn max_entry_error(&self, other: &Su11Element) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }

    pub fn is_finite(&self) -> bool {
        self.a.re.is_finite() && self.a.im.is_finite() && self.b.re.is_finite() && self.b.im.is_finite()
    }
}

impl Mul for Su11Element {
    type Output = Su11Element;

    fn mul(self, rhs: Su11Element) -> Su11Element {
        self.compose(&rhs)
    }
}

/// Free-function form of [`Su11Element::compose`].
pub fn compose(g: &Su11Element, h: &Su11Element) -> Su11Element {
    g.compose(h)
}

/// Ordered product `g_0 · g_1 · … · g_{n-1}`.
pub fn ordered_product<'a, I>(factors: I) -> Su11Element
where
    I: IntoIterator<Item = &'a Su11Element>,
{
    factors
        .into_iter()
        .fold(Su11Element::IDENTITY, |acc, g| acc.compose(g))
}

/// Exact solution over a cell of width `h` of `G' = G·W` with
/// `W = [[0, conj(w)], [w, 0]]` constant: `a = cosh(h|w|)`,
/// `b = (w/|w|)·sinh(h|w|)`.
pub fn cell_transfer(w: Complex64, h: f64) -> Result<Su11Element> {
    if !(h > 0.0) {
        return Err(NlftError::InvalidArgument(format!(
            "cell width must be positive, got {h}"
        )));
    }
    let modulus = w.norm();
    let s = h * modulus;
    if !(s < OVERFLOW_GUARD) {
        return Err(NlftError::InputTooLarge(format!(
            "h·|w| = {s} exceeds the overflow guard {OVERFLOW_GUARD}"
        )));
    }
    if modulus == 0.0 {
        return Ok(Su11Element::IDENTITY);
    }
    Ok(Su11Element {
        a: Complex64::new(s.cosh(), 0.0),
        b: w * (s.sinh() / modulus),
    })
}

pub fn size(g: &Su11Element) -> f64 {
    g.size()
}

pub fn spectral_norm(g: &Su11Element) -> f64 {
    g.spectral_norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    /// Fourth-order Runge-Kutta on `G' = G·W` with constant `W`.
    fn rk4_constant(w: Complex64, h: f64, steps: usize) -> Su11Element {
        let wm = [[Complex64::new(0.0, 0.0), w.conj()], [w, Complex64::new(0.0, 0.0)]];
        let deriv = |g: [[Complex64; 2]; 2]| {
            let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] = g[r][0] * wm[0][c] + g[r][1] * wm[1][c];
                }
            }
            out
        };
        let add = |g: [[Complex64; 2]; 2], k: [[Complex64; 2]; 2], s: f64| {
            let mut out = g;
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] += k[r][c] * s;
                }
            }
            out
        };
        let mut g = Su11Element::IDENTITY.to_matrix();
        let dt = h / steps as f64;
        for _ in 0..steps {
            let k1 = deriv(g);
            let k2 = deriv(add(g, k1, dt / 2.0));
            let k3 = deriv(add(g, k2, dt / 2.0));
            let k4 = deriv(add(g, k3, dt));
            for r in 0..2 {
                for c in 0..2 {
                    g[r][c] += (k1[r][c] + k2[r][c] * 2.0 + k3[r][c] * 2.0 + k4[r][c]) * (dt / 6.0);
                }
            }
        }
        Su11Element::new(g[0][0], g[1][0])
    }

    #[test]
    fn compose_identity_and_boosts() {
        let g = Su11Element::from_polar(0.7, 1.1, -0.4);
        assert_eq!(compose(&g, &Su11Element::IDENTITY), g);
        let (s, t) = (0.3, 1.7);
        let p = compose(&Su11Element::boost(s), &Su11Element::boost(t));
        let q = Su11Element::boost(s + t);
        assert!(p.max_entry_error(&q) < 1e-12);
    }

    #[test]
    fn cell_transfer_examples() {
        assert_eq!(cell_transfer(Complex64::new(0.0, 0.0), 0.5).unwrap(), Su11Element::IDENTITY);
        let g = cell_transfer(Complex64::new(1.0, 0.0), 1.0).unwrap();
        assert!((g.a.re - 1.543_080_634_815_243_7).abs() < 1e-15);
        assert!((g.b.re - 1.175_201_193_643_801_4).abs() < 1e-15);
        let gi = cell_transfer(I, 1.0).unwrap();
        assert!(gi.max_entry_error(&Su11Element::new(1.0f64.cosh().into(), I * 1.0f64.sinh())) < 1e-15);
    }

    #[test]
    fn cell_transfer_matches_numerical_integration() {
        for &(w, h) in &[
            (Complex64::new(1.0, 0.0), 1.0),
            (Complex64::new(0.3, -1.2), 0.7),
            (Complex64::new(-2.0, 0.5), 0.25),
        ] {
            let exact = cell_transfer(w, h).unwrap();
            let numeric = rk4_constant(w, h, 4000);
            assert!(exact.max_entry_error(&numeric) < 1e-11, "{w} {h}");
        }
    }

    #[test]
    fn cell_transfer_guards() {
        assert!(matches!(
            cell_transfer(Complex64::new(800.0, 0.0), 1.0),
            Err(NlftError::InputTooLarge(_))
        ));
        assert!(cell_transfer(Complex64::new(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn size_and_norm_examples() {
        assert_eq!(Su11Element::IDENTITY.size(), 0.0);
        assert_eq!(Su11Element::IDENTITY.spectral_norm(), 1.0);
        let g = Su11Element::boost(1.0);
        assert!((g.size() - 1.0f64.cosh().ln().sqrt()).abs() < 1e-15);
        assert!((g.size() - 0.6586).abs() < 1e-4);
        assert!((g.spectral_norm() - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn arsinh_matches_std_and_is_accurate_near_zero() {
        for &t in &[1e-300, 1e-12, 1e-3, 0.5, 1.0, 7.0, 1e6, 1e200] {
            let ours = arsinh(t);
            let std = t.asinh();
            assert!((ours - std).abs() <= 4.0 * f64::EPSILON * std.abs(), "{t}");
        }
        assert_eq!(arsinh(1e-300), 1e-300);
        assert!((arsinh(1.0) - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);
    }

    #[test]
    fn ordered_product_is_order_sensitive() {
        let g = cell_transfer(Complex64::new(1.0, 0.0), 0.5).unwrap();
        let h = cell_transfer(I, 0.5).unwrap();
        let gh = ordered_product([&g, &h]);
        let hg = ordered_product([&h, &g]);
        assert!(gh.max_entry_error(&hg) > 1e-3);
    }
}
