//! Exact base-`d` arithmetic on the Cantor group `A_d`.
//!
//! Points of `[0, ∞)` are identified with digit sequences `(x_n)` over
//! `Z/dZ` that vanish for large `n`. Only terminating expansions are
//! representable, so every value is `numerator · d^(-scale)` with integer
//! parts and all digit manipulations are exact.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, NlftError, Result};

pub(crate) fn check_radix(d: u32) -> Result<()> {
    if d < 2 {
        return Err(invalid(format!("radix must be at least 2, got {d}")));
    }
    Ok(())
}

/// `d^exp` as `u64`, `None` on overflow.
pub fn checked_pow(d: u32, exp: u32) -> Option<u64> {
    (d as u64).checked_pow(exp)
}

/// `d^exp` as `usize`, panicking on overflow. Used for array extents that
/// have already been validated by a constructor.
pub(crate) fn upow(d: u32, exp: u32) -> usize {
    (d as usize)
        .checked_pow(exp)
        .expect("d-adic extent overflows usize")
}

/// The `d`-th root of unity `exp(2πi·k/d)`.
///
/// Quarter turns are returned exactly; everything else goes through a single
/// `sin_cos` of the reduced angle, so equal `(k mod d, d)` always give
/// bit-identical results.
pub fn unit_root(d: u32, k: u64) -> Complex64 {
    let d64 = d as u64;
    let k = k % d64;
    if (4 * k).is_multiple_of(d64) {
        return match (4 * k) / d64 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = std::f64::consts::TAU * (k as f64) / (d as f64);
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// Precomputed table of `exp(2πi·k/d)` for `k = 0..d`.
#[derive(Debug, Clone)]
pub struct Twiddles {
    d: u32,
    roots: Vec<Complex64>,
}

impl Twiddles {
    pub fn new(d: u32) -> Self {
        let roots = (0..d as u64).map(|k| unit_root(d, k)).collect();
        Twiddles { d, roots }
    }

    pub fn radix(&self) -> u32 {
        self.d
    }

    /// `exp(2πi·k/d)` for any integer `k`; reduction is exact.
    #[inline]
    pub fn root(&self, k: u64) -> Complex64 {
        self.roots[(k % self.d as u64) as usize]
    }

    /// `exp(2πi·j·k/d)`.
    #[inline]
    pub fn phase(&self, j: usize, k: usize) -> Complex64 {
        self.roots[(j * k) % self.d as usize]
    }
}

/// An exact terminating base-`d` point `numerator · d^(-scale)`.
///
/// Canonical form: when `scale > 0` the numerator is not divisible by `d`,
/// so equal values have equal representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DadicRational {
    d: u32,
    numerator: u64,
    scale: u32,
}

impl DadicRational {
    pub fn new(d: u32, numerator: u64, scale: u32) -> Result<Self> {
        check_radix(d)?;
        let (mut numerator, mut scale) = (numerator, scale);
        let d64 = d as u64;
        while scale > 0 && numerator % d64 == 0 {
            numerator /= d64;
            scale -= 1;
        }
        if numerator == 0 {
            scale = 0;
        }
        Ok(DadicRational {
            d,
            numerator,
            scale,
        })
    }

    pub fn zero(d: u32) -> Result<Self> {
        Self::new(d, 0, 0)
    }

    pub fn integer(d: u32, n: u64) -> Result<Self> {
        Self::new(d, n, 0)
    }

    pub fn radix(&self) -> u32 {
        self.d
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 * (self.d as f64).powi(-(self.scale as i32))
    }

    /// Digit `x_n` of `x = Σ x_n d^n`.
    pub fn digit(&self, n: i32) -> u32 {
        let shift = n + self.scale as i32;
        if shift < 0 {
            return 0;
        }
        let d64 = self.d as u64;
        let mut rest = self.numerator;
        for _ in 0..shift {
            if rest == 0 {
                return 0;
            }
            rest /= d64;
        }
        (rest % d64) as u32
    }

    /// All digits from position `-scale` up to the leading nonzero digit,
    /// as `(position, digit)` pairs in increasing position.
    pub fn digits(&self) -> Vec<(i32, u32)> {
        let d64 = self.d as u64;
        let mut out = Vec::new();
        let mut rest = self.numerator;
        let mut pos = -(self.scale as i32);
        while rest > 0 {
            out.push((pos, (rest % d64) as u32));
            rest /= d64;
            pos += 1;
        }
        out
    }

    /// Numerator over the denominator `d^scale` for a scale at least as fine
    /// as this value's own.
    pub fn numerator_at_scale(&self, scale: u32) -> Option<u64> {
        if scale < self.scale {
            return None;
        }
        checked_pow(self.d, scale - self.scale)?.checked_mul(self.numerator)
    }

    fn same_radix(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(invalid(format!(
                "radix mismatch: {} vs {}",
                self.d, other.d
            )));
        }
        Ok(())
    }
}

impl PartialOrd for DadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.d != other.d {
            return None;
        }
        let lhs = self.numerator as u128 * (self.d as u128).pow(other.scale);
        let rhs = other.numerator as u128 * (self.d as u128).pow(self.scale);
        Some(lhs.cmp(&rhs))
    }
}

impl fmt::Display for DadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}^{}", self.numerator, self.d, self.scale)
        }
    }
}

/// Integer digit pairing `Σ_n x_n ξ_{-1-n} mod d`.
pub fn character_index(x: &DadicRational, xi: &DadicRational) -> Result<u64> {
    x.same_radix(xi)?;
    let d = x.d as u64;
    let xi_digits = xi.digits();
    let mut sum = 0u64;
    for (pos, digit) in x.digits() {
        if digit == 0 {
            continue;
        }
        let partner = -1 - pos;
        if let Ok(i) = xi_digits.binary_search_by_key(&partner, |&(p, _)| p) {
            sum = (sum + digit as u64 * xi_digits[i].1 as u64) % d;
        }
    }
    Ok(sum)
}

/// The Cantor group character `E_d(x, ξ) = exp((2πi/d) Σ_n x_n ξ_{-1-n})`.
pub fn character(x: &DadicRational, xi: &DadicRational) -> Result<Complex64> {
    let k = character_index(x, xi)?;
    Ok(unit_root(x.d, k))
}

/// Digitwise addition mod `d` without carries: the group law of `A_d`.
pub fn group_add(x: &DadicRational, y: &DadicRational) -> Result<DadicRational> {
    x.same_radix(y)?;
    let d = x.d as u64;
    let scale = x.scale.max(y.scale);
    let too_large = || NlftError::InputTooLarge(format!("{x} + {y} exceeds 64-bit numerators"));
    let mut a = x.numerator_at_scale(scale).ok_or_else(too_large)?;
    let mut b = y.numerator_at_scale(scale).ok_or_else(too_large)?;
    let mut out = 0u64;
    let mut place = 1u64;
    while a > 0 || b > 0 {
        let digit = (a % d + b % d) % d;
        out = digit
            .checked_mul(place)
            .and_then(|v| v.checked_add(out))
            .ok_or_else(too_large)?;
        a /= d;
        b /= d;
        if a > 0 || b > 0 {
            place = place.checked_mul(d).ok_or_else(too_large)?;
        }
    }
    DadicRational::new(x.d, out, scale)
}

/// A `d`-adic interval `[index·d^exponent, (index+1)·d^exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DadicInterval {
    d: u32,
    exponent: i32,
    index: u64,
}

impl DadicInterval {
    pub fn new(d: u32, exponent: i32, index: u64) -> Result<Self> {
        check_radix(d)?;
        let iv = DadicInterval { d, exponent, index };
        // both endpoints must be representable
        iv.endpoint(index.checked_add(1).ok_or_else(|| invalid("interval index overflow"))?)?;
        Ok(iv)
    }

    pub fn radix(&self) -> u32 {
        self.d
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn length(&self) -> f64 {
        (self.d as f64).powi(self.exponent)
    }

    fn endpoint(&self, m: u64) -> Result<DadicRational> {
        if self.exponent >= 0 {
            let num = checked_pow(self.d, self.exponent as u32)
                .and_then(|p| p.checked_mul(m))
                .ok_or_else(|| NlftError::InputTooLarge("interval endpoint overflow".into()))?;
            DadicRational::new(self.d, num, 0)
        } else {
            DadicRational::new(self.d, m, self.exponent.unsigned_abs())
        }
    }

    pub fn left_endpoint(&self) -> DadicRational {
        self.endpoint(self.index)
            .expect("endpoint validated at construction")
    }

    pub fn right_endpoint(&self) -> DadicRational {
        self.endpoint(self.index + 1)
            .expect("endpoint validated at construction")
    }

    /// Half-open membership test.
    pub fn contains(&self, x: &DadicRational) -> bool {
        x.radix() == self.d
            && self.left_endpoint() <= *x
            && *x < self.right_endpoint()
    }

    /// The `d` children of length `d^(exponent-1)`, in increasing order.
    pub fn refine(&self) -> Vec<DadicInterval> {
        let d = self.d as u64;
        (0..d)
            .map(|j| DadicInterval {
                d: self.d,
                exponent: self.exponent - 1,
                index: self.index * d + j,
            })
            .collect()
    }

    /// The enclosing interval of length `d^(exponent+1)`.
    pub fn parent(&self) -> DadicInterval {
        DadicInterval {
            d: self.d,
            exponent: self.exponent + 1,
            index: self.index / self.d as u64,
        }
    }
}

/// Free-function form of [`DadicInterval::refine`].
pub fn refine_interval(interval: &DadicInterval) -> Vec<DadicInterval> {
    interval.refine()
}

/// A time-frequency rectangle `I × ω` of area one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub time: DadicInterval,
    pub freq: DadicInterval,
}

impl Tile {
    pub fn new(time: DadicInterval, freq: DadicInterval) -> Result<Self> {
        if time.radix() != freq.radix() {
            return Err(invalid("tile sides have different radices"));
        }
        if time.exponent() + freq.exponent() != 0 {
            return Err(invalid(format!(
                "tile must have unit area, got d^{} × d^{}",
                time.exponent(),
                freq.exponent()
            )));
        }
        Ok(Tile { time, freq })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(d: u32, n: u64, s: u32) -> DadicRational {
        DadicRational::new(d, n, s).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn canonical_form() {
        let x = r(2, 4, 3);
        assert_eq!((x.numerator(), x.scale()), (1, 1));
        let z = r(3, 0, 5);
        assert_eq!((z.numerator(), z.scale()), (0, 0));
        assert!(DadicRational::new(1, 3, 0).is_err());
    }

    #[test]
    fn digits_of_mixed_value() {
        // 5 + 2/3 in base 3 = 12.2
        let x = r(3, 17, 1);
        assert_eq!(x.digit(-1), 2);
        assert_eq!(x.digit(0), 2);
        assert_eq!(x.digit(1), 1);
        assert_eq!(x.digit(2), 0);
        assert_eq!(x.digit(-2), 0);
        assert_eq!(x.digits(), vec![(-1, 2), (0, 2), (1, 1)]);
    }

    #[test]
    fn character_examples() {
        let one2 = r(2, 1, 0);
        let half = r(2, 1, 1);
        assert!(close(character(&one2, &r(2, 0, 0)).unwrap(), Complex64::new(1.0, 0.0)));
        assert_eq!(character(&one2, &half).unwrap(), Complex64::new(-1.0, 0.0));

        let one3 = r(3, 1, 0);
        let third = r(3, 1, 1);
        let expected = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!(close(character(&one3, &third).unwrap(), expected));
    }

    #[test]
    fn character_rejects_mixed_radix() {
        assert!(character(&r(2, 1, 0), &r(3, 1, 0)).is_err());
        assert!(group_add(&r(2, 1, 0), &r(3, 1, 0)).is_err());
    }

    #[test]
    fn group_add_examples() {
        let x = r(5, 123, 2);
        assert_eq!(group_add(&x, &r(5, 0, 0)).unwrap(), x);
        assert!(group_add(&r(2, 1, 0), &r(2, 1, 0)).unwrap().is_zero());
        assert!(group_add(&r(3, 1, 0), &r(3, 2, 0)).unwrap().is_zero());
        // 0.1 + 0.01 in base 2 with no carry interaction
        assert_eq!(group_add(&r(2, 1, 1), &r(2, 1, 2)).unwrap(), r(2, 3, 2));
    }

    #[test]
    fn refine_examples() {
        let unit = DadicInterval::new(2, 0, 0).unwrap();
        let kids = refine_interval(&unit);
        assert_eq!(kids[0].left_endpoint(), r(2, 0, 0));
        assert_eq!(kids[1].left_endpoint(), r(2, 1, 1));
        assert_eq!(kids[1].right_endpoint(), r(2, 1, 0));

        let second = DadicInterval::new(2, 0, 1).unwrap();
        let kids = second.refine();
        assert_eq!(kids[0].left_endpoint(), r(2, 1, 0));
        assert_eq!(kids[1].left_endpoint(), r(2, 3, 1));
        assert_eq!(kids[1].right_endpoint(), r(2, 2, 0));

        let three = DadicInterval::new(3, 1, 0).unwrap();
        let ends: Vec<_> = three.refine().iter().map(|c| c.left_endpoint()).collect();
        assert_eq!(ends, vec![r(3, 0, 0), r(3, 1, 0), r(3, 2, 0)]);
        assert_eq!(three.refine()[2].right_endpoint(), r(3, 3, 0));
        assert_eq!(three.refine()[1].parent(), three);
    }

    #[test]
    fn interval_membership_is_half_open() {
        let iv = DadicInterval::new(3, -1, 2).unwrap(); // [2/3, 1)
        assert!(iv.contains(&r(3, 2, 1)));
        assert!(iv.contains(&r(3, 8, 2)));
        assert!(!iv.contains(&r(3, 1, 0)));
    }

    #[test]
    fn tiles_need_unit_area() {
        let i = DadicInterval::new(2, 2, 0).unwrap();
        let w = DadicInterval::new(2, -2, 3).unwrap();
        assert!(Tile::new(i, w).is_ok());
        assert!(Tile::new(i, DadicInterval::new(2, -1, 0).unwrap()).is_err());
    }

    #[test]
    fn unit_roots_are_exact_on_quarter_turns() {
        assert_eq!(unit_root(4, 1), Complex64::new(0.0, 1.0));
        assert_eq!(unit_root(8, 6), Complex64::new(0.0, -1.0));
        assert_eq!(unit_root(2, 3), Complex64::new(-1.0, 0.0));
        let t = Twiddles::new(6);
        assert_eq!(t.phase(2, 4), t.root(2));
    }
}
