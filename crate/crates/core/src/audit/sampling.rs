//! Regime samplers for random SU(1,1) factors and per-chunk seed derivation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, NlftError};
use crate::su11::Su11Element;

/// Largest `|b|` drawn by the samplers.
pub const MAX_B: f64 = 10.0;

/// Trials per independently seeded chunk. Chunks, not threads, own seeds, so
/// results do not depend on the worker count.
pub const CHUNK: usize = 1024;

/// Which part of the case analysis a sample is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// every `|b_j| ≤ t_d`
    Case1,
    /// one `|b_m| > t_d`, the rest `≤ t_d`
    Case2,
    /// at least two `|b_j| > t_d`
    Case3,
    /// a uniformly chosen case, or log-uniform moduli across all scales
    Mixed,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Case1, Regime::Case2, Regime::Case3, Regime::Mixed];

    fn tag(self) -> u64 {
        match self {
            Regime::Case1 => 1,
            Regime::Case2 => 2,
            Regime::Case3 => 3,
            Regime::Mixed => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Case1 => "case1",
            Regime::Case2 => "case2",
            Regime::Case3 => "case3",
            Regime::Mixed => "mixed",
        }
    }

    /// The case a set of moduli falls into.
    pub fn classify(b_abs: &[f64], threshold: f64) -> Regime {
        match b_abs.iter().filter(|&&r| r > threshold).count() {
            0 => Regime::Case1,
            1 => Regime::Case2,
            _ => Regime::Case3,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = NlftError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "case1" => Ok(Regime::Case1),
            "case2" => Ok(Regime::Case2),
            "case3" => Ok(Regime::Case3),
            "mixed" => Ok(Regime::Mixed),
            other => Err(invalid(format!(
                "unknown regime {other:?}; expected case1, case2, case3 or mixed"
            ))),
        }
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for one chunk of one experiment.
pub fn chunk_rng(master: u64, stream: u64, tag: u64, chunk: u64) -> ChaCha8Rng {
    let seed = mix(mix(mix(mix(master) ^ stream) ^ tag) ^ chunk);
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn regime_rng(master: u64, d: u32, regime: Regime, chunk: u64) -> ChaCha8Rng {
    chunk_rng(master, d as u64, regime.tag(), chunk)
}

/// Uniform on `(0, 1]`.
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

fn element<R: Rng + ?Sized>(r: f64, rng: &mut R) -> Su11Element {
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    Su11Element::from_polar(r, theta, phi)
}

fn small<R: Rng + ?Sized>(threshold: f64, rng: &mut R) -> f64 {
    threshold * open_unit(rng)
}

fn big<R: Rng + ?Sized>(threshold: f64, rng: &mut R) -> f64 {
    threshold + (MAX_B - threshold) * open_unit(rng)
}

/// Moduli `|b_j|` for `d` factors in the requested regime.
pub fn sample_moduli<R: Rng + ?Sized>(d: usize, regime: Regime, threshold: f64, rng: &mut R) -> Vec<f64> {
    match regime {
        Regime::Case1 => (0..d).map(|_| small(threshold, rng)).collect(),
        Regime::Case2 => {
            let pivot = rng.random_range(0..d);
            (0..d)
                .map(|j| if j == pivot { big(threshold, rng) } else { small(threshold, rng) })
                .collect()
        }
        Regime::Case3 => {
            let count = rng.random_range(2..=d);
            let mut order: Vec<usize> = (0..d).collect();
            for i in 0..count {
                let j = rng.random_range(i..d);
                order.swap(i, j);
            }
            let mut chosen = vec![false; d];
            for &j in &order[..count] {
                chosen[j] = true;
            }
            chosen
                .into_iter()
                .map(|c| if c { big(threshold, rng) } else { small(threshold, rng) })
                .collect()
        }
        Regime::Mixed => match rng.random_range(0..4u32) {
            0 => sample_moduli(d, Regime::Case1, threshold, rng),
            1 => sample_moduli(d, Regime::Case2, threshold, rng),
            2 => sample_moduli(d, Regime::Case3, threshold, rng),
            _ => {
                let (lo, hi) = ((threshold * 1e-6).ln(), MAX_B.ln());
                (0..d)
                    .map(|_| (lo + (hi - lo) * rng.random::<f64>()).exp())
                    .collect()
            }
        },
    }
}

/// `d` random factors with `b = r·e^(iθ)`, `a = sqrt(1+r²)·e^(iφ)`.
pub fn sample_factors<R: Rng + ?Sized>(d: usize, regime: Regime, threshold: f64, rng: &mut R) -> Vec<Su11Element> {
    sample_moduli(d, regime, threshold, rng)
        .into_iter()
        .map(|r| element(r, rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes_land_in_their_case() {
        let t = 1e-3;
        let mut rng = chunk_rng(7, 0, 0, 0);
        for d in [2usize, 3, 5] {
            for regime in [Regime::Case1, Regime::Case2, Regime::Case3] {
                for _ in 0..200 {
                    let r = sample_moduli(d, regime, t, &mut rng);
                    assert_eq!(Regime::classify(&r, t), regime);
                    assert!(r.iter().all(|&x| x > 0.0 && x <= MAX_B));
                }
            }
        }
    }

    #[test]
    fn factors_satisfy_the_group_constraint() {
        let mut rng = chunk_rng(1, 2, 3, 4);
        for g in sample_factors(5, Regime::Mixed, 1e-4, &mut rng) {
            assert!(g.residual().abs() < 1e-12);
        }
    }

    #[test]
    fn chunk_seeds_are_distinct_and_stable() {
        let a: u64 = chunk_rng(42, 2, 1, 0).random();
        let b: u64 = chunk_rng(42, 2, 1, 1).random();
        let c: u64 = chunk_rng(42, 2, 1, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn regime_names_round_trip() {
        for r in Regime::ALL {
            assert_eq!(r.name().parse::<Regime>().unwrap(), r);
        }
        assert!("case4".parse::<Regime>().is_err());
    }
}
