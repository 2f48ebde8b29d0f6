//! Cantor-group model of the SU(1,1) nonlinear Fourier transform.
//!
//! The crate computes the scattering data `G(ξ) = (a(ξ), b(ξ))` of a complex
//! step function over the `d`-adic Cantor group by a radix-`d` tile
//! butterfly, and audits the objects behind the uniform Hausdorff-Young
//! estimate: the Bellman function `β_d`, the swapping inequality, the scale
//! functional and its monotonicity, truncated nonlinear Plancherel, and
//! Hausdorff-Young ratios.
//!
//! ```
//! use nlft_core::engine::{transform, StepFunction};
//! use num_complex::Complex64;
//!
//! let f = StepFunction::new(2, 0, 0, vec![Complex64::new(1.0, 0.0)]).unwrap();
//! let pyramid = transform(&f, 0).unwrap();
//! let g = pyramid.top().get(0, 0);
//! assert!((g.a.re - 1f64.cosh()).abs() < 1e-15);
//! ```

pub mod audit;
pub mod bellman;
pub mod cantor;
pub mod engine;
pub mod error;
pub mod io;
pub mod norms;
pub mod su11;

pub use error::{NlftError, Result};
