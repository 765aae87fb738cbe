//! Exact arithmetic substrate.
//!
//! - [`Rational`]: arbitrary precision rationals with canonical `"p/q"` serialization.
//! - [`Dual2`]: two-direction first-order jets, used for Jacobians.
//! - [`BiLaurent`]: sparse Laurent polynomials in `u`, `v` with [`exact_divide`].
//! - [`FactorList`]: factored one-variable rational functions.
//! - [`SeededSampler`]: counter-based reproducible sampling.

pub mod dual;
pub mod factor;
pub mod field;
pub mod laurent;
pub mod rational;
pub mod sampler;

pub use dual::{jet_eval, Dual2};
pub use factor::FactorList;
pub use field::Field;
pub use laurent::{exact_divide, BiLaurent};
pub use rational::{q, qi, ParseRationalError, Rational};
pub use sampler::SeededSampler;
