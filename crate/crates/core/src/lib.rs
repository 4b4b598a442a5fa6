//! Exact computer algebra for matrix pairs with `AB = ωBA` and for the
//! quantum plane `xy = ωyx`.
//!
//! * [`scalar`]: rationals, cyclotomic fields Q(ζ_N), polynomials in a generic `w`.
//! * [`matrix`]: dense matrices over any of those (or complex floats).
//! * [`qbinom`]: Gaussian binomial coefficients and the φ_k products.
//! * [`ncpoly`]: the free algebra on x, y and normal ordering modulo `xy - ωyx`.
//! * [`spectral`]: eigenvalues, ω-chains and Carollian spectra.
//! * [`structure`]: detection, canonical examples, commutants and block decompositions.

pub mod error;
pub mod matrix;
pub mod ncpoly;
mod parse;
pub mod poly;
pub mod qbinom;
pub mod scalar;
pub mod spectral;
pub mod structure;

pub use error::{Error, ParseError, Result};
pub use matrix::Matrix;
pub use scalar::{omega, CycNum, Field, GenPoly, Rational, Ring};
