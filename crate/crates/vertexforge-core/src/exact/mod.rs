//! Exact coefficient arithmetic: Gaussian rationals, polynomials over
//! them, and the scalar field of Laurent fractions in `x` with
//! `x^r = q`.

pub mod gaussian;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use gaussian::GaussianRational;
pub use parse::ParseError;
pub use poly::Poly;
pub use scalar::ExactScalar;
