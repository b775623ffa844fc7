//! Exact-arithmetic engine for topological vertex amplitudes, double
//! Hurwitz numbers, and formal relative Gromov-Witten invariants of
//! FTCY (formal toric Calabi-Yau) graphs.
//!
//! Everything is computed over the field of fractions of Laurent
//! polynomials in a root variable `x` (with `x^r = q`) whose
//! coefficients are Gaussian rationals, so all identities are checked
//! by exact field equality rather than numerically.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion `vertexforge` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod amplitudes;
pub mod exact;
pub mod ftcy;
pub mod hurwitz;
pub mod partition;
pub mod symchar;
pub mod vertex;

pub use exact::{ExactScalar, GaussianRational};
pub use partition::{Partition, PartitionTriple};
