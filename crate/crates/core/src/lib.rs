//! Exact computation kernel for torsion invariants of circle-valued models:
//! twisted Laurent series over multivariate rational function fields, Dieudonné
//! determinants over skew fields, chain-complex torsion, closed-orbit zeta
//! functions, and the factorization pipeline tying them together.
//!
//! Everything is exact — arbitrary-precision rationals, sparse Laurent
//! polynomials, and truncated series that carry their own precision window.
//! No floating point anywhere.

pub mod algebra;
pub mod chain;
pub mod error;
pub mod group;
pub mod laurent;
pub mod linalg;
pub mod morse;
pub mod report;
pub mod zeta;

pub use error::{KernelError, Result};
