//! Exact commutative base layer: sparse multivariate Laurent polynomials,
//! canonical rational functions, and monomial automorphisms of the variable
//! lattice.

mod automorphism;
mod gcd;
mod multipoly;
mod parser;
mod ratfun;

pub use automorphism::MonomialAutomorphism;
pub use gcd::{divide_exact, poly_gcd};
pub use multipoly::MultiPoly;
pub use parser::{parse_ratfun, render_poly, render_ratfun, var_names};
pub use ratfun::RationalFunction;
