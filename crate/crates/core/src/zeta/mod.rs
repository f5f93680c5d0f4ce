//! Closed-orbit bookkeeping and zeta functions.
//!
//! Orbits are abstract records — period, holonomy, eigenvalue counts — and
//! the zeta function is their weighted Euler product in the completed group
//! ring, computable to any truncation degree.  The module also extracts
//! orbit data from monomial transition matrices (with a determinant
//! cross-check) and generates the orbit sets of hyperbolic torus suspensions
//! from fixed-point counts.

mod enumerate;
mod orbit;
mod product;
mod torus;

pub use enumerate::{orbit_enumerate, OrbitEnumeration};
pub use orbit::{ClosedOrbit, OrbitSet};
pub use product::{lefschetz_sign, zeta_exp, zeta_product};
pub use torus::torus_suspension_orbits;
