//! Twisted Laurent series over the rational function field.
//!
//! For a group with twist automorphism `A` and degree scale `l`, these are
//! series `sum c_j t^(l j)` with coefficients `c_j` rational functions in the
//! lattice variables, finite on the left and truncated on the right by an
//! explicit knowledge window.  Moving the series variable past a coefficient
//! applies the twist: `t^(l j) * c = A^j(c) * t^(l j)`.  Because every nonzero
//! coefficient is invertible, these series form a skew field up to the
//! truncation window, which is what row reduction and torsion computations
//! run over.

mod embed;
mod lead;
mod series;

pub use embed::{rho_embed, rho_embed_ring};
pub use lead::{norm_map, sum_twist_matrix, theta_ratio_certificate, try_integer_solve};
pub use series::TwistedLaurentSeries;
