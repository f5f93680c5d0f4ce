//! Exact linear algebra over skew fields: matrices, row reduction, the
//! row-reduction determinant, and the comparison machinery that decides when
//! two determinant or torsion values agree up to the intrinsic ambiguity.

mod compare;
mod det;
mod field;
mod matrix;
mod schur;

pub use compare::{
    compare_torsion, Ambiguity, CompareOptions, ComparisonReport, TorsionValue, Verdict,
};
pub use det::{
    dieudonne_det, echelon_pivots, schur_complement, solve_in_span, solve_left, DetOutput,
    PivotRecord, PivotStrategy,
};
pub use field::{RatFunField, SkewField, TwistedSeriesField};
pub use matrix::SkewMatrix;
pub use schur::{minor_equivalence_check, schur_eliminate};
