//! Crate-wide error type.  Domain failures are explicit values, never panics:
//! division by zero, inverting a non-unit, precision exhaustion, shape
//! mismatches, parse errors with positions.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    /// Division by the zero element of a field or ring.
    DivisionByZero,
    /// Attempt to invert something that is zero to the available precision.
    ZeroNotInvertible,
    /// Inversion asked for a unit shape the ring cannot certify
    /// (e.g. the lowest slice is not ±(single group element)).
    UnsupportedUnit(String),
    /// An operand was required to have strictly positive degree support.
    NotPositivePart(String),
    /// A computation ran out of the tracked precision window.
    InsufficientPrecision { needed: i64, have: i64 },
    /// Row reduction failed to find an invertible pivot at the given stage.
    SingularPivot { stage: usize },
    /// Text input rejected; positions are 1-based.
    Parse { line: usize, col: usize, msg: String },
    /// Dimension / shape mismatch between composed objects.
    Shape(String),
    /// Structural validation failure (invariants of a model or complex).
    Invalid(String),
    /// A torsion computation needs an acyclic complex and did not get one.
    NotAcyclic(String),
    /// A checked combinatorial hypothesis fails; payload names the witness.
    HypothesisViolated(String),
    /// I/O wrapper for the CLI layer.
    Io(String),
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::DivisionByZero => write!(f, "division by zero"),
            KernelError::ZeroNotInvertible => {
                write!(f, "zero (to the available precision) is not invertible")
            }
            KernelError::UnsupportedUnit(s) => write!(f, "cannot invert: {s}"),
            KernelError::NotPositivePart(s) => {
                write!(f, "operand must have strictly positive degree: {s}")
            }
            KernelError::InsufficientPrecision { needed, have } => write!(
                f,
                "insufficient precision: need degree {needed}, window ends at {have}"
            ),
            KernelError::SingularPivot { stage } => {
                write!(f, "no invertible pivot at elimination stage {stage}")
            }
            KernelError::Parse { line, col, msg } => {
                write!(f, "parse error at line {line}, column {col}: {msg}")
            }
            KernelError::Shape(s) => write!(f, "shape mismatch: {s}"),
            KernelError::Invalid(s) => write!(f, "invalid input: {s}"),
            KernelError::NotAcyclic(s) => write!(f, "complex is not acyclic: {s}"),
            KernelError::HypothesisViolated(s) => write!(f, "hypothesis violated: {s}"),
            KernelError::Io(s) => write!(f, "io error: {s}"),
        }
    }
}

impl std::error::Error for KernelError {}

pub type Result<T> = std::result::Result<T, KernelError>;
