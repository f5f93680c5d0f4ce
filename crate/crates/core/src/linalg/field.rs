//! The skew-field interface shared by the exact rational-function field and
//! the truncated twisted series field.
//!
//! Field contexts are passed explicitly (they carry variable counts, the
//! twist, and working precision), so matrix code is generic without trait
//! objects.  Two operations are fallible by design: inversion, and the zero
//! test — a truncated series that vanishes through its window cannot be
//! certified zero, and pretending otherwise would silently corrupt row
//! reduction.

use crate::algebra::{render_ratfun, var_names, RationalFunction};
use crate::error::{KernelError, Result};
use crate::group::GroupDescriptor;
use crate::laurent::TwistedLaurentSeries;

pub trait SkewField {
    type Elem: Clone + std::fmt::Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// `Err` when the element cannot be classified at the current precision.
    fn is_zero(&self, a: &Self::Elem) -> Result<bool>;
    /// Preference order for pivots (smaller is better); `None` for zero.
    fn pivot_weight(&self, a: &Self::Elem) -> Option<i64>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The commutative field of rational functions in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunField {
    pub nvars: usize,
}

impl SkewField for RatFunField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero(self.nvars)
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::one(self.nvars)
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.add(b)
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        a.neg()
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.mul(b)
    }

    fn inv(&self, a: &RationalFunction) -> Result<RationalFunction> {
        a.inv()
    }

    fn is_zero(&self, a: &RationalFunction) -> Result<bool> {
        Ok(a.is_zero())
    }

    fn pivot_weight(&self, a: &RationalFunction) -> Option<i64> {
        // every nonzero element of the exact field is a unit of valuation zero
        if a.is_zero() {
            None
        } else {
            Some(0)
        }
    }

    fn render(&self, a: &RationalFunction) -> String {
        render_ratfun(a, &var_names(self.nvars))
    }
}

/// The twisted Laurent series field at a fixed working precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSeriesField {
    pub desc: GroupDescriptor,
    pub precision: usize,
}

impl TwistedSeriesField {
    pub fn new(desc: GroupDescriptor, precision: usize) -> Self {
        TwistedSeriesField { desc, precision }
    }
}

impl SkewField for TwistedSeriesField {
    type Elem = TwistedLaurentSeries;

    fn zero(&self) -> TwistedLaurentSeries {
        TwistedLaurentSeries::zero(&self.desc)
    }

    fn one(&self) -> TwistedLaurentSeries {
        TwistedLaurentSeries::one(&self.desc)
    }

    fn add(&self, a: &TwistedLaurentSeries, b: &TwistedLaurentSeries) -> TwistedLaurentSeries {
        a.add(b)
    }

    fn neg(&self, a: &TwistedLaurentSeries) -> TwistedLaurentSeries {
        a.neg()
    }

    fn mul(&self, a: &TwistedLaurentSeries, b: &TwistedLaurentSeries) -> TwistedLaurentSeries {
        a.mul(b)
    }

    fn inv(&self, a: &TwistedLaurentSeries) -> Result<TwistedLaurentSeries> {
        a.inv(self.precision)
    }

    fn is_zero(&self, a: &TwistedLaurentSeries) -> Result<bool> {
        if !a.is_zero_through_window() {
            return Ok(false);
        }
        if a.is_exact() {
            return Ok(true);
        }
        Err(KernelError::InsufficientPrecision {
            needed: a.known_end() + 1,
            have: a.known_end(),
        })
    }

    fn pivot_weight(&self, a: &TwistedLaurentSeries) -> Option<i64> {
        a.leading().map(|(v, _)| v)
    }

    fn render(&self, a: &TwistedLaurentSeries) -> String {
        a.render()
    }
}
