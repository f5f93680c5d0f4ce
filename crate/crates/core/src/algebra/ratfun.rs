//! Rational functions over Q in several variables, kept in a canonical reduced
//! form so that structural equality is mathematical equality.
//!
//! Canonical form: numerator and denominator are genuine polynomials (no
//! negative exponents), they share no polynomial or monomial factor, the
//! denominator is nonzero with lexicographically leading coefficient `1`, and
//! zero is `0/1`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{KernelError, Result};

use super::gcd::{divide_exact, poly_gcd};
use super::multipoly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Builds `num/den` and canonicalizes.  Panics if `den` is zero; use
    /// [`RationalFunction::checked_new`] when the denominator is not known to
    /// be nonzero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        Self::checked_new(num, den).expect("zero denominator")
    }

    pub fn checked_new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        assert_eq!(num.nvars(), den.nvars());
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: MultiPoly::one(den.nvars()),
            });
        }
        // Clear common monomial factors (and any Laurent exponents).
        let mn = num.min_exponents().unwrap();
        let md = den.min_exponents().unwrap();
        let shift: Vec<i64> = mn.iter().zip(&md).map(|(a, b)| -*a.min(b)).collect();
        let mut num = num.mul_monomial(&shift);
        let mut den = den.mul_monomial(&shift);
        // Now both are genuine polynomials; reduce by the gcd.
        let g = poly_gcd(&num, &den);
        if !g.is_zero() && g != MultiPoly::one(g.nvars()) {
            num = divide_exact(&num, &g).expect("gcd divides numerator");
            den = divide_exact(&den, &g).expect("gcd divides denominator");
        }
        // Make the denominator lex-monic.
        let lc = den.leading_term().expect("den nonzero").1.clone();
        if !lc.is_one() {
            num = num.div_scalar(&lc);
            den = den.div_scalar(&lc);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        Self::new(p, MultiPoly::one(n))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(nvars, n))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, i))
    }

    /// The monomial `c * x^exps` (Laurent exponents allowed).
    pub fn monomial(exps: Vec<i64>, c: BigRational) -> Self {
        let n = exps.len();
        Self::new(MultiPoly::monomial(exps, c), MultiPoly::one(n))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == MultiPoly::one(self.nvars()) && self.den == MultiPoly::one(self.nvars())
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        Self::new(self.num.mul_scalar(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::checked_new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.nvars());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `Some((exps, c))` when the function is a single monomial `c * x^exps`.
    pub fn as_monomial(&self) -> Option<(Vec<i64>, BigRational)> {
        if self.num.num_terms() != 1 || self.den.num_terms() != 1 {
            return None;
        }
        let (en, cn) = self.num.leading_term().unwrap();
        let (ed, cd) = self.den.leading_term().unwrap();
        let exps: Vec<i64> = en.iter().zip(ed).map(|(a, b)| a - b).collect();
        Some((exps, cn / cd))
    }

    /// Exact evaluation at a rational point; `None` when the denominator
    /// vanishes there.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point)? / d)
    }

    /// Lexicographically leading coefficient of the numerator (zero for zero).
    pub fn lead_coeff(&self) -> BigRational {
        self.num
            .leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }
}
