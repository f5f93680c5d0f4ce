//! Sparse multivariate Laurent polynomials with arbitrary-precision rational
//! coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors (length = number of
//! variables, entries may be negative), so iteration is lexicographic and every
//! operation is deterministic.  Invariants:
//!   * no zero coefficient is ever stored;
//!   * every exponent vector has length `nvars`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(n.into()))
    }

    /// Single term `c * x^exps`.
    pub fn monomial(exps: Vec<i64>, c: BigRational) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c * x^exps` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Vec<i64>, c: BigRational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    /// Multiplies by the monomial `x^exps` (shifts every exponent vector).
    pub fn mul_monomial(&self, exps: &[i64]) -> Self {
        assert_eq!(exps.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let shifted: Vec<i64> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(shifted, c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise minimum of exponent vectors; `None` when zero.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()
        }))
    }

    /// True when every exponent is non-negative (a genuine polynomial).
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Lexicographically largest exponent vector and its coefficient.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// The coefficient of `x_v^j`, as a polynomial with exponent `v` zeroed.
    pub fn coeff_of_power(&self, v: usize, j: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == j {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Largest variable index that actually appears with nonzero exponent.
    pub fn top_variable(&self) -> Option<usize> {
        let mut top: Option<usize> = None;
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 && top.map_or(true, |t| i > t) {
                    top = Some(i);
                }
            }
        }
        top
    }

    /// Rebuilds the polynomial with exponent vectors transformed by `f`
    /// (used for monomial substitutions; collisions accumulate).
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Exact evaluation; `None` if a negative exponent meets a zero coordinate.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        assert_eq!(point.len(), self.nvars);
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if x.is_zero() && k < 0 {
                    return None;
                }
                let k32 = i32::try_from(k).expect("exponent too large to evaluate");
                term *= x.pow(k32);
            }
            total += term;
        }
        Some(total)
    }

    /// Content over Q: gcd of numerators / lcm of denominators, with the sign
    /// of the lexicographically leading coefficient.  Zero polynomial -> zero.
    pub fn rational_content(&self) -> BigRational {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_term().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    /// Divides by a nonzero rational scalar.
    pub fn div_scalar(&self, c: &BigRational) -> Self {
        assert!(!c.is_zero());
        self.mul_scalar(&c.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic_basics() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = x.mul(&x).mul(&y).sub(&MultiPoly::one(2)); // x^2 y - 1
        assert_eq!(p.num_terms(), 2);
        let sum = p.add(&MultiPoly::one(2));
        assert_eq!(sum.num_terms(), 1);
        assert_eq!(sum.coeff(&[2, 1]), q(1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = MultiPoly::var(1, 0);
        let z = x.sub(&x);
        assert!(z.is_zero());
    }

    #[test]
    fn laurent_exponents_and_eval() {
        // 2*x^-1*y + 3 at (x,y) = (1/2, 5): 2*2*5 + 3 = 23
        let p = MultiPoly::monomial(vec![-1, 1], q(2)).add(&MultiPoly::constant(2, q(3)));
        let v = p.eval(&[BigRational::new(1.into(), 2.into()), q(5)]).unwrap();
        assert_eq!(v, q(23));
        assert!(!p.is_polynomial());
        assert_eq!(p.min_exponents().unwrap(), vec![-1, 0]);
    }

    #[test]
    fn eval_rejects_negative_power_of_zero() {
        let p = MultiPoly::monomial(vec![-2], q(1));
        assert!(p.eval(&[q(0)]).is_none());
    }

    #[test]
    fn leading_term_is_lex_max() {
        // x^2 + x*y: lex order compares exponent vectors elementwise
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = x.pow(2).add(&x.mul(&y));
        assert_eq!(p.leading_term().unwrap().0, &vec![2, 0]);
    }

    #[test]
    fn content_normalizes_sign() {
        let p = MultiPoly::monomial(vec![1], q(-4)).add(&MultiPoly::constant(1, q(6)));
        // leading term is -4x, so content carries the minus sign
        assert_eq!(p.rational_content(), q(-2));
    }
}
