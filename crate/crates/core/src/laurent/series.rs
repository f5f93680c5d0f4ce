//! Series arithmetic with explicit knowledge windows.
//!
//! Window semantics match the completed group ring: the known region is
//! everything below `known_end`; inside it the series equals the stored
//! slices (zero off their range), and nothing at all is claimed from
//! `known_end` on.  Exact elements use a large sentinel.  All operations
//! propagate windows honestly, so a final window check certifies that a
//! pipeline's answer is correct to the requested depth.

use num_rational::BigRational;

use crate::algebra::{render_ratfun, var_names, RationalFunction};
use crate::error::{KernelError, Result};
use crate::group::GroupDescriptor;

const EXACT_END: i64 = i64::MAX / 4;

fn sat(e: i64) -> i64 {
    e.min(EXACT_END)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedLaurentSeries {
    desc: GroupDescriptor,
    val: i64,
    slices: Vec<RationalFunction>,
    known_end: i64,
}

impl TwistedLaurentSeries {
    pub fn zero(desc: &GroupDescriptor) -> Self {
        TwistedLaurentSeries {
            desc: desc.clone(),
            val: 0,
            slices: Vec::new(),
            known_end: EXACT_END,
        }
    }

    pub fn one(desc: &GroupDescriptor) -> Self {
        Self::coeff_at(desc, RationalFunction::one(desc.nvars()), 0)
    }

    /// A single slice `c * t^(l n)`.
    pub fn coeff_at(desc: &GroupDescriptor, c: RationalFunction, n: i64) -> Self {
        assert_eq!(c.nvars(), desc.nvars());
        if desc.is_degenerate() {
            assert_eq!(n, 0, "degenerate groups carry no series variable");
        }
        let mut out = Self::zero(desc);
        if !c.is_zero() {
            out.val = n;
            out.slices.push(c);
        }
        out
    }

    pub fn from_ratfun(desc: &GroupDescriptor, c: RationalFunction) -> Self {
        Self::coeff_at(desc, c, 0)
    }

    pub fn desc(&self) -> &GroupDescriptor {
        &self.desc
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn known_end(&self) -> i64 {
        self.known_end
    }

    pub fn is_exact(&self) -> bool {
        self.known_end == EXACT_END
    }

    pub fn is_zero_through_window(&self) -> bool {
        self.slices.is_empty()
    }

    /// Leading (lowest-degree) slice, if any nonzero slice is known.
    pub fn leading(&self) -> Option<(i64, &RationalFunction)> {
        self.slices.first().map(|c| (self.val, c))
    }

    /// One past the last stored slice; everything from here to the window end
    /// is zero.
    pub fn support_end(&self) -> i64 {
        self.val + self.slices.len() as i64
    }

    pub fn slice(&self, j: i64) -> Option<RationalFunction> {
        if j >= self.known_end {
            return None;
        }
        let idx = j - self.val;
        if idx < 0 || idx as usize >= self.slices.len() {
            Some(RationalFunction::zero(self.desc.nvars()))
        } else {
            Some(self.slices[idx as usize].clone())
        }
    }

    fn normalize(&mut self) {
        while self.slices.last().is_some_and(|c| c.is_zero()) {
            self.slices.pop();
        }
        let lead = self.slices.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.slices.drain(..lead);
            self.val += lead as i64;
        }
        if self.slices.is_empty() {
            self.val = 0;
        }
    }

    pub fn truncate(&self, end: i64) -> Self {
        let mut out = self.clone();
        out.known_end = out.known_end.min(end);
        let keep = (out.known_end - out.val).max(0) as usize;
        out.slices.truncate(keep.min(out.slices.len()));
        out.normalize();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "field mismatch");
        let known_end = self.known_end.min(other.known_end);
        let lo = self.val.min(other.val);
        let tops = [
            self.val + self.slices.len() as i64,
            other.val + other.slices.len() as i64,
        ];
        let hi = sat(*tops.iter().max().unwrap()).min(known_end);
        let m = self.desc.nvars();
        let mut slices = Vec::new();
        for j in lo..hi {
            let a = self.slice(j).unwrap_or_else(|| RationalFunction::zero(m));
            let b = other.slice(j).unwrap_or_else(|| RationalFunction::zero(m));
            slices.push(a.add(&b));
        }
        let mut out = TwistedLaurentSeries { desc: self.desc.clone(), val: lo, slices, known_end };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.slices {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "field mismatch");
        // An exactly-zero factor gives an exactly-zero product no matter how
        // little is known about the other factor.
        if (self.slices.is_empty() && self.is_exact())
            || (other.slices.is_empty() && other.is_exact())
        {
            return Self::zero(&self.desc);
        }
        let known_end = sat(self.val + other.known_end).min(sat(other.val + self.known_end));
        if self.slices.is_empty() || other.slices.is_empty() {
            let mut z = Self::zero(&self.desc);
            z.known_end = known_end;
            return z;
        }
        let val = self.val + other.val;
        let top = (self.val + self.slices.len() as i64 - 1)
            + (other.val + other.slices.len() as i64 - 1);
        let hi = sat(top + 1).min(known_end);
        let m = self.desc.nvars();
        let mut slices = vec![RationalFunction::zero(m); (hi - val).max(0) as usize];
        for (ia, a) in self.slices.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let i = self.val + ia as i64;
            let tw = self.desc.twist(i);
            for (jb, b) in other.slices.iter().enumerate() {
                let j = other.val + jb as i64;
                let d = i + j;
                if d < val || d >= hi {
                    continue;
                }
                let idx = (d - val) as usize;
                slices[idx] = slices[idx].add(&a.mul(&tw.apply_ratfun(b)));
            }
        }
        let mut out = TwistedLaurentSeries { desc: self.desc.clone(), val, slices, known_end };
        out.normalize();
        out
    }

    /// Multiplies every slice on the left by a coefficient.
    pub fn mul_coeff_left(&self, c: &RationalFunction) -> Self {
        Self::from_ratfun(&self.desc, c.clone()).mul(self)
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        let m = self.desc.nvars();
        self.mul_coeff_left(&RationalFunction::constant(m, c.clone()))
    }

    /// Full skew-field inverse through degree `val(self^-1) + precision`
    /// relative slices: the leading coefficient is inverted in the function
    /// field and the tail by a geometric series.
    pub fn inv(&self, precision: usize) -> Result<Self> {
        if self.slices.is_empty() {
            if self.is_exact() {
                return Err(KernelError::DivisionByZero);
            }
            return Err(KernelError::InsufficientPrecision {
                needed: self.known_end + 1,
                have: self.known_end,
            });
        }
        let c0 = &self.slices[0];
        let v = self.val;
        // (c0 t^v)^-1 = A^(-v)(c0^-1) t^(-v)
        let c0_inv = self
            .desc
            .twist(-v)
            .apply_ratfun(&c0.inv().expect("leading slice nonzero"));
        let u_inv = Self::coeff_at(&self.desc, c0_inv, -v);
        let one = Self::one(&self.desc);
        let eps = u_inv.mul(self).sub(&one);
        debug_assert!(eps.slices.is_empty() || eps.val >= 1);
        let end = precision as i64 + 1;
        let mut acc = one.clone();
        for _ in 0..precision {
            acc = one.sub(&eps.mul(&acc)).truncate(end);
        }
        Ok(acc.mul(&u_inv))
    }

    pub fn compare_truncated(&self, other: &Self, k: i64) -> Result<bool> {
        assert_eq!(self.desc, other.desc, "field mismatch");
        let have = self.known_end.min(other.known_end);
        if have <= k {
            return Err(KernelError::InsufficientPrecision { needed: k + 1, have });
        }
        let lo = self.val.min(other.val);
        for j in lo..=k {
            if self.slice(j) != other.slice(j) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deterministic text form, slices in increasing degree with the printed
    /// exponent scaled by the group's degree scale.
    pub fn render(&self) -> String {
        let vars = var_names(self.desc.nvars());
        let l = self.desc.alpha_scale().max(1);
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.slices.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = self.val + i as i64;
            let (mag, negative) = {
                use num_traits::Signed;
                if c.lead_coeff().is_negative() {
                    (c.neg(), true)
                } else {
                    (c.clone(), false)
                }
            };
            if first {
                if negative {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let needs_parens = mag.den() != &crate::algebra::MultiPoly::one(self.desc.nvars())
                || mag.num().num_terms() > 1;
            let cs = render_ratfun(&mag, &vars);
            let cs = if needs_parens && !cs.starts_with('(') {
                format!("({cs})")
            } else {
                cs
            };
            let e = l * j;
            if e == 0 {
                out.push_str(&cs);
            } else {
                let tpart = if e == 1 { "t".to_string() } else { format!("t^{e}") };
                if cs == "1" {
                    out.push_str(&tpart);
                } else {
                    out.push_str(&format!("{cs}*{tpart}"));
                }
            }
        }
        if first {
            out.push('0');
        }
        if self.is_exact() {
            out
        } else {
            format!("{out} + O(t^{})", l * self.known_end)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ratfun, MonomialAutomorphism};

    fn twisted_line() -> GroupDescriptor {
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        GroupDescriptor::monomial_extension(th)
    }

    fn rf(src: &str) -> RationalFunction {
        parse_ratfun(src, &var_names(1)).unwrap()
    }

    #[test]
    fn twisted_square_of_linear_slice() {
        let g = twisted_line();
        // ((x+1) t)^2 = (x+1) * A(x+1) * t^2 = (x+1)(x^-1+1) t^2 = ((x+1)^2/x) t^2
        let a = TwistedLaurentSeries::coeff_at(&g, rf("x + 1"), 1);
        let sq = a.mul(&a);
        assert_eq!(sq.val(), 2);
        assert_eq!(sq.slice(2).unwrap(), rf("(x^2 + 2*x + 1)/(x)"));
    }

    #[test]
    fn inverse_of_unit_with_nontrivial_leading_coefficient() {
        let g = twisted_line();
        // (x + 1) + t
        let a = TwistedLaurentSeries::from_ratfun(&g, rf("x + 1"))
            .add(&TwistedLaurentSeries::coeff_at(&g, rf("1"), 1));
        let inv = a.inv(6).unwrap();
        let one = TwistedLaurentSeries::one(&g);
        assert_eq!(a.mul(&inv).compare_truncated(&one, 5), Ok(true));
        assert_eq!(inv.mul(&a).compare_truncated(&one, 5), Ok(true));
        assert_eq!(inv.slice(0).unwrap(), rf("1/(x + 1)"));
    }

    #[test]
    fn inverse_tracks_valuation() {
        let g = twisted_line();
        let a = TwistedLaurentSeries::coeff_at(&g, rf("2*x"), -2)
            .add(&TwistedLaurentSeries::coeff_at(&g, rf("x - 1"), 1));
        let inv = a.inv(7).unwrap();
        assert_eq!(inv.val(), 2);
        let one = TwistedLaurentSeries::one(&g);
        assert_eq!(a.mul(&inv).compare_truncated(&one, 6), Ok(true));
    }

    #[test]
    fn division_by_zero_and_precision_errors() {
        let g = twisted_line();
        let z = TwistedLaurentSeries::zero(&g);
        assert!(matches!(z.inv(4), Err(KernelError::DivisionByZero)));
        let t = TwistedLaurentSeries::coeff_at(&g, rf("1"), 1);
        let short = TwistedLaurentSeries::one(&g).sub(&t).inv(3).unwrap();
        assert!(matches!(
            short.compare_truncated(&TwistedLaurentSeries::one(&g), 9),
            Err(KernelError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn associativity_with_twist() {
        let g = twisted_line();
        let a = TwistedLaurentSeries::coeff_at(&g, rf("x"), 1);
        let b = TwistedLaurentSeries::coeff_at(&g, rf("x + 1"), 0);
        let c = TwistedLaurentSeries::coeff_at(&g, rf("x - 1"), 2);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // the twist makes multiplication genuinely non-commutative
        assert_ne!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn rendering_series() {
        let g = twisted_line();
        let a = TwistedLaurentSeries::from_ratfun(&g, rf("x + 1"))
            .sub(&TwistedLaurentSeries::coeff_at(&g, rf("x"), 2));
        assert_eq!(a.render(), "(x + 1) - x*t^2");
        let inv = TwistedLaurentSeries::one(&g)
            .sub(&TwistedLaurentSeries::coeff_at(&g, rf("x"), 1))
            .inv(2)
            .unwrap();
        assert_eq!(inv.render(), "1 + x*t + t^2 + O(t^3)");
    }
}
