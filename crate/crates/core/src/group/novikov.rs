//! One-sided series over the group ring: the completion that allows
//! infinitely many terms of increasing degree.
//!
//! Every element carries an explicit knowledge window.  `slices[0]` sits at
//! degree index `val`, everything below `val` is genuinely zero, stored slices
//! are exact, any index between the stored range and `known_end` (exclusive)
//! is zero, and nothing is claimed at `known_end` or beyond.  Finite elements
//! use a large sentinel for `known_end`, so "exact" and "truncated" flow
//! through the same arithmetic, and every operation propagates the window
//! honestly: results never claim more slices than their inputs support.

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::MultiPoly;
use crate::error::{KernelError, Result};

use super::descriptor::GroupDescriptor;
use super::ring::{render_group_terms, GroupRingElement};

/// Sentinel window end for exactly known (finite) elements.
pub const EXACT_END: i64 = i64::MAX / 4;

fn sat(e: i64) -> i64 {
    e.min(EXACT_END)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovElement {
    desc: GroupDescriptor,
    val: i64,
    slices: Vec<MultiPoly>,
    known_end: i64,
}

impl NovikovElement {
    pub fn zero(desc: &GroupDescriptor) -> Self {
        NovikovElement {
            desc: desc.clone(),
            val: 0,
            slices: Vec::new(),
            known_end: EXACT_END,
        }
    }

    pub fn one(desc: &GroupDescriptor) -> Self {
        Self::from_group_ring(&GroupRingElement::one(desc))
    }

    pub fn from_group_ring(g: &GroupRingElement) -> Self {
        let desc = g.desc().clone();
        match (g.min_shift(), g.max_shift()) {
            (Some(lo), Some(hi)) => {
                let slices = (lo..=hi).map(|n| g.slice(n)).collect();
                let mut out = NovikovElement { desc, val: lo, slices, known_end: EXACT_END };
                out.normalize();
                out
            }
            _ => Self::zero(&desc),
        }
    }

    pub fn from_term(
        desc: &GroupDescriptor,
        vec: Vec<i64>,
        shift: i64,
        coeff: BigRational,
    ) -> Result<Self> {
        Ok(Self::from_group_ring(&GroupRingElement::from_term(
            desc, vec, shift, coeff,
        )?))
    }

    pub fn parse(desc: &GroupDescriptor, input: &str) -> Result<Self> {
        Ok(Self::from_group_ring(&GroupRingElement::parse(desc, input)?))
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

    /// True when no nonzero slice is known (the element may still be nonzero
    /// past the window unless it is exact).
    pub fn is_zero_through_window(&self) -> bool {
        self.slices.is_empty()
    }

    /// Stored slices with their degree indices (zero slices omitted).
    pub fn stored_slices(&self) -> impl Iterator<Item = (i64, &MultiPoly)> {
        self.slices
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (self.val + i as i64, p))
    }

    /// The slice at degree index `j`; `None` when `j` is past the window.
    pub fn slice(&self, j: i64) -> Option<MultiPoly> {
        if j >= self.known_end {
            return None;
        }
        let idx = j - self.val;
        if idx < 0 || idx as usize >= self.slices.len() {
            Some(MultiPoly::zero(self.desc.nvars()))
        } else {
            Some(self.slices[idx as usize].clone())
        }
    }

    fn normalize(&mut self) {
        while self.slices.last().is_some_and(|p| p.is_zero()) {
            self.slices.pop();
        }
        let lead = self.slices.iter().take_while(|p| p.is_zero()).count();
        if lead > 0 {
            self.slices.drain(..lead);
            self.val += lead as i64;
        }
        if self.slices.is_empty() {
            self.val = 0;
        }
    }

    /// Caps the window at degree `end` (exclusive), discarding later slices.
    pub fn truncate(&self, end: i64) -> Self {
        let mut out = self.clone();
        out.known_end = out.known_end.min(end);
        let keep = (out.known_end - out.val).max(0) as usize;
        out.slices.truncate(keep.min(out.slices.len()));
        out.normalize();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "group mismatch");
        let known_end = self.known_end.min(other.known_end);
        let tops = [
            self.val + self.slices.len() as i64,
            other.val + other.slices.len() as i64,
        ];
        let lo = self.val.min(other.val);
        let hi = sat(*tops.iter().max().unwrap()).min(known_end);
        let m = self.desc.nvars();
        let mut slices = Vec::new();
        for j in lo..hi {
            let a = self.slice(j).unwrap_or_else(|| MultiPoly::zero(m));
            let b = other.slice(j).unwrap_or_else(|| MultiPoly::zero(m));
            slices.push(a.add(&b));
        }
        let mut out = NovikovElement { desc: self.desc.clone(), val: lo, slices, known_end };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.slices {
            *p = p.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.desc);
        }
        let mut out = self.clone();
        for p in &mut out.slices {
            *p = p.mul_scalar(c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "group mismatch");
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
        let mut slices = vec![MultiPoly::zero(m); (hi - val).max(0) as usize];
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
                slices[idx] = slices[idx].add(&a.mul(&tw.apply_poly(b)));
            }
        }
        let mut out = NovikovElement { desc: self.desc.clone(), val, slices, known_end };
        out.normalize();
        out
    }

    /// Inverts an element whose leading slice is a single group term; such
    /// elements are exactly the units of the completed ring.  The result is
    /// computed through degree `precision` (clipped by the honest window of
    /// the input, whose relative length an inverse preserves).
    pub fn invert_unit(&self, precision: usize) -> Result<Self> {
        if self.slices.is_empty() {
            if self.is_exact() {
                return Err(KernelError::ZeroNotInvertible);
            }
            return Err(KernelError::InsufficientPrecision {
                needed: self.known_end + 1,
                have: self.known_end,
            });
        }
        let lead = &self.slices[0];
        if lead.num_terms() != 1 {
            return Err(KernelError::UnsupportedUnit(format!(
                "leading slice '{}' is not a single term",
                crate::algebra::render_poly(lead, &crate::algebra::var_names(self.desc.nvars())),
            )));
        }
        let (e, c) = lead.leading_term().expect("nonzero lead");
        // Inverse of the leading unit u = c * x^e * t^val as a group term.
        let g = super::element::GroupElement { vec: e.clone(), shift: self.val };
        let ginv = g.inv(&self.desc);
        let u_inv = Self::from_term(&self.desc, ginv.vec, ginv.shift, c.recip())?;
        // u^-1 * self = 1 + eps with eps supported in positive degrees.
        let tail = u_inv.mul(self);
        let one = Self::one(&self.desc);
        let eps = tail.sub(&one);
        debug_assert!(eps.slices.is_empty() || eps.val >= 1);
        // Horner form of the geometric series for (1 + eps)^-1.
        let end = precision as i64 + 1;
        let mut acc = one.clone();
        for _ in 0..precision {
            acc = one.sub(&eps.mul(&acc)).truncate(end);
        }
        Ok(acc.mul(&u_inv))
    }

    /// Exponential of a series with strictly positive degree, through degree
    /// `precision`.
    pub fn exp(&self, precision: usize) -> Result<Self> {
        if self.val < 1 && !self.slices.is_empty() {
            return Err(KernelError::HypothesisViolated(
                "exponential requires strictly positive degree".into(),
            ));
        }
        if self.known_end < 1 {
            return Err(KernelError::InsufficientPrecision { needed: 1, have: self.known_end });
        }
        // exp is determined degree-by-degree as far as the input is known.
        let end = (precision as i64 + 1).min(self.known_end);
        let mut acc = Self::one(&self.desc).truncate(end);
        let mut term = Self::one(&self.desc);
        for j in 1..=precision as i64 {
            term = term
                .mul(self)
                .mul_scalar(&BigRational::new(1.into(), j.into()))
                .truncate(end);
            if term.slices.is_empty() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Logarithm of `1 + (positive-degree series)`, through degree
    /// `precision`.
    pub fn log(&self, precision: usize) -> Result<Self> {
        let one = Self::one(&self.desc);
        let mu = self.sub(&one);
        if !mu.slices.is_empty() && mu.val < 1 {
            return Err(KernelError::HypothesisViolated(
                "logarithm requires constant slice 1 and a positive-degree tail".into(),
            ));
        }
        let end = precision as i64 + 1;
        let mut acc = Self::zero(&self.desc);
        acc.known_end = mu.known_end.min(end);
        let mut pow = Self::one(&self.desc);
        for j in 1..=precision as i64 {
            pow = pow.mul(&mu).truncate(end);
            if pow.slices.is_empty() {
                break;
            }
            let c = BigRational::new(
                if j % 2 == 1 { 1.into() } else { (-1).into() },
                j.into(),
            );
            acc = acc.add(&pow.mul_scalar(&c));
        }
        Ok(acc)
    }

    /// Compares two series through degree `k` inclusive; errors when either
    /// window is too short to decide.
    pub fn compare_truncated(&self, other: &Self, k: i64) -> Result<bool> {
        assert_eq!(self.desc, other.desc, "group mismatch");
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

    /// Deterministic text form; truncated series end with an order marker in
    /// the printed `t` exponent.
    pub fn render(&self) -> String {
        let body = render_group_terms(
            &self.desc,
            self.slices
                .iter()
                .enumerate()
                .map(|(i, p)| (self.val + i as i64, p)),
        );
        if self.is_exact() {
            body
        } else {
            let e = self.desc.alpha_scale() * self.known_end;
            format!("{body} + O(t^{e})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialAutomorphism;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn free() -> GroupDescriptor {
        GroupDescriptor::free_abelian(1)
    }

    fn twisted_line() -> GroupDescriptor {
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        GroupDescriptor::monomial_extension(th)
    }

    #[test]
    fn geometric_series_inverse() {
        let g = free();
        let one = NovikovElement::one(&g);
        let t = NovikovElement::parse(&g, "t").unwrap();
        let inv = one.sub(&t).invert_unit(6).unwrap();
        for j in 0..=6 {
            assert_eq!(inv.slice(j).unwrap(), MultiPoly::one(1), "slice {j}");
        }
        assert_eq!(inv.known_end(), 7);
        assert_eq!(inv.mul(&one.sub(&t)).compare_truncated(&one, 6), Ok(true));
    }

    #[test]
    fn inverse_with_monomial_lead_and_window_tracking() {
        let g = free();
        // (2*x*t^2 - t^3)^-1 has leading term x^-1 t^-2 / 2.
        let a = NovikovElement::parse(&g, "2*x*t^2 - t^3").unwrap();
        let inv = a.invert_unit(5).unwrap();
        assert_eq!(inv.val(), -2);
        let prod = a.mul(&inv);
        assert_eq!(prod.compare_truncated(&NovikovElement::one(&g), 4), Ok(true));
        // non-unit lead is rejected
        let b = NovikovElement::parse(&g, "x*t + t - t^2").unwrap();
        assert!(matches!(
            b.invert_unit(4),
            Err(KernelError::UnsupportedUnit(_))
        ));
    }

    #[test]
    fn exp_and_log_invert_each_other() {
        let g = free();
        let lam = NovikovElement::parse(&g, "x*t + 2*t^2 - x^-1*t^3").unwrap();
        let e = lam.exp(8).unwrap();
        let back = e.log(8).unwrap();
        assert_eq!(back.compare_truncated(&lam, 8), Ok(true));
        // exp sends sums to products
        let mu = NovikovElement::parse(&g, "t - t^2").unwrap();
        let lhs = lam.add(&mu).exp(8).unwrap();
        let rhs = lam.exp(8).unwrap().mul(&mu.exp(8).unwrap());
        assert_eq!(lhs.compare_truncated(&rhs, 8), Ok(true));
    }

    #[test]
    fn exp_of_power_sums_matches_direct_geometric_sum() {
        // exp(sum_j gamma^j / j) against 1 + gamma + gamma^2 + ... computed
        // from raw powers, in both the abelian and the twisted group.
        for g in [free(), twisted_line()] {
            let gamma = NovikovElement::from_term(&g, vec![1], 1, q(1)).unwrap();
            let p = 8usize;
            let mut s = NovikovElement::zero(&g);
            let mut pow = NovikovElement::one(&g);
            let mut geo = NovikovElement::one(&g);
            for j in 1..=p as i64 {
                pow = pow.mul(&gamma);
                s = s.add(&pow.mul_scalar(&BigRational::new(1.into(), j.into())));
                geo = geo.add(&pow);
            }
            let e = s.truncate(p as i64 + 1).exp(p).unwrap();
            assert_eq!(e.compare_truncated(&geo, p as i64), Ok(true), "group {g:?}");
        }
    }

    #[test]
    fn twisted_inverse_of_one_minus_gamma() {
        let g = twisted_line();
        let gamma = NovikovElement::from_term(&g, vec![1], 1, q(1)).unwrap();
        let one = NovikovElement::one(&g);
        let inv = one.sub(&gamma).invert_unit(6).unwrap();
        // powers of gamma alternate: (x t)^2 = t^2, (x t)^3 = x t^3, ...
        for j in 0..=6i64 {
            let expect = if j % 2 == 0 {
                MultiPoly::monomial(vec![0], q(1))
            } else {
                MultiPoly::monomial(vec![1], q(1))
            };
            assert_eq!(inv.slice(j).unwrap(), expect, "slice {j}");
        }
    }

    #[test]
    fn precision_errors_are_reported() {
        let g = free();
        let t = NovikovElement::parse(&g, "t").unwrap();
        let one = NovikovElement::one(&g);
        let inv = one.sub(&t).invert_unit(4).unwrap();
        assert!(matches!(
            inv.compare_truncated(&one, 10),
            Err(KernelError::InsufficientPrecision { needed: 11, have: 5 })
        ));
        assert!(matches!(
            NovikovElement::zero(&g).invert_unit(3),
            Err(KernelError::ZeroNotInvertible)
        ));
        // exponential of a degree-0 term is outside the supported domain
        assert!(one.exp(4).is_err());
    }

    #[test]
    fn rendering_marks_truncation() {
        let g = free();
        let one = NovikovElement::one(&g);
        let t = NovikovElement::parse(&g, "t").unwrap();
        let inv = one.sub(&t).invert_unit(3).unwrap();
        assert_eq!(inv.render(), "1 + t + t^2 + t^3 + O(t^4)");
        assert_eq!(NovikovElement::parse(&g, "x*t - 2").unwrap().render(), "-2 + x*t");
    }
}
