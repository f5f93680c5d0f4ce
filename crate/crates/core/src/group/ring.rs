//! The rational group ring, stored by degree slice.
//!
//! An element is a finite sum of group terms `c * x^v * t^n`; we keep, for each
//! shift `n`, the Laurent polynomial collecting all lattice terms at that
//! shift.  Multiplication threads the twist: moving `t^m` past a lattice
//! polynomial applies the automorphism `m` times, so
//! `(a_m t^m)(b_n t^n) = a_m * A^m(b_n) * t^(m+n)`.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::algebra::{var_names, MultiPoly, RationalFunction};
use crate::error::{KernelError, Result};

use super::descriptor::GroupDescriptor;
use super::element::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    desc: GroupDescriptor,
    /// Nonzero degree slices, keyed by shift.
    slices: BTreeMap<i64, MultiPoly>,
}

impl GroupRingElement {
    pub fn zero(desc: &GroupDescriptor) -> Self {
        GroupRingElement { desc: desc.clone(), slices: BTreeMap::new() }
    }

    pub fn one(desc: &GroupDescriptor) -> Self {
        Self::from_term(desc, vec![0; desc.nvars()], 0, BigRational::from_integer(1.into()))
            .expect("identity term")
    }

    pub fn from_term(
        desc: &GroupDescriptor,
        vec: Vec<i64>,
        shift: i64,
        coeff: BigRational,
    ) -> Result<Self> {
        // Validates lengths and the degenerate-shift rule.
        GroupElement::new(desc, vec.clone(), shift)?;
        let mut out = Self::zero(desc);
        out.add_term_in_place(shift, MultiPoly::monomial(vec, coeff));
        Ok(out)
    }

    pub fn from_group_element(desc: &GroupDescriptor, g: &GroupElement, coeff: BigRational) -> Self {
        Self::from_term(desc, g.vec.clone(), g.shift, coeff).expect("element already validated")
    }

    pub fn desc(&self) -> &GroupDescriptor {
        &self.desc
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn slices(&self) -> impl DoubleEndedIterator<Item = (&i64, &MultiPoly)> {
        self.slices.iter()
    }

    pub fn slice(&self, shift: i64) -> MultiPoly {
        self.slices
            .get(&shift)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.desc.nvars()))
    }

    /// Smallest / largest shift carrying a nonzero slice.
    pub fn min_shift(&self) -> Option<i64> {
        self.slices.keys().next().copied()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.slices.keys().next_back().copied()
    }

    fn add_term_in_place(&mut self, shift: i64, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self
            .slices
            .entry(shift)
            .or_insert_with(|| MultiPoly::zero(self.desc.nvars()));
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.slices.remove(&shift);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "group mismatch");
        let mut out = self.clone();
        for (&n, p) in &other.slices {
            out.add_term_in_place(n, p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for p in out.slices.values_mut() {
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
        for p in out.slices.values_mut() {
            *p = p.mul_scalar(c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "group mismatch");
        let mut out = Self::zero(&self.desc);
        for (&m, a) in &self.slices {
            let tw = self.desc.twist(m);
            for (&n, b) in &other.slices {
                out.add_term_in_place(m + n, a.mul(&tw.apply_poly(b)));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.desc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reads a finite expression in the lattice variables and `t` into the
    /// group ring.  The input may use negative powers and parentheses; it must
    /// reduce to a Laurent polynomial (monomial denominator), since general
    /// fractions have no meaning here.
    pub fn parse(desc: &GroupDescriptor, input: &str) -> Result<Self> {
        let mut vars = var_names(desc.nvars());
        vars.push("t".to_string());
        let f = crate::algebra::parse_ratfun(input, &vars)?;
        Self::from_ratfun_in_t(desc, &f)
    }

    /// Converts a rational function in `m + 1` variables (lattice variables
    /// then `t`) whose denominator is a single monomial.  The `t` exponent is
    /// read as a character value, so it must be divisible by the scale.
    pub fn from_ratfun_in_t(desc: &GroupDescriptor, f: &RationalFunction) -> Result<Self> {
        let m = desc.nvars();
        assert_eq!(f.nvars(), m + 1);
        if f.den().num_terms() > 1 {
            return Err(KernelError::Invalid(
                "group ring elements cannot have a non-monomial denominator".into(),
            ));
        }
        let mut out = Self::zero(desc);
        if f.is_zero() {
            return Ok(out);
        }
        let (de, dc) = f.den().leading_term().expect("denominator nonzero");
        let de = de.clone();
        let dc = dc.clone();
        let l = desc.alpha_scale();
        for (e, c) in f.num().terms() {
            let vec: Vec<i64> = e[..m].iter().zip(&de[..m]).map(|(a, b)| a - b).collect();
            let deg = e[m] - de[m];
            let shift = if deg == 0 {
                0
            } else if l == 0 {
                return Err(KernelError::Invalid(
                    "degenerate group element cannot involve t".into(),
                ));
            } else if deg % l == 0 {
                deg / l
            } else {
                return Err(KernelError::Invalid(format!(
                    "t exponent {deg} is not a multiple of the degree scale {l}"
                )));
            };
            out.add_term_in_place(shift, MultiPoly::monomial(vec, c / dc.clone()));
        }
        Ok(out)
    }

    /// Deterministic text form: slices in increasing shift, lattice terms in
    /// decreasing lexicographic order, `t` shown with its character value.
    pub fn render(&self) -> String {
        render_group_terms(
            &self.desc,
            self.slices.iter().map(|(n, p)| (*n, p)),
        )
    }
}

/// Shared renderer for finite and truncated series forms.
pub(crate) fn render_group_terms<'a>(
    desc: &GroupDescriptor,
    slices: impl Iterator<Item = (i64, &'a MultiPoly)>,
) -> String {
    use num_traits::Signed;
    let vars = var_names(desc.nvars());
    let mut out = String::new();
    let mut first = true;
    for (n, p) in slices {
        for (e, c) in p.terms().rev() {
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&render_single_term(desc, &vars, e, c, n));
        }
    }
    if first {
        out.push('0');
    }
    out
}

fn render_single_term(
    desc: &GroupDescriptor,
    vars: &[String],
    exps: &[i64],
    coeff: &BigRational,
    shift: i64,
) -> String {
    use num_traits::{One, Signed};
    let mut parts: Vec<String> = Vec::new();
    let mag = {
        let a = coeff.abs();
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    };
    let deg = desc.alpha_scale() * shift;
    let is_const = exps.iter().all(|&e| e == 0) && deg == 0;
    if is_const || mag != "1" {
        parts.push(mag);
    }
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(vars[i].clone());
        } else {
            parts.push(format!("{}^{}", vars[i], e));
        }
    }
    if deg != 0 {
        if deg == 1 {
            parts.push("t".to_string());
        } else {
            parts.push(format!("t^{deg}"));
        }
    }
    parts.join("*")
}
