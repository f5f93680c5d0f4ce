//! Group elements as lattice-vector / shift pairs.

use crate::error::{KernelError, Result};

use super::descriptor::GroupDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    /// Lattice part `v` of `(v, n)`.
    pub vec: Vec<i64>,
    /// Shift part `n` of `(v, n)`.
    pub shift: i64,
}

impl GroupElement {
    pub fn new(desc: &GroupDescriptor, vec: Vec<i64>, shift: i64) -> Result<Self> {
        if vec.len() != desc.nvars() {
            return Err(KernelError::Shape(format!(
                "lattice vector has length {}, expected {}",
                vec.len(),
                desc.nvars()
            )));
        }
        if desc.is_degenerate() && shift != 0 {
            return Err(KernelError::Invalid(
                "degenerate group has no shift coordinate".into(),
            ));
        }
        Ok(GroupElement { vec, shift })
    }

    pub fn identity(desc: &GroupDescriptor) -> Self {
        GroupElement { vec: vec![0; desc.nvars()], shift: 0 }
    }

    /// Value of the degree character.
    pub fn alpha(&self, desc: &GroupDescriptor) -> i64 {
        desc.alpha_scale() * self.shift
    }

    /// Group law `(v, n) * (w, k) = (v + A^n w, n + k)`.
    pub fn mul(&self, desc: &GroupDescriptor, other: &Self) -> Self {
        let tw = desc.twist(self.shift).apply_exps(&other.vec);
        let vec = self.vec.iter().zip(&tw).map(|(a, b)| a + b).collect();
        GroupElement { vec, shift: self.shift + other.shift }
    }

    /// Inverse `(v, n)^-1 = (-A^-n v, -n)`.
    pub fn inv(&self, desc: &GroupDescriptor) -> Self {
        let w = desc.twist(-self.shift).apply_exps(&self.vec);
        GroupElement {
            vec: w.iter().map(|x| -x).collect(),
            shift: -self.shift,
        }
    }

    pub fn pow(&self, desc: &GroupDescriptor, k: i64) -> Self {
        let base = if k < 0 { self.inv(desc) } else { self.clone() };
        let mut acc = Self::identity(desc);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(desc, &base);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialAutomorphism;

    fn twisted_line() -> GroupDescriptor {
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        GroupDescriptor::monomial_extension(th)
    }

    #[test]
    fn group_axioms_in_the_twisted_case() {
        let g = twisted_line();
        let a = GroupElement::new(&g, vec![2], 1).unwrap();
        let b = GroupElement::new(&g, vec![1], 1).unwrap();
        let c = GroupElement::new(&g, vec![-3], 2).unwrap();
        // (2,1)*(1,1) = (2 + A*1, 2) = (1, 2) because A = (-1)
        assert_eq!(a.mul(&g, &b), GroupElement { vec: vec![1], shift: 2 });
        // associativity
        assert_eq!(a.mul(&g, &b).mul(&g, &c), a.mul(&g, &b.mul(&g, &c)));
        // inverses
        let e = GroupElement::identity(&g);
        assert_eq!(a.mul(&g, &a.inv(&g)), e);
        assert_eq!(a.inv(&g).mul(&g, &a), e);
        // non-commutativity is real: a*b != b*a
        assert_ne!(a.mul(&g, &b), b.mul(&g, &a));
    }

    #[test]
    fn powers_and_alpha() {
        let g = twisted_line();
        let a = GroupElement::new(&g, vec![1], 1).unwrap();
        // (1,1)^2 = (1 + (-1), 2) = (0, 2)
        assert_eq!(a.pow(&g, 2), GroupElement { vec: vec![0], shift: 2 });
        assert_eq!(a.pow(&g, 3), GroupElement { vec: vec![1], shift: 3 });
        assert_eq!(a.pow(&g, -1), a.inv(&g));
        assert_eq!(a.alpha(&g), 1);
        let scaled = GroupDescriptor::free_abelian(1).with_scale(2).unwrap();
        let b = GroupElement::new(&scaled, vec![5], 3).unwrap();
        assert_eq!(b.alpha(&scaled), 6);
    }

    #[test]
    fn degenerate_group_rejects_shifts() {
        let g = GroupDescriptor::degenerate(2);
        assert!(GroupElement::new(&g, vec![1, 2], 0).is_ok());
        assert!(GroupElement::new(&g, vec![1, 2], 1).is_err());
    }
}
