//! Description of the ambient group.
//!
//! Elements are pairs `(v, n)` with `v` in the lattice `Z^m` and `n` the shift
//! coordinate; multiplication is `(v, n) * (w, k) = (v + A^n w, n + k)` for a
//! fixed unimodular integer matrix `A`.  The degree character sends `(v, n)`
//! to `l * n`, where the scale `l >= 1` records how the cyclic coordinate sits
//! inside the integers.  A scale of `0` marks the degenerate case: the group
//! is just the lattice and the character vanishes identically.

use crate::algebra::MonomialAutomorphism;
use crate::error::{KernelError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    nvars: usize,
    autom: MonomialAutomorphism,
    alpha_scale: i64,
}

impl GroupDescriptor {
    /// Free abelian group `Z^(m+1)`: identity twist, surjective character.
    pub fn free_abelian(m: usize) -> Self {
        GroupDescriptor {
            nvars: m,
            autom: MonomialAutomorphism::identity(m),
            alpha_scale: 1,
        }
    }

    /// Semidirect product `Z^m x| Z` with the cyclic generator acting by the
    /// given unimodular matrix.
    pub fn monomial_extension(autom: MonomialAutomorphism) -> Self {
        GroupDescriptor {
            nvars: autom.nvars(),
            autom,
            alpha_scale: 1,
        }
    }

    /// Lattice `Z^m` with the zero character; no shift coordinate is allowed.
    pub fn degenerate(m: usize) -> Self {
        GroupDescriptor {
            nvars: m,
            autom: MonomialAutomorphism::identity(m),
            alpha_scale: 0,
        }
    }

    /// Re-scales the degree character by `l >= 1`.
    pub fn with_scale(mut self, l: i64) -> Result<Self> {
        if l < 1 {
            return Err(KernelError::Invalid(
                "degree scale must be at least 1".into(),
            ));
        }
        if self.is_degenerate() {
            return Err(KernelError::Invalid(
                "degenerate groups have no degree scale".into(),
            ));
        }
        self.alpha_scale = l;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn autom(&self) -> &MonomialAutomorphism {
        &self.autom
    }

    pub fn alpha_scale(&self) -> i64 {
        self.alpha_scale
    }

    pub fn is_degenerate(&self) -> bool {
        self.alpha_scale == 0
    }

    /// True when the whole group is abelian (identity twist).
    pub fn is_commutative(&self) -> bool {
        self.autom.is_identity()
    }

    /// The twist applied when moving a lattice element past `n` shifts.
    pub fn twist(&self, n: i64) -> MonomialAutomorphism {
        self.autom.pow(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutativity_detection() {
        assert!(GroupDescriptor::free_abelian(2).is_commutative());
        assert!(GroupDescriptor::degenerate(1).is_commutative());
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        assert!(!GroupDescriptor::monomial_extension(th).is_commutative());
    }

    #[test]
    fn scale_rules() {
        assert!(GroupDescriptor::free_abelian(1).with_scale(3).is_ok());
        assert!(GroupDescriptor::free_abelian(1).with_scale(0).is_err());
        assert!(GroupDescriptor::degenerate(1).with_scale(2).is_err());
    }

    #[test]
    fn twist_powers() {
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        let g = GroupDescriptor::monomial_extension(th.clone());
        assert!(g.twist(2).is_identity());
        assert_eq!(g.twist(3), th);
        assert_eq!(g.twist(-1), th);
    }
}
