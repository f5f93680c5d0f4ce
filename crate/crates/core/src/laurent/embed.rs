//! Embedding of the group ring and its completion into the twisted series
//! field: each lattice monomial becomes a rational-function coefficient and
//! the shift coordinate becomes the series degree.  This is a ring map, and it
//! identifies each group element `(v, n)` with the unit `x^v t^(l n)`.

use crate::algebra::RationalFunction;
use crate::group::{GroupRingElement, NovikovElement};

use super::series::TwistedLaurentSeries;

pub fn rho_embed_ring(g: &GroupRingElement) -> TwistedLaurentSeries {
    rho_embed(&NovikovElement::from_group_ring(g))
}

pub fn rho_embed(a: &NovikovElement) -> TwistedLaurentSeries {
    let desc = a.desc().clone();
    let mut out = TwistedLaurentSeries::zero(&desc);
    for (j, p) in a.stored_slices() {
        out = out.add(&TwistedLaurentSeries::coeff_at(
            &desc,
            RationalFunction::from_poly(p.clone()),
            j,
        ));
    }
    if !a.is_exact() {
        out = out.truncate(a.known_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialAutomorphism;
    use crate::group::GroupDescriptor;

    #[test]
    fn embedding_is_multiplicative_in_the_twisted_case() {
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        let g = GroupDescriptor::monomial_extension(th);
        let a = GroupRingElement::parse(&g, "x*t - 2").unwrap();
        let b = GroupRingElement::parse(&g, "x^2*t + x*t^2 - 1").unwrap();
        let lhs = rho_embed_ring(&a.mul(&b));
        let rhs = rho_embed_ring(&a).mul(&rho_embed_ring(&b));
        assert_eq!(lhs, rhs);
        let sum = rho_embed_ring(&a.add(&b));
        assert_eq!(sum, rho_embed_ring(&a).add(&rho_embed_ring(&b)));
    }

    #[test]
    fn embedding_respects_windows() {
        let g = GroupDescriptor::free_abelian(1);
        let one = NovikovElement::one(&g);
        let t = NovikovElement::parse(&g, "t").unwrap();
        let inv = one.sub(&t).invert_unit(5).unwrap();
        let s = rho_embed(&inv);
        assert_eq!(s.known_end(), 6);
        for j in 0..=5 {
            assert!(s.slice(j).unwrap().is_one(), "slice {j}");
        }
        assert!(s.slice(6).is_none());
    }
}
