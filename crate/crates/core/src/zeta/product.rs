//! The orbit zeta function in its two equivalent forms.
//!
//! The product form multiplies one factor `(1 - (-1)^(i_minus) h)^(±1)` per
//! orbit; the exponential form multiplies `exp(sum_j sign(j)/j · h^j)` with
//! the traversal signs coming from the eigenvalue counts.  Both are truncated
//! past a requested degree and must agree there — the exponential identity
//! `exp(sum h^j / j) = (1 - h)^(-1)` term by term.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{KernelError, Result};
use crate::group::NovikovElement;

use super::orbit::OrbitSet;

/// Sign of the `j`-fold traversal of an orbit whose return map has `i_plus`
/// real eigenvalues above `+1` and `i_minus` below `-1`: the fixed-point
/// index `(-1)^(i_plus + (j+1) i_minus)`.
pub fn lefschetz_sign(i_plus: u32, i_minus: u32, j: u64) -> i32 {
    assert!(j >= 1, "traversal count must be positive");
    let parity = (i_plus as u128 + (j as u128 + 1) * i_minus as u128) % 2;
    if parity == 0 {
        1
    } else {
        -1
    }
}

fn ensure_complete(orbits: &OrbitSet, k: i64) -> Result<()> {
    if k < 0 {
        return Err(KernelError::Invalid(
            "truncation degree must be non-negative".into(),
        ));
    }
    if orbits.complete_through() < k {
        return Err(KernelError::InsufficientPrecision {
            needed: k,
            have: orbits.complete_through(),
        });
    }
    Ok(())
}

/// `base^mult` with re-truncation after every multiplication, so orbit
/// families with large repetition counts stay cheap.
fn pow_truncated(base: &NovikovElement, mut mult: u64, end: i64) -> NovikovElement {
    let mut acc = NovikovElement::one(base.desc()).truncate(end);
    let mut sq = base.truncate(end);
    while mult > 0 {
        if mult & 1 == 1 {
            acc = acc.mul(&sq).truncate(end);
        }
        mult >>= 1;
        if mult > 0 {
            sq = sq.mul(&sq).truncate(end);
        }
    }
    acc
}

/// The zeta function of the orbit set as a product of orbit factors,
/// truncated past degree `k`.
///
/// Each orbit contributes `(1 - (-1)^(i_minus) h)` raised to
/// `(-1)^(i_plus + i_minus + 1)`: purely expanding orbits give polynomial
/// factors, index-zero orbits give geometric series.  The orbit set must be
/// complete through degree `k`.
pub fn zeta_product(orbits: &OrbitSet, k: i64) -> Result<NovikovElement> {
    ensure_complete(orbits, k)?;
    let desc = orbits.desc();
    let end = k + 1;
    let mut out = NovikovElement::one(desc).truncate(end);
    for (orbit, mult) in orbits.entries() {
        let h = orbit.holonomy();
        let gamma = NovikovElement::from_term(desc, h.vec.clone(), h.shift, BigRational::one())?;
        let signed = if orbit.i_minus() % 2 == 0 { gamma } else { gamma.neg() };
        let base = NovikovElement::one(desc).sub(&signed);
        let inverted = (orbit.i_plus() + orbit.i_minus() + 1) % 2 == 1;
        let factor = if inverted { base.invert_unit(k as usize)? } else { base };
        out = out.mul(&pow_truncated(&factor, *mult, end)).truncate(end);
    }
    Ok(out)
}

/// The zeta function of the orbit set in exponential form, truncated past
/// degree `k`: the product over orbits of
/// `exp(sum_{j >= 1} lefschetz_sign(i_plus, i_minus, j)/j · h^j)`.
pub fn zeta_exp(orbits: &OrbitSet, k: i64) -> Result<NovikovElement> {
    ensure_complete(orbits, k)?;
    let desc = orbits.desc();
    let end = k + 1;
    let mut out = NovikovElement::one(desc).truncate(end);
    for (orbit, mult) in orbits.entries() {
        let alpha = orbit.alpha(desc);
        let mut series = NovikovElement::zero(desc);
        let mut j: i64 = 1;
        while j * alpha <= k {
            let sign = lefschetz_sign(orbit.i_plus(), orbit.i_minus(), j as u64);
            let power = orbit.holonomy().pow(desc, j);
            let coeff = BigRational::new(
                BigInt::from(sign) * BigInt::from(*mult),
                BigInt::from(j),
            );
            series = series.add(&NovikovElement::from_term(desc, power.vec, power.shift, coeff)?);
            j += 1;
        }
        let factor = series.exp(k as usize)?;
        out = out.mul(&factor).truncate(end);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialAutomorphism, MultiPoly};
    use crate::group::{GroupDescriptor, GroupElement};
    use crate::zeta::ClosedOrbit;

    fn shift_orbit(
        desc: &GroupDescriptor,
        period: u64,
        i_plus: u32,
        i_minus: u32,
    ) -> ClosedOrbit {
        let h = GroupElement::new(desc, vec![0; desc.nvars()], period as i64).unwrap();
        ClosedOrbit::new(desc, period, h, i_plus, i_minus).unwrap()
    }

    fn constant(c: i64) -> MultiPoly {
        MultiPoly::from_int(0, c)
    }

    #[test]
    fn traversal_signs_match_the_eigenvalue_convention() {
        for j in 1..6 {
            assert_eq!(lefschetz_sign(1, 0, j), -1);
            assert_eq!(lefschetz_sign(0, 0, j), 1);
        }
        assert_eq!(lefschetz_sign(0, 1, 1), 1);
        assert_eq!(lefschetz_sign(0, 1, 2), -1);
        assert_eq!(lefschetz_sign(2, 1, 1), 1);
    }

    #[test]
    fn expanding_orbit_contributes_a_linear_factor() {
        let g = GroupDescriptor::free_abelian(0);
        let set = OrbitSet::new(&g, vec![shift_orbit(&g, 1, 1, 0)], 6).unwrap();
        let z = zeta_product(&set, 6).unwrap();
        assert_eq!(z.slice(0).unwrap(), constant(1));
        assert_eq!(z.slice(1).unwrap(), constant(-1));
        for j in 2..=6 {
            assert!(z.slice(j).unwrap().is_zero(), "degree {j}");
        }
        assert_eq!(z.known_end(), 7);
    }

    #[test]
    fn index_zero_orbit_contributes_a_geometric_factor() {
        let g = GroupDescriptor::free_abelian(0);
        let set = OrbitSet::new(&g, vec![shift_orbit(&g, 1, 0, 0)], 6).unwrap();
        let z = zeta_product(&set, 6).unwrap();
        for j in 0..=6 {
            assert_eq!(z.slice(j).unwrap(), constant(1), "degree {j}");
        }
    }

    #[test]
    fn flipping_orbits_alternate_their_factor_signs() {
        let g = GroupDescriptor::free_abelian(0);
        let plus = OrbitSet::new(&g, vec![shift_orbit(&g, 1, 0, 1)], 4).unwrap();
        let z = zeta_product(&plus, 4).unwrap();
        assert_eq!(z.slice(0).unwrap(), constant(1));
        assert_eq!(z.slice(1).unwrap(), constant(1));
        assert!(z.slice(2).unwrap().is_zero());

        let inverted = OrbitSet::new(&g, vec![shift_orbit(&g, 1, 1, 1)], 4).unwrap();
        let z = zeta_product(&inverted, 4).unwrap();
        for j in 0..=4 {
            assert_eq!(z.slice(j).unwrap(), constant(if j % 2 == 0 { 1 } else { -1 }));
        }
    }

    fn cat_map_counts(desc: &GroupDescriptor, through: i64) -> OrbitSet {
        let counts = [1u64, 2, 5, 10, 24, 50];
        let entries = (1..=through)
            .map(|p| (shift_orbit(desc, p as u64, 1, 0), counts[p as usize - 1]))
            .collect();
        OrbitSet::with_multiplicities(desc, entries, through).unwrap()
    }

    #[test]
    fn suspension_orbit_counts_expand_to_the_frozen_truncation() {
        let g = GroupDescriptor::free_abelian(0);
        let set = cat_map_counts(&g, 4);
        let z = zeta_product(&set, 4).unwrap();
        for (j, c) in [1i64, -1, -2, -3, -4].into_iter().enumerate() {
            assert_eq!(z.slice(j as i64).unwrap(), constant(c), "degree {j}");
        }
    }

    #[test]
    fn exponential_form_matches_the_product_form() {
        let g = GroupDescriptor::free_abelian(0);
        let set = cat_map_counts(&g, 6);
        let zp = zeta_product(&set, 6).unwrap();
        let ze = zeta_exp(&set, 6).unwrap();
        assert!(zp.compare_truncated(&ze, 6).unwrap());

        let mixed = OrbitSet::with_multiplicities(
            &g,
            vec![
                (shift_orbit(&g, 1, 0, 1), 3),
                (shift_orbit(&g, 2, 1, 0), 2),
                (shift_orbit(&g, 3, 0, 0), 1),
            ],
            6,
        )
        .unwrap();
        let zp = zeta_product(&mixed, 6).unwrap();
        let ze = zeta_exp(&mixed, 6).unwrap();
        assert!(zp.compare_truncated(&ze, 6).unwrap());
    }

    #[test]
    fn exponential_form_matches_under_a_nontrivial_twist() {
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        let g = GroupDescriptor::monomial_extension(th);
        let h = GroupElement::new(&g, vec![1], 1).unwrap();
        let orbit = ClosedOrbit::new(&g, 1, h, 0, 0).unwrap();
        let set = OrbitSet::new(&g, vec![orbit], 6).unwrap();
        let zp = zeta_product(&set, 6).unwrap();
        let ze = zeta_exp(&set, 6).unwrap();
        assert!(zp.compare_truncated(&ze, 6).unwrap());
        // powers of (x, 1) alternate between pure shifts and x-shifted slices
        assert_eq!(zp.slice(2).unwrap(), MultiPoly::one(1));
        assert_eq!(
            zp.slice(3).unwrap(),
            MultiPoly::monomial(vec![1], BigRational::one())
        );
    }

    #[test]
    fn orbit_list_order_does_not_change_the_product() {
        let g = GroupDescriptor::free_abelian(0);
        let forward = cat_map_counts(&g, 5);
        let mut reversed_entries: Vec<_> = forward.entries().to_vec();
        reversed_entries.reverse();
        let reversed = OrbitSet::with_multiplicities(&g, reversed_entries, 5).unwrap();
        let a = zeta_product(&forward, 5).unwrap();
        let b = zeta_product(&reversed, 5).unwrap();
        assert!(a.compare_truncated(&b, 5).unwrap());
    }

    #[test]
    fn incomplete_orbit_sets_are_refused_past_their_bound() {
        let g = GroupDescriptor::free_abelian(0);
        let set = OrbitSet::new(&g, vec![shift_orbit(&g, 1, 1, 0)], 3).unwrap();
        assert!(zeta_product(&set, 3).is_ok());
        assert!(matches!(
            zeta_product(&set, 4),
            Err(KernelError::InsufficientPrecision { needed: 4, have: 3 })
        ));
        assert!(zeta_exp(&set, 4).is_err());
    }

    /// Degree-`m` slice of `log zeta`: the traversal sum
    /// `sum_{p | m} (p/m) · sum_{orbits of degree p} sign(o^(m/p)) h^(m/p)`.
    #[test]
    fn log_of_the_zeta_collects_traversal_sums() {
        let g = GroupDescriptor::free_abelian(0);
        for set in [cat_map_counts(&g, 6), {
            OrbitSet::with_multiplicities(
                &g,
                vec![
                    (shift_orbit(&g, 1, 0, 1), 5),
                    (shift_orbit(&g, 3, 0, 1), 5),
                    (shift_orbit(&g, 4, 1, 0), 10),
                ],
                6,
            )
            .unwrap()
        }] {
            let z = zeta_product(&set, 6).unwrap();
            let lg = z.log(6).unwrap();
            let mut rhs = NovikovElement::zero(&g);
            for (orbit, mult) in set.entries() {
                let p = orbit.alpha(&g);
                let mut m = p;
                while m <= 6 {
                    let j = (m / p) as u64;
                    let sign = lefschetz_sign(orbit.i_plus(), orbit.i_minus(), j);
                    let power = orbit.holonomy().pow(&g, j as i64);
                    let coeff = BigRational::new(
                        BigInt::from(sign) * BigInt::from(*mult) * BigInt::from(p),
                        BigInt::from(m),
                    );
                    rhs = rhs
                        .add(&NovikovElement::from_term(&g, power.vec, power.shift, coeff).unwrap());
                    m += p;
                }
            }
            assert!(lg.compare_truncated(&rhs, 6).unwrap());
        }
    }

    /// Fixed-point counts of the hyperbolic example surface in the log:
    /// slice `m` is `-N_m / m` with `N_m = 1, 5, 16, 45, 121, 320`.
    #[test]
    fn log_slices_recover_fixed_point_counts() {
        let g = GroupDescriptor::free_abelian(0);
        let z = zeta_product(&cat_map_counts(&g, 6), 6).unwrap();
        let lg = z.log(6).unwrap();
        for (m, n_m) in [1i64, 5, 16, 45, 121, 320].into_iter().enumerate() {
            let m = m as i64 + 1;
            let expect = MultiPoly::constant(0, BigRational::new((-n_m).into(), m.into()));
            assert_eq!(lg.slice(m).unwrap(), expect, "degree {m}");
        }
    }
}
