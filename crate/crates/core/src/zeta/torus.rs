//! Suspension-flow orbit data for hyperbolic torus automorphisms.
//!
//! For an integer matrix `A` with determinant one and `|tr A| > 2`, the
//! suspension of `x -> A x` has finitely many closed orbits in each period:
//! the period-`m` points number `|det(A^m - I)| = |tr(A^m) - 2|`, and the
//! prime-orbit counts `r_p` fall out of the divisor sieve
//! `sum_{p | m} p r_p = N_m`.  Holonomies are pure circle classes `t^p`; the
//! eigenvalue counts follow the sign of the dominant eigenvalue of `A^p`.

use crate::algebra::MonomialAutomorphism;
use crate::error::{KernelError, Result};
use crate::group::{GroupDescriptor, GroupElement};

use super::orbit::{ClosedOrbit, OrbitSet};

fn mat_mul(a: &[[i128; 2]; 2], b: &[[i128; 2]; 2]) -> [[i128; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Prime closed orbits of the suspension flow of the torus automorphism `a`,
/// through period `k`, over the descriptor of the mapping-torus group
/// (lattice rank two, twisted by `a`).
pub fn torus_suspension_orbits(a: &[[i64; 2]; 2], k: i64) -> Result<OrbitSet> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det != 1 {
        return Err(KernelError::Invalid(format!(
            "matrix determinant is {det}, expected 1"
        )));
    }
    let trace = a[0][0] + a[1][1];
    if trace.abs() <= 2 {
        return Err(KernelError::Invalid(format!(
            "matrix trace {trace} is not hyperbolic; |trace| must exceed 2"
        )));
    }
    if k < 0 {
        return Err(KernelError::Invalid("period bound must be non-negative".into()));
    }
    let autom = MonomialAutomorphism::new(vec![
        vec![a[0][0], a[0][1]],
        vec![a[1][0], a[1][1]],
    ])?;
    let desc = GroupDescriptor::monomial_extension(autom);

    let wide = [
        [a[0][0] as i128, a[0][1] as i128],
        [a[1][0] as i128, a[1][1] as i128],
    ];
    let mut power = [[1i128, 0], [0, 1]];
    let mut counts: Vec<u64> = Vec::new();
    let mut entries = Vec::new();
    for m in 1..=k {
        power = mat_mul(&power, &wide);
        let fixed: u64 = (2 - (power[0][0] + power[1][1]))
            .unsigned_abs()
            .try_into()
            .map_err(|_| {
                KernelError::Invalid(format!("fixed-point count at period {m} overflows"))
            })?;
        let covered: u64 = (1..m)
            .filter(|p| m % p == 0)
            .map(|p| p as u64 * counts[p as usize - 1])
            .sum();
        if fixed < covered || (fixed - covered) % m as u64 != 0 {
            return Err(KernelError::Invalid(format!(
                "fixed-point counts are inconsistent at period {m}"
            )));
        }
        let r_m = (fixed - covered) / m as u64;
        counts.push(r_m);
        if r_m > 0 {
            let holonomy = GroupElement::new(&desc, vec![0, 0], m)?;
            // dominant eigenvalue of A^m: positive unless tr A < -2 and m odd
            let (i_plus, i_minus) = if trace > 2 || m % 2 == 0 { (1, 0) } else { (0, 1) };
            entries.push((ClosedOrbit::new(&desc, m as u64, holonomy, i_plus, i_minus)?, r_m));
        }
    }
    OrbitSet::with_multiplicities(&desc, entries, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiPoly;
    use crate::zeta::{orbit_enumerate, zeta_product};
    use crate::group::GroupRingElement;
    use crate::laurent::rho_embed;
    use crate::linalg::SkewMatrix;

    fn counts(set: &OrbitSet, k: i64) -> Vec<u64> {
        (1..=k).map(|p| set.count_at_degree(p)).collect()
    }

    #[test]
    fn hyperbolic_example_counts_match_the_fixed_point_oracle() {
        let a = [[2i64, 1], [1, 1]];
        let set = torus_suspension_orbits(&a, 8).unwrap();
        assert_eq!(counts(&set, 8), vec![1, 2, 5, 10, 24, 50, 120, 270]);
        for (orbit, _) in set.entries() {
            assert_eq!((orbit.i_plus(), orbit.i_minus()), (1, 0));
            assert_eq!(orbit.holonomy().vec, vec![0, 0]);
            assert_eq!(orbit.holonomy().shift as u64, orbit.period());
        }

        // independent recount straight from matrix powers
        let mut power = [[1i128, 0], [0, 1]];
        let wide = [[2i128, 1], [1, 1]];
        let mut sieved: Vec<u64> = Vec::new();
        for m in 1u64..=8 {
            power = mat_mul(&power, &wide);
            let fixed = ((power[0][0] + power[1][1]) - 2) as u64;
            let covered: u64 = (1..m).filter(|p| m % p == 0).map(|p| p * sieved[p as usize - 1]).sum();
            sieved.push((fixed - covered) / m);
        }
        assert_eq!(counts(&set, 8), sieved);
    }

    #[test]
    fn hyperbolic_example_zeta_is_the_frozen_truncation() {
        let set = torus_suspension_orbits(&[[2, 1], [1, 1]], 4).unwrap();
        let z = zeta_product(&set, 4).unwrap();
        for (j, c) in [1i64, -1, -2, -3, -4].into_iter().enumerate() {
            assert_eq!(z.slice(j as i64).unwrap(), MultiPoly::from_int(2, c), "degree {j}");
        }
    }

    #[test]
    fn period_one_count_is_the_fixed_point_count() {
        for a in [[[3i64, 1], [2, 1]], [[4, 1], [3, 1]], [[5, 2], [2, 1]]] {
            let set = torus_suspension_orbits(&a, 1).unwrap();
            let trace = a[0][0] + a[1][1];
            assert_eq!(set.count_at_degree(1), (trace - 2) as u64);
        }
    }

    #[test]
    fn negative_trace_orbits_carry_odd_traversal_signs() {
        let a = [[-3i64, 1], [-1, 0]];
        let set = torus_suspension_orbits(&a, 4).unwrap();
        assert_eq!(counts(&set, 4), vec![5, 0, 5, 10]);
        for (orbit, _) in set.entries() {
            let expect = if orbit.period() % 2 == 0 { (1, 0) } else { (0, 1) };
            assert_eq!((orbit.i_plus(), orbit.i_minus()), expect, "period {}", orbit.period());
        }
        // (1 + t)^5 through degree 2
        let z = zeta_product(&set, 2).unwrap();
        assert_eq!(z.slice(0).unwrap(), MultiPoly::from_int(2, 1));
        assert_eq!(z.slice(1).unwrap(), MultiPoly::from_int(2, 5));
        assert_eq!(z.slice(2).unwrap(), MultiPoly::from_int(2, 10));
    }

    #[test]
    fn degenerate_shears_are_rejected() {
        assert!(torus_suspension_orbits(&[[1, 1], [0, 1]], 3).is_err());
        assert!(torus_suspension_orbits(&[[1, 0], [0, 1]], 3).is_err());
        assert!(torus_suspension_orbits(&[[2, 0], [0, 1]], 3).is_err());
        assert!(torus_suspension_orbits(&[[3, 1], [2, 1]], 3).is_ok());
    }

    #[test]
    fn suspension_counts_agree_with_graph_enumeration() {
        let set = torus_suspension_orbits(&[[2, 1], [1, 1]], 5).unwrap();
        let desc = set.desc().clone();
        let phis: Vec<SkewMatrix<GroupRingElement>> = vec![
            SkewMatrix::from_rows(vec![vec![GroupRingElement::parse(&desc, "t").unwrap()]]).unwrap(),
            SkewMatrix::from_rows(vec![
                vec![
                    GroupRingElement::parse(&desc, "2*t").unwrap(),
                    GroupRingElement::parse(&desc, "t").unwrap(),
                ],
                vec![
                    GroupRingElement::parse(&desc, "t").unwrap(),
                    GroupRingElement::parse(&desc, "t").unwrap(),
                ],
            ])
            .unwrap(),
            SkewMatrix::from_rows(vec![vec![GroupRingElement::parse(&desc, "t").unwrap()]]).unwrap(),
        ];
        let enumerated = orbit_enumerate(&desc, &phis, 5).unwrap();
        let from_counts = zeta_product(&set, 5).unwrap();
        let from_graphs = zeta_product(&enumerated.orbits, 5).unwrap();
        assert!(from_counts.compare_truncated(&from_graphs, 5).unwrap());
        assert!(rho_embed(&from_counts)
            .compare_truncated(&enumerated.det_product, 5)
            .unwrap());
    }
}
