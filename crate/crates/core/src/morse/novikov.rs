//! Induced boundary maps on critical points and the determinant
//! factorization of the assembled torsion.
//!
//! Eliminating the level and thickened-level summands of the reglued complex
//! leaves a complex on the critical points alone, with boundary
//! `K_i = N_i + W_i (I - phi_{i-1})^{-1} M_i`.  The resolvent is expanded as
//! a twisted geometric series, which converges in the series topology because
//! return maps strictly raise the level.

use crate::chain::{torsion_milnor, BasedChainComplex, HomologyBasis, MilnorOptions};
use crate::error::{KernelError, Result};
use crate::laurent::{rho_embed_ring, TwistedLaurentSeries};
use crate::linalg::{
    compare_torsion, dieudonne_det, Ambiguity, CompareOptions, ComparisonReport,
    PivotStrategy, SkewMatrix, TorsionValue, TwistedSeriesField,
};

use super::model::{assemble_differential, CircleMorseModel};

/// The induced maps on critical points, expanded through a fixed window.
#[derive(Debug, Clone)]
pub struct NovikovComplexData {
    /// Window the geometric resolvents were expanded through.
    pub precision: usize,
    /// `maps[j]` is the induced boundary out of critical degree `j + 1`.
    pub maps: Vec<SkewMatrix<TwistedLaurentSeries>>,
}

fn truncate_matrix(
    m: &SkewMatrix<TwistedLaurentSeries>,
    end: i64,
) -> SkewMatrix<TwistedLaurentSeries> {
    m.map(|s| s.truncate(end))
}

/// Resolvent `(I - phi)^{-1}` as a geometric series through the window.
/// A vanishing return map keeps the result exact.
fn resolvent(
    f: &TwistedSeriesField,
    phi: &SkewMatrix<TwistedLaurentSeries>,
    precision: usize,
) -> Result<SkewMatrix<TwistedLaurentSeries>> {
    let size = phi.nrows();
    let idm = SkewMatrix::identity(f, size);
    let zero = (0..size)
        .all(|r| (0..size).all(|c| phi.at(r, c).is_zero_through_window() && phi.at(r, c).is_exact()));
    if zero {
        return Ok(idm);
    }
    let end = precision as i64 + 1;
    let mut geo = idm.clone();
    for _ in 0..precision {
        geo = truncate_matrix(&idm.add(f, &phi.mul(f, &geo)?)?, end);
    }
    Ok(geo)
}

/// Computes the induced maps `K_i` for every pair of adjacent critical
/// degrees and checks that consecutive composites vanish through the window.
#[allow(non_snake_case)]
pub fn novikov_K(model: &CircleMorseModel, precision: usize) -> Result<NovikovComplexData> {
    let desc = model.desc().clone();
    let f = TwistedSeriesField::new(desc, precision);
    let mut maps = Vec::new();
    for i in 1..model.degrees() {
        let n_s = model.incidence_n()[i - 1].map(rho_embed_ring);
        let w_s = model.incidence_w()[i - 1].map(rho_embed_ring);
        let m_s = model.incidence_m()[i - 1].map(rho_embed_ring);
        let phi_s = model.phis()[i - 1].map(rho_embed_ring);
        let geo = resolvent(&f, &phi_s, precision)?;
        let k = n_s.add(&f, &w_s.mul(&f, &geo)?.mul(&f, &m_s)?)?;
        maps.push(k);
    }
    for i in 1..maps.len() {
        let prod = maps[i - 1].mul(&f, &maps[i])?;
        for r in 0..prod.nrows() {
            for c in 0..prod.ncols() {
                if !prod.at(r, c).is_zero_through_window() {
                    return Err(KernelError::Invalid(format!(
                        "induced maps do not compose to zero: K_{i}*K_{} has a \
                         nonzero entry at ({r}, {c})",
                        i + 1
                    )));
                }
            }
        }
    }
    Ok(NovikovComplexData { precision, maps })
}

/// True when every square induced stage admits a Dieudonné determinant at
/// this precision.  Used to filter randomly drawn models.
pub(crate) fn has_invertible_stages(model: &CircleMorseModel, precision: usize) -> bool {
    let f = TwistedSeriesField::new(model.desc().clone(), precision);
    let Ok(data) = novikov_K(model, precision) else {
        return false;
    };
    for k in &data.maps {
        if k.nrows() == 0 || k.ncols() == 0 {
            continue;
        }
        if k.nrows() != k.ncols() {
            return false;
        }
        if dieudonne_det(&f, k, PivotStrategy::MinValuation).is_err() {
            return false;
        }
    }
    true
}

/// Torsion of the induced complex on critical points.  A model with no
/// critical points contributes the empty complex, whose torsion is one.
pub fn novikov_torsion(model: &CircleMorseModel, precision: usize) -> Result<TwistedLaurentSeries> {
    let desc = model.desc().clone();
    if model.critical_counts().iter().all(|&k| k == 0) {
        return Ok(TwistedLaurentSeries::one(&desc));
    }
    let data = novikov_K(model, precision)?;
    let f = TwistedSeriesField::new(desc, precision);
    let cx = BasedChainComplex::new(model.critical_counts().to_vec(), data.maps)?;
    let h = HomologyBasis::empty(&f, cx.dims());
    torsion_milnor(&f, &cx, &h, &MilnorOptions::default())
}

/// Outcome of checking the assembled torsion against its block determinant
/// factorization.
#[derive(Debug, Clone)]
pub struct FactorizationReport {
    /// Torsion of the reglued complex.
    pub left: TwistedLaurentSeries,
    /// Alternating product of `det(I - phi_{i-1}) * det K_i`.
    pub right: TwistedLaurentSeries,
    pub comparison: ComparisonReport,
}

/// Checks the factorization of the assembled torsion into return-map
/// determinants and induced-map determinants, degree by degree:
///
/// ```text
/// torsion = prod_i [ det(I - phi_{i-1}) * det K_i ]^((-1)^i)
/// ```
///
/// up to a sign and a group monomial.  Rectangular induced stages with both
/// sides nonzero and singular square stages are rejected, since the
/// factorization has no determinant to offer for them.
pub fn factorization_check(
    model: &CircleMorseModel,
    precision: usize,
) -> Result<FactorizationReport> {
    if precision < 4 {
        return Err(KernelError::Invalid(
            "factorization checks need precision at least 4".into(),
        ));
    }
    let desc = model.desc().clone();
    let f = TwistedSeriesField::new(desc.clone(), precision);
    let end = precision as i64 + 1;
    let l = model.degrees();
    let data = novikov_K(model, precision)?;

    let mut right = TwistedLaurentSeries::one(&desc);
    for i in 1..=l {
        let e_prev = model.fiber_counts()[i - 1];
        let phi_s = model.phis()[i - 1].map(rho_embed_ring);
        let id_minus_phi = SkewMatrix::identity(&f, e_prev).sub(&f, &phi_s)?;
        let det_phi = dieudonne_det(&f, &id_minus_phi, PivotStrategy::MinValuation)?.value;
        let rows = model.critical_counts()[i - 1];
        let cols = if i < l { model.critical_counts()[i] } else { 0 };
        let det_k = if rows == 0 || cols == 0 {
            TwistedLaurentSeries::one(&desc)
        } else if rows != cols {
            return Err(KernelError::Invalid(format!(
                "induced map K_{i} is {rows}x{cols}; the factorization needs \
                 square stages"
            )));
        } else {
            dieudonne_det(&f, &data.maps[i - 1], PivotStrategy::MinValuation)
                .map_err(|e| match e {
                    KernelError::SingularPivot { .. } => KernelError::Invalid(format!(
                        "induced map K_{i} is singular; the factorization does \
                         not apply"
                    )),
                    other => other,
                })?
                .value
        };
        let factor = det_phi.mul(&det_k);
        right = if i % 2 == 1 {
            right.mul(&factor.inv(precision)?)
        } else {
            right.mul(&factor)
        };
        right = right.truncate(end);
    }

    let cx = assemble_differential(model)?;
    let h = HomologyBasis::empty(&f, cx.dims());
    let left = torsion_milnor(&f, &cx, &h, &MilnorOptions::default())?;

    let opts = CompareOptions { through_degree: precision as i64 - 2, cert_radius: 2 };
    let comparison = compare_torsion(
        &TorsionValue::Series(left.clone()),
        &TorsionValue::Series(right.clone()),
        Ambiguity::SignedMonomial,
        &opts,
    )?;
    Ok(FactorizationReport { left, right, comparison })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use rand::SeedableRng;

    use super::super::models::{
        cat_map_model, circle_model, random_paired_model, stabilize,
    };
    use super::*;
    use crate::group::{GroupDescriptor, GroupElement, GroupRingElement};
    use crate::linalg::Verdict;

    fn ratfun_int(nvars: usize, v: i64) -> crate::algebra::RationalFunction {
        crate::algebra::RationalFunction::from_int(nvars, v)
    }

    #[test]
    fn resolvent_example_inverts_one_minus_the_return_map() {
        // One critical point in each of two degrees, a single level cell,
        // unit incidences and return map 3t: the induced map is the
        // geometric series of 3t.
        let desc = GroupDescriptor::free_abelian(0);
        let one = SkewMatrix::from_fn(1, 1, |_, _| GroupRingElement::one(&desc));
        let zero1 = SkewMatrix::from_fn(1, 1, |_, _| GroupRingElement::zero(&desc));
        let phi0 = SkewMatrix::from_fn(1, 1, |_, _| {
            GroupRingElement::parse(&desc, "3*t").unwrap()
        });
        let model = CircleMorseModel::new(
            desc.clone(),
            vec![1, 1],
            vec![1, 0],
            vec![zero1.clone()],
            vec![one.clone()],
            vec![one.clone(), SkewMatrix::from_fn(1, 0, |_, _| GroupRingElement::zero(&desc))],
            vec![phi0, SkewMatrix::from_fn(0, 0, |_, _| GroupRingElement::zero(&desc))],
            vec![SkewMatrix::from_fn(1, 0, |_, _| GroupRingElement::zero(&desc))],
        )
        .unwrap();
        let data = novikov_K(&model, 8).unwrap();
        let k = data.maps[0].at(0, 0).clone();
        for j in 0..=6 {
            assert_eq!(k.slice(j), Some(ratfun_int(0, 3i64.pow(j as u32))));
        }
        // (1 - 3t) * K = 1 through the window.
        let lhs = TwistedLaurentSeries::one(&desc)
            .sub(&rho_embed_ring(&GroupRingElement::parse(&desc, "3*t").unwrap()));
        let residue = lhs.mul(&k).sub(&TwistedLaurentSeries::one(&desc));
        assert!(residue.is_zero_through_window());
    }

    #[test]
    fn fibrations_have_unit_torsion_on_the_critical_complex() {
        let model = cat_map_model();
        let tor = novikov_torsion(&model, 6).unwrap();
        let diff = tor.sub(&TwistedLaurentSeries::one(model.desc()));
        assert!(diff.is_exact() && diff.is_zero_through_window());
        assert!(novikov_K(&model, 6).unwrap().maps.iter().all(|k| k.nrows() == 0 || k.ncols() == 0));
    }

    #[test]
    fn cancelling_pairs_produce_the_unit_induced_map() {
        let base = cat_map_model();
        let desc = base.desc().clone();
        let t = GroupRingElement::from_group_element(
            &desc,
            &GroupElement::new(&desc, vec![0, 0], 1).unwrap(),
            BigRational::from_integer(1.into()),
        );
        let model = stabilize(&base, 2, &t).unwrap();
        let data = novikov_K(&model, 6).unwrap();
        // K_2 is exactly the unit incidence t.
        let k2 = data.maps[1].at(0, 0);
        let diff = k2.sub(&rho_embed_ring(&t));
        assert!(diff.is_exact() && diff.is_zero_through_window());
        // The two-term induced complex at degrees (1, 2) has torsion det K_2.
        let tor = novikov_torsion(&model, 6).unwrap();
        let diff = tor.sub(&rho_embed_ring(&t));
        assert!(diff.is_zero_through_window());
    }

    #[test]
    fn suspension_factorization_recovers_the_frozen_coefficients() {
        let model = cat_map_model();
        let out = factorization_check(&model, 8).unwrap();
        assert_eq!(out.comparison.verdict, Verdict::Equal);
        // Right side is (1-t)^-1 (1-3t+t^2) (1-t)^-1 = 1 - t - 2t^2 - ...
        for (j, c) in [1i64, -1, -2, -3, -4, -5].iter().enumerate() {
            assert_eq!(out.right.slice(j as i64), Some(ratfun_int(2, *c)));
        }
    }

    #[test]
    fn factorization_reports_singular_stages() {
        // A matched pair of critical points with zero incidences all around
        // induces the zero map, which has no determinant.
        let desc = GroupDescriptor::free_abelian(0);
        let z = |r, c| SkewMatrix::from_fn(r, c, |_, _| GroupRingElement::zero(&desc));
        let model = CircleMorseModel::new(
            desc.clone(),
            vec![1, 1],
            vec![0, 0],
            vec![z(1, 1)],
            vec![z(0, 1)],
            vec![z(1, 0), z(1, 0)],
            vec![z(0, 0), z(0, 0)],
            vec![z(0, 0)],
        )
        .unwrap();
        let err = factorization_check(&model, 6).unwrap_err();
        assert!(err.to_string().contains("K_1 is singular"), "{err}");
    }

    #[test]
    fn random_paired_models_factor_over_the_free_abelian_group() {
        let desc = GroupDescriptor::free_abelian(1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let model = random_paired_model(&desc, &mut rng).unwrap();
            let out = factorization_check(&model, 8).unwrap();
            assert_eq!(out.comparison.verdict, Verdict::Equal);
        }
    }

    #[test]
    fn random_paired_models_factor_under_an_inverting_twist() {
        let autom = crate::algebra::MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        let desc = GroupDescriptor::monomial_extension(autom);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..3 {
            let model = random_paired_model(&desc, &mut rng).unwrap();
            let out = factorization_check(&model, 8).unwrap();
            assert_eq!(out.comparison.verdict, Verdict::Equal);
        }
    }
}
