//! End-to-end comparison of the assembled torsion with the product of the
//! closed-orbit zeta function and the critical-point torsion.

use crate::chain::{torsion_milnor, HomologyBasis, MilnorOptions};
use crate::error::{KernelError, Result};
use crate::group::NovikovElement;
use crate::laurent::{rho_embed, TwistedLaurentSeries};
use crate::linalg::{
    compare_torsion, Ambiguity, CompareOptions, ComparisonReport, TorsionValue,
    TwistedSeriesField, Verdict,
};
use crate::zeta::{orbit_enumerate, zeta_product};

use super::model::{assemble_differential, CircleMorseModel};
use super::novikov::novikov_torsion;

/// Everything produced while comparing the two sides, kept for audit.
#[derive(Debug, Clone)]
pub struct MainTheoremReport {
    /// Degree the series were compared through.
    pub degree: i64,
    /// Torsion of the reglued complex.
    pub left: TwistedLaurentSeries,
    /// Zeta function of the closed orbits of the return maps.
    pub zeta: NovikovElement,
    /// Torsion of the induced complex on critical points.
    pub novikov: TwistedLaurentSeries,
    /// `rho(zeta) * novikov`, the predicted value of `left`.
    pub right: TwistedLaurentSeries,
    /// Alternating determinant product of `I - phi`, an independent check
    /// on the enumerated zeta function.
    pub det_side: TwistedLaurentSeries,
    pub det_matches_orbits: bool,
    /// Orbit multiplicities per degree `1 ..= degree`.
    pub orbit_counts: Vec<(i64, u64)>,
    pub comparison: ComparisonReport,
}

impl MainTheoremReport {
    pub fn verdict(&self) -> Verdict {
        self.comparison.verdict
    }
}

/// Compares the torsion of the reglued complex with the zeta-weighted
/// torsion of the critical complex, through series degree `k`.
pub fn verify_main_theorem(model: &CircleMorseModel, k: i64) -> Result<MainTheoremReport> {
    if k < 1 {
        return Err(KernelError::Invalid(
            "the comparison degree must be at least 1".into(),
        ));
    }
    let precision = (k + 3) as usize;
    let desc = model.desc().clone();
    let f = TwistedSeriesField::new(desc, precision);

    let cx = assemble_differential(model)?;
    let h = HomologyBasis::empty(&f, cx.dims());
    let left = torsion_milnor(&f, &cx, &h, &MilnorOptions::default())?;

    let enumeration = orbit_enumerate(model.desc(), model.phis(), k)?;
    let zeta = zeta_product(&enumeration.orbits, k)?;
    let zeta_series = rho_embed(&zeta);
    let novikov = novikov_torsion(model, precision)?;
    let right = zeta_series.mul(&novikov);

    let det_matches_orbits = zeta_series.compare_truncated(&enumeration.det_product, k)?;
    let orbit_counts = (1..=k)
        .map(|a| (a, enumeration.orbits.count_at_degree(a)))
        .collect();

    let comparison = compare_torsion(
        &TorsionValue::Series(left.clone()),
        &TorsionValue::Series(right.clone()),
        Ambiguity::SignedMonomial,
        &CompareOptions { through_degree: k, cert_radius: 2 },
    )?;

    Ok(MainTheoremReport {
        degree: k,
        left,
        zeta,
        novikov,
        right,
        det_side: enumeration.det_product,
        det_matches_orbits,
        orbit_counts,
        comparison,
    })
}
