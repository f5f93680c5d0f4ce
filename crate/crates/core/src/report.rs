//! Versioned, machine-readable summaries of kernel computations.
//!
//! Every report carries the same `version` marker, and every numeric field
//! is an exact canonical string produced by the corresponding `render`
//! method, so identical inputs serialize to byte-identical output.

use serde::Serialize;

use crate::laurent::TwistedLaurentSeries;
use crate::linalg::{ComparisonReport, DetOutput, PivotRecord};
use crate::morse::MainTheoremReport;

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct PivotLogEntry {
    pub row: usize,
    pub column: usize,
    /// Valuation of the pivot when the strategy tracked one.
    pub weight: Option<i64>,
    pub pivot: String,
}

impl From<&PivotRecord> for PivotLogEntry {
    fn from(p: &PivotRecord) -> Self {
        PivotLogEntry {
            row: p.row,
            column: p.column,
            weight: p.weight,
            pivot: p.pivot.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DetReport {
    pub version: String,
    pub value: String,
    pub swap_sign: i64,
    pub pivots: Vec<PivotLogEntry>,
}

impl DetReport {
    pub fn from_series(out: &DetOutput<TwistedLaurentSeries>) -> Self {
        DetReport {
            version: REPORT_VERSION.into(),
            value: out.value.render(),
            swap_sign: out.swap_sign,
            pivots: out.pivots.iter().map(PivotLogEntry::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionReport {
    pub version: String,
    pub value: String,
}

impl TorsionReport {
    pub fn from_series(value: &TwistedLaurentSeries) -> Self {
        TorsionReport { version: REPORT_VERSION.into(), value: value.render() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitCountRow {
    pub degree: i64,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaReport {
    pub version: String,
    pub series: String,
    pub orbit_counts: Vec<OrbitCountRow>,
}

/// The comparison fields shared by every verdict-bearing report.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonSummary {
    pub verdict: String,
    pub route: String,
    pub through_degree: Option<i64>,
    pub details: Vec<String>,
    pub certificates: Vec<String>,
}

impl From<&ComparisonReport> for ComparisonSummary {
    fn from(r: &ComparisonReport) -> Self {
        ComparisonSummary {
            verdict: r.verdict.to_string(),
            route: r.route.clone(),
            through_degree: r.through_degree,
            details: r.details.clone(),
            certificates: r.certificates.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationSummary {
    pub version: String,
    pub left: String,
    pub right: String,
    pub comparison: ComparisonSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub degree: i64,
    pub verdict: String,
    pub left: String,
    pub right: String,
    pub zeta: String,
    pub novikov: String,
    pub det_side: String,
    pub det_matches_orbits: bool,
    pub orbit_counts: Vec<OrbitCountRow>,
    pub comparison: ComparisonSummary,
}

impl VerifyReport {
    pub fn new(report: &MainTheoremReport) -> Self {
        VerifyReport {
            version: REPORT_VERSION.into(),
            degree: report.degree,
            verdict: report.verdict().to_string(),
            left: report.left.render(),
            right: report.right.render(),
            zeta: report.zeta.render(),
            novikov: report.novikov.render(),
            det_side: report.det_side.render(),
            det_matches_orbits: report.det_matches_orbits,
            orbit_counts: report
                .orbit_counts
                .iter()
                .map(|&(degree, count)| OrbitCountRow { degree, count })
                .collect(),
            comparison: ComparisonSummary::from(&report.comparison),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;
    use crate::linalg::{dieudonne_det, PivotStrategy, SkewMatrix, TwistedSeriesField};
    use crate::morse::{cat_map_model, verify_main_theorem};

    #[test]
    fn determinant_reports_carry_version_and_pivots() {
        let desc = GroupDescriptor::free_abelian(0);
        let f = TwistedSeriesField::new(desc, 6);
        let m = SkewMatrix::identity(&f, 2);
        let out = dieudonne_det(&f, &m, PivotStrategy::MinValuation).unwrap();
        let report = DetReport::from_series(&out);
        assert_eq!(report.version, "1");
        assert_eq!(report.value, "1");
        assert_eq!(report.pivots.len(), 2);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"version\":\"1\""), "{json}");
    }

    #[test]
    fn identical_runs_serialize_identically() {
        let one = VerifyReport::new(&verify_main_theorem(&cat_map_model(), 4).unwrap());
        let two = VerifyReport::new(&verify_main_theorem(&cat_map_model(), 4).unwrap());
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&two).unwrap()
        );
    }
}
