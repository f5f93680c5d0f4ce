//! Orbit extraction from monomial transition matrices.
//!
//! Each matrix in the family is read as a labelled multigraph: entry `(r, c)`
//! gives edges from node `r` to node `c`, one per unit of its integer
//! coefficient, each weighted by the group-element part and the sign of the
//! coefficient.  The prime cycles of these graphs, collected up to rotation,
//! become closed-orbit records whose zeta function reproduces the alternating
//! determinant product `det(I - phi_0)^(-1) det(I - phi_1)^(+1) ...` of the
//! same matrices; the product is also computed independently by row reduction
//! over the series field so the two sides can be compared.

use crate::error::{KernelError, Result};
use crate::group::{GroupDescriptor, GroupElement, GroupRingElement};
use crate::laurent::{rho_embed_ring, TwistedLaurentSeries};
use crate::linalg::{dieudonne_det, PivotStrategy, SkewMatrix, TwistedSeriesField};

use super::orbit::{ClosedOrbit, OrbitSet};

/// Output of [`orbit_enumerate`]: the cycle records of the transition graphs
/// and the alternating determinant product over the series field.
#[derive(Debug, Clone)]
pub struct OrbitEnumeration {
    pub orbits: OrbitSet,
    pub det_product: TwistedLaurentSeries,
}

struct Edge {
    from: usize,
    to: usize,
    sign: i32,
    holonomy: GroupElement,
    alpha: i64,
}

/// Reads one matrix entry as `coefficient · group element`, rejecting sums,
/// non-integer coefficients, and weights that do not cross the circle
/// direction positively.  `Ok(None)` for a zero entry.
fn monomial_entry(
    desc: &GroupDescriptor,
    matrix_index: usize,
    r: usize,
    c: usize,
    entry: &GroupRingElement,
) -> Result<Option<(i64, GroupElement)>> {
    if entry.is_zero() {
        return Ok(None);
    }
    let mut terms = Vec::new();
    for (shift, poly) in entry.slices() {
        for (exps, coeff) in poly.terms() {
            terms.push((*shift, exps.clone(), coeff.clone()));
        }
    }
    if terms.len() != 1 {
        return Err(KernelError::Invalid(format!(
            "entry ({r}, {c}) of transition matrix {matrix_index} is not a monomial ({} terms)",
            terms.len()
        )));
    }
    let (shift, exps, coeff) = terms.pop().expect("one term");
    if !coeff.is_integer() {
        return Err(KernelError::Invalid(format!(
            "entry ({r}, {c}) of transition matrix {matrix_index} has non-integer coefficient {coeff}"
        )));
    }
    let weight: i64 = coeff.to_integer().try_into().map_err(|_| {
        KernelError::Invalid(format!(
            "entry ({r}, {c}) of transition matrix {matrix_index} has an oversized coefficient"
        ))
    })?;
    let g = GroupElement::new(desc, exps, shift)?;
    let alpha = g.alpha(desc);
    if alpha < 1 {
        return Err(KernelError::Invalid(format!(
            "entry ({r}, {c}) of transition matrix {matrix_index} has degree {alpha}; \
             transition weights must have positive degree"
        )));
    }
    Ok(Some((weight, g)))
}

/// Depth-first enumeration of closed walks based at `base`, visiting only
/// nodes `>= base` so that the base is the smallest node on the cycle.
/// Completed walks are kept only in their canonical rotation (the
/// lexicographically least edge-id sequence among rotations starting at a
/// base visit) and only when they are not a power of a shorter walk.
#[allow(clippy::too_many_arguments)]
fn walk_cycles(
    base: usize,
    current: usize,
    alpha_used: i64,
    walk: &mut Vec<usize>,
    edges: &[Edge],
    adjacency: &[Vec<usize>],
    k: i64,
    found: &mut Vec<Vec<usize>>,
) {
    for &eid in &adjacency[current] {
        let edge = &edges[eid];
        if edge.to < base || alpha_used + edge.alpha > k {
            continue;
        }
        walk.push(eid);
        if edge.to == base {
            record_cycle(walk, edges, found);
        }
        walk_cycles(base, edge.to, alpha_used + edge.alpha, walk, edges, adjacency, k, found);
        walk.pop();
    }
}

fn record_cycle(walk: &[usize], edges: &[Edge], found: &mut Vec<Vec<usize>>) {
    let n = walk.len();
    for d in 1..n {
        if n % d == 0 && (0..n).all(|i| walk[i] == walk[i % d]) {
            return; // a power of a shorter cycle; the root is recorded on its own
        }
    }
    let base = edges[walk[0]].from;
    let canonical = (0..n)
        .filter(|&r| edges[walk[r]].from == base)
        .map(|r| {
            walk[r..]
                .iter()
                .chain(walk[..r].iter())
                .copied()
                .collect::<Vec<usize>>()
        })
        .min()
        .expect("rotation at the base exists");
    if canonical == walk {
        found.push(canonical);
    }
}

fn graph_orbits(
    desc: &GroupDescriptor,
    matrix_index: usize,
    phi: &SkewMatrix<GroupRingElement>,
    k: i64,
) -> Result<Vec<ClosedOrbit>> {
    let n = phi.nrows();
    let mut edges: Vec<Edge> = Vec::new();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in 0..n {
        for c in 0..n {
            if let Some((weight, g)) = monomial_entry(desc, matrix_index, r, c, phi.at(r, c))? {
                let sign = if weight < 0 { -1 } else { 1 };
                let alpha = g.alpha(desc);
                for _ in 0..weight.unsigned_abs() {
                    adjacency[r].push(edges.len());
                    edges.push(Edge { from: r, to: c, sign, holonomy: g.clone(), alpha });
                }
            }
        }
    }
    let mut found = Vec::new();
    for base in 0..n {
        let mut walk = Vec::new();
        walk_cycles(base, base, 0, &mut walk, &edges, &adjacency, k, &mut found);
    }
    let mut out = Vec::with_capacity(found.len());
    for walk in found {
        let mut sign = 1i32;
        let mut holonomy = GroupElement::identity(desc);
        for &eid in &walk {
            sign *= edges[eid].sign;
            holonomy = holonomy.mul(desc, &edges[eid].holonomy);
        }
        let (i_plus, i_minus) = orbit_indices(matrix_index, sign);
        out.push(ClosedOrbit::new(desc, walk.len() as u64, holonomy, i_plus, i_minus)?);
    }
    Ok(out)
}

/// Eigenvalue-count data under which the orbit's zeta factor equals the
/// factor `(1 - sign · h)^((-1)^(j+1))` that the cycle contributes to the
/// determinant of matrix `j` in the alternating product.
fn orbit_indices(matrix_index: usize, sign: i32) -> (u32, u32) {
    let j = (matrix_index % 2) as u32;
    if sign >= 0 {
        (j, 0)
    } else {
        (1 - j, 1)
    }
}

/// Enumerates the prime cycles of the transition graphs of `phis` up to
/// holonomy degree `k`, and computes the alternating determinant product
/// `prod_j det(I - phi_j)^((-1)^(j+1))` independently over the series field.
///
/// Every entry must be a single integer multiple of a group element of
/// positive degree; anything else is rejected with its coordinates.
pub fn orbit_enumerate(
    desc: &GroupDescriptor,
    phis: &[SkewMatrix<GroupRingElement>],
    k: i64,
) -> Result<OrbitEnumeration> {
    if k < 0 {
        return Err(KernelError::Invalid(
            "enumeration degree must be non-negative".into(),
        ));
    }
    let mut records = Vec::new();
    for (j, phi) in phis.iter().enumerate() {
        if !phi.is_square() {
            return Err(KernelError::Shape(format!(
                "transition matrix {j} is {}x{}",
                phi.nrows(),
                phi.ncols()
            )));
        }
        records.extend(graph_orbits(desc, j, phi, k)?);
    }
    let orbits = OrbitSet::new(desc, records, k)?;

    let precision = (k + 2) as usize;
    let field = TwistedSeriesField::new(desc.clone(), precision);
    let mut det_product = TwistedLaurentSeries::one(desc).truncate(k + 1);
    for (j, phi) in phis.iter().enumerate() {
        let n = phi.nrows();
        if n == 0 {
            continue;
        }
        let m = SkewMatrix::from_fn(n, n, |r, c| {
            let embedded = rho_embed_ring(phi.at(r, c)).neg();
            if r == c {
                embedded.add(&TwistedLaurentSeries::one(desc))
            } else {
                embedded
            }
        });
        let det = dieudonne_det(&field, &m, PivotStrategy::MinValuation)?.value;
        let factor = if j % 2 == 0 { det.inv(precision)? } else { det };
        det_product = det_product.mul(&factor).truncate(k + 1);
    }
    Ok(OrbitEnumeration { orbits, det_product })
}
