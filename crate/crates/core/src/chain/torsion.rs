//! Torsion of a based complex.
//!
//! Two routes are implemented.  The base-change route picks, for every
//! degree, a set of boundary preimages and expresses the combined basis
//! (boundaries, declared homology vectors, preimages) in the given basis;
//! the torsion is the alternating product of those determinants.  The
//! split route partitions each basis into two blocks so that the boundary
//! followed by projection is an isomorphism between neighbouring blocks,
//! and takes the alternating product of the block determinants.  The two
//! agree up to sign on every acyclic complex, which the tests exercise in
//! both commutative and twisted coefficients.

use crate::error::{KernelError, Result};
use crate::linalg::{dieudonne_det, echelon_pivots, PivotStrategy, SkewField, SkewMatrix};

use super::complex::{BasedChainComplex, HomologyBasis};

/// Knobs for the base-change route; the defaults are deterministic.
#[derive(Debug, Clone, Default)]
pub struct MilnorOptions {
    pub strategy: Option<PivotStrategy>,
    /// Column scan order per boundary map: entry `k` reorders the columns of
    /// the map out of degree `k + 1`.  Exercises independence of the internal
    /// choice of boundary preimages.
    pub column_orders: Option<Vec<Vec<usize>>>,
}

impl MilnorOptions {
    fn strategy(&self) -> PivotStrategy {
        self.strategy.unwrap_or(PivotStrategy::MinValuation)
    }
}

/// Alternating product of base-change determinants.  `h` declares homology
/// (cycle vectors per degree, validated); pass trivial data for an acyclic
/// complex.  The factor at an even degree enters inverted, so a two-term
/// complex `(d) : C_1 -> C_0` has torsion `d^{-1}`.
pub fn torsion_milnor<F: SkewField>(
    f: &F,
    cx: &BasedChainComplex<F::Elem>,
    h: &HomologyBasis<F::Elem>,
    opts: &MilnorOptions,
) -> Result<F::Elem> {
    if cx.is_empty() {
        return Ok(f.one());
    }
    let n = cx.len() - 1;
    let strategy = opts.strategy();

    // Greedy column bases of the boundary images; pivot_cols[i] belongs to
    // the map out of degree i.
    let mut pivot_cols: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    for i in 1..=n {
        let m = cx.boundary(i).expect("boundary in range");
        let order = opts
            .column_orders
            .as_ref()
            .and_then(|orders| orders.get(i - 1))
            .map(|v| v.as_slice());
        let pivots = echelon_pivots(f, m, order, strategy)?;
        let mut cols: Vec<usize> = pivots.into_iter().map(|(_, c)| c).collect();
        cols.sort_unstable();
        pivot_cols[i] = cols;
    }

    // Declared homology vectors must be cycles.
    for i in 1..=n {
        if h.count(i) == 0 {
            continue;
        }
        let vecs = h.vectors(i).expect("counted");
        let img = cx.boundary(i).expect("in range").mul(f, vecs)?;
        for r in 0..img.nrows() {
            for c in 0..img.ncols() {
                if matches!(f.is_zero(img.at(r, c)), Ok(false)) {
                    return Err(KernelError::Invalid(format!(
                        "declared homology vector {c} in degree {i} is not a cycle"
                    )));
                }
            }
        }
    }

    let mut acc = f.one();
    for i in 0..=n {
        let d = cx.dim(i);
        let boundaries = pivot_cols[i + 1].len();
        let preimages = pivot_cols[i].len();
        let declared = h.count(i);
        if boundaries + declared + preimages != d {
            let visible = d as i64 - boundaries as i64 - preimages as i64;
            if declared == 0 {
                return Err(KernelError::NotAcyclic(format!(
                    "homology rank {visible} in degree {i} but no homology data given"
                )));
            }
            return Err(KernelError::Invalid(format!(
                "degree {i} declares {declared} homology vectors but row reduction sees rank {visible}"
            )));
        }
        if d == 0 {
            continue;
        }
        // Columns of the base change: boundary image vectors, then homology
        // vectors, then the standard basis vectors chosen as preimages.
        let mut t = SkewMatrix::zeros(f, d, d);
        let mut col = 0usize;
        if i < n {
            let img = cx.boundary(i + 1).expect("in range");
            for &c in &pivot_cols[i + 1] {
                for r in 0..d {
                    t.set(r, col, img.at(r, c).clone());
                }
                col += 1;
            }
        }
        if declared > 0 {
            let vecs = h.vectors(i).expect("counted");
            if vecs.nrows() != d {
                return Err(KernelError::Shape(format!(
                    "homology vectors in degree {i} have length {}, expected {d}",
                    vecs.nrows()
                )));
            }
            for c in 0..declared {
                for r in 0..d {
                    t.set(r, col, vecs.at(r, c).clone());
                }
                col += 1;
            }
        }
        for &c in &pivot_cols[i] {
            t.set(c, col, f.one());
            col += 1;
        }
        debug_assert_eq!(col, d);
        let det = dieudonne_det(f, &t, strategy).map_err(|e| match e {
            KernelError::SingularPivot { .. } => KernelError::Invalid(format!(
                "base change in degree {i} is singular: homology data inconsistent"
            )),
            other => other,
        })?;
        acc = if i % 2 == 0 {
            f.mul(&acc, &f.inv(&det.value)?)
        } else {
            f.mul(&acc, &det.value)
        };
    }
    Ok(acc)
}

/// Per-degree partition of the basis into a block mapping isomorphically
/// downwards and its complement; `lower[i]` lists the indices of the
/// mapping block inside degree `i`.
#[derive(Debug, Clone)]
pub struct SplitData {
    pub lower: Vec<Vec<usize>>,
}

/// Alternating product of projection determinants for an acyclic complex.
/// With the partition `C_i = C'_i ⊕ C''_i` (where `C'_i` is spanned by
/// `split.lower[i]`), the factor of degree `i` is the determinant of the
/// boundary restricted to `C'_i` followed by projection onto `C''_{i-1}`,
/// taken to the power `(-1)^i`.  When `split` is omitted a valid partition
/// is searched greedily from the top degree down.
pub fn torsion_turaev<F: SkewField>(
    f: &F,
    cx: &BasedChainComplex<F::Elem>,
    split: Option<&SplitData>,
    strategy: PivotStrategy,
) -> Result<F::Elem> {
    if cx.is_empty() {
        return Ok(f.one());
    }
    let n = cx.len() - 1;
    let lower: Vec<Vec<usize>> = match split {
        Some(s) => {
            if s.lower.len() != n + 1 {
                return Err(KernelError::Shape(format!(
                    "split must cover all {} degrees",
                    n + 1
                )));
            }
            for (i, idx) in s.lower.iter().enumerate() {
                let mut seen = vec![false; cx.dim(i)];
                for &c in idx {
                    if c >= cx.dim(i) || seen[c] {
                        return Err(KernelError::Invalid(format!(
                            "split indices in degree {i} must be distinct and in range"
                        )));
                    }
                    seen[c] = true;
                }
            }
            s.lower.clone()
        }
        None => greedy_split(f, cx, strategy)?,
    };

    let mut upper: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    for (i, low) in lower.iter().enumerate() {
        let mut in_low = vec![false; cx.dim(i)];
        for &c in low {
            in_low[c] = true;
        }
        upper.push((0..cx.dim(i)).filter(|&c| !in_low[c]).collect());
    }
    if !lower[0].is_empty() || upper.get(n).is_some_and(|u| !u.is_empty()) {
        return Err(KernelError::NotAcyclic(
            "split leaves unmatched basis vectors at the ends".into(),
        ));
    }

    let mut acc = f.one();
    for i in 1..=n {
        if lower[i].len() != upper[i - 1].len() {
            return Err(KernelError::Invalid(format!(
                "split block sizes disagree between degrees {i} and {}",
                i - 1
            )));
        }
        if lower[i].is_empty() {
            continue;
        }
        let rows: Vec<usize> = upper[i - 1].clone();
        let block = cx
            .boundary(i)
            .expect("in range")
            .submatrix(&rows, &lower[i]);
        let det = dieudonne_det(f, &block, strategy).map_err(|e| match e {
            KernelError::SingularPivot { .. } => KernelError::Invalid(format!(
                "projected boundary block in degree {i} is singular for this split"
            )),
            other => other,
        })?;
        acc = if i % 2 == 0 {
            f.mul(&acc, &det.value)
        } else {
            f.mul(&acc, &f.inv(&det.value)?)
        };
    }
    Ok(acc)
}

/// Top-down pivot search for a valid partition: start with the whole top
/// degree as the mapping block, pick an invertible row minor of its boundary
/// image, and let the complement of those rows be the next mapping block.
fn greedy_split<F: SkewField>(
    f: &F,
    cx: &BasedChainComplex<F::Elem>,
    strategy: PivotStrategy,
) -> Result<Vec<Vec<usize>>> {
    let n = cx.len() - 1;
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    lower[n] = (0..cx.dim(n)).collect();
    for i in (1..=n).rev() {
        let all_rows: Vec<usize> = (0..cx.dim(i - 1)).collect();
        let sub = cx
            .boundary(i)
            .expect("in range")
            .submatrix(&all_rows, &lower[i]);
        let pivots = echelon_pivots(f, &sub, None, strategy)?;
        if pivots.len() != lower[i].len() {
            return Err(KernelError::NotAcyclic(format!(
                "no projection split exists at degree {i} to the available precision"
            )));
        }
        let mut rows: Vec<usize> = pivots.into_iter().map(|(r, _)| r).collect();
        rows.sort_unstable();
        let mut is_row = vec![false; cx.dim(i - 1)];
        for &r in &rows {
            is_row[r] = true;
        }
        lower[i - 1] = (0..cx.dim(i - 1)).filter(|&r| !is_row[r]).collect();
    }
    Ok(lower)
}
