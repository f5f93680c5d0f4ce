//! Determinants over a skew field by row reduction.
//!
//! For a square matrix over a (possibly non-commutative) field, row
//! reduction with left row operations brings the matrix to upper
//! triangular form.  The product of the diagonal pivots, taken in
//! ascending row order and multiplied by the sign of the row
//! permutation, is well defined up to commutators of units, so it lands
//! in the abelianised unit group.  Over a commutative field it is the
//! usual determinant on the nose.

use serde::Serialize;

use crate::error::{KernelError, Result};

use super::field::SkewField;
use super::matrix::SkewMatrix;

/// How to pick a pivot row inside the current column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PivotStrategy {
    /// Among the candidate rows, pick one whose entry has minimal
    /// weight as reported by the field (series valuation); ties go to
    /// the earliest row.  Over an exact commutative field every nonzero
    /// entry has weight 0, so this degenerates to `FirstNonzero`.
    MinValuation,
    /// Pick the first row with a nonzero entry.
    FirstNonzero,
}

/// One pivot choice made during the reduction, for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct PivotRecord {
    pub column: usize,
    pub row: usize,
    pub weight: Option<i64>,
    pub pivot: String,
}

/// Result of a determinant computation: the value (abelianised), the
/// sign of the row permutation that was folded into it, and the pivot
/// log.
#[derive(Debug, Clone)]
pub struct DetOutput<T> {
    pub value: T,
    pub swap_sign: i64,
    pub pivots: Vec<PivotRecord>,
}

/// Row reduction determinant.  Returns an error if the matrix is not
/// square, if it is singular (`SingularPivot`), or if a zero test on a
/// truncated series entry cannot be decided at the working precision.
pub fn dieudonne_det<F: SkewField>(
    f: &F,
    m: &SkewMatrix<F::Elem>,
    strategy: PivotStrategy,
) -> Result<DetOutput<F::Elem>> {
    if !m.is_square() {
        return Err(KernelError::Shape(format!(
            "determinant of a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    let mut work = m.clone();
    let mut swap_sign = 1i64;
    let mut pivots = Vec::with_capacity(n);

    for col in 0..n {
        let pivot_row = choose_pivot(f, &work, col, col, strategy)?
            .ok_or(KernelError::SingularPivot { stage: col })?;
        if pivot_row != col {
            work.swap_rows(col, pivot_row);
            swap_sign = -swap_sign;
        }
        let pivot = work.at(col, col).clone();
        pivots.push(PivotRecord {
            column: col,
            row: pivot_row,
            weight: f.pivot_weight(&pivot),
            pivot: f.render(&pivot),
        });
        let pivot_inv = f.inv(&pivot)?;
        for i in col + 1..n {
            let entry = work.at(i, col).clone();
            if f.is_zero(&entry).unwrap_or(false) {
                continue;
            }
            // row_i <- row_i - (entry * pivot^{-1}) * row_col
            let factor = f.mul(&entry, &pivot_inv);
            for j in col..n {
                let delta = f.mul(&factor, work.at(col, j));
                let updated = f.sub(work.at(i, j), &delta);
                work.set(i, j, updated);
            }
        }
    }

    // Diagonal product in ascending row order, with the permutation
    // sign folded in on the left.
    let mut value = f.one();
    for i in 0..n {
        value = f.mul(&value, work.at(i, i));
    }
    if swap_sign < 0 {
        value = f.neg(&value);
    }
    Ok(DetOutput { value, swap_sign, pivots })
}

fn choose_pivot<F: SkewField>(
    f: &F,
    m: &SkewMatrix<F::Elem>,
    col: usize,
    from_row: usize,
    strategy: PivotStrategy,
) -> Result<Option<usize>> {
    let mut best: Option<(i64, usize)> = None;
    for i in from_row..m.nrows() {
        let entry = m.at(i, col);
        if f.is_zero(entry)? {
            continue;
        }
        match strategy {
            PivotStrategy::FirstNonzero => return Ok(Some(i)),
            PivotStrategy::MinValuation => {
                let w = f.pivot_weight(entry).unwrap_or(0);
                match best {
                    Some((bw, _)) if bw <= w => {}
                    _ => best = Some((w, i)),
                }
            }
        }
    }
    Ok(best.map(|(_, i)| i))
}

/// Full Gauss–Jordan pass over `work`, restricted to pivot searches in
/// the listed columns but eliminating across the whole width (so the
/// matrix may carry an augmented part).  Pivot rows are normalised to 1
/// by a left multiplication.  Returns the pivots as `(row, column)`
/// pairs in visit order.
///
/// Entries whose zero test cannot be decided at the working precision
/// are never chosen as pivots and never eliminated, so on truncated
/// series the result reflects what is visible through the window.
fn gauss_jordan<F: SkewField>(
    f: &F,
    work: &mut SkewMatrix<F::Elem>,
    columns: &[usize],
    strategy: PivotStrategy,
) -> Result<Vec<(usize, usize)>> {
    let width = work.ncols();
    let mut used = vec![false; work.nrows()];
    let mut pivots = Vec::new();
    for &col in columns {
        if col >= width {
            return Err(KernelError::Shape(format!(
                "pivot column {col} out of range for width {width}"
            )));
        }
        let mut best: Option<(i64, usize)> = None;
        for i in 0..work.nrows() {
            if used[i] {
                continue;
            }
            let entry = work.at(i, col);
            if !matches!(f.is_zero(entry), Ok(false)) {
                continue;
            }
            match strategy {
                PivotStrategy::FirstNonzero => {
                    best = Some((0, i));
                    break;
                }
                PivotStrategy::MinValuation => {
                    let w = f.pivot_weight(entry).unwrap_or(0);
                    match best {
                        Some((bw, _)) if bw <= w => {}
                        _ => best = Some((w, i)),
                    }
                }
            }
        }
        let Some((_, r)) = best else { continue };
        used[r] = true;
        pivots.push((r, col));
        let pivot_inv = f.inv(work.at(r, col))?;
        for j in 0..width {
            let v = f.mul(&pivot_inv, work.at(r, j));
            work.set(r, j, v);
        }
        for i in 0..work.nrows() {
            if i == r {
                continue;
            }
            let factor = work.at(i, col).clone();
            if !matches!(f.is_zero(&factor), Ok(false)) {
                continue;
            }
            for j in 0..width {
                let delta = f.mul(&factor, work.at(r, j));
                let updated = f.sub(work.at(i, j), &delta);
                work.set(i, j, updated);
            }
        }
    }
    Ok(pivots)
}

/// Ranks a rectangular matrix by Gauss–Jordan reduction, visiting the
/// columns in `col_order` (the natural order when `None`).  Each column
/// that is independent of the previously visited ones contributes one
/// pivot `(row, column)`.  The set of pivot columns is the greedy basis
/// of the column space in the given scan order, and the set of pivot
/// rows selects an invertible minor when the matrix has full column
/// rank.
pub fn echelon_pivots<F: SkewField>(
    f: &F,
    m: &SkewMatrix<F::Elem>,
    col_order: Option<&[usize]>,
    strategy: PivotStrategy,
) -> Result<Vec<(usize, usize)>> {
    let natural: Vec<usize>;
    let columns = match col_order {
        Some(order) => order,
        None => {
            natural = (0..m.ncols()).collect();
            &natural
        }
    };
    let mut work = m.clone();
    gauss_jordan(f, &mut work, columns, strategy)
}

/// Solves `A X = B` for a rectangular `A` by reducing `[A | B]`.  Free
/// variables are set to zero, so the result is one particular solution;
/// returns `Ok(None)` when the system has a certifiably nonzero residue
/// and therefore no solution.
pub fn solve_in_span<F: SkewField>(
    f: &F,
    a: &SkewMatrix<F::Elem>,
    b: &SkewMatrix<F::Elem>,
) -> Result<Option<SkewMatrix<F::Elem>>> {
    if a.nrows() != b.nrows() {
        return Err(KernelError::Shape("solve_in_span row mismatch".into()));
    }
    let n = a.ncols();
    let k = b.ncols();
    let mut work = a.hstack(b)?;
    let columns: Vec<usize> = (0..n).collect();
    let pivots = gauss_jordan(f, &mut work, &columns, PivotStrategy::MinValuation)?;
    let pivot_rows: Vec<usize> = pivots.iter().map(|&(r, _)| r).collect();
    for i in 0..work.nrows() {
        if pivot_rows.contains(&i) {
            continue;
        }
        for j in n..n + k {
            if matches!(f.is_zero(work.at(i, j)), Ok(false)) {
                return Ok(None);
            }
        }
    }
    let mut x = SkewMatrix::zeros(f, n, k);
    for &(r, c) in &pivots {
        for j in 0..k {
            x.set(c, j, work.at(r, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// Solves `A X = B` for `X` by row-reducing the augmented matrix
/// `[A | B]`; `A` must be square and invertible.
pub fn solve_left<F: SkewField>(
    f: &F,
    a: &SkewMatrix<F::Elem>,
    b: &SkewMatrix<F::Elem>,
) -> Result<SkewMatrix<F::Elem>> {
    if !a.is_square() {
        return Err(KernelError::Shape("solve_left needs a square matrix".into()));
    }
    if a.nrows() != b.nrows() {
        return Err(KernelError::Shape("solve_left row mismatch".into()));
    }
    let n = a.nrows();
    let k = b.ncols();
    let mut work = a.hstack(b)?;

    // Forward elimination.
    for col in 0..n {
        let pivot_row = choose_pivot(f, &work, col, col, PivotStrategy::MinValuation)?
            .ok_or(KernelError::SingularPivot { stage: col })?;
        work.swap_rows(col, pivot_row);
        let pivot_inv = f.inv(work.at(col, col))?;
        // Normalise the pivot row so the pivot becomes 1.
        for j in col..n + k {
            let v = f.mul(&pivot_inv, work.at(col, j));
            work.set(col, j, v);
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let factor = work.at(i, col).clone();
            if f.is_zero(&factor).unwrap_or(false) {
                continue;
            }
            for j in col..n + k {
                let delta = f.mul(&factor, work.at(col, j));
                let updated = f.sub(work.at(i, j), &delta);
                work.set(i, j, updated);
            }
        }
    }

    let cols: Vec<usize> = (n..n + k).collect();
    let rows: Vec<usize> = (0..n).collect();
    Ok(work.submatrix(&rows, &cols))
}

/// Schur complement of the top-left `r x r` block: for
/// `M = [A B; C D]` with `A` invertible, returns `D - C A^{-1} B`.
pub fn schur_complement<F: SkewField>(
    f: &F,
    m: &SkewMatrix<F::Elem>,
    r: usize,
) -> Result<SkewMatrix<F::Elem>> {
    if !m.is_square() || r > m.nrows() {
        return Err(KernelError::Shape("schur_complement block out of range".into()));
    }
    let n = m.nrows();
    let top: Vec<usize> = (0..r).collect();
    let bottom: Vec<usize> = (r..n).collect();
    let a = m.submatrix(&top, &top);
    let b = m.submatrix(&top, &bottom);
    let c = m.submatrix(&bottom, &top);
    let d = m.submatrix(&bottom, &bottom);
    let ainv_b = solve_left(f, &a, &b)?;
    let c_ainv_b = c.mul(f, &ainv_b)?;
    d.sub(f, &c_ainv_b)
}
