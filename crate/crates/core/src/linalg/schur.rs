//! Staged Schur elimination and the leading-minor comparison.
//!
//! Stage `m` of the elimination subtracts `b_{i,m} (b_{m,m})^{-1} b_{m,j}`
//! from every entry outside row `m`, clearing column `m` while leaving the
//! determinant alone (each stage adds left multiples of one row to the
//! others).  For matrices `I - A` with `A` of strictly positive valuation the
//! stage pivots are always units, and the surviving diagonal multiplies out
//! to the determinant.
//!
//! The minor comparison makes the elimination quantitative: when no cycle of
//! the transition graph of `A` returns to the first index within `k` steps,
//! deleting the first row and column does not change the determinant through
//! degree `k`.

use crate::error::{KernelError, Result};
use crate::laurent::TwistedLaurentSeries;

use super::det::{dieudonne_det, PivotStrategy};
use super::field::{SkewField, TwistedSeriesField};
use super::matrix::SkewMatrix;

/// Runs the first `stages` stages of the elimination.  After `n` stages on an
/// `n × n` matrix only the diagonal survives.
pub fn schur_eliminate<F: SkewField>(
    f: &F,
    b: &SkewMatrix<F::Elem>,
    stages: usize,
) -> Result<SkewMatrix<F::Elem>> {
    if !b.is_square() {
        return Err(KernelError::Shape(format!(
            "elimination needs a square matrix, got {}x{}",
            b.nrows(),
            b.ncols()
        )));
    }
    let n = b.nrows();
    if stages > n {
        return Err(KernelError::Invalid(format!(
            "{stages} stages requested on a {n}x{n} matrix"
        )));
    }
    let mut work = b.clone();
    for m in 0..stages {
        let pivot_inv = f
            .inv(work.at(m, m))
            .map_err(|_| KernelError::SingularPivot { stage: m })?;
        for i in 0..n {
            if i == m {
                continue;
            }
            let lead = work.at(i, m).clone();
            if f.is_zero(&lead).unwrap_or(false) {
                continue;
            }
            let factor = f.mul(&lead, &pivot_inv);
            for j in 0..n {
                let delta = f.mul(&factor, work.at(m, j));
                let updated = f.sub(work.at(i, j), &delta);
                work.set(i, j, updated);
            }
        }
    }
    Ok(work)
}

/// Adjacency of `A = I - B` after certifying every entry is a pure
/// degree-one term `c·t` (or zero).
fn linear_weights(b: &SkewMatrix<TwistedLaurentSeries>) -> Result<Vec<Vec<bool>>> {
    let n = b.nrows();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let entry = b.at(i, j);
            let mut a = entry.neg();
            if i == j {
                a = a.add(&TwistedLaurentSeries::one(entry.desc()));
            }
            if !a.is_exact() {
                return Err(KernelError::Invalid(format!(
                    "entry ({i}, {j}) is truncated; the check needs exact degree-one entries"
                )));
            }
            if a.is_zero_through_window() {
                continue;
            }
            if a.val() != 1 || a.support_end() != 2 {
                return Err(KernelError::Invalid(format!(
                    "entry ({i}, {j}) is not of the form c·t"
                )));
            }
            out[i][j] = true;
        }
    }
    Ok(out)
}

/// Shortest closed walk through index 0, as the node path `0 → … → 0`, or
/// `None` when no walk returns at all.
fn shortest_return(edges: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = edges.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    dist[0] = 0;
    queue.push_back(0);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if edges[u][v] && dist[v] == usize::MAX && v != 0 {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut best: Option<(usize, usize)> = None; // (length, closing node)
    for u in 0..n {
        if edges[u][0] && dist[u] != usize::MAX {
            let len = dist[u] + 1;
            if best.map_or(true, |(bl, _)| len < bl) {
                best = Some((len, u));
            }
        }
    }
    let (_, mut u) = best?;
    let mut path = vec![0];
    let mut tail = Vec::new();
    while u != 0 {
        tail.push(u);
        u = parent[u];
    }
    tail.reverse();
    path.extend(tail);
    path.push(0);
    Some(path)
}

/// Checks that deleting the first row and column of `B = I - A` does not
/// change the determinant through degree `k`, under the hypothesis that no
/// product `a_{1,i_1} a_{i_1,i_2} … a_{i_{j-1},1}` with `j ≤ k` is nonzero —
/// i.e. no cycle of the transition graph returns to the first index within
/// `k` steps.  A violated hypothesis is an error naming the offending cycle.
pub fn minor_equivalence_check(
    f: &TwistedSeriesField,
    b: &SkewMatrix<TwistedLaurentSeries>,
    k: i64,
) -> Result<bool> {
    if !b.is_square() {
        return Err(KernelError::Shape(format!(
            "minor comparison needs a square matrix, got {}x{}",
            b.nrows(),
            b.ncols()
        )));
    }
    let n = b.nrows();
    if n == 0 {
        return Ok(true);
    }
    let edges = linear_weights(b)?;
    if let Some(path) = shortest_return(&edges) {
        let len = path.len() - 1;
        if (len as i64) <= k {
            let rendered = path
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join("→");
            return Err(KernelError::HypothesisViolated(format!(
                "a cycle of length {len} returns to index 1: [{rendered}]"
            )));
        }
    }
    let full = dieudonne_det(f, b, PivotStrategy::MinValuation)?.value;
    let kept: Vec<usize> = (1..n).collect();
    let minor = b.submatrix(&kept, &kept);
    let small = dieudonne_det(f, &minor, PivotStrategy::MinValuation)?.value;
    full.compare_truncated(&small, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};

    use crate::algebra::RationalFunction;
    use crate::group::GroupDescriptor;

    fn series_of(desc: &GroupDescriptor, c: i64, degree: i64) -> TwistedLaurentSeries {
        TwistedLaurentSeries::coeff_at(desc, RationalFunction::from_int(1, c), degree)
    }

    fn one_minus(desc: &GroupDescriptor, weights: &[Vec<i64>]) -> SkewMatrix<TwistedLaurentSeries> {
        let n = weights.len();
        SkewMatrix::from_fn(n, n, |i, j| {
            let mut out = series_of(desc, -weights[i][j], 1);
            if i == j {
                out = out.add(&TwistedLaurentSeries::one(desc));
            }
            out
        })
    }

    #[test]
    fn identity_passes_through_unchanged() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 8);
        let b: SkewMatrix<TwistedLaurentSeries> = SkewMatrix::identity(&f, 3);
        let out = schur_eliminate(&f, &b, 3).unwrap();
        assert_eq!(out, b);
    }

    #[test]
    fn nilpotent_coupling_reduces_to_a_unit_diagonal() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 8);
        let b = one_minus(&g, &[vec![0, 2, -3], vec![0, 0, 5], vec![0, 0, 0]]);
        let out = schur_eliminate(&f, &b, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert!(out.at(i, j).sub(&TwistedLaurentSeries::one(&g)).is_zero_through_window());
                } else {
                    assert!(out.at(i, j).is_zero_through_window(), "entry ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn elimination_stages_preserve_the_determinant() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 9);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let weights: Vec<Vec<i64>> =
                (0..3).map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let b = one_minus(&g, &weights);
            let reference = dieudonne_det(&f, &b, PivotStrategy::MinValuation).unwrap().value;
            for stages in 1..=2usize {
                // after stage m the determinant splits as the cleared pivots
                // times the determinant of the untouched trailing block
                let reduced = schur_eliminate(&f, &b, stages).unwrap();
                let mut value = TwistedLaurentSeries::one(&g);
                for i in 0..stages {
                    value = value.mul(reduced.at(i, i));
                }
                let kept: Vec<usize> = (stages..3).collect();
                let trailing = reduced.submatrix(&kept, &kept);
                let tail = dieudonne_det(&f, &trailing, PivotStrategy::MinValuation)
                    .unwrap()
                    .value;
                assert!(
                    reference.compare_truncated(&value.mul(&tail), 7).unwrap(),
                    "{stages} stages"
                );
            }
            let full = schur_eliminate(&f, &b, 3).unwrap();
            let mut diagonal = TwistedLaurentSeries::one(&g);
            for i in 0..3 {
                diagonal = diagonal.mul(full.at(i, i));
            }
            assert!(reference.compare_truncated(&diagonal, 7).unwrap());
        }
    }

    #[test]
    fn singular_stage_pivots_are_reported() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 8);
        let mut b = one_minus(&g, &[vec![0, 1], vec![1, 0]]);
        b.set(0, 0, TwistedLaurentSeries::zero(&g));
        assert!(matches!(
            schur_eliminate(&f, &b, 2),
            Err(KernelError::SingularPivot { stage: 0 })
        ));
    }

    #[test]
    fn empty_first_column_matches_at_all_degrees() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 10);
        let b = one_minus(&g, &[vec![0, 2], vec![0, 3]]);
        assert!(minor_equivalence_check(&f, &b, 9).unwrap());
    }

    #[test]
    fn short_coupling_agrees_below_the_return_degree() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 8);
        // det = 1 - c d t^2 against the 1x1 minor's 1 - 0: equal through degree 1
        let b = one_minus(&g, &[vec![0, 2], vec![3, 0]]);
        assert!(minor_equivalence_check(&f, &b, 1).unwrap());
    }

    #[test]
    fn returning_paths_violate_the_hypothesis() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 8);
        let b = one_minus(&g, &[vec![0, 2], vec![3, 0]]);
        let err = minor_equivalence_check(&f, &b, 2).unwrap_err();
        assert!(err.to_string().contains("[1→2→1]"), "{err}");

        let loop_back = one_minus(&g, &[vec![1]]);
        let err = minor_equivalence_check(&f, &loop_back, 1).unwrap_err();
        assert!(err.to_string().contains("[1→1]"), "{err}");
    }

    #[test]
    fn three_step_detours_are_reported_with_their_cycle() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 8);
        let b = one_minus(&g, &[vec![0, 2, 0], vec![0, 0, 5], vec![7, 0, 0]]);
        assert!(minor_equivalence_check(&f, &b, 2).unwrap());
        let err = minor_equivalence_check(&f, &b, 3).unwrap_err();
        assert!(err.to_string().contains("[1→2→3→1]"), "{err}");
    }

    #[test]
    fn quadratic_entries_are_rejected() {
        let g = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(g.clone(), 8);
        let mut b = one_minus(&g, &[vec![0, 1], vec![0, 0]]);
        b.set(1, 0, series_of(&g, -4, 2).neg());
        let err = minor_equivalence_check(&f, &b, 1).unwrap_err();
        assert!(err.to_string().contains("not of the form"), "{err}");
    }

    #[test]
    fn chained_couplings_always_pass_below_their_girth() {
        // chain 0 → 1 → … → n-1 → 0 plus random backward edges: every cycle
        // through index 0 needs at least n steps, so k = n - 1 is safe
        let g = GroupDescriptor::monomial_extension(
            crate::algebra::MonomialAutomorphism::new(vec![vec![-1]]).unwrap(),
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for trial in 0..30 {
            let n = rng.gen_range(3..=6);
            let f = TwistedSeriesField::new(g.clone(), n + 3);
            let mut weights = vec![vec![0i64; n]; n];
            for i in 0..n - 1 {
                weights[i][i + 1] = rng.gen_range(1..=4);
            }
            weights[n - 1][0] = rng.gen_range(1..=4);
            for i in 1..n {
                for j in 1..=i {
                    if rng.gen_bool(0.4) {
                        weights[i][j] = rng.gen_range(-3..=3);
                    }
                }
            }
            let mut b = one_minus(&g, &weights);
            // sprinkle lattice monomials into a few coefficients
            for i in 1..n {
                if rng.gen_bool(0.5) && weights[i][i] == 0 {
                    let c = RationalFunction::monomial(vec![1], BigRational::from_integer(2.into()));
                    b.set(i, i, TwistedLaurentSeries::one(&g)
                        .sub(&TwistedLaurentSeries::coeff_at(&g, c, 1)));
                }
            }
            let verdict = minor_equivalence_check(&f, &b, (n - 1) as i64);
            assert!(matches!(verdict, Ok(true)), "trial {trial}: {verdict:?}");
        }
    }
}
