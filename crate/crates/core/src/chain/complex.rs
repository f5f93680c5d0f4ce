//! Based chain complexes of free modules over a skew field.
//!
//! A complex is the list of its boundary matrices `∂_i : C_i -> C_{i-1}`
//! together with the per-degree ranks; every basis is the standard one of the
//! matrix coordinates, so "based" means the matrices *are* the data.
//! Validation checks composability, `∂∂ = 0` (to the precision the entries
//! carry), and reports homology ranks obtained by row reduction.

use serde::Serialize;

use crate::error::{KernelError, Result};
use crate::linalg::{echelon_pivots, PivotStrategy, SkewField, SkewMatrix};

/// A finite complex `C_n -> ... -> C_0`.  `boundary(i)` acts on coordinate
/// columns, so the composability condition reads `∂_{i-1} ∂_i = 0`.
#[derive(Debug, Clone)]
pub struct BasedChainComplex<T> {
    dims: Vec<usize>,
    /// `diffs[k]` is the matrix of `∂_{k+1} : C_{k+1} -> C_k`.
    diffs: Vec<SkewMatrix<T>>,
    labels: Vec<Vec<String>>,
}

impl<T: Clone> BasedChainComplex<T> {
    /// Builds a complex from per-degree ranks `dims[0..=n]` and boundary
    /// matrices listed bottom-up: `diffs[k]` must have shape
    /// `dims[k] × dims[k+1]`.
    pub fn new(dims: Vec<usize>, diffs: Vec<SkewMatrix<T>>) -> Result<Self> {
        if !dims.is_empty() && diffs.len() + 1 != dims.len() {
            return Err(KernelError::Shape(format!(
                "{} degrees need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        if dims.is_empty() && !diffs.is_empty() {
            return Err(KernelError::Shape("boundaries without degrees".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.nrows() != dims[k] || d.ncols() != dims[k + 1] {
                return Err(KernelError::Shape(format!(
                    "boundary into degree {k} has shape {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        let labels = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| (0..d).map(|j| format!("c{i}_{j}")).collect())
            .collect();
        Ok(BasedChainComplex { dims, diffs, labels })
    }

    /// Replaces the generated basis labels in one degree.
    pub fn set_labels(&mut self, degree: usize, labels: Vec<String>) -> Result<()> {
        if degree >= self.dims.len() || labels.len() != self.dims[degree] {
            return Err(KernelError::Shape(format!(
                "labels for degree {degree} must match its rank"
            )));
        }
        self.labels[degree] = labels;
        Ok(())
    }

    /// Number of degrees (so the top degree is `len() - 1`); an empty complex
    /// has length 0.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Rank of `C_i`, with degrees outside the stored range counting 0.
    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn labels(&self, i: usize) -> &[String] {
        &self.labels[i]
    }

    /// The matrix of `∂_i` for `1 <= i <= len() - 1`.
    pub fn boundary(&self, i: usize) -> Option<&SkewMatrix<T>> {
        if i == 0 {
            return None;
        }
        self.diffs.get(i - 1)
    }
}

/// Validation outcome: ranks of the boundary maps and of homology as visible
/// at the working precision.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexReport {
    pub dims: Vec<usize>,
    /// `boundary_ranks[k]` is the rank of the map into degree `k`.
    pub boundary_ranks: Vec<usize>,
    pub homology_ranks: Vec<usize>,
    pub acyclic: bool,
}

impl<T: Clone> BasedChainComplex<T> {
    /// Checks `∂∂ = 0` (entries that are zero through their precision window
    /// pass) and computes boundary and homology ranks by row reduction.
    pub fn validate<F>(&self, f: &F) -> Result<ComplexReport>
    where
        F: SkewField<Elem = T>,
    {
        let n = self.dims.len();
        for i in 2..n {
            let prod = self.diffs[i - 2].mul(f, &self.diffs[i - 1])?;
            for r in 0..prod.nrows() {
                for c in 0..prod.ncols() {
                    if matches!(f.is_zero(prod.at(r, c)), Ok(false)) {
                        return Err(KernelError::Invalid(format!(
                            "boundary does not square to zero: degree {i} composed into degree {}, entry ({r}, {c}) = {}",
                            i - 2,
                            f.render(prod.at(r, c))
                        )));
                    }
                }
            }
        }
        let mut boundary_ranks = Vec::with_capacity(self.diffs.len());
        for d in &self.diffs {
            let pivots = echelon_pivots(f, d, None, PivotStrategy::MinValuation)?;
            boundary_ranks.push(pivots.len());
        }
        let rank_into = |i: usize| -> usize {
            // rank of the boundary map landing in degree i (i.e. ∂_{i+1})
            boundary_ranks.get(i).copied().unwrap_or(0)
        };
        let mut homology_ranks = Vec::with_capacity(n);
        for i in 0..n {
            let r_out = if i == 0 { 0 } else { rank_into(i - 1) };
            let h = self.dims[i].saturating_sub(r_out + rank_into(i));
            homology_ranks.push(h);
        }
        let acyclic = homology_ranks.iter().all(|&h| h == 0);
        Ok(ComplexReport {
            dims: self.dims.clone(),
            boundary_ranks,
            homology_ranks,
            acyclic,
        })
    }
}

/// Declared homology data: one column matrix of cycle vectors per degree.
/// An empty matrix (zero columns) declares that degree acyclic.
#[derive(Debug, Clone)]
pub struct HomologyBasis<T> {
    vectors: Vec<SkewMatrix<T>>,
}

impl<T: Clone> HomologyBasis<T> {
    /// Homology data asserting acyclicity of a complex with the given
    /// per-degree ranks.
    pub fn empty<F>(f: &F, dims: &[usize]) -> Self
    where
        F: SkewField<Elem = T>,
    {
        HomologyBasis {
            vectors: dims.iter().map(|&d| SkewMatrix::zeros(f, d, 0)).collect(),
        }
    }

    pub fn new(vectors: Vec<SkewMatrix<T>>) -> Self {
        HomologyBasis { vectors }
    }

    pub fn count(&self, degree: usize) -> usize {
        self.vectors.get(degree).map_or(0, |m| m.ncols())
    }

    pub fn vectors(&self, degree: usize) -> Option<&SkewMatrix<T>> {
        self.vectors.get(degree)
    }

    pub fn vectors_mut(&mut self, degree: usize) -> Option<&mut SkewMatrix<T>> {
        self.vectors.get_mut(degree)
    }

    /// Number of degrees covered by the declared data.
    pub fn degrees(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.vectors.iter().all(|m| m.ncols() == 0)
    }
}
