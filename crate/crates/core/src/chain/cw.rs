//! Cell data over the group ring: chosen lifts of cells give boundary
//! matrices with group-ring entries, and tensoring with the completed
//! coefficient field turns them into a based complex whose torsion is the
//! invariant of interest.  The value is defined up to a sign and a group
//! monomial, reflecting the freedom in the chosen lifts.

use crate::error::{KernelError, Result};
use crate::group::{GroupDescriptor, GroupElement, GroupRingElement};
use crate::laurent::rho_embed_ring;
use crate::linalg::{RatFunField, SkewMatrix, TorsionValue, TwistedSeriesField};

use super::complex::{BasedChainComplex, HomologyBasis};
use super::torsion::{torsion_milnor, MilnorOptions};

/// Cells per dimension with boundary matrices over the group ring.
/// `boundaries[k]` maps the cells of dimension `k + 1` to those of
/// dimension `k`; the identity of the group ring corresponds to the chosen
/// lift of each cell.
#[derive(Debug, Clone)]
pub struct CwDatum {
    desc: GroupDescriptor,
    cells: Vec<Vec<String>>,
    boundaries: Vec<SkewMatrix<GroupRingElement>>,
}

fn ring_matrix_mul(
    a: &SkewMatrix<GroupRingElement>,
    b: &SkewMatrix<GroupRingElement>,
    desc: &GroupDescriptor,
) -> SkewMatrix<GroupRingElement> {
    SkewMatrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        let mut acc = GroupRingElement::zero(desc);
        for k in 0..a.ncols() {
            acc = acc.add(&a.at(i, k).mul(b.at(k, j)));
        }
        acc
    })
}

impl CwDatum {
    pub fn new(
        desc: GroupDescriptor,
        cells: Vec<Vec<String>>,
        boundaries: Vec<SkewMatrix<GroupRingElement>>,
    ) -> Result<Self> {
        if !cells.is_empty() && boundaries.len() + 1 != cells.len() {
            return Err(KernelError::Shape(format!(
                "{} cell dimensions need {} boundary matrices, got {}",
                cells.len(),
                cells.len() - 1,
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.nrows() != cells[k].len() || b.ncols() != cells[k + 1].len() {
                return Err(KernelError::Shape(format!(
                    "boundary into dimension {k} has shape {}x{}, expected {}x{}",
                    b.nrows(),
                    b.ncols(),
                    cells[k].len(),
                    cells[k + 1].len()
                )));
            }
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    if b.at(i, j).desc() != &desc {
                        return Err(KernelError::Invalid(format!(
                            "boundary entry ({i}, {j}) into dimension {k} uses a different group"
                        )));
                    }
                }
            }
        }
        for k in 1..boundaries.len() {
            let sq = ring_matrix_mul(&boundaries[k - 1], &boundaries[k], &desc);
            for i in 0..sq.nrows() {
                for j in 0..sq.ncols() {
                    if !sq.at(i, j).is_zero() {
                        return Err(KernelError::Invalid(format!(
                            "cell boundary does not square to zero: dimensions {} -> {}, entry ({i}, {j}) = {}",
                            k + 1,
                            k - 1,
                            sq.at(i, j).render()
                        )));
                    }
                }
            }
        }
        Ok(CwDatum { desc, cells, boundaries })
    }

    /// Convenience constructor with generated cell labels.
    pub fn from_counts(
        desc: GroupDescriptor,
        counts: &[usize],
        boundaries: Vec<SkewMatrix<GroupRingElement>>,
    ) -> Result<Self> {
        let cells = counts
            .iter()
            .enumerate()
            .map(|(d, &c)| (0..c).map(|j| format!("e{d}_{j}")).collect())
            .collect();
        Self::new(desc, cells, boundaries)
    }

    pub fn desc(&self) -> &GroupDescriptor {
        &self.desc
    }

    pub fn cells(&self) -> &[Vec<String>] {
        &self.cells
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn boundary(&self, dim: usize) -> Option<&SkewMatrix<GroupRingElement>> {
        if dim == 0 {
            return None;
        }
        self.boundaries.get(dim - 1)
    }

    /// Replaces the chosen lift of one cell by its `gamma`-translate: the
    /// boundary column of the cell is multiplied by `gamma` on the left and
    /// the boundary row by its inverse on the right.  The torsion changes at
    /// most by a unit of the group ring, which the comparison ambiguity
    /// absorbs.
    pub fn relift(&self, dim: usize, cell: usize, gamma: &GroupElement) -> Result<CwDatum> {
        if dim >= self.cells.len() || cell >= self.cells[dim].len() {
            return Err(KernelError::Shape(format!(
                "no cell {cell} in dimension {dim}"
            )));
        }
        let g = GroupRingElement::from_group_element(
            &self.desc,
            gamma,
            num_rational::BigRational::from_integer(1.into()),
        );
        let ginv = GroupRingElement::from_group_element(
            &self.desc,
            &gamma.inv(&self.desc),
            num_rational::BigRational::from_integer(1.into()),
        );
        let mut boundaries = self.boundaries.clone();
        if dim >= 1 {
            let b = &mut boundaries[dim - 1];
            for r in 0..b.nrows() {
                let v = g.mul(b.at(r, cell));
                b.set(r, cell, v);
            }
        }
        if dim < self.boundaries.len() {
            let b = &mut boundaries[dim];
            for c in 0..b.ncols() {
                let v = b.at(cell, c).mul(&ginv);
                b.set(cell, c, v);
            }
        }
        CwDatum::new(self.desc.clone(), self.cells.clone(), boundaries)
    }

    /// Tensors with the twisted series field (precision `precision`),
    /// producing the based complex of the cell data.
    pub fn to_series_complex(
        &self,
        precision: usize,
    ) -> Result<(TwistedSeriesField, BasedChainComplex<crate::laurent::TwistedLaurentSeries>)>
    {
        let f = TwistedSeriesField::new(self.desc.clone(), precision);
        let dims = self.counts();
        let diffs = self
            .boundaries
            .iter()
            .map(|b| b.map(rho_embed_ring))
            .collect();
        let mut cx = BasedChainComplex::new(dims, diffs)?;
        for (d, labels) in self.cells.iter().enumerate() {
            cx.set_labels(d, labels.clone())?;
        }
        Ok((f, cx))
    }

    /// For a degenerate group (trivial degree character) the coefficients
    /// stay in the rational function field; the complex is taken there.
    pub fn to_rational_complex(
        &self,
    ) -> Result<(RatFunField, BasedChainComplex<crate::algebra::RationalFunction>)> {
        let nvars = self.desc.nvars();
        let f = RatFunField { nvars };
        let diffs = self
            .boundaries
            .iter()
            .map(|b| {
                b.map(|e| crate::algebra::RationalFunction::from_poly(e.slice(0)))
            })
            .collect();
        let mut cx = BasedChainComplex::new(self.counts(), diffs)?;
        for (d, labels) in self.cells.iter().enumerate() {
            cx.set_labels(d, labels.clone())?;
        }
        Ok((f, cx))
    }
}

/// Torsion of the cell data over the completed coefficient field, through
/// series degree `k`.  Fails with the homology ranks when the twisted
/// complex is not acyclic.  Over a degenerate group the value is a rational
/// function instead of a series.
pub fn reidemeister_torsion(x: &CwDatum, k: i64) -> Result<TorsionValue> {
    if k < 1 {
        return Err(KernelError::Invalid("precision must be at least 1".into()));
    }
    if x.desc().is_degenerate() {
        let (f, cx) = x.to_rational_complex()?;
        let rep = cx.validate(&f)?;
        if !rep.acyclic {
            return Err(KernelError::NotAcyclic(format!(
                "homology ranks {:?}",
                rep.homology_ranks
            )));
        }
        let h = HomologyBasis::empty(&f, cx.dims());
        let tau = torsion_milnor(&f, &cx, &h, &MilnorOptions::default())?;
        return Ok(TorsionValue::Rational(tau));
    }
    let (f, cx) = x.to_series_complex(k as usize + 2)?;
    let rep = cx.validate(&f)?;
    if !rep.acyclic {
        return Err(KernelError::NotAcyclic(format!(
            "homology ranks {:?}",
            rep.homology_ranks
        )));
    }
    let h = HomologyBasis::empty(&f, cx.dims());
    let tau = torsion_milnor(&f, &cx, &h, &MilnorOptions::default())?;
    Ok(TorsionValue::Series(tau))
}
