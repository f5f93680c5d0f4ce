//! Block chain models for circle-valued Morse functions.
//!
//! A model records, degree by degree, the critical points of a circle-valued
//! Morse function together with the cells of a regular level `Σ`, over the
//! group ring of the deck group.  Cutting along `Σ` and regluing produces a
//! based chain complex whose pieces are the critical-point incidences, the
//! level boundary, and the monomial return map `φ`; `assemble_differential`
//! carries that construction out and checks that the result is a complex.

use crate::chain::BasedChainComplex;
use crate::error::{KernelError, Result};
use crate::group::{GroupDescriptor, GroupRingElement};
use crate::laurent::{rho_embed_ring, TwistedLaurentSeries};
use crate::linalg::SkewMatrix;

/// Chain-level data of a circle-valued Morse function, relative to a regular
/// level `Σ`.
///
/// Morse degrees run `0 ..= L-1` where `L` is the common length of the count
/// vectors.  In degree `i` the model holds `d_i` critical points (basis of
/// `D_i`) and `e_i` level cells (basis of `E_i`); the reglued complex also
/// carries one thickened cell `σ × I` per level cell (`F_i`, a copy of
/// `E_{i-1}`).
#[derive(Debug, Clone)]
pub struct CircleMorseModel {
    desc: GroupDescriptor,
    d: Vec<usize>,
    e: Vec<usize>,
    /// `n[j]`: critical incidences `D_{j+1} -> D_j`.
    n: Vec<SkewMatrix<GroupRingElement>>,
    /// `m[j]`: incidences from critical points into the level, `D_{j+1} -> E_j`.
    m: Vec<SkewMatrix<GroupRingElement>>,
    /// `w[j]`: incidences from thickened cells onto critical points, `E_j -> D_j`.
    w: Vec<SkewMatrix<GroupRingElement>>,
    /// `phi[j]`: monomial return map on level cells, `E_j -> E_j`.
    phi: Vec<SkewMatrix<GroupRingElement>>,
    /// `del_sigma[j]`: level boundary `E_{j+1} -> E_j`.
    del_sigma: Vec<SkewMatrix<GroupRingElement>>,
}

fn check_shape(
    mat: &SkewMatrix<GroupRingElement>,
    rows: usize,
    cols: usize,
    name: &str,
) -> Result<()> {
    if mat.nrows() != rows || mat.ncols() != cols {
        return Err(KernelError::Shape(format!(
            "{name} must be {rows}x{cols}, got {}x{}",
            mat.nrows(),
            mat.ncols()
        )));
    }
    Ok(())
}

/// Every term of an incidence entry must sit at level degree `>= 0`: flow
/// lines never climb above the level they start from.
fn check_incidence_entry(
    desc: &GroupDescriptor,
    name: &str,
    r: usize,
    c: usize,
    entry: &GroupRingElement,
) -> Result<()> {
    for (shift, _) in entry.slices() {
        let alpha = shift * desc.alpha_scale();
        if alpha < 0 {
            return Err(KernelError::Invalid(format!(
                "entry ({r}, {c}) of {name} has a term of degree {alpha}; \
                 incidences must not have negative degree"
            )));
        }
    }
    Ok(())
}

/// Return-map entries are single group monomials of strictly positive degree:
/// the flow must push the level forward before it can return.
fn check_return_entry(
    desc: &GroupDescriptor,
    j: usize,
    r: usize,
    c: usize,
    entry: &GroupRingElement,
) -> Result<()> {
    if entry.is_zero() {
        return Ok(());
    }
    if desc.is_degenerate() {
        return Err(KernelError::Invalid(format!(
            "return map phi_{j} must vanish when the degree character is zero, \
             but entry ({r}, {c}) is nonzero"
        )));
    }
    let mut terms = 0usize;
    let mut seen_shift = 0i64;
    for (shift, poly) in entry.slices() {
        for _ in poly.terms() {
            terms += 1;
            seen_shift = *shift;
        }
    }
    if terms != 1 {
        return Err(KernelError::Invalid(format!(
            "entry ({r}, {c}) of return map phi_{j} must be a monomial ({terms} terms)"
        )));
    }
    let alpha = seen_shift * desc.alpha_scale();
    if alpha < 1 {
        return Err(KernelError::Invalid(format!(
            "entry ({r}, {c}) of return map phi_{j} has degree {alpha}; \
             return maps must strictly raise the level"
        )));
    }
    Ok(())
}

fn ring_mul(
    desc: &GroupDescriptor,
    a: &SkewMatrix<GroupRingElement>,
    b: &SkewMatrix<GroupRingElement>,
) -> SkewMatrix<GroupRingElement> {
    assert_eq!(a.ncols(), b.nrows(), "shape mismatch in ring product");
    SkewMatrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        let mut acc = GroupRingElement::zero(desc);
        for k in 0..a.ncols() {
            acc = acc.add(&a.at(i, k).mul(b.at(k, j)));
        }
        acc
    })
}

/// Human name of the block product feeding entry block `(rb, cb)` of the
/// composite boundary out of degree `i`.
fn block_formula(i: usize, rb: usize, cb: usize) -> String {
    let p = i - 1;
    match (rb, cb) {
        (0, 0) => format!("N_{p}*N_{i}"),
        (0, 2) => format!("N_{p}*W_{i} - W_{p}*dSigma_{p}"),
        (1, 0) => format!("M_{p}*N_{i} + dSigma_{p}*M_{i}"),
        (1, 1) => format!("dSigma_{p}*dSigma_{i}"),
        (1, 2) => format!(
            "M_{p}*W_{i} + dSigma_{p}*(I - phi_{p}) - (I - phi_{})*dSigma_{p}",
            i - 2
        ),
        (2, 2) => format!("dSigma_{}*dSigma_{p}", i - 2),
        _ => format!("block ({rb}, {cb})"),
    }
}

fn block_of(idx: usize, widths: [usize; 3]) -> usize {
    if idx < widths[0] {
        0
    } else if idx < widths[0] + widths[1] {
        1
    } else {
        2
    }
}

impl CircleMorseModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        desc: GroupDescriptor,
        d: Vec<usize>,
        e: Vec<usize>,
        n: Vec<SkewMatrix<GroupRingElement>>,
        m: Vec<SkewMatrix<GroupRingElement>>,
        w: Vec<SkewMatrix<GroupRingElement>>,
        phi: Vec<SkewMatrix<GroupRingElement>>,
        del_sigma: Vec<SkewMatrix<GroupRingElement>>,
    ) -> Result<Self> {
        if d.is_empty() || d.len() != e.len() {
            return Err(KernelError::Shape(format!(
                "critical and level counts must be non-empty and of equal length, \
                 got {} and {}",
                d.len(),
                e.len()
            )));
        }
        let l = d.len();
        for (vec, want, name) in [
            (&n, l - 1, "incidence list N"),
            (&m, l - 1, "incidence list M"),
            (&del_sigma, l - 1, "level boundary list dSigma"),
            (&w, l, "incidence list W"),
            (&phi, l, "return map list phi"),
        ] {
            if vec.len() != want {
                return Err(KernelError::Shape(format!(
                    "{name} must have {want} matrices for {l} degrees, got {}",
                    vec.len()
                )));
            }
        }
        for j in 0..l - 1 {
            check_shape(&n[j], d[j], d[j + 1], &format!("N_{}", j + 1))?;
            check_shape(&m[j], e[j], d[j + 1], &format!("M_{}", j + 1))?;
            check_shape(&del_sigma[j], e[j], e[j + 1], &format!("dSigma_{}", j + 1))?;
        }
        for j in 0..l {
            check_shape(&w[j], d[j], e[j], &format!("W_{}", j + 1))?;
            check_shape(&phi[j], e[j], e[j], &format!("phi_{j}"))?;
        }
        for (list, label) in [(&n, "N"), (&m, "M"), (&w, "W")] {
            for (j, mat) in list.iter().enumerate() {
                for r in 0..mat.nrows() {
                    for c in 0..mat.ncols() {
                        check_incidence_entry(
                            &desc,
                            &format!("{label}_{}", j + 1),
                            r,
                            c,
                            mat.at(r, c),
                        )?;
                    }
                }
            }
        }
        for (j, mat) in phi.iter().enumerate() {
            for r in 0..mat.nrows() {
                for c in 0..mat.ncols() {
                    check_return_entry(&desc, j, r, c, mat.at(r, c))?;
                }
            }
        }
        let model = CircleMorseModel { desc, d, e, n, m, w, phi, del_sigma };
        model.check_square_zero()?;
        Ok(model)
    }

    pub fn desc(&self) -> &GroupDescriptor {
        &self.desc
    }

    /// Number of Morse degrees `L`; the reglued complex has degrees `0 ..= L`.
    pub fn degrees(&self) -> usize {
        self.d.len()
    }

    /// Critical points per degree.
    pub fn critical_counts(&self) -> &[usize] {
        &self.d
    }

    /// Level cells per degree.
    pub fn fiber_counts(&self) -> &[usize] {
        &self.e
    }

    /// Return maps `phi_0 ..= phi_{L-1}`, ready for orbit enumeration.
    pub fn phis(&self) -> &[SkewMatrix<GroupRingElement>] {
        &self.phi
    }

    /// Critical incidences `N_1 ..= N_{L-1}`; entry `j` maps `D_{j+1} -> D_j`.
    pub fn incidence_n(&self) -> &[SkewMatrix<GroupRingElement>] {
        &self.n
    }

    /// Incidences into the level, `M_1 ..= M_{L-1}`; entry `j` maps `D_{j+1} -> E_j`.
    pub fn incidence_m(&self) -> &[SkewMatrix<GroupRingElement>] {
        &self.m
    }

    /// Incidences from thickened cells, `W_1 ..= W_L`; entry `j` maps `E_j -> D_j`.
    pub fn incidence_w(&self) -> &[SkewMatrix<GroupRingElement>] {
        &self.w
    }

    /// Level boundary maps `dSigma_1 ..= dSigma_{L-1}`; entry `j` maps `E_{j+1} -> E_j`.
    pub fn level_boundary(&self) -> &[SkewMatrix<GroupRingElement>] {
        &self.del_sigma
    }

    fn dd(&self, i: isize) -> usize {
        if i >= 0 && (i as usize) < self.d.len() {
            self.d[i as usize]
        } else {
            0
        }
    }

    fn ee(&self, i: isize) -> usize {
        if i >= 0 && (i as usize) < self.e.len() {
            self.e[i as usize]
        } else {
            0
        }
    }

    /// Ranks of the reglued complex, degree by degree.
    pub fn assembled_dims(&self) -> Vec<usize> {
        let l = self.degrees() as isize;
        (0..=l).map(|i| self.dd(i) + self.ee(i) + self.ee(i - 1)).collect()
    }

    /// The boundary `C_i -> C_{i-1}` of the reglued complex over the group
    /// ring, in the block layout
    ///
    /// ```text
    ///        D_i        E_i        F_i
    ///   [  N_i          0          W_i         ]  D_{i-1}
    ///   [ -M_i          dSigma_i   I - phi_{i-1}]  E_{i-1}
    ///   [  0            0         -dSigma_{i-1}]  F_{i-1}
    /// ```
    fn ring_boundary(&self, i: usize) -> SkewMatrix<GroupRingElement> {
        let s = i as isize;
        let (rd, re) = (self.dd(s - 1), self.ee(s - 1));
        let (cd, ce, cf) = (self.dd(s), self.ee(s), self.ee(s - 1));
        let rows = rd + re + self.ee(s - 2);
        let desc = &self.desc;
        SkewMatrix::from_fn(rows, cd + ce + cf, |r, c| {
            if r < rd {
                if c < cd {
                    self.n[i - 1].at(r, c).clone()
                } else if c < cd + ce {
                    GroupRingElement::zero(desc)
                } else {
                    self.w[i - 1].at(r, c - cd - ce).clone()
                }
            } else if r < rd + re {
                let rr = r - rd;
                if c < cd {
                    self.m[i - 1].at(rr, c).neg()
                } else if c < cd + ce {
                    self.del_sigma[i - 1].at(rr, c - cd).clone()
                } else {
                    let cc = c - cd - ce;
                    let p = self.phi[i - 1].at(rr, cc).neg();
                    if rr == cc {
                        GroupRingElement::one(desc).add(&p)
                    } else {
                        p
                    }
                }
            } else {
                let rr = r - rd - re;
                if c < cd + ce {
                    GroupRingElement::zero(desc)
                } else {
                    self.del_sigma[i - 2].at(rr, c - cd - ce).neg()
                }
            }
        })
    }

    fn check_square_zero(&self) -> Result<()> {
        let l = self.degrees();
        let diffs: Vec<_> = (1..=l).map(|i| self.ring_boundary(i)).collect();
        for i in 2..=l {
            let prod = ring_mul(&self.desc, &diffs[i - 2], &diffs[i - 1]);
            for r in 0..prod.nrows() {
                for c in 0..prod.ncols() {
                    if prod.at(r, c).is_zero() {
                        continue;
                    }
                    let s = i as isize;
                    let rb = block_of(r, [self.dd(s - 2), self.ee(s - 2), self.ee(s - 3)]);
                    let cb = block_of(c, [self.dd(s), self.ee(s), self.ee(s - 1)]);
                    return Err(KernelError::Invalid(format!(
                        "boundary does not square to zero out of degree {i}: \
                         entry ({r}, {c}) comes from {}",
                        block_formula(i, rb, cb)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Reglues the model into a based chain complex over the twisted series
/// field.  Entries are exact images of group-ring elements, so the result
/// can be validated and reduced at any precision.
pub fn assemble_differential(
    model: &CircleMorseModel,
) -> Result<BasedChainComplex<TwistedLaurentSeries>> {
    let dims = model.assembled_dims();
    let diffs = (1..=model.degrees())
        .map(|i| model.ring_boundary(i).map(rho_embed_ring))
        .collect();
    BasedChainComplex::new(dims, diffs)
}
