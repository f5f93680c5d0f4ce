//! Ready-made circle-valued models and random model generators.

use num_rational::BigRational;
use rand::Rng;

use crate::algebra::MonomialAutomorphism;
use crate::error::{KernelError, Result};
use crate::group::{GroupDescriptor, GroupElement, GroupRingElement};
use crate::linalg::SkewMatrix;

use super::model::CircleMorseModel;

fn ring_zeros(desc: &GroupDescriptor, rows: usize, cols: usize) -> SkewMatrix<GroupRingElement> {
    SkewMatrix::from_fn(rows, cols, |_, _| GroupRingElement::zero(desc))
}

fn shift_monomial(desc: &GroupDescriptor, coeff: i64) -> GroupRingElement {
    let g = GroupElement::new(desc, vec![0; desc.nvars()], 1).expect("unit shift");
    GroupRingElement::from_group_element(desc, &g, BigRational::from_integer(coeff.into()))
}

/// Fibration model of the mapping torus of a hyperbolic torus automorphism.
///
/// There are no critical points; the level is a torus whose cells are
/// collapsed to homology, so the level boundary vanishes and the return maps
/// are `t`, `A·t` and `det(A)·t = t` in degrees 0, 1, 2.
pub fn suspension_model(a: &[[i64; 2]; 2]) -> Result<CircleMorseModel> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det != 1 {
        return Err(KernelError::Invalid(format!(
            "suspension models need determinant 1, got {det}"
        )));
    }
    let autom = MonomialAutomorphism::new(vec![
        vec![a[0][0], a[0][1]],
        vec![a[1][0], a[1][1]],
    ])?;
    let desc = GroupDescriptor::monomial_extension(autom);
    let t = |c: i64| shift_monomial(&desc, c);
    let phi0 = SkewMatrix::from_rows(vec![vec![t(1)]])?;
    let phi1 = SkewMatrix::from_rows(vec![
        vec![t(a[0][0]), t(a[0][1])],
        vec![t(a[1][0]), t(a[1][1])],
    ])?;
    let phi2 = SkewMatrix::from_rows(vec![vec![t(1)]])?;
    CircleMorseModel::new(
        desc.clone(),
        vec![0, 0, 0],
        vec![1, 2, 1],
        vec![ring_zeros(&desc, 0, 0), ring_zeros(&desc, 0, 0)],
        vec![ring_zeros(&desc, 1, 0), ring_zeros(&desc, 2, 0)],
        vec![
            ring_zeros(&desc, 0, 1),
            ring_zeros(&desc, 0, 2),
            ring_zeros(&desc, 0, 1),
        ],
        vec![phi0, phi1, phi2],
        vec![ring_zeros(&desc, 1, 2), ring_zeros(&desc, 2, 1)],
    )
}

/// The suspension model of Arnold's cat map `[[2, 1], [1, 1]]`.
pub fn cat_map_model() -> CircleMorseModel {
    suspension_model(&[[2, 1], [1, 1]]).expect("cat map is hyperbolic")
}

/// The circle fibering over itself: a point level with return map `t`.
pub fn circle_model() -> CircleMorseModel {
    let desc = GroupDescriptor::free_abelian(0);
    let phi0 = SkewMatrix::from_rows(vec![vec![shift_monomial(&desc, 1)]]).expect("square");
    CircleMorseModel::new(
        desc.clone(),
        vec![0],
        vec![1],
        vec![],
        vec![],
        vec![ring_zeros(&desc, 0, 1)],
        vec![phi0],
        vec![],
    )
    .expect("circle model is valid")
}

/// A product bundle with vanishing degree character: the deck group is the
/// lattice `Z`, the level is a circle with boundary `x - 1`, and there is no
/// return map.  Everything reduces to ordinary torsion over the function
/// field.
pub fn degenerate_circle_bundle_model() -> CircleMorseModel {
    let desc = GroupDescriptor::degenerate(1);
    let del = SkewMatrix::from_rows(vec![vec![
        GroupRingElement::parse(&desc, "x - 1").unwrap(),
    ]])
    .expect("square");
    CircleMorseModel::new(
        desc.clone(),
        vec![0, 0],
        vec![1, 1],
        vec![ring_zeros(&desc, 0, 0)],
        vec![ring_zeros(&desc, 1, 0)],
        vec![ring_zeros(&desc, 0, 1), ring_zeros(&desc, 0, 1)],
        vec![ring_zeros(&desc, 1, 1), ring_zeros(&desc, 1, 1)],
        vec![del],
    )
    .expect("degenerate bundle model is valid")
}

/// Adds a cancelling pair of critical points in degrees `(degree - 1, degree)`
/// joined by the given unit incidence.  The pair touches nothing else, so
/// every structure equation of the model is preserved.
pub fn stabilize(
    model: &CircleMorseModel,
    degree: usize,
    unit: &GroupRingElement,
) -> Result<CircleMorseModel> {
    let l = model.degrees();
    if degree == 0 || degree >= l {
        return Err(KernelError::Invalid(format!(
            "cancelling pairs need a degree in 1 ..= {}, got {degree}",
            l - 1
        )));
    }
    let desc = model.desc().clone();
    let mut d = model.critical_counts().to_vec();
    d[degree - 1] += 1;
    d[degree] += 1;
    let e = model.fiber_counts().to_vec();

    // Pad a matrix with zero rows / columns, planting `unit` in the new
    // corner when both sides grow.
    let grow = |mat: &SkewMatrix<GroupRingElement>,
                rows: usize,
                cols: usize,
                corner: Option<&GroupRingElement>| {
        SkewMatrix::from_fn(rows, cols, |r, c| {
            if r < mat.nrows() && c < mat.ncols() {
                mat.at(r, c).clone()
            } else if r >= mat.nrows() && c >= mat.ncols() {
                corner.cloned().unwrap_or_else(|| GroupRingElement::zero(&desc))
            } else {
                GroupRingElement::zero(&desc)
            }
        })
    };

    let n = (0..l - 1)
        .map(|j| {
            let corner = if j + 1 == degree { Some(unit) } else { None };
            grow(&model.incidence_n()[j], d[j], d[j + 1], corner)
        })
        .collect();
    let m = (0..l - 1)
        .map(|j| grow(&model.incidence_m()[j], e[j], d[j + 1], None))
        .collect();
    let w = (0..l)
        .map(|j| grow(&model.incidence_w()[j], d[j], e[j], None))
        .collect();
    let phi = model.phis().to_vec();
    let del_sigma = (0..l - 1)
        .map(|j| {
            // Level data is untouched; clone through a no-op grow.
            grow(&model.level_boundary()[j], e[j], e[j + 1], None)
        })
        .collect();
    CircleMorseModel::new(desc, d, e, n, m, w, phi, del_sigma)
}

fn random_incidence(
    desc: &GroupDescriptor,
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
) -> SkewMatrix<GroupRingElement> {
    SkewMatrix::from_fn(rows, cols, |_, _| {
        let mut out = GroupRingElement::zero(desc);
        for _ in 0..rng.gen_range(0..=2) {
            let coeff: i64 = rng.gen_range(-2..=2);
            if coeff == 0 {
                continue;
            }
            let vec: Vec<i64> = (0..desc.nvars()).map(|_| rng.gen_range(-1..=1)).collect();
            let shift = rng.gen_range(0..=1);
            let term = GroupRingElement::from_term(
                desc,
                vec,
                shift,
                BigRational::from_integer(coeff.into()),
            )
            .expect("non-negative shift");
            out = out.add(&term);
        }
        out
    })
}

fn random_return_map(
    desc: &GroupDescriptor,
    rng: &mut impl Rng,
    size: usize,
) -> SkewMatrix<GroupRingElement> {
    SkewMatrix::from_fn(size, size, |_, _| {
        let coeff: i64 = rng.gen_range(-2..=2);
        if coeff == 0 {
            return GroupRingElement::zero(desc);
        }
        let vec: Vec<i64> = (0..desc.nvars()).map(|_| rng.gen_range(-1..=1)).collect();
        GroupRingElement::from_term(
            desc,
            vec,
            rng.gen_range(1..=2),
            BigRational::from_integer(coeff.into()),
        )
        .expect("positive shift")
    })
}

/// A random two-degree model whose critical points come in one matched
/// block, so the induced maps have a single square stage.  The level
/// boundary is zero; incidences and return maps are sampled freely.  Models
/// whose induced map is singular at the sampling precision are rejected and
/// redrawn.
pub fn random_paired_model(
    desc: &GroupDescriptor,
    rng: &mut impl Rng,
) -> Result<CircleMorseModel> {
    for _ in 0..200 {
        let a = rng.gen_range(1..=2);
        let e0 = rng.gen_range(1..=2);
        let e1 = rng.gen_range(0..=2);
        let model = CircleMorseModel::new(
            desc.clone(),
            vec![a, a],
            vec![e0, e1],
            vec![random_incidence(desc, rng, a, a)],
            vec![random_incidence(desc, rng, e0, a)],
            vec![
                random_incidence(desc, rng, a, e0),
                ring_zeros(desc, a, e1),
            ],
            vec![
                random_return_map(desc, rng, e0),
                random_return_map(desc, rng, e1),
            ],
            vec![ring_zeros(desc, e0, e1)],
        )?;
        if super::novikov::has_invertible_stages(&model, 6) {
            return Ok(model);
        }
    }
    Err(KernelError::Invalid(
        "no invertible random model found in 200 draws".into(),
    ))
}
