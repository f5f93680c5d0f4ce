//! Seeded random instances for exercising the torsion routines.
//!
//! Each generator starts from a complex whose differentials are partial
//! identity matrices (so acyclicity and the declared homology are true by
//! construction) and then applies random basis moves that are exactly
//! invertible: shears, unit scalings, and swaps.  No field inversion is
//! ever performed while generating, so the instances stay exact even over
//! windowed series coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::RationalFunction;
use crate::chain::complex::{BasedChainComplex, HomologyBasis};
use crate::chain::ses::ShortExactData;
use crate::group::{GroupDescriptor, GroupElement, GroupRingElement};
use crate::laurent::rho_embed_ring;
use crate::linalg::{RatFunField, SkewField, SkewMatrix, TwistedSeriesField};

/// The RNG used by all generators; fixed so seeds mean the same thing
/// everywhere.
pub type GenRng = rand_chacha::ChaCha8Rng;

/// Field-specific sampling hooks.
///
/// `entry` draws an arbitrary (possibly zero) coefficient and `unit` draws
/// an invertible one *together with its exact inverse*, so generators never
/// need to invert anything themselves.
pub struct FieldSamplers<F: SkewField> {
    pub entry: Box<dyn Fn(&mut GenRng) -> F::Elem>,
    pub unit: Box<dyn Fn(&mut GenRng) -> (F::Elem, F::Elem)>,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Samplers over the commutative field of rational functions in `nvars`
/// variables.  Entries are small polynomials; units are monomials.
pub fn ratfun_samplers(nvars: usize) -> FieldSamplers<RatFunField> {
    FieldSamplers {
        entry: Box::new(move |rng| {
            let mut acc = RationalFunction::from_int(nvars, 0);
            for _ in 0..rng.gen_range(0..=2) {
                let c = rng.gen_range(-2..=2i64);
                if c == 0 {
                    continue;
                }
                let mut exps = vec![0i64; nvars];
                if nvars > 0 && rng.gen_bool(0.6) {
                    let v = rng.gen_range(0..nvars);
                    exps[v] = rng.gen_range(0..=2);
                }
                acc = acc.add(&RationalFunction::monomial(exps, big(c)));
            }
            acc
        }),
        unit: Box::new(move |rng| {
            let c = *[1i64, -1, 2, -2].get(rng.gen_range(0..4)).unwrap();
            let mut exps = vec![0i64; nvars];
            if nvars > 0 && rng.gen_bool(0.5) {
                let v = rng.gen_range(0..nvars);
                exps[v] = rng.gen_range(-1..=1);
            }
            let neg: Vec<i64> = exps.iter().map(|e| -e).collect();
            (
                RationalFunction::monomial(exps, big(c)),
                RationalFunction::monomial(neg, big(1) / big(c)),
            )
        }),
    }
}

/// Samplers over twisted Laurent series coefficients for `desc`.  Entries
/// are short exact group-ring elements pushed through the embedding; units
/// are scaled group elements, inverted in the group.
pub fn series_samplers(desc: &GroupDescriptor) -> FieldSamplers<TwistedSeriesField> {
    let d_entry = desc.clone();
    let d_unit = desc.clone();
    FieldSamplers {
        entry: Box::new(move |rng| {
            let mut acc = GroupRingElement::zero(&d_entry);
            for _ in 0..rng.gen_range(0..=2) {
                let c = rng.gen_range(-2..=2i64);
                if c == 0 {
                    continue;
                }
                let vec: Vec<i64> =
                    (0..d_entry.nvars()).map(|_| rng.gen_range(-1..=1i64)).collect();
                let shift = if d_entry.is_degenerate() { 0 } else { rng.gen_range(0..=2) };
                let term = GroupRingElement::from_term(&d_entry, vec, shift, big(c))
                    .expect("sampled term is valid");
                acc = acc.add(&term);
            }
            rho_embed_ring(&acc)
        }),
        unit: Box::new(move |rng| {
            let c = if rng.gen_bool(0.5) { 1i64 } else { -1 };
            let vec: Vec<i64> = (0..d_unit.nvars()).map(|_| rng.gen_range(-1..=1i64)).collect();
            let shift = if d_unit.is_degenerate() { 0 } else { rng.gen_range(0..=1) };
            let g = GroupElement::new(&d_unit, vec, shift).expect("sampled element is valid");
            let u = GroupRingElement::from_group_element(&d_unit, &g, big(c));
            let v = GroupRingElement::from_group_element(&d_unit, &g.inv(&d_unit), big(1) / big(c));
            (rho_embed_ring(&u), rho_embed_ring(&v))
        }),
    }
}

/// Size profile for a random based complex.
pub struct ComplexProfile {
    /// Number of degrees (so the top degree is `degrees - 1`).
    pub degrees: usize,
    /// Maximum number of cancelling pairs between adjacent degrees.
    pub pairs_max: usize,
    /// Maximum number of declared homology slots per degree (0 = acyclic).
    pub homology_max: usize,
    /// Number of random basis moves to apply afterwards.
    pub moves: usize,
}

struct Pieces<T> {
    dims: Vec<usize>,
    diffs: Vec<SkewMatrix<T>>,
    h: Vec<SkewMatrix<T>>,
}

fn seed_pieces<F: SkewField>(
    f: &F,
    rng: &mut GenRng,
    profile: &ComplexProfile,
) -> Pieces<F::Elem> {
    let n = profile.degrees.max(1) - 1;
    // pairs[i] couples an `a` slot in degree i with a `b` slot in degree
    // i - 1, for i in 1..=n.
    let mut pairs = vec![0usize; n + 2];
    for p in pairs.iter_mut().take(n + 1).skip(1) {
        *p = rng.gen_range(0..=profile.pairs_max);
    }
    let holes: Vec<usize> =
        (0..=n).map(|_| rng.gen_range(0..=profile.homology_max)).collect();
    let dims: Vec<usize> = (0..=n).map(|i| pairs[i + 1] + holes[i] + pairs[i]).collect();

    let mut diffs = Vec::new();
    for i in 1..=n {
        let mut d = SkewMatrix::zeros(f, dims[i - 1], dims[i]);
        for p in 0..pairs[i] {
            d.set(p, pairs[i + 1] + holes[i] + p, f.one());
        }
        diffs.push(d);
    }
    let h: Vec<SkewMatrix<F::Elem>> = (0..=n)
        .map(|i| {
            SkewMatrix::from_fn(dims[i], holes[i], |r, c| {
                if r == pairs[i + 1] + c {
                    f.one()
                } else {
                    f.zero()
                }
            })
        })
        .collect();
    Pieces { dims, diffs, h }
}

/// Applies one random exact basis move in degree `i`: the chosen column
/// operation on the outgoing differential, with the compensating row
/// operation on the incoming differential and the homology vectors.
fn basis_move<F: SkewField>(
    f: &F,
    rng: &mut GenRng,
    pieces: &mut Pieces<F::Elem>,
    samplers: &FieldSamplers<F>,
) {
    let n = pieces.dims.len() - 1;
    let i = rng.gen_range(0..=n);
    let d = pieces.dims[i];
    if d == 0 {
        return;
    }
    let op = rng.gen_range(0..3);
    match op {
        0 if d >= 2 => {
            // Shear: basis vector j gains a multiple of basis vector k.
            let j = rng.gen_range(0..d);
            let mut k = rng.gen_range(0..d - 1);
            if k >= j {
                k += 1;
            }
            let a = (samplers.entry)(rng);
            if i >= 1 {
                let m = &mut pieces.diffs[i - 1];
                for r in 0..m.nrows() {
                    let inc = f.mul(m.at(r, k), &a);
                    let v = f.add(m.at(r, j), &inc);
                    m.set(r, j, v);
                }
            }
            let neg_a = f.neg(&a);
            if i < n {
                let m = &mut pieces.diffs[i];
                for c in 0..m.ncols() {
                    let inc = f.mul(&neg_a, m.at(j, c));
                    let v = f.add(m.at(k, c), &inc);
                    m.set(k, c, v);
                }
            }
            let hm = &mut pieces.h[i];
            for c in 0..hm.ncols() {
                let inc = f.mul(&neg_a, hm.at(j, c));
                let v = f.add(hm.at(k, c), &inc);
                hm.set(k, c, v);
            }
        }
        1 => {
            // Scale basis vector j by a unit.
            let j = rng.gen_range(0..d);
            let (u, u_inv) = (samplers.unit)(rng);
            if i >= 1 {
                let m = &mut pieces.diffs[i - 1];
                for r in 0..m.nrows() {
                    let v = f.mul(m.at(r, j), &u);
                    m.set(r, j, v);
                }
            }
            if i < n {
                let m = &mut pieces.diffs[i];
                for c in 0..m.ncols() {
                    let v = f.mul(&u_inv, m.at(j, c));
                    m.set(j, c, v);
                }
            }
            let hm = &mut pieces.h[i];
            for c in 0..hm.ncols() {
                let v = f.mul(&u_inv, hm.at(j, c));
                hm.set(j, c, v);
            }
        }
        _ if d >= 2 => {
            // Swap basis vectors j and k.
            let j = rng.gen_range(0..d);
            let mut k = rng.gen_range(0..d - 1);
            if k >= j {
                k += 1;
            }
            if i >= 1 {
                pieces.diffs[i - 1].swap_cols(j, k);
            }
            if i < n {
                pieces.diffs[i].swap_rows(j, k);
            }
            pieces.h[i].swap_rows(j, k);
        }
        _ => {}
    }
}

/// Draws a random based complex together with a homology basis that is
/// correct by construction.  With `homology_max == 0` the complex is
/// acyclic.
pub fn random_complex<F: SkewField>(
    f: &F,
    rng: &mut GenRng,
    profile: &ComplexProfile,
    samplers: &FieldSamplers<F>,
) -> (BasedChainComplex<F::Elem>, HomologyBasis<F::Elem>) {
    let mut pieces = seed_pieces(f, rng, profile);
    for _ in 0..profile.moves {
        basis_move(f, rng, &mut pieces, samplers);
    }
    let cx = BasedChainComplex::new(pieces.dims, pieces.diffs)
        .expect("generated shapes are consistent");
    (cx, HomologyBasis::new(pieces.h))
}

/// Mixes each degree's homology basis by random invertible column
/// operations, so that declared bases stop being unit vectors.
pub fn mix_homology<F: SkewField>(
    f: &F,
    rng: &mut GenRng,
    h: &mut HomologyBasis<F::Elem>,
    samplers: &FieldSamplers<F>,
    moves: usize,
) {
    let degrees = h.degrees();
    for _ in 0..moves {
        let i = rng.gen_range(0..degrees.max(1));
        let m = match h.vectors_mut(i) {
            Some(m) => m,
            None => continue,
        };
        let c = m.ncols();
        if c == 0 {
            continue;
        }
        match rng.gen_range(0..3) {
            0 if c >= 2 => {
                let j = rng.gen_range(0..c);
                let mut k = rng.gen_range(0..c - 1);
                if k >= j {
                    k += 1;
                }
                let a = (samplers.entry)(rng);
                for r in 0..m.nrows() {
                    let inc = f.mul(m.at(r, j), &a);
                    let v = f.add(m.at(r, k), &inc);
                    m.set(r, k, v);
                }
            }
            1 => {
                let j = rng.gen_range(0..c);
                let (u, _) = (samplers.unit)(rng);
                for r in 0..m.nrows() {
                    let v = f.mul(m.at(r, j), &u);
                    m.set(r, j, v);
                }
            }
            _ if c >= 2 => {
                let j = rng.gen_range(0..c);
                let mut k = rng.gen_range(0..c - 1);
                if k >= j {
                    k += 1;
                }
                m.swap_cols(j, k);
            }
            _ => {}
        }
    }
}

/// Draws a short exact sequence in block form.  The connecting maps of the
/// resulting homology sequence vanish (the coupling block is a boundary in
/// the homotopy sense), which keeps the declared total homology simple:
/// sub classes included, quotient classes lifted through the coupling.
pub fn random_ses<F: SkewField>(
    f: &F,
    rng: &mut GenRng,
    profile: &ComplexProfile,
    samplers: &FieldSamplers<F>,
) -> ShortExactData<F::Elem> {
    let (sub, mut h_sub) = random_complex(f, rng, profile, samplers);
    let (quot, mut h_quot) = random_complex(f, rng, profile, samplers);
    let n = sub.len() - 1;

    // Random degreewise coupling candidate Y_i : quotient_i -> sub_i.
    let y: Vec<SkewMatrix<F::Elem>> = (0..=n)
        .map(|i| SkewMatrix::from_fn(sub.dim(i), quot.dim(i), |_, _| (samplers.entry)(rng)))
        .collect();

    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for i in 0..=n {
        dims.push(sub.dim(i) + quot.dim(i));
    }
    for i in 1..=n {
        let ds = sub.boundary(i).unwrap();
        let dq = quot.boundary(i).unwrap();
        // X_i = d'_i Y_i - Y_{i-1} d''_i  (a null-homotopic coupling).
        let x = ds
            .mul(f, &y[i])
            .and_then(|left| left.sub(f, &y[i - 1].mul(f, dq)?))
            .expect("coupling shapes agree");
        let top = ds.hstack(&x).expect("rows agree");
        let bottom = SkewMatrix::zeros(f, quot.dim(i - 1), sub.dim(i))
            .hstack(dq)
            .expect("rows agree");
        diffs.push(top.vstack(&bottom).expect("columns agree"));
    }
    let total =
        BasedChainComplex::new(dims, diffs).expect("block shapes are consistent");

    // Total homology: sub classes under inclusion, quotient classes lifted
    // by z'' -> (-Y z'', z'').
    let h_total_vecs: Vec<SkewMatrix<F::Elem>> = (0..=n)
        .map(|i| {
            let hs = h_sub.vectors(i).expect("degree in range");
            let hq = h_quot.vectors(i).expect("degree in range");
            let included = hs
                .vstack(&SkewMatrix::zeros(f, quot.dim(i), hs.ncols()))
                .expect("columns agree");
            let lifted_top = y[i].mul(f, hq).expect("shapes agree").map(|e| f.neg(e));
            let lifted = lifted_top.vstack(hq).expect("columns agree");
            included.hstack(&lifted).expect("rows agree")
        })
        .collect();
    let mut h_total = HomologyBasis::new(h_total_vecs);

    mix_homology(f, rng, &mut h_sub, samplers, profile.moves);
    mix_homology(f, rng, &mut h_quot, samplers, profile.moves);
    mix_homology(f, rng, &mut h_total, samplers, profile.moves);

    ShortExactData { sub, total, quot, h_sub, h_total, h_quot }
}

/// Draws a short exact sequence whose quotient is the sub complex shifted
/// up one degree with negated differentials and whose coupling block is
/// the identity.  The total complex is then acyclic and every connecting
/// map of the homology sequence is an isomorphism, which exercises the
/// connecting conventions rather than the split case.
pub fn shifted_cone_ses<F: SkewField>(
    f: &F,
    rng: &mut GenRng,
    profile: &ComplexProfile,
    samplers: &FieldSamplers<F>,
) -> ShortExactData<F::Elem> {
    let (sub, mut h_sub) = random_complex(f, rng, profile, samplers);
    let n = sub.len() - 1;

    let mut qdims = vec![0usize];
    for i in 1..=n + 1 {
        qdims.push(sub.dim(i - 1));
    }
    let mut qdiffs = Vec::new();
    for i in 1..=n + 1 {
        if i == 1 {
            qdiffs.push(SkewMatrix::zeros(f, 0, qdims[1]));
        } else {
            qdiffs.push(sub.boundary(i - 1).unwrap().map(|e| f.neg(e)));
        }
    }
    let quot = BasedChainComplex::new(qdims, qdiffs).expect("shifted shapes are consistent");
    let mut h_quot_vecs = vec![SkewMatrix::zeros(f, 0, 0)];
    for i in 0..=n {
        h_quot_vecs.push(h_sub.vectors(i).expect("degree in range").clone());
    }
    let mut h_quot = HomologyBasis::new(h_quot_vecs);

    // Pad the sub complex with an empty top degree so both factors span
    // degrees 0..=n+1, then couple with the identity block.
    let mut sdims: Vec<usize> = (0..=n).map(|i| sub.dim(i)).collect();
    sdims.push(0);
    let mut sdiffs: Vec<SkewMatrix<F::Elem>> =
        (1..=n).map(|i| sub.boundary(i).unwrap().clone()).collect();
    sdiffs.push(SkewMatrix::zeros(f, sub.dim(n), 0));
    let sub = BasedChainComplex::new(sdims, sdiffs).expect("padded shapes are consistent");
    let mut h_sub_vecs: Vec<SkewMatrix<F::Elem>> =
        (0..=n).map(|i| h_sub.vectors(i).expect("degree in range").clone()).collect();
    h_sub_vecs.push(SkewMatrix::zeros(f, 0, 0));
    h_sub = HomologyBasis::new(h_sub_vecs);

    let mut dims = Vec::new();
    for i in 0..=n + 1 {
        dims.push(sub.dim(i) + quot.dim(i));
    }
    let mut diffs = Vec::new();
    for i in 1..=n + 1 {
        let ds = sub.boundary(i).unwrap();
        let dq = quot.boundary(i).unwrap();
        // Coupling block: the identity sub_{i-1} -> sub_{i-1} = quot_i.
        let x = SkewMatrix::from_fn(sub.dim(i - 1), quot.dim(i), |r, c| {
            if r == c {
                f.one()
            } else {
                f.zero()
            }
        });
        let top = ds.hstack(&x).expect("rows agree");
        let bottom = SkewMatrix::zeros(f, quot.dim(i - 1), sub.dim(i))
            .hstack(dq)
            .expect("rows agree");
        diffs.push(top.vstack(&bottom).expect("columns agree"));
    }
    let total = BasedChainComplex::new(dims, diffs).expect("cone shapes are consistent");
    let h_total = HomologyBasis::empty(f, total.dims());

    mix_homology(f, rng, &mut h_sub, samplers, profile.moves);
    mix_homology(f, rng, &mut h_quot, samplers, profile.moves);

    ShortExactData { sub, total, quot, h_sub, h_total, h_quot }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ses::multiplicativity_check;
    use crate::chain::torsion::{torsion_milnor, torsion_turaev, MilnorOptions};
    use crate::linalg::PivotStrategy;
        use rand::SeedableRng;

    #[test]
    fn random_rational_complexes_validate() {
        let f = RatFunField { nvars: 1 };
        let samplers = ratfun_samplers(1);
        let mut rng = GenRng::seed_from_u64(11);
        for _ in 0..20 {
            let profile =
                ComplexProfile { degrees: 4, pairs_max: 3, homology_max: 1, moves: 30 };
            let (cx, h) = random_complex(&f, &mut rng, &profile, &samplers);
            let report = cx.validate(&f).expect("zero tests decide");
            for (i, rank) in report.homology_ranks.iter().enumerate() {
                assert_eq!(*rank, h.count(i), "degree {i}");
            }
        }
    }

    #[test]
    fn random_acyclic_torsions_agree_between_conventions() {
        let f = RatFunField { nvars: 1 };
        let samplers = ratfun_samplers(1);
        let mut rng = GenRng::seed_from_u64(5);
        let mut checked = 0;
        for _ in 0..15 {
            let profile =
                ComplexProfile { degrees: 3, pairs_max: 3, homology_max: 0, moves: 25 };
            let (cx, h) = random_complex(&f, &mut rng, &profile, &samplers);
            let tm = torsion_milnor(&f, &cx, &h, &MilnorOptions::default())
                .expect("acyclic by construction");
            let tt = torsion_turaev(&f, &cx, None, PivotStrategy::MinValuation).expect("acyclic by construction");
            let same = f.is_zero(&f.sub(&tm, &tt)) == Ok(true);
            let opposite = f.is_zero(&f.add(&tm, &tt)) == Ok(true);
            assert!(same || opposite, "torsions differ by more than a sign");
            checked += 1;
        }
        assert_eq!(checked, 15);
    }

    #[test]
    fn random_twisted_complexes_validate() {
        let desc = GroupDescriptor::free_abelian(1);
        let f = TwistedSeriesField::new(desc.clone(), 8);
        let samplers = series_samplers(&desc);
        let mut rng = GenRng::seed_from_u64(23);
        for _ in 0..10 {
            let profile =
                ComplexProfile { degrees: 3, pairs_max: 2, homology_max: 0, moves: 15 };
            let (cx, _) = random_complex(&f, &mut rng, &profile, &samplers);
            let report = cx.validate(&f).expect("zero tests decide through the window");
            assert!(report.acyclic, "dims {:?}", report.dims);
        }
    }

    #[test]
    fn random_ses_instances_are_multiplicative() {
        let f = RatFunField { nvars: 1 };
        let samplers = ratfun_samplers(1);
        let mut rng = GenRng::seed_from_u64(41);
        for trial in 0..40 {
            let profile = ComplexProfile {
                degrees: rng.gen_range(2..=4),
                pairs_max: rng.gen_range(1..=3),
                homology_max: rng.gen_range(0..=2),
                moves: rng.gen_range(8..=20),
            };
            let data = random_ses(&f, &mut rng, &profile, &samplers);
            let report = multiplicativity_check(&f, &data, PivotStrategy::MinValuation)
                .expect("instance is valid");
            assert!(
                report.holds,
                "trial {trial} (sub {:?} quot {:?}): {report:?}",
                data.sub.dims(),
                data.quot.dims()
            );
        }
    }

    #[test]
    fn shifted_cone_instances_are_multiplicative() {
        let f = RatFunField { nvars: 1 };
        let samplers = ratfun_samplers(1);
        let mut rng = GenRng::seed_from_u64(47);
        for trial in 0..30 {
            let profile = ComplexProfile {
                degrees: rng.gen_range(2..=3),
                pairs_max: rng.gen_range(1..=3),
                homology_max: rng.gen_range(0..=2),
                moves: rng.gen_range(8..=16),
            };
            let data = shifted_cone_ses(&f, &mut rng, &profile, &samplers);
            let report = multiplicativity_check(&f, &data, PivotStrategy::MinValuation)
                .expect("instance is valid");
            assert!(
                report.holds,
                "trial {trial} (sub {:?} quot {:?}): {report:?}",
                data.sub.dims(),
                data.quot.dims()
            );
        }
    }
}
