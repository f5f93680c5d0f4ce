//! Equality of torsion values up to the declared ambiguity.
//!
//! Torsion invariants are defined up to a sign, or up to a sign and a group
//! monomial, and over a non-commutative coefficient field they live in the
//! abelianised unit group, where every commutator of units is invisible.
//! This module decides whether two computed values agree in that quotient.
//!
//! Commutative coefficient fields are decided exactly.  In the twisted case
//! the comparison works through an explicit degree window and is certificate
//! based in both directions:
//!
//! * `Equal` certifies the leading coefficient as an ambiguity monomial times
//!   a witnessed commutator, then shows the remaining tail is trivial modulo
//!   commutators: for an order-two twist by checking the reduced norm over
//!   the centre, for an infinite-order twist because every tail degree can be
//!   cancelled by a lattice conjugation, and otherwise by constructing the
//!   cancelling commutators degree by degree;
//! * `Distinct` comes with an invariant separating the two values: the degree
//!   character (which kills commutators), the twisted norm of the leading
//!   coefficient, or a reduced-norm residue that no product of commutators
//!   and no ambiguity monomial can produce;
//! * `Compatible` is the honest "could not decide" verdict.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::algebra::{render_ratfun, var_names, RationalFunction};
use crate::error::{KernelError, Result};
use crate::group::GroupDescriptor;
use crate::laurent::{
    norm_map, sum_twist_matrix, theta_ratio_certificate, try_integer_solve, TwistedLaurentSeries,
};

/// A computed torsion: exact rational function, or truncated twisted series.
#[derive(Debug, Clone)]
pub enum TorsionValue {
    Rational(RationalFunction),
    Series(TwistedLaurentSeries),
}

/// The indeterminacy the comparison should quotient out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ambiguity {
    /// Values may differ by a sign only.
    SignOnly,
    /// Values may differ by a sign and a group monomial `x^w t^n`.
    SignedMonomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equal,
    Distinct,
    Compatible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "EQUAL",
            Verdict::Distinct => "DISTINCT",
            Verdict::Compatible => "COMPATIBLE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CompareOptions {
    /// Series verdicts are established for all degrees up to this bound
    /// (relative to the leading term of the ratio).
    pub through_degree: i64,
    /// Extra exponent-box radius for the leading-coefficient witness search.
    pub cert_radius: i64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { through_degree: 16, cert_radius: 2 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub verdict: Verdict,
    pub route: String,
    /// Depth of the verification window; `None` for exact comparisons.
    pub through_degree: Option<i64>,
    pub details: Vec<String>,
    pub certificates: Vec<String>,
}

impl ComparisonReport {
    fn exact(verdict: Verdict, route: &str) -> Self {
        ComparisonReport {
            verdict,
            route: route.into(),
            through_degree: None,
            details: Vec::new(),
            certificates: Vec::new(),
        }
    }

    fn windowed(verdict: Verdict, route: &str, k: i64) -> Self {
        ComparisonReport {
            verdict,
            route: route.into(),
            through_degree: Some(k),
            details: Vec::new(),
            certificates: Vec::new(),
        }
    }

    fn with_detail(mut self, d: String) -> Self {
        self.details.push(d);
        self
    }
}

/// Decides whether two torsion values agree up to the ambiguity.
pub fn compare_torsion(
    a: &TorsionValue,
    b: &TorsionValue,
    ambiguity: Ambiguity,
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    match (a, b) {
        (TorsionValue::Rational(ra), TorsionValue::Rational(rb)) => {
            compare_rational(ra, rb, ambiguity)
        }
        (TorsionValue::Series(sa), TorsionValue::Series(sb)) => {
            if sa.desc() != sb.desc() {
                return Err(KernelError::Shape(
                    "torsion values live over different groups".into(),
                ));
            }
            let k = options.through_degree;
            let prec = (k + 2).max(2) as usize;
            let ratio = sa.mul(&sb.inv(prec)?);
            if sa.desc().is_commutative() {
                compare_series_commutative(&ratio, ambiguity, k)
            } else {
                compare_series_twisted(&ratio, ambiguity, options)
            }
        }
        _ => Err(KernelError::Shape(
            "cannot compare an exact rational value with a series value".into(),
        )),
    }
}

fn compare_rational(
    a: &RationalFunction,
    b: &RationalFunction,
    ambiguity: Ambiguity,
) -> Result<ComparisonReport> {
    if a.nvars() != b.nvars() {
        return Err(KernelError::Shape("variable count mismatch".into()));
    }
    if a.is_zero() || b.is_zero() {
        return Err(KernelError::ZeroNotInvertible);
    }
    let ratio = a.div(b)?;
    let vars = var_names(ratio.nvars());
    let rendered = render_ratfun(&ratio, &vars);
    let ok = match ambiguity {
        Ambiguity::SignOnly => ratio.is_one() || ratio.neg().is_one(),
        Ambiguity::SignedMonomial => ratio
            .as_monomial()
            .is_some_and(|(_, c)| c.abs().is_one()),
    };
    let mut report = if ok {
        let mut r = ComparisonReport::exact(Verdict::Equal, "exact-rational");
        r.certificates.push(format!("ratio = {rendered}"));
        r
    } else {
        ComparisonReport::exact(Verdict::Distinct, "exact-rational")
            .with_detail(format!("ratio {rendered} is not of the allowed form"))
    };
    report.details.push(match ambiguity {
        Ambiguity::SignOnly => "allowed ambiguity: sign".into(),
        Ambiguity::SignedMonomial => "allowed ambiguity: signed monomial".into(),
    });
    Ok(report)
}

/// Label for an ambiguity monomial `eps * x^w t^(l*shift)`.
fn mono_label(desc: &GroupDescriptor, eps: &BigRational, w: &[i64], shift: i64) -> String {
    let vars = var_names(desc.nvars());
    let head = render_ratfun(&RationalFunction::monomial(w.to_vec(), eps.clone()), &vars);
    let e = desc.alpha_scale().max(1) * shift;
    if e == 0 {
        head
    } else if head == "1" {
        format!("t^{e}")
    } else {
        format!("{head}*t^{e}")
    }
}

fn rf_label(desc: &GroupDescriptor, f: &RationalFunction) -> String {
    render_ratfun(f, &var_names(desc.nvars()))
}

fn window_guard(ratio: &TwistedLaurentSeries, k: i64) -> Result<(i64, RationalFunction)> {
    if ratio.is_zero_through_window() {
        if ratio.is_exact() {
            return Err(KernelError::ZeroNotInvertible);
        }
        return Err(KernelError::InsufficientPrecision {
            needed: ratio.known_end() + 1,
            have: ratio.known_end(),
        });
    }
    let v0 = ratio.val();
    if ratio.known_end() <= v0 + k {
        return Err(KernelError::InsufficientPrecision {
            needed: v0 + k + 1,
            have: ratio.known_end(),
        });
    }
    let lead = ratio.slice(v0).expect("leading slice inside the window");
    Ok((v0, lead))
}

/// Over an abelian group the coefficient field commutes, so equality up to
/// ambiguity forces the ratio to literally be a signed monomial; any
/// in-window deviation is a genuine difference.
fn compare_series_commutative(
    ratio: &TwistedLaurentSeries,
    ambiguity: Ambiguity,
    k: i64,
) -> Result<ComparisonReport> {
    let desc = ratio.desc().clone();
    let (v0, lead) = window_guard(ratio, k)?;
    if ambiguity == Ambiguity::SignOnly && v0 != 0 {
        return Ok(ComparisonReport::windowed(Verdict::Distinct, "valuation-mismatch", k)
            .with_detail(format!("ratio has degree {}, signs have degree 0", v0)));
    }
    let lead_ok = match ambiguity {
        Ambiguity::SignOnly => lead.is_one() || lead.neg().is_one(),
        Ambiguity::SignedMonomial => lead.as_monomial().is_some_and(|(_, c)| c.abs().is_one()),
    };
    if !lead_ok {
        return Ok(ComparisonReport::windowed(Verdict::Distinct, "literal-mismatch", k)
            .with_detail(format!(
                "leading coefficient {} is not a signed monomial",
                rf_label(&desc, &lead)
            )));
    }
    for j in v0 + 1..=v0 + k {
        let s = ratio.slice(j).expect("window checked above");
        if !s.is_zero() {
            return Ok(ComparisonReport::windowed(Verdict::Distinct, "literal-mismatch", k)
                .with_detail(format!(
                    "ratio deviates from a monomial at degree {}",
                    desc.alpha_scale().max(1) * j
                )));
        }
    }
    let (w, c) = lead.as_monomial().expect("checked monomial lead");
    let mut report = ComparisonReport::windowed(Verdict::Equal, "literal-window", k);
    report
        .certificates
        .push(format!("ratio = {}", mono_label(&desc, &c, &w, v0)));
    Ok(report)
}

/// Candidate exponents for the ambiguity monomial in the twisted case.
fn candidate_exponents(
    desc: &GroupDescriptor,
    lead: &RationalFunction,
    ambiguity: Ambiguity,
    order: Option<usize>,
) -> Vec<Vec<i64>> {
    let m = desc.nvars();
    if ambiguity == Ambiguity::SignOnly {
        return vec![vec![0; m]];
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    let push = |w: Vec<i64>, out: &mut Vec<Vec<i64>>| {
        if !out.contains(&w) {
            out.push(w);
        }
    };
    if let Some((w, _)) = lead.as_monomial() {
        push(w, &mut out);
    }
    if let Some(r) = order {
        // Invert the norm: the only exponents consistent with the norm of
        // the lead are solutions of  (sum_j A^j) w = exponent(norm(lead)).
        let nm = norm_map(desc, lead, r);
        if let Some((e, _)) = nm.as_monomial() {
            let s = sum_twist_matrix(desc.autom(), r);
            if let Some(w) = try_integer_solve(&s, &e) {
                push(w, &mut out);
            }
        }
    }
    push(vec![0; m], &mut out);
    out
}

/// Norm-map separation: the norm of any coefficient ratio realized by the
/// twist is 1, so the norm of the lead must be `(+-1)^r` times the norm of an
/// ambiguity monomial.  A failure here is a proof of difference.
fn norm_obstruction(
    desc: &GroupDescriptor,
    lead: &RationalFunction,
    ambiguity: Ambiguity,
    r: usize,
    k: i64,
) -> Option<ComparisonReport> {
    let nm = norm_map(desc, lead, r);
    let fail = |why: String| {
        Some(
            ComparisonReport::windowed(Verdict::Distinct, "norm-obstruction", k)
                .with_detail(why),
        )
    };
    let Some((e, c)) = nm.as_monomial() else {
        return fail(format!(
            "norm of the lead is not a monomial: {}",
            rf_label(desc, &nm)
        ));
    };
    if !c.abs().is_one() {
        return fail(format!("norm of the lead has coefficient {c}"));
    }
    match ambiguity {
        Ambiguity::SignOnly => {
            if e.iter().any(|&x| x != 0) {
                return fail(format!("norm of the lead is {}", rf_label(desc, &nm)));
            }
        }
        Ambiguity::SignedMonomial => {
            let s = sum_twist_matrix(desc.autom(), r);
            if try_integer_solve(&s, &e).is_none() {
                return fail(format!(
                    "norm exponent {:?} is not the norm of any lattice monomial",
                    e
                ));
            }
        }
    }
    None
}

fn compare_series_twisted(
    ratio: &TwistedLaurentSeries,
    ambiguity: Ambiguity,
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    let desc = ratio.desc().clone();
    let k = options.through_degree;
    let (v0, lead) = window_guard(ratio, k)?;
    if ambiguity == Ambiguity::SignOnly && v0 != 0 {
        return Ok(ComparisonReport::windowed(Verdict::Distinct, "valuation-mismatch", k)
            .with_detail(format!(
                "ratio has degree {}, and commutators and signs have degree 0",
                desc.alpha_scale() * v0
            )));
    }
    let order = desc.autom().finite_order(64);
    if let Some(r) = order {
        if let Some(report) = norm_obstruction(&desc, &lead, ambiguity, r, k) {
            return Ok(report);
        }
    }

    // Leading-coefficient certification: find an ambiguity monomial
    // eps * x^w t^v0 and a witness p with A(p)/p = lead / (eps x^w), so that
    // the whole lead is the monomial times the commutator [t, p].
    let mut chosen: Option<(BigRational, Vec<i64>, RationalFunction, RationalFunction)> = None;
    let lead_sign = if lead.lead_coeff().is_negative() { -1i64 } else { 1 };
    'search: for w in candidate_exponents(&desc, &lead, ambiguity, order) {
        for s in [lead_sign, -lead_sign] {
            let eps = BigRational::from_integer(s.into());
            let neg_w: Vec<i64> = w.iter().map(|x| -x).collect();
            let mu = lead.mul(&RationalFunction::monomial(neg_w, eps.clone()));
            if let Some(p) = theta_ratio_certificate(&desc, &mu, options.cert_radius) {
                chosen = Some((eps, w, mu, p));
                break 'search;
            }
        }
    }
    let Some((eps, w, mu, witness)) = chosen else {
        return Ok(ComparisonReport::windowed(Verdict::Compatible, "undecided", k)
            .with_detail(format!(
                "no certificate found for the leading coefficient {}",
                rf_label(&desc, &lead)
            )));
    };

    let mut certificates = Vec::new();
    certificates.push(format!(
        "ambiguity monomial {}",
        mono_label(&desc, &eps, &w, v0)
    ));
    if !mu.is_one() {
        certificates.push(format!(
            "lead correction [t, {}] = {}",
            rf_label(&desc, &witness),
            rf_label(&desc, &mu)
        ));
    }

    // Normalise the ratio to 1 + (tail): divide off the certified lead.
    let m_inv = {
        let neg_w: Vec<i64> = w.iter().map(|x| -x).collect();
        let exps = desc.twist(-v0).apply_exps(&neg_w);
        TwistedLaurentSeries::coeff_at(&desc, RationalFunction::monomial(exps, eps.clone()), -v0)
    };
    let f_inv = TwistedLaurentSeries::from_ratfun(&desc, mu.inv()?);
    let mut r = m_inv.mul(&f_inv.mul(ratio));
    debug_assert_eq!(r.val(), 0);
    debug_assert!(r.slice(0).is_some_and(|c| c.is_one()));

    // Tail analysis; the strategy depends on the order of the twist.
    let one = TwistedLaurentSeries::one(&desc);
    let scale = desc.alpha_scale().max(1);
    let tail_zero = (1..=k).all(|d| r.slice(d).is_some_and(|c| c.is_zero()));
    let literal = mu.is_one() && tail_zero;

    match order {
        _ if literal => {}
        Some(2) => {
            // For an order-two twist the field is a quaternion algebra over
            // its centre (the fixed functions in t^2), where the commutator
            // subgroup of the units is exactly the reduced-norm-one group,
            // and ambiguity monomials contribute only a degree-zero norm.
            // With the lead normalised to 1 the ratio is trivial through the
            // window if and only if Nrd(A + Bt) = A s(A) - t^2 B s(B) is.
            let (a_part, b_part) = even_odd_parts(&r);
            let nrd = a_part
                .mul(&theta_slicewise(&a_part))
                .sub(&TwistedLaurentSeries::coeff_at(&desc, RationalFunction::one(desc.nvars()), 2)
                    .mul(&b_part.mul(&theta_slicewise(&b_part))));
            if !nrd.compare_truncated(&one, k)? {
                let bad = (1..=k)
                    .find_map(|j| nrd.slice(j).filter(|c| !c.is_zero()).map(|c| (j, c)))
                    .expect("deviation witnessed inside the window");
                return Ok(ComparisonReport::windowed(
                    Verdict::Distinct,
                    "residue-obstruction",
                    k,
                )
                .with_detail(format!(
                    "reduced norm deviates from 1 at degree {}: {}",
                    scale * bad.0,
                    rf_label(&desc, &bad.1)
                )));
            }
            certificates.push(format!("reduced norm of the normalised ratio = 1 through degree {}", scale * k));
        }
        None => {
            // No power of the twist fixes the coefficient field, so every
            // tail slice can be cancelled by an explicit commutator with a
            // lattice monomial; once the lead is certified, the value is
            // trivial modulo commutators through any finite window.
            certificates.push("tail degrees are movable: no power of the twist is trivial".into());
        }
        Some(r_ord) => {
            // Finite order above two: eliminate degree by degree.  Slices at
            // degrees where the twist power is nontrivial are cancelled by a
            // lattice conjugation; at trivial powers only conjugation by t is
            // available and cancels exactly the trace-free part.
            let prec = (k + 2).max(2) as usize;
            for d in 1..=k {
                let Some(g) = r.slice(d) else {
                    return Err(KernelError::InsufficientPrecision {
                        needed: d + 1,
                        have: r.known_end(),
                    });
                };
                if g.is_zero() {
                    continue;
                }
                let thd = desc.twist(d);
                let m = if !thd.is_identity() {
                    let mat = thd.matrix();
                    let i = (0..desc.nvars())
                        .find(|&i| (0..desc.nvars()).any(|j| mat[j][i] != i64::from(i == j)))
                        .expect("nontrivial twist moves some generator");
                    let mut u = vec![0i64; desc.nvars()];
                    u[i] = 1;
                    let mut mu_exps = vec![0i64; desc.nvars()];
                    for (j, row) in mat.iter().enumerate() {
                        mu_exps[j] = i64::from(i == j) - row[i];
                    }
                    let mu_c = RationalFunction::monomial(mu_exps, BigRational::one());
                    let a = g.div(&mu_c.sub(&RationalFunction::one(desc.nvars())))?.neg();
                    let c_ser = TwistedLaurentSeries::from_ratfun(
                        &desc,
                        RationalFunction::monomial(u.clone(), BigRational::one()),
                    );
                    let c_inv = TwistedLaurentSeries::from_ratfun(
                        &desc,
                        RationalFunction::monomial(u.iter().map(|x| -x).collect(), BigRational::one()),
                    );
                    let u_ser = one.add(&TwistedLaurentSeries::coeff_at(&desc, a.clone(), d));
                    certificates.push(format!(
                        "[{}, 1 + ({})*t^{}] eliminates degree {}",
                        mono_label(&desc, &BigRational::one(), &u, 0),
                        rf_label(&desc, &a),
                        scale * d,
                        scale * d
                    ));
                    c_ser.mul(&u_ser).mul(&c_inv).mul(&u_ser.inv(prec)?)
                } else {
                    let mut tr = RationalFunction::zero(desc.nvars());
                    let mut acc = RationalFunction::zero(desc.nvars());
                    let mut img = g.clone();
                    for i in 0..r_ord {
                        if i > 0 {
                            img = desc.autom().apply_ratfun(&img);
                        }
                        tr = tr.add(&img);
                        acc = acc.add(&img.mul_scalar(&BigRational::from_integer(i.into())));
                    }
                    if !tr.is_zero() {
                        return Ok(ComparisonReport::windowed(Verdict::Compatible, "undecided", k)
                            .with_detail(format!(
                                "unresolved trace residue {} at degree {}",
                                rf_label(&desc, &tr),
                                scale * d
                            )));
                    }
                    let a = acc.mul_scalar(&BigRational::new((-1).into(), (r_ord as i64).into()));
                    let t_ser =
                        TwistedLaurentSeries::coeff_at(&desc, RationalFunction::one(desc.nvars()), 1);
                    let t_inv =
                        TwistedLaurentSeries::coeff_at(&desc, RationalFunction::one(desc.nvars()), -1);
                    let u_ser = one.add(&TwistedLaurentSeries::coeff_at(&desc, a.clone(), d));
                    certificates.push(format!(
                        "[t, 1 + ({})*t^{}] eliminates degree {}",
                        rf_label(&desc, &a),
                        scale * d,
                        scale * d
                    ));
                    t_ser.mul(&u_ser).mul(&t_inv).mul(&u_ser.inv(prec)?)
                };
                r = r.mul(&m);
            }
            if !r.compare_truncated(&one, k)? {
                return Ok(ComparisonReport::windowed(Verdict::Compatible, "undecided", k)
                    .with_detail("residual tail after elimination".into()));
            }
        }
    }

    let route = if literal { "literal-window" } else { "certified-window" };
    let mut report = ComparisonReport::windowed(Verdict::Equal, route, k);
    report.certificates = certificates;
    Ok(report)
}

/// Applies the twist to every slice: the automorphism of the coefficient
/// field extended to series fixing the series variable.
fn theta_slicewise(r: &TwistedLaurentSeries) -> TwistedLaurentSeries {
    let desc = r.desc().clone();
    let th = desc.twist(1);
    let mut acc = TwistedLaurentSeries::zero(&desc);
    for j in r.val()..r.support_end() {
        let c = r.slice(j).expect("stored slice inside the window");
        if !c.is_zero() {
            acc = acc.add(&TwistedLaurentSeries::coeff_at(&desc, th.apply_ratfun(&c), j));
        }
    }
    if r.is_exact() {
        acc
    } else {
        acc.truncate(r.known_end())
    }
}

/// Splits `r = A + B t` with `A` and `B` supported on even powers of the
/// series variable.
fn even_odd_parts(r: &TwistedLaurentSeries) -> (TwistedLaurentSeries, TwistedLaurentSeries) {
    let desc = r.desc().clone();
    let mut even = TwistedLaurentSeries::zero(&desc);
    let mut odd = TwistedLaurentSeries::zero(&desc);
    for j in r.val()..r.support_end() {
        let c = r.slice(j).expect("stored slice inside the window");
        if c.is_zero() {
            continue;
        }
        if j.rem_euclid(2) == 0 {
            even = even.add(&TwistedLaurentSeries::coeff_at(&desc, c, j));
        } else {
            odd = odd.add(&TwistedLaurentSeries::coeff_at(&desc, c, j - 1));
        }
    }
    if !r.is_exact() {
        even = even.truncate(r.known_end());
        odd = odd.truncate(r.known_end() - 1);
    }
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ratfun, MonomialAutomorphism};

    fn rf(src: &str) -> RationalFunction {
        parse_ratfun(src, &var_names(1)).unwrap()
    }

    fn inversion_group() -> GroupDescriptor {
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        GroupDescriptor::monomial_extension(th)
    }

    fn opts(k: i64) -> CompareOptions {
        CompareOptions { through_degree: k, cert_radius: 1 }
    }

    #[test]
    fn rational_values_up_to_sign() {
        let a = TorsionValue::Rational(rf("(3*x)/(x + 1)"));
        let b = TorsionValue::Rational(rf("(-3*x)/(x + 1)"));
        let rep = compare_torsion(&a, &b, Ambiguity::SignOnly, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Equal);
        let c = TorsionValue::Rational(rf("(3*x)/(x - 1)"));
        let rep = compare_torsion(&a, &c, Ambiguity::SignOnly, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct);
    }

    #[test]
    fn rational_values_up_to_monomial() {
        let f = rf("(x + 1)/(x - 2)");
        let a = TorsionValue::Rational(f.mul(&rf("x^2")).neg());
        let b = TorsionValue::Rational(f.clone());
        let rep = compare_torsion(&a, &b, Ambiguity::SignedMonomial, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Equal);
        let rep = compare_torsion(&a, &b, Ambiguity::SignOnly, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct);
        // coefficient 2 is not absorbed by the monomial ambiguity
        let c = TorsionValue::Rational(f.mul(&rf("2*x")));
        let rep = compare_torsion(&c, &b, Ambiguity::SignedMonomial, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct);
    }

    #[test]
    fn commutative_series_literal_monomial() {
        let g = GroupDescriptor::free_abelian(1);
        let u = TwistedLaurentSeries::one(&g)
            .sub(&TwistedLaurentSeries::coeff_at(&g, rf("x"), 1))
            .inv(14)
            .unwrap();
        let shifted = TwistedLaurentSeries::coeff_at(&g, rf("-x^2"), 3).mul(&u);
        let a = TorsionValue::Series(shifted);
        let b = TorsionValue::Series(u.clone());
        let rep = compare_torsion(&a, &b, Ambiguity::SignedMonomial, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Equal);
        assert_eq!(rep.route, "literal-window");
        let rep = compare_torsion(&a, &b, Ambiguity::SignOnly, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct);
        // a genuine difference: multiply by 1 + t
        let c = TorsionValue::Series(
            u.mul(&TwistedLaurentSeries::one(&g).add(&TwistedLaurentSeries::coeff_at(&g, rf("1"), 1))),
        );
        let rep = compare_torsion(&c, &b, Ambiguity::SignedMonomial, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct);
    }

    #[test]
    fn twisted_commutator_products_are_equal() {
        // u * v versus v * u differ by a genuine commutator and must be
        // recognised as equal, under either ambiguity.
        let g = inversion_group();
        let u = TwistedLaurentSeries::one(&g)
            .add(&TwistedLaurentSeries::coeff_at(&g, rf("x"), 1));
        let v = TwistedLaurentSeries::coeff_at(&g, rf("1"), 1)
            .add(&TwistedLaurentSeries::coeff_at(&g, rf("x - 1"), 2));
        let a = TorsionValue::Series(u.mul(&v));
        let b = TorsionValue::Series(v.mul(&u));
        for amb in [Ambiguity::SignOnly, Ambiguity::SignedMonomial] {
            let rep = compare_torsion(&a, &b, amb, &opts(8)).unwrap();
            assert_eq!(rep.verdict, Verdict::Equal, "{:?}: {:?}", amb, rep.details);
        }
    }

    #[test]
    fn twisted_lead_needs_witness() {
        // lead A(p)/p with p = 1 + 2x is a non-monomial coefficient that is
        // nevertheless commutator-trivial.
        let g = inversion_group();
        let p = rf("1 + 2*x");
        let lam = g.autom().apply_ratfun(&p).div(&p).unwrap();
        let s = TwistedLaurentSeries::one(&g)
            .add(&TwistedLaurentSeries::coeff_at(&g, rf("x + 3"), 1));
        let a = TorsionValue::Series(s.mul_coeff_left(&lam));
        let b = TorsionValue::Series(s.clone());
        let rep = compare_torsion(&a, &b, Ambiguity::SignOnly, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Equal, "{:?}", rep.details);
        assert_eq!(rep.route, "certified-window");
        assert!(rep.certificates.iter().any(|c| c.contains("[t, ")));
    }

    #[test]
    fn twisted_norm_obstruction() {
        // Scaling by 2 has twisted norm 4 and can never come from the
        // ambiguity or from commutators.
        let g = inversion_group();
        let s = TwistedLaurentSeries::one(&g)
            .add(&TwistedLaurentSeries::coeff_at(&g, rf("x"), 1));
        let a = TorsionValue::Series(s.mul_scalar(&BigRational::from_integer(2.into())));
        let b = TorsionValue::Series(s.clone());
        let rep = compare_torsion(&a, &b, Ambiguity::SignedMonomial, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct);
        assert_eq!(rep.route, "norm-obstruction");
    }

    #[test]
    fn twisted_residue_obstruction() {
        // 1 + x t^2 has a reduced-norm residue x + x^-1 at degree 2: no
        // commutator or monomial can produce it.
        let g = inversion_group();
        let a = TorsionValue::Series(
            TwistedLaurentSeries::one(&g).add(&TwistedLaurentSeries::coeff_at(&g, rf("x"), 2)),
        );
        let b = TorsionValue::Series(TwistedLaurentSeries::one(&g));
        let rep = compare_torsion(&a, &b, Ambiguity::SignedMonomial, &opts(8)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct, "{:?}", rep.details);
        assert_eq!(rep.route, "residue-obstruction");
    }

    #[test]
    fn twisted_valuation_mismatch_under_sign_ambiguity() {
        let g = inversion_group();
        let s = TwistedLaurentSeries::one(&g)
            .add(&TwistedLaurentSeries::coeff_at(&g, rf("x"), 1));
        let a = TorsionValue::Series(s.mul(&TwistedLaurentSeries::coeff_at(&g, rf("1"), 1)));
        let b = TorsionValue::Series(s.clone());
        let rep = compare_torsion(&a, &b, Ambiguity::SignOnly, &opts(6)).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct);
        assert_eq!(rep.route, "valuation-mismatch");
    }

    #[test]
    fn infinite_order_twist_can_stay_undecided() {
        // With a hyperbolic twist there is no norm map; an uncertified lead
        // comes back as compatible rather than a false verdict either way.
        let th = MonomialAutomorphism::new(vec![vec![2, 1], vec![1, 1]]).unwrap();
        let g = GroupDescriptor::monomial_extension(th);
        let two = var_names(2);
        let lam = parse_ratfun("1 + x", &two).unwrap();
        let s = TwistedLaurentSeries::one(&g)
            .add(&TwistedLaurentSeries::coeff_at(&g, parse_ratfun("y", &two).unwrap(), 1));
        let a = TorsionValue::Series(s.mul_coeff_left(&lam));
        let b = TorsionValue::Series(s.clone());
        let rep = compare_torsion(&a, &b, Ambiguity::SignedMonomial, &opts(5)).unwrap();
        assert_eq!(rep.verdict, Verdict::Compatible);
    }

    #[test]
    fn hyperbolic_twist_tail_elimination() {
        // Every degree is movable when no power of the twist is trivial, so a
        // commutator tail over the hyperbolic twist is fully certified.
        let th = MonomialAutomorphism::new(vec![vec![2, 1], vec![1, 1]]).unwrap();
        let g = GroupDescriptor::monomial_extension(th);
        let two = var_names(2);
        let u = TwistedLaurentSeries::one(&g)
            .add(&TwistedLaurentSeries::coeff_at(&g, parse_ratfun("x", &two).unwrap(), 1));
        let v = TwistedLaurentSeries::one(&g)
            .add(&TwistedLaurentSeries::coeff_at(&g, parse_ratfun("y - 1", &two).unwrap(), 2));
        let a = TorsionValue::Series(u.mul(&v));
        let b = TorsionValue::Series(v.mul(&u));
        let rep = compare_torsion(&a, &b, Ambiguity::SignOnly, &opts(6)).unwrap();
        assert_eq!(rep.verdict, Verdict::Equal, "{:?}", rep.details);
    }

    #[test]
    fn mixed_kinds_are_rejected() {
        let a = TorsionValue::Rational(rf("x"));
        let b = TorsionValue::Series(TwistedLaurentSeries::one(&GroupDescriptor::free_abelian(1)));
        assert!(compare_torsion(&a, &b, Ambiguity::SignOnly, &opts(4)).is_err());
    }
}
