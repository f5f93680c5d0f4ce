//! Polynomial gcd and exact division for multivariate polynomials.
//!
//! The gcd uses the primitive polynomial remainder sequence viewed recursively:
//! both inputs are treated as univariate in their top active variable with
//! coefficients in the remaining variables, contents are split off recursively,
//! and pseudo-remainders drive the Euclidean loop.  Exact but not asymptotically
//! fancy; the matrices and chain complexes in this crate stay small enough that
//! this is the right trade.

use super::multipoly::MultiPoly;

/// Exact division: returns `Some(q)` with `a = q * b` when `b` divides `a`
/// termwise-exactly, else `None`.  Works on Laurent inputs by clearing the
/// minimal exponents first.
pub fn divide_exact(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    assert_eq!(a.nvars(), b.nvars());
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(MultiPoly::zero(a.nvars()));
    }
    // Shift both to genuine polynomials; record the net monomial adjustment.
    let ma = a.min_exponents().unwrap();
    let mb = b.min_exponents().unwrap();
    let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };
    let ap = a.mul_monomial(&neg(&ma));
    let bp = b.mul_monomial(&neg(&mb));
    let q = divide_exact_poly(&ap, &bp)?;
    let shift: Vec<i64> = ma.iter().zip(&mb).map(|(x, y)| x - y).collect();
    Some(q.mul_monomial(&shift))
}

fn divide_exact_poly(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let n = a.nvars();
    let mut rem = a.clone();
    let mut quot = MultiPoly::zero(n);
    let (blead_e, blead_c) = {
        let (e, c) = b.leading_term().unwrap();
        (e.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (rlead_e, rlead_c) = {
            let (e, c) = rem.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let diff: Vec<i64> = rlead_e.iter().zip(&blead_e).map(|(x, y)| x - y).collect();
        if diff.iter().any(|&d| d < 0) {
            return None;
        }
        let t = MultiPoly::monomial(diff, rlead_c / blead_c.clone());
        rem = rem.sub(&t.mul(b));
        quot = quot.add(&t);
    }
    Some(quot)
}

/// Gcd of two Laurent polynomials, normalized so the lexicographically leading
/// coefficient is `1`.  Monomial factors (units in the Laurent ring) are
/// stripped, so the result is a genuine polynomial with nonzero constant
/// candidate content removed.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.nvars(), b.nvars());
    let n = a.nvars();
    if a.is_zero() && b.is_zero() {
        return MultiPoly::zero(n);
    }
    let strip = |p: &MultiPoly| -> MultiPoly {
        if p.is_zero() {
            return p.clone();
        }
        let m = p.min_exponents().unwrap();
        let neg: Vec<i64> = m.iter().map(|x| -x).collect();
        p.mul_monomial(&neg)
    };
    let g = gcd_poly(&strip(a), &strip(b));
    monic_lex(&g)
}

/// Scales a nonzero polynomial so its lex-leading coefficient is 1.
pub fn monic_lex(p: &MultiPoly) -> MultiPoly {
    match p.leading_term() {
        None => p.clone(),
        Some((_, c)) => p.div_scalar(&c.clone()),
    }
}

fn gcd_poly(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    match (a.top_variable(), b.top_variable()) {
        (None, _) | (_, None) => MultiPoly::one(n),
        (Some(va), Some(vb)) => {
            let v = va.max(vb);
            let (ca, pa) = split_content(a, v);
            let (cb, pb) = split_content(b, v);
            let cg = gcd_poly(&ca, &cb);
            let pg = primitive_prs(&pa, &pb, v);
            cg.mul(&pg)
        }
    }
}

/// Writes `p = content * primitive` with respect to variable `v`: the content
/// is the recursive gcd of the `x_v`-coefficients.
fn split_content(p: &MultiPoly, v: usize) -> (MultiPoly, MultiPoly) {
    let n = p.nvars();
    let deg = p.degree_in(v).unwrap_or(0);
    let mut content = MultiPoly::zero(n);
    for j in 0..=deg {
        let c = p.coeff_of_power(v, j);
        if !c.is_zero() {
            content = gcd_poly(&content, &c);
        }
    }
    if content.is_zero() {
        return (MultiPoly::zero(n), MultiPoly::zero(n));
    }
    let prim = divide_exact(p, &content).expect("content must divide");
    (content, prim)
}

/// Primitive PRS on two polynomials that are primitive with respect to `v`.
fn primitive_prs(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let (mut f, mut g) = if a.degree_in(v).unwrap_or(0) >= b.degree_in(v).unwrap_or(0) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if g.is_zero() {
            let (_, prim) = split_content(&f, v);
            return prim;
        }
        if g.degree_in(v).unwrap_or(0) == 0 {
            // g is free of x_v and primitive, i.e. a unit times content 1.
            return MultiPoly::one(a.nvars());
        }
        let r = pseudo_rem(&f, &g, v);
        let r_prim = if r.is_zero() { r } else { split_content(&r, v).1 };
        f = g;
        g = r_prim;
    }
}

/// Pseudo-remainder of `f` by `g` in variable `v`: the remainder of
/// `lc_v(g)^(deg f - deg g + 1) * f` under ordinary division, which stays
/// polynomial.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let df = f.degree_in(v).expect("f nonzero");
    let dg = g.degree_in(v).expect("g nonzero");
    assert!(df >= dg && dg >= 1);
    let lc_g = g.coeff_of_power(v, dg);
    let mut rem = f.clone();
    let scale_pow = (df - dg + 1) as u32;
    rem = rem.mul(&lc_g.pow(scale_pow));
    loop {
        let dr = match rem.degree_in(v) {
            None => break,
            Some(d) => d,
        };
        if dr < dg {
            break;
        }
        let lc_r = rem.coeff_of_power(v, dr);
        // rem -= (lc_r / lc_g) * x_v^(dr-dg) * g; division is exact because rem
        // has been pre-scaled by a sufficient power of lc_g.
        let q = divide_exact(&lc_r, &lc_g).expect("pseudo-division coefficient not exact");
        let mut shift = vec![0i64; f.nvars()];
        shift[v] = dr - dg;
        rem = rem.sub(&q.mul_monomial(&shift).mul(g));
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn x() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = x().pow(2).sub(&MultiPoly::one(1)); // x^2 - 1
        let b = x().sub(&MultiPoly::one(1)); // x - 1
        let quo = divide_exact(&a, &b).unwrap();
        assert_eq!(quo, x().add(&MultiPoly::one(1)));
        assert!(divide_exact(&b, &a).is_none());
    }

    #[test]
    fn univariate_gcd() {
        // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        let a = x().pow(2).sub(&MultiPoly::one(1));
        let b = x().pow(2).sub(&x().mul_scalar(&q(2))).add(&MultiPoly::one(1));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, x().sub(&MultiPoly::one(1)));
    }

    #[test]
    fn multivariate_gcd_with_content() {
        // a = (y+1)*(x+y), b = (y+1)*(x-y): gcd = y+1
        let xv = MultiPoly::var(2, 0);
        let yv = MultiPoly::var(2, 1);
        let y1 = yv.add(&MultiPoly::one(2));
        let a = y1.mul(&xv.add(&yv));
        let b = y1.mul(&xv.sub(&yv));
        assert_eq!(poly_gcd(&a, &b), y1);
    }

    #[test]
    fn multivariate_gcd_nontrivial_in_top_variable() {
        // a = (x+y)^2*(x-1), b = (x+y)*(x+1): gcd = x+y
        let xv = MultiPoly::var(2, 0);
        let yv = MultiPoly::var(2, 1);
        let s = xv.add(&yv);
        let a = s.pow(2).mul(&xv.sub(&MultiPoly::one(2)));
        let b = s.mul(&xv.add(&MultiPoly::one(2)));
        assert_eq!(poly_gcd(&a, &b), s);
    }

    #[test]
    fn gcd_strips_monomial_units() {
        // Laurent inputs: gcd(x^-1*(x-1), x*(x-1)) should be x-1 up to units.
        let a = x().sub(&MultiPoly::one(1)).mul_monomial(&[-1]);
        let b = x().sub(&MultiPoly::one(1)).mul_monomial(&[1]);
        assert_eq!(poly_gcd(&a, &b), x().sub(&MultiPoly::one(1)));
    }

    #[test]
    fn gcd_agrees_with_evaluation_probe() {
        // Independent check of reduction: (x^2-1)/(x-1) evaluated at sample
        // points equals x+1 there.
        let a = x().pow(2).sub(&MultiPoly::one(1));
        let b = x().sub(&MultiPoly::one(1));
        let g = poly_gcd(&a, &b);
        let ra = divide_exact(&a, &g).unwrap();
        let rb = divide_exact(&b, &g).unwrap();
        for t in [2i64, 3, 5, 11] {
            let pt = [q(t)];
            let lhs = ra.eval(&pt).unwrap() * rb.eval(&pt).unwrap();
            // (a/g)*(b/g) * g^2 = a*b
            let rhs = a.eval(&pt).unwrap() * b.eval(&pt).unwrap();
            let g2 = g.eval(&pt).unwrap();
            assert_eq!(lhs * g2.clone() * g2, rhs);
        }
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a = x().pow(3).add(&x()).add(&MultiPoly::one(1));
        let b = x().pow(2).add(&MultiPoly::one(1));
        assert_eq!(poly_gcd(&a, &b), MultiPoly::one(1));
    }
}
