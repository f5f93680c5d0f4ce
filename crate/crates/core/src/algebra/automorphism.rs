//! Monomial automorphisms of a Laurent polynomial ring.
//!
//! An integer matrix `A` with determinant `±1` acts on monomials by
//! `x^e -> x^(A e)`; equivalently the `j`-th variable is sent to the monomial
//! whose exponent vector is the `j`-th column of `A`.  These are exactly the
//! ring automorphisms that permute the monomial group, and they extend to the
//! rational function field coefficientwise.

use crate::error::{KernelError, Result};

use super::multipoly::MultiPoly;
use super::ratfun::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAutomorphism {
    n: usize,
    /// Row-major matrix: `matrix[i][j]` is the exponent of `x_i` in the image
    /// of `x_j`.
    matrix: Vec<Vec<i64>>,
    det: i64,
}

fn int_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        _ => {
            let mut acc: i128 = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * (m[0][j] as i128) * int_det(&minor);
            }
            acc
        }
    }
}

impl MonomialAutomorphism {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(KernelError::Shape("automorphism matrix must be square".into()));
        }
        let d = int_det(&matrix);
        if d != 1 && d != -1 {
            return Err(KernelError::Invalid(format!(
                "automorphism matrix must have determinant +/-1, got {d}"
            )));
        }
        Ok(MonomialAutomorphism { n, matrix, det: d as i64 })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        MonomialAutomorphism { n, matrix, det: 1 }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Vec<Vec<i64>> {
        &self.matrix
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Exponent-vector action `e -> A e`.
    pub fn apply_exps(&self, e: &[i64]) -> Vec<i64> {
        assert_eq!(e.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.matrix[i]
                    .iter()
                    .zip(e)
                    .map(|(a, b)| a.checked_mul(*b).expect("exponent overflow"))
                    .sum()
            })
            .collect()
    }

    pub fn apply_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.map_exponents(|e| self.apply_exps(e))
    }

    pub fn apply_ratfun(&self, f: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.apply_poly(f.num()), self.apply_poly(f.den()))
    }

    /// Composition: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                self.matrix[i][k]
                                    .checked_mul(other.matrix[k][j])
                                    .expect("matrix entry overflow")
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        MonomialAutomorphism { n, matrix, det: self.det * other.det }
    }

    /// Inverse via the adjugate (integral because the determinant is `±1`).
    pub fn inverse(&self) -> Self {
        let n = self.n;
        if n == 0 {
            return self.clone();
        }
        let mut inv = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| self.matrix[r][c])
                            .collect()
                    })
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let cof = sign * int_det(&minor) * (self.det as i128);
                inv[i][j] = i64::try_from(cof).expect("inverse entry overflow");
            }
        }
        MonomialAutomorphism { n, matrix: inv, det: self.det }
    }

    /// Integer power (negative exponents via the inverse).
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// Smallest `r` in `1..=max` with `A^r = I`, if any.  Powers are tracked
    /// in 128-bit integers; once entries grow past that range the spectral
    /// radius certainly exceeds 1 and the search reports `None` early.
    pub fn finite_order(&self, max: usize) -> Option<usize> {
        const LIMIT: i128 = 1 << 100;
        let n = self.n;
        let a: Vec<Vec<i128>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&v| v as i128).collect())
            .collect();
        let mut acc = a.clone();
        for r in 1..=max {
            let is_id = (0..n).all(|i| (0..n).all(|j| acc[i][j] == i128::from(i == j)));
            if is_id {
                return Some(r);
            }
            let mut next = vec![vec![0i128; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s: i128 = 0;
                    for k in 0..n {
                        s = s.checked_add(a[i][k].checked_mul(acc[k][j])?)?;
                    }
                    if s.abs() > LIMIT {
                        return None;
                    }
                    next[i][j] = s;
                }
            }
            acc = next;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(MonomialAutomorphism::new(vec![vec![2]]).is_err());
        assert!(MonomialAutomorphism::new(vec![vec![1, 0], vec![0, 3]]).is_err());
    }

    #[test]
    fn inversion_automorphism_on_one_variable() {
        // x -> x^-1 has order two and fixes x + x^-1.
        let th = MonomialAutomorphism::new(vec![vec![-1]]).unwrap();
        assert_eq!(th.finite_order(10), Some(2));
        let p = MultiPoly::monomial(vec![1], q(1)).add(&MultiPoly::monomial(vec![-1], q(1)));
        assert_eq!(th.apply_poly(&p), p);
        let f = RationalFunction::var(1, 0).add(&RationalFunction::one(1));
        // theta(x + 1) = x^-1 + 1 = (1 + x)/x
        let img = th.apply_ratfun(&f);
        let expect = f.div(&RationalFunction::var(1, 0)).unwrap();
        assert_eq!(img, expect);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let a = MonomialAutomorphism::new(vec![vec![2, 1], vec![1, 1]]).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
        assert_eq!(a.pow(3), a.compose(&a).compose(&a));
        assert_eq!(a.pow(-2), a.inverse().compose(&a.inverse()));
    }

    #[test]
    fn field_automorphism_respects_arithmetic() {
        let a = MonomialAutomorphism::new(vec![vec![0, 1], vec![1, 0]]).unwrap(); // swap x,y
        let x = RationalFunction::var(2, 0);
        let y = RationalFunction::var(2, 1);
        let f = x.add(&y.pow(2).unwrap()).div(&x.sub(&y)).unwrap();
        let g = y.mul(&x).add(&RationalFunction::one(2));
        assert_eq!(
            a.apply_ratfun(&f.mul(&g)),
            a.apply_ratfun(&f).mul(&a.apply_ratfun(&g))
        );
        assert_eq!(
            a.apply_ratfun(&f.add(&g)),
            a.apply_ratfun(&f).add(&a.apply_ratfun(&g))
        );
    }

    #[test]
    fn infinite_order_matrix_has_no_finite_order() {
        let a = MonomialAutomorphism::new(vec![vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(a.finite_order(50), None);
    }
}
