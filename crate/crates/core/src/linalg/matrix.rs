//! Dense matrices over a skew field, with the context passed to every
//! operation.  Row-major storage; all shapes are checked.

use crate::error::{KernelError, Result};

use super::field::SkewField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> SkewMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(KernelError::Shape("ragged matrix rows".into()));
        }
        Ok(SkewMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        SkewMatrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        SkewMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> SkewMatrix<U> {
        SkewMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Copies the block with the given row and column index sets.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        SkewMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.at(row_idx[i], col_idx[j]).clone()
        })
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(KernelError::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(SkewMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(KernelError::Shape("hstack row mismatch".into()));
        }
        let out = SkewMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        });
        Ok(out)
    }
}

impl<T: Clone> SkewMatrix<T> {
    pub fn identity<F>(f: &F, n: usize) -> Self
    where
        F: SkewField<Elem = T>,
    {
        SkewMatrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn zeros<F>(f: &F, rows: usize, cols: usize) -> Self
    where
        F: SkewField<Elem = T>,
    {
        SkewMatrix::filled(rows, cols, f.zero())
    }

    pub fn add<F>(&self, f: &F, other: &Self) -> Result<Self>
    where
        F: SkewField<Elem = T>,
    {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(KernelError::Shape("matrix addition shape mismatch".into()));
        }
        Ok(SkewMatrix::from_fn(self.rows, self.cols, |i, j| {
            f.add(self.at(i, j), other.at(i, j))
        }))
    }

    pub fn sub<F>(&self, f: &F, other: &Self) -> Result<Self>
    where
        F: SkewField<Elem = T>,
    {
        Ok(self.add(f, &other.map(|x| f.neg(x)))?)
    }

    pub fn mul<F>(&self, f: &F, other: &Self) -> Result<Self>
    where
        F: SkewField<Elem = T>,
    {
        if self.cols != other.rows {
            return Err(KernelError::Shape("matrix product shape mismatch".into()));
        }
        Ok(SkewMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                acc = f.add(&acc, &f.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        }))
    }

    pub fn render<F>(&self, f: &F) -> String
    where
        F: SkewField<Elem = T>,
    {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| f.render(self.at(i, j))).collect();
            out.push_str(&row.join("; "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalFunction;
    use crate::linalg::field::RatFunField;

    fn f() -> RatFunField {
        RatFunField { nvars: 1 }
    }

    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_int(1, n)
    }

    #[test]
    fn basic_shape_ops() {
        let field = f();
        let m = SkewMatrix::from_rows(vec![vec![c(1), c(2)], vec![c(3), c(4)]]).unwrap();
        let id = SkewMatrix::identity(&field, 2);
        assert_eq!(m.mul(&field, &id).unwrap(), m);
        let sq = m.mul(&field, &m).unwrap();
        assert_eq!(*sq.at(0, 0), c(7));
        assert_eq!(*sq.at(1, 1), c(22));
        assert!(SkewMatrix::from_rows(vec![vec![c(1)], vec![c(2), c(3)]]).is_err());
        let st = m.vstack(&id).unwrap();
        assert_eq!(st.nrows(), 4);
        let h = m.hstack(&id).unwrap();
        assert_eq!(h.ncols(), 4);
        assert_eq!(*h.at(1, 3), c(1));
        let sub = h.submatrix(&[1], &[0, 3]);
        assert_eq!(sub, SkewMatrix::from_rows(vec![vec![c(3), c(1)]]).unwrap());
    }
}
