//! Dense matrices and row-vector helpers.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::LinalgError;
use crate::scalar::{Field, Scalar};

/// A dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            for x in &r {
                if x.field() != field {
                    return Err(LinalgError::FieldMismatch);
                }
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    /// Integer-entry constructor for tests and fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_i64(x))).collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix: `x · self`.
    pub fn left_apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.rows, "row vector length mismatch");
        let mut out = vec![self.field.zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = &*o + &(xi * m);
                }
            }
        }
        out
    }

    /// Matrix times column vector: `self · y`.
    pub fn right_apply(&self, y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(y.len(), self.cols, "column vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), y, self.field)).collect()
    }

    pub fn kronecker(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n].iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// A basis of `{y : self · y = 0}`.
    pub fn right_kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut y = vec![self.field.zero(); self.cols];
            y[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                y[p] = -r.get(i, free);
            }
            out.push(y);
        }
        out
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// Scales a nonzero vector so its first nonzero entry is one.
pub fn normalize_direction(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv()?;
    Some(scale_vec(&inv, v))
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// A set of linearly independent row vectors with a fast coordinate map.
///
/// Coordinates are computed from the pivot columns of the echelon form and
/// then checked against the full vector.
#[derive(Clone, Debug)]
pub struct RowBasis {
    field: Field,
    rows: Vec<Vec<Scalar>>,
    cols: Vec<usize>,
    inv: Matrix,
}

impl RowBasis {
    /// Returns `None` if the rows are dependent.
    pub fn new(field: Field, dim: usize, rows: Vec<Vec<Scalar>>) -> Option<RowBasis> {
        let k = rows.len();
        let m = Matrix::from_rows(field, dim, rows.clone()).ok()?;
        let (_, pivots) = m.rref();
        if pivots.len() != k {
            return None;
        }
        let mut sq = Matrix::zeros(field, k, k);
        for i in 0..k {
            for (c, &p) in pivots.iter().enumerate() {
                sq.set(i, c, rows[i][p].clone());
            }
        }
        let inv = sq.inverse()?;
        Some(RowBasis { field, rows, cols: pivots, inv })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Coefficients `c` with `c · rows = y`, if `y` lies in the span.
    pub fn coords(&self, y: &[Scalar]) -> Option<Vec<Scalar>> {
        let proj: Vec<Scalar> = self.cols.iter().map(|&p| y[p].clone()).collect();
        let c = self.inv.left_apply(&proj);
        let mut back = vec![self.field.zero(); y.len()];
        for (ci, r) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for (b, x) in back.iter_mut().zip(r) {
                *b = &*b + &(ci * x);
            }
        }
        if back.as_slice() == y {
            Some(c)
        } else {
            None
        }
    }
}
