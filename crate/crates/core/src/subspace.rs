//! Subspaces in canonical echelon form and finite unions of them.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::LinalgError;
use crate::matrix::{is_zero_vec, Matrix};
use crate::scalar::{Field, Scalar};

/// A subspace of `K^n`, stored as the nonzero rows of its reduced row echelon form.
///
/// Two spans of the same space always produce equal values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let m = Matrix::identity(field, ambient);
        Subspace { field, ambient, basis: m.to_rows(), pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace, LinalgError> {
        let m = Matrix::from_rows(field, ambient, vectors.to_vec())?;
        Ok(Subspace::from_matrix_rows(&m))
    }

    /// Row space of a matrix.
    pub fn from_matrix_rows(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { field: m.field(), ambient: m.cols(), basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Pivot columns; `basis[i][pivots[j]] == δ_ij`.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (r, x) in rest.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r = &*r - &(ci * x);
                }
            }
        }
        is_zero_vec(&rest).then_some(c)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.basis.iter().all(|b| self.contains_vector(b))
    }

    /// Image under right multiplication by `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "image: matrix shape mismatch");
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(|b| m.left_apply(b)).collect();
        let mm = Matrix::from_rows(self.field, m.cols(), rows).expect("consistent shapes");
        Subspace::from_matrix_rows(&mm)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, &rows).expect("consistent shapes")
    }

    /// Columns `N` with `self = {y : y · N = 0}`, returned as vectors.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        let m = Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("consistent shapes");
        m.right_kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let mut cols = self.annihilator();
        cols.extend(other.annihilator());
        kernel_of_columns(self.field, self.ambient, &cols)
    }

    /// `{z : z · m ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "preimage: matrix shape mismatch");
        let cols: Vec<Vec<Scalar>> = self.annihilator().iter().map(|c| m.right_apply(c)).collect();
        kernel_of_columns(self.field, m.rows(), &cols)
    }

    /// Adds one vector to the span.
    pub fn extend(&self, v: &[Scalar]) -> Subspace {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Subspace::span(self.field, self.ambient, &rows).expect("consistent shapes")
    }
}

/// `{y : y · c = 0 for every c in cols}`.
fn kernel_of_columns(field: Field, ambient: usize, cols: &[Vec<Scalar>]) -> Subspace {
    if cols.is_empty() {
        return Subspace::full(field, ambient);
    }
    let m = Matrix::from_rows(field, ambient, cols.to_vec()).expect("consistent shapes");
    let ker = m.right_kernel();
    Subspace::span(field, ambient, &ker).expect("consistent shapes")
}

/// The order used inside a [`UnionOfSubspaces`]: larger dimension first, then basis rows lexicographically.
pub fn canonical_cmp(a: &Subspace, b: &Subspace) -> Ordering {
    b.dim().cmp(&a.dim()).then_with(|| a.basis.cmp(&b.basis))
}

/// A finite union of subspaces of `K^n`, irredundant and canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnionOfSubspaces {
    field: Field,
    ambient: usize,
    components: Vec<Subspace>,
}

impl UnionOfSubspaces {
    pub fn empty(field: Field, ambient: usize) -> UnionOfSubspaces {
        UnionOfSubspaces { field, ambient, components: Vec::new() }
    }

    /// Drops components contained in others and sorts the rest.
    pub fn normalize(field: Field, ambient: usize, parts: Vec<Subspace>) -> Result<UnionOfSubspaces, LinalgError> {
        for p in &parts {
            if p.ambient != ambient {
                return Err(LinalgError::DimensionMismatch { expected: ambient, found: p.ambient });
            }
            if p.field != field {
                return Err(LinalgError::FieldMismatch);
            }
        }
        let mut sorted = parts;
        sorted.sort_by(canonical_cmp);
        sorted.dedup();
        let mut kept: Vec<Subspace> = Vec::new();
        for s in sorted {
            if !kept.iter().any(|k| k.contains(&s)) {
                kept.push(s);
            }
        }
        Ok(UnionOfSubspaces { field, ambient, components: kept })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Maximum component dimension; `None` for the empty union.
    pub fn dimension(&self) -> Option<usize> {
        self.components.first().map(Subspace::dim)
    }

    /// Whether a single component contains `s`.
    ///
    /// Over an infinite field a subspace inside a finite union lies inside one member.
    /// Over `F_p` that can fail for `dim(s) >= 2`, so callers there restrict to lines.
    pub fn contains_subspace(&self, s: &Subspace) -> bool {
        self.component_containing(s).is_some()
    }

    pub fn component_containing(&self, s: &Subspace) -> Option<usize> {
        self.components.iter().position(|c| c.contains(s))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.components.iter().any(|c| c.contains_vector(v))
    }

    /// Set inclusion `self ⊆ other`, component by component.
    pub fn is_subset_of(&self, other: &UnionOfSubspaces) -> bool {
        self.components.iter().all(|c| other.contains_subspace(c))
    }

    /// `(c_n, c_{n-1}, ..., c_0)`: component counts by dimension, largest first.
    pub fn profile(&self) -> Vec<usize> {
        let mut p = alloc::vec![0; self.ambient + 1];
        for c in &self.components {
            p[self.ambient - c.dim()] += 1;
        }
        p
    }
}
