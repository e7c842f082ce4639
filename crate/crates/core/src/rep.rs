//! Linear representations `(u, μ, v)` of recognizable series.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::SeriesError;
use crate::matrix::{dot, Matrix};
use crate::scalar::{Field, Scalar};
use crate::word::{Alphabet, Word};

/// A linear representation: `S(w) = u · μ(w_1) ⋯ μ(w_l) · v`.
///
/// `u` is a row vector and `v` a column vector, both of length `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRep {
    alphabet: Alphabet,
    field: Field,
    u: Vec<Scalar>,
    mu: Vec<Matrix>,
    v: Vec<Scalar>,
}

impl LinearRep {
    pub fn new(alphabet: Alphabet, field: Field, u: Vec<Scalar>, mu: Vec<Matrix>, v: Vec<Scalar>) -> Result<LinearRep, SeriesError> {
        let n = u.len();
        if v.len() != n {
            return Err(SeriesError::DimensionMismatch { expected: n, found: v.len() });
        }
        if mu.len() != alphabet.len() {
            return Err(SeriesError::AlphabetMismatch);
        }
        for m in &mu {
            if m.rows() != n || m.cols() != n {
                return Err(SeriesError::DimensionMismatch { expected: n, found: m.rows().max(m.cols()) });
            }
            if m.field() != field {
                return Err(SeriesError::FieldMismatch);
            }
        }
        if u.iter().chain(&v).any(|x| x.field() != field) {
            return Err(SeriesError::FieldMismatch);
        }
        Ok(LinearRep { alphabet, field, u, mu, v })
    }

    /// Integer-entry constructor for fixtures.
    pub fn from_i64(alphabet: Alphabet, field: Field, u: &[i64], mu: &[&[&[i64]]], v: &[i64]) -> Result<LinearRep, SeriesError> {
        let u = u.iter().map(|&x| field.from_i64(x)).collect();
        let v = v.iter().map(|&x| field.from_i64(x)).collect();
        let mu = mu
            .iter()
            .map(|m| if m.is_empty() { Matrix::zeros(field, 0, 0) } else { Matrix::from_i64(field, m) })
            .collect();
        LinearRep::new(alphabet, field, u, mu, v)
    }

    /// The representation of the zero series with dimension 0.
    pub fn zero(alphabet: Alphabet, field: Field) -> LinearRep {
        let mu = vec![Matrix::zeros(field, 0, 0); alphabet.len()];
        LinearRep { alphabet, field, u: Vec::new(), mu, v: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    pub fn v(&self) -> &[Scalar] {
        &self.v
    }

    pub fn mu(&self, letter: usize) -> &Matrix {
        &self.mu[letter]
    }

    pub fn mus(&self) -> &[Matrix] {
        &self.mu
    }

    /// `S(w)`.
    pub fn eval(&self, w: &Word) -> Result<Scalar, SeriesError> {
        let idx = self.alphabet.indices(w)?;
        Ok(self.eval_indices(&idx))
    }

    pub fn eval_indices(&self, w: &[usize]) -> Scalar {
        let row = self.row_after(w);
        dot(&row, &self.v, self.field)
    }

    /// `u · μ(w)`.
    pub fn row_after(&self, w: &[usize]) -> Vec<Scalar> {
        let mut row = self.u.clone();
        for &x in w {
            row = self.mu[x].left_apply(&row);
        }
        row
    }

    /// `μ(w) · v`.
    pub fn column_after(&self, w: &[usize]) -> Vec<Scalar> {
        let mut col = self.v.clone();
        for &x in w.iter().rev() {
            col = self.mu[x].right_apply(&col);
        }
        col
    }

    /// Coefficients of every word up to `maxlen`, in enumeration order.
    pub fn coefficients(&self, maxlen: usize) -> Vec<(Word, Scalar)> {
        let k = self.alphabet.len();
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<usize>, Vec<Scalar>)> = vec![(Vec::new(), self.u.clone())];
        for depth in 0..=maxlen {
            for (w, row) in &layer {
                out.push((self.alphabet.word_from_indices(w), dot(row, &self.v, self.field)));
            }
            if depth == maxlen {
                break;
            }
            let mut next = Vec::with_capacity(layer.len() * k);
            for (w, row) in &layer {
                for x in 0..k {
                    let mut w2 = w.clone();
                    w2.push(x);
                    next.push((w2, self.mu[x].left_apply(row)));
                }
            }
            layer = next;
        }
        out
    }

    /// Change of basis: returns `(u B, B⁻¹ μ B, B⁻¹ v)`.
    pub fn conjugate(&self, b: &Matrix, b_inv: &Matrix) -> LinearRep {
        let u = b.left_apply(&self.u);
        let v = b_inv.right_apply(&self.v);
        let mu = self.mu.iter().map(|m| b_inv.mul(m).mul(b)).collect();
        LinearRep { alphabet: self.alphabet.clone(), field: self.field, u, mu, v }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary() -> Alphabet {
        Alphabet::from_str_letters("x").unwrap()
    }

    #[test]
    fn evaluates_powers_of_two() {
        let r = LinearRep::from_i64(unary(), Field::Rational, &[1], &[&[&[2]]], &[1]).unwrap();
        for n in 0..6 {
            let w = Word::new(vec!['x'; n]);
            assert_eq!(r.eval(&w).unwrap(), Field::Rational.from_i64(1 << n));
        }
        assert_eq!(r.eval(&Word::parse("y")), Err(SeriesError::AlphabetMismatch));
    }

    #[test]
    fn swap_rep_alternates() {
        let r = LinearRep::from_i64(unary(), Field::Rational, &[1, 0], &[&[&[0, 1], &[1, 0]]], &[2, 3]).unwrap();
        let cs: Vec<_> = r.coefficients(3).into_iter().map(|(_, c)| c).collect();
        let f = Field::Rational;
        assert_eq!(cs, vec![f.from_i64(2), f.from_i64(3), f.from_i64(2), f.from_i64(3)]);
    }

    #[test]
    fn shape_checks() {
        let f = Field::Rational;
        let bad = LinearRep::from_i64(unary(), f, &[1, 0], &[&[&[1]]], &[1, 0]);
        assert!(matches!(bad, Err(SeriesError::DimensionMismatch { .. })));
        let zero = LinearRep::zero(unary(), f);
        assert_eq!(zero.eval(&Word::parse("xx")).unwrap(), f.zero());
    }

    #[test]
    fn column_matches_row() {
        let ab = Alphabet::from_str_letters("ab").unwrap();
        let r = LinearRep::from_i64(ab, Field::Rational, &[1, 2], &[&[&[1, 1], &[0, 2]], &[&[3, 0], &[1, -1]]], &[1, -1]).unwrap();
        let w = [0, 1, 1, 0];
        let a = dot(&r.row_after(&w), r.v(), r.field());
        let b = dot(r.u(), &r.column_after(&w), r.field());
        assert_eq!(a, b);
    }
}
