//! Minimization by left/right reduction, Hankel rank, and the good basis.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::MinimizationError;
use crate::matrix::{dot, is_zero_vec, Matrix, RowBasis};
use crate::rep::LinearRep;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;
use crate::word::{Alphabet, Word};

/// Words witnessing that `{u μ(w)}` and `{μ(w) v}` both span `K^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub left_words: Vec<Word>,
    pub right_words: Vec<Word>,
}

/// Breadth-first search for words `w` whose vectors `u μ(w)` form a basis of the reachable span.
fn left_spanning(rep: &LinearRep) -> (Vec<Vec<usize>>, Vec<Vec<Scalar>>) {
    let n = rep.dim();
    let k = rep.alphabet().len();
    let mut span = Subspace::zero(rep.field(), n);
    let mut words = Vec::new();
    let mut rows = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back((Vec::new(), rep.u().to_vec()));
    while let Some((w, row)) = queue.pop_front() {
        if is_zero_vec(&row) || span.contains_vector(&row) {
            continue;
        }
        span = span.extend(&row);
        for x in 0..k {
            let mut w2 = w.clone();
            w2.push(x);
            queue.push_back((w2, rep.mu(x).left_apply(&row)));
        }
        words.push(w);
        rows.push(row);
        if span.is_full() {
            break;
        }
    }
    (words, rows)
}

/// Same search for columns `μ(w) v`; words grow by prepending letters.
fn right_spanning(rep: &LinearRep) -> (Vec<Vec<usize>>, Vec<Vec<Scalar>>) {
    let n = rep.dim();
    let k = rep.alphabet().len();
    let mut span = Subspace::zero(rep.field(), n);
    let mut words = Vec::new();
    let mut cols = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back((Vec::new(), rep.v().to_vec()));
    while let Some((w, col)) = queue.pop_front() {
        if is_zero_vec(&col) || span.contains_vector(&col) {
            continue;
        }
        span = span.extend(&col);
        for x in 0..k {
            let mut w2 = Vec::with_capacity(w.len() + 1);
            w2.push(x);
            w2.extend_from_slice(&w);
            queue.push_back((w2, rep.mu(x).right_apply(&col)));
        }
        words.push(w);
        cols.push(col);
        if span.is_full() {
            break;
        }
    }
    (words, cols)
}

fn left_reduce(rep: &LinearRep) -> LinearRep {
    let (_, rows) = left_spanning(rep);
    let f = rep.field();
    let k = rows.len();
    if k == 0 {
        return LinearRep::zero(rep.alphabet().clone(), f);
    }
    let basis = RowBasis::new(f, rep.dim(), rows.clone()).expect("independent by construction");
    let u = basis.coords(rep.u()).expect("u spans the first row");
    let mu = rep
        .mus()
        .iter()
        .map(|m| {
            let rs = rows.iter().map(|r| basis.coords(&m.left_apply(r)).expect("reachable span is invariant")).collect();
            Matrix::from_rows(f, k, rs).expect("square")
        })
        .collect();
    let v = rows.iter().map(|r| dot(r, rep.v(), f)).collect();
    LinearRep::new(rep.alphabet().clone(), f, u, mu, v).expect("consistent shapes")
}

fn right_reduce(rep: &LinearRep) -> LinearRep {
    let (_, cols) = right_spanning(rep);
    let f = rep.field();
    let k = cols.len();
    if k == 0 {
        return LinearRep::zero(rep.alphabet().clone(), f);
    }
    let basis = RowBasis::new(f, rep.dim(), cols.clone()).expect("independent by construction");
    let v = basis.coords(rep.v()).expect("v spans the first column");
    let mu = rep
        .mus()
        .iter()
        .map(|m| {
            let images: Vec<Vec<Scalar>> = cols.iter().map(|c| basis.coords(&m.right_apply(c)).expect("observable span is invariant")).collect();
            Matrix::from_rows(f, k, images).expect("square").transpose()
        })
        .collect();
    let u = cols.iter().map(|c| dot(rep.u(), c, f)).collect();
    LinearRep::new(rep.alphabet().clone(), f, u, mu, v).expect("consistent shapes")
}

/// An equivalent representation of minimal dimension, with its spanning-word certificate.
pub fn minimal_rep(rep: &LinearRep) -> (LinearRep, MinimalityCertificate) {
    let reduced = right_reduce(&left_reduce(rep));
    let cert = certificate(&reduced).expect("left-then-right reduction yields a minimal representation");
    (reduced, cert)
}

/// Spanning words for `rep`, or `None` if either span is deficient.
pub fn certificate(rep: &LinearRep) -> Option<MinimalityCertificate> {
    let n = rep.dim();
    let (lw, _) = left_spanning(rep);
    let (rw, _) = right_spanning(rep);
    if lw.len() != n || rw.len() != n {
        return None;
    }
    let a = rep.alphabet();
    Some(MinimalityCertificate {
        left_words: lw.iter().map(|w| a.word_from_indices(w)).collect(),
        right_words: rw.iter().map(|w| a.word_from_indices(w)).collect(),
    })
}

pub fn is_minimal(rep: &LinearRep) -> bool {
    certificate(rep).is_some()
}

/// Rank of the Hankel block `(S(uv))` for `|u|, |v| <= l`.
pub fn hankel_rank(alphabet: &Alphabet, field: Field, l: usize, series: impl Fn(&Word) -> Scalar) -> usize {
    let words = alphabet.words_up_to(l);
    let rows: Vec<Vec<Scalar>> = words.iter().map(|u| words.iter().map(|v| series(&u.concat(v))).collect()).collect();
    Matrix::from_rows(field, words.len(), rows).expect("square").rank()
}

/// Conjugates a minimal representation by `B = [μ(w_1)v | … | μ(w_n)v]`, `w_1 = ε`.
///
/// The result has `v = e_1`, and coordinate `i` of `u μ(w)` equals `S(w w_i)`.
pub fn good_basis(rep: &LinearRep) -> Result<LinearRep, MinimizationError> {
    let n = rep.dim();
    let (lw, _) = left_spanning(rep);
    let (rw, cols) = right_spanning(rep);
    if lw.len() != n || rw.len() != n {
        return Err(MinimizationError::NotMinimal);
    }
    if n == 0 {
        return Ok(rep.clone());
    }
    let b = Matrix::from_rows(rep.field(), n, cols).expect("square").transpose();
    let b_inv = b.inverse().ok_or(MinimizationError::NotMinimal)?;
    Ok(rep.conjugate(&b, &b_inv))
}

/// The right-spanning words used by [`good_basis`].
pub fn good_basis_words(rep: &LinearRep) -> Vec<Word> {
    let (rw, _) = right_spanning(rep);
    rw.iter().map(|w| rep.alphabet().word_from_indices(w)).collect()
}
