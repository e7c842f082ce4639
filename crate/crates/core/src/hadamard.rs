//! Hadamard (pointwise) product and the sub-inverse of unambiguous series.

use alloc::vec::Vec;

use crate::error::{ExprError, SeriesError};
use crate::rep::LinearRep;
use crate::scalar::Scalar;
use crate::wfa::Wfa;

/// `Σ S(w)⁻¹ w` over the support, by inverting every weight of an unambiguous automaton.
pub fn hadamard_subinverse(a: &Wfa) -> Result<Wfa, ExprError> {
    if let Some(w) = a.ambiguity_witness() {
        return Err(ExprError::AmbiguousInput(w));
    }
    Ok(a.map_weights(|c| c.inv().expect("stored weights are nonzero")))
}

/// Tensor construction: recognizes `w ↦ S(w)·T(w)`.
pub fn hadamard_product(r1: &LinearRep, r2: &LinearRep) -> Result<LinearRep, SeriesError> {
    if r1.alphabet() != r2.alphabet() {
        return Err(SeriesError::AlphabetMismatch);
    }
    if r1.field() != r2.field() {
        return Err(SeriesError::FieldMismatch);
    }
    let kron = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> { a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect() };
    let mu = r1.mus().iter().zip(r2.mus()).map(|(a, b)| a.kronecker(b)).collect();
    LinearRep::new(r1.alphabet().clone(), r1.field(), kron(r1.u(), r2.u()), mu, kron(r1.v(), r2.v()))
}
