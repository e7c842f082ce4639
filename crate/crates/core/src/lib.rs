//! Exact noncommutative rational series: linear representations, weighted automata,
//! linear hulls, determinization and disambiguation of Pólya series, unambiguous
//! rational expressions and their exponent formulas.
//!
//! Scalars live in `Q` or a prime field `F_p`. The crate is `no_std` and needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diagnostics;
pub mod error;
pub mod expr;
pub mod factor;
pub mod formula;
pub mod hadamard;
pub mod hull;
pub mod matrix;
pub mod minimize;
pub mod nfa;
pub mod rep;
pub mod scalar;
pub mod subspace;
pub mod transform;
pub mod univariate;
pub mod wfa;
pub mod word;

pub use error::*;
pub use hull::{certify_containment, containment_bound, linear_hull, HullCertificate, HullConfig, OrbitSample};
pub use matrix::Matrix;
pub use minimize::{good_basis, hankel_rank, is_minimal, minimal_rep, MinimalityCertificate};
pub use rep::LinearRep;
pub use scalar::{Field, Scalar};
pub use subspace::{Subspace, UnionOfSubspaces};
pub use wfa::Wfa;
pub use word::{Alphabet, Word};
pub use univariate::{extract_ap_form, rep_from_ratfun, univariate_polya_pipeline, APForm, RationalFunction};
pub use nfa::Nfa;
pub use expr::{expr_to_rep, is_code, state_elimination, CodeCheck, ExprNode, RatExpr};
pub use formula::{extract_formula, ExponentFormula};
pub use hadamard::{hadamard_product, hadamard_subinverse};
pub use diagnostics::{length_q, polya_check_q, variation_report, word_distance, PrimeSupport, VariationReport};
pub use transform::{check_cover_conditions, determinize, disambiguate, expand_rep, BlockStructure, CoverViolation};
