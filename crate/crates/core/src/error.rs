//! Error types, one per layer.

use alloc::string::String;

use crate::subspace::UnionOfSubspaces;
use crate::transform::CoverViolation;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scalars from different fields")]
    FieldMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(char),
    #[error("unknown letter `{0}`")]
    UnknownLetter(char),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state index {0}")]
    UnknownState(usize),
    #[error("edge weights must be nonzero")]
    ZeroWeight,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MinimizationError {
    #[error("representation is not minimal (span defect detected)")]
    NotMinimal,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HullError {
    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch")]
    FieldMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("hull dimension {} exceeds 1", .0.dimension().unwrap_or(0))]
    HullDimensionExceeded(UnionOfSubspaces),
    #[error("{0}")]
    CoverConditionViolated(CoverViolation),
    #[error("initial vector lies in no hull component")]
    UInNoComponent,
    #[error("hull certificate does not match the representation")]
    CertificateInvalid,
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Minimization(#[from] MinimizationError),
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("star applied to a series with nonzero constant term")]
    StarOnNonproper,
    #[error("expression is not unambiguous")]
    NotUnambiguous,
    #[error("requires the rational field")]
    NonRationalField,
    #[error("automaton is ambiguous on `{0}`")]
    AmbiguousInput(Word),
    #[error("language contains the empty word")]
    EmptyWord,
    #[error("letter index {0} outside the alphabet")]
    AlphabetMismatch(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UnivariateError {
    #[error("denominator vanishes at 0")]
    QZeroAtOrigin,
    #[error("alphabet is not unary")]
    NotUnary,
    #[error("requires the rational field")]
    NonRationalField,
    #[error("automaton is ambiguous on `{0}`")]
    AmbiguousInput(Word),
    #[error("series is not eventually geometric on residue classes")]
    NotProgression,
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagnosticsError {
    #[error("requires the rational field")]
    NonRationalField,
    #[error("length of zero is undefined")]
    ZeroValue,
}
