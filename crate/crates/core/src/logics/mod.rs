//! Built-in matrices and logic-specific constructions.

mod axioms;
mod builtin;
mod derived;
mod negation;
mod post;

pub use axioms::{ipc_axioms, lukasiewicz_axioms, ax6j_applicable, AxiomScheme, META_ALPHA, META_BETA, META_GAMMA};
pub use builtin::{builtin, BuiltinSpec, Family};
pub use derived::{derived_template, expand_derived, DerivedConn};
pub use negation::{negation_marker, unary_term_closure, verify_negation_marker};
pub use post::{post_constant_zero, post_matrix, post_monotonic, post_synthesize, MonotoneTuple, PostMonotonic};

use thiserror::Error;

use crate::matrix::MatrixError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("unknown logic `{0}`")]
    UnknownLogic(String),
    #[error("invalid parameters for `{0}`: {1}")]
    BadParameter(String, String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("matrix `{0}` lacks connective `{1}`")]
    MissingConnective(String, String),
    #[error("candidate N(p) fails at value {value}: {reason}")]
    NotANegationMarker { value: String, reason: String },
    #[error("candidate N(p) must contain exactly the atom p")]
    MarkerAtoms,
    #[error("matrix `{0}` has no formula N(p) with i ∈ D iff N(i) ∉ D")]
    NoNegationMarker(String),
    #[error("search bound exceeded while looking for N(p) in `{0}`")]
    SearchBound(String),
    #[error("target table has {found} entries, expected {expected}")]
    TargetSize { expected: usize, found: usize },
    #[error("target value {0} out of range")]
    TargetRange(usize),
    #[error("internal verification failed: {0}")]
    Verification(String),
}
