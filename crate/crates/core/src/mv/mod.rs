//! MV-algebras: identity checking, finite constructions, ideals, Chang's
//! algebra and one-variable McNaughton functions.

pub mod axioms;
pub mod chang;
pub mod file;
pub mod finite;
pub mod ideals;
pub mod mcnaughton;

use thiserror::Error;

pub use axioms::{check_axioms, check_axioms_on, AxiomFailure, AxiomSystem, MvAlgebra};
pub use chang::{chang_op, ChangAlgebra, ChangOp, ChangValue, LexPair};
pub use file::{parse_mv_file, write_mv_file};
pub use finite::{ElementOrder, FiniteMv};
pub use ideals::{classify, Classification, Ideal};
pub use mcnaughton::{grid_falsify, mcnaughton_compile, pl_decide, PlFunction, PlQuery};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MvError {
    #[error("bad algebra: {0}")]
    BadAlgebra(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("operand {0} lies outside [0, u]")]
    OutOfRange(String),
    #[error("formula has more than one atom: {0}")]
    TooManyAtoms(String),
    #[error("connective `{0}` has no interpretation in [0,1]")]
    UnknownConnective(String),
    #[error("cross-check disagreement: {0}")]
    CrossCheck(String),
    #[error("search exceeds the cap of {0} points")]
    ResourceCap(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
