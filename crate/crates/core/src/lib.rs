//! A workbench for finite-valued propositional logics.
//!
//! Define a logical matrix (or pick a built-in one), then decide validity and
//! consequence with truth tables, signed tableaux, many-sided sequents or
//! signed resolution, and compute in finite and lexicographic MV-algebras.

pub mod decide;
pub mod deduction;
pub mod eval;
pub mod fo;
pub mod formula;
pub mod logics;
pub mod matrix;
pub mod mv;
pub mod parse;
pub mod resolution;
pub mod signed;
pub mod tableau;
pub mod value;

pub use decide::{decide, DecideError, Decision, Limits, Mode};
pub use eval::{EvalError, Valuation};
pub use formula::{Atom, Formula};
pub use matrix::{ConnId, Connective, Matrix, MatrixError, Order};
pub use parse::ParseError;
pub use signed::{NfMode, Sfe, SignSystem, SignedFormula};
pub use value::{Rational, Sign, TruthValue, Val, ValueSet};
