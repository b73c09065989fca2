//! Signed resolution.
//!
//! [`clausal`] translates formulas into sets of signed clauses and saturates
//! them under the rule `D, p^i   D', p^j  /  D, D'` (`i ≠ j`). Consequence
//! reduces to unsatisfiability through the designated-complement formula
//! `N(p)`. [`nonclausal`] runs the branching rule over a verifier system.

pub mod clausal;
pub mod nonclausal;

pub use clausal::{
    clausify, resolve_consequence, resolve_consequence_with, saturate, Clausifier, Origin, Refutation, ResolutionError,
    ResolutionOutcome, SaturateOptions, Saturation, SignedClause,
};
pub use nonclausal::{nonclausal_decide, NcOutcome, VerifierSystem};
