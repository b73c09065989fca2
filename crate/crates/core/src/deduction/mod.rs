//! Many-sided sequents and proof checking.
//!
//! [`sequent`] holds the sequent calculus: translation of consequence
//! queries, cut-free backward search and a derivation checker that also
//! knows cut, weakening and Rousseau-style rules. [`hilbert`] checks
//! Hilbert-style proofs in the Łukasiewicz axiom systems.

pub mod hilbert;
pub mod sequent;

pub use hilbert::{check_hilbert_proof, HilbertError, HilbertLine, HilbertProof, HilbertSystem, Justification};
pub use sequent::{
    check_derivation, check_derivation_with, sequent_consequence, sequent_consequence_with, sequent_decide, sequent_decide_with,
    to_sequent, CheckError, Derivation, DerivationRule, Sequent, SequentError,
    SequentOutcome, Step,
};

/// Splits `s` at `sep` outside parentheses and brackets.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
