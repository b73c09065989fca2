//! Brute-force semantic decisions by enumerating all valuations.
//!
//! This is the reference oracle for every other engine.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::eval::{decode_row, valuation_of, Valuation};
use crate::formula::{Atom, Formula};
use crate::matrix::Matrix;
use crate::value::Val;

/// Default cap on the number of distinct atoms in a query.
pub const DEFAULT_ATOM_CAP: usize = 16;

/// Below this many valuations the search stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// The goal is designated under every valuation (premises are ignored).
    Valid,
    /// Premises and goal are designated together under some valuation.
    Satisfiable,
    /// Every valuation designating all premises designates the goal.
    Consequence,
    /// `σ(premise) ≤ σ(goal)` in the declared order for every σ; exactly one premise.
    Entails,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    /// Counter-valuation for a failed Valid/Consequence/Entails query,
    /// satisfying valuation for a successful Satisfiable query.
    pub witness: Option<Valuation>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("resource bound exceeded: {found} atoms, cap is {cap}")]
    TooManyAtoms { found: usize, cap: usize },
    #[error("matrix `{0}` has no designated values")]
    NoDesignated(String),
    #[error("matrix `{0}` declares no value order")]
    NoOrder(String),
    #[error("entailment takes exactly one premise, found {0}")]
    EntailsArity(usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub atom_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { atom_cap: DEFAULT_ATOM_CAP }
    }
}

/// Sorted atoms of a list of formulas.
pub fn atoms_of<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Vec<Atom> {
    let mut set = BTreeSet::new();
    for f in fs {
        f.collect_atoms(&mut set);
    }
    set.into_iter().collect()
}

/// Decides a query by exhaustive enumeration of the `|M|^k` valuations.
pub fn decide(m: &Matrix, mode: Mode, premises: &[Formula], goal: &Formula, limits: Limits) -> Result<Decision, DecideError> {
    let premises: &[Formula] = if mode == Mode::Valid { &[] } else { premises };
    match mode {
        Mode::Entails => {
            if m.order().is_none() {
                return Err(DecideError::NoOrder(m.name().to_string()));
            }
            if premises.len() != 1 {
                return Err(DecideError::EntailsArity(premises.len()));
            }
        }
        _ => {
            if m.designated().is_empty() {
                return Err(DecideError::NoDesignated(m.name().to_string()));
            }
        }
    }
    let atoms = atoms_of(premises.iter().chain(std::iter::once(goal)));
    let k = atoms.len();
    let n = m.size();
    let total = match n.checked_pow(k as u32) {
        Some(t) if k <= limits.atom_cap => t,
        _ => return Err(DecideError::TooManyAtoms { found: k, cap: limits.atom_cap }),
    };

    // `hit` is the row property we search for; the verdict is its absence,
    // except for satisfiability where finding it is the verdict.
    let hit = |row: usize| -> bool {
        // n^k fits in usize, so k < 64
        let mut buf = [Val(0); 64];
        let vals = &mut buf[..k];
        decode_row(row, n, vals);
        let d = |f: &Formula| m.is_designated(m.eval_indexed(f, &atoms, vals));
        match mode {
            Mode::Valid => !d(goal),
            Mode::Consequence => premises.iter().all(d) && !d(goal),
            Mode::Satisfiable => premises.iter().all(d) && d(goal),
            Mode::Entails => {
                let a = m.eval_indexed(&premises[0], &atoms, vals);
                let b = m.eval_indexed(goal, &atoms, vals);
                !m.order().unwrap().leq(a, b)
            }
        }
    };
    let found = if total < PARALLEL_THRESHOLD {
        (0..total).find(|&r| hit(r))
    } else {
        (0..total).into_par_iter().find_first(|&r| hit(r))
    };
    let witness = found.map(|row| {
        let mut vals = vec![Val(0); k];
        decode_row(row, n, &mut vals);
        valuation_of(&atoms, &vals)
    });
    let holds = match mode {
        Mode::Satisfiable => witness.is_some(),
        _ => witness.is_none(),
    };
    Ok(Decision { holds, witness })
}

impl Matrix {
    /// Shorthand for a validity check with default limits.
    pub fn is_valid(&self, f: &Formula) -> Result<bool, DecideError> {
        decide(self, Mode::Valid, &[], f, Limits::default()).map(|d| d.holds)
    }

    /// Shorthand for a consequence check with default limits.
    pub fn is_consequence(&self, premises: &[Formula], goal: &Formula) -> Result<bool, DecideError> {
        decide(self, Mode::Consequence, premises, goal, Limits::default()).map(|d| d.holds)
    }
}
