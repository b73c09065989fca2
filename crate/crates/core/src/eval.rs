//! Evaluation of formulas under valuations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::matrix::Matrix;
use crate::value::Val;

/// Assignment of truth values to atoms.
pub type Valuation = BTreeMap<Atom, Val>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("atom `{0}` has no value")]
    MissingAtom(String),
}

impl Matrix {
    /// Value of `f` under `v`, by structural recursion through the tables.
    pub fn eval(&self, f: &Formula, v: &Valuation) -> Result<Val, EvalError> {
        self.eval_with(f, &|a| v.get(a).copied())
    }

    /// Evaluation with an arbitrary atom lookup.
    pub fn eval_with(&self, f: &Formula, lookup: &dyn Fn(&Atom) -> Option<Val>) -> Result<Val, EvalError> {
        match f {
            Formula::Atom(a) => lookup(a).ok_or_else(|| EvalError::MissingAtom(a.name().to_string())),
            Formula::App(c, args) => {
                let mut vals = [Val(0); 8];
                if args.len() <= 8 {
                    for (slot, a) in vals.iter_mut().zip(args.iter()) {
                        *slot = self.eval_with(a, lookup)?;
                    }
                    Ok(self.apply(*c, &vals[..args.len()]))
                } else {
                    let vals = args.iter().map(|a| self.eval_with(a, lookup)).collect::<Result<Vec<_>, _>>()?;
                    Ok(self.apply(*c, &vals))
                }
            }
        }
    }

    /// Evaluation where `atoms` is sorted and `vals[i]` is the value of `atoms[i]`.
    ///
    /// Panics if an atom of `f` is not listed.
    pub fn eval_indexed(&self, f: &Formula, atoms: &[Atom], vals: &[Val]) -> Val {
        match f {
            Formula::Atom(a) => vals[atoms.binary_search(a).expect("atom not in valuation")],
            Formula::App(c, args) => {
                let mut buf = [Val(0); 8];
                if args.len() <= 8 {
                    for (slot, a) in buf.iter_mut().zip(args.iter()) {
                        *slot = self.eval_indexed(a, atoms, vals);
                    }
                    self.apply(*c, &buf[..args.len()])
                } else {
                    let v: Vec<Val> = args.iter().map(|a| self.eval_indexed(a, atoms, vals)).collect();
                    self.apply(*c, &v)
                }
            }
        }
    }

    /// Truth table of `f` over the sorted `atoms`, row-major (first atom most significant).
    pub fn truth_table(&self, f: &Formula, atoms: &[Atom]) -> Vec<Val> {
        let n = self.size();
        let rows = n.pow(atoms.len() as u32);
        let mut vals = vec![Val(0); atoms.len()];
        (0..rows)
            .map(|r| {
                decode_row(r, n, &mut vals);
                self.eval_indexed(f, atoms, &vals)
            })
            .collect()
    }

    /// Renders a valuation as `p=1/2, q=0`.
    pub fn show_valuation(&self, v: &Valuation) -> String {
        v.iter()
            .map(|(a, x)| format!("{}={}", a, self.value(*x)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Writes the digits of `row` in base `n` into `out` (most significant first).
pub fn decode_row(mut row: usize, n: usize, out: &mut [Val]) {
    for slot in out.iter_mut().rev() {
        *slot = Val((row % n) as u8);
        row /= n;
    }
}

/// Builds a valuation from sorted atoms and their values.
pub fn valuation_of(atoms: &[Atom], vals: &[Val]) -> Valuation {
    atoms.iter().cloned().zip(vals.iter().copied()).collect()
}
