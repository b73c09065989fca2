//! Formula families: exhaustive by depth, and one level further up to
//! truth-table equivalence of the immediate subformulas.

use std::collections::HashMap;

use mvlogic::{ConnId, Formula, Matrix};

use crate::oracle::Oracle;

/// Every formula over `atoms` and `conns` of depth at most `depth`, bucketed
/// by exact depth. Nullary connectives sit at depth 0 with the atoms.
pub fn by_depth(m: &Matrix, conns: &[ConnId], atoms: &[&str], depth: usize) -> Vec<Vec<Formula>> {
    let mut levels: Vec<Vec<Formula>> = Vec::new();
    let mut base: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a)).collect();
    base.extend(conns.iter().filter(|c| m.arity(**c) == 0).map(|c| Formula::constant(*c)));
    levels.push(base);
    for d in 1..=depth {
        let below: Vec<&Formula> = levels.iter().flatten().collect();
        let top: Vec<&Formula> = levels[d - 1].iter().collect();
        let lower: Vec<&Formula> = levels[..d - 1].iter().flatten().collect();
        let mut out = Vec::new();
        for &c in conns {
            match m.arity(c) {
                0 => {}
                1 => out.extend(top.iter().map(|a| Formula::unary(c, (*a).clone()))),
                2 => {
                    for a in &top {
                        for b in &below {
                            out.push(Formula::binary(c, (*a).clone(), (*b).clone()));
                        }
                    }
                    for a in &lower {
                        for b in &top {
                            out.push(Formula::binary(c, (*a).clone(), (*b).clone()));
                        }
                    }
                }
                u => panic!("arity {u} is not generated"),
            }
        }
        levels.push(out);
    }
    levels
}

/// A formula with its truth table.
#[derive(Clone)]
pub struct Rep {
    pub formula: Formula,
    pub table: Vec<usize>,
}

/// First formula per truth table, in input order.
pub fn dedup(o: &Oracle, atoms: &[&str], fs: impl IntoIterator<Item = Formula>) -> Vec<Rep> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for f in fs {
        let table = o.table(&f, atoms);
        if seen.insert(table.clone(), ()).is_none() {
            out.push(Rep { formula: f, table });
        }
    }
    out
}

/// Applies every connective in `conns` to representatives, keeping results
/// whose truth table is new. The returned formulas are one level deeper than
/// the deepest representative.
pub fn extend(o: &Oracle, m: &Matrix, conns: &[ConnId], reps: &[Rep]) -> Vec<Rep> {
    let mut seen: HashMap<Vec<usize>, ()> = reps.iter().map(|r| (r.table.clone(), ())).collect();
    let mut out = Vec::new();
    let rows = reps.first().map_or(0, |r| r.table.len());
    let mut keep = |f: Formula, table: Vec<usize>| {
        if seen.insert(table.clone(), ()).is_none() {
            out.push(Rep { formula: f, table });
        }
    };
    for &c in conns {
        match m.arity(c) {
            1 => {
                for a in reps {
                    let t = a.table.iter().map(|x| o.apply(c.index(), &[*x])).collect();
                    keep(Formula::unary(c, a.formula.clone()), t);
                }
            }
            2 => {
                for a in reps {
                    for b in reps {
                        let t = (0..rows).map(|r| o.apply(c.index(), &[a.table[r], b.table[r]])).collect();
                        keep(Formula::binary(c, a.formula.clone(), b.formula.clone()), t);
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// Connective ids of `m` by name.
pub fn conns(m: &Matrix, names: &[&str]) -> Vec<ConnId> {
    names.iter().map(|n| m.conn_by_name(n).unwrap_or_else(|| panic!("{} lacks `{n}`", m.name()))).collect()
}

pub fn all_conns(m: &Matrix) -> Vec<ConnId> {
    m.connectives().map(|(c, _)| c).collect()
}
