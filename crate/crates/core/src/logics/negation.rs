//! The designated-complement formula `N(p)`: `i ∈ D` iff `N(i) ∉ D`.

use std::collections::HashMap;

use crate::formula::{Atom, Formula};
use crate::matrix::Matrix;
use crate::value::Val;

use super::{builtin, post_synthesize, BuiltinSpec, Family, LogicError};

/// Upper bound on distinct unary term functions explored by the closure search.
const CLOSURE_CAP: usize = 200_000;

/// Checks the defining property of `N(p)` at every truth value.
pub fn verify_negation_marker(m: &Matrix, candidate: &Formula) -> Result<(), LogicError> {
    let atoms = candidate.atoms();
    let p = Atom::new("p");
    if atoms.len() > 1 || atoms.iter().any(|a| *a != p) {
        return Err(LogicError::MarkerAtoms);
    }
    for i in m.all_values() {
        let v = m.eval_with(candidate, &|_| Some(i)).expect("single atom is bound");
        if m.is_designated(i) == m.is_designated(v) {
            let reason = if m.is_designated(i) { "both designated" } else { "both undesignated" };
            return Err(LogicError::NotANegationMarker {
                value: m.value(i).to_string(),
                reason: format!("N({}) = {}, {reason}", m.value(i), m.value(v)),
            });
        }
    }
    Ok(())
}

/// Returns a verified `N(p)` for `m`.
///
/// Built-in classical, Łukasiewicz and Post matrices use their known formulas;
/// any other matrix is searched by closing the unary term functions under the
/// connectives, which either finds a witness or proves none exists.
pub fn negation_marker(m: &Matrix) -> Result<Formula, LogicError> {
    let known = BuiltinSpec::parse(m.name())
        .ok()
        .filter(|spec| builtin(spec).ok().as_ref() == Some(m));
    let p = Formula::atom("p");
    let candidate = match known.map(|s| (s.family, s)) {
        Some((Family::Classical, _)) => Some(Formula::unary(m.conn_by_name("neg").unwrap(), p)),
        Some((Family::Lukasiewicz, spec)) => {
            let imp = m.conn_by_name("imp").unwrap();
            let neg = m.conn_by_name("neg").unwrap();
            // p → (p → ... → (p → ¬p)) with n−1 implications
            let mut f = Formula::unary(neg, p.clone());
            for _ in 0..spec.n - 1 {
                f = Formula::binary(imp, p.clone(), f);
            }
            Some(f)
        }
        Some((Family::Post, spec)) => {
            if spec.m == 0 {
                return Err(LogicError::NoNegationMarker(m.name().to_string()));
            }
            let top = (spec.n - 1) as u8;
            let target: Vec<Val> = (0..spec.n).map(|i| if i >= spec.m { Val(0) } else { Val(top) }).collect();
            Some(post_synthesize(spec.n, 1, &target)?)
        }
        _ => None,
    };
    let f = match candidate {
        Some(f) => f,
        None => search_marker(m)?,
    };
    verify_negation_marker(m, &f)?;
    Ok(f)
}

fn search_marker(m: &Matrix) -> Result<Formula, LogicError> {
    if m.designated().is_empty() || m.undesignated().is_empty() {
        return Err(LogicError::NoNegationMarker(m.name().to_string()));
    }
    let is_marker = |f: &[Val]| f.iter().enumerate().all(|(i, v)| m.is_designated(Val(i as u8)) != m.is_designated(*v));
    match unary_term_closure(m, CLOSURE_CAP, &is_marker)? {
        Some(f) => Ok(f),
        None => Err(LogicError::NoNegationMarker(m.name().to_string())),
    }
}

/// Enumerates the unary term functions of `m` (terms in the atom `p`) until
/// `stop` accepts one, returning its term. `None` means the closure was
/// exhausted without a hit.
pub fn unary_term_closure(
    m: &Matrix,
    cap: usize,
    stop: &dyn Fn(&[Val]) -> bool,
) -> Result<Option<Formula>, LogicError> {
    let n = m.size();
    let mut funcs: Vec<Vec<Val>> = Vec::new();
    let mut terms: Vec<Formula> = Vec::new();
    let mut index: HashMap<Vec<Val>, usize> = HashMap::new();
    let mut add = |f: Vec<Val>, t: Formula, funcs: &mut Vec<Vec<Val>>, terms: &mut Vec<Formula>| -> bool {
        if index.contains_key(&f) {
            return false;
        }
        index.insert(f.clone(), funcs.len());
        funcs.push(f);
        terms.push(t);
        true
    };
    add(m.all_values().collect(), Formula::atom("p"), &mut funcs, &mut terms);
    for (id, c) in m.connectives() {
        if c.arity == 0 {
            add(vec![m.apply(id, &[]); n], Formula::constant(id), &mut funcs, &mut terms);
        }
    }
    if let Some(i) = funcs.iter().position(|f| stop(f)) {
        return Ok(Some(terms[i].clone()));
    }
    let mut old = 0;
    loop {
        let len = funcs.len();
        if old == len {
            return Ok(None);
        }
        for (id, c) in m.connectives() {
            let u = c.arity;
            if u == 0 {
                continue;
            }
            let mut pick = vec![0usize; u];
            'tuples: loop {
                if pick.iter().any(|&i| i >= old) {
                    let f: Vec<Val> = (0..n)
                        .map(|x| {
                            let args: Vec<Val> = pick.iter().map(|&i| funcs[i][x]).collect();
                            m.apply(id, &args)
                        })
                        .collect();
                    let t = Formula::app(id, pick.iter().map(|&i| terms[i].clone()).collect());
                    let hit = stop(&f);
                    if add(f, t, &mut funcs, &mut terms) {
                        if hit {
                            return Ok(terms.last().cloned());
                        }
                        if funcs.len() > cap {
                            return Err(LogicError::SearchBound(m.name().to_string()));
                        }
                    }
                }
                // odometer over indices < len
                for slot in pick.iter_mut().rev() {
                    *slot += 1;
                    if *slot < len {
                        continue 'tuples;
                    }
                    *slot = 0;
                }
                break;
            }
        }
        old = len;
    }
}
