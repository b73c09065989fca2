//! Non-clausal resolution over a verifier system `(V, 𝓕)`.
//!
//! A node is a set of formulas. The rule picks `A_1(p), ..., A_h(p)` from the
//! node (repetition allowed) and branches into `node ∪ {A_s(W_s)}` for each
//! verifier `W_s`; the verifier tables then rewrite applications to verifiers.
//! A branch is finished once the verifiers it contains extend a member of 𝓕.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::matrix::{tuples, ConnId, Matrix};
use crate::value::Val;

/// Atom reserved for building verifier formulas; query formulas must not use it.
pub const VERIFIER_ATOM: &str = "_v";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifierSystem {
    pub verifiers: Vec<Formula>,
    /// For each connective, a row-major table over verifier indices.
    pub tables: HashMap<ConnId, Vec<usize>>,
    pub unsat_family: Vec<BTreeSet<usize>>,
    pub depth_bound: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifierError {
    #[error("malformed verifier system: {0}")]
    Malformed(String),
}

impl VerifierSystem {
    pub fn new(
        m: &Matrix,
        verifiers: Vec<Formula>,
        tables: HashMap<ConnId, Vec<usize>>,
        unsat_family: Vec<BTreeSet<usize>>,
        depth_bound: usize,
    ) -> Result<VerifierSystem, VerifierError> {
        let h = verifiers.len();
        let bad = |s: String| Err(VerifierError::Malformed(s));
        if h == 0 {
            return bad("no verifiers".into());
        }
        for (c, con) in m.connectives() {
            let Some(t) = tables.get(&c) else { return bad(format!("no table for `{}`", con.name)) };
            if t.len() != h.pow(con.arity as u32) {
                return bad(format!("table for `{}` has {} entries, expected {}", con.name, t.len(), h.pow(con.arity as u32)));
            }
            if t.iter().any(|&x| x >= h) {
                return bad(format!("table for `{}` leaves the verifier set", con.name));
            }
        }
        if unsat_family.is_empty() || unsat_family.iter().any(|f| f.is_empty() || f.iter().any(|&x| x >= h)) {
            return bad("the unsatisfiable family must consist of nonempty sets of verifiers".into());
        }
        if depth_bound == 0 {
            return bad("depth bound must be positive".into());
        }
        Ok(VerifierSystem { verifiers, tables, unsat_family, depth_bound })
    }

    /// Verifiers that are ground terms denoting distinct values of `m`; the
    /// tables are read off the matrix and 𝓕 is every single verifier with an
    /// undesignated value.
    pub fn from_constants(m: &Matrix, verifiers: Vec<Formula>, depth_bound: usize) -> Result<VerifierSystem, VerifierError> {
        let vals: Vec<Val> = verifiers
            .iter()
            .map(|w| m.eval_with(w, &|_| Some(Val(0))))
            .collect::<Result<_, _>>()
            .map_err(|e| VerifierError::Malformed(e.to_string()))?;
        for w in &verifiers {
            let vs: BTreeSet<Val> = m.all_values().map(|x| m.eval_with(w, &|_| Some(x)).unwrap()).collect();
            if vs.len() != 1 {
                return Err(VerifierError::Malformed(format!("verifier `{}` is not constant", m.render(w))));
            }
        }
        let index = |v: Val| vals.iter().position(|x| *x == v);
        let mut tables = HashMap::new();
        for (c, con) in m.connectives() {
            let mut t = Vec::new();
            for args in tuples(verifiers.len(), con.arity) {
                let a: Vec<Val> = args.iter().map(|k| vals[k.index()]).collect();
                t.push(index(m.apply(c, &a)).ok_or_else(|| VerifierError::Malformed(format!("`{}` leaves the verifiers", con.name)))?);
            }
            tables.insert(c, t);
        }
        let family = (0..verifiers.len()).filter(|&k| !m.is_designated(vals[k])).map(|k| BTreeSet::from([k])).collect();
        VerifierSystem::new(m, verifiers, tables, family, depth_bound)
    }

    /// `V = {F, T}` with `F = _v ∧ ¬_v`, `T = ¬F` and `𝓕 = {{F}}`.
    pub fn classical(m: &Matrix, depth_bound: usize) -> Result<VerifierSystem, VerifierError> {
        let get = |n: &str| m.conn_by_name(n).ok_or_else(|| VerifierError::Malformed(format!("logic has no `{n}`")));
        let (and, neg) = (get("and")?, get("neg")?);
        let v = Formula::atom(VERIFIER_ATOM);
        let f = Formula::binary(and, v.clone(), Formula::unary(neg, v));
        let t = Formula::unary(neg, f.clone());
        VerifierSystem::from_constants(m, vec![f, t], depth_bound)
    }

    fn verifier_index(&self, f: &Formula) -> Option<usize> {
        self.verifiers.iter().position(|w| w == f)
    }

    /// Applies the transformation rules bottom-up.
    fn simplify(&self, f: &Formula) -> Formula {
        if self.verifier_index(f).is_some() {
            return f.clone();
        }
        match f {
            Formula::Atom(_) => f.clone(),
            Formula::App(c, args) => {
                let args: Vec<Formula> = args.iter().map(|a| self.simplify(a)).collect();
                let idx: Option<Vec<usize>> = args.iter().map(|a| self.verifier_index(a)).collect();
                match idx {
                    Some(ix) => {
                        let h = self.verifiers.len();
                        let row = ix.iter().fold(0, |acc, k| acc * h + k);
                        self.verifiers[self.tables[c][row]].clone()
                    }
                    None => Formula::app(*c, args),
                }
            }
        }
    }

    fn closed(&self, node: &BTreeSet<Formula>) -> bool {
        let present: BTreeSet<usize> = node.iter().filter_map(|f| self.verifier_index(f)).collect();
        self.unsat_family.iter().any(|f| f.is_subset(&present))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NcOutcome {
    Unsat,
    /// The search space was exhausted without closing every branch.
    SatNotShown,
    /// The depth bound cut the search before a verdict.
    BoundExceeded,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Res {
    Unsat,
    Open,
    Cutoff,
}

struct Engine<'a> {
    vs: &'a VerifierSystem,
    memo: HashMap<BTreeSet<Formula>, (Res, usize)>,
}

impl Engine<'_> {
    fn prove(&mut self, node: &BTreeSet<Formula>, depth: usize) -> Res {
        if self.vs.closed(node) {
            return Res::Unsat;
        }
        if let Some(&(r, d)) = self.memo.get(node) {
            if r != Res::Cutoff || d >= depth {
                return r;
            }
        }
        let r = self.search(node, depth);
        self.memo.insert(node.clone(), (r, depth));
        r
    }

    fn search(&mut self, node: &BTreeSet<Formula>, depth: usize) -> Res {
        let reserved = Atom::new(VERIFIER_ATOM);
        let mut atoms = BTreeSet::new();
        for f in node {
            f.collect_atoms(&mut atoms);
        }
        atoms.remove(&reserved);
        let h = self.vs.verifiers.len();
        let mut cut = false;
        for p in &atoms {
            let holders: Vec<&Formula> = node.iter().filter(|f| f.contains_atom(p)).collect();
            for pick in tuples(holders.len(), h) {
                let children: Vec<BTreeSet<Formula>> = (0..h)
                    .map(|s| {
                        let map = [(p.clone(), self.vs.verifiers[s].clone())].into_iter().collect();
                        let derived = self.vs.simplify(&holders[pick[s].index()].substitute(&map));
                        let mut child = node.clone();
                        child.insert(derived);
                        child
                    })
                    .collect();
                // a child equal to the node would have to be refuted by itself
                if children.iter().any(|c| c == node) {
                    continue;
                }
                if depth == 0 {
                    cut = true;
                    continue;
                }
                let mut all_unsat = true;
                for c in &children {
                    match self.prove(c, depth - 1) {
                        Res::Unsat => {}
                        Res::Open => {
                            all_unsat = false;
                            break;
                        }
                        Res::Cutoff => {
                            all_unsat = false;
                            cut = true;
                            break;
                        }
                    }
                }
                if all_unsat {
                    return Res::Unsat;
                }
            }
        }
        if cut {
            Res::Cutoff
        } else {
            Res::Open
        }
    }
}

/// Tries to show `gamma` unsatisfiable by iterative deepening up to the
/// system's depth bound.
pub fn nonclausal_decide(gamma: &[Formula], vs: &VerifierSystem) -> NcOutcome {
    let root: BTreeSet<Formula> = gamma.iter().map(|f| vs.simplify(f)).collect();
    let mut engine = Engine { vs, memo: HashMap::new() };
    for d in 0..=vs.depth_bound {
        match engine.prove(&root, d) {
            Res::Unsat => return NcOutcome::Unsat,
            Res::Open => return NcOutcome::SatNotShown,
            Res::Cutoff => {}
        }
    }
    NcOutcome::BoundExceeded
}
