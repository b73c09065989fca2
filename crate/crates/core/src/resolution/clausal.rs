//! Clause translation, saturation and refutations.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decide::atoms_of;
use crate::eval::Valuation;
use crate::formula::{Atom, Formula};
use crate::logics::{negation_marker, LogicError};
use crate::matrix::Matrix;
use crate::signed::{NfMode, RuleBook, SignSystem, SignedError};
use crate::value::{Sign, Val, ValueSet};

/// A disjunction of literals `p^i`, stored per atom as the set of its values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedClause(BTreeMap<Atom, ValueSet>);

impl SignedClause {
    pub fn empty() -> SignedClause {
        SignedClause::default()
    }

    pub fn from_literals(lits: impl IntoIterator<Item = (Atom, Val)>) -> SignedClause {
        let mut c = SignedClause::default();
        for (a, v) in lits {
            c.0.entry(a).or_default().insert(v);
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of literals.
    pub fn len(&self) -> usize {
        self.0.values().map(|s| s.len()).sum()
    }

    pub fn literals(&self) -> impl Iterator<Item = (&Atom, Val)> {
        self.0.iter().flat_map(|(a, s)| s.iter().map(move |v| (a, v)))
    }

    pub fn values_of(&self, a: &Atom) -> ValueSet {
        self.0.get(a).copied().unwrap_or_default()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.keys()
    }

    /// Some atom carries every value.
    pub fn is_tautology(&self, n: usize) -> bool {
        self.0.values().any(|s| s.len() == n)
    }

    /// Every literal of `self` occurs in `other`.
    pub fn subsumes(&self, other: &SignedClause) -> bool {
        self.0.iter().all(|(a, s)| other.0.get(a).is_some_and(|t| s.is_subset(*t)))
    }

    pub fn union(&self, other: &SignedClause) -> SignedClause {
        let mut c = self.clone();
        for (a, s) in &other.0 {
            let e = c.0.entry(a.clone()).or_default();
            *e = e.union(*s);
        }
        c
    }

    fn without(&self, a: &Atom, v: Val) -> SignedClause {
        let mut c = self.clone();
        if let Some(s) = c.0.get_mut(a) {
            *s = s.difference(ValueSet::singleton(v));
            if s.is_empty() {
                c.0.remove(a);
            }
        }
        c
    }

    pub fn holds(&self, v: &Valuation) -> bool {
        self.0.iter().any(|(a, s)| v.get(a).is_some_and(|x| s.contains(*x)))
    }

    /// `p:{1/2,1} | q:{0}`; the empty clause is `□`.
    pub fn show(&self, m: &Matrix) -> String {
        if self.0.is_empty() {
            return "□".into();
        }
        self.0.iter().map(|(a, s)| format!("{}:{}", a, m.show_set(*s))).collect::<Vec<_>>().join(" | ")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("no N(p) for this logic: {0}")]
    NoMarker(LogicError),
    #[error(transparent)]
    Signed(#[from] SignedError),
    #[error("saturation exceeded {0} clauses")]
    ClauseCap(usize),
}

/// Memoized translation of signed formulas into clause sets.
pub struct Clausifier<'m> {
    m: &'m Matrix,
    rules: RuleBook<'m>,
    memo: HashMap<(Formula, Sign), Rc<Vec<SignedClause>>>,
}

impl<'m> Clausifier<'m> {
    pub fn new(m: &'m Matrix) -> Clausifier<'m> {
        Clausifier { m, rules: RuleBook::new(m, SignSystem::singletons(m)), memo: HashMap::new() }
    }

    /// Clauses equivalent to `σ(A) ∈ D`.
    pub fn clausify(&mut self, a: &Formula) -> Result<Vec<SignedClause>, SignedError> {
        match Sign::new(self.m.designated()) {
            Some(d) => Ok((*self.cnf(a, d)?).clone()),
            None => Ok(vec![SignedClause::empty()]),
        }
    }

    /// Clauses equivalent to `A^S`.
    pub fn cnf(&mut self, a: &Formula, s: Sign) -> Result<Rc<Vec<SignedClause>>, SignedError> {
        if let Some(r) = self.memo.get(&(a.clone(), s)) {
            return Ok(r.clone());
        }
        let n = self.m.size();
        let out = match a {
            _ if s.set() == self.m.full_set() => Vec::new(),
            Formula::Atom(p) => vec![SignedClause(BTreeMap::from([(p.clone(), s.set())]))],
            Formula::App(c, args) => {
                let form = self.rules.get(*c, s, NfMode::Cnf)?;
                let mut out = Vec::new();
                for clause in form.iter() {
                    // group the clause's literals by argument formula
                    let mut by_arg: BTreeMap<&Formula, ValueSet> = BTreeMap::new();
                    for lit in clause {
                        let e = by_arg.entry(&args[lit.place]).or_default();
                        *e = e.union(lit.sign.set());
                    }
                    // disjunction of CNFs, distributed
                    let mut acc = vec![SignedClause::empty()];
                    for (arg, set) in by_arg {
                        let sub = self.cnf(arg, Sign::new(set).unwrap())?;
                        let mut next = Vec::new();
                        for x in &acc {
                            for y in sub.iter() {
                                let u = x.union(y);
                                if !u.is_tautology(n) {
                                    next.push(u);
                                }
                            }
                        }
                        acc = reduce(next);
                        if acc.is_empty() {
                            break;
                        }
                    }
                    out.extend(acc);
                }
                reduce(out)
            }
        };
        let out = Rc::new(out);
        self.memo.insert((a.clone(), s), out.clone());
        Ok(out)
    }
}

/// Removes duplicates and subsumed clauses.
fn reduce(mut cs: Vec<SignedClause>) -> Vec<SignedClause> {
    cs.sort_by_key(|c| (c.len(), c.clone()));
    cs.dedup();
    let mut out: Vec<SignedClause> = Vec::new();
    for c in cs {
        if !out.iter().any(|k| k.subsumes(&c)) {
            out.push(c);
        }
    }
    out
}

/// Clauses equivalent to `σ(A) ∈ D`.
pub fn clausify(a: &Formula, m: &Matrix) -> Result<Vec<SignedClause>, SignedError> {
    Clausifier::new(m).clausify(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Input,
    Resolvent { left: usize, right: usize, atom: Atom, i: Val, j: Val },
}

/// Clauses leading to `□`, parents before children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub steps: Vec<(SignedClause, Origin)>,
}

impl Refutation {
    /// Numbered clause list: `3: □  <- 1 2 on p (1 / 0)`.
    pub fn render(&self, m: &Matrix) -> String {
        let mut out = String::new();
        for (k, (c, o)) in self.steps.iter().enumerate() {
            let _ = match o {
                Origin::Input => writeln!(out, "{}: {}  <- input", k + 1, c.show(m)),
                Origin::Resolvent { left, right, atom, i, j } => {
                    writeln!(out, "{}: {}  <- {} {} on {} ({} / {})", k + 1, c.show(m), left + 1, right + 1, atom, m.value(*i), m.value(*j))
                }
            };
        }
        out
    }

    /// Every resolvent is correctly formed from its parents.
    pub fn check(&self) -> bool {
        self.steps.iter().enumerate().all(|(k, (c, o))| match o {
            Origin::Input => true,
            Origin::Resolvent { left, right, atom, i, j } => {
                *left < k
                    && *right < k
                    && i != j
                    && self.steps[*left].0.values_of(atom).contains(*i)
                    && self.steps[*right].0.values_of(atom).contains(*j)
                    && *c == self.steps[*left].0.without(atom, *i).union(&self.steps[*right].0.without(atom, *j))
            }
        }) && self.steps.last().is_some_and(|(c, _)| c.is_empty())
    }
}

#[derive(Copy, Clone, Debug)]
pub struct SaturateOptions {
    /// Pick given clauses at random with this seed instead of shortest first.
    pub seed: Option<u64>,
    pub clause_cap: usize,
}

impl Default for SaturateOptions {
    fn default() -> Self {
        SaturateOptions { seed: None, clause_cap: 2_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Saturation {
    pub unsat: bool,
    pub refutation: Option<Refutation>,
    /// Clauses generated, inputs included.
    pub generated: usize,
}

/// Given-clause saturation with subsumption and tautology deletion.
pub fn saturate(clauses: &[SignedClause], n: usize, opts: SaturateOptions) -> Result<Saturation, ResolutionError> {
    let mut all: Vec<(SignedClause, Origin)> = Vec::new();
    let mut seen: HashSet<SignedClause> = HashSet::new();
    let mut queue: Vec<usize> = Vec::new();
    for c in clauses {
        if !c.is_tautology(n) && seen.insert(c.clone()) {
            queue.push(all.len());
            all.push((c.clone(), Origin::Input));
        }
    }
    let mut rng = opts.seed.map(ChaCha8Rng::seed_from_u64);
    let mut active: Vec<usize> = Vec::new();
    let finish = |all: &Vec<(SignedClause, Origin)>, idx: usize| Saturation {
        unsat: true,
        refutation: Some(extract(all, idx)),
        generated: all.len(),
    };
    if let Some(idx) = all.iter().position(|(c, _)| c.is_empty()) {
        return Ok(finish(&all, idx));
    }
    while !queue.is_empty() {
        let pos = match rng.as_mut() {
            Some(r) => r.gen_range(0..queue.len()),
            None => (0..queue.len()).min_by_key(|&k| (all[queue[k]].0.len(), queue[k])).unwrap(),
        };
        let given = queue.swap_remove(pos);
        let g = all[given].0.clone();
        if active.iter().any(|&a| all[a].0.subsumes(&g)) {
            continue;
        }
        active.retain(|&a| !g.subsumes(&all[a].0));
        for &a in &active {
            let other = all[a].0.clone();
            for atom in g.atoms() {
                let (gs, os) = (g.values_of(atom), other.values_of(atom));
                if os.is_empty() {
                    continue;
                }
                for i in gs.iter() {
                    for j in os.iter().filter(|j| *j != i) {
                        let r = g.without(atom, i).union(&other.without(atom, j));
                        if r.is_tautology(n) || seen.contains(&r) {
                            continue;
                        }
                        seen.insert(r.clone());
                        let idx = all.len();
                        let empty = r.is_empty();
                        all.push((r, Origin::Resolvent { left: given, right: a, atom: atom.clone(), i, j }));
                        if empty {
                            return Ok(finish(&all, idx));
                        }
                        if all.len() > opts.clause_cap {
                            return Err(ResolutionError::ClauseCap(opts.clause_cap));
                        }
                        queue.push(idx);
                    }
                }
            }
        }
        active.push(given);
    }
    Ok(Saturation { unsat: false, refutation: None, generated: all.len() })
}

fn extract(all: &[(SignedClause, Origin)], root: usize) -> Refutation {
    let mut need = BTreeSet::new();
    let mut stack = vec![root];
    while let Some(k) = stack.pop() {
        if need.insert(k) {
            if let Origin::Resolvent { left, right, .. } = &all[k].1 {
                stack.push(*left);
                stack.push(*right);
            }
        }
    }
    let renumber: HashMap<usize, usize> = need.iter().enumerate().map(|(new, old)| (*old, new)).collect();
    let steps = need
        .iter()
        .map(|&k| {
            let (c, o) = &all[k];
            let o = match o {
                Origin::Input => Origin::Input,
                Origin::Resolvent { left, right, atom, i, j } => {
                    Origin::Resolvent { left: renumber[left], right: renumber[right], atom: atom.clone(), i: *i, j: *j }
                }
            };
            (c.clone(), o)
        })
        .collect();
    Refutation { steps }
}

/// A valuation of `atoms` satisfying every clause, by backtracking.
pub fn find_model(clauses: &[SignedClause], atoms: &[Atom], m: &Matrix) -> Option<Valuation> {
    fn go(k: usize, atoms: &[Atom], clauses: &[SignedClause], m: &Matrix, v: &mut Valuation) -> bool {
        let decided = |c: &SignedClause, v: &Valuation| c.atoms().all(|a| v.contains_key(a));
        if clauses.iter().any(|c| decided(c, v) && !c.holds(v)) {
            return false;
        }
        if k == atoms.len() {
            return true;
        }
        for x in m.all_values() {
            v.insert(atoms[k].clone(), x);
            if go(k + 1, atoms, clauses, m, v) {
                return true;
            }
        }
        v.remove(&atoms[k]);
        false
    }
    let mut all: BTreeSet<Atom> = atoms.iter().cloned().collect();
    for c in clauses {
        all.extend(c.atoms().cloned());
    }
    let order: Vec<Atom> = all.into_iter().collect();
    let mut v = Valuation::new();
    go(0, &order, clauses, m, &mut v).then_some(v)
}

#[derive(Clone, Debug)]
pub struct ResolutionOutcome {
    pub valid: bool,
    pub refutation: Option<Refutation>,
    /// Premises designated, goal undesignated.
    pub countermodel: Option<Valuation>,
    pub clauses: Vec<SignedClause>,
}

/// Decides `premises ⊨ goal` as unsatisfiability of `{B_1, ..., B_r, N(goal)}`.
pub fn resolve_consequence(premises: &[Formula], goal: &Formula, m: &Matrix, opts: SaturateOptions) -> Result<ResolutionOutcome, ResolutionError> {
    let marker = negation_marker(m).map_err(ResolutionError::NoMarker)?;
    let mut cl = Clausifier::new(m);
    resolve_consequence_with(premises, goal, &marker, &mut cl, opts)
}

/// [`resolve_consequence`] with a known `N(p)` and a shared clausifier.
pub fn resolve_consequence_with(
    premises: &[Formula],
    goal: &Formula,
    marker: &Formula,
    cl: &mut Clausifier<'_>,
    opts: SaturateOptions,
) -> Result<ResolutionOutcome, ResolutionError> {
    let m = cl.m;
    let p = Atom::new("p");
    let negated = marker.substitute(&[(p, goal.clone())].into_iter().collect());
    let mut clauses = Vec::new();
    for b in premises.iter().chain(std::iter::once(&negated)) {
        clauses.extend(cl.clausify(b)?);
    }
    let clauses = reduce(clauses);
    let sat = saturate(&clauses, m.size(), opts)?;
    let countermodel = if sat.unsat {
        None
    } else {
        let atoms = atoms_of(premises.iter().chain(std::iter::once(goal)));
        find_model(&clauses, &atoms, m)
    };
    Ok(ResolutionOutcome { valid: sat.unsat, refutation: sat.refutation, countermodel, clauses })
}
