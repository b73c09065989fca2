//! Signed formulas, signed formula expressions and connective normal forms.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::eval::{EvalError, Valuation};
use crate::formula::{placeholder_atoms, Formula};
use crate::matrix::{tuples, ConnId, Matrix};
use crate::value::{Sign, Val, ValueSet};

/// `A^S`: the formula `A` takes a value in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedFormula {
    pub formula: Formula,
    pub sign: Sign,
}

impl SignedFormula {
    pub fn new(formula: Formula, sign: Sign) -> SignedFormula {
        SignedFormula { formula, sign }
    }

    pub fn single(formula: Formula, v: Val) -> SignedFormula {
        SignedFormula { formula, sign: Sign::singleton(v) }
    }

    pub fn holds(&self, m: &Matrix, v: &Valuation) -> Result<bool, EvalError> {
        Ok(self.sign.contains(m.eval(&self.formula, v)?))
    }
}

impl Matrix {
    /// Renders `A^S` as `A:{s1,s2}`, parenthesizing compound formulas.
    pub fn show_signed(&self, sf: &SignedFormula) -> String {
        let body = self.render(&sf.formula);
        let body = if sf.formula.is_atom() || !body.contains(' ') { body } else { format!("({body})") };
        format!("{}:{}", body, self.show_set(sf.sign.set()))
    }

    /// Renders a clause as `p:{1} | q:{0}`; the empty clause is `□`.
    pub fn show_clause<'a>(&self, lits: impl IntoIterator<Item = &'a SignedFormula>) -> String {
        let parts: Vec<String> = lits.into_iter().map(|l| self.show_signed(l)).collect();
        if parts.is_empty() {
            "□".to_string()
        } else {
            parts.join(" | ")
        }
    }
}

/// A Boolean combination of signed formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sfe {
    True,
    False,
    Lit(SignedFormula),
    Not(Box<Sfe>),
    And(Vec<Sfe>),
    Or(Vec<Sfe>),
}

impl Sfe {
    pub fn lit(formula: Formula, sign: Sign) -> Sfe {
        Sfe::Lit(SignedFormula::new(formula, sign))
    }

    pub fn not(e: Sfe) -> Sfe {
        Sfe::Not(Box::new(e))
    }

    /// Atoms of every signed formula inside.
    pub fn atoms(&self) -> BTreeSet<crate::Atom> {
        let mut out = BTreeSet::new();
        self.walk(&mut |sf| sf.formula.collect_atoms(&mut out));
        out
    }

    fn walk(&self, f: &mut impl FnMut(&SignedFormula)) {
        match self {
            Sfe::True | Sfe::False => {}
            Sfe::Lit(sf) => f(sf),
            Sfe::Not(e) => e.walk(f),
            Sfe::And(es) | Sfe::Or(es) => es.iter().for_each(|e| e.walk(f)),
        }
    }

    pub fn show(&self, m: &Matrix) -> String {
        match self {
            Sfe::True => "true".into(),
            Sfe::False => "false".into(),
            Sfe::Lit(sf) => m.show_signed(sf),
            Sfe::Not(e) => format!("¬[{}]", e.show(m)),
            Sfe::And(es) => format!("({})", es.iter().map(|e| e.show(m)).collect::<Vec<_>>().join(" ∧ ")),
            Sfe::Or(es) => format!("({})", es.iter().map(|e| e.show(m)).collect::<Vec<_>>().join(" ∨ ")),
        }
    }
}

/// Two-valued value of a signed formula expression under `v`.
pub fn eval_sfe(e: &Sfe, v: &Valuation, m: &Matrix) -> Result<bool, EvalError> {
    Ok(match e {
        Sfe::True => true,
        Sfe::False => false,
        Sfe::Lit(sf) => sf.holds(m, v)?,
        Sfe::Not(x) => !eval_sfe(x, v, m)?,
        Sfe::And(xs) => {
            for x in xs {
                if !eval_sfe(x, v, m)? {
                    return Ok(false);
                }
            }
            true
        }
        Sfe::Or(xs) => {
            for x in xs {
                if eval_sfe(x, v, m)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// Eliminates `¬` by the complement law and applies the closure rules:
/// `B^S ∧ B^T` with `S ∩ T = ∅` is false, a disjunction of `B`-literals
/// covering `M` is true, constants propagate.
pub fn simplify(e: &Sfe, m: &Matrix) -> Sfe {
    let n = m.size();
    match e {
        Sfe::True | Sfe::False => e.clone(),
        Sfe::Lit(sf) if sf.sign.set() == m.full_set() => Sfe::True,
        Sfe::Lit(_) => e.clone(),
        Sfe::Not(x) => match x.as_ref() {
            Sfe::True => Sfe::False,
            Sfe::False => Sfe::True,
            Sfe::Lit(sf) => {
                let rest = sf.sign.set().complement(n);
                let lits: Vec<Sfe> = rest.iter().map(|j| Sfe::Lit(SignedFormula::single(sf.formula.clone(), j))).collect();
                simplify(&Sfe::Or(lits), m)
            }
            Sfe::Not(y) => simplify(y, m),
            Sfe::And(ys) => simplify(&Sfe::Or(ys.iter().cloned().map(Sfe::not).collect()), m),
            Sfe::Or(ys) => simplify(&Sfe::And(ys.iter().cloned().map(Sfe::not).collect()), m),
        },
        Sfe::And(xs) => {
            let mut out: Vec<Sfe> = Vec::new();
            for x in xs {
                match simplify(x, m) {
                    Sfe::True => {}
                    Sfe::False => return Sfe::False,
                    Sfe::And(ys) => out.extend(ys),
                    y => out.push(y),
                }
            }
            dedup(&mut out);
            let mut meet: BTreeMap<&Formula, ValueSet> = BTreeMap::new();
            for x in &out {
                if let Sfe::Lit(sf) = x {
                    let s = meet.entry(&sf.formula).or_insert(m.full_set());
                    *s = s.intersection(sf.sign.set());
                    if s.is_empty() {
                        return Sfe::False;
                    }
                }
            }
            match out.len() {
                0 => Sfe::True,
                1 => out.pop().unwrap(),
                _ => Sfe::And(out),
            }
        }
        Sfe::Or(xs) => {
            let mut out: Vec<Sfe> = Vec::new();
            for x in xs {
                match simplify(x, m) {
                    Sfe::False => {}
                    Sfe::True => return Sfe::True,
                    Sfe::Or(ys) => out.extend(ys),
                    y => out.push(y),
                }
            }
            dedup(&mut out);
            let mut join: BTreeMap<&Formula, ValueSet> = BTreeMap::new();
            for x in &out {
                if let Sfe::Lit(sf) = x {
                    let s = join.entry(&sf.formula).or_default();
                    *s = s.union(sf.sign.set());
                    if *s == m.full_set() {
                        return Sfe::True;
                    }
                }
            }
            match out.len() {
                0 => Sfe::False,
                1 => out.pop().unwrap(),
                _ => Sfe::Or(out),
            }
        }
    }
}

fn dedup(v: &mut Vec<Sfe>) {
    let mut seen = HashSet::new();
    v.retain(|x| seen.insert(x.clone()));
}

/// `c(S_1, ..., S_u) = {c(i_1, ..., i_u) : i_t ∈ S_t}`.
pub fn sign_apply(m: &Matrix, c: ConnId, signs: &[Sign]) -> Sign {
    let sets: Vec<ValueSet> = signs.iter().map(|s| s.set()).collect();
    Sign::new(set_apply(m, c, &sets)).expect("image of nonempty signs is nonempty")
}

fn set_apply(m: &Matrix, c: ConnId, sets: &[ValueSet]) -> ValueSet {
    let mut out = ValueSet::EMPTY;
    let mut args = vec![Val(0); sets.len()];
    fn rec(m: &Matrix, c: ConnId, sets: &[ValueSet], k: usize, args: &mut Vec<Val>, out: &mut ValueSet) {
        if k == sets.len() {
            out.insert(m.apply(c, args));
            return;
        }
        for v in sets[k].iter() {
            args[k] = v;
            rec(m, c, sets, k + 1, args, out);
        }
    }
    rec(m, c, sets, 0, &mut args, &mut out);
    out
}

/// A set of signs available for literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSystem(BTreeSet<Sign>);

impl SignSystem {
    pub fn new(signs: impl IntoIterator<Item = Sign>) -> SignSystem {
        SignSystem(signs.into_iter().collect())
    }

    pub fn singletons(m: &Matrix) -> SignSystem {
        SignSystem::new(m.all_values().map(Sign::singleton))
    }

    /// All singletons, `M∖D` (when nonempty) and `M`.
    pub fn default_for(m: &Matrix) -> SignSystem {
        let mut s = SignSystem::singletons(m);
        if let Some(nd) = Sign::new(m.undesignated()) {
            s.0.insert(nd);
        }
        s.0.insert(Sign::new(m.full_set()).unwrap());
        s
    }

    pub fn contains(&self, s: Sign) -> bool {
        self.0.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, s: Sign) {
        self.0.insert(s);
    }

    /// Whether `set` is a union of signs of this system.
    pub fn expresses(&self, set: ValueSet) -> bool {
        let covered = self.0.iter().filter(|s| s.set().is_subset(set)).fold(ValueSet::EMPTY, |acc, s| acc.union(s.set()));
        covered == set
    }
}

/// Smallest set of signs containing `generators` and closed under every connective.
pub fn sign_closure(generators: &[Sign], m: &Matrix) -> SignSystem {
    let mut set: BTreeSet<Sign> = generators.iter().copied().collect();
    loop {
        let current: Vec<Sign> = set.iter().copied().collect();
        let mut grew = false;
        for (c, con) in m.connectives() {
            for pick in tuples(current.len(), con.arity) {
                let signs: Vec<Sign> = pick.iter().map(|i| current[i.index()]).collect();
                if set.insert(sign_apply(m, c, &signs)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return SignSystem(set);
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum NfMode {
    Cnf,
    Dnf,
}

/// Literal of a connective rule: argument place `place` takes a value in `sign`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaceLit {
    pub place: usize,
    pub sign: Sign,
}

/// A normal form over argument places: clauses (CNF) or conjuncts (DNF).
pub type PlaceForm = Vec<Vec<PlaceLit>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignedError {
    #[error("sign system too weak to express `{conn}` at {sign}")]
    SignSystemTooWeak { conn: String, sign: String },
    #[error("normal form failed verification: {0}")]
    Verification(String),
    #[error("connective `{0}` has too many argument tuples for normal-form generation")]
    TooLarge(String),
}

/// Largest number of candidate cubes enumerated before falling back to single rows.
const CUBE_LIMIT: usize = 1 << 21;

/// Normal form of `(c p_1 ... p_u)^sign` over argument places, verified against
/// the truth table before it is returned.
///
/// Built as a greedy cover by maximal cubes whose per-place sets are expressible
/// in `sys`; the CNF covers the falsifying rows and complements each cube.
pub fn place_normal_form(m: &Matrix, c: ConnId, sign: Sign, mode: NfMode, sys: &SignSystem) -> Result<PlaceForm, SignedError> {
    let n = m.size();
    let u = m.arity(c);
    let rows = n.checked_pow(u as u32).filter(|r| *r <= 1 << 20).ok_or_else(|| SignedError::TooLarge(m.connective(c).name.clone()))?;
    let table = &m.connective(c).table;
    let truth: Vec<bool> = (0..rows).map(|r| sign.contains(table[r])).collect();
    let target: Vec<bool> = match mode {
        NfMode::Dnf => truth.clone(),
        NfMode::Cnf => truth.iter().map(|t| !t).collect(),
    };
    let full = m.full_set();

    // per-place candidate sets
    let mut allowed: Vec<ValueSet> = match mode {
        NfMode::Dnf => sys.iter().map(|s| s.set()).collect(),
        NfMode::Cnf => (1..=full.bits()).map(ValueSet::from_bits).filter(|s| s.complement(n).is_empty() || sys.expresses(s.complement(n))).collect(),
    };
    if !allowed.contains(&full) {
        allowed.push(full);
    }
    allowed.sort_by_key(|s| std::cmp::Reverse(s.len()));

    let cubes: Vec<Vec<ValueSet>> = if allowed.len().checked_pow(u as u32).is_some_and(|k| k <= CUBE_LIMIT) {
        maximal_implicants(n, u, &allowed, &target)
    } else {
        // one cube per target row, only possible when singletons are expressible
        (0..rows)
            .filter(|&r| target[r])
            .map(|r| row_values(r, n, u).into_iter().map(ValueSet::singleton).collect::<Vec<_>>())
            .filter(|cube: &Vec<ValueSet>| cube.iter().all(|s| allowed.contains(s)))
            .collect()
    };

    let chosen = greedy_cover(n, u, &cubes, &target).ok_or_else(|| SignedError::SignSystemTooWeak {
        conn: m.connective(c).name.clone(),
        sign: m.show_set(sign.set()),
    })?;

    let mut form: PlaceForm = chosen
        .iter()
        .map(|cube| {
            let mut lits = Vec::new();
            for (place, &set) in cube.iter().enumerate() {
                if set == full {
                    continue;
                }
                match mode {
                    NfMode::Dnf => lits.push(PlaceLit { place, sign: Sign::new(set).unwrap() }),
                    NfMode::Cnf => {
                        for s in decompose(set.complement(n), sys) {
                            lits.push(PlaceLit { place, sign: s });
                        }
                    }
                }
            }
            lits
        })
        .collect();

    for part in form.iter_mut() {
        part.sort();
    }
    form.sort();
    verify_form(n, u, &form, mode, &truth).map_err(|row| {
        SignedError::Verification(format!("`{}` at {} row {row}", m.connective(c).name, m.show_set(sign.set())))
    })?;
    Ok(form)
}

fn row_values(mut r: usize, n: usize, u: usize) -> Vec<Val> {
    let mut out = vec![Val(0); u];
    for slot in out.iter_mut().rev() {
        *slot = Val((r % n) as u8);
        r /= n;
    }
    out
}

fn cube_rows(n: usize, cube: &[ValueSet]) -> Vec<usize> {
    let mut rows = vec![0usize];
    for set in cube {
        rows = rows.iter().flat_map(|&r| set.iter().map(move |v| r * n + v.index())).collect();
    }
    rows
}

/// Cubes inside `target` that cannot be enlarged at any single place.
fn maximal_implicants(n: usize, u: usize, allowed: &[ValueSet], target: &[bool]) -> Vec<Vec<ValueSet>> {
    let inside = |cube: &[ValueSet]| cube_rows(n, cube).iter().all(|&r| target[r]);
    let mut implicants: Vec<Vec<ValueSet>> = Vec::new();
    for pick in tuples(allowed.len(), u) {
        let cube: Vec<ValueSet> = pick.iter().map(|i| allowed[i.index()]).collect();
        if inside(&cube) {
            implicants.push(cube);
        }
    }
    let known: HashSet<&Vec<ValueSet>> = implicants.iter().collect();
    implicants
        .iter()
        .filter(|cube| {
            !(0..u).any(|k| {
                allowed.iter().any(|&bigger| {
                    bigger != cube[k] && cube[k].is_subset(bigger) && {
                        let mut ext = (*cube).clone();
                        ext[k] = bigger;
                        known.contains(&ext)
                    }
                })
            })
        })
        .cloned()
        .collect()
}

fn greedy_cover(n: usize, _u: usize, cubes: &[Vec<ValueSet>], target: &[bool]) -> Option<Vec<Vec<ValueSet>>> {
    let rows: Vec<Vec<usize>> = cubes.iter().map(|c| cube_rows(n, c)).collect();
    let mut uncovered: Vec<bool> = target.to_vec();
    let mut left = uncovered.iter().filter(|b| **b).count();
    let mut chosen: Vec<usize> = Vec::new();
    while left > 0 {
        let (best, gain) = rows
            .iter()
            .enumerate()
            .map(|(i, rs)| (i, rs.iter().filter(|&&r| uncovered[r]).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(rows[a.0].len().cmp(&rows[b.0].len())).then(b.0.cmp(&a.0)))?;
        if gain == 0 {
            return None;
        }
        for &r in &rows[best] {
            if uncovered[r] {
                uncovered[r] = false;
                left -= 1;
            }
        }
        chosen.push(best);
    }
    // drop cubes made redundant by later picks
    let mut count = vec![0usize; target.len()];
    for &i in &chosen {
        for &r in &rows[i] {
            count[r] += 1;
        }
    }
    let mut keep = Vec::new();
    for &i in chosen.iter().rev() {
        if rows[i].iter().all(|&r| count[r] > 1) {
            for &r in &rows[i] {
                count[r] -= 1;
            }
        } else {
            keep.push(i);
        }
    }
    keep.reverse();
    Some(keep.into_iter().map(|i| cubes[i].clone()).collect())
}

/// Splits `set` into system signs whose union is `set`.
fn decompose(set: ValueSet, sys: &SignSystem) -> Vec<Sign> {
    if let Some(s) = Sign::new(set).filter(|s| sys.contains(*s)) {
        return vec![s];
    }
    let mut parts: Vec<Sign> = sys.iter().filter(|s| s.set().is_subset(set)).collect();
    parts.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut covered = ValueSet::EMPTY;
    let mut out = Vec::new();
    while covered != set {
        let best = parts
            .iter()
            .copied()
            .max_by_key(|s| s.set().difference(covered).len())
            .expect("set is expressible");
        covered = covered.union(best.set());
        out.push(best);
    }
    out.sort();
    out
}

fn verify_form(n: usize, u: usize, form: &PlaceForm, mode: NfMode, truth: &[bool]) -> Result<(), usize> {
    for (r, &want) in truth.iter().enumerate() {
        let vals = row_values(r, n, u);
        let lit = |l: &PlaceLit| l.sign.contains(vals[l.place]);
        let got = match mode {
            NfMode::Dnf => form.iter().any(|conj| conj.iter().all(lit)),
            NfMode::Cnf => form.iter().all(|clause| clause.iter().any(lit)),
        };
        if got != want {
            return Err(r);
        }
    }
    Ok(())
}

/// Replaces argument places by the given formulas.
pub fn instantiate(form: &PlaceForm, args: &[Formula]) -> Vec<Vec<SignedFormula>> {
    form.iter()
        .map(|part| part.iter().map(|l| SignedFormula::new(args[l.place].clone(), l.sign)).collect())
        .collect()
}

/// A normal form written over placeholder atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseSet {
    pub mode: NfMode,
    pub clauses: Vec<BTreeSet<SignedFormula>>,
}

impl ClauseSet {
    pub fn to_sfe(&self) -> Sfe {
        let part = |c: &BTreeSet<SignedFormula>| -> Vec<Sfe> { c.iter().cloned().map(Sfe::Lit).collect() };
        match self.mode {
            NfMode::Cnf => Sfe::And(self.clauses.iter().map(|c| Sfe::Or(part(c))).collect()),
            NfMode::Dnf => Sfe::Or(self.clauses.iter().map(|c| Sfe::And(part(c))).collect()),
        }
    }

    /// One clause (or conjunct) per line.
    pub fn show(&self, m: &Matrix) -> String {
        let sep = match self.mode {
            NfMode::Cnf => " | ",
            NfMode::Dnf => " & ",
        };
        let mut out = String::new();
        for c in &self.clauses {
            let line: Vec<String> = c.iter().map(|l| m.show_signed(l)).collect();
            if line.is_empty() {
                out.push_str(match self.mode {
                    NfMode::Cnf => "□",
                    NfMode::Dnf => "⊤",
                });
            } else {
                out.push_str(&line.join(sep));
            }
            out.push('\n');
        }
        out
    }
}

/// Normal form of `(c p q ...)^sign` over placeholder atoms `p, q, r` (or `p1..pu`).
pub fn normal_form(m: &Matrix, c: ConnId, sign: Sign, mode: NfMode, sys: &SignSystem) -> Result<ClauseSet, SignedError> {
    let form = place_normal_form(m, c, sign, mode, sys)?;
    let args: Vec<Formula> = placeholder_atoms(m.arity(c)).into_iter().map(Formula::Atom).collect();
    let clauses = instantiate(&form, &args).into_iter().map(|c| c.into_iter().collect()).collect();
    Ok(ClauseSet { mode, clauses })
}

/// Memoized normal forms for one matrix and sign system.
pub struct RuleBook<'m> {
    m: &'m Matrix,
    sys: SignSystem,
    cache: Mutex<HashMap<(ConnId, Sign, NfMode), Arc<PlaceForm>>>,
}

impl<'m> RuleBook<'m> {
    pub fn new(m: &'m Matrix, sys: SignSystem) -> RuleBook<'m> {
        RuleBook { m, sys, cache: Mutex::new(HashMap::new()) }
    }

    pub fn matrix(&self) -> &'m Matrix {
        self.m
    }

    pub fn system(&self) -> &SignSystem {
        &self.sys
    }

    pub fn get(&self, c: ConnId, sign: Sign, mode: NfMode) -> Result<Arc<PlaceForm>, SignedError> {
        if let Some(f) = self.cache.lock().unwrap().get(&(c, sign, mode)) {
            return Ok(f.clone());
        }
        let f = Arc::new(place_normal_form(self.m, c, sign, mode, &self.sys)?);
        self.cache.lock().unwrap().insert((c, sign, mode), f.clone());
        Ok(f)
    }
}

impl fmt::Display for NfMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NfMode::Cnf => "cnf",
            NfMode::Dnf => "dnf",
        })
    }
}
