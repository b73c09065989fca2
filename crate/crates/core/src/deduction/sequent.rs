//! Sequents as finite sets of singly signed formulas, read disjunctively.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::eval::Valuation;
use crate::formula::{Atom, Formula};
use crate::matrix::Matrix;
use crate::signed::{instantiate, NfMode, RuleBook, SignSystem, SignedError, SignedFormula};
use crate::value::{Val, ValueSet};

use super::split_top;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent(BTreeSet<SignedFormula>);

impl Sequent {
    /// Panics if a sign is not a singleton.
    pub fn new(members: impl IntoIterator<Item = SignedFormula>) -> Sequent {
        let set: BTreeSet<SignedFormula> = members.into_iter().collect();
        assert!(set.iter().all(|s| s.sign.len() == 1), "sequent signs must be singletons");
        Sequent(set)
    }

    pub fn members(&self) -> impl Iterator<Item = &SignedFormula> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, sf: &SignedFormula) -> bool {
        self.0.contains(sf)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = SignedFormula>) -> Sequent {
        let mut s = self.clone();
        s.0.extend(extra);
        s
    }

    pub fn without(&self, sf: &SignedFormula) -> Sequent {
        let mut s = self.clone();
        s.0.remove(sf);
        s
    }

    pub fn is_subset(&self, other: &Sequent) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Some valuation member holds under `v`.
    pub fn satisfied(&self, m: &Matrix, v: &Valuation) -> bool {
        self.0.iter().any(|sf| sf.holds(m, v).expect("valuation covers the sequent"))
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for sf in &self.0 {
            sf.formula.collect_atoms(&mut out);
        }
        out
    }

    /// A formula carrying every value of `M`.
    pub fn axiom_formula(&self, m: &Matrix) -> Option<&Formula> {
        let mut seen: HashMap<&Formula, ValueSet> = HashMap::new();
        for sf in &self.0 {
            let s = seen.entry(&sf.formula).or_default();
            *s = s.union(sf.sign.set());
            if *s == m.full_set() {
                return Some(&sf.formula);
            }
        }
        None
    }

    /// `Γ_0 => Γ_1 => ... => Γ_{n-1}`, where `Γ_i` lists the formulas signed `i`.
    pub fn show(&self, m: &Matrix) -> String {
        let slots: Vec<String> = m
            .all_values()
            .map(|v| {
                self.0
                    .iter()
                    .filter(|sf| sf.sign.contains(v))
                    .map(|sf| m.render(&sf.formula))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        slots.join(" => ").split_whitespace().collect::<Vec<_>>().join(" ")
    }

    /// Inverse of [`show`](Self::show).
    pub fn parse(text: &str, m: &Matrix) -> Result<Sequent, String> {
        let slots: Vec<&str> = text.split("=>").collect();
        if slots.len() != m.size() {
            return Err(format!("expected {} slots, found {}", m.size(), slots.len()));
        }
        let mut out = BTreeSet::new();
        for (i, slot) in slots.iter().enumerate() {
            if slot.trim().is_empty() {
                continue;
            }
            for part in split_top(slot, ',') {
                let f = m.parse(part.trim()).map_err(|e| e.to_string())?;
                out.insert(SignedFormula::single(f, Val(i as u8)));
            }
        }
        Ok(Sequent(out))
    }
}

/// The sequent whose slot `i` is `{goal}` for designated `i` and the premises
/// otherwise; it is valid iff `premises ⊨ goal`.
pub fn to_sequent(premises: &[Formula], goal: &Formula, m: &Matrix) -> Sequent {
    let mut out = BTreeSet::new();
    for v in m.all_values() {
        if m.is_designated(v) {
            out.insert(SignedFormula::single(goal.clone(), v));
        } else {
            for b in premises {
                out.insert(SignedFormula::single(b.clone(), v));
            }
        }
    }
    Sequent(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationRule {
    /// The conclusion contains `A^i` for every `i ∈ M`.
    Axiom,
    Weakening,
    /// Introduction of `principal` by the clauses of its CNF.
    Intro { principal: SignedFormula },
    /// From `G, A^i` and `F, A^j` with `i ≠ j` infer `G, F`.
    Cut { formula: Formula, i: Val, j: Val },
    /// From `G, A_t^{i_t}` for each argument infer `G, (c A_1..A_u)^i`
    /// where `i = c(i_1..i_u)`.
    Rousseau { principal: SignedFormula, inputs: Vec<Val> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub conclusion: Sequent,
    pub rule: DerivationRule,
    pub premisses: Vec<String>,
}

/// Steps in dependency order; the last step is the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn root(&self) -> Option<&Step> {
        self.steps.last()
    }

    /// One line per step: `id: rule[args] from ids |- sequent`.
    pub fn render(&self, m: &Matrix) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let (name, args) = match &s.rule {
                DerivationRule::Axiom => ("axiom", String::new()),
                DerivationRule::Weakening => ("weakening", String::new()),
                DerivationRule::Intro { principal } => {
                    ("intro", format!("[{} @ {}]", m.render(&principal.formula), m.value(principal.sign.as_singleton().unwrap())))
                }
                DerivationRule::Cut { formula, i, j } => ("cut", format!("[{} @ {}, {}]", m.render(formula), m.value(*i), m.value(*j))),
                DerivationRule::Rousseau { principal, inputs } => {
                    let ins: Vec<String> = inputs.iter().map(|v| m.value(*v).to_string()).collect();
                    (
                        "rousseau",
                        format!(
                            "[{} @ {} ; {}]",
                            m.render(&principal.formula),
                            m.value(principal.sign.as_singleton().unwrap()),
                            ins.join(", ")
                        ),
                    )
                }
            };
            let from = if s.premisses.is_empty() { String::new() } else { format!(" from {}", s.premisses.join(" ")) };
            let _ = writeln!(out, "{}: {name}{args}{from} |- {}", s.label, s.conclusion.show(m));
        }
        out
    }

    /// Parses the line format of [`render`](Self::render); blank lines and
    /// lines starting with `%` are skipped.
    pub fn parse(text: &str, m: &Matrix) -> Result<Derivation, SequentError> {
        let mut steps = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let bad = |msg: String| SequentError::Parse { line: no + 1, message: msg };
            let (label, rest) = line.split_once(':').ok_or_else(|| bad("missing `label:`".into()))?;
            let search_from = rest.find(']').unwrap_or(0);
            let turn = rest[search_from..].find("|-").map(|k| k + search_from).ok_or_else(|| bad("missing `|-`".into()))?;
            let (head, seq) = (rest[..turn].trim(), rest[turn + 2..].trim());
            let conclusion = Sequent::parse(seq, m).map_err(bad)?;
            let (head, premisses) = match head.rfind(" from ") {
                Some(k) if k > head.rfind(']').unwrap_or(0) || !head.contains('[') => {
                    (head[..k].trim(), head[k + 6..].split_whitespace().map(String::from).collect())
                }
                _ => (head, Vec::new()),
            };
            let (name, args) = match head.split_once('[') {
                Some((n, a)) => (n.trim(), Some(a.strip_suffix(']').ok_or_else(|| bad("unclosed `[`".into()))?)),
                None => (head, None),
            };
            let value = |s: &str| m.value_of(s.trim()).ok_or_else(|| bad(format!("unknown value `{}`", s.trim())));
            let formula = |s: &str| m.parse(s.trim()).map_err(|e| bad(e.to_string()));
            let at = |a: Option<&str>| -> Result<(Formula, String), SequentError> {
                let a = a.ok_or_else(|| bad(format!("`{name}` needs arguments")))?;
                let (f, v) = a.rsplit_once('@').ok_or_else(|| bad("missing `@`".into()))?;
                Ok((formula(f)?, v.to_string()))
            };
            let rule = match name {
                "axiom" => DerivationRule::Axiom,
                "weakening" => DerivationRule::Weakening,
                "intro" => {
                    let (f, v) = at(args)?;
                    DerivationRule::Intro { principal: SignedFormula::single(f, value(&v)?) }
                }
                "cut" => {
                    let (f, v) = at(args)?;
                    let (i, j) = v.split_once(',').ok_or_else(|| bad("cut needs two values".into()))?;
                    DerivationRule::Cut { formula: f, i: value(i)?, j: value(j)? }
                }
                "rousseau" => {
                    let (f, v) = at(args)?;
                    let (i, ins) = v.split_once(';').ok_or_else(|| bad("rousseau needs `; inputs`".into()))?;
                    let inputs = ins.split(',').filter(|s| !s.trim().is_empty()).map(value).collect::<Result<_, _>>()?;
                    DerivationRule::Rousseau { principal: SignedFormula::single(f, value(i)?), inputs }
                }
                other => return Err(bad(format!("unknown rule `{other}`"))),
            };
            steps.push(Step { label: label.trim().to_string(), conclusion, rule, premisses });
        }
        Ok(Derivation { steps })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequentError {
    #[error("sequent search exceeded {0} steps")]
    StepCap(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Signed(#[from] SignedError),
}

/// First failing step of a derivation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {step}: {reason}")]
pub struct CheckError {
    pub step: String,
    pub reason: String,
}

/// Accepts iff every step instantiates its rule; intro premisses must match
/// the singleton-sign CNF of the principal clause by clause.
pub fn check_derivation(d: &Derivation, m: &Matrix) -> Result<(), CheckError> {
    check_derivation_with(d, &RuleBook::new(m, SignSystem::singletons(m)))
}

/// [`check_derivation`] with a shared rule cache.
///
/// Panics unless `rules` uses the singleton signs.
pub fn check_derivation_with(d: &Derivation, rules: &RuleBook<'_>) -> Result<(), CheckError> {
    let m = rules.matrix();
    assert!(*rules.system() == SignSystem::singletons(m), "sequent rules need singleton signs");
    let mut seen: HashMap<&str, &Sequent> = HashMap::new();
    if d.steps.is_empty() {
        return Err(CheckError { step: "-".into(), reason: "empty derivation".into() });
    }
    for s in &d.steps {
        let fail = |reason: String| CheckError { step: s.label.clone(), reason };
        if seen.contains_key(s.label.as_str()) {
            return Err(fail("duplicate step label".into()));
        }
        let mut prem: Vec<&Sequent> = Vec::new();
        for p in &s.premisses {
            prem.push(seen.get(p.as_str()).copied().ok_or_else(|| fail(format!("premiss `{p}` is not an earlier step")))?);
        }
        let arity = |k: usize| -> Result<(), CheckError> {
            if prem.len() == k {
                Ok(())
            } else {
                Err(fail(format!("expected {k} premiss(es), found {}", prem.len())))
            }
        };
        let concl = &s.conclusion;
        match &s.rule {
            DerivationRule::Axiom => {
                arity(0)?;
                if concl.axiom_formula(m).is_none() {
                    return Err(fail("no formula carries every truth value".into()));
                }
            }
            DerivationRule::Weakening => {
                arity(1)?;
                if !prem[0].is_subset(concl) {
                    return Err(fail("weakening may only add formulas".into()));
                }
            }
            DerivationRule::Intro { principal } => {
                let Formula::App(c, args) = &principal.formula else {
                    return Err(fail("intro needs a compound principal formula".into()));
                };
                if !concl.contains(principal) {
                    return Err(fail("principal formula missing from the conclusion".into()));
                }
                let cnf = rules.get(*c, principal.sign, NfMode::Cnf).map_err(|e| fail(e.to_string()))?;
                let clauses = instantiate(&cnf, args);
                arity(clauses.len())?;
                let g = concl.without(principal);
                for (k, (clause, p)) in clauses.iter().zip(&prem).enumerate() {
                    let want = g.with(clause.iter().cloned());
                    if **p != want && **p != want.with([principal.clone()]) {
                        return Err(fail(format!("premiss {} does not match clause {} of the rule", s.premisses[k], k + 1)));
                    }
                }
            }
            DerivationRule::Cut { formula, i, j } => {
                arity(2)?;
                if i == j {
                    return Err(fail("cut requires i ≠ j".into()));
                }
                let ai = SignedFormula::single(formula.clone(), *i);
                let aj = SignedFormula::single(formula.clone(), *j);
                if !prem[0].contains(&ai) || !prem[1].contains(&aj) {
                    return Err(fail("cut formula missing from a premiss".into()));
                }
                let want = prem[0].without(&ai).with(prem[1].without(&aj).members().cloned());
                if *concl != want {
                    return Err(fail("cut conclusion is not the union of the premiss contexts".into()));
                }
            }
            DerivationRule::Rousseau { principal, inputs } => {
                let Formula::App(c, args) = &principal.formula else {
                    return Err(fail("rousseau needs a compound principal formula".into()));
                };
                arity(args.len())?;
                if inputs.len() != args.len() {
                    return Err(fail(format!("expected {} input values, found {}", args.len(), inputs.len())));
                }
                let i = principal.sign.as_singleton().unwrap();
                if m.apply(*c, inputs) != i {
                    return Err(fail(format!(
                        "rousseau requires {} = {}({}), which is {}",
                        m.value(i),
                        m.connective(*c).name,
                        inputs.iter().map(|v| m.value(*v).to_string()).collect::<Vec<_>>().join(", "),
                        m.value(m.apply(*c, inputs))
                    )));
                }
                if !concl.contains(principal) {
                    return Err(fail("principal formula missing from the conclusion".into()));
                }
                let g = concl.without(principal);
                for (t, (a, v)) in args.iter().zip(inputs).enumerate() {
                    let want = g.with([SignedFormula::single(a.clone(), *v)]);
                    if *prem[t] != want && *prem[t] != want.with([principal.clone()]) {
                        return Err(fail(format!("premiss {} is not the context plus argument {}", s.premisses[t], t + 1)));
                    }
                }
            }
        }
        seen.insert(&s.label, concl);
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SequentOutcome {
    pub valid: bool,
    pub derivation: Option<Derivation>,
    /// A valuation satisfying no member.
    pub counter: Option<Valuation>,
}

struct Search<'a, 'm> {
    m: &'m Matrix,
    rules: &'a RuleBook<'m>,
    steps: Vec<Step>,
    cap: usize,
    proved: HashMap<Sequent, String>,
}

/// Valuations enumerated when looking for a smaller valid subsequent.
const PRUNE_ROWS: usize = 1 << 12;

impl Search<'_, '_> {
    /// A proper subsequent that is still valid, found by dropping members
    /// greedily, largest first. `None` if `seq` is invalid or minimal.
    fn relevant(&self, seq: &Sequent) -> Option<Sequent> {
        let m = self.m;
        let atoms: Vec<Atom> = seq.atoms().into_iter().collect();
        let rows = m.size().checked_pow(atoms.len() as u32).filter(|r| *r <= PRUNE_ROWS)?;
        let mut members: Vec<&SignedFormula> = seq.members().collect();
        members.sort_by_key(|sf| std::cmp::Reverse(sf.formula.size()));
        let mut vals = vec![Val(0); atoms.len()];
        let holds: Vec<Vec<bool>> = members
            .iter()
            .map(|sf| {
                (0..rows)
                    .map(|mut r| {
                        for x in vals.iter_mut().rev() {
                            *x = Val((r % m.size()) as u8);
                            r /= m.size();
                        }
                        sf.sign.contains(m.eval_indexed(&sf.formula, &atoms, &vals))
                    })
                    .collect()
            })
            .collect();
        let mut keep = vec![true; members.len()];
        let covered = |keep: &[bool]| (0..rows).all(|r| keep.iter().zip(&holds).any(|(k, h)| *k && h[r]));
        if !covered(&keep) {
            return None;
        }
        for i in 0..members.len() {
            keep[i] = false;
            if !covered(&keep) {
                keep[i] = true;
            }
        }
        if keep.iter().all(|k| *k) {
            return None;
        }
        Some(Sequent::new(members.iter().zip(&keep).filter(|(_, k)| **k).map(|(sf, _)| (*sf).clone())))
    }

    fn prove(&mut self, seq: Sequent) -> Result<Result<String, Valuation>, SequentError> {
        if self.steps.len() >= self.cap {
            return Err(SequentError::StepCap(self.cap));
        }
        if let Some(label) = self.proved.get(&seq) {
            return Ok(Ok(label.clone()));
        }
        let m = self.m;
        if seq.axiom_formula(m).is_some() {
            return Ok(Ok(self.push(seq, DerivationRule::Axiom, Vec::new())));
        }
        if let Some(core) = self.relevant(&seq) {
            let label = match self.prove(core)? {
                Ok(l) => l,
                Err(v) => return Ok(Err(v)),
            };
            return Ok(Ok(self.push(seq, DerivationRule::Weakening, vec![label])));
        }
        let mut best: Option<(SignedFormula, std::sync::Arc<crate::signed::PlaceForm>)> = None;
        for sf in seq.members() {
            if let Formula::App(c, _) = &sf.formula {
                let cnf = self.rules.get(*c, sf.sign, NfMode::Cnf)?;
                if best.as_ref().is_none_or(|(_, b)| cnf.len() < b.len()) {
                    best = Some((sf.clone(), cnf));
                }
            }
        }
        let Some((principal, cnf)) = best else {
            // literal leaf that is not an axiom: pick a missing value per atom
            let mut carried: HashMap<Atom, ValueSet> = HashMap::new();
            for sf in seq.members() {
                let a = sf.formula.as_atom().unwrap().clone();
                let e = carried.entry(a).or_default();
                *e = e.union(sf.sign.set());
            }
            let v = carried.into_iter().map(|(a, s)| (a, m.default_in(s.complement(m.size())).unwrap())).collect();
            return Ok(Err(v));
        };
        let Formula::App(_, args) = &principal.formula else { unreachable!() };
        let g = seq.without(&principal);
        let mut labels = Vec::new();
        for clause in instantiate(&cnf, args) {
            match self.prove(g.with(clause))? {
                Ok(l) => labels.push(l),
                Err(v) => return Ok(Err(v)),
            }
        }
        Ok(Ok(self.push(seq, DerivationRule::Intro { principal }, labels)))
    }

    fn push(&mut self, conclusion: Sequent, rule: DerivationRule, premisses: Vec<String>) -> String {
        let label = (self.steps.len() + 1).to_string();
        self.proved.insert(conclusion.clone(), label.clone());
        self.steps.push(Step { label: label.clone(), conclusion, rule, premisses });
        label
    }
}

/// Decides validity of `seq` by cut-free backward search.
///
/// All rules used are invertible, so a failing literal leaf yields a
/// valuation falsifying the whole sequent.
pub fn sequent_decide(seq: &Sequent, m: &Matrix, step_cap: usize) -> Result<SequentOutcome, SequentError> {
    sequent_decide_with(seq, &RuleBook::new(m, SignSystem::singletons(m)), step_cap)
}

/// [`sequent_decide`] with a shared rule cache.
///
/// Panics unless `rules` uses the singleton signs.
pub fn sequent_decide_with(seq: &Sequent, rules: &RuleBook<'_>, step_cap: usize) -> Result<SequentOutcome, SequentError> {
    let m = rules.matrix();
    assert!(*rules.system() == SignSystem::singletons(m), "sequent rules need singleton signs");
    let mut search = Search { m, rules, steps: Vec::new(), cap: step_cap, proved: HashMap::new() };
    match search.prove(seq.clone())? {
        Ok(_) => Ok(SequentOutcome { valid: true, derivation: Some(Derivation { steps: search.steps }), counter: None }),
        Err(mut v) => {
            for a in seq.atoms() {
                v.entry(a).or_insert_with(|| m.default_in(m.full_set()).unwrap());
            }
            Ok(SequentOutcome { valid: false, derivation: None, counter: Some(v) })
        }
    }
}

/// Decides `premises ⊨ goal` through [`to_sequent`]; a countermodel
/// covers every atom of the query, including atoms the sequent drops.
pub fn sequent_consequence(premises: &[Formula], goal: &Formula, m: &Matrix, step_cap: usize) -> Result<SequentOutcome, SequentError> {
    sequent_consequence_with(premises, goal, &RuleBook::new(m, SignSystem::singletons(m)), step_cap)
}

/// [`sequent_consequence`] with a shared rule cache.
pub fn sequent_consequence_with(
    premises: &[Formula],
    goal: &Formula,
    rules: &RuleBook<'_>,
    step_cap: usize,
) -> Result<SequentOutcome, SequentError> {
    let m = rules.matrix();
    let mut out = sequent_decide_with(&to_sequent(premises, goal, m), rules, step_cap)?;
    if let Some(v) = out.counter.as_mut() {
        let mut atoms = BTreeSet::new();
        for f in premises.iter().chain(std::iter::once(goal)) {
            f.collect_atoms(&mut atoms);
        }
        for a in atoms {
            v.entry(a).or_insert_with(|| m.default_in(m.full_set()).unwrap());
        }
    }
    Ok(out)
}
