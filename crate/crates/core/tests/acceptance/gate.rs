//! Cross-engine agreement on validity and on consequence with up to two
//! premises, checked against the reference semantics.

use mvlogic::deduction::{check_derivation_with, sequent_consequence_with};
use mvlogic::logics::negation_marker;
use mvlogic::resolution::clausal::{resolve_consequence_with, Clausifier, SaturateOptions};
use mvlogic::signed::RuleBook;
use mvlogic::tableau::{tableau_decide_with, TableauOptions};
use mvlogic::{decide, Formula, Limits, Matrix, Mode, SignSystem, Valuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{all_conns, by_depth, dedup, extend, Rep};
use crate::oracle::{rows, Oracle};
use crate::{logic, Outcome};

/// Every built-in with at most four values.
const GATE_LOGICS: &[&str] = &[
    "classical",
    "lukasiewicz:3",
    "lukasiewicz:4",
    "godel:3",
    "godel:4",
    "post:2:1",
    "post:3:0",
    "post:3:1",
    "post:3:2",
    "post:4:1",
    "post:4:2",
    "post:4:3",
    "kleene-strong",
    "kleene-weak",
    "bochvar",
    "belnap",
];

const ATOMS: [&str; 2] = ["p", "q"];
const SAMPLE: usize = 1500;
const SEQUENT_CAP: usize = 1_000_000;

struct Engines<'m> {
    name: &'m str,
    m: &'m Matrix,
    o: Oracle,
    rules: RuleBook<'m>,
    sequent_rules: RuleBook<'m>,
    marker: Option<Formula>,
    cl: Clausifier<'m>,
    queries: usize,
    /// Seconds spent in table, tableau, sequent and resolution.
    secs: [f64; 4],
}

impl Engines<'_> {
    fn show(&self, premises: &[Formula], goal: &Formula) -> String {
        let ps: Vec<String> = premises.iter().map(|p| self.m.render(p)).collect();
        format!("{}: {} |- {}", self.name, ps.join(", "), self.m.render(goal))
    }

    /// Premises designated and goal not, under `v`.
    fn refutes(&self, premises: &[Formula], goal: &Formula, v: &Valuation) -> bool {
        let mut vals = [0usize; 2];
        for (k, a) in ATOMS.iter().enumerate() {
            match v.iter().find(|(x, _)| x.name() == *a) {
                Some((_, x)) => vals[k] = x.index(),
                None if premises.iter().chain([goal]).any(|f| f.contains_atom(&mvlogic::Atom::new(a))) => return false,
                None => {}
            }
        }
        let d = |f: &Formula| self.o.designated(self.o.eval(f, &ATOMS, &vals));
        premises.iter().all(d) && !d(goal)
    }

    fn check(&mut self, premises: &[Formula], goal: &Formula) -> Result<(), String> {
        self.queries += 1;
        let clock = std::time::Instant::now();
        let resolution = match &self.marker {
            Some(marker) => Some(
                resolve_consequence_with(premises, goal, marker, &mut self.cl, SaturateOptions::default())
                    .map_err(|e| format!("{}: {e}", self.show(premises, goal)))?,
            ),
            None => None,
        };
        self.secs[3] += clock.elapsed().as_secs_f64();
        let mut secs = [0.0; 3];
        let truth = rows(self.o.n, 2).all(|r| {
            let d = |f: &Formula| self.o.designated(self.o.eval(f, &ATOMS, &r));
            !premises.iter().all(d) || d(goal)
        });
        let q = || self.show(premises, goal);
        let verdict = |engine: &str, valid: bool, counter: Option<&Valuation>| -> Result<(), String> {
            if valid != truth {
                return Err(format!("{engine} says {} on {}", if valid { "valid" } else { "invalid" }, q()));
            }
            if !valid {
                match counter {
                    Some(v) if self.refutes(premises, goal, v) => {}
                    Some(v) => return Err(format!("{engine} countermodel {} is wrong on {}", self.m.show_valuation(v), q())),
                    None => return Err(format!("{engine} gave no countermodel on {}", q())),
                }
            }
            Ok(())
        };
        let clock = std::time::Instant::now();
        if !self.m.designated().is_empty() {
            let d = decide(self.m, Mode::Consequence, premises, goal, Limits::default()).map_err(|e| e.to_string())?;
            verdict("table", d.holds, d.witness.as_ref())?;
        }
        secs[0] = clock.elapsed().as_secs_f64();
        let clock = std::time::Instant::now();
        let t = tableau_decide_with(premises, goal, &self.rules, TableauOptions::default()).map_err(|e| format!("{}: {e}", q()))?;
        verdict("tableau", t.valid, t.countermodel.as_ref())?;
        secs[1] = clock.elapsed().as_secs_f64();
        let clock = std::time::Instant::now();
        let s = sequent_consequence_with(premises, goal, &self.sequent_rules, SEQUENT_CAP).map_err(|e| format!("{}: {e}", q()))?;
        verdict("sequent", s.valid, s.counter.as_ref())?;
        if let Some(d) = &s.derivation {
            check_derivation_with(d, &self.sequent_rules).map_err(|e| format!("sequent derivation rejected ({e}) on {}", q()))?;
        }
        secs[2] = clock.elapsed().as_secs_f64();
        if let Some(r) = resolution {
            verdict("resolution", r.valid, r.countermodel.as_ref())?;
        }
        for (total, x) in self.secs.iter_mut().zip(secs) {
            *total += x;
        }
        Ok(())
    }
}

pub fn cross_engine() -> Outcome {
    let mut summary = Vec::new();
    let mut total = 0;
    for name in GATE_LOGICS {
        let start = std::time::Instant::now();
        let (spec, m) = logic(name);
        let o = Oracle::new(&spec, &m);
        let conns = all_conns(&m);
        let levels = by_depth(&m, &conns, &ATOMS, 2);
        let syntactic: Vec<Formula> = levels.iter().flatten().cloned().collect();
        let reps2 = dedup(&o, &ATOMS, syntactic.iter().cloned());
        let deeper = extend(&o, &m, &conns, &reps2);
        let pool1 = dedup(&o, &ATOMS, levels[..2].iter().flatten().cloned());
        let pool3: Vec<&Rep> = reps2.iter().chain(&deeper).collect();

        let mut e = Engines {
            name,
            m: &m,
            rules: RuleBook::new(&m, SignSystem::default_for(&m)),
            sequent_rules: RuleBook::new(&m, SignSystem::singletons(&m)),
            marker: negation_marker(&m).ok(),
            cl: Clausifier::new(&m),
            o,
            queries: 0,
            secs: [0.0; 4],
        };
        for f in syntactic.iter().chain(deeper.iter().map(|r| &r.formula)) {
            e.check(&[], f)?;
        }
        for a in &pool1 {
            for g in &pool1 {
                e.check(std::slice::from_ref(&a.formula), &g.formula)?;
            }
        }
        for (i, a) in pool1.iter().enumerate() {
            for b in &pool1[i + 1..] {
                for g in &pool1 {
                    e.check(&[a.formula.clone(), b.formula.clone()], &g.formula)?;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a7e);
        for _ in 0..SAMPLE {
            let k = rng.gen_range(0..=2);
            let premises: Vec<Formula> = (0..k).map(|_| pool3[rng.gen_range(0..pool3.len())].formula.clone()).collect();
            let goal = pool3[rng.gen_range(0..pool3.len())].formula.clone();
            e.check(&premises, &goal)?;
        }
        total += e.queries;
        let engines = 2 + usize::from(!m.designated().is_empty()) + usize::from(e.marker.is_some());
        summary.push(format!("{name} {} queries x{engines} in {:.1}s", e.queries, start.elapsed().as_secs_f64()));
        eprintln!("  {} {:.1?}", summary.last().unwrap(), e.secs);
    }
    Ok(format!("{total} queries, 0 disagreements ({})", summary.join("; ")))
}
