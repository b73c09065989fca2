//! Axiom validity, the deduction bound of the finite Łukasiewicz logics and
//! rejection of corrupted proof objects.

use mvlogic::deduction::{check_derivation, check_hilbert_proof, Derivation, HilbertProof, HilbertSystem};
use mvlogic::logics::{ipc_axioms, lukasiewicz_axioms, AxiomScheme};
use mvlogic::{decide, Formula, Limits, Matrix, Mode};

use crate::family::{by_depth, conns, dedup};
use crate::oracle::{rows, Oracle};
use crate::{ensure, logic, Outcome};

/// Validity by the reference semantics over the atoms of `f`.
fn valid(o: &Oracle, f: &Formula) -> bool {
    let atoms: Vec<String> = f.atoms().iter().map(|a| a.name().to_string()).collect();
    let atoms: Vec<&str> = atoms.iter().map(String::as_str).collect();
    rows(o.n, atoms.len()).all(|r| o.designated(o.eval(f, &atoms, &r)))
}

fn check_schemes(name: &str, m: &Matrix, o: &Oracle, schemes: &[AxiomScheme], wanted: &[String]) -> Result<usize, String> {
    for w in wanted {
        let s = schemes.iter().find(|s| s.name == *w).ok_or_else(|| format!("{name}: scheme {w} is missing"))?;
        ensure!(valid(o, &s.pattern), "{name}: {w} is not valid by the reference semantics");
        ensure!(m.is_valid(&s.pattern) == Ok(true), "{name}: the library does not find {w} valid");
    }
    Ok(wanted.len())
}

pub fn axiom_validity() -> Outcome {
    let mut count = 0;
    for n in 2..=8usize {
        let (spec, m) = logic(&format!("lukasiewicz:{n}"));
        let o = Oracle::new(&spec, &m);
        let schemes = lukasiewicz_axioms(&m).map_err(|e| e.to_string())?;
        let mut wanted: Vec<String> = ["Ax1", "Ax2", "Ax3", "Ax4", "Ax5''"].iter().map(|s| s.to_string()).collect();
        if n == 3 {
            wanted.push("Ax5'".into());
        }
        // 1 < j < n-1 with j not dividing n-1
        let sixes: Vec<String> = (2..n.saturating_sub(1)).filter(|j| (n - 1) % j != 0).map(|j| format!("Ax6_{j}")).collect();
        let listed: Vec<String> = schemes.iter().filter(|s| s.name.starts_with("Ax6_")).map(|s| s.name.clone()).collect();
        ensure!(listed == sixes, "L{n}: applicable Ax6 schemes are {sixes:?}, library lists {listed:?}");
        wanted.extend(sixes);
        count += check_schemes(&format!("L{n}"), &m, &o, &schemes, &wanted)?;
    }
    for n in 2..=7usize {
        let (spec, m) = logic(&format!("godel:{n}"));
        let o = Oracle::new(&spec, &m);
        let schemes = ipc_axioms(&m).map_err(|e| e.to_string())?;
        let wanted: Vec<String> = (1..=11).map(|k| format!("Ax{k}")).collect();
        count += check_schemes(&format!("G{n}"), &m, &o, &schemes, &wanted)?;
    }
    Ok(format!("{count} scheme checks in L2..L8 and G2..G7"))
}

pub fn deduction_bound() -> Outcome {
    let mut pairs = 0usize;
    let mut shown = Vec::new();
    for n in 2..=6usize {
        let (spec, m) = logic(&format!("lukasiewicz:{n}"));
        let o = Oracle::new(&spec, &m);
        let cs = conns(&m, &["neg", "imp"]);
        let atoms = ["p", "q"];
        let family: Vec<Formula> = by_depth(&m, &cs, &atoms, 3).into_iter().flatten().collect();
        let reps = dedup(&o, &atoms, family.iter().cloned());
        let (otimes, imp) = (m.conn_by_name("otimes").unwrap(), m.conn_by_name("imp").unwrap());
        let top = n - 1;
        for a in &reps {
            // A ⊗ ... ⊗ A with n−1 factors
            let power = (1..n - 1).fold(a.formula.clone(), |acc, _| Formula::binary(otimes, a.formula.clone(), acc));
            let power_table: Vec<usize> = a.table.iter().map(|&x| ((n - 1) * x).saturating_sub((n - 2) * top)).collect();
            for b in &reps {
                let entails = a.table.iter().zip(&b.table).all(|(&x, &y)| x != top || y == top);
                let bound = power_table.iter().zip(&b.table).all(|(&x, &y)| (top + y).saturating_sub(x) >= top);
                let shape = || format!("L{n}: A = {}, B = {}", m.render(&a.formula), m.render(&b.formula));
                ensure!(entails == bound, "{}: A ⊨ B is {entails} but ⊨ A^(n-1) → B is {bound}", shape());
                let lib_entails = decide(&m, Mode::Consequence, std::slice::from_ref(&a.formula), &b.formula, Limits::default())
                    .map_err(|e| e.to_string())?
                    .holds;
                let goal = Formula::binary(imp, power.clone(), b.formula.clone());
                let lib_bound = decide(&m, Mode::Valid, &[], &goal, Limits::default()).map_err(|e| e.to_string())?.holds;
                ensure!(lib_entails == entails && lib_bound == bound, "{}: library disagrees with the reference", shape());
                pairs += 1;
            }
        }
        shown.push(format!("L{n}: {} formulas, {} tables", family.len(), reps.len()));
    }
    Ok(format!("{pairs} table pairs ({})", shown.join("; ")))
}

const CUT_OK: &str = "\
1: axiom |- p, q => p => p
2: axiom |- p => p => p, q
3: cut[q @ 0, 1] from 1 2 |- p => p => p
";

const ROUSSEAU_OK: &str = "\
1: axiom |- p => p => p
2: rousseau[~p @ 1 ; 0] from 1 |- p => p => p, ~p
";

const HILBERT_OK: &str = "\
1. p → (q → p) ; Ax1[α:=p, β:=q]
2. (p → (q → p)) → (r → (p → (q → p))) ; Ax1[alpha:=p -> (q -> p), beta:=r]
3. r → (p → (q → p)) ; MP 1 2
4. (p → (q → p)) → (((q → p) → s) → (p → s)) ; Ax2
5. ((q → p) → s) → (p → s) ; MP 1 4
";

pub fn checker_negativity() -> Outcome {
    let (_, m) = logic("lukasiewicz:3");
    let derivation = |text: &str| Derivation::parse(text, &m).map_err(|e| e.to_string());
    for good in [CUT_OK, ROUSSEAU_OK] {
        check_derivation(&derivation(good)?, &m).map_err(|e| format!("a correct derivation was rejected: {e}"))?;
    }
    let bad_sequents = [
        ("cut with equal signs", CUT_OK.replace("cut[q @ 0, 1]", "cut[q @ 0, 0]"), "3", "i ≠ j"),
        ("cut with swapped signs", CUT_OK.replace("cut[q @ 0, 1]", "cut[q @ 1, 0]"), "3", "missing"),
        ("cut with a foreign sign", CUT_OK.replace("cut[q @ 0, 1]", "cut[q @ 0, 1/2]"), "3", "missing"),
        (
            "wrong Rousseau value",
            ROUSSEAU_OK.replace("rousseau[~p @ 1 ; 0] from 1 |- p => p => p, ~p", "rousseau[~p @ 1/2 ; 0] from 1 |- p => p, ~p => p"),
            "2",
            "rousseau requires",
        ),
        (
            "wrong Rousseau input",
            ROUSSEAU_OK.replace("rousseau[~p @ 1 ; 0]", "rousseau[~p @ 1 ; 1/2]"),
            "2",
            "rousseau requires",
        ),
    ];
    for (what, text, step, reason) in &bad_sequents {
        match check_derivation(&derivation(text)?, &m) {
            Ok(()) => return Err(format!("{what}: accepted")),
            Err(e) => ensure!(e.step == *step && e.reason.contains(reason), "{what}: rejected as `{e}`, expected step {step}"),
        }
    }

    let proof = |text: &str| HilbertProof::parse(text, &m).map_err(|e| e.to_string());
    check_hilbert_proof(&proof(HILBERT_OK)?, HilbertSystem::Ax1To4, &m).map_err(|e| format!("a correct proof was rejected: {e}"))?;
    let bad_proofs = [
        ("MP with swapped premisses", HILBERT_OK.replace("MP 1 2", "MP 2 1"), 3, "is not"),
        ("MP citing a later line", HILBERT_OK.replace("MP 1 2", "MP 1 4"), 3, "not an earlier line"),
        ("MP on the wrong antecedent", HILBERT_OK.replace("MP 1 4", "MP 3 4"), 5, "is not"),
        (
            "instance against its substitution",
            HILBERT_OK.replace("beta:=r]", "beta:=s]"),
            2,
            "not an instance",
        ),
        (
            "instance of the wrong shape",
            HILBERT_OK.replace("(((q → p) → s) → (p → s)) ; Ax2", "(((q → p) → s) → (q → s)) ; Ax2"),
            4,
            "not an instance",
        ),
        ("scheme outside the system", HILBERT_OK.replace("Ax2", "Ax5"), 4, "not an axiom"),
    ];
    for (what, text, line, reason) in &bad_proofs {
        match check_hilbert_proof(&proof(text)?, HilbertSystem::Ax1To4, &m) {
            Ok(()) => return Err(format!("{what}: accepted")),
            Err(e) => ensure!(e.line == *line && e.reason.contains(reason), "{what}: rejected as `{e}`, expected line {line}"),
        }
    }
    Ok(format!("{} corrupted derivations and {} corrupted proofs rejected at the right place", bad_sequents.len(), bad_proofs.len()))
}
