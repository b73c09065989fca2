//! MV-algebra identities and classification, and one-variable McNaughton
//! functions against exact evaluation.

use std::collections::HashMap;

use mvlogic::mv::ideals::{enumerate_ideals, is_maximal, is_prime, radical};
use mvlogic::mv::{
    check_axioms, check_axioms_on, classify, mcnaughton_compile, pl_decide, AxiomSystem, ChangAlgebra, ElementOrder,
    FiniteMv, Ideal, LexPair, MvAlgebra, PlQuery,
};
use mvlogic::{decide, Formula, Limits, Matrix, Mode, Rational};

use crate::family::{by_depth, conns};
use crate::{ensure, logic, Outcome};

/// A finite algebra with the number of chain factors it was built from.
struct Member {
    alg: FiniteMv,
    factors: usize,
}

fn family() -> Result<Vec<Member>, String> {
    let e = |x: mvlogic::mv::MvError| x.to_string();
    let mut out = Vec::new();
    for n in 2..=9 {
        out.push(Member { alg: FiniteMv::chain(n).map_err(e)?, factors: 1 });
    }
    for a in 2..=4 {
        for b in 2..=4 {
            if a * b <= 9 {
                let p = FiniteMv::product(&FiniteMv::chain(a).map_err(e)?, &FiniteMv::chain(b).map_err(e)?);
                out.push(Member { alg: p, factors: 2 });
            }
        }
    }
    let two = FiniteMv::chain(2).map_err(e)?;
    out.push(Member { alg: FiniteMv::product(&FiniteMv::product(&two, &two), &two), factors: 3 });
    Ok(out)
}

pub fn mv_suite() -> Outcome {
    let e = |x: mvlogic::mv::MvError| x.to_string();
    for n in 2..=8 {
        let alg = FiniteMv::chain(n).map_err(e)?;
        for sys in [AxiomSystem::M, AxiomSystem::C, AxiomSystem::L, AxiomSystem::Facts] {
            check_axioms(&alg, sys).map_err(|f| format!("I{n}: {f}"))?;
        }
    }

    let mut algebras = 0;
    let mut ideals_seen = 0;
    let mut members = family()?;
    // quotients of the products by each proper nonzero ideal
    let mut quotients = Vec::new();
    for m in members.iter().filter(|m| m.factors > 1) {
        for j in enumerate_ideals(&m.alg) {
            if j.is_proper(&m.alg) && j.len() > 1 {
                let (q, _) = m.alg.quotient(j).map_err(e)?;
                // killing a nonzero ideal of a product of chains removes whole factors
                let maximal = is_maximal(&m.alg, j).map_err(e)?;
                quotients.push(Member { factors: if maximal { 1 } else { m.factors - 1 }, alg: q });
            }
        }
    }
    members.extend(quotients);

    for m in &members {
        let alg = &m.alg;
        let name = alg.name().to_string();
        ensure!(alg.size() <= 9, "{name} has more than 9 elements");
        check_axioms(alg, AxiomSystem::M).map_err(|f| format!("{name}: {f}"))?;
        check_axioms(alg, AxiomSystem::Facts).map_err(|f| format!("{name}: {f}"))?;
        let c = classify(alg).map_err(|x| format!("{name}: {x}"))?;
        // every finite MV-algebra is a product of chains, hence semisimple
        // and hyperarchimedean; it is simple exactly when it is one chain
        ensure!(c.semisimple && c.hyperarchimedean, "{name}: finite algebras are semisimple and hyperarchimedean");
        ensure!(c.simple == (m.factors == 1), "{name}: simple should be {}", m.factors == 1);
        ensure!(c.simple == alg.is_total(), "{name}: simple versus totally ordered");
        ensure!(c.center.len() == 1 << m.factors, "{name}: the center has 2^{} elements", m.factors);

        let ideals = enumerate_ideals(alg);
        let zero = Ideal::from_elements([alg.zero()]);
        let mut maximals = 0;
        for &j in &ideals {
            ideals_seen += 1;
            let prime = is_prime(alg, j).map_err(|x| format!("{name}: {x}"))?;
            let maximal = is_maximal(alg, j).map_err(|x| format!("{name}: {x}"))?;
            radical(alg, j).map_err(|x| format!("{name}: {x}"))?;
            if j.is_proper(alg) {
                let (q, _) = alg.quotient(j).map_err(e)?;
                ensure!(prime == q.is_total(), "{name}: {} is prime iff its quotient is a chain", j.show(alg));
                ensure!(maximal == classify(&q).map_err(e)?.simple, "{name}: {} is maximal iff its quotient is simple", j.show(alg));
            }
            ensure!(prime == maximal, "{name}: in a finite algebra prime and maximal ideals coincide");
            maximals += usize::from(maximal);
        }
        ensure!(maximals == m.factors, "{name}: {maximals} maximal ideals, expected {}", m.factors);
        ensure!(is_prime(alg, zero).map_err(e)? == alg.is_total(), "{name}: {{0}} is prime iff the algebra is a chain");
        algebras += 1;
    }

    let sample = ChangAlgebra::sample(20);
    let expected: usize = 2 * 21;
    ensure!(sample.len() == expected, "Chang sample has {} elements", sample.len());
    check_axioms_on(&ChangAlgebra, &sample, AxiomSystem::M).map_err(|f| format!("Chang: {f}"))?;
    for k in 1..=50 {
        let multiple = ChangAlgebra.times(k, LexPair::new(0, 1));
        ensure!(multiple != LexPair::UNIT, "k·(0,1) reached 1 at k={k}");
    }
    match ChangAlgebra.element_order(LexPair::new(0, 1)).map_err(e)? {
        ElementOrder::Infinite(cert) => Ok(format!(
            "I2..I8 pass M, C, L; {algebras} algebras with {ideals_seen} ideals classified consistently; Chang passes M1-M8 on {} triples; (0,1): {cert}",
            expected.pow(3)
        )),
        ElementOrder::Finite(k) => Err(format!("(0,1) reported of finite order {k}")),
    }
}

/// Exact Łukasiewicz value of a one-atom formula at `x`.
fn value_at(m: &Matrix, f: &Formula, x: Rational) -> Rational {
    let one = Rational::from_integer(1);
    let zero = Rational::from_integer(0);
    match f {
        Formula::Atom(_) => x,
        Formula::App(c, args) => {
            let v: Vec<Rational> = args.iter().map(|a| value_at(m, a, x)).collect();
            match m.connective(*c).name.as_str() {
                "neg" => one - v[0],
                "oplus" => (v[0] + v[1]).min(one),
                "otimes" => (v[0] + v[1] - one).max(zero),
                "imp" => (one - v[0] + v[1]).min(one),
                other => panic!("unexpected connective {other}"),
            }
        }
    }
}

/// Points `i/k` of `[0,1]` with `k ≤ max`, without repeats.
fn farey(max: i64) -> Vec<Rational> {
    let mut pts: Vec<Rational> = (1..=max).flat_map(|k| (0..=k).map(move |i| Rational::new(i, k))).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Grid of the finite Łukasiewicz chains with at most 13 values.
const GRID_MAX: i64 = 12;
/// Breakpoints of a depth-3 formula over these connectives have
/// denominators at most 16, so values on this grid pin the function down.
const KEY_MAX: i64 = 24;

pub fn mcnaughton_suite() -> Outcome {
    let (_, m) = logic("lukasiewicz:3");
    let cs = conns(&m, &["oplus", "otimes", "neg", "imp"]);
    let grid = farey(GRID_MAX);
    let key_pts = farey(KEY_MAX);
    let one = Rational::from_integer(1);
    let chains: Vec<Matrix> = (2..=13).map(|n| logic(&format!("lukasiewicz:{n}")).1).collect();

    let check = |f: &Formula, values: &dyn Fn(Rational) -> Rational| -> Result<bool, String> {
        let pl = mcnaughton_compile(&m, f).map_err(|x| format!("{}: {x}", m.render(f)))?;
        pl.check().map_err(|x| format!("{}: {x}", m.render(f)))?;
        let mut grid_one = true;
        for &x in &grid {
            let want = values(x);
            ensure!(pl.eval(x) == want, "{}: compiled value at {x} is {}, expected {want}", m.render(f), pl.eval(x));
            grid_one &= want == one;
        }
        let is_one = pl_decide(&m, f, &PlQuery::IsOne).map_err(|x| x.to_string())?;
        ensure!(is_one == grid_one, "{}: pl_decide says {is_one}, Ln for n ≤ 13 says {grid_one}", m.render(f));
        Ok(is_one)
    };

    let syntactic: Vec<Formula> = by_depth(&m, &cs, &["p"], 3).into_iter().flatten().collect();
    let mut reps: Vec<(Formula, Vec<Rational>)> = Vec::new();
    let mut seen = HashMap::new();
    let mut tautologies = 0;
    for f in &syntactic {
        tautologies += usize::from(check(f, &|x| value_at(&m, f, x))?);
        let key: Vec<Rational> = key_pts.iter().map(|&x| value_at(&m, f, x)).collect();
        if seen.insert(key.clone(), ()).is_none() {
            reps.push((f.clone(), key));
        }
    }
    // the finite chains themselves, on one formula per function
    for (f, _) in &reps {
        let grid_one = grid.iter().all(|&x| value_at(&m, f, x) == one);
        let all_valid = chains.iter().all(|c| decide(c, Mode::Valid, &[], f, Limits::default()).map(|d| d.holds) == Ok(true));
        ensure!(grid_one == all_valid, "{}: grid and finite chains disagree", m.render(f));
    }

    let at = |k: &[Rational], x: Rational| k[key_pts.binary_search(&x).unwrap()];
    let mut deeper = 0;
    for &c in &cs {
        let arity = m.arity(c);
        for (a, ka) in &reps {
            let partners: Vec<&(Formula, Vec<Rational>)> = if arity == 1 { vec![&reps[0]] } else { reps.iter().collect() };
            for (b, kb) in partners {
                let f = if arity == 1 { Formula::unary(c, a.clone()) } else { Formula::binary(c, a.clone(), b.clone()) };
                let values = |x: Rational| {
                    let (u, v) = (at(ka, x), at(kb, x));
                    match m.connective(c).name.as_str() {
                        "neg" => one - u,
                        "oplus" => (u + v).min(one),
                        "otimes" => (u + v - one).max(Rational::from_integer(0)),
                        _ => (one - u + v).min(one),
                    }
                };
                tautologies += usize::from(check(&f, &values)?);
                deeper += 1;
            }
        }
    }
    Ok(format!(
        "{} formulas to depth 3 and {deeper} at depth 4 over {} functions; {tautologies} identically 1",
        syntactic.len(),
        reps.len()
    ))
}
