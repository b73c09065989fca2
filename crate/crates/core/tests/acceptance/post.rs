//! Term synthesis over `{∨, ∼}` and the monotonic representation.

use mvlogic::logics::{post_constant_zero, post_monotonic, post_synthesize, MonotoneTuple};
use mvlogic::{Formula, Val};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{rows, Oracle};
use crate::{ensure, logic, Outcome};

/// Only `∨`, `∼` and atoms among `allowed`.
fn in_language(f: &Formula, conns: &[usize], allowed: &[&str]) -> bool {
    match f {
        Formula::Atom(a) => allowed.contains(&a.name()),
        Formula::App(c, args) => conns.contains(&c.index()) && args.iter().all(|a| in_language(a, conns, allowed)),
    }
}

pub fn synthesis() -> Outcome {
    let (spec, m) = logic("post:3");
    let o = Oracle::new(&spec, &m);
    let ids = [m.conn_by_name("or").unwrap().index(), m.conn_by_name("tilde").unwrap().index()];
    let mut sizes = 0usize;
    let mut check = |target: &[usize], atoms: &[&str]| -> Result<(), String> {
        let vals: Vec<Val> = target.iter().map(|x| Val(*x as u8)).collect();
        let f = post_synthesize(3, atoms.len(), &vals).map_err(|e| format!("target {target:?}: {e}"))?;
        ensure!(in_language(&f, &ids, atoms), "target {target:?}: term leaves the {{∨, ∼}} language");
        for (row, args) in rows(3, atoms.len()).enumerate() {
            ensure!(o.eval(&f, atoms, &args) == target[row], "target {target:?} differs at {args:?}");
        }
        sizes += f.size();
        Ok(())
    };
    let unary: Vec<Vec<usize>> = rows(3, 3).collect();
    for t in &unary {
        check(t, &["p"])?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let t: Vec<usize> = (0..9).map(|_| rng.gen_range(0..3)).collect();
        check(&t, &["p", "q"])?;
    }
    let zero = post_constant_zero(3).map_err(|e| e.to_string())?;
    for x in 0..3 {
        ensure!(o.eval(&zero, &["p"], &[x]) == 0, "the cycle term is {} at p={x}", o.eval(&zero, &["p"], &[x]));
    }
    Ok(format!("{} unary and 100 binary targets verified (total term size {sizes}); cycle term is 0 everywhere", unary.len()))
}

pub fn monotonic() -> Outcome {
    let mut checks = 0;
    for n in 2..=6usize {
        let (spec, m) = logic(&format!("post:{n}"));
        let o = Oracle::new(&spec, &m);
        let tilde = m.conn_by_name("tilde").unwrap().index();
        let p = post_monotonic(n).map_err(|e| e.to_string())?;
        for i in 0..n {
            let r = p.rep(i);
            ensure!(r.is_monotone() && r.0.len() == n - 1, "P{n}: rep({i}) = {:?} is not a decreasing (n-1)-tuple", r.0);
            ensure!(p.unrep(&r) == Some(i), "P{n}: unrep(rep({i})) failed");
            // a_k = 1 iff i >= k
            let want = MonotoneTuple((1..n).map(|k| i >= k).collect());
            ensure!(r == want, "P{n}: rep({i}) = {:?}", r.0);
            ensure!(p.shift(&r) == p.rep(o.apply(tilde, &[i])), "P{n}: shift(rep({i})) is not rep(∼{i})");
            for j in 0..n {
                ensure!(r.join(&p.rep(j)) == p.rep(i.max(j)), "P{n}: rep({i}) ∨ rep({j})");
                ensure!(r.meet(&p.rep(j)) == p.rep(i.min(j)), "P{n}: rep({i}) ∧ rep({j})");
                checks += 2;
            }
            checks += 3;
        }
        let monotone = (0..1usize << (n - 1))
            .map(|bits| MonotoneTuple((0..n - 1).map(|k| bits >> k & 1 == 1).collect()))
            .filter(MonotoneTuple::is_monotone)
            .count();
        ensure!(monotone == n, "P{n}: {monotone} decreasing tuples, expected {n}");
    }
    Ok(format!("{checks} identities for P2..P6"))
}
