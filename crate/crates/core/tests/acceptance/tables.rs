//! Truth tables, connective normal forms, clausification and N(p).

use mvlogic::formula::placeholder_atoms;
use mvlogic::logics::negation_marker;
use mvlogic::resolution::clausal::clausify;
use mvlogic::signed::{eval_sfe, normal_form};
use mvlogic::{Formula, Matrix, NfMode, Sfe, Sign, SignSystem, Val, Valuation};

use crate::oracle::{rows, Oracle, BOCHVAR_AND, BOCHVAR_IMP, BOCHVAR_NEG, BOCHVAR_OR};
use crate::{ensure, logic, Outcome};

fn label(m: &Matrix, v: Val) -> String {
    m.value(v).to_string()
}

fn val(m: &Matrix, s: &str) -> Val {
    m.value_of(s).unwrap_or_else(|| panic!("{} has no value `{s}`", m.name()))
}

fn apply_labels(m: &Matrix, conn: &str, args: &[&str]) -> String {
    let c = m.conn_by_name(conn).unwrap();
    let xs: Vec<Val> = args.iter().map(|a| val(m, a)).collect();
    label(m, m.apply(c, &xs))
}

/// Built-ins small enough for exhaustive table comparisons.
pub const SMALL_BUILTINS: &[&str] = &[
    "classical",
    "lukasiewicz:3",
    "lukasiewicz:4",
    "lukasiewicz:5",
    "lukasiewicz:6",
    "godel:3",
    "godel:4",
    "godel:5",
    "post:2:1",
    "post:3:0",
    "post:3:1",
    "post:3:2",
    "post:4:1",
    "post:4:3",
    "post:5:2",
    "post:6:5",
    "kleene-strong",
    "kleene-weak",
    "bochvar",
    "belnap",
];

pub fn truth_tables() -> Outcome {
    let (_, l3) = logic("lukasiewicz:3");
    let neg = [("0", "1"), ("1/2", "1/2"), ("1", "0")];
    for (a, want) in neg {
        ensure!(apply_labels(&l3, "neg", &[a]) == want, "L3 ¬{a} should be {want}");
    }
    let cols = ["0", "1/2", "1"];
    let imp = [("0", ["1", "1", "1"]), ("1/2", ["1/2", "1", "1"]), ("1", ["0", "1/2", "1"])];
    for (a, row) in imp {
        for (b, want) in cols.iter().zip(row) {
            ensure!(apply_labels(&l3, "imp", &[a, b]) == want, "L3 {a} → {b} should be {want}");
        }
    }

    let (_, g3) = logic("godel:3");
    let (gi, gn) = (g3.conn_by_name("imp").unwrap(), g3.conn_by_name("neg").unwrap());
    for i in 0..3u8 {
        let want = if i == 0 { 2 } else { 0 };
        ensure!(g3.apply(gn, &[Val(i)]) == Val(want), "G3 ¬{i}");
        for j in 0..3u8 {
            let want = if i <= j { 2 } else { j };
            ensure!(g3.apply(gi, &[Val(i), Val(j)]) == Val(want), "G3 {i} → {j}");
        }
    }

    for n in 2..=6usize {
        let (_, p) = logic(&format!("post:{n}"));
        let (or, tilde) = (p.conn_by_name("or").unwrap(), p.conn_by_name("tilde").unwrap());
        for i in 0..n {
            let shifted = (i + n - 1) % n;
            ensure!(p.apply(tilde, &[Val(i as u8)]) == Val(shifted as u8), "P{n} ∼{i}");
            for j in 0..n {
                ensure!(p.apply(or, &[Val(i as u8), Val(j as u8)]) == Val(i.max(j) as u8), "P{n} {i} ∨ {j}");
            }
        }
    }

    let (_, kw) = logic("kleene-weak");
    let (_, bo) = logic("bochvar");
    let binary = [("or", BOCHVAR_OR), ("and", BOCHVAR_AND), ("imp", BOCHVAR_IMP)];
    for i in 0..3u8 {
        let (a, b) = (kw.conn_by_name("neg").unwrap(), bo.conn_by_name("neg").unwrap());
        ensure!(kw.apply(a, &[Val(i)]) == bo.apply(b, &[Val(i)]), "weak Kleene and Bochvar differ at ¬{i}");
        ensure!(bo.apply(b, &[Val(i)]) == Val(BOCHVAR_NEG[i as usize] as u8), "Bochvar ¬{i}");
        for j in 0..3u8 {
            for (name, table) in binary {
                let (a, b) = (kw.conn_by_name(name).unwrap(), bo.conn_by_name(name).unwrap());
                let (x, y) = (kw.apply(a, &[Val(i), Val(j)]), bo.apply(b, &[Val(i), Val(j)]));
                ensure!(x == y, "weak Kleene and Bochvar differ at {i} {name} {j}");
                ensure!(y == Val(table[i as usize][j as usize] as u8), "Bochvar {i} {name} {j}");
            }
        }
    }

    let (_, bel) = logic("belnap");
    for (a, want) in [("∅", "∅"), ("01", "01"), ("0", "1"), ("1", "0")] {
        ensure!(apply_labels(&bel, "neg", &[a]) == want, "Belnap ¬{a} should be {want}");
    }

    let mut entries = 0;
    for name in SMALL_BUILTINS {
        let (spec, m) = logic(name);
        let o = Oracle::new(&spec, &m);
        for (c, con) in m.connectives() {
            for args in rows(m.size(), con.arity) {
                let xs: Vec<Val> = args.iter().map(|x| Val(*x as u8)).collect();
                ensure!(
                    m.apply(c, &xs).index() == o.apply(c.index(), &args),
                    "{name}: `{}` at {args:?} differs from its definition",
                    con.name
                );
                entries += 1;
            }
        }
        for v in 0..m.size() {
            ensure!(m.is_designated(Val(v as u8)) == o.designated(v), "{name}: designation of {v}");
        }
    }
    Ok(format!("reference tables exact; {entries} entries of {} built-ins match their definitions", SMALL_BUILTINS.len()))
}

fn lit(m: &Matrix, atom: &str, value: &str) -> Sfe {
    Sfe::lit(Formula::atom(atom), Sign::singleton(val(m, value)))
}

fn and(xs: Vec<Sfe>) -> Sfe {
    Sfe::And(xs)
}

fn or(xs: Vec<Sfe>) -> Sfe {
    Sfe::Or(xs)
}

fn valuation(pairs: &[(&str, Val)]) -> Valuation {
    pairs.iter().map(|(a, v)| (mvlogic::Atom::new(a), *v)).collect()
}

pub fn implication_normal_forms() -> Outcome {
    let (_, m) = logic("lukasiewicz:3");
    let l = |a: &str, v: &str| lit(&m, a, v);
    let reference: Vec<(&str, Vec<Sfe>)> = vec![
        ("0", vec![and(vec![l("p", "1"), l("q", "0")])]),
        (
            "1/2",
            vec![
                or(vec![and(vec![l("p", "1/2"), l("q", "0")]), and(vec![l("p", "1"), l("q", "1/2")])]),
                and(vec![
                    or(vec![l("p", "1/2"), l("p", "1")]),
                    or(vec![l("p", "1/2"), l("q", "1/2")]),
                    or(vec![l("q", "0"), l("p", "1")]),
                    or(vec![l("q", "0"), l("q", "1/2")]),
                ]),
                and(vec![or(vec![l("p", "1/2"), l("q", "1/2")]), or(vec![l("q", "0"), l("p", "1")])]),
            ],
        ),
        (
            "1",
            vec![
                or(vec![l("p", "0"), l("q", "1"), and(vec![l("p", "1/2"), l("q", "1/2")])]),
                and(vec![or(vec![l("p", "0"), l("q", "1"), l("p", "1/2")]), or(vec![l("p", "0"), l("q", "1"), l("q", "1/2")])]),
            ],
        ),
    ];
    let imp = m.conn_by_name("imp").unwrap();
    let sys = SignSystem::singletons(&m);
    let mut checked = 0;
    for (value, forms) in &reference {
        let target = val(&m, value);
        for mode in [NfMode::Cnf, NfMode::Dnf] {
            let nf = normal_form(&m, imp, Sign::singleton(target), mode, &sys).map_err(|e| e.to_string())?.to_sfe();
            for (k, form) in forms.iter().enumerate() {
                for (a, b) in m.all_values().flat_map(|a| m.all_values().map(move |b| (a, b))) {
                    let v = valuation(&[("p", a), ("q", b)]);
                    let truth = m.apply(imp, &[a, b]) == target;
                    let got = eval_sfe(&nf, &v, &m).unwrap();
                    let want = eval_sfe(form, &v, &m).unwrap();
                    ensure!(want == truth, "reference form {} for value {value} is wrong at p={}, q={}", k + 1, label(&m, a), label(&m, b));
                    ensure!(got == want, "{mode} at {value} differs from reference form {} at p={}, q={}", k + 1, label(&m, a), label(&m, b));
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("CNF and DNF at 0, 1/2, 1 equal all reference forms on {checked} checks"))
}

pub fn clausify_example() -> Outcome {
    let (_, m) = logic("lukasiewicz:3");
    let f = m.parse("p -> (p -> ~p)").unwrap();
    let clauses = clausify(&f, &m).map_err(|e| e.to_string())?;
    let shown: Vec<String> = clauses.iter().map(|c| c.show(&m)).collect();
    for x in m.all_values() {
        let v = valuation(&[("p", x)]);
        let got = clauses.iter().all(|c| c.holds(&v));
        let expected = x == val(&m, "0") || x == val(&m, "1/2");
        ensure!(got == expected, "clauses {shown:?} disagree with {{p^0, p^1/2}} at p={}", label(&m, x));
    }
    Ok(format!("clauses [{}] equal {{p^0, p^1/2}} on all 3 values", shown.join("; ")))
}

pub fn normal_form_soundness() -> Outcome {
    let mut checked = 0usize;
    let mut forms = 0usize;
    for name in SMALL_BUILTINS {
        let (spec, m) = logic(name);
        let o = Oracle::new(&spec, &m);
        let sys = SignSystem::default_for(&m);
        for (c, con) in m.connectives() {
            let atoms = placeholder_atoms(con.arity);
            for sign in sys.iter() {
                for mode in [NfMode::Cnf, NfMode::Dnf] {
                    let nf = normal_form(&m, c, sign, mode, &sys).map_err(|e| format!("{name} {}: {e}", con.name))?.to_sfe();
                    forms += 1;
                    for args in rows(m.size(), con.arity) {
                        let v: Valuation = atoms.iter().cloned().zip(args.iter().map(|x| Val(*x as u8))).collect();
                        let want = sign.contains(Val(o.apply(c.index(), &args) as u8));
                        ensure!(
                            eval_sfe(&nf, &v, &m).unwrap() == want,
                            "{name}: {mode} of `{}` at {} fails at {args:?}",
                            con.name,
                            m.show_set(sign.set())
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{forms} normal forms over {} built-ins, {checked} rows", SMALL_BUILTINS.len()))
}

pub fn negation_markers() -> Outcome {
    let mut shown = Vec::new();
    for name in ["classical", "lukasiewicz:3", "lukasiewicz:4", "lukasiewicz:5", "post:3:1", "post:3:2"] {
        let (spec, m) = logic(name);
        let o = Oracle::new(&spec, &m);
        let marker = negation_marker(&m).map_err(|e| format!("{name}: {e}"))?;
        for i in 0..m.size() {
            let out = o.eval(&marker, &["p"], &[i]);
            ensure!(o.designated(i) != o.designated(out), "{name}: N({}) = {}", label(&m, Val(i as u8)), label(&m, Val(out as u8)));
        }
        shown.push(format!("{name}: size {}", marker.size()));
    }
    Ok(shown.join(", "))
}
