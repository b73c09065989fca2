use std::path::PathBuf;
use std::process::Command;

use mvl_cli::logic_file::{parse_logic_file, write_logic_file};
use mvlogic::logics::{builtin, BuiltinSpec};

fn mvl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mvl")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = mvl_cli::run(std::iter::once("mvl").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("logics").join(name)
}

const GOLDEN: [(&str, &str); 12] = [
    ("classical.logic", "classical"),
    ("l3.logic", "lukasiewicz:3"),
    ("l4.logic", "lukasiewicz:4"),
    ("l5.logic", "lukasiewicz:5"),
    ("g3.logic", "godel:3"),
    ("g4.logic", "godel:4"),
    ("p3.logic", "post:3"),
    ("p4.logic", "post:4"),
    ("kleene-strong.logic", "kleene-strong"),
    ("kleene-weak.logic", "kleene-weak"),
    ("bochvar.logic", "bochvar"),
    ("belnap.logic", "belnap"),
];

#[test]
fn golden_files_match_builtins() {
    for (file, spec) in GOLDEN {
        let text = std::fs::read_to_string(golden(file)).unwrap();
        let m = builtin(&BuiltinSpec::parse(spec).unwrap()).unwrap();
        assert_eq!(parse_logic_file(&text).unwrap(), m, "{file}");
        assert_eq!(write_logic_file(&m), text, "{file}");
    }
}

#[test]
fn every_builtin_round_trips() {
    let mut specs: Vec<String> = ["classical", "kleene-strong", "kleene-weak", "bochvar", "belnap"].map(String::from).to_vec();
    for n in 2..=7 {
        specs.push(format!("lukasiewicz:{n}"));
        specs.push(format!("godel:{n}"));
        for m in 1..n {
            specs.push(format!("post:{n}:{m}"));
        }
    }
    for s in specs {
        let m = builtin(&BuiltinSpec::parse(&s).unwrap()).unwrap();
        assert_eq!(parse_logic_file(&write_logic_file(&m)).unwrap(), m, "{s}");
    }
}

#[test]
fn logic_file_errors() {
    let short = "name: t\nvalues: 0 1/2 1\ndesignated: 1\nconnective neg 1:\n  1 0\n";
    assert_eq!(parse_logic_file(short).unwrap_err().to_string(), "table size mismatch at line 5");
    let rows = "values: 0 1\ndesignated: 1\nconnective and 2:\n  0 0\n";
    assert_eq!(parse_logic_file(rows).unwrap_err().to_string(), "table size mismatch at line 3");
    let dup = "values: 0 1/2 1 1\ndesignated: 1\nconnective neg 1:\n  1 1/2 0 0\n";
    assert!(parse_logic_file(dup).unwrap_err().to_string().starts_with("duplicate value"));
    assert_eq!(parse_logic_file("designated: 1\n").unwrap_err().to_string(), "missing section `values`");
}

#[test]
fn check_and_xcheck_examples() {
    let (code, out, _) = mvl(&["check", "--logic", "lukasiewicz:3", "--method", "tableau", "p -> p"]);
    assert_eq!((code, out.as_str()), (0, "valid\n"));
    let (code, out, _) = mvl(&["xcheck", "--logic", "lukasiewicz:3", "p | ~p"]);
    assert_eq!(code, 1);
    for engine in ["table", "tableau", "sequent", "resolution"] {
        assert!(out.contains(&format!("{engine}: invalid (p=1/2)")), "{out}");
    }
    let (code, out, _) = mvl(&["cnf", "--logic", "lukasiewicz:3", "--conn", "imp", "--value", "0"]);
    assert_eq!((code, out.as_str()), (0, "p:{1}\nq:{0}\n"));
}

#[test]
fn file_logic_and_methods() {
    let path = golden("l3.logic");
    let l3 = path.to_str().unwrap();
    for method in ["table", "tableau", "sequent", "resolution"] {
        let (code, out) = run(&["check", "--logic", l3, "--method", method, "p, p -> q |- q"]);
        assert_eq!((code, out.as_str()), (0, "consequence holds\n"), "{method}");
        let (code, out) = run(&["check", "--logic", l3, "--method", method, "p -> q |- q"]);
        assert_eq!(code, 1, "{method}");
        assert!(out.starts_with("consequence fails\ncountermodel: "), "{method}: {out}");
    }
}

#[test]
fn exit_status_contract() {
    assert_eq!(mvl(&["check", "--logic", "lukasiewicz:3", "p ->"]).0, 2);
    assert_eq!(mvl(&["check", "--logic", "nonesuch", "p"]).0, 2);
    assert_eq!(mvl(&["frobnicate"]).0, 2);
    assert_eq!(mvl(&["check", "--logic", "belnap", "p"]).0, 2);
    let wide: Vec<String> = (0..17).map(|i| format!("p{i}")).collect();
    let (code, _, err) = mvl(&["check", "--logic", "classical", &wide.join(" | ")]);
    assert_eq!(code, 3, "{err}");
    assert_eq!(mvl(&["check", "--logic", "godel:3", "--method", "resolution", "p"]).0, 2);
    assert_eq!(mvl(&["mv", "grid", "x -> y", "--max-denominator", "50", "--cap", "10"]).0, 3);
    let (code, out, _) = mvl(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Exit status"));
}

#[test]
fn proof_objects() {
    let (code, out) = run(&["prove", "--logic", "lukasiewicz:3", "--method", "tableau", "p -> p"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("root"), "{out}");
    let (code, out) = run(&["prove", "--logic", "lukasiewicz:3", "--method", "resolution", "p -> (q -> p)"]);
    assert_eq!(code, 0);
    assert!(out.contains("refutation:") && out.contains("□"), "{out}");
    let (code, out) = run(&["prove", "--logic", "lukasiewicz:3", "--method", "sequent", "p | ~p"]);
    assert_eq!((code, out.as_str()), (1, "countermodel: p=1/2\n"));
}

#[test]
fn sequent_proofs_verify() {
    let dir = std::env::temp_dir().join(format!("mvl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (code, proof) = run(&["prove", "--logic", "lukasiewicz:3", "--method", "sequent", "(p -> q) -> ((q -> r) -> (p -> r))"]);
    assert_eq!(code, 0);
    let file = dir.join("good.deriv");
    std::fs::write(&file, &proof).unwrap();
    let (code, out) = run(&["verify-derivation", "--logic", "lukasiewicz:3", file.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "derivation accepted\n"));

    let bad = dir.join("bad.hilbert");
    std::fs::write(&bad, "1. p -> (q -> p) ; Ax1[α:=p, β:=q]\n2. p ; MP 1 1\n").unwrap();
    let (code, out) = run(&["verify-hilbert", "--logic", "lukasiewicz:3", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("rejected: line 2"), "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn mv_commands() {
    assert_eq!(run(&["mv", "compile", "x + x"]), (0, "[0,1/2]: 2x+0 ; [1/2,1]: 0x+1\n".into()));
    assert_eq!(run(&["mv", "decide", "x | ~x"]), (1, "false\n".into()));
    assert_eq!(run(&["mv", "decide", "x + ~x"]).0, 0);
    assert_eq!(run(&["mv", "decide", "~(~x + ~x)", "--equals", "x * x"]).0, 0);
    assert_eq!(run(&["mv", "grid", "(x + x) -> x", "--max-denominator", "2"]), (1, "counterexample: x=1/2 (value 1/2)\n".into()));
    assert_eq!(run(&["mv", "grid", "x -> (y -> x)"]).0, 0);
    assert_eq!(run(&["mv", "chang", "oplus", "(0,1)", "(0,2)"]), (0, "(0,3)\n".into()));
    assert_eq!(run(&["mv", "chang", "neg", "(0,1)"]), (0, "(1,-1)\n".into()));
    assert_eq!(run(&["mv", "chang", "order", "(0,1)"]).0, 1);
    assert_eq!(run(&["mv", "chang", "oplus", "(2,0)", "(0,0)"]).0, 2);
    assert_eq!(run(&["mv", "order", "chain:4", "1/3"]), (0, "3\n".into()));
    assert_eq!(run(&["mv", "axioms", "chain:8"]).0, 0);
    assert_eq!(run(&["mv", "axioms", "gamma:3", "--system", "C"]).0, 0);
    let (code, out) = run(&["mv", "classify", "chain:5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "simple: true\nsemisimple: true\nhyperarchimedean: true\ncenter: {0,1}\n");
    assert_eq!(run(&["mv", "generate", "chain:3*chain:3", "(0,1/2)"]), (0, "{(0,0),(0,1/2),(0,1)}\n".into()));
    let (code, out) = run(&["mv", "ideals", "chain:3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert!(out.starts_with("{0}  prime: true  maximal: true  radical: {0}"), "{out}");
}

#[test]
fn mv_files() {
    let dir = std::env::temp_dir().join(format!("mvl-mv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, text) = run(&["mv", "show", "chain:3"]);
    let good = dir.join("i3.mv");
    std::fs::write(&good, &text).unwrap();
    assert_eq!(run(&["mv", "axioms", good.to_str().unwrap()]).0, 0);
    let corrupted = text.replacen("  1/2 1   1", "  1/2 1/2 1", 1);
    assert_ne!(corrupted, text);
    let bad = dir.join("bad.mv");
    std::fs::write(&bad, corrupted).unwrap();
    let (code, out) = run(&["mv", "axioms", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("rejected: M"), "{out}");
    let (code, q) = run(&["mv", "quotient", "chain:3*chain:3", "(0,1)"]);
    assert_eq!(code, 0);
    assert!(q.contains("values: [(0,0)] [(1/2,0)] [(1,0)]"), "{q}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn synth_verifies() {
    let (code, out) = run(&["synth", "--n", "3", "2 0 1"]);
    assert_eq!(code, 0);
    let m = builtin(&BuiltinSpec::post(3, 2)).unwrap();
    let f = m.parse(out.trim()).unwrap();
    for (i, want) in [2u8, 0, 1].iter().enumerate() {
        let v = [(mvlogic::Atom::new("p"), mvlogic::Val(i as u8))].into_iter().collect();
        assert_eq!(m.eval(&f, &v).unwrap(), mvlogic::Val(*want));
    }
    assert_eq!(run(&["synth", "--n", "3", "2 0"]).0, 2);
}

#[test]
fn xcheck_never_disagrees_on_small_family() {
    let atoms = ["p", "q"];
    for logic in ["classical", "lukasiewicz:3", "godel:3", "kleene-strong", "post:3"] {
        let m = builtin(&BuiltinSpec::parse(logic).unwrap()).unwrap();
        let mut forms: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
        let depth1: Vec<String> = {
            let mut v = Vec::new();
            for (_, c) in m.connectives() {
                match c.arity {
                    0 => v.push(c.name.clone()),
                    1 => forms.iter().for_each(|a| v.push(format!("{}({a})", c.name))),
                    2 => {
                        for a in &forms {
                            for b in &forms {
                                v.push(format!("{}({a}, {b})", c.name));
                            }
                        }
                    }
                    _ => {}
                }
            }
            v
        };
        forms.extend(depth1);
        for f in &forms {
            let (code, out) = run(&["xcheck", "--logic", logic, f]);
            assert!(code == 0 || code == 1, "{logic} {f}: {code}\n{out}");
            let (code, out) = run(&["xcheck", "--logic", logic, &format!("{f} |- p")]);
            assert!(code == 0 || code == 1, "{logic} {f} |- p: {code}\n{out}");
        }
    }
}
