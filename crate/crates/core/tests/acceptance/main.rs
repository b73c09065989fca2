//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Pass criterion numbers as arguments to run a subset, e.g.
//! `cargo test --test acceptance -- 4 9`.

mod family;
mod gate;
mod mv;
mod oracle;
mod post;
mod proofs;
mod tables;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use mvlogic::logics::{builtin, BuiltinSpec};
use mvlogic::Matrix;

/// `Ok` carries a one-line summary, `Err` the first failure found.
pub type Outcome = Result<String, String>;

pub fn logic(name: &str) -> (BuiltinSpec, Matrix) {
    let spec = BuiltinSpec::parse(name).unwrap();
    let m = builtin(&spec).unwrap();
    (spec, m)
}

/// Fails the criterion with a formatted message unless `cond` holds.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const CRITERIA: [(&str, fn() -> Outcome); 13] = [
    ("truth-table fidelity", tables::truth_tables),
    ("implication normal forms in L3", tables::implication_normal_forms),
    ("clausal form of p -> (p -> ~p)", tables::clausify_example),
    ("cross-engine agreement", gate::cross_engine),
    ("normal-form soundness", tables::normal_form_soundness),
    ("axiom validity", proofs::axiom_validity),
    ("N(p) property", tables::negation_markers),
    ("MV axioms and classification", mv::mv_suite),
    ("McNaughton functions", mv::mcnaughton_suite),
    ("Post synthesis", post::synthesis),
    ("monotonic representation", post::monotonic),
    ("deduction bound in Ln", proofs::deduction_bound),
    ("checker negativity", proofs::checker_negativity),
];

fn main() -> ExitCode {
    let picked: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, (name, run)) in CRITERIA.iter().enumerate() {
        let no = k + 1;
        if !picked.is_empty() && !picked.contains(&no) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {no:>2} {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {no:>2} {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
