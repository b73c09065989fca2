//! Command definitions and dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use mvlogic::decide::{decide, DecideError, Limits, Mode};
use mvlogic::deduction::{
    check_derivation, check_hilbert_proof, sequent_consequence, Derivation, HilbertProof, HilbertSystem,
    SequentError,
};
use mvlogic::eval::Valuation;
use mvlogic::logics::{builtin, negation_marker, post_matrix, post_synthesize, BuiltinSpec};
use mvlogic::mv::{
    self, check_axioms, chang_op, classify, grid_falsify, mcnaughton_compile, parse_mv_file, pl_decide, write_mv_file,
    AxiomSystem, ChangAlgebra, ChangOp, FiniteMv, Ideal, LexPair, MvAlgebra, MvError, PlQuery,
};
use mvlogic::resolution::{resolve_consequence, ResolutionError, SaturateOptions};
use mvlogic::signed::{normal_form, NfMode, SignSystem};
use mvlogic::tableau::{tableau_decide, TableauError, TableauOptions};
use mvlogic::{Formula, Matrix, Sign, Val, ValueSet};

use crate::logic_file::{parse_logic_file, write_logic_file};
use crate::query::{parse_query, split_top, Query};

const EXIT_CODES: &str = "Exit status: 0 affirmative verdict, 1 negative verdict, 2 usage or parse error, \
3 resource bound exceeded, 4 engines disagree.\n\
Logics: classical, lukasiewicz:N, godel:N, post:N[:M], kleene-strong, kleene-weak, bochvar, belnap, or a .logic file.\n\
Queries: `B1, B2 |- A` asks for consequence; a bare formula asks for validity.";

#[derive(Parser, Debug)]
#[command(name = "mvl", version, about = "Finite-valued propositional logic workbench", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Table,
    Tableau,
    Sequent,
    Resolution,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a formula under an assignment, or print its truth table.
    Eval {
        #[arg(long, default_value = "classical")]
        logic: String,
        /// Assignment such as `p=1/2,q=0`; omit for the full table.
        #[arg(long)]
        assign: Option<String>,
        formula: String,
    },
    /// Decide validity or consequence with one engine.
    Check {
        #[arg(long, default_value = "classical")]
        logic: String,
        #[arg(long, value_enum, default_value = "table")]
        method: Method,
        /// Seed for randomized clause selection in resolution.
        #[arg(long)]
        seed: Option<u64>,
        query: String,
    },
    /// Print a proof object (tableau, derivation or refutation) or a countermodel.
    Prove {
        #[arg(long, default_value = "classical")]
        logic: String,
        #[arg(long, value_enum, default_value = "tableau")]
        method: Method,
        #[arg(long)]
        seed: Option<u64>,
        query: String,
    },
    /// Signed CNF of a connective at a value or value set.
    Cnf {
        #[arg(long, default_value = "classical")]
        logic: String,
        #[arg(long)]
        conn: String,
        /// A value such as `1/2` or a set such as `{0,1/2}`.
        #[arg(long)]
        value: String,
    },
    /// Signed DNF of a connective at a value or value set.
    Dnf {
        #[arg(long, default_value = "classical")]
        logic: String,
        #[arg(long)]
        conn: String,
        #[arg(long)]
        value: String,
    },
    /// Build a term over Post's ∨ and ∼ for a given function on n values.
    Synth {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        arity: usize,
        /// Row-major outputs as value indices, e.g. `2 0 1`.
        table: String,
    },
    /// MV-algebra computations.
    Mv {
        #[command(subcommand)]
        command: MvCommand,
    },
    /// Run every applicable engine on a query and compare verdicts.
    Xcheck {
        #[arg(long, default_value = "classical")]
        logic: String,
        #[arg(long)]
        seed: Option<u64>,
        query: String,
    },
    /// Print a logic in the .logic file format.
    ShowLogic {
        #[arg(long, default_value = "classical")]
        logic: String,
    },
    /// Check a many-sided sequent derivation.
    VerifyDerivation {
        #[arg(long, default_value = "classical")]
        logic: String,
        file: PathBuf,
    },
    /// Check a Hilbert-style proof.
    VerifyHilbert {
        #[arg(long, default_value = "lukasiewicz:3")]
        logic: String,
        /// One of Ax1-4, Ax1-4+5, Ax1-3+5', Ax1-4+5''+6j.
        #[arg(long, default_value = "Ax1-4")]
        system: String,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum MvCommand {
    /// Check an algebra against an axiom system (L, C, M or facts).
    Axioms {
        /// `chain:N`, `gamma:U`, `A*B` for a product, or an .mv file.
        algebra: String,
        #[arg(long, default_value = "M")]
        system: String,
    },
    /// Print an algebra in the .mv file format.
    Show { algebra: String },
    /// Simple, semisimple, hyperarchimedean and the center.
    Classify { algebra: String },
    /// Every ideal with its prime/maximal status and radical.
    Ideals { algebra: String },
    /// The ideal generated by some elements.
    Generate { algebra: String, elements: Vec<String> },
    /// The quotient by the ideal generated by some elements.
    Quotient { algebra: String, elements: Vec<String> },
    /// Least k with k·a = 1.
    Order { algebra: String, element: String },
    /// One operation of Chang's algebra on pairs such as `(0,1)`.
    Chang {
        /// oplus, otimes, neg, vee, wedge, leq or order.
        op: String,
        x: String,
        y: Option<String>,
    },
    /// Piecewise-linear function of a one-variable formula.
    Compile { formula: String },
    /// Decide a one-variable formula over [0,1]: is it 1, or equal to another.
    Decide {
        formula: String,
        #[arg(long)]
        equals: Option<String>,
    },
    /// Look for a rational grid point where a formula is not 1.
    Grid {
        formula: String,
        #[arg(long, default_value_t = 12)]
        max_denominator: usize,
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
    },
}

/// A verdict to report through the exit status.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    Disagree,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Disagree => 4,
        }
    }

    fn of(b: bool) -> Outcome {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl ToString) -> CliError {
    CliError { code: 2, message: message.to_string() }
}

fn resource(message: impl ToString) -> CliError {
    CliError { code: 3, message: message.to_string() }
}

type Res<T> = Result<T, CliError>;

fn io(e: std::io::Error) -> CliError {
    CliError { code: 2, message: e.to_string() }
}

/// A built-in name, or a path to a .logic file.
pub fn load_logic(spec: &str) -> Res<Matrix> {
    let path = Path::new(spec);
    if spec.ends_with(".logic") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{spec}: {e}")))?;
        return parse_logic_file(&text).map_err(|e| usage(format!("{spec}: {e}")));
    }
    let b = BuiltinSpec::parse(spec).map_err(usage)?;
    builtin(&b).map_err(usage)
}

/// `chain:N`, `gamma:U`, products joined by `*`, or a path to an .mv file.
pub fn load_algebra(spec: &str) -> Res<FiniteMv> {
    let spec = spec.trim();
    if Path::new(spec).is_file() || spec.ends_with(".mv") {
        let text = std::fs::read_to_string(spec).map_err(|e| usage(format!("{spec}: {e}")))?;
        return parse_mv_file(&text).map_err(|e| usage(format!("{spec}: {e}")));
    }
    let parts: Vec<&str> = spec.split('*').collect();
    if parts.len() > 1 {
        let mut acc = load_algebra(parts[0])?;
        for p in &parts[1..] {
            acc = FiniteMv::product(&acc, &load_algebra(p)?);
        }
        return Ok(acc);
    }
    let (kind, num) = spec.split_once(':').ok_or_else(|| usage(format!("unknown algebra `{spec}`")))?;
    let k: usize = num.parse().map_err(|_| usage(format!("bad size in `{spec}`")))?;
    match kind {
        "chain" => FiniteMv::chain(k).map_err(usage),
        "gamma" => FiniteMv::gamma_z(k).map_err(usage),
        _ => Err(usage(format!("unknown algebra `{spec}`"))),
    }
}

fn mv_err(e: MvError) -> CliError {
    match e {
        MvError::ResourceCap(_) => resource(e),
        MvError::CrossCheck(_) => CliError { code: 4, message: e.to_string() },
        _ => usage(e),
    }
}

fn decide_err(e: DecideError) -> CliError {
    match e {
        DecideError::TooManyAtoms { .. } => resource(e),
        _ => usage(e),
    }
}

fn tableau_err(e: TableauError) -> CliError {
    match e {
        TableauError::NodeCap(_) => resource(e),
        _ => usage(e),
    }
}

fn sequent_err(e: SequentError) -> CliError {
    match e {
        SequentError::StepCap(_) => resource(e),
        _ => usage(e),
    }
}

fn resolution_err(e: ResolutionError) -> CliError {
    match e {
        ResolutionError::ClauseCap(_) => resource(e),
        _ => usage(e),
    }
}

/// Step cap for sequent proof search.
pub const SEQUENT_STEP_CAP: usize = 1_000_000;

/// What one engine said about a query.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub engine: &'static str,
    pub valid: bool,
    pub counter: Option<Valuation>,
}

fn saturate_opts(seed: Option<u64>) -> SaturateOptions {
    SaturateOptions { seed, ..SaturateOptions::default() }
}

pub fn run_engine(m: &Matrix, q: &Query, method: Method, seed: Option<u64>) -> Res<Verdict> {
    Ok(match method {
        Method::Table => {
            let d = decide(m, Mode::Consequence, &q.premises, &q.goal, Limits::default()).map_err(decide_err)?;
            Verdict { engine: "table", valid: d.holds, counter: d.witness }
        }
        Method::Tableau => {
            let sys = SignSystem::default_for(m);
            let o = tableau_decide(&q.premises, &q.goal, m, &sys, TableauOptions::default()).map_err(tableau_err)?;
            Verdict { engine: "tableau", valid: o.valid, counter: o.countermodel }
        }
        Method::Sequent => {
            let o = sequent_consequence(&q.premises, &q.goal, m, SEQUENT_STEP_CAP).map_err(sequent_err)?;
            Verdict { engine: "sequent", valid: o.valid, counter: o.counter }
        }
        Method::Resolution => {
            let o = resolve_consequence(&q.premises, &q.goal, m, saturate_opts(seed)).map_err(resolution_err)?;
            Verdict { engine: "resolution", valid: o.valid, counter: o.countermodel }
        }
    })
}

/// Whether `v` designates every premise and not the goal.
pub fn is_countermodel(m: &Matrix, q: &Query, v: &Valuation) -> bool {
    let d = |f: &Formula| m.eval_with(f, &|a| Some(v.get(a).copied().unwrap_or(Val(0)))).map(|x| m.is_designated(x));
    q.premises.iter().all(|p| d(p) == Ok(true)) && d(&q.goal) == Ok(false)
}

fn write_verdict(out: &mut dyn Write, m: &Matrix, v: &Verdict, consequence: bool) -> Res<()> {
    let word = match (v.valid, consequence) {
        (true, false) => "valid",
        (false, false) => "not valid",
        (true, true) => "consequence holds",
        (false, true) => "consequence fails",
    };
    writeln!(out, "{word}").map_err(io)?;
    if let Some(c) = &v.counter {
        writeln!(out, "countermodel: {}", m.show_valuation(c)).map_err(io)?;
    }
    Ok(())
}

fn parse_sign(m: &Matrix, text: &str) -> Res<Sign> {
    let t = text.trim();
    let inner = t.strip_prefix('{').and_then(|s| s.strip_suffix('}'));
    let labels: Vec<&str> = match inner {
        Some(s) => s.split(',').map(str::trim).filter(|s| !s.is_empty()).collect(),
        None => vec![t],
    };
    let mut set = ValueSet::from_bits(0);
    for l in labels {
        set.insert(m.value_of(l).ok_or_else(|| usage(format!("unknown value `{l}`")))?);
    }
    Sign::new(set).ok_or_else(|| usage("empty sign"))
}

fn parse_assignment(m: &Matrix, text: &str) -> Res<Valuation> {
    let mut v = Valuation::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, x) = part.split_once('=').ok_or_else(|| usage(format!("expected `atom=value`, found `{part}`")))?;
        let val = m.value_of(x).ok_or_else(|| usage(format!("unknown value `{}`", x.trim())))?;
        v.insert(mvlogic::Atom::new(a.trim()), val);
    }
    Ok(v)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Res<Outcome> {
    match cli.command {
        Command::Eval { logic, assign, formula } => {
            let m = load_logic(&logic)?;
            let f = m.parse(&formula).map_err(usage)?;
            match assign {
                Some(a) => {
                    let v = parse_assignment(&m, &a)?;
                    let x = m.eval(&f, &v).map_err(usage)?;
                    writeln!(out, "{}", m.value(x)).map_err(io)?;
                }
                None => {
                    let atoms: Vec<_> = f.atoms().into_iter().collect();
                    if atoms.len() > mvlogic::decide::DEFAULT_ATOM_CAP {
                        return Err(resource(format!("{} atoms exceed the cap of {}", atoms.len(), mvlogic::decide::DEFAULT_ATOM_CAP)));
                    }
                    let header: Vec<&str> = atoms.iter().map(|a| a.name()).collect();
                    writeln!(out, "{} | {}", header.join(" "), m.render(&f)).map_err(io)?;
                    let table = m.truth_table(&f, &atoms);
                    let mut vals = vec![Val(0); atoms.len()];
                    for (row, r) in table.iter().enumerate() {
                        mvlogic::eval::decode_row(row, m.size(), &mut vals);
                        let cells: Vec<String> = vals.iter().map(|x| m.value(*x).to_string()).collect();
                        writeln!(out, "{} | {}", cells.join(" "), m.value(*r)).map_err(io)?;
                    }
                }
            }
            Ok(Outcome::Yes)
        }
        Command::Check { logic, method, seed, query } => {
            let m = load_logic(&logic)?;
            let q = parse_query(&m, &query).map_err(usage)?;
            let v = run_engine(&m, &q, method, seed)?;
            write_verdict(out, &m, &v, !q.premises.is_empty())?;
            Ok(Outcome::of(v.valid))
        }
        Command::Prove { logic, method, seed, query } => {
            let m = load_logic(&logic)?;
            let q = parse_query(&m, &query).map_err(usage)?;
            prove(out, &m, &q, method, seed)
        }
        Command::Cnf { logic, conn, value } => nf(out, &logic, &conn, &value, NfMode::Cnf),
        Command::Dnf { logic, conn, value } => nf(out, &logic, &conn, &value, NfMode::Dnf),
        Command::Synth { n, arity, table } => {
            let pm = post_matrix(n).map_err(usage)?;
            let target: Vec<Val> = table
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u8>().map(Val).map_err(|_| usage(format!("bad table entry `{s}`"))))
                .collect::<Res<_>>()?;
            let f = post_synthesize(n, arity, &target).map_err(usage)?;
            writeln!(out, "{}", pm.render(&f)).map_err(io)?;
            Ok(Outcome::Yes)
        }
        Command::Mv { command } => run_mv(out, command),
        Command::Xcheck { logic, seed, query } => {
            let m = load_logic(&logic)?;
            let q = parse_query(&m, &query).map_err(usage)?;
            xcheck(out, &m, &q, seed)
        }
        Command::ShowLogic { logic } => {
            let m = load_logic(&logic)?;
            write!(out, "{}", write_logic_file(&m)).map_err(io)?;
            Ok(Outcome::Yes)
        }
        Command::VerifyDerivation { logic, file } => {
            let m = load_logic(&logic)?;
            let text = std::fs::read_to_string(&file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let d = Derivation::parse(&text, &m).map_err(usage)?;
            match check_derivation(&d, &m) {
                Ok(()) => {
                    writeln!(out, "derivation accepted").map_err(io)?;
                    Ok(Outcome::Yes)
                }
                Err(e) => {
                    writeln!(out, "rejected: {e}").map_err(io)?;
                    Ok(Outcome::No)
                }
            }
        }
        Command::VerifyHilbert { logic, system, file } => {
            let m = load_logic(&logic)?;
            let sys: HilbertSystem = system.parse().map_err(usage)?;
            let text = std::fs::read_to_string(&file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let proof = HilbertProof::parse(&text, &m).map_err(usage)?;
            match check_hilbert_proof(&proof, sys, &m) {
                Ok(()) => {
                    writeln!(out, "proof accepted").map_err(io)?;
                    Ok(Outcome::Yes)
                }
                Err(e) => {
                    writeln!(out, "rejected: {e}").map_err(io)?;
                    Ok(Outcome::No)
                }
            }
        }
    }
}

fn prove(out: &mut dyn Write, m: &Matrix, q: &Query, method: Method, seed: Option<u64>) -> Res<Outcome> {
    let valid = match method {
        Method::Table => return Err(usage("the table method produces no proof object; use check")),
        Method::Tableau => {
            let sys = SignSystem::default_for(m);
            let o = tableau_decide(&q.premises, &q.goal, m, &sys, TableauOptions::default()).map_err(tableau_err)?;
            for p in &o.proofs {
                write!(out, "{}", p.render(m)).map_err(io)?;
            }
            if let Some(c) = &o.countermodel {
                writeln!(out, "countermodel: {}", m.show_valuation(c)).map_err(io)?;
            }
            o.valid
        }
        Method::Sequent => {
            let o = sequent_consequence(&q.premises, &q.goal, m, SEQUENT_STEP_CAP).map_err(sequent_err)?;
            if let Some(d) = &o.derivation {
                write!(out, "{}", d.render(m)).map_err(io)?;
            }
            if let Some(c) = &o.counter {
                writeln!(out, "countermodel: {}", m.show_valuation(c)).map_err(io)?;
            }
            o.valid
        }
        Method::Resolution => {
            let o = resolve_consequence(&q.premises, &q.goal, m, saturate_opts(seed)).map_err(resolution_err)?;
            writeln!(out, "clauses:").map_err(io)?;
            for c in &o.clauses {
                writeln!(out, "  {}", c.show(m)).map_err(io)?;
            }
            if let Some(r) = &o.refutation {
                writeln!(out, "refutation:").map_err(io)?;
                write!(out, "{}", r.render(m)).map_err(io)?;
            }
            if let Some(c) = &o.countermodel {
                writeln!(out, "countermodel: {}", m.show_valuation(c)).map_err(io)?;
            }
            o.valid
        }
    };
    Ok(Outcome::of(valid))
}

fn nf(out: &mut dyn Write, logic: &str, conn: &str, value: &str, mode: NfMode) -> Res<Outcome> {
    let m = load_logic(logic)?;
    let c = m.conn_by_symbol(conn).ok_or_else(|| usage(format!("unknown connective `{conn}`")))?;
    let sign = parse_sign(&m, value)?;
    let form = normal_form(&m, c, sign, mode, &SignSystem::default_for(&m)).map_err(usage)?;
    write!(out, "{}", form.show(&m)).map_err(io)?;
    Ok(Outcome::Yes)
}

/// The engines that apply to `m`: resolution needs `N(p)`.
pub fn applicable_methods(m: &Matrix) -> Vec<Method> {
    let mut v = vec![Method::Table, Method::Tableau, Method::Sequent];
    if negation_marker(m).is_ok() {
        v.push(Method::Resolution);
    }
    v
}

/// Runs the engines; `None` when all verdicts agree with the table and every
/// countermodel is genuine, otherwise a description of the first conflict.
fn conflicts(m: &Matrix, q: &Query, seed: Option<u64>) -> Res<(Vec<Verdict>, Option<String>)> {
    let verdicts = applicable_methods(m)
        .into_iter()
        .map(|meth| run_engine(m, q, meth, seed))
        .collect::<Res<Vec<_>>>()?;
    let oracle = verdicts[0].valid;
    for v in &verdicts {
        if v.valid != oracle {
            return Ok((verdicts.clone(), Some(format!("{} says {}, table says {}", v.engine, v.valid, oracle))));
        }
        if !v.valid {
            match &v.counter {
                Some(c) if is_countermodel(m, q, c) => {}
                Some(c) => {
                    let text = format!("{} offers {} which is not a countermodel", v.engine, m.show_valuation(c));
                    return Ok((verdicts.clone(), Some(text)));
                }
                None => return Ok((verdicts.clone(), Some(format!("{} gives no countermodel", v.engine)))),
            }
        }
    }
    Ok((verdicts, None))
}

fn xcheck(out: &mut dyn Write, m: &Matrix, q: &Query, seed: Option<u64>) -> Res<Outcome> {
    let (verdicts, conflict) = conflicts(m, q, seed)?;
    for v in &verdicts {
        let word = if v.valid { "valid" } else { "invalid" };
        match &v.counter {
            Some(c) => writeln!(out, "{}: {word} ({})", v.engine, m.show_valuation(c)),
            None => writeln!(out, "{}: {word}", v.engine),
        }
        .map_err(io)?;
    }
    let Some(reason) = conflict else { return Ok(Outcome::of(verdicts[0].valid)) };
    // drop premises while the conflict persists
    let mut small = q.clone();
    let mut i = 0;
    while i < small.premises.len() {
        let mut trial = small.clone();
        trial.premises.remove(i);
        if conflicts(m, &trial, seed)?.1.is_some() {
            small = trial;
        } else {
            i += 1;
        }
    }
    writeln!(out, "disagreement: {reason}").map_err(io)?;
    writeln!(out, "witness: {}", small.show(m)).map_err(io)?;
    Ok(Outcome::Disagree)
}

fn element(alg: &FiniteMv, label: &str) -> Res<usize> {
    alg.element(label.trim()).ok_or_else(|| usage(format!("`{label}` is not an element of {}", alg.name())))
}

fn elements(alg: &FiniteMv, labels: &[String]) -> Res<Vec<usize>> {
    labels
        .iter()
        .flat_map(|l| split_top(l, ",").into_iter().map(str::trim).filter(|s| !s.is_empty()).map(str::to_string).collect::<Vec<_>>())
        .map(|l| element(alg, &l))
        .collect()
}

/// The Łukasiewicz matrix used to parse formulas for the [0,1] commands.
fn unit_logic() -> Matrix {
    builtin(&BuiltinSpec::lukasiewicz(3)).expect("built-in")
}

fn run_mv(out: &mut dyn Write, command: MvCommand) -> Res<Outcome> {
    match command {
        MvCommand::Axioms { algebra, system } => {
            let alg = load_algebra(&algebra)?;
            let sys = match system.as_str() {
                "L" => AxiomSystem::L,
                "C" => AxiomSystem::C,
                "M" => AxiomSystem::M,
                "facts" => AxiomSystem::Facts,
                _ => return Err(usage(format!("unknown axiom system `{system}` (expected L, C, M or facts)"))),
            };
            match check_axioms(&alg, sys) {
                Ok(()) => {
                    writeln!(out, "{} satisfies {system}", alg.name()).map_err(io)?;
                    Ok(Outcome::Yes)
                }
                Err(f) => {
                    writeln!(out, "rejected: {f}").map_err(io)?;
                    Ok(Outcome::No)
                }
            }
        }
        MvCommand::Show { algebra } => {
            let alg = load_algebra(&algebra)?;
            write!(out, "{}", write_mv_file(&alg)).map_err(io)?;
            Ok(Outcome::Yes)
        }
        MvCommand::Classify { algebra } => {
            let alg = load_algebra(&algebra)?;
            let c = classify(&alg).map_err(mv_err)?;
            write!(out, "{}", c.show(&alg)).map_err(io)?;
            Ok(Outcome::Yes)
        }
        MvCommand::Ideals { algebra } => {
            let alg = load_algebra(&algebra)?;
            for j in mv::ideals::enumerate_ideals(&alg) {
                let prime = mv::ideals::is_prime(&alg, j).map_err(mv_err)?;
                let maximal = mv::ideals::is_maximal(&alg, j).map_err(mv_err)?;
                let rad = mv::ideals::radical(&alg, j).map_err(mv_err)?;
                writeln!(out, "{}  prime: {prime}  maximal: {maximal}  radical: {}", j.show(&alg), rad.show(&alg))
                    .map_err(io)?;
            }
            Ok(Outcome::Yes)
        }
        MvCommand::Generate { algebra, elements: xs } => {
            let alg = load_algebra(&algebra)?;
            let j = mv::ideals::generate(&alg, &elements(&alg, &xs)?);
            writeln!(out, "{}", j.show(&alg)).map_err(io)?;
            Ok(Outcome::Yes)
        }
        MvCommand::Quotient { algebra, elements: xs } => {
            let alg = load_algebra(&algebra)?;
            let j: Ideal = mv::ideals::generate(&alg, &elements(&alg, &xs)?);
            let (q, _) = alg.quotient(j).map_err(mv_err)?;
            write!(out, "{}", write_mv_file(&q)).map_err(io)?;
            Ok(Outcome::Yes)
        }
        MvCommand::Order { algebra, element: e } => {
            let alg = load_algebra(&algebra)?;
            let a = element(&alg, &e)?;
            let o = alg.element_order(a);
            writeln!(out, "{o}").map_err(io)?;
            Ok(Outcome::of(matches!(o, mv::ElementOrder::Finite(_))))
        }
        MvCommand::Chang { op, x, y } => {
            let pair = |s: &str| LexPair::parse(s).ok_or_else(|| usage(format!("expected a pair like (0,1), found `{s}`")));
            let x = pair(&x)?;
            if op == "order" {
                let o = ChangAlgebra.element_order(x).map_err(mv_err)?;
                writeln!(out, "{o}").map_err(io)?;
                return Ok(Outcome::of(matches!(o, mv::ElementOrder::Finite(_))));
            }
            let op: ChangOp = op.parse().map_err(usage)?;
            let y = match (&y, op) {
                (Some(s), _) => pair(s)?,
                (None, ChangOp::Neg) => ChangAlgebra.zero(),
                (None, _) => return Err(usage("this operation takes two operands")),
            };
            let v = chang_op(x, y, op).map_err(mv_err)?;
            writeln!(out, "{v}").map_err(io)?;
            Ok(match v {
                mv::ChangValue::Bool(b) => Outcome::of(b),
                mv::ChangValue::Pair(_) => Outcome::Yes,
            })
        }
        MvCommand::Compile { formula } => {
            let m = unit_logic();
            let f = m.parse(&formula).map_err(usage)?;
            let pl = mcnaughton_compile(&m, &f).map_err(mv_err)?;
            writeln!(out, "{pl}").map_err(io)?;
            Ok(Outcome::Yes)
        }
        MvCommand::Decide { formula, equals } => {
            let m = unit_logic();
            let f = m.parse(&formula).map_err(usage)?;
            let query = match equals {
                Some(b) => PlQuery::Equals(m.parse(&b).map_err(usage)?),
                None => PlQuery::IsOne,
            };
            let yes = pl_decide(&m, &f, &query).map_err(mv_err)?;
            writeln!(out, "{yes}").map_err(io)?;
            Ok(Outcome::of(yes))
        }
        MvCommand::Grid { formula, max_denominator, cap } => {
            let m = unit_logic();
            let f = m.parse(&formula).map_err(usage)?;
            match grid_falsify(&m, &f, max_denominator, cap).map_err(mv_err)? {
                Some((sigma, v)) => {
                    let parts: Vec<String> =
                        sigma.iter().map(|(a, x)| format!("{a}={}", mvlogic::value::fmt_rational(x))).collect();
                    writeln!(out, "counterexample: {} (value {})", parts.join(", "), mvlogic::value::fmt_rational(&v))
                        .map_err(io)?;
                    Ok(Outcome::No)
                }
                None => {
                    writeln!(out, "none found up to denominator {max_denominator}").map_err(io)?;
                    Ok(Outcome::Yes)
                }
            }
        }
    }
}
