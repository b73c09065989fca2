//! Reference semantics written from the textbook definitions, independent of
//! the library's table builder. Values are the library's indices; the
//! meaning of each index is fixed per family below.

use mvlogic::logics::{BuiltinSpec, Family};
use mvlogic::{Formula, Matrix};

/// Pointwise operation of one connective.
type Op = Box<dyn Fn(&[usize]) -> usize + Send + Sync>;

pub struct Oracle {
    pub n: usize,
    ops: Vec<Op>,
    designated: Vec<bool>,
}

impl Oracle {
    /// Builds the reference semantics for `m`, which must be the builtin `spec`.
    pub fn new(spec: &BuiltinSpec, m: &Matrix) -> Oracle {
        let n = spec.n;
        let top = n - 1;
        let ops = m
            .connectives()
            .map(|(_, c)| -> Op {
                let name = c.name.clone();
                match spec.family {
                    Family::Lukasiewicz => lukasiewicz(&name, top),
                    Family::Godel => godel(&name, top),
                    Family::Post => post(&name, n),
                    Family::Classical => lukasiewicz(&name, 1),
                    Family::KleeneStrong => kleene_strong(&name),
                    Family::KleeneWeak | Family::Bochvar => bochvar(&name),
                    Family::Belnap => belnap(&name),
                }
            })
            .collect();
        let designated = (0..n)
            .map(|i| match spec.family {
                Family::Post => i >= spec.m,
                Family::Belnap => false,
                Family::KleeneStrong | Family::KleeneWeak | Family::Bochvar => i == 1,
                _ => i == top,
            })
            .collect();
        Oracle { n, ops, designated }
    }

    pub fn apply(&self, c: usize, args: &[usize]) -> usize {
        (self.ops[c])(args)
    }

    pub fn designated(&self, v: usize) -> bool {
        self.designated[v]
    }

    /// Value of `f` where atom `k` of `atoms` takes `vals[k]`.
    pub fn eval(&self, f: &Formula, atoms: &[&str], vals: &[usize]) -> usize {
        match f {
            Formula::Atom(a) => vals[atoms.iter().position(|x| *x == a.name()).expect("atom listed")],
            Formula::App(c, args) => {
                let xs: Vec<usize> = args.iter().map(|a| self.eval(a, atoms, vals)).collect();
                self.apply(c.index(), &xs)
            }
        }
    }

    /// Truth table over `atoms`, first atom most significant.
    pub fn table(&self, f: &Formula, atoms: &[&str]) -> Vec<usize> {
        rows(self.n, atoms.len()).map(|r| self.eval(f, atoms, &r)).collect()
    }
}

/// All tuples in `n^k`, first coordinate most significant.
pub fn rows(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(k as u32)).map(move |mut r| {
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = r % n;
            r /= n;
        }
        out
    })
}

fn lukasiewicz(name: &str, top: usize) -> Op {
    let t = top as i64;
    let f: Box<dyn Fn(i64, i64) -> i64 + Send + Sync> = match name {
        "imp" => Box::new(move |a, b| t.min(t - a + b)),
        "neg" => Box::new(move |a, _| t - a),
        "one" => Box::new(move |_, _| t),
        "zero" => Box::new(|_, _| 0),
        "oplus" => Box::new(move |a, b| t.min(a + b)),
        "otimes" => Box::new(move |a, b| 0.max(a + b - t)),
        "or" => Box::new(|a, b| a.max(b)),
        "and" => Box::new(|a, b| a.min(b)),
        "iff" => Box::new(move |a, b| t - (a - b).abs()),
        other => panic!("no reference semantics for `{other}`"),
    };
    Box::new(move |xs| f(arg(xs, 0), arg(xs, 1)) as usize)
}

fn arg(xs: &[usize], k: usize) -> i64 {
    xs.get(k).copied().unwrap_or(0) as i64
}

fn godel(name: &str, top: usize) -> Op {
    match name {
        "or" => Box::new(|xs| xs[0].max(xs[1])),
        "and" => Box::new(|xs| xs[0].min(xs[1])),
        "imp" => Box::new(move |xs| if xs[0] <= xs[1] { top } else { xs[1] }),
        "neg" => Box::new(move |xs| if xs[0] == 0 { top } else { 0 }),
        "zero" => Box::new(|_| 0),
        "one" => Box::new(move |_| top),
        other => panic!("no reference semantics for `{other}`"),
    }
}

fn post(name: &str, n: usize) -> Op {
    match name {
        "or" => Box::new(|xs| xs[0].max(xs[1])),
        "tilde" => Box::new(move |xs| (xs[0] + n - 1) % n),
        other => panic!("no reference semantics for `{other}`"),
    }
}

/// Index 2 is the undetermined value; by truth it sits between 0 and 1.
fn kleene_strong(name: &str) -> Op {
    const RANK: [usize; 3] = [0, 2, 1];
    const UNRANK: [usize; 3] = [0, 2, 1];
    let neg = |a: usize| UNRANK[2 - RANK[a]];
    match name {
        "neg" => Box::new(move |xs| neg(xs[0])),
        "or" => Box::new(|xs| UNRANK[RANK[xs[0]].max(RANK[xs[1]])]),
        "and" => Box::new(|xs| UNRANK[RANK[xs[0]].min(RANK[xs[1]])]),
        "imp" => Box::new(move |xs| UNRANK[RANK[neg(xs[0])].max(RANK[xs[1]])]),
        other => panic!("no reference semantics for `{other}`"),
    }
}

/// Bochvar's published tables, row = first argument.
pub const BOCHVAR_NEG: [usize; 3] = [1, 0, 2];
pub const BOCHVAR_OR: [[usize; 3]; 3] = [[0, 1, 2], [1, 1, 2], [2, 2, 2]];
pub const BOCHVAR_AND: [[usize; 3]; 3] = [[0, 0, 2], [0, 1, 2], [2, 2, 2]];
pub const BOCHVAR_IMP: [[usize; 3]; 3] = [[1, 1, 2], [0, 1, 2], [2, 2, 2]];

fn bochvar(name: &str) -> Op {
    match name {
        "neg" => Box::new(|xs| BOCHVAR_NEG[xs[0]]),
        "or" => Box::new(|xs| BOCHVAR_OR[xs[0]][xs[1]]),
        "and" => Box::new(|xs| BOCHVAR_AND[xs[0]][xs[1]]),
        "imp" => Box::new(|xs| BOCHVAR_IMP[xs[0]][xs[1]]),
        other => panic!("no reference semantics for `{other}`"),
    }
}

/// Belnap values as (told true, told false): ∅, 0, 1, 01.
const TOLD: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

fn untold(t: bool, f: bool) -> usize {
    TOLD.iter().position(|x| *x == (t, f)).unwrap()
}

fn belnap(name: &str) -> Op {
    match name {
        "neg" => Box::new(|xs| {
            let (t, f) = TOLD[xs[0]];
            untold(f, t)
        }),
        "or" => Box::new(|xs| {
            let ((t1, f1), (t2, f2)) = (TOLD[xs[0]], TOLD[xs[1]]);
            untold(t1 || t2, f1 && f2)
        }),
        "and" => Box::new(|xs| {
            let ((t1, f1), (t2, f2)) = (TOLD[xs[0]], TOLD[xs[1]]);
            untold(t1 && t2, f1 || f2)
        }),
        other => panic!("no reference semantics for `{other}`"),
    }
}
