//! Post logics: term synthesis over `{∨, ∼}` and the monotonic representation.

use crate::formula::{placeholder_atoms, Atom, Formula};
use crate::matrix::{ConnId, Matrix};
use crate::value::Val;

use super::{builtin, BuiltinSpec, LogicError};

/// The Post matrix with only the top value designated.
///
/// Every Post matrix of the same size shares its connective ids, so terms
/// built here work for any threshold.
pub fn post_matrix(n: usize) -> Result<Matrix, LogicError> {
    builtin(&BuiltinSpec::post(n, n.saturating_sub(1)))
}

struct Terms {
    n: usize,
    or: ConnId,
    tilde: ConnId,
}

impl Terms {
    fn of(m: &Matrix) -> Terms {
        Terms { n: m.size(), or: m.conn_by_name("or").unwrap(), tilde: m.conn_by_name("tilde").unwrap() }
    }

    fn or(&self, a: Formula, b: Formula) -> Formula {
        Formula::binary(self.or, a, b)
    }

    /// `∼^k f`; exponents are taken mod n.
    fn tilde(&self, f: Formula, k: usize) -> Formula {
        (0..k % self.n).fold(f, |acc, _| Formula::unary(self.tilde, acc))
    }

    /// `x ∨ ∼x ∨ ... ∨ ∼^{n-1}x`, constantly `n-1`.
    fn top(&self, x: &Formula) -> Formula {
        (1..self.n).fold(x.clone(), |acc, k| self.or(acc, self.tilde(x.clone(), k)))
    }

    /// Constant `c`.
    fn konst(&self, c: usize, x: &Formula) -> Formula {
        self.tilde(self.top(x), self.n - 1 - c)
    }

    /// Adds one (mod n).
    fn inc(&self, f: Formula) -> Formula {
        self.tilde(f, self.n - 1)
    }

    /// Swaps `0` and `n-1` on two-level inputs.
    fn not(&self, f: Formula, x: &Formula) -> Formula {
        self.inc(self.or(f, self.konst(self.n - 2, x)))
    }

    /// `n-1` where `x = a`, else `0`.
    fn select(&self, a: usize, x: &Formula, anchor: &Formula) -> Formula {
        let s = self.tilde(x.clone(), a + 1);
        let miss = self.inc(self.or(s, self.konst(self.n - 2, anchor)));
        self.not(miss, anchor)
    }

    /// Conjunction of two-level inputs.
    fn and2(&self, a: Formula, b: Formula) -> Formula {
        self.inc(self.or(self.tilde(a, 1), self.tilde(b, 1)))
    }

    /// Maps `n-1` to `c` and `0` to `0`; needs `c >= 1`.
    fn scale(&self, c: usize, f: Formula, anchor: &Formula) -> Formula {
        self.inc(self.or(self.not(f, anchor), self.konst(c - 1, anchor)))
    }

    /// Sum-of-products term for a nonzero table.
    fn canonical(&self, atoms: &[Formula], target: &[Val]) -> Option<Formula> {
        let anchor = atoms.first().cloned().unwrap_or_else(|| Formula::atom("p"));
        let k = atoms.len();
        let mut acc: Option<Formula> = None;
        let mut row = vec![0usize; k];
        for (r, v) in target.iter().enumerate() {
            let c = v.index();
            let mut rest = r;
            for slot in row.iter_mut().rev() {
                *slot = rest % self.n;
                rest /= self.n;
            }
            if c == 0 {
                continue;
            }
            let term = if k == 0 {
                self.konst(c, &anchor)
            } else {
                let conj = atoms
                    .iter()
                    .zip(&row)
                    .map(|(x, &a)| self.select(a, x, &anchor))
                    .reduce(|a, b| self.and2(a, b))
                    .unwrap();
                self.scale(c, conj, &anchor)
            };
            acc = Some(match acc {
                None => term,
                Some(prev) => self.or(prev, term),
            });
        }
        acc
    }

    /// `n-1` where `x >= c`, else `0`.
    fn at_least(&self, c: usize, x: &Formula, anchor: &Formula) -> Formula {
        (c + 1..self.n).fold(self.select(c, x, anchor), |acc, a| self.or(acc, self.select(a, x, anchor)))
    }

    /// Binary minimum as a term in `p`, `q`: the largest `c` with both
    /// arguments at least `c`. Constants are anchored on `q`, so `p` occurs
    /// only `n(n-1)/2` times.
    fn min_template(&self) -> Formula {
        let p = Formula::atom("p");
        let q = Formula::atom("q");
        (1..self.n)
            .map(|c| self.scale(c, self.and2(self.at_least(c, &p, &q), self.at_least(c, &q, &q)), &q))
            .reduce(|a, b| self.or(a, b))
            .expect("n >= 2")
    }

    /// `x ∧ ∼x ∧ ... ∧ ∼^{n-1}x` with `∧` expanded; constantly `0`.
    ///
    /// The tree grows like `(n(n-1)/2)^(n-1)`, so this is meant for small `n`.
    fn cycle_zero(&self, x: &Formula) -> Formula {
        let min = self.min_template();
        let p = Atom::new("p");
        let q = Atom::new("q");
        (1..self.n).fold(x.clone(), |acc, k| {
            let map = [(p.clone(), acc), (q.clone(), self.tilde(x.clone(), k))].into_iter().collect();
            min.substitute(&map)
        })
    }

    /// Constant `0`: the ∼-cycle meet for small `n`, else `∼^{n-1}` of the top term.
    fn zero(&self, x: &Formula) -> Formula {
        if self.n <= CYCLE_ZERO_MAX {
            self.cycle_zero(x)
        } else {
            self.konst(0, x)
        }
    }
}

/// Largest `n` for which synthesis spells constant 0 as the full ∼-cycle meet.
const CYCLE_ZERO_MAX: usize = 4;

/// The constant-0 term `p ∧ ∼p ∧ ... ∧ ∼^{n-1}p` over `{∨, ∼}`.
///
/// Its size is exponential in `n`; keep `n` small.
pub fn post_constant_zero(n: usize) -> Result<Formula, LogicError> {
    let m = post_matrix(n)?;
    Ok(Terms::of(&m).cycle_zero(&Formula::atom("p")))
}

/// Synthesizes a `{∨, ∼}` term for `target : n^k → n`.
///
/// `target` is row-major over the atoms `p, q, r` (or `p1..pk` when k > 3),
/// first atom most significant. The result is verified exhaustively before it
/// is returned.
pub fn post_synthesize(n: usize, k: usize, target: &[Val]) -> Result<Formula, LogicError> {
    let m = post_matrix(n)?;
    let expected = n.checked_pow(k as u32).ok_or(LogicError::TargetSize { expected: usize::MAX, found: target.len() })?;
    if target.len() != expected {
        return Err(LogicError::TargetSize { expected, found: target.len() });
    }
    if let Some(bad) = target.iter().find(|v| v.index() >= n) {
        return Err(LogicError::TargetRange(bad.index()));
    }
    let terms = Terms::of(&m);
    let atoms: Vec<Formula> = placeholder_atoms(k).into_iter().map(Formula::Atom).collect();
    let f = match terms.canonical(&atoms, target) {
        Some(f) => f,
        None => terms.zero(atoms.first().unwrap_or(&Formula::atom("p"))),
    };
    verify(&m, &f, k, target)?;
    Ok(f)
}

fn verify(m: &Matrix, f: &Formula, k: usize, target: &[Val]) -> Result<(), LogicError> {
    let mut atoms = placeholder_atoms(k);
    if k == 0 {
        atoms.push(Atom::new("p"));
    }
    atoms.sort();
    let names = placeholder_atoms(k);
    let n = m.size();
    let mut vals = vec![Val(0); atoms.len()];
    for row in 0..n.pow(atoms.len() as u32) {
        crate::eval::decode_row(row, n, &mut vals);
        // index of this row in the target's own atom order
        let mut idx = 0;
        for a in &names {
            let pos = atoms.binary_search(a).unwrap();
            idx = idx * n + vals[pos].index();
        }
        let got = m.eval_indexed(f, &atoms, &vals);
        if got != target[idx] {
            return Err(LogicError::Verification(format!("synthesized term differs from the target at row {idx}")));
        }
    }
    Ok(())
}

/// Decreasing 0/1 tuple `(a_1, ..., a_{n-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneTuple(pub Vec<bool>);

impl MonotoneTuple {
    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn join(&self, other: &MonotoneTuple) -> MonotoneTuple {
        MonotoneTuple(self.0.iter().zip(&other.0).map(|(a, b)| *a || *b).collect())
    }

    pub fn meet(&self, other: &MonotoneTuple) -> MonotoneTuple {
        MonotoneTuple(self.0.iter().zip(&other.0).map(|(a, b)| *a && *b).collect())
    }
}

/// Monotonic representation of the values of an n-valued Post algebra.
#[derive(Copy, Clone, Debug)]
pub struct PostMonotonic {
    pub n: usize,
}

/// See [`PostMonotonic`].
pub fn post_monotonic(n: usize) -> Result<PostMonotonic, LogicError> {
    if n < 2 {
        return Err(LogicError::BadParameter(format!("post:{n}"), "n must be at least 2".into()));
    }
    Ok(PostMonotonic { n })
}

impl PostMonotonic {
    /// `a_k = 1` iff `i >= k`.
    pub fn rep(&self, i: usize) -> MonotoneTuple {
        MonotoneTuple((1..self.n).map(|k| i >= k).collect())
    }

    /// Inverse of [`rep`](Self::rep) on monotone tuples.
    pub fn unrep(&self, t: &MonotoneTuple) -> Option<usize> {
        (t.0.len() == self.n - 1 && t.is_monotone()).then(|| t.0.iter().filter(|b| **b).count())
    }

    /// The shift `b_k = a_{k+1} ∨ ¬a_1` (with `a_n = 0`), conjugate to `∼`.
    pub fn shift(&self, t: &MonotoneTuple) -> MonotoneTuple {
        let a = &t.0;
        let not_a1 = !a[0];
        MonotoneTuple((0..a.len()).map(|k| a.get(k + 1).copied().unwrap_or(false) || not_a1).collect())
    }
}
