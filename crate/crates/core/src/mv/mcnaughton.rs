//! Exact one-variable McNaughton functions and rational-grid falsification.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::MvError;
use crate::formula::{Atom, Formula};
use crate::matrix::Matrix;
use crate::value::{fmt_rational, Rational};

/// A continuous piecewise-linear map `[0,1] → [0,1]`; piece `k` is
/// `a·x + b` on `[breaks[k], breaks[k+1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    breaks: Vec<Rational>,
    pieces: Vec<(i64, i64)>,
}

#[derive(Copy, Clone)]
enum Bin {
    Oplus,
    Otimes,
    Max,
    Min,
}

fn at((a, b): (i64, i64), x: Rational) -> Rational {
    x * a + b
}

impl PlFunction {
    pub fn constant(c: i64) -> PlFunction {
        PlFunction { breaks: vec![Rational::zero(), Rational::one()], pieces: vec![(0, c)] }
    }

    pub fn identity() -> PlFunction {
        PlFunction { breaks: vec![Rational::zero(), Rational::one()], pieces: vec![(1, 0)] }
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[(i64, i64)] {
        &self.pieces
    }

    fn piece_at(&self, x: Rational) -> (i64, i64) {
        let k = self.breaks[1..].iter().position(|&r| x <= r).unwrap_or(self.pieces.len() - 1);
        self.pieces[k]
    }

    pub fn eval(&self, x: Rational) -> Rational {
        at(self.piece_at(x), x)
    }

    pub fn is_one(&self) -> bool {
        self.pieces == [(0, 1)]
    }

    /// `1 − f`.
    pub fn neg(&self) -> PlFunction {
        PlFunction { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(|&(a, b)| (-a, 1 - b)).collect() }
    }

    pub fn oplus(&self, g: &PlFunction) -> Result<PlFunction, MvError> {
        self.combine(g, Bin::Oplus)
    }

    pub fn otimes(&self, g: &PlFunction) -> Result<PlFunction, MvError> {
        self.combine(g, Bin::Otimes)
    }

    pub fn max(&self, g: &PlFunction) -> Result<PlFunction, MvError> {
        self.combine(g, Bin::Max)
    }

    pub fn min(&self, g: &PlFunction) -> Result<PlFunction, MvError> {
        self.combine(g, Bin::Min)
    }

    fn combine(&self, g: &PlFunction, op: Bin) -> Result<PlFunction, MvError> {
        let mut grid: Vec<Rational> = self.breaks.iter().chain(&g.breaks).copied().collect();
        grid.sort();
        grid.dedup();
        let mut breaks = vec![grid[0]];
        let mut pieces = Vec::new();
        for w in grid.windows(2) {
            let (l, r) = (w[0], w[1]);
            let mid = (l + r) / 2;
            let (pf, pg) = (self.piece_at(mid), g.piece_at(mid));
            // the single line whose crossing can split this segment
            let (a, b, target) = match op {
                Bin::Oplus | Bin::Otimes => (pf.0 + pg.0, pf.1 + pg.1, 1),
                Bin::Max | Bin::Min => (pf.0 - pg.0, pf.1 - pg.1, 0),
            };
            let mut cuts = vec![l];
            if a != 0 {
                let x = Rational::new(target - b, a);
                if l < x && x < r {
                    cuts.push(x);
                }
            }
            cuts.push(r);
            for c in cuts.windows(2) {
                let m = (c[0] + c[1]) / 2;
                let (vf, vg) = (at(pf, m), at(pg, m));
                let piece = match op {
                    Bin::Oplus if vf + vg <= Rational::one() => (pf.0 + pg.0, pf.1 + pg.1),
                    Bin::Oplus => (0, 1),
                    Bin::Otimes if vf + vg >= Rational::one() => (pf.0 + pg.0, pf.1 + pg.1 - 1),
                    Bin::Otimes => (0, 0),
                    Bin::Max if vf >= vg => pf,
                    Bin::Min if vf <= vg => pf,
                    Bin::Max | Bin::Min => pg,
                };
                pieces.push(piece);
                breaks.push(c[1]);
            }
        }
        let mut out = PlFunction { breaks, pieces };
        out.normalize();
        out.check()?;
        Ok(out)
    }

    /// Merges neighbouring segments carrying the same line.
    fn normalize(&mut self) {
        let mut breaks = vec![self.breaks[0]];
        let mut pieces: Vec<(i64, i64)> = Vec::new();
        for (k, &p) in self.pieces.iter().enumerate() {
            if pieces.last() == Some(&p) {
                *breaks.last_mut().unwrap() = self.breaks[k + 1];
            } else {
                pieces.push(p);
                breaks.push(self.breaks[k + 1]);
            }
        }
        self.breaks = breaks;
        self.pieces = pieces;
    }

    /// Breakpoints span `[0,1]` increasingly, pieces meet at every breakpoint
    /// and all values lie in `[0,1]`.
    pub fn check(&self) -> Result<(), MvError> {
        let fail = |s: String| Err(MvError::CrossCheck(s));
        if self.breaks.first() != Some(&Rational::zero()) || self.breaks.last() != Some(&Rational::one()) {
            return fail("breakpoints must start at 0 and end at 1".into());
        }
        if self.breaks.len() != self.pieces.len() + 1 || self.breaks.windows(2).any(|w| w[0] >= w[1]) {
            return fail("breakpoints must increase strictly".into());
        }
        for (k, &p) in self.pieces.iter().enumerate() {
            for x in [self.breaks[k], self.breaks[k + 1]] {
                let v = at(p, x);
                if v < Rational::zero() || v > Rational::one() {
                    return fail(format!("value {} at {} leaves [0,1]", fmt_rational(&v), fmt_rational(&x)));
                }
            }
            if k + 1 < self.pieces.len() && at(p, self.breaks[k + 1]) != at(self.pieces[k + 1], self.breaks[k + 1]) {
                return fail(format!("discontinuity at {}", fmt_rational(&self.breaks[k + 1])));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pieces
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let sign = if b < 0 { '-' } else { '+' };
                format!(
                    "[{},{}]: {a}x{sign}{}",
                    fmt_rational(&self.breaks[k]),
                    fmt_rational(&self.breaks[k + 1]),
                    b.abs()
                )
            })
            .collect();
        f.write_str(&parts.join(" ; "))
    }
}

fn single_atom(a: &Formula) -> Result<Option<Atom>, MvError> {
    let atoms = a.atoms();
    if atoms.len() > 1 {
        let names: Vec<&str> = atoms.iter().map(|x| x.name()).collect();
        return Err(MvError::TooManyAtoms(names.join(", ")));
    }
    Ok(atoms.into_iter().next())
}

/// Compiles a formula in at most one atom, reading connectives by their
/// Łukasiewicz names (`oplus`, `otimes`, `neg`, `imp`, `or`, `and`, `iff`,
/// `zero`, `one`).
pub fn mcnaughton_compile(m: &Matrix, a: &Formula) -> Result<PlFunction, MvError> {
    single_atom(a)?;
    compile(m, a)
}

fn compile(m: &Matrix, a: &Formula) -> Result<PlFunction, MvError> {
    let Formula::App(c, args) = a else { return Ok(PlFunction::identity()) };
    let sub: Vec<PlFunction> = args.iter().map(|x| compile(m, x)).collect::<Result<_, _>>()?;
    let name = m.connective(*c).name.as_str();
    match (name, sub.as_slice()) {
        ("zero", []) => Ok(PlFunction::constant(0)),
        ("one", []) => Ok(PlFunction::constant(1)),
        ("neg", [f]) => Ok(f.neg()),
        ("oplus", [f, g]) => f.oplus(g),
        ("otimes", [f, g]) => f.otimes(g),
        ("or", [f, g]) => f.max(g),
        ("and", [f, g]) => f.min(g),
        ("imp", [f, g]) => f.neg().oplus(g),
        ("iff", [f, g]) => f.neg().oplus(g)?.min(&g.neg().oplus(f)?),
        _ => Err(MvError::UnknownConnective(name.to_string())),
    }
}

#[derive(Clone, Debug)]
pub enum PlQuery {
    IsOne,
    Equals(Formula),
}

/// Decides `A = 1` or `A = B` on `[0,1]` by comparing normal forms.
pub fn pl_decide(m: &Matrix, a: &Formula, query: &PlQuery) -> Result<bool, MvError> {
    let f = mcnaughton_compile(m, a)?;
    match query {
        PlQuery::IsOne => Ok(f.is_one()),
        PlQuery::Equals(b) => {
            let mut atoms = a.atoms();
            b.collect_atoms(&mut atoms);
            if atoms.len() > 1 {
                let names: Vec<&str> = atoms.iter().map(|x| x.name()).collect();
                return Err(MvError::TooManyAtoms(names.join(", ")));
            }
            Ok(f == mcnaughton_compile(m, b)?)
        }
    }
}

/// Evaluates a formula on `[0,1] ∩ ℚ` with the Łukasiewicz operations.
pub fn eval_unit(m: &Matrix, a: &Formula, sigma: &BTreeMap<Atom, Rational>) -> Result<Rational, MvError> {
    let one = Rational::one();
    let zero = Rational::zero();
    match a {
        Formula::Atom(p) => sigma.get(p).copied().ok_or_else(|| MvError::UnknownConnective(p.name().to_string())),
        Formula::App(c, args) => {
            let v: Vec<Rational> = args.iter().map(|x| eval_unit(m, x, sigma)).collect::<Result<_, _>>()?;
            let name = m.connective(*c).name.as_str();
            Ok(match (name, v.as_slice()) {
                ("zero", []) => zero,
                ("one", []) => one,
                ("neg", [x]) => one - x,
                ("oplus", [x, y]) => (x + y).min(one),
                ("otimes", [x, y]) => (x + y - one).max(zero),
                ("or", [x, y]) => *x.max(y),
                ("and", [x, y]) => *x.min(y),
                ("imp", [x, y]) => (one - x + y).min(one),
                ("iff", [x, y]) => one - (x - y).max(y - x),
                _ => return Err(MvError::UnknownConnective(name.to_string())),
            })
        }
    }
}

/// A valuation on the grid where the formula is not 1, with its value.
pub type GridCounter = (BTreeMap<Atom, Rational>, Rational);

/// Tries valuations over `{0, 1/k, …, 1}` for `k = 1..=max_denominator`,
/// skipping points already seen at a smaller `k`. Finding nothing proves
/// nothing about `[0,1]`.
pub fn grid_falsify(m: &Matrix, a: &Formula, max_denominator: usize, cap: usize) -> Result<Option<GridCounter>, MvError> {
    let atoms: Vec<Atom> = a.atoms().into_iter().collect();
    let n = atoms.len() as u32;
    let mut total: usize = 0;
    for k in 1..=max_denominator {
        total = (k + 1).checked_pow(n).and_then(|c| total.checked_add(c)).unwrap_or(usize::MAX);
        if total > cap {
            return Err(MvError::ResourceCap(cap));
        }
    }
    for k in 1..=max_denominator as i64 {
        let mut idx = vec![0i64; atoms.len()];
        loop {
            if idx.iter().fold(k, |g, &i| g.gcd(&i)) == 1 {
                let sigma: BTreeMap<Atom, Rational> =
                    atoms.iter().cloned().zip(idx.iter().map(|&i| Rational::new(i, k))).collect();
                let v = eval_unit(m, a, &sigma)?;
                if v != Rational::one() {
                    return Ok(Some((sigma, v)));
                }
            }
            let Some(pos) = idx.iter().rposition(|&i| i < k) else { break };
            idx[pos] += 1;
            for i in &mut idx[pos + 1..] {
                *i = 0;
            }
        }
    }
    Ok(None)
}
