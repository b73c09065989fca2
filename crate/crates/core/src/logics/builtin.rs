use std::fmt;
use std::str::FromStr;

use crate::matrix::{tuples, Connective, Matrix, Order};
use crate::value::{Rational, TruthValue, Val, ValueSet};

use super::LogicError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Lukasiewicz,
    Godel,
    Post,
    KleeneStrong,
    KleeneWeak,
    Bochvar,
    Belnap,
    Classical,
}

/// Names a built-in matrix, e.g. `lukasiewicz:3`, `post:4:3`, `belnap`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BuiltinSpec {
    pub family: Family,
    pub n: usize,
    /// Post designation threshold: `D = {m, ..., n-1}`.
    pub m: usize,
}

impl BuiltinSpec {
    pub fn lukasiewicz(n: usize) -> BuiltinSpec {
        BuiltinSpec { family: Family::Lukasiewicz, n, m: n.saturating_sub(1) }
    }

    pub fn godel(n: usize) -> BuiltinSpec {
        BuiltinSpec { family: Family::Godel, n, m: n.saturating_sub(1) }
    }

    pub fn post(n: usize, m: usize) -> BuiltinSpec {
        BuiltinSpec { family: Family::Post, n, m }
    }

    pub fn fixed(family: Family) -> BuiltinSpec {
        let n = match family {
            Family::Classical => 2,
            Family::Belnap => 4,
            _ => 3,
        };
        BuiltinSpec { family, n, m: n - 1 }
    }

    pub fn classical() -> BuiltinSpec {
        BuiltinSpec::fixed(Family::Classical)
    }

    pub fn parse(s: &str) -> Result<BuiltinSpec, LogicError> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<usize, LogicError> {
            parts
                .get(i)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| LogicError::BadParameter(s.to_string(), "expected an integer parameter".into()))
        };
        let spec = match (parts[0], parts.len()) {
            ("lukasiewicz", 2) => BuiltinSpec::lukasiewicz(num(1)?),
            ("godel", 2) => BuiltinSpec::godel(num(1)?),
            ("post", 2) => {
                let n = num(1)?;
                BuiltinSpec::post(n, n.saturating_sub(1))
            }
            ("post", 3) => BuiltinSpec::post(num(1)?, num(2)?),
            ("classical", 1) => BuiltinSpec::fixed(Family::Classical),
            ("kleene-strong", 1) => BuiltinSpec::fixed(Family::KleeneStrong),
            ("kleene-weak", 1) => BuiltinSpec::fixed(Family::KleeneWeak),
            ("bochvar", 1) => BuiltinSpec::fixed(Family::Bochvar),
            ("belnap", 1) => BuiltinSpec::fixed(Family::Belnap),
            _ => return Err(LogicError::UnknownLogic(s.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), LogicError> {
        if self.n < 2 {
            return Err(LogicError::BadParameter(self.to_string(), "n must be at least 2".into()));
        }
        if self.n > 64 {
            return Err(LogicError::BadParameter(self.to_string(), "n must be at most 64".into()));
        }
        if self.family == Family::Post && self.m > self.n - 1 {
            return Err(LogicError::BadParameter(self.to_string(), "m must lie in 0..=n-1".into()));
        }
        Ok(())
    }
}

impl FromStr for BuiltinSpec {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinSpec::parse(s)
    }
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Lukasiewicz => write!(f, "lukasiewicz:{}", self.n),
            Family::Godel => write!(f, "godel:{}", self.n),
            Family::Post => write!(f, "post:{}:{}", self.n, self.m),
            Family::KleeneStrong => f.write_str("kleene-strong"),
            Family::KleeneWeak => f.write_str("kleene-weak"),
            Family::Bochvar => f.write_str("bochvar"),
            Family::Belnap => f.write_str("belnap"),
            Family::Classical => f.write_str("classical"),
        }
    }
}

fn table(n: usize, arity: usize, f: impl Fn(&[usize]) -> usize) -> Vec<Val> {
    tuples(n, arity)
        .map(|t| {
            let idx: Vec<usize> = t.iter().map(|v| v.index()).collect();
            Val(f(&idx) as u8)
        })
        .collect()
}

fn conn(name: &str, n: usize, arity: usize, aliases: &[&str], f: impl Fn(&[usize]) -> usize) -> Connective {
    Connective::new(name, arity, table(n, arity, f)).with_aliases(aliases)
}

/// Values `0, 1/(n-1), ..., 1`.
fn unit_interval(n: usize) -> Vec<TruthValue> {
    (0..n).map(|k| TruthValue::Rational(Rational::new(k as i64, (n - 1) as i64))).collect()
}

fn integers(n: usize) -> Vec<TruthValue> {
    (0..n).map(|k| TruthValue::integer(k as i64)).collect()
}

fn chain(n: usize) -> Order {
    let seq: Vec<Val> = (0..n).map(|i| Val(i as u8)).collect();
    Order::chain(&seq, n).expect("a chain is acyclic")
}

/// Three-valued order `0 < 2 < 1` used for the Kleene and Bochvar tables.
fn three_valued_order() -> Order {
    Order::chain(&[Val(0), Val(2), Val(1)], 3).expect("acyclic")
}

/// Builds the matrix for a built-in logic.
pub fn builtin(spec: &BuiltinSpec) -> Result<Matrix, LogicError> {
    spec.validate()?;
    let name = spec.to_string();
    let n = spec.n;
    let top = n - 1;
    let m = match spec.family {
        Family::Lukasiewicz => {
            let conns = vec![
                conn("imp", n, 2, &["->", "→"], |a| (top - a[0] + a[1]).min(top)),
                conn("neg", n, 1, &["~", "¬"], |a| top - a[0]),
                conn("one", n, 0, &["1"], |_| top),
                conn("zero", n, 0, &["0"], |_| 0),
                conn("oplus", n, 2, &["+", "⊕"], |a| (a[0] + a[1]).min(top)),
                conn("otimes", n, 2, &["*", "⊗"], |a| (a[0] + a[1]).saturating_sub(top)),
                conn("or", n, 2, &["|", "∨"], |a| a[0].max(a[1])),
                conn("and", n, 2, &["&", "∧"], |a| a[0].min(a[1])),
                conn("iff", n, 2, &["<->", "↔"], |a| top - a[0].abs_diff(a[1])),
            ];
            Matrix::new(name, unit_interval(n), ValueSet::singleton(Val(top as u8)), conns, Some(chain(n)))?
        }
        Family::Godel => {
            let conns = vec![
                conn("or", n, 2, &["|", "∨"], |a| a[0].max(a[1])),
                conn("and", n, 2, &["&", "∧"], |a| a[0].min(a[1])),
                conn("imp", n, 2, &["->", "→"], |a| if a[0] <= a[1] { top } else { a[1] }),
                conn("neg", n, 1, &["~", "¬"], |a| if a[0] == 0 { top } else { 0 }),
                conn("zero", n, 0, &["0"], |_| 0),
                conn("one", n, 0, &["1"], |_| top),
            ];
            Matrix::new(name, unit_interval(n), ValueSet::singleton(Val(top as u8)), conns, Some(chain(n)))?
        }
        Family::Post => {
            let conns = vec![
                conn("or", n, 2, &["|", "∨"], |a| a[0].max(a[1])),
                conn("tilde", n, 1, &["~", "∼"], |a| (a[0] + n - 1) % n),
            ];
            let d: ValueSet = (spec.m..n).map(|i| Val(i as u8)).collect();
            Matrix::new(name, integers(n), d, conns, Some(chain(n)))?
        }
        Family::Classical => {
            let conns = vec![
                conn("neg", 2, 1, &["~", "¬"], |a| 1 - a[0]),
                conn("or", 2, 2, &["|", "∨"], |a| a[0].max(a[1])),
                conn("and", 2, 2, &["&", "∧"], |a| a[0].min(a[1])),
                conn("imp", 2, 2, &["->", "→"], |a| (1 - a[0]).max(a[1])),
            ];
            Matrix::new(name, integers(2), ValueSet::singleton(Val(1)), conns, Some(chain(2)))?
        }
        Family::KleeneStrong => {
            // 0 false, 1 true, 2 undetermined
            let neg = |i: usize| match i {
                0 => 1,
                1 => 0,
                _ => 2,
            };
            let or = |a: usize, b: usize| {
                if a == 1 || b == 1 {
                    1
                } else if a == 0 && b == 0 {
                    0
                } else {
                    2
                }
            };
            let and = move |a: usize, b: usize| neg(or(neg(a), neg(b)));
            let conns = vec![
                conn("neg", 3, 1, &["~", "¬"], move |a| neg(a[0])),
                conn("or", 3, 2, &["|", "∨"], move |a| or(a[0], a[1])),
                conn("and", 3, 2, &["&", "∧"], move |a| and(a[0], a[1])),
                conn("imp", 3, 2, &["->", "→"], move |a| or(neg(a[0]), a[1])),
            ];
            Matrix::new(name, integers(3), ValueSet::singleton(Val(1)), conns, Some(three_valued_order()))?
        }
        Family::KleeneWeak | Family::Bochvar => {
            // 2 is contagious; classical on {0, 1}
            let lift = |f: fn(usize, usize) -> usize| move |a: &[usize]| if a.contains(&2) { 2 } else { f(a[0], a[1]) };
            let conns = vec![
                conn("neg", 3, 1, &["~", "¬"], |a| match a[0] {
                    0 => 1,
                    1 => 0,
                    _ => 2,
                }),
                conn("or", 3, 2, &["|", "∨"], lift(|a, b| a.max(b))),
                conn("and", 3, 2, &["&", "∧"], lift(|a, b| a.min(b))),
                conn("imp", 3, 2, &["->", "→"], lift(|a, b| (1 - a).max(b))),
            ];
            Matrix::new(name, integers(3), ValueSet::singleton(Val(1)), conns, Some(three_valued_order()))?
        }
        Family::Belnap => {
            // values: ∅, 0, 1, 01; logical lattice 0 < ∅, 01 < 1
            let values = vec![
                TruthValue::Token("∅".into()),
                TruthValue::integer(0),
                TruthValue::integer(1),
                TruthValue::Token("01".into()),
            ];
            let order = Order::from_chains(&[vec![Val(1), Val(0), Val(2)], vec![Val(1), Val(3), Val(2)]], 4)?;
            let join = {
                let o = order.clone();
                move |a: &[usize]| o.sup(ValueSet::from_iter([Val(a[0] as u8), Val(a[1] as u8)])).unwrap().index()
            };
            let meet = {
                let o = order.clone();
                move |a: &[usize]| o.inf(ValueSet::from_iter([Val(a[0] as u8), Val(a[1] as u8)])).unwrap().index()
            };
            let conns = vec![
                conn("neg", 4, 1, &["~", "¬"], |a| match a[0] {
                    1 => 2,
                    2 => 1,
                    x => x,
                }),
                conn("or", 4, 2, &["|", "∨"], join),
                conn("and", 4, 2, &["&", "∧"], meet),
            ];
            Matrix::new(name, values, ValueSet::EMPTY, conns, Some(order))?
        }
    };
    Ok(m)
}
