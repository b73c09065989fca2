//! Chang's algebra `Γ(ℤ ×lex ℤ, (1,0))`.

use std::cmp::Ordering;
use std::fmt;

use super::axioms::MvAlgebra;
use super::finite::ElementOrder;
use super::MvError;

/// A pair of integers, ordered lexicographically.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexPair {
    pub a: i64,
    pub b: i64,
}

impl LexPair {
    pub const ZERO: LexPair = LexPair { a: 0, b: 0 };
    pub const UNIT: LexPair = LexPair { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> LexPair {
        LexPair { a, b }
    }

    pub fn in_unit_interval(self) -> bool {
        LexPair::ZERO <= self && self <= LexPair::UNIT
    }

    fn add(self, o: LexPair) -> LexPair {
        LexPair::new(self.a + o.a, self.b + o.b)
    }

    fn sub(self, o: LexPair) -> LexPair {
        LexPair::new(self.a - o.a, self.b - o.b)
    }

    /// Parses `(a,b)`.
    pub fn parse(s: &str) -> Option<LexPair> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (a, b) = inner.split_once(',')?;
        Some(LexPair::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
    }
}

impl fmt::Display for LexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ChangOp {
    Oplus,
    Otimes,
    Neg,
    Vee,
    Wedge,
    Leq,
}

impl std::str::FromStr for ChangOp {
    type Err = String;

    fn from_str(s: &str) -> Result<ChangOp, String> {
        Ok(match s {
            "oplus" => ChangOp::Oplus,
            "otimes" => ChangOp::Otimes,
            "neg" => ChangOp::Neg,
            "vee" => ChangOp::Vee,
            "wedge" => ChangOp::Wedge,
            "leq" => ChangOp::Leq,
            _ => return Err(format!("unknown operation `{s}`")),
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ChangValue {
    Pair(LexPair),
    Bool(bool),
}

impl fmt::Display for ChangValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChangValue::Pair(p) => write!(f, "{p}"),
            ChangValue::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// Applies `op` with the truncated group operations. `y` is ignored for `neg`.
pub fn chang_op(x: LexPair, y: LexPair, op: ChangOp) -> Result<ChangValue, MvError> {
    for p in [x, y] {
        if !p.in_unit_interval() {
            return Err(MvError::OutOfRange(p.to_string()));
        }
    }
    let c = ChangAlgebra;
    Ok(match op {
        ChangOp::Oplus => ChangValue::Pair(c.oplus(x, y)),
        ChangOp::Otimes => ChangValue::Pair(c.otimes(x, y)),
        ChangOp::Neg => ChangValue::Pair(c.neg(x)),
        ChangOp::Vee => ChangValue::Pair(c.vee(x, y)),
        ChangOp::Wedge => ChangValue::Pair(c.wedge(x, y)),
        ChangOp::Leq => ChangValue::Bool(x <= y),
    })
}

/// Chang's algebra: `x ⊕ y = (x + y) ∧ u`, `x ⊗ y = (x + y − u) ∨ 0`, `¬x = u − x`.
#[derive(Copy, Clone, Debug, Default)]
pub struct ChangAlgebra;

impl ChangAlgebra {
    /// `(0,0..=bound)` followed by `(1,−bound..=0)`.
    pub fn sample(bound: i64) -> Vec<LexPair> {
        let low = (0..=bound).map(|b| LexPair::new(0, b));
        let high = (-bound..=0).map(|b| LexPair::new(1, b));
        low.chain(high).collect()
    }

    /// Infinitesimals never reach 1; anything with first coordinate 1 does
    /// within two steps.
    pub fn element_order(&self, x: LexPair) -> Result<ElementOrder, MvError> {
        if !x.in_unit_interval() {
            return Err(MvError::OutOfRange(x.to_string()));
        }
        if x.a == 0 {
            return Ok(ElementOrder::Infinite(format!(
                "k·{x} = (0,{}k) <lex (1,0) for every k",
                x.b
            )));
        }
        Ok(ElementOrder::Finite(if x == LexPair::UNIT { 1 } else { 2 }))
    }
}

impl MvAlgebra for ChangAlgebra {
    type E = LexPair;

    fn zero(&self) -> LexPair {
        LexPair::ZERO
    }

    fn one(&self) -> LexPair {
        LexPair::UNIT
    }

    fn oplus(&self, x: LexPair, y: LexPair) -> LexPair {
        x.add(y).min(LexPair::UNIT)
    }

    fn otimes(&self, x: LexPair, y: LexPair) -> LexPair {
        x.add(y).sub(LexPair::UNIT).max(LexPair::ZERO)
    }

    fn neg(&self, x: LexPair) -> LexPair {
        LexPair::UNIT.sub(x)
    }

    fn show(&self, x: LexPair) -> String {
        x.to_string()
    }

    fn leq(&self, x: LexPair, y: LexPair) -> bool {
        x.cmp(&y) != Ordering::Greater
    }
}
