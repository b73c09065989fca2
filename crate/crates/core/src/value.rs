//! Truth values, value indices and value sets.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

/// Exact rational used for numeric truth values.
pub type Rational = Ratio<i64>;

/// Largest supported number of truth values in a matrix (sets are `u64` bitmasks).
pub const MAX_VALUES: usize = 64;

/// Label of a truth value: an exact rational or an opaque token.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    Rational(Rational),
    Token(String),
}

impl TruthValue {
    /// Parses a label. Canonical rationals (`-?\d+` or `-?\d+/\d+`, reduced,
    /// no leading zeros, denominator > 1) become [`TruthValue::Rational`];
    /// everything else is an opaque token.
    pub fn parse_label(s: &str) -> TruthValue {
        match canonical_rational(s) {
            Some(r) => TruthValue::Rational(r),
            None => TruthValue::Token(s.to_string()),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            TruthValue::Rational(r) => Some(*r),
            TruthValue::Token(_) => None,
        }
    }

    pub fn integer(i: i64) -> TruthValue {
        TruthValue::Rational(Rational::from_integer(i))
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::Rational(r) => write!(f, "{}", fmt_rational(r)),
            TruthValue::Token(t) => f.write_str(t),
        }
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn is_plain_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

fn canonical_rational(s: &str) -> Option<Rational> {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !is_plain_digits(num) {
        return None;
    }
    let mut n: i64 = num.parse().ok()?;
    if s.starts_with('-') {
        if n == 0 {
            return None;
        }
        n = -n;
    }
    match den {
        None => Some(Rational::from_integer(n)),
        Some(d) => {
            if !is_plain_digits(d) {
                return None;
            }
            let d: i64 = d.parse().ok()?;
            if d <= 1 || n.is_zero() {
                return None;
            }
            let r = Rational::new(n, d);
            // only reduced fractions are canonical
            (*r.denom() == d).then_some(r)
        }
    }
}

/// Parses any rational written as `n`, `n/d` or `-n/d` (not necessarily reduced).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = num.parse().ok()?;
    let d: i64 = den.parse().ok()?;
    (d != 0).then(|| Rational::new(n, d))
}

/// Index of a truth value inside its matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Val(pub u8);

impl Val {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of value indices, stored as a bitmask.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSet(u64);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);

    pub fn from_bits(bits: u64) -> ValueSet {
        ValueSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All values of a matrix of size `n`.
    pub fn full(n: usize) -> ValueSet {
        if n >= 64 {
            ValueSet(u64::MAX)
        } else {
            ValueSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Val) -> ValueSet {
        ValueSet(1u64 << v.0)
    }

    pub fn contains(self, v: Val) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    pub fn insert(&mut self, v: Val) {
        self.0 |= 1u64 << v.0;
    }

    pub fn with(self, v: Val) -> ValueSet {
        ValueSet(self.0 | 1u64 << v.0)
    }

    pub fn union(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 & other.0)
    }

    pub fn difference(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> ValueSet {
        ValueSet(!self.0 & ValueSet::full(n).0)
    }

    pub fn is_subset(self, other: ValueSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<Val> {
        (self.0 != 0).then(|| Val(self.0.trailing_zeros() as u8))
    }

    pub fn iter(self) -> impl Iterator<Item = Val> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as u8;
                bits &= bits - 1;
                Some(Val(v))
            }
        })
    }
}

impl FromIterator<Val> for ValueSet {
    fn from_iter<I: IntoIterator<Item = Val>>(iter: I) -> Self {
        let mut s = ValueSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// A sign: a nonempty set of truth values.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sign(ValueSet);

impl Sign {
    /// Returns `None` for the empty set.
    pub fn new(set: ValueSet) -> Option<Sign> {
        (!set.is_empty()).then_some(Sign(set))
    }

    pub fn singleton(v: Val) -> Sign {
        Sign(ValueSet::singleton(v))
    }

    pub fn set(self) -> ValueSet {
        self.0
    }

    pub fn contains(self, v: Val) -> bool {
        self.0.contains(v)
    }

    /// The single value, if this is a singleton sign.
    pub fn as_singleton(self) -> Option<Val> {
        (self.0.len() == 1).then(|| self.0.first().unwrap())
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        false
    }
}
