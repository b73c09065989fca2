//! Logical matrices: truth values, designated values, connective tables and an optional order.

use std::fmt;

use thiserror::Error;

use crate::value::{parse_rational, TruthValue, Val, ValueSet, MAX_VALUES};

/// Identifier of a connective inside its matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnId(pub u8);

impl ConnId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A named connective with its full truth table.
///
/// The table is row-major: the entry for `(a_1, ..., a_u)` sits at index
/// `a_1 * n^(u-1) + ... + a_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connective {
    pub name: String,
    pub arity: usize,
    pub table: Vec<Val>,
    /// Surface symbols. Role follows arity: constant, prefix or infix.
    pub aliases: Vec<String>,
}

impl Connective {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<Val>) -> Connective {
        Connective { name: name.into(), arity, table, aliases: Vec::new() }
    }

    pub fn with_aliases(mut self, aliases: &[&str]) -> Connective {
        self.aliases = aliases.iter().map(|s| s.to_string()).collect();
        self
    }
}

/// Partial order on values: `up[a]` holds every `b` with `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    up: Vec<ValueSet>,
}

impl Order {
    /// Total order following the listed sequence.
    pub fn chain(seq: &[Val], n: usize) -> Result<Order, MatrixError> {
        Order::from_chains(&[seq.to_vec()], n)
    }

    /// Reflexive-transitive closure of the covering pairs given by the chains.
    pub fn from_chains(chains: &[Vec<Val>], n: usize) -> Result<Order, MatrixError> {
        let mut up: Vec<ValueSet> = (0..n).map(|i| ValueSet::singleton(Val(i as u8))).collect();
        for chain in chains {
            for w in chain.windows(2) {
                up[w[0].index()].insert(w[1]);
            }
        }
        // transitive closure
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut acc = up[a];
                for b in up[a].iter() {
                    acc = acc.union(up[b.index()]);
                }
                if acc != up[a] {
                    up[a] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if b.index() != a && up[b.index()].contains(Val(a as u8)) {
                    return Err(MatrixError::CyclicOrder);
                }
            }
        }
        Ok(Order { up })
    }

    pub fn leq(&self, a: Val, b: Val) -> bool {
        self.up[a.index()].contains(b)
    }

    pub fn is_total(&self) -> bool {
        let n = self.up.len();
        (0..n).all(|a| (0..n).all(|b| self.leq(Val(a as u8), Val(b as u8)) || self.leq(Val(b as u8), Val(a as u8))))
    }

    /// Least element of `set`, if one exists.
    pub fn least(&self, set: ValueSet) -> Option<Val> {
        set.iter().find(|&a| set.is_subset(self.up[a.index()]))
    }

    /// Greatest element of `set`, if one exists.
    pub fn greatest(&self, set: ValueSet) -> Option<Val> {
        set.iter().find(|&a| set.iter().all(|b| self.leq(b, a)))
    }

    /// Greatest lower bound of `set` among all values.
    pub fn inf(&self, set: ValueSet) -> Option<Val> {
        let n = self.up.len();
        let lower: ValueSet = (0..n).map(|c| Val(c as u8)).filter(|&c| set.is_subset(self.up[c.index()])).collect();
        self.greatest(lower)
    }

    /// Least upper bound of `set` among all values.
    pub fn sup(&self, set: ValueSet) -> Option<Val> {
        let n = self.up.len();
        let upper: ValueSet = (0..n).map(|c| Val(c as u8)).filter(|&c| set.iter().all(|a| self.leq(a, c))).collect();
        self.least(upper)
    }

    /// The order as a list of covering pairs (for serialization).
    pub fn covers(&self) -> Vec<(Val, Val)> {
        let n = self.up.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.up[a].iter() {
                if b.index() == a {
                    continue;
                }
                let between = self.up[a]
                    .iter()
                    .any(|c| c.index() != a && c != b && self.leq(c, b));
                if !between {
                    out.push((Val(a as u8), b));
                }
            }
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("a matrix needs at least 2 values, found {0}")]
    TooFewValues(usize),
    #[error("at most {MAX_VALUES} values are supported, found {0}")]
    TooManyValues(usize),
    #[error("duplicate value `{0}`")]
    DuplicateValue(String),
    #[error("duplicate connective `{0}`")]
    DuplicateConnective(String),
    #[error("duplicate alias `{0}`")]
    DuplicateAlias(String),
    #[error("connective `{name}`: table has {found} entries, expected {expected}")]
    TableSize { name: String, expected: usize, found: usize },
    #[error("connective `{0}`: table entry out of range")]
    TableRange(String),
    #[error("designated value out of range")]
    DesignatedRange,
    #[error("declared order is cyclic")]
    CyclicOrder,
    #[error("too many connectives (at most 255)")]
    TooManyConnectives,
    #[error("invalid connective name `{0}`")]
    BadName(String),
}

/// A finite logical matrix `(M, D)` with connective tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    name: String,
    values: Vec<TruthValue>,
    designated: ValueSet,
    connectives: Vec<Connective>,
    order: Option<Order>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Matrix {
    /// Builds and validates a matrix. An empty designated set is permitted
    /// (bilattice-style logics); semantic queries that need `D` then fail.
    pub fn new(
        name: impl Into<String>,
        values: Vec<TruthValue>,
        designated: ValueSet,
        connectives: Vec<Connective>,
        order: Option<Order>,
    ) -> Result<Matrix, MatrixError> {
        let n = values.len();
        if n < 2 {
            return Err(MatrixError::TooFewValues(n));
        }
        if n > MAX_VALUES {
            return Err(MatrixError::TooManyValues(n));
        }
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(MatrixError::DuplicateValue(v.to_string()));
            }
        }
        if !designated.is_subset(ValueSet::full(n)) {
            return Err(MatrixError::DesignatedRange);
        }
        if connectives.len() > 255 {
            return Err(MatrixError::TooManyConnectives);
        }
        let mut seen_alias: Vec<&str> = Vec::new();
        for (i, c) in connectives.iter().enumerate() {
            if !is_identifier(&c.name) {
                return Err(MatrixError::BadName(c.name.clone()));
            }
            if connectives[..i].iter().any(|d| d.name == c.name) {
                return Err(MatrixError::DuplicateConnective(c.name.clone()));
            }
            let expected = n.checked_pow(c.arity as u32).unwrap_or(usize::MAX);
            if c.table.len() != expected {
                return Err(MatrixError::TableSize { name: c.name.clone(), expected, found: c.table.len() });
            }
            if c.table.iter().any(|v| v.index() >= n) {
                return Err(MatrixError::TableRange(c.name.clone()));
            }
            for a in &c.aliases {
                if a.is_empty() || a.chars().any(|ch| ch.is_whitespace() || "(),#".contains(ch)) || seen_alias.contains(&a.as_str()) {
                    return Err(MatrixError::DuplicateAlias(a.clone()));
                }
                seen_alias.push(a);
            }
        }
        if let Some(o) = &order {
            if o.up.len() != n {
                return Err(MatrixError::CyclicOrder);
            }
        }
        Ok(Matrix { name: name.into(), values, designated, connectives, order })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn all_values(&self) -> impl Iterator<Item = Val> + Clone {
        (0..self.values.len()).map(|i| Val(i as u8))
    }

    pub fn full_set(&self) -> ValueSet {
        ValueSet::full(self.size())
    }

    pub fn value(&self, v: Val) -> &TruthValue {
        &self.values[v.index()]
    }

    /// Looks a value up by label. Numeric text is also matched by rational value,
    /// so `2/4` finds `1/2`.
    pub fn value_of(&self, label: &str) -> Option<Val> {
        let label = label.trim();
        if let Some(i) = self.values.iter().position(|v| v.to_string() == label) {
            return Some(Val(i as u8));
        }
        let r = parse_rational(label)?;
        self.values
            .iter()
            .position(|v| v.as_rational() == Some(r))
            .map(|i| Val(i as u8))
    }

    pub fn designated(&self) -> ValueSet {
        self.designated
    }

    pub fn undesignated(&self) -> ValueSet {
        self.designated.complement(self.size())
    }

    pub fn is_designated(&self, v: Val) -> bool {
        self.designated.contains(v)
    }

    pub fn order(&self) -> Option<&Order> {
        self.order.as_ref()
    }

    pub fn connectives(&self) -> impl Iterator<Item = (ConnId, &Connective)> {
        self.connectives.iter().enumerate().map(|(i, c)| (ConnId(i as u8), c))
    }

    pub fn connective_count(&self) -> usize {
        self.connectives.len()
    }

    pub fn connective(&self, id: ConnId) -> &Connective {
        &self.connectives[id.index()]
    }

    pub fn arity(&self, id: ConnId) -> usize {
        self.connectives[id.index()].arity
    }

    pub fn conn_by_name(&self, name: &str) -> Option<ConnId> {
        self.connectives.iter().position(|c| c.name == name).map(|i| ConnId(i as u8))
    }

    /// Looks a connective up by name or alias.
    pub fn conn_by_symbol(&self, sym: &str) -> Option<ConnId> {
        self.conn_by_name(sym).or_else(|| {
            self.connectives
                .iter()
                .position(|c| c.aliases.iter().any(|a| a == sym))
                .map(|i| ConnId(i as u8))
        })
    }

    /// Table lookup for `c(args)`.
    pub fn apply(&self, id: ConnId, args: &[Val]) -> Val {
        let c = &self.connectives[id.index()];
        debug_assert_eq!(c.arity, args.len());
        let n = self.values.len();
        let idx = args.iter().fold(0usize, |acc, a| acc * n + a.index());
        c.table[idx]
    }

    /// Value used when nothing constrains an atom: least in the declared order,
    /// else the first listed value of `set`.
    pub fn default_in(&self, set: ValueSet) -> Option<Val> {
        match &self.order {
            Some(o) => o.least(set).or_else(|| set.first()),
            None => set.first(),
        }
    }

    /// Renders a value set as `{a,b}`.
    pub fn show_set(&self, set: ValueSet) -> String {
        let items: Vec<String> = set.iter().map(|v| self.value(v).to_string()).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Same matrix under a new name.
    pub fn renamed(mut self, name: impl Into<String>) -> Matrix {
        self.name = name.into();
        self
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{} [{}] D={}", self.name, vals.join(" "), self.show_set(self.designated))
    }
}

/// Iterates over all tuples of `k` values in row-major order.
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<Val>> {
    let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut idx| {
        let mut t = vec![Val(0); k];
        for slot in t.iter_mut().rev() {
            *slot = Val((idx % n) as u8);
            idx /= n;
        }
        t
    })
}
