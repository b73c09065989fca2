//! Finite first-order structures with distribution quantifiers.
//!
//! A quantifier is a map from nonempty sets of truth values to truth values;
//! `QxA(x)` takes the value of that map on the distribution `{A(a) : a ∈ S}`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::matrix::{ConnId, Matrix};
use crate::value::{Val, ValueSet};

/// Largest matrix for which quantifier tables are stored extensionally.
pub const MAX_QUANTIFIER_VALUES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    /// A domain element referenced by index.
    Elem(usize),
    Fun(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    Pred(String, Vec<Term>),
    Conn(ConnId, Vec<FoFormula>),
    Quant(String, String, Box<FoFormula>),
}

impl FoFormula {
    pub fn pred(name: &str, args: Vec<Term>) -> FoFormula {
        FoFormula::Pred(name.to_string(), args)
    }

    pub fn quant(q: &str, var: &str, body: FoFormula) -> FoFormula {
        FoFormula::Quant(q.to_string(), var.to_string(), Box::new(body))
    }
}

/// A quantifier function stored on all nonempty subsets of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantifier {
    /// Indexed by the bitmask of the subset; entry 0 is unused.
    table: Vec<Val>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("symbol `{0}` is missing from the structure")]
    MissingSymbol(String),
    #[error("symbol `{name}` expects {expected} argument(s), found {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("domain element {0} out of range")]
    ElementRange(usize),
    #[error("the domain must be nonempty")]
    EmptyDomain,
    #[error("table for `{0}` has the wrong size or out-of-range entries")]
    BadTable(String),
    #[error("quantifier tables support at most {MAX_QUANTIFIER_VALUES} values")]
    TooManyValues,
    #[error("the declared order has no {0} for some subset")]
    NotALattice(&'static str),
    #[error("matrix declares no value order")]
    NoOrder,
}

impl Quantifier {
    /// Tabulates `f` on every nonempty subset of the matrix values.
    pub fn from_fn(m: &Matrix, f: impl Fn(ValueSet) -> Val) -> Result<Quantifier, FoError> {
        let n = m.size();
        if n > MAX_QUANTIFIER_VALUES {
            return Err(FoError::TooManyValues);
        }
        let table = (0..1u64 << n)
            .map(|bits| if bits == 0 { Val(0) } else { f(ValueSet::from_bits(bits)) })
            .collect::<Vec<_>>();
        if table.iter().any(|v| v.index() >= n) {
            return Err(FoError::BadTable("quantifier".into()));
        }
        Ok(Quantifier { table })
    }

    fn from_partial(m: &Matrix, f: impl Fn(ValueSet) -> Option<Val>, what: &'static str) -> Result<Quantifier, FoError> {
        let n = m.size();
        if n > MAX_QUANTIFIER_VALUES {
            return Err(FoError::TooManyValues);
        }
        let mut table = vec![Val(0); 1 << n];
        for bits in 1..1u64 << n {
            table[bits as usize] = f(ValueSet::from_bits(bits)).ok_or(FoError::NotALattice(what))?;
        }
        Ok(Quantifier { table })
    }

    /// `q(X) = inf X` under the declared order.
    pub fn inf(m: &Matrix) -> Result<Quantifier, FoError> {
        let o = m.order().ok_or(FoError::NoOrder)?;
        Quantifier::from_partial(m, |s| o.inf(s), "infimum")
    }

    /// `q(X) = sup X` under the declared order.
    pub fn sup(m: &Matrix) -> Result<Quantifier, FoError> {
        let o = m.order().ok_or(FoError::NoOrder)?;
        Quantifier::from_partial(m, |s| o.sup(s), "supremum")
    }

    pub fn apply(&self, set: ValueSet) -> Val {
        debug_assert!(!set.is_empty());
        self.table[set.bits() as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Table<T> {
    arity: usize,
    entries: Vec<T>,
}

/// A finite structure: domain, function and predicate tables, and quantifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoStructure {
    domain: Vec<String>,
    functions: BTreeMap<String, Table<usize>>,
    predicates: BTreeMap<String, Table<Val>>,
    quantifiers: BTreeMap<String, Quantifier>,
}

impl FoStructure {
    pub fn new(domain: Vec<String>) -> Result<FoStructure, FoError> {
        if domain.is_empty() {
            return Err(FoError::EmptyDomain);
        }
        Ok(FoStructure { domain, functions: BTreeMap::new(), predicates: BTreeMap::new(), quantifiers: BTreeMap::new() })
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    /// Adds a function `S^arity → S`, row-major over domain indices.
    pub fn add_function(&mut self, name: &str, arity: usize, entries: Vec<usize>) -> Result<(), FoError> {
        let s = self.domain.len();
        if entries.len() != s.pow(arity as u32) || entries.iter().any(|&e| e >= s) {
            return Err(FoError::BadTable(name.to_string()));
        }
        self.functions.insert(name.to_string(), Table { arity, entries });
        Ok(())
    }

    /// Adds a predicate `S^arity → M`, row-major over domain indices.
    pub fn add_predicate(&mut self, m: &Matrix, name: &str, arity: usize, entries: Vec<Val>) -> Result<(), FoError> {
        if entries.len() != self.domain.len().pow(arity as u32) || entries.iter().any(|v| v.index() >= m.size()) {
            return Err(FoError::BadTable(name.to_string()));
        }
        self.predicates.insert(name.to_string(), Table { arity, entries });
        Ok(())
    }

    pub fn add_quantifier(&mut self, name: &str, q: Quantifier) {
        self.quantifiers.insert(name.to_string(), q);
    }

    fn term(&self, t: &Term, env: &mut Vec<(String, usize)>) -> Result<usize, FoError> {
        match t {
            Term::Var(x) => env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, e)| *e)
                .ok_or_else(|| FoError::UnboundVariable(x.clone())),
            Term::Elem(e) if *e < self.domain.len() => Ok(*e),
            Term::Elem(e) => Err(FoError::ElementRange(*e)),
            Term::Fun(name, args) => {
                let table = self.functions.get(name).ok_or_else(|| FoError::MissingSymbol(name.clone()))?;
                if table.arity != args.len() {
                    return Err(FoError::Arity { name: name.clone(), expected: table.arity, found: args.len() });
                }
                let idx = self.row(args, env)?;
                Ok(table.entries[idx])
            }
        }
    }

    fn row(&self, args: &[Term], env: &mut Vec<(String, usize)>) -> Result<usize, FoError> {
        let s = self.domain.len();
        let mut idx = 0;
        for a in args {
            idx = idx * s + self.term(a, env)?;
        }
        Ok(idx)
    }

    fn value(&self, f: &FoFormula, m: &Matrix, env: &mut Vec<(String, usize)>) -> Result<Val, FoError> {
        match f {
            FoFormula::Pred(name, args) => {
                let table = self.predicates.get(name).ok_or_else(|| FoError::MissingSymbol(name.clone()))?;
                if table.arity != args.len() {
                    return Err(FoError::Arity { name: name.clone(), expected: table.arity, found: args.len() });
                }
                let idx = self.row(args, env)?;
                Ok(table.entries[idx])
            }
            FoFormula::Conn(c, args) => {
                let con = m.connective(*c);
                if con.arity != args.len() {
                    return Err(FoError::Arity { name: con.name.clone(), expected: con.arity, found: args.len() });
                }
                let vals = args.iter().map(|a| self.value(a, m, env)).collect::<Result<Vec<_>, _>>()?;
                Ok(m.apply(*c, &vals))
            }
            FoFormula::Quant(q, x, body) => {
                let quant = self.quantifiers.get(q).ok_or_else(|| FoError::MissingSymbol(q.clone()))?;
                let mut dist = ValueSet::EMPTY;
                for a in 0..self.domain.len() {
                    env.push((x.clone(), a));
                    let v = self.value(body, m, env);
                    env.pop();
                    dist.insert(v?);
                }
                Ok(quant.apply(dist))
            }
        }
    }

    /// Value of a closed formula in this structure.
    pub fn evaluate_sentence(&self, sentence: &FoFormula, m: &Matrix) -> Result<Val, FoError> {
        self.value(sentence, m, &mut Vec::new())
    }
}
