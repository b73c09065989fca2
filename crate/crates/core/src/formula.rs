//! Formula syntax trees.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::matrix::ConnId;

/// A propositional atom.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Atom {
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A formula: an atom or a connective applied to subformulas.
///
/// Connectives are referenced by [`ConnId`], so a formula is meaningful relative
/// to the matrix it was built for. Use [`crate::Matrix::show`] to print it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    App(ConnId, Arc<[Formula]>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    pub fn app(c: ConnId, args: Vec<Formula>) -> Formula {
        Formula::App(c, args.into())
    }

    pub fn unary(c: ConnId, a: Formula) -> Formula {
        Formula::app(c, vec![a])
    }

    pub fn binary(c: ConnId, a: Formula, b: Formula) -> Formula {
        Formula::app(c, vec![a, b])
    }

    pub fn constant(c: ConnId) -> Formula {
        Formula::app(c, Vec::new())
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            Formula::App(..) => None,
        }
    }

    pub fn args(&self) -> &[Formula] {
        match self {
            Formula::Atom(_) => &[],
            Formula::App(_, args) => args,
        }
    }

    /// Atoms in sorted order.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        match self {
            Formula::Atom(a) => a == atom,
            Formula::App(_, args) => args.iter().any(|a| a.contains_atom(atom)),
        }
    }

    /// Connective nesting depth; atoms and constants have depth 0 and 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::App(_, args) => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::App(_, args) => 1 + args.iter().map(Formula::size).sum::<usize>(),
        }
    }

    /// Simultaneous substitution of atoms.
    pub fn substitute(&self, map: &BTreeMap<Atom, Formula>) -> Formula {
        match self {
            Formula::Atom(a) => map.get(a).cloned().unwrap_or_else(|| self.clone()),
            Formula::App(c, args) => Formula::App(*c, args.iter().map(|a| a.substitute(map)).collect()),
        }
    }

    /// Replaces a single atom.
    pub fn replace(&self, atom: &Atom, by: &Formula) -> Formula {
        match self {
            Formula::Atom(a) if a == atom => by.clone(),
            Formula::Atom(_) => self.clone(),
            Formula::App(c, args) => Formula::App(*c, args.iter().map(|a| a.replace(atom, by)).collect()),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::App(c, args) => {
                write!(f, "#{}(", c.0)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a:?}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Placeholder atoms used for connective templates: `p`, `q`, `r`, then `p1..pu`.
pub fn placeholder_atoms(arity: usize) -> Vec<Atom> {
    match arity {
        0 => vec![],
        1 => vec![Atom::new("p")],
        2 => vec![Atom::new("p"), Atom::new("q")],
        3 => vec![Atom::new("p"), Atom::new("q"), Atom::new("r")],
        _ => (1..=arity).map(|i| Atom::new(&format!("p{i}"))).collect(),
    }
}
