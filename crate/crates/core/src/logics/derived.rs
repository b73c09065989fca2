//! Łukasiewicz connectives defined from `→`, `¬` and `1`.

use crate::formula::{Atom, Formula};
use crate::matrix::{ConnId, Matrix};

use super::LogicError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DerivedConn {
    Zero,
    Oplus,
    Otimes,
    Vee,
    Wedge,
    Iff,
}

impl DerivedConn {
    pub const ALL: [DerivedConn; 6] =
        [DerivedConn::Zero, DerivedConn::Oplus, DerivedConn::Otimes, DerivedConn::Vee, DerivedConn::Wedge, DerivedConn::Iff];

    /// Name of the corresponding built-in connective.
    pub fn conn_name(self) -> &'static str {
        match self {
            DerivedConn::Zero => "zero",
            DerivedConn::Oplus => "oplus",
            DerivedConn::Otimes => "otimes",
            DerivedConn::Vee => "or",
            DerivedConn::Wedge => "and",
            DerivedConn::Iff => "iff",
        }
    }

    fn from_name(name: &str) -> Option<DerivedConn> {
        DerivedConn::ALL.into_iter().find(|d| d.conn_name() == name)
    }
}

struct Base {
    imp: ConnId,
    neg: ConnId,
    one: ConnId,
}

impl Base {
    fn of(m: &Matrix) -> Result<Base, LogicError> {
        let get = |name: &str| m.conn_by_name(name).ok_or_else(|| LogicError::MissingConnective(m.name().into(), name.into()));
        Ok(Base { imp: get("imp")?, neg: get("neg")?, one: get("one")? })
    }

    fn imp(&self, a: Formula, b: Formula) -> Formula {
        Formula::binary(self.imp, a, b)
    }

    fn neg(&self, a: Formula) -> Formula {
        Formula::unary(self.neg, a)
    }

    fn oplus(&self, a: Formula, b: Formula) -> Formula {
        self.imp(self.neg(a), b)
    }

    fn otimes(&self, a: Formula, b: Formula) -> Formula {
        self.neg(self.oplus(self.neg(a), self.neg(b)))
    }

    fn vee(&self, a: Formula, b: Formula) -> Formula {
        self.imp(self.imp(a, b.clone()), b)
    }

    fn wedge(&self, a: Formula, b: Formula) -> Formula {
        self.neg(self.vee(self.neg(a), self.neg(b)))
    }

    fn build(&self, d: DerivedConn, a: Formula, b: Formula) -> Formula {
        match d {
            DerivedConn::Zero => self.neg(Formula::constant(self.one)),
            DerivedConn::Oplus => self.oplus(a, b),
            DerivedConn::Otimes => self.otimes(a, b),
            DerivedConn::Vee => self.vee(a, b),
            DerivedConn::Wedge => self.wedge(a, b),
            DerivedConn::Iff => self.wedge(self.imp(a.clone(), b.clone()), self.imp(b, a)),
        }
    }
}

/// The defining template of a derived connective over atoms `p`, `q`,
/// using only the matrix's `imp`, `neg` and `one`.
pub fn derived_template(m: &Matrix, d: DerivedConn) -> Result<Formula, LogicError> {
    let base = Base::of(m)?;
    Ok(base.build(d, Formula::Atom(Atom::new("p")), Formula::Atom(Atom::new("q"))))
}

/// Rewrites every derived connective (`zero`, `oplus`, `otimes`, `or`, `and`,
/// `iff`) into `imp`/`neg`/`one`.
pub fn expand_derived(m: &Matrix, f: &Formula) -> Result<Formula, LogicError> {
    let base = Base::of(m)?;
    Ok(expand(m, &base, f))
}

fn expand(m: &Matrix, base: &Base, f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::App(c, args) => {
            let args: Vec<Formula> = args.iter().map(|a| expand(m, base, a)).collect();
            match DerivedConn::from_name(&m.connective(*c).name) {
                Some(d) if m.arity(*c) == if d == DerivedConn::Zero { 0 } else { 2 } => {
                    let mut it = args.into_iter();
                    let a = it.next().unwrap_or_else(|| Formula::atom("p"));
                    let b = it.next().unwrap_or_else(|| Formula::atom("q"));
                    base.build(d, a, b)
                }
                _ => Formula::app(*c, args),
            }
        }
    }
}
