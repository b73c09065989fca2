//! Axiom schemes as formula patterns over the metavariables α, β, γ.

use crate::formula::Formula;
use crate::matrix::{ConnId, Matrix};

use super::LogicError;

pub const META_ALPHA: &str = "α";
pub const META_BETA: &str = "β";
pub const META_GAMMA: &str = "γ";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomScheme {
    pub name: String,
    pub pattern: Formula,
}

fn scheme(name: &str, pattern: Formula) -> AxiomScheme {
    AxiomScheme { name: name.to_string(), pattern }
}

fn get(m: &Matrix, name: &str) -> Result<ConnId, LogicError> {
    m.conn_by_name(name).ok_or_else(|| LogicError::MissingConnective(m.name().into(), name.into()))
}

/// `1 < j < n-1` and `j` does not divide `n-1`.
pub fn ax6j_applicable(n: usize) -> Vec<usize> {
    (2..n.saturating_sub(1)).filter(|j| (n - 1) % j != 0).collect()
}

/// Łukasiewicz schemes for the matrix size `n = |M|`:
/// Ax1–Ax4, Ax5, Ax5', Ax5'' and every applicable `Ax6_j`.
pub fn lukasiewicz_axioms(m: &Matrix) -> Result<Vec<AxiomScheme>, LogicError> {
    let imp = get(m, "imp")?;
    let neg = get(m, "neg")?;
    let oplus = get(m, "oplus")?;
    let otimes = get(m, "otimes")?;
    let n = m.size();
    let a = || Formula::atom(META_ALPHA);
    let b = || Formula::atom(META_BETA);
    let g = || Formula::atom(META_GAMMA);
    let i = |x: Formula, y: Formula| Formula::binary(imp, x, y);
    let ng = |x: Formula| Formula::unary(neg, x);
    let times = |c: ConnId, x: Formula, k: usize| (1..k).fold(x.clone(), |acc, _| Formula::binary(c, x.clone(), acc));

    let mut out = vec![
        scheme("Ax1", i(a(), i(b(), a()))),
        scheme("Ax2", i(i(a(), b()), i(i(b(), g()), i(a(), g())))),
        scheme("Ax3", i(i(ng(a()), ng(b())), i(b(), a()))),
        scheme("Ax4", i(i(i(a(), b()), b()), i(i(b(), a()), a()))),
        scheme("Ax5", i(i(ng(a()), a()), a())),
        scheme("Ax5'", i(i(i(a(), ng(a())), a()), a())),
    ];
    if n >= 2 {
        out.push(scheme("Ax5''", i(times(oplus, a(), n), times(oplus, a(), n - 1))));
    }
    for j in ax6j_applicable(n) {
        // (j·α^{j-1})^{⊗n} → n·α^j
        let lhs = times(otimes, times(oplus, times(otimes, a(), j - 1), j), n);
        let rhs = times(oplus, times(otimes, a(), j), n);
        out.push(scheme(&format!("Ax6_{j}"), i(lhs, rhs)));
    }
    Ok(out)
}

/// Intuitionistic Ax1–Ax10 plus the prelinearity axiom Ax11.
pub fn ipc_axioms(m: &Matrix) -> Result<Vec<AxiomScheme>, LogicError> {
    let imp = get(m, "imp")?;
    let neg = get(m, "neg")?;
    let and = get(m, "and")?;
    let or = get(m, "or")?;
    let a = || Formula::atom(META_ALPHA);
    let b = || Formula::atom(META_BETA);
    let g = || Formula::atom(META_GAMMA);
    let i = |x: Formula, y: Formula| Formula::binary(imp, x, y);
    let cj = |x: Formula, y: Formula| Formula::binary(and, x, y);
    let dj = |x: Formula, y: Formula| Formula::binary(or, x, y);
    let ng = |x: Formula| Formula::unary(neg, x);
    Ok(vec![
        scheme("Ax1", i(a(), i(b(), a()))),
        scheme("Ax2", i(i(a(), b()), i(i(a(), i(b(), g())), i(a(), g())))),
        scheme("Ax3", i(a(), i(b(), cj(a(), b())))),
        scheme("Ax4", i(cj(a(), b()), a())),
        scheme("Ax5", i(cj(a(), b()), b())),
        scheme("Ax6", i(a(), dj(a(), b()))),
        scheme("Ax7", i(b(), dj(a(), b()))),
        scheme("Ax8", i(i(a(), g()), i(i(b(), g()), i(dj(a(), b()), g())))),
        scheme("Ax9", i(i(a(), b()), i(i(a(), ng(b())), ng(a())))),
        scheme("Ax10", i(ng(a()), i(a(), b()))),
        scheme("Ax11", dj(i(a(), b()), i(b(), a()))),
    ])
}
