//! Hilbert-style proofs with modus ponens over the Łukasiewicz schemes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::logics::{expand_derived, lukasiewicz_axioms, AxiomScheme, META_ALPHA, META_BETA, META_GAMMA};
use crate::matrix::Matrix;

use super::split_top;

/// Axiom selections.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HilbertSystem {
    /// Ax1–Ax4.
    Ax1To4,
    /// Ax1–Ax4 and Ax5.
    Ax1To4Plus5,
    /// Ax1–Ax3 and Ax5'.
    Ax1To3Plus5p,
    /// Ax1–Ax4, Ax5'' and the applicable Ax6_j for the matrix size.
    Ax1To4Plus5ppPlus6j,
}

impl HilbertSystem {
    fn admits(self, scheme: &str) -> bool {
        let base = matches!(scheme, "Ax1" | "Ax2" | "Ax3");
        match self {
            HilbertSystem::Ax1To4 => base || scheme == "Ax4",
            HilbertSystem::Ax1To4Plus5 => base || scheme == "Ax4" || scheme == "Ax5",
            HilbertSystem::Ax1To3Plus5p => base || scheme == "Ax5'",
            HilbertSystem::Ax1To4Plus5ppPlus6j => base || scheme == "Ax4" || scheme == "Ax5''" || scheme.starts_with("Ax6_"),
        }
    }
}

impl FromStr for HilbertSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Ax1-4" => Ok(HilbertSystem::Ax1To4),
            "Ax1-4+5" => Ok(HilbertSystem::Ax1To4Plus5),
            "Ax1-3+5'" => Ok(HilbertSystem::Ax1To3Plus5p),
            "Ax1-4+5''+6j" => Ok(HilbertSystem::Ax1To4Plus5ppPlus6j),
            _ => Err(format!("unknown axiom system `{s}` (expected Ax1-4, Ax1-4+5, Ax1-3+5' or Ax1-4+5''+6j)")),
        }
    }
}

impl fmt::Display for HilbertSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HilbertSystem::Ax1To4 => "Ax1-4",
            HilbertSystem::Ax1To4Plus5 => "Ax1-4+5",
            HilbertSystem::Ax1To3Plus5p => "Ax1-3+5'",
            HilbertSystem::Ax1To4Plus5ppPlus6j => "Ax1-4+5''+6j",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// A scheme instance; the substitution may be partial or empty, in which
    /// case matching fills it in.
    Axiom { scheme: String, subst: Vec<(String, Formula)> },
    /// Modus ponens from line `minor` and line `major = minor → this`.
    Mp { minor: usize, major: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertLine {
    pub number: usize,
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertProof {
    pub lines: Vec<HilbertLine>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct HilbertError {
    pub line: usize,
    pub reason: String,
}

impl HilbertProof {
    /// Parses lines `n. formula ; Ax1[alpha:=p, beta:=q]` or `n. formula ; MP k l`.
    /// Blank lines and lines starting with `%` are skipped.
    pub fn parse(text: &str, m: &Matrix) -> Result<HilbertProof, HilbertError> {
        let mut lines = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('%') {
                continue;
            }
            let bad = |reason: String| HilbertError { line: no + 1, reason };
            let (num, rest) = raw.split_once('.').ok_or_else(|| bad("missing line number".into()))?;
            let number: usize = num.trim().parse().map_err(|_| bad(format!("bad line number `{}`", num.trim())))?;
            let (f, j) = rest.rsplit_once(';').ok_or_else(|| bad("missing `; justification`".into()))?;
            let formula = m.parse(f.trim()).map_err(|e| bad(e.to_string()))?;
            let j = j.trim();
            let just = if let Some(refs) = j.strip_prefix("MP") {
                let ks: Vec<usize> = refs
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| bad(format!("bad line reference `{s}`"))))
                    .collect::<Result<_, _>>()?;
                match ks[..] {
                    [minor, major] => Justification::Mp { minor, major },
                    _ => return Err(bad("MP needs two line references".into())),
                }
            } else {
                let (scheme, subst) = match j.split_once('[') {
                    Some((s, rest)) => (s.trim(), rest.strip_suffix(']').ok_or_else(|| bad("unclosed `[`".into()))?),
                    None => (j, ""),
                };
                let mut pairs = Vec::new();
                for part in split_top(subst, ',') {
                    if part.trim().is_empty() {
                        continue;
                    }
                    let (v, t) = part.split_once(":=").ok_or_else(|| bad(format!("bad substitution `{}`", part.trim())))?;
                    let name = meta_name(v.trim()).ok_or_else(|| bad(format!("unknown metavariable `{}`", v.trim())))?;
                    pairs.push((name.to_string(), m.parse(t.trim()).map_err(|e| bad(e.to_string()))?));
                }
                Justification::Axiom { scheme: scheme.to_string(), subst: pairs }
            };
            lines.push(HilbertLine { number, formula, just });
        }
        Ok(HilbertProof { lines })
    }
}

fn meta_name(s: &str) -> Option<&'static str> {
    match s {
        "α" | "alpha" => Some(META_ALPHA),
        "β" | "beta" => Some(META_BETA),
        "γ" | "gamma" => Some(META_GAMMA),
        _ => None,
    }
}

/// First-order matching of `pattern` (metavariables α, β, γ) against `f`.
fn matches(pattern: &Formula, f: &Formula, binding: &mut HashMap<Atom, Formula>) -> bool {
    match pattern {
        Formula::Atom(a) if meta_name(a.name()).is_some() => match binding.get(a) {
            Some(bound) => bound == f,
            None => {
                binding.insert(a.clone(), f.clone());
                true
            }
        },
        Formula::Atom(_) => pattern == f,
        Formula::App(c, ps) => match f {
            Formula::App(d, fs) if c == d && ps.len() == fs.len() => {
                ps.iter().zip(fs.iter()).all(|(p, x)| matches(p, x, binding))
            }
            _ => false,
        },
    }
}

/// Accepts iff every line is an admitted scheme instance or a correct modus
/// ponens on earlier lines. Derived connectives are expanded first.
pub fn check_hilbert_proof(proof: &HilbertProof, system: HilbertSystem, m: &Matrix) -> Result<(), HilbertError> {
    let schemes: Vec<AxiomScheme> = lukasiewicz_axioms(m).map_err(|e| HilbertError { line: 0, reason: e.to_string() })?;
    let imp = m.conn_by_name("imp").ok_or(HilbertError { line: 0, reason: "logic has no `imp`".into() })?;
    let expand = |f: &Formula, line: usize| expand_derived(m, f).map_err(|e| HilbertError { line, reason: e.to_string() });
    let mut done: HashMap<usize, Formula> = HashMap::new();
    for l in &proof.lines {
        let fail = |reason: String| HilbertError { line: l.number, reason };
        if done.contains_key(&l.number) {
            return Err(fail("duplicate line number".into()));
        }
        let f = expand(&l.formula, l.number)?;
        match &l.just {
            Justification::Axiom { scheme, subst } => {
                if !system.admits(scheme) {
                    return Err(fail(format!("{scheme} is not an axiom of {system}")));
                }
                let s = schemes.iter().find(|s| s.name == *scheme).ok_or_else(|| fail(format!("{scheme} does not apply to this logic")))?;
                let pattern = expand(&s.pattern, l.number)?;
                let mut binding: HashMap<Atom, Formula> = HashMap::new();
                for (v, t) in subst {
                    binding.insert(Atom::new(v), expand(t, l.number)?);
                }
                if !matches(&pattern, &f, &mut binding) {
                    return Err(fail(format!("not an instance of {scheme} under the given substitution")));
                }
            }
            Justification::Mp { minor, major } => {
                let get = |k: &usize| done.get(k).ok_or_else(|| fail(format!("MP cites line {k}, which is not an earlier line")));
                let a = get(minor)?;
                let b = get(major)?;
                match b {
                    Formula::App(c, args) if *c == imp && args.len() == 2 => {
                        if args[0] != *a || args[1] != f {
                            return Err(fail(format!("line {major} is not (line {minor}) → (line {})", l.number)));
                        }
                    }
                    _ => return Err(fail(format!("MP major premiss, line {major}, is not an implication"))),
                }
            }
        }
        done.insert(l.number, f);
    }
    Ok(())
}
