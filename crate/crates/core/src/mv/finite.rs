//! Finite MV-algebras given by tables, and the standard constructions.

use std::collections::BTreeSet;

use super::axioms::MvAlgebra;
use super::ideals::Ideal;
use super::MvError;
use crate::value::{fmt_rational, Rational};

/// A finite algebra with explicit `⊕`, `⊗` and `¬` tables over `0..size`.
///
/// `⊗` defaults to `¬(¬a ⊕ ¬b)`; an explicit table is kept as given so that
/// M8 can reject it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMv {
    name: String,
    labels: Vec<String>,
    oplus: Vec<usize>,
    otimes: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

/// Result of [`FiniteMv::element_order`] and the Chang counterpart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(usize),
    /// No multiple reaches 1; the string says why.
    Infinite(String),
}

impl std::fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ElementOrder::Finite(k) => write!(f, "{k}"),
            ElementOrder::Infinite(why) => write!(f, "infinite ({why})"),
        }
    }
}

impl FiniteMv {
    /// Validates shapes and ranges. The result need not satisfy the axioms;
    /// use [`super::check_axioms`] for that.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        oplus: Vec<usize>,
        neg: Vec<usize>,
        zero: usize,
        otimes: Option<Vec<usize>>,
    ) -> Result<FiniteMv, MvError> {
        let n = labels.len();
        let bad = |s: String| Err(MvError::BadAlgebra(s));
        if n == 0 {
            return bad("empty carrier".into());
        }
        if n > 64 {
            return bad(format!("{n} elements; at most 64 are supported"));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return bad("duplicate value".into());
        }
        if oplus.len() != n * n {
            return bad(format!("oplus table has {} entries, expected {}", oplus.len(), n * n));
        }
        if neg.len() != n {
            return bad(format!("neg table has {} entries, expected {n}", neg.len()));
        }
        if let Some(t) = &otimes {
            if t.len() != n * n {
                return bad(format!("otimes table has {} entries, expected {}", t.len(), n * n));
            }
        }
        let all_in = |t: &[usize]| t.iter().all(|&x| x < n);
        if !all_in(&oplus) || !all_in(&neg) || !otimes.as_deref().map_or(true, all_in) || zero >= n {
            return bad("table entry outside the carrier".into());
        }
        let one = neg[zero];
        let otimes = otimes.unwrap_or_else(|| {
            let mut t = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = neg[oplus[neg[a] * n + neg[b]]];
                }
            }
            t
        });
        Ok(FiniteMv { name: name.into(), labels, oplus, otimes, neg, zero, one })
    }

    /// `Iₙ = {0, 1/(n−1), …, 1}` with Łukasiewicz operations.
    pub fn chain(n: usize) -> Result<FiniteMv, MvError> {
        if n < 2 {
            return Err(MvError::BadAlgebra("a chain needs at least two elements".into()));
        }
        let top = n - 1;
        let labels = (0..n).map(|i| fmt_rational(&Rational::new(i as i64, top as i64))).collect();
        let oplus = (0..n * n).map(|k| (k / n + k % n).min(top)).collect();
        let neg = (0..n).map(|a| top - a).collect();
        FiniteMv::from_tables(format!("I{n}"), labels, oplus, neg, 0, None)
    }

    /// `Γ(ℤ, u) = {0, …, u}` with `a ⊕ b = min(a + b, u)` and `¬a = u − a`.
    pub fn gamma_z(u: usize) -> Result<FiniteMv, MvError> {
        if u < 1 {
            return Err(MvError::BadAlgebra("the unit must be at least 1".into()));
        }
        let n = u + 1;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let oplus = (0..n * n).map(|k| (k / n + k % n).min(u)).collect();
        let neg = (0..n).map(|a| u - a).collect();
        FiniteMv::from_tables(format!("Gamma(Z,{u})"), labels, oplus, neg, 0, None)
    }

    /// Componentwise product; element `(x, y)` has index `x·|B| + y`.
    pub fn product(a: &FiniteMv, b: &FiniteMv) -> FiniteMv {
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        let pair = |k: usize| (k / nb, k % nb);
        let labels = (0..n).map(|k| format!("({},{})", a.labels[k / nb], b.labels[k % nb])).collect();
        let mut oplus = vec![0; n * n];
        let mut otimes = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let ((x1, x2), (y1, y2)) = (pair(x), pair(y));
                oplus[x * n + y] = a.oplus(x1, y1) * nb + b.oplus(x2, y2);
                otimes[x * n + y] = a.otimes(x1, y1) * nb + b.otimes(x2, y2);
            }
        }
        let neg = (0..n).map(|k| a.neg(k / nb) * nb + b.neg(k % nb)).collect();
        FiniteMv::from_tables(format!("{}x{}", a.name, b.name), labels, oplus, neg, a.zero * nb + b.zero, Some(otimes))
            .expect("product of valid algebras")
    }

    /// `N/∼_J` where `a ∼ b` iff `(a ⊗ ¬b) ⊕ (b ⊗ ¬a) ∈ J`. Each class is
    /// represented by its least index. Also returns the class map.
    pub fn quotient(&self, j: Ideal) -> Result<(FiniteMv, Vec<usize>), MvError> {
        if !j.is_ideal_of(self) {
            return Err(MvError::NotAnIdeal(j.show(self)));
        }
        let n = self.size();
        let dist = |a: usize, b: usize| self.oplus(self.otimes(a, self.neg(b)), self.otimes(b, self.neg(a)));
        let mut reps: Vec<usize> = Vec::new();
        let mut class_of = vec![0; n];
        for a in 0..n {
            match reps.iter().position(|&r| j.contains(dist(a, r))) {
                Some(c) => class_of[a] = c,
                None => {
                    class_of[a] = reps.len();
                    reps.push(a);
                }
            }
        }
        let k = reps.len();
        // induced tables must not depend on the representatives
        let mut oplus = vec![usize::MAX; k * k];
        let mut neg = vec![usize::MAX; k];
        for a in 0..n {
            let na = class_of[self.neg(a)];
            let slot = &mut neg[class_of[a]];
            if *slot != usize::MAX && *slot != na {
                return Err(MvError::CrossCheck(format!("¬ is not well defined on the class of {}", self.label(a))));
            }
            *slot = na;
            for b in 0..n {
                let s = class_of[self.oplus(a, b)];
                let slot = &mut oplus[class_of[a] * k + class_of[b]];
                if *slot != usize::MAX && *slot != s {
                    return Err(MvError::CrossCheck(format!(
                        "⊕ is not well defined at ({}, {})",
                        self.label(a),
                        self.label(b)
                    )));
                }
                *slot = s;
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.labels[r])).collect();
        let q = FiniteMv::from_tables(format!("{}/{}", self.name, j.show(self)), labels, oplus, neg, class_of[self.zero], None)?;
        Ok((q, class_of))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// Least `k ≥ 1` with `ka = 1`. The multiples increase, so if they have
    /// not reached 1 after `size` steps they never will.
    pub fn element_order(&self, a: usize) -> ElementOrder {
        let mut acc = self.zero;
        for k in 1..=self.size() {
            let next = self.oplus(a, acc);
            if next == self.one {
                return ElementOrder::Finite(k);
            }
            if next == acc {
                return ElementOrder::Infinite(format!("{k}·{} = {} is a fixed point below 1", self.label(a), self.label(acc)));
            }
            acc = next;
        }
        ElementOrder::Infinite(format!("multiples of {} stay below 1 for {} steps", self.label(a), self.size()))
    }

    /// The derived order is total.
    pub fn is_total(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// An isomorphism onto `other` (preserving `0`, `⊕` and `¬`), if any.
    pub fn isomorphism(&self, other: &FiniteMv) -> Option<Vec<usize>> {
        let n = self.size();
        if n != other.size() {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.zero] = other.zero;
        used[other.zero] = true;
        if self.extend_iso(other, &mut map, &mut used, 0) {
            Some(map)
        } else {
            None
        }
    }

    fn consistent(&self, other: &FiniteMv, map: &[usize]) -> bool {
        let n = self.size();
        for a in 0..n {
            if map[a] == usize::MAX {
                continue;
            }
            let na = map[self.neg(a)];
            if na != usize::MAX && na != other.neg(map[a]) {
                return false;
            }
            for b in 0..n {
                if map[b] == usize::MAX {
                    continue;
                }
                let s = map[self.oplus(a, b)];
                if s != usize::MAX && s != other.oplus(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }

    fn extend_iso(&self, other: &FiniteMv, map: &mut [usize], used: &mut [bool], from: usize) -> bool {
        let Some(a) = (from..self.size()).find(|&a| map[a] == usize::MAX) else {
            return self.consistent(other, map);
        };
        for t in 0..other.size() {
            if used[t] {
                continue;
            }
            map[a] = t;
            used[t] = true;
            if self.consistent(other, map) && self.extend_iso(other, map, used, a + 1) {
                return true;
            }
            map[a] = usize::MAX;
            used[t] = false;
        }
        false
    }

    pub fn oplus_table(&self) -> &[usize] {
        &self.oplus
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// Whether `⊗` was given explicitly and differs from the derived table.
    pub(crate) fn otimes_if_explicit(&self) -> Option<&[usize]> {
        let derived = FiniteMv::from_tables("", self.labels.clone(), self.oplus.clone(), self.neg.clone(), self.zero, None).ok()?;
        (derived.otimes != self.otimes).then_some(&self.otimes[..])
    }
}

impl MvAlgebra for FiniteMv {
    type E = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn oplus(&self, a: usize, b: usize) -> usize {
        self.oplus[a * self.size() + b]
    }

    fn otimes(&self, a: usize, b: usize) -> usize {
        self.otimes[a * self.size() + b]
    }

    fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    fn show(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}
