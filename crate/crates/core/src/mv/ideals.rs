//! Ideals of finite MV-algebras, their prime/maximal tests and the
//! simple/semisimple/hyperarchimedean classification.
//!
//! Every test with two textbook characterisations computes both and reports
//! a [`MvError::CrossCheck`] if they disagree.

use std::collections::BTreeSet;

use super::axioms::MvAlgebra;
use super::finite::{ElementOrder, FiniteMv};
use super::MvError;

/// A subset of a finite carrier as a bitmask.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(pub u64);

impl Ideal {
    pub fn from_elements(xs: impl IntoIterator<Item = usize>) -> Ideal {
        Ideal(xs.into_iter().fold(0, |acc, x| acc | 1 << x))
    }

    pub fn full(alg: &FiniteMv) -> Ideal {
        Ideal(if alg.size() == 64 { u64::MAX } else { (1 << alg.size()) - 1 })
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&a| self.contains(a))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Ideal) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper(self, alg: &FiniteMv) -> bool {
        self != Ideal::full(alg)
    }

    /// Contains 0, closed under `⊕`, downward closed.
    pub fn is_ideal_of(self, alg: &FiniteMv) -> bool {
        if !Ideal::full(alg).contains_all(self) || !self.contains(alg.zero()) {
            return false;
        }
        let members: Vec<usize> = self.elements().collect();
        members.iter().all(|&a| members.iter().all(|&b| self.contains(alg.oplus(a, b))))
            && members.iter().all(|&b| alg.elements().all(|a| !alg.leq(a, b) || self.contains(a)))
    }

    fn contains_all(self, other: Ideal) -> bool {
        other.is_subset(self)
    }

    /// `{a, b, …}` with the algebra's labels.
    pub fn show(self, alg: &FiniteMv) -> String {
        let names: Vec<&str> = self.elements().map(|a| alg.label(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The least ideal containing `xs`: close under `⊕`, then take everything
/// below some member. An empty `xs` gives `{0}`.
pub fn generate(alg: &FiniteMv, xs: &[usize]) -> Ideal {
    let mut set = Ideal::from_elements(xs.iter().copied().chain([alg.zero()]));
    loop {
        let members: Vec<usize> = set.elements().collect();
        let mut next = set;
        for &a in &members {
            for &b in &members {
                next = Ideal(next.0 | 1 << alg.oplus(a, b));
            }
        }
        for a in alg.elements() {
            if members.iter().any(|&b| alg.leq(a, b)) {
                next = Ideal(next.0 | 1 << a);
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// All ideals, found by closing `{0}` under "add one element and regenerate".
pub fn enumerate_ideals(alg: &FiniteMv) -> Vec<Ideal> {
    let mut seen = BTreeSet::from([generate(alg, &[])]);
    let mut stack: Vec<Ideal> = seen.iter().copied().collect();
    while let Some(j) = stack.pop() {
        for a in alg.elements().filter(|&a| !j.contains(a)) {
            let mut xs: Vec<usize> = j.elements().collect();
            xs.push(a);
            let k = generate(alg, &xs);
            if seen.insert(k) {
                stack.push(k);
            }
        }
    }
    seen.into_iter().collect()
}

fn require_ideal(alg: &FiniteMv, j: Ideal) -> Result<(), MvError> {
    if j.is_ideal_of(alg) {
        Ok(())
    } else {
        Err(MvError::NotAnIdeal(j.show(alg)))
    }
}

/// Proper, and `a ∧ b ∈ J` implies `a ∈ J` or `b ∈ J`.
pub fn is_prime_by_meets(alg: &FiniteMv, j: Ideal) -> bool {
    j.is_proper(alg)
        && alg
            .elements()
            .all(|a| alg.elements().all(|b| !j.contains(alg.wedge(a, b)) || j.contains(a) || j.contains(b)))
}

/// Proper, and the quotient is totally ordered.
pub fn is_prime_by_quotient(alg: &FiniteMv, j: Ideal) -> Result<bool, MvError> {
    Ok(j.is_proper(alg) && alg.quotient(j)?.0.is_total())
}

pub fn is_prime(alg: &FiniteMv, j: Ideal) -> Result<bool, MvError> {
    require_ideal(alg, j)?;
    let (c, d) = (is_prime_by_meets(alg, j), is_prime_by_quotient(alg, j)?);
    if c != d {
        return Err(MvError::CrossCheck(format!(
            "{}: meet criterion says prime = {c}, quotient criterion says {d}",
            j.show(alg)
        )));
    }
    Ok(c)
}

/// Proper, and every `a ∉ J` has some power of `¬a` in `J`.
pub fn is_maximal_by_powers(alg: &FiniteMv, j: Ideal) -> bool {
    j.is_proper(alg)
        && alg
            .elements()
            .filter(|&a| !j.contains(a))
            .all(|a| (1..=alg.size()).any(|k| j.contains(alg.power(k, alg.neg(a)))))
}

/// Proper, and the quotient is isomorphic to a chain `Iₘ` (the finite
/// subalgebras of `[0,1]`).
pub fn is_maximal_by_quotient(alg: &FiniteMv, j: Ideal) -> Result<bool, MvError> {
    if !j.is_proper(alg) {
        return Ok(false);
    }
    let q = alg.quotient(j)?.0;
    if q.size() < 2 {
        return Ok(false);
    }
    Ok(q.isomorphism(&FiniteMv::chain(q.size())?).is_some())
}

pub fn is_maximal(alg: &FiniteMv, j: Ideal) -> Result<bool, MvError> {
    require_ideal(alg, j)?;
    let (g, h) = (is_maximal_by_powers(alg, j), is_maximal_by_quotient(alg, j)?);
    if g != h {
        return Err(MvError::CrossCheck(format!(
            "{}: power criterion says maximal = {g}, quotient criterion says {h}",
            j.show(alg)
        )));
    }
    Ok(g)
}

/// Intersection of the maximal ideals above `j` (the whole algebra if none).
pub fn radical_by_maximals(alg: &FiniteMv, j: Ideal) -> Result<Ideal, MvError> {
    let mut acc = Ideal::full(alg);
    for k in enumerate_ideals(alg) {
        if j.is_subset(k) && is_maximal(alg, k)? {
            acc = Ideal(acc.0 & k.0);
        }
    }
    Ok(acc)
}

/// `{a : a ⊗ (k·a) ∈ J for 1 ≤ k ≤ |N|}`; the multiples stabilise by then.
pub fn radical_by_formula(alg: &FiniteMv, j: Ideal) -> Ideal {
    Ideal::from_elements(
        alg.elements().filter(|&a| (1..=alg.size()).all(|k| j.contains(alg.otimes(a, alg.times(k, a))))),
    )
}

pub fn radical(alg: &FiniteMv, j: Ideal) -> Result<Ideal, MvError> {
    require_ideal(alg, j)?;
    let (by_max, by_formula) = (radical_by_maximals(alg, j)?, radical_by_formula(alg, j));
    if by_max != by_formula {
        return Err(MvError::CrossCheck(format!(
            "Rad {}: maximal ideals give {}, the formula gives {}",
            j.show(alg),
            by_max.show(alg),
            by_formula.show(alg)
        )));
    }
    Ok(by_max)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub simple: bool,
    pub semisimple: bool,
    pub hyperarchimedean: bool,
    /// Complemented elements, `a ⊕ a = a`.
    pub center: Vec<usize>,
}

impl Classification {
    pub fn show(&self, alg: &FiniteMv) -> String {
        let center: Vec<&str> = self.center.iter().map(|&a| alg.label(a)).collect();
        format!(
            "simple: {}\nsemisimple: {}\nhyperarchimedean: {}\ncenter: {{{}}}\n",
            self.simple,
            self.semisimple,
            self.hyperarchimedean,
            center.join(",")
        )
    }
}

fn agree(what: &str, a: bool, b: bool) -> Result<(), MvError> {
    if a == b {
        Ok(())
    } else {
        Err(MvError::CrossCheck(format!("{what}: {a} versus {b}")))
    }
}

/// Classifies `alg`, cross-checking each property against an alternative
/// characterisation.
pub fn classify(alg: &FiniteMv) -> Result<Classification, MvError> {
    let ideals = enumerate_ideals(alg);
    let zero = generate(alg, &[]);
    let proper: Vec<Ideal> = ideals.iter().copied().filter(|j| j.is_proper(alg)).collect();

    let simple = proper == [zero] && zero.is_proper(alg);
    let finite_orders = alg.size() >= 2
        && alg
            .elements()
            .filter(|&a| a != alg.zero())
            .all(|a| matches!(alg.element_order(a), ElementOrder::Finite(_)));
    agree("simple versus every nonzero element has finite order", simple, finite_orders)?;
    // the finite subalgebras of [0,1] are the chains
    let chain_like = alg.size() >= 2 && alg.isomorphism(&FiniteMv::chain(alg.size())?).is_some();
    agree("simple versus isomorphic to a chain", simple, chain_like)?;

    let semisimple = radical(alg, zero)? == zero;

    let mut hyper = true;
    let mut primes = Vec::new();
    let mut maximals = Vec::new();
    for &j in &ideals {
        if radical(alg, j)? != j {
            hyper = false;
        }
        if is_prime(alg, j)? {
            primes.push(j);
        }
        if is_maximal(alg, j)? {
            maximals.push(j);
        }
    }
    agree("hyperarchimedean versus prime ideals are maximal", hyper, primes == maximals)?;

    let center: Vec<usize> = alg.elements().filter(|&a| alg.oplus(a, a) == a).collect();
    let complemented: Vec<usize> = alg.elements().filter(|&a| alg.vee(a, alg.neg(a)) == alg.one()).collect();
    if center != complemented {
        return Err(MvError::CrossCheck("a ⊕ a = a versus a ∨ ¬a = 1".into()));
    }
    let multiples_central = alg.elements().all(|a| (1..=alg.size()).any(|n| center.contains(&alg.times(n, a))));
    agree("hyperarchimedean versus some multiple is central", hyper, multiples_central)?;

    if (simple && !hyper) || (hyper && !semisimple) {
        return Err(MvError::CrossCheck("simple ⇒ hyperarchimedean ⇒ semisimple is violated".into()));
    }
    Ok(Classification { simple, semisimple, hyperarchimedean: hyper, center })
}
