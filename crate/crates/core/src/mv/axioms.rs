//! Identity checking for the L, C and M axiom systems and the derived order facts.

use std::fmt::Debug;

/// Operations of an MV-algebra; derived operations follow the usual definitions.
pub trait MvAlgebra {
    type E: Copy + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn oplus(&self, a: Self::E, b: Self::E) -> Self::E;
    fn neg(&self, a: Self::E) -> Self::E;
    fn show(&self, a: Self::E) -> String;

    fn otimes(&self, a: Self::E, b: Self::E) -> Self::E {
        self.neg(self.oplus(self.neg(a), self.neg(b)))
    }

    /// `¬a ⊕ b`.
    fn imp(&self, a: Self::E, b: Self::E) -> Self::E {
        self.oplus(self.neg(a), b)
    }

    /// `¬(¬a ⊕ b) ⊕ b`.
    fn vee(&self, a: Self::E, b: Self::E) -> Self::E {
        self.oplus(self.neg(self.oplus(self.neg(a), b)), b)
    }

    /// `¬(¬a ⊗ b) ⊗ b`.
    fn wedge(&self, a: Self::E, b: Self::E) -> Self::E {
        self.otimes(self.neg(self.otimes(self.neg(a), b)), b)
    }

    fn leq(&self, a: Self::E, b: Self::E) -> bool {
        self.vee(a, b) == b
    }

    /// `k·a`, with `0·a = 0`.
    fn times(&self, k: usize, a: Self::E) -> Self::E {
        (0..k).fold(self.zero(), |acc, _| self.oplus(a, acc))
    }

    /// `a^k`, with `a^0 = 1`.
    fn power(&self, k: usize, a: Self::E) -> Self::E {
        (0..k).fold(self.one(), |acc, _| self.otimes(a, acc))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AxiomSystem {
    /// L1–L4.
    L,
    /// C1–C11, both columns.
    C,
    /// M1–M8.
    M,
    /// Lattice and order facts that hold in every MV-algebra.
    Facts,
}

/// The first identity that fails and the arguments where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub identity: &'static str,
    pub witness: Vec<String>,
}

impl std::fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at ({})", self.identity, self.witness.join(", "))
    }
}

type Check<A> = fn(&A, &[<A as MvAlgebra>::E]) -> bool;

fn identities<A: MvAlgebra>(system: AxiomSystem) -> Vec<(&'static str, usize, Check<A>)> {
    match system {
        AxiomSystem::L => vec![
            ("L1", 2, |m, x| m.oplus(m.neg(x[0]), m.oplus(m.neg(x[1]), x[0])) == m.one()),
            ("L2", 3, |m, x| {
                let (a, b, c) = (x[0], x[1], x[2]);
                let l = m.neg(m.oplus(m.neg(a), b));
                let r = m.oplus(m.neg(m.oplus(m.neg(b), c)), m.oplus(m.neg(a), c));
                m.oplus(l, r) == m.one()
            }),
            ("L3", 2, |m, x| {
                let (a, b) = (x[0], x[1]);
                m.oplus(m.neg(m.oplus(m.neg(m.neg(a)), m.neg(b))), m.oplus(m.neg(b), a)) == m.one()
            }),
            ("L4", 2, |m, x| {
                let (a, b) = (x[0], x[1]);
                let l = m.neg(m.oplus(m.neg(m.oplus(m.neg(a), b)), b));
                let r = m.oplus(m.neg(m.oplus(m.neg(b), a)), a);
                m.oplus(l, r) == m.one()
            }),
        ],
        AxiomSystem::C => vec![
            ("C1 ⊕", 2, |m, x| m.oplus(x[0], x[1]) == m.oplus(x[1], x[0])),
            ("C1 ⊗", 2, |m, x| m.otimes(x[0], x[1]) == m.otimes(x[1], x[0])),
            ("C2 ⊕", 3, |m, x| m.oplus(x[0], m.oplus(x[1], x[2])) == m.oplus(m.oplus(x[0], x[1]), x[2])),
            ("C2 ⊗", 3, |m, x| m.otimes(x[0], m.otimes(x[1], x[2])) == m.otimes(m.otimes(x[0], x[1]), x[2])),
            ("C3 ⊕", 1, |m, x| m.oplus(x[0], m.neg(x[0])) == m.one()),
            ("C3 ⊗", 1, |m, x| m.otimes(x[0], m.neg(x[0])) == m.zero()),
            ("C4 ⊕", 1, |m, x| m.oplus(x[0], m.one()) == m.one()),
            ("C4 ⊗", 1, |m, x| m.otimes(x[0], m.zero()) == m.zero()),
            ("C5 ⊕", 1, |m, x| m.oplus(x[0], m.zero()) == x[0]),
            ("C5 ⊗", 1, |m, x| m.otimes(x[0], m.one()) == x[0]),
            ("C6 ⊕", 2, |m, x| m.neg(m.oplus(x[0], x[1])) == m.otimes(m.neg(x[0]), m.neg(x[1]))),
            ("C6 ⊗", 2, |m, x| m.neg(m.otimes(x[0], x[1])) == m.oplus(m.neg(x[0]), m.neg(x[1]))),
            ("C7", 1, |m, x| m.neg(m.neg(x[0])) == x[0]),
            ("C8", 0, |m, _| m.neg(m.zero()) == m.one()),
            ("C9 ∨", 2, |m, x| m.vee(x[0], x[1]) == m.vee(x[1], x[0])),
            ("C9 ∧", 2, |m, x| m.wedge(x[0], x[1]) == m.wedge(x[1], x[0])),
            ("C10 ∨", 3, |m, x| m.vee(x[0], m.vee(x[1], x[2])) == m.vee(m.vee(x[0], x[1]), x[2])),
            ("C10 ∧", 3, |m, x| m.wedge(x[0], m.wedge(x[1], x[2])) == m.wedge(m.wedge(x[0], x[1]), x[2])),
            ("C11 ⊕", 3, |m, x| m.oplus(x[0], m.wedge(x[1], x[2])) == m.wedge(m.oplus(x[0], x[1]), m.oplus(x[0], x[2]))),
            ("C11 ⊗", 3, |m, x| m.otimes(x[0], m.vee(x[1], x[2])) == m.vee(m.otimes(x[0], x[1]), m.otimes(x[0], x[2]))),
        ],
        AxiomSystem::M => vec![
            ("M1", 2, |m, x| m.oplus(x[0], x[1]) == m.oplus(x[1], x[0])),
            ("M2", 3, |m, x| m.oplus(x[0], m.oplus(x[1], x[2])) == m.oplus(m.oplus(x[0], x[1]), x[2])),
            ("M3", 1, |m, x| m.oplus(x[0], m.zero()) == x[0]),
            ("M4", 1, |m, x| m.oplus(x[0], m.one()) == m.one()),
            ("M5", 1, |m, x| m.neg(m.neg(x[0])) == x[0]),
            ("M6", 0, |m, _| m.neg(m.zero()) == m.one()),
            ("M7", 2, |m, x| {
                let (a, b) = (x[0], x[1]);
                m.oplus(m.neg(m.oplus(m.neg(a), b)), b) == m.oplus(m.neg(m.oplus(m.neg(b), a)), a)
            }),
            ("M8", 2, |m, x| m.otimes(x[0], x[1]) == m.neg(m.oplus(m.neg(x[0]), m.neg(x[1])))),
        ],
        AxiomSystem::Facts => vec![
            ("De Morgan ∨", 2, |m, x| m.neg(m.vee(x[0], x[1])) == m.wedge(m.neg(x[0]), m.neg(x[1]))),
            ("De Morgan ∧", 2, |m, x| m.neg(m.wedge(x[0], x[1])) == m.vee(m.neg(x[0]), m.neg(x[1]))),
            ("a ⊗ b ≤ a ∧ b", 2, |m, x| m.leq(m.otimes(x[0], x[1]), m.wedge(x[0], x[1]))),
            ("a ∧ b ≤ a", 2, |m, x| m.leq(m.wedge(x[0], x[1]), x[0])),
            ("a ≤ a ∨ b", 2, |m, x| m.leq(x[0], m.vee(x[0], x[1]))),
            ("a ∨ b ≤ a ⊕ b", 2, |m, x| m.leq(m.vee(x[0], x[1]), m.oplus(x[0], x[1]))),
            ("prelinearity", 2, |m, x| m.vee(m.imp(x[0], x[1]), m.imp(x[1], x[0])) == m.one()),
            ("a ∨ b = b iff ¬a ⊕ b = 1", 2, |m, x| (m.vee(x[0], x[1]) == x[1]) == (m.oplus(m.neg(x[0]), x[1]) == m.one())),
            ("a ⊕ b = b iff ¬a ∨ b = 1", 2, |m, x| (m.oplus(x[0], x[1]) == x[1]) == (m.vee(m.neg(x[0]), x[1]) == m.one())),
            ("⊕ distributes over ∨", 3, |m, x| {
                m.oplus(x[0], m.vee(x[1], x[2])) == m.vee(m.oplus(x[0], x[1]), m.oplus(x[0], x[2]))
            }),
            ("⊗ distributes over ∧", 3, |m, x| {
                m.otimes(x[0], m.wedge(x[1], x[2])) == m.wedge(m.otimes(x[0], x[1]), m.otimes(x[0], x[2]))
            }),
            ("∧ absorbs ∨", 2, |m, x| m.wedge(x[0], m.vee(x[0], x[1])) == x[0]),
            ("∨ absorbs ∧", 2, |m, x| m.vee(x[0], m.wedge(x[0], x[1])) == x[0]),
            ("∧ distributes over ∨", 3, |m, x| {
                m.wedge(x[0], m.vee(x[1], x[2])) == m.vee(m.wedge(x[0], x[1]), m.wedge(x[0], x[2]))
            }),
            ("0 ≤ a ≤ 1", 1, |m, x| m.leq(m.zero(), x[0]) && m.leq(x[0], m.one())),
        ],
    }
}

/// Checks every identity of `system` on all tuples drawn from `elements`.
pub fn check_axioms_on<A: MvAlgebra>(alg: &A, elements: &[A::E], system: AxiomSystem) -> Result<(), AxiomFailure> {
    let k = elements.len();
    for (name, arity, check) in identities::<A>(system) {
        let total = k.pow(arity as u32);
        let mut args = vec![alg.zero(); arity];
        for mut row in 0..total {
            for slot in args.iter_mut().rev() {
                *slot = elements[row % k];
                row /= k;
            }
            if !check(alg, &args) {
                return Err(AxiomFailure { identity: name, witness: args.iter().map(|a| alg.show(*a)).collect() });
            }
        }
    }
    Ok(())
}

/// Exhaustive check over the carrier of a finite algebra.
pub fn check_axioms(alg: &super::FiniteMv, system: AxiomSystem) -> Result<(), AxiomFailure> {
    let elements: Vec<usize> = (0..alg.size()).collect();
    check_axioms_on(alg, &elements, system)
}
