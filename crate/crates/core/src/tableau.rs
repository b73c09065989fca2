//! Refutational signed tableaux with sets as signs.
//!
//! A node is a set of signed formulas read conjunctively. Expanding `A^S`
//! with `A = c(A_1..A_u)` replaces the node by one child per conjunct of an
//! `S`-th DNF for `c`. A branch closes when some formula's signs have empty
//! intersection or a compound formula has no elimination rule at its sign.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::decide::atoms_of;
use crate::eval::Valuation;
use crate::formula::Formula;
use crate::matrix::Matrix;
use crate::signed::{instantiate, NfMode, RuleBook, SignSystem, SignedError, SignedFormula};
use crate::value::{Sign, ValueSet};

/// How refutation roots are stated.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum RootMode {
    /// One root per choice of designated premise values and undesignated goal value.
    Singleton,
    /// A single root `{B_1^D, ..., B_r^D, A^{M∖D}}`.
    #[default]
    SetSigns,
}

#[derive(Copy, Clone, Debug)]
pub struct TableauOptions {
    pub roots: RootMode,
    pub node_cap: usize,
}

impl Default for TableauOptions {
    fn default() -> Self {
        TableauOptions { roots: RootMode::SetSigns, node_cap: 500_000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("tableau exceeded the node cap of {0}")]
    NodeCap(usize),
    #[error(transparent)]
    Signed(#[from] SignedError),
}

/// Formula set of a node with its `used` flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauNode {
    pub formulas: Vec<SignedFormula>,
    pub used: Vec<bool>,
}

impl TableauNode {
    pub fn new(formulas: impl IntoIterator<Item = SignedFormula>) -> TableauNode {
        let mut node = TableauNode { formulas: Vec::new(), used: Vec::new() };
        for f in formulas {
            node.add(f);
        }
        node
    }

    /// Adds `f` unless it is already present; returns whether it was new.
    pub fn add(&mut self, f: SignedFormula) -> bool {
        if self.formulas.contains(&f) {
            return false;
        }
        self.formulas.push(f);
        self.used.push(false);
        true
    }

    /// A formula whose signs on this node have empty intersection.
    pub fn clash(&self, m: &Matrix) -> Option<(&Formula, Vec<Sign>)> {
        let mut meet: BTreeMap<&Formula, (ValueSet, Vec<Sign>)> = BTreeMap::new();
        for sf in &self.formulas {
            let e = meet.entry(&sf.formula).or_insert((m.full_set(), Vec::new()));
            e.0 = e.0.intersection(sf.sign.set());
            e.1.push(sf.sign);
        }
        meet.into_iter().find(|(_, (s, _))| s.is_empty()).map(|(f, (_, signs))| (f, signs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Closed(String),
    Open,
    Expanded {
        principal: SignedFormula,
        /// The instantiated DNF; `children[k]` adds `rule[k]`.
        rule: Vec<Vec<SignedFormula>>,
        children: Vec<TreeNode>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub node: TableauNode,
    /// Formulas contributed by the parent's rule.
    pub added: Vec<SignedFormula>,
    pub kind: NodeKind,
}

impl TreeNode {
    pub fn is_closed(&self) -> bool {
        match &self.kind {
            NodeKind::Closed(_) => true,
            NodeKind::Open => false,
            NodeKind::Expanded { children, .. } => children.iter().all(TreeNode::is_closed),
        }
    }

    /// First open leaf in depth-first order.
    pub fn open_leaf(&self) -> Option<&TreeNode> {
        match &self.kind {
            NodeKind::Closed(_) => None,
            NodeKind::Open => Some(self),
            NodeKind::Expanded { children, .. } => children.iter().find_map(TreeNode::open_leaf),
        }
    }

    pub fn size(&self) -> usize {
        1 + match &self.kind {
            NodeKind::Expanded { children, .. } => children.iter().map(TreeNode::size).sum(),
            _ => 0,
        }
    }
}

/// A completed tableau for one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauProof {
    pub root: TreeNode,
}

impl TableauProof {
    pub fn is_closed(&self) -> bool {
        self.root.is_closed()
    }

    /// Indented tree text: rule lines `A:{S} [rule: c@S]`, branch lines
    /// `+ added literals`, leaf lines `✕ reason` or `○ open`.
    pub fn render(&self, m: &Matrix) -> String {
        let mut out = String::new();
        let root: Vec<String> = self.root.node.formulas.iter().map(|f| m.show_signed(f)).collect();
        let _ = writeln!(out, "root {}", root.join(", "));
        render_node(m, &self.root, 1, &mut out);
        out
    }
}

fn render_node(m: &Matrix, t: &TreeNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match &t.kind {
        NodeKind::Closed(reason) => {
            let _ = writeln!(out, "{pad}✕ {reason}");
        }
        NodeKind::Open => {
            let _ = writeln!(out, "{pad}○ open");
        }
        NodeKind::Expanded { principal, children, .. } => {
            let c = match &principal.formula {
                Formula::App(c, _) => m.connective(*c).name.as_str(),
                Formula::Atom(_) => "?",
            };
            let _ = writeln!(out, "{pad}{} [rule: {c}@{}]", m.show_signed(principal), m.show_set(principal.sign.set()));
            for ch in children {
                let lits: Vec<String> = ch.added.iter().map(|f| m.show_signed(f)).collect();
                let _ = writeln!(out, "{pad}+ {}", if lits.is_empty() { "(nothing)".to_string() } else { lits.join(", ") });
                render_node(m, ch, depth + 1, out);
            }
        }
    }
}

/// Refutation roots for `premises ⊨ goal`.
///
/// No roots means the query holds trivially (every value is designated, or
/// nothing is designated and there are premises).
pub fn build_roots(premises: &[Formula], goal: &Formula, m: &Matrix, mode: RootMode) -> Vec<TableauNode> {
    let d = m.designated();
    let nd = m.undesignated();
    if nd.is_empty() || (d.is_empty() && !premises.is_empty()) {
        return Vec::new();
    }
    match mode {
        RootMode::SetSigns => {
            let mut fs: Vec<SignedFormula> = premises.iter().map(|b| SignedFormula::new(b.clone(), Sign::new(d).unwrap())).collect();
            fs.push(SignedFormula::new(goal.clone(), Sign::new(nd).unwrap()));
            vec![TableauNode::new(fs)]
        }
        RootMode::Singleton => {
            let mut roots: Vec<Vec<SignedFormula>> = vec![Vec::new()];
            for b in premises {
                roots = roots
                    .into_iter()
                    .flat_map(|r| {
                        d.iter().map(move |i| {
                            let mut r = r.clone();
                            r.push(SignedFormula::single(b.clone(), i));
                            r
                        })
                    })
                    .collect();
            }
            roots
                .into_iter()
                .flat_map(|r| {
                    nd.iter().map(move |i| {
                        let mut r = r.clone();
                        r.push(SignedFormula::single(goal.clone(), i));
                        r
                    })
                })
                .map(TableauNode::new)
                .collect()
        }
    }
}

struct Expander<'a> {
    rules: &'a RuleBook<'a>,
    nodes: AtomicUsize,
    cap: usize,
}

impl Expander<'_> {
    fn expand(&self, node: TableauNode, added: Vec<SignedFormula>) -> Result<TreeNode, TableauError> {
        let m = self.rules.matrix();
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(TableauError::NodeCap(self.cap));
        }
        if let Some((f, signs)) = node.clash(m) {
            let shown: Vec<String> = signs.iter().map(|s| m.show_signed(&SignedFormula::new(f.clone(), *s))).collect();
            let kind = NodeKind::Closed(format!("{} have empty intersection", shown.join(", ")));
            return Ok(TreeNode { node, added, kind });
        }
        // unused compound formulas, fewest conjuncts first, ties leftmost
        let mut best: Option<(usize, std::sync::Arc<crate::signed::PlaceForm>)> = None;
        for (i, sf) in node.formulas.iter().enumerate() {
            if node.used[i] || sf.formula.is_atom() || sf.sign.set() == m.full_set() {
                continue;
            }
            let Formula::App(c, _) = &sf.formula else { unreachable!() };
            let rule = self.rules.get(*c, sf.sign, NfMode::Dnf)?;
            if best.as_ref().is_none_or(|(_, b)| rule.len() < b.len()) {
                let empty = rule.is_empty();
                best = Some((i, rule));
                if empty {
                    break;
                }
            }
        }
        let Some((i, rule)) = best else {
            return Ok(TreeNode { node, added, kind: NodeKind::Open });
        };
        let principal = node.formulas[i].clone();
        let Formula::App(c, args) = &principal.formula else { unreachable!() };
        if rule.is_empty() {
            let reason = format!(
                "no elimination rule for {} at {}",
                m.connective(*c).name,
                m.show_set(principal.sign.set())
            );
            return Ok(TreeNode { node, added, kind: NodeKind::Closed(reason) });
        }
        let conjuncts = instantiate(&rule, args);
        let mut base = node.clone();
        base.used[i] = true;
        let children = conjuncts
            .iter()
            .map(|conj| {
                let mut child = base.clone();
                for lit in conj {
                    child.add(lit.clone());
                }
                self.expand(child, conj.clone())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TreeNode { node, added, kind: NodeKind::Expanded { principal, rule: conjuncts, children } })
    }
}

/// Expands a root to a completed tableau.
pub fn expand(root: TableauNode, rules: &RuleBook<'_>, node_cap: usize) -> Result<TableauProof, TableauError> {
    let ex = Expander { rules, nodes: AtomicUsize::new(0), cap: node_cap };
    Ok(TableauProof { root: ex.expand(root, Vec::new())? })
}

/// Valuation read off an open leaf: each atom gets the default value of the
/// intersection of its signs; unconstrained atoms get the default value of `M`.
pub fn countermodel(leaf: &TableauNode, atoms: &[crate::Atom], m: &Matrix) -> Valuation {
    let mut out = Valuation::new();
    for a in atoms {
        let mut set = m.full_set();
        for sf in &leaf.formulas {
            if sf.formula.as_atom() == Some(a) {
                set = set.intersection(sf.sign.set());
            }
        }
        out.insert(a.clone(), m.default_in(set).expect("open branches have nonempty intersections"));
    }
    out
}

#[derive(Clone, Debug)]
pub struct TableauOutcome {
    pub valid: bool,
    pub proofs: Vec<TableauProof>,
    pub countermodel: Option<Valuation>,
}

/// Decides `premises ⊨ goal` by refutation.
pub fn tableau_decide(
    premises: &[Formula],
    goal: &Formula,
    m: &Matrix,
    sys: &SignSystem,
    opts: TableauOptions,
) -> Result<TableauOutcome, TableauError> {
    let rules = RuleBook::new(m, sys.clone());
    tableau_decide_with(premises, goal, &rules, opts)
}

/// [`tableau_decide`] with a shared rule cache.
pub fn tableau_decide_with(
    premises: &[Formula],
    goal: &Formula,
    rules: &RuleBook<'_>,
    opts: TableauOptions,
) -> Result<TableauOutcome, TableauError> {
    let m = rules.matrix();
    let roots = build_roots(premises, goal, m, opts.roots);
    let proofs: Vec<TableauProof> = if roots.len() > 1 {
        roots.into_par_iter().map(|r| expand(r, rules, opts.node_cap)).collect::<Result<_, _>>()?
    } else {
        roots.into_iter().map(|r| expand(r, rules, opts.node_cap)).collect::<Result<_, _>>()?
    };
    let atoms = atoms_of(premises.iter().chain(std::iter::once(goal)));
    let countermodel = proofs.iter().find_map(|p| p.root.open_leaf()).map(|leaf| countermodel(&leaf.node, &atoms, m));
    Ok(TableauOutcome { valid: countermodel.is_none(), proofs, countermodel })
}
