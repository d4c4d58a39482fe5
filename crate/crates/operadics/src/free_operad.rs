//! Labeled planar trees and free operads.
//!
//! A labeled tree is either the trivial labeling of the bare leaf or a node
//! carrying a label whose level equals the node's arity, with one labeled
//! subtree per slot. Labeled trees over a graded set, together with grafting,
//! form the free operad on that set; the trivial labeling is its identity.
//! The pointed variant splices out every node labeled by a chosen level-one
//! basepoint.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::elem::Elem;
use crate::graded::GradedSet;
use crate::tree::Tree;
use crate::{Error, Result};

/// Anything that can label a tree node: it must know its level (the arity of
/// the node it labels) and order canonically.
pub trait Label: Clone + Eq + Ord + Hash + fmt::Display {
    fn level(&self) -> u32;
}

impl Label for Elem {
    fn level(&self) -> u32 {
        Elem::level(self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum LabeledTree<L> {
    Leaf,
    Node {
        label: L,
        children: Vec<LabeledTree<L>>,
    },
}

impl<L: Label> LabeledTree<L> {
    /// The labeling with a single node and trivial subtrees everywhere.
    pub fn corolla(label: L) -> Self {
        let n = label.level() as usize;
        LabeledTree::Node {
            label,
            children: vec![LabeledTree::Leaf; n],
        }
    }

    /// Level of the labeled tree: leaves count one slot each, so the level is
    /// the leaf count of the shape (nullary nodes contribute zero).
    pub fn level(&self) -> u32 {
        match self {
            LabeledTree::Leaf => 1,
            LabeledTree::Node { children, .. } => children.iter().map(Self::level).sum(),
        }
    }

    pub fn branch_count(&self) -> u32 {
        match self {
            LabeledTree::Leaf => 0,
            LabeledTree::Node { children, .. } => {
                1 + children.iter().map(Self::branch_count).sum::<u32>()
            }
        }
    }

    pub fn height(&self) -> u32 {
        match self {
            LabeledTree::Leaf => 0,
            LabeledTree::Node { children, .. } => {
                1 + children.iter().map(Self::height).max().unwrap_or(0)
            }
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, LabeledTree::Leaf)
    }

    /// The underlying unlabeled tree.
    pub fn shape(&self) -> Tree {
        match self {
            LabeledTree::Leaf => Tree::Leaf,
            LabeledTree::Node { children, .. } => {
                Tree::Node(children.iter().map(Self::shape).collect())
            }
        }
    }

    /// All labels, in canonical order with multiplicity.
    pub fn labels(&self) -> Vec<L> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out.sort();
        out
    }

    fn collect_labels(&self, out: &mut Vec<L>) {
        if let LabeledTree::Node { label, children } = self {
            out.push(label.clone());
            for c in children {
                c.collect_labels(out);
            }
        }
    }

    /// Checks that every node's arity equals its label's level.
    pub fn validate(&self) -> Result<()> {
        if let LabeledTree::Node { label, children } = self {
            if label.level() as usize != children.len() {
                return Err(Error::ArityMismatch {
                    what: format!("node labeled {label}"),
                    expected: label.level() as usize,
                    got: children.len(),
                });
            }
            for c in children {
                c.validate()?;
            }
        }
        Ok(())
    }

    /// Free-operad composition: grafts one argument onto each open slot, in
    /// left-to-right order. Grafting onto the trivial labeling returns the
    /// single argument unchanged.
    pub fn graft(&self, args: &[Self]) -> Result<Self> {
        if self.level() as usize != args.len() {
            return Err(Error::ArityMismatch {
                what: "graft".into(),
                expected: self.level() as usize,
                got: args.len(),
            });
        }
        Ok(match self {
            LabeledTree::Leaf => args[0].clone(),
            LabeledTree::Node { label, children } => {
                let mut grafted = Vec::with_capacity(children.len());
                let mut offset = 0usize;
                for c in children {
                    let take = c.level() as usize;
                    grafted.push(c.graft(&args[offset..offset + take])?);
                    offset += take;
                }
                LabeledTree::Node {
                    label: label.clone(),
                    children: grafted,
                }
            }
        })
    }

    /// Splices out every node whose level-one label satisfies `is_unit`,
    /// promoting the single child. One bottom-up pass reaches the fixed point.
    pub fn splice_units(&self, is_unit: &impl Fn(&L) -> bool) -> Self {
        match self {
            LabeledTree::Leaf => LabeledTree::Leaf,
            LabeledTree::Node { label, children } => {
                let children: Vec<_> = children.iter().map(|c| c.splice_units(is_unit)).collect();
                if label.level() == 1 && is_unit(label) {
                    children
                        .into_iter()
                        .next()
                        .expect("level-one node has one child")
                } else {
                    LabeledTree::Node {
                        label: label.clone(),
                        children,
                    }
                }
            }
        }
    }

    pub fn to_dot(&self, name: &str, mut show: impl FnMut(&L) -> String) -> String {
        let mut out = format!("digraph {name} {{\n  ordering=out;\n");
        let mut next = 0usize;
        fn walk<L: Label>(
            t: &LabeledTree<L>,
            next: &mut usize,
            out: &mut String,
            show: &mut impl FnMut(&L) -> String,
        ) -> usize {
            let id = *next;
            *next += 1;
            match t {
                LabeledTree::Leaf => out.push_str(&format!("  n{id} [label=\"e\", shape=none];\n")),
                LabeledTree::Node { label, children } => {
                    out.push_str(&format!(
                        "  n{id} [label=\"{}\", shape=box];\n",
                        show(label)
                    ));
                    for c in children {
                        let cid = walk(c, next, out, show);
                        out.push_str(&format!("  n{id} -> n{cid};\n"));
                    }
                }
            }
            id
        }
        walk(self, &mut next, &mut out, &mut show);
        out.push_str("}\n");
        out
    }
}

impl LabeledTree<Elem> {
    pub fn to_value(&self) -> Value {
        match self {
            LabeledTree::Leaf => Value::Null,
            LabeledTree::Node { label, children } => json!({
                "lab": label.to_value(),
                "ch": children.iter().map(Self::to_value).collect::<Vec<_>>(),
            }),
        }
    }
}

// Canonical order: branch count, then level, then structure.
impl<L: Label> Ord for LabeledTree<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.branch_count()
            .cmp(&other.branch_count())
            .then_with(|| self.level().cmp(&other.level()))
            .then_with(|| match (self, other) {
                (LabeledTree::Leaf, LabeledTree::Leaf) => Ordering::Equal,
                (LabeledTree::Leaf, LabeledTree::Node { .. }) => Ordering::Less,
                (LabeledTree::Node { .. }, LabeledTree::Leaf) => Ordering::Greater,
                (
                    LabeledTree::Node {
                        label: a,
                        children: x,
                    },
                    LabeledTree::Node {
                        label: b,
                        children: y,
                    },
                ) => a.cmp(b).then_with(|| x.cmp(y)),
            })
    }
}

impl<L: Label> PartialOrd for LabeledTree<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Label> fmt::Display for LabeledTree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabeledTree::Leaf => write!(f, "e"),
            LabeledTree::Node { label, children } => {
                if children.iter().all(|c| c.is_leaf()) && !children.is_empty() {
                    return write!(f, "<{label}>");
                }
                write!(f, "{label}(")?;
                for (k, c) in children.iter().enumerate() {
                    write!(f, "{}{c}", if k == 0 { "" } else { "," })?;
                }
                write!(f, ")")
            }
        }
    }
}

impl<L: Label> fmt::Debug for LabeledTree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The corolla on an element: a single node labeled `x` with trivial subtrees.
pub fn corolla(x: &Elem) -> LabeledTree<Elem> {
    LabeledTree::corolla(x.clone())
}

/// All labeled trees over `alphabet` of the given level, with branch count at
/// most `max_branch`; labels of level above `max_arity` are never used.
/// Canonical order, no duplicates.
pub fn enumerate_labeled<L: Label>(
    alphabet: &[L],
    level: u32,
    max_branch: u32,
    max_arity: u32,
) -> Vec<LabeledTree<L>> {
    let usable: Vec<L> = alphabet
        .iter()
        .filter(|l| l.level() <= max_arity)
        .cloned()
        .collect();
    let mut out = labeled_within(&usable, level, max_branch);
    out.sort();
    out.dedup();
    out
}

fn labeled_within<L: Label>(alphabet: &[L], level: u32, max_branch: u32) -> Vec<LabeledTree<L>> {
    let mut out = Vec::new();
    if level == 1 {
        out.push(LabeledTree::Leaf);
    }
    if max_branch == 0 {
        return out;
    }
    for label in alphabet {
        let arity = label.level();
        // Every level-zero child costs at least one branch, which bounds the
        // usable arity at this level and budget.
        if arity > level + max_branch - 1 {
            continue;
        }
        let mut stems: Vec<(Vec<LabeledTree<L>>, u32, u32)> = vec![(Vec::new(), 0, 1)];
        for _ in 0..arity {
            let mut next = Vec::new();
            for (prefix, lv, br) in &stems {
                for sub_level in 0..=(level - lv) {
                    for child in labeled_within(alphabet, sub_level, max_branch - br) {
                        let b = br + child.branch_count();
                        if b <= max_branch {
                            let mut p = prefix.clone();
                            p.push(child);
                            next.push((p, lv + sub_level, b));
                        }
                    }
                }
            }
            stems = next;
        }
        for (children, lv, _) in stems {
            if lv == level {
                out.push(LabeledTree::Node {
                    label: label.clone(),
                    children,
                });
            }
        }
    }
    out
}

/// Level `n` of the free operad on `x`, within the stated bounds.
pub fn free_operad_level(
    x: &GradedSet,
    level: u32,
    max_branch: u32,
    max_arity: u32,
) -> Vec<LabeledTree<Elem>> {
    let alphabet: Vec<Elem> = (0..=x.level_bound())
        .flat_map(|n| x.level(n).to_vec())
        .collect();
    enumerate_labeled(&alphabet, level, max_branch, max_arity)
}

/// Splices out every node labeled by `basepoint`, realizing the pointed free
/// operad as the basepoint-free labeled trees.
pub fn pointed_normalize(l: &LabeledTree<Elem>, basepoint: &Elem) -> Result<LabeledTree<Elem>> {
    if basepoint.level() != 1 {
        return Err(Error::InvalidElement(format!(
            "basepoint {basepoint} must live at level 1"
        )));
    }
    Ok(l.splice_units(&|x: &Elem| x == basepoint))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen2() -> Elem {
        Elem::atom(2, "m")
    }

    fn set_with(levels: Vec<Vec<Elem>>) -> GradedSet {
        GradedSet::new(levels).unwrap()
    }

    #[test]
    fn corolla_shapes_and_invariants() {
        let c = corolla(&gen2());
        assert_eq!(c.level(), 2);
        assert_eq!(c.shape().invariants(), (1, 2, 1));

        let z = Elem::atom(0, "z");
        let cz = corolla(&z);
        assert_eq!(cz.level(), 0);
        assert_eq!(cz.branch_count(), 1);
    }

    #[test]
    fn corolla_is_injective_on_labels() {
        let xs: Vec<Elem> = (0..3).map(|k| Elem::atom(2, format!("x{k}"))).collect();
        let mut cs: Vec<_> = xs.iter().map(corolla).collect();
        cs.dedup();
        assert_eq!(cs.len(), 3);
    }

    #[test]
    fn grafting_base_cases() {
        let m = corolla(&gen2());
        let leaf = LabeledTree::Leaf;
        assert_eq!(leaf.graft(std::slice::from_ref(&m)).unwrap(), m);
        assert_eq!(m.graft(&[leaf.clone(), leaf.clone()]).unwrap(), m);
        assert!(m.graft(&[leaf]).is_err());
    }

    #[test]
    fn one_step_graft() {
        let x = Elem::atom(2, "x");
        let y = Elem::atom(2, "y");
        let got = corolla(&x)
            .graft(&[corolla(&y), LabeledTree::Leaf])
            .unwrap();
        assert_eq!(got.level(), 3);
        assert_eq!(
            got.shape(),
            Tree::Node(vec![Tree::Node(vec![Tree::Leaf, Tree::Leaf]), Tree::Leaf])
        );
        assert_eq!(got.labels(), vec![x, y]);
    }

    #[test]
    fn binary_generator_levels_follow_catalan() {
        let x = set_with(vec![vec![], vec![], vec![gen2()]]);
        let counts: Vec<usize> = (1..=5)
            .map(|n| free_operad_level(&x, n, 16, 2).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14]);
    }

    #[test]
    fn empty_generators_leave_only_the_identity() {
        let x = GradedSet::empty(2);
        assert_eq!(free_operad_level(&x, 1, 5, 3).len(), 1);
        assert_eq!(free_operad_level(&x, 0, 5, 3).len(), 0);
        assert_eq!(free_operad_level(&x, 2, 5, 3).len(), 0);
    }

    #[test]
    fn unary_generator_gives_chains() {
        let u = Elem::atom(1, "u");
        let x = set_with(vec![vec![], vec![u]]);
        // Chains of length 0..3.
        assert_eq!(free_operad_level(&x, 1, 3, 3).len(), 4);
    }

    #[test]
    fn operad_laws_hold_within_bounds() {
        let m = gen2();
        let z = Elem::atom(0, "z");
        let x = set_with(vec![vec![z], vec![], vec![m]]);
        let max_branch = 3;
        let mut all: Vec<LabeledTree<Elem>> = Vec::new();
        for level in 0..=4 {
            all.extend(free_operad_level(&x, level, max_branch, 3));
        }

        // Unit laws.
        for a in &all {
            let ids = vec![LabeledTree::Leaf; a.level() as usize];
            assert_eq!(&a.graft(&ids).unwrap(), a);
            assert_eq!(
                LabeledTree::Leaf.graft(std::slice::from_ref(a)).unwrap(),
                *a
            );
        }

        // Associativity: graft then graft equals blockwise graft, checked on
        // triples small enough to stay within the branch bound.
        let small: Vec<_> = all.iter().filter(|t| t.branch_count() <= 1).collect();
        for a in &small {
            let m = a.level() as usize;
            if m == 0 {
                continue;
            }
            for b in &small {
                let mut bs = vec![LabeledTree::Leaf; m];
                bs[m - 1] = (*b).clone();
                let ab = a.graft(&bs).unwrap();
                let k = ab.level() as usize;
                for c in &small {
                    if k == 0 {
                        continue;
                    }
                    let mut cs = vec![LabeledTree::Leaf; k];
                    cs[0] = (*c).clone();
                    let lhs = ab.graft(&cs).unwrap();

                    // Feed the cs to the bs blockwise, then graft into a.
                    let mut grafted_bs = Vec::with_capacity(m);
                    let mut offset = 0usize;
                    for bi in &bs {
                        let take = bi.level() as usize;
                        grafted_bs.push(bi.graft(&cs[offset..offset + take]).unwrap());
                        offset += take;
                    }
                    let rhs = a.graft(&grafted_bs).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn grafting_adds_invariants() {
        let m = gen2();
        let x = set_with(vec![vec![], vec![], vec![m]]);
        let all = free_operad_level(&x, 3, 4, 2);
        for a in free_operad_level(&x, 2, 4, 2) {
            for b in &all {
                let mut bs = vec![LabeledTree::Leaf; a.level() as usize];
                bs[0] = b.clone();
                let g = a.graft(&bs).unwrap();
                assert_eq!(g.branch_count(), a.branch_count() + b.branch_count());
                assert_eq!(g.level(), a.level() - 1 + b.level());
            }
        }
    }

    #[test]
    fn basepoint_splicing() {
        let b = Elem::atom(1, "base");
        let x = Elem::atom(2, "x");

        let cb = corolla(&b);
        assert_eq!(pointed_normalize(&cb, &b).unwrap(), LabeledTree::Leaf);

        let cx = corolla(&x);
        assert_eq!(pointed_normalize(&cx, &b).unwrap(), cx);

        let nested = LabeledTree::Node {
            label: b.clone(),
            children: vec![cx.clone()],
        };
        assert_eq!(pointed_normalize(&nested, &b).unwrap(), cx);

        // Idempotent, and invariant under grafting then splicing.
        let once = pointed_normalize(&nested, &b).unwrap();
        assert_eq!(pointed_normalize(&once, &b).unwrap(), once);
    }

    #[test]
    fn splice_commutes_with_grafting() {
        let b = Elem::atom(1, "base");
        let x = Elem::atom(2, "x");
        let gens = set_with(vec![vec![], vec![b.clone()], vec![x]]);
        let trees: Vec<_> = (0..=3)
            .flat_map(|n| free_operad_level(&gens, n, 3, 2))
            .collect();
        for a in &trees {
            let m = a.level() as usize;
            if m == 0 || m > 2 {
                continue;
            }
            for c in &trees {
                let mut args = vec![LabeledTree::Leaf; m];
                args[0] = c.clone();
                let Ok(g) = a.graft(&args) else { continue };
                let direct = pointed_normalize(&g, &b).unwrap();
                let na = pointed_normalize(a, &b).unwrap();
                let nargs: Vec<_> = args
                    .iter()
                    .map(|t| pointed_normalize(t, &b).unwrap())
                    .collect();
                let via = pointed_normalize(&na.graft(&nargs).unwrap(), &b).unwrap();
                assert_eq!(direct, via);
            }
        }
    }
}
