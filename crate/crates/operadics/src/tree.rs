//! Planar rooted trees and their numerical invariants.
//!
//! A tree is either the trivial tree (a bare leaf) or a node with an ordered
//! list of child trees. Nodes of arity zero are admitted so that free operads
//! on graded sets with nonempty level zero exist; enumeration takes a flag to
//! exclude them.

use std::cmp::Ordering;
use std::fmt;

use serde_json::Value;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    pub fn node(children: Vec<Tree>) -> Tree {
        Tree::Node(children)
    }

    /// Height: the trivial tree has height 0, a node has height one more than
    /// its tallest child (so a childless node has height 1).
    pub fn height(&self) -> u32 {
        match self {
            Tree::Leaf => 0,
            Tree::Node(cs) => 1 + cs.iter().map(Tree::height).max().unwrap_or(0),
        }
    }

    /// Leaf count: the trivial tree counts 1, a node the sum over its
    /// children (so a childless node counts 0).
    pub fn leaf_count(&self) -> u32 {
        match self {
            Tree::Leaf => 1,
            Tree::Node(cs) => cs.iter().map(Tree::leaf_count).sum(),
        }
    }

    /// Branch count: the number of nodes.
    pub fn branch_count(&self) -> u32 {
        match self {
            Tree::Leaf => 0,
            Tree::Node(cs) => 1 + cs.iter().map(Tree::branch_count).sum::<u32>(),
        }
    }

    pub fn invariants(&self) -> (u32, u32, u32) {
        (self.height(), self.leaf_count(), self.branch_count())
    }

    pub fn arity(&self) -> Option<usize> {
        match self {
            Tree::Leaf => None,
            Tree::Node(cs) => Some(cs.len()),
        }
    }

    pub fn children(&self) -> &[Tree] {
        match self {
            Tree::Leaf => &[],
            Tree::Node(cs) => cs,
        }
    }

    /// Nested-array encoding: the trivial tree is `null`, a node is the array
    /// of its children (so a childless node is `[]`).
    pub fn to_value(&self) -> Value {
        match self {
            Tree::Leaf => Value::Null,
            Tree::Node(cs) => Value::Array(cs.iter().map(Tree::to_value).collect()),
        }
    }

    pub fn from_value(v: &Value) -> Result<Tree> {
        match v {
            Value::Null => Ok(Tree::Leaf),
            Value::Array(cs) => Ok(Tree::Node(
                cs.iter().map(Tree::from_value).collect::<Result<_>>()?,
            )),
            _ => Err(Error::Schema(format!("unrecognized tree value: {v}"))),
        }
    }

    /// GraphViz rendering with one vertex per constructor, children drawn left
    /// to right.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n  ordering=out;\n");
        let mut next = 0usize;
        fn walk(t: &Tree, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            match t {
                Tree::Leaf => out.push_str(&format!("  n{id} [label=\"e\", shape=none];\n")),
                Tree::Node(cs) => {
                    out.push_str(&format!(
                        "  n{id} [label=\"{}\", shape=circle];\n",
                        cs.len()
                    ));
                    for c in cs {
                        let cid = walk(c, next, out);
                        out.push_str(&format!("  n{id} -> n{cid};\n"));
                    }
                }
            }
            id
        }
        walk(self, &mut next, &mut out);
        out.push_str("}\n");
        out
    }
}

// Canonical tree order: branch count, then leaf count, then root arity, then
// children lexicographically. Stable across runs, used for serialization.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.branch_count()
            .cmp(&other.branch_count())
            .then_with(|| self.leaf_count().cmp(&other.leaf_count()))
            .then_with(|| match (self, other) {
                (Tree::Leaf, Tree::Leaf) => Ordering::Equal,
                (Tree::Leaf, Tree::Node(_)) => Ordering::Less,
                (Tree::Node(_), Tree::Leaf) => Ordering::Greater,
                (Tree::Node(a), Tree::Node(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            })
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "e"),
            Tree::Node(cs) => {
                write!(f, "({};", cs.len())?;
                for (k, c) in cs.iter().enumerate() {
                    write!(f, "{}{c}", if k == 0 { " " } else { "," })?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Enumerates exactly the trees with `leaf_count <= max_leaf`,
/// `branch_count <= max_branch`, and every node arity at most `max_arity`;
/// nullary nodes are excluded unless `allow_nullary`. Canonical order, no
/// duplicates.
pub fn enumerate_trees(
    max_leaf: u32,
    max_branch: u32,
    max_arity: u32,
    allow_nullary: bool,
) -> Vec<Tree> {
    let mut out = trees_within(max_leaf, max_branch, max_arity, allow_nullary);
    out.sort();
    out.dedup();
    out
}

fn trees_within(max_leaf: u32, max_branch: u32, max_arity: u32, allow_nullary: bool) -> Vec<Tree> {
    let mut out = Vec::new();
    if max_leaf >= 1 {
        out.push(Tree::Leaf);
    }
    if max_branch == 0 {
        return out;
    }
    let lo = if allow_nullary { 0 } else { 1 };
    for arity in lo..=max_arity {
        let mut stems: Vec<(Vec<Tree>, u32, u32)> = vec![(Vec::new(), 0, 1)];
        for _ in 0..arity {
            let mut next = Vec::new();
            for (prefix, leaves, branches) in &stems {
                for child in trees_within(
                    max_leaf - leaves,
                    max_branch - branches,
                    max_arity,
                    allow_nullary,
                ) {
                    let l = leaves + child.leaf_count();
                    let b = branches + child.branch_count();
                    if l <= max_leaf && b <= max_branch {
                        let mut p = prefix.clone();
                        p.push(child);
                        next.push((p, l, b));
                    }
                }
            }
            stems = next;
        }
        for (children, _, _) in stems {
            out.push(Tree::Node(children));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(children: Vec<Tree>) -> Tree {
        Tree::Node(children)
    }

    #[test]
    fn invariants_of_small_trees() {
        assert_eq!(Tree::Leaf.invariants(), (0, 1, 0));
        let corolla3 = node(vec![Tree::Leaf, Tree::Leaf, Tree::Leaf]);
        assert_eq!(corolla3.invariants(), (1, 3, 1));
        let taller = node(vec![corolla3, Tree::Leaf]);
        assert_eq!(taller.invariants(), (2, 4, 2));
    }

    #[test]
    fn only_the_trivial_tree_without_branches() {
        assert_eq!(enumerate_trees(1, 0, 3, true), vec![Tree::Leaf]);
    }

    /// Independent oracle: binary trees counted by the standard recursion.
    fn binary_count(leaves: u32) -> u64 {
        if leaves == 1 {
            return 1;
        }
        (1..leaves)
            .map(|k| binary_count(k) * binary_count(leaves - k))
            .sum()
    }

    #[test]
    fn binary_trees_are_counted_by_catalan_numbers() {
        let all = enumerate_trees(7, 7, 2, false);
        for leaves in 1..=7u32 {
            let got = all
                .iter()
                .filter(|t| t.leaf_count() == leaves && all_binary(t))
                .count() as u64;
            assert_eq!(got, binary_count(leaves), "leaf count {leaves}");
        }
    }

    fn all_binary(t: &Tree) -> bool {
        match t {
            Tree::Leaf => true,
            Tree::Node(cs) => cs.len() == 2 && cs.iter().all(all_binary),
        }
    }

    #[test]
    fn nullary_chains() {
        let got = enumerate_trees(0, 2, 1, true);
        let expected = vec![node(vec![]), node(vec![node(vec![])])];
        assert_eq!(got, expected);
    }

    #[test]
    fn enumeration_closed_under_subtrees() {
        let all = enumerate_trees(4, 4, 3, true);
        for t in &all {
            for c in t.children() {
                assert!(
                    all.contains(c),
                    "child {c} of {t} missing under the same bounds"
                );
            }
        }
    }

    #[test]
    fn leaf_and_branch_recursions_hold() {
        for t in enumerate_trees(4, 4, 3, true) {
            if let Tree::Node(cs) = &t {
                assert_eq!(t.leaf_count(), cs.iter().map(Tree::leaf_count).sum::<u32>());
                assert_eq!(
                    t.branch_count(),
                    1 + cs.iter().map(Tree::branch_count).sum::<u32>()
                );
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for t in enumerate_trees(3, 3, 2, true) {
            assert_eq!(Tree::from_value(&t.to_value()).unwrap(), t);
        }
    }

    #[test]
    fn dot_export_draws_every_node() {
        let t = node(vec![node(vec![Tree::Leaf, Tree::Leaf]), Tree::Leaf]);
        let dot = t.to_dot("t");
        assert!(dot.starts_with("digraph t"));
        assert_eq!(dot.matches("label=\"e\"").count(), 3);
        assert_eq!(dot.matches("->").count(), 4);
    }
}
