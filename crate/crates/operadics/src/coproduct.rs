//! Operad coproducts by rewriting.
//!
//! A raw word over a family of operads is a labeled tree whose node labels
//! are drawn from the disjoint union of their carriers, tagged by component
//! ("color"). Two rewrite moves present the coproduct:
//!
//! * splicing out a node labeled by a component's identity, and
//! * merging a node into a same-colored child by partial composition in that
//!   component.
//!
//! Both moves strictly decrease the branch count, so rewriting terminates;
//! the normal forms are the alternating, identity-free labeled trees, and
//! every congruence class contains exactly one of them. That uniqueness is
//! not assumed: [`ColoredSystem::oracle_classes`] closes the one-step rewrite
//! relation by fixpoint and the verifiers cross-check the rewriter against it.
//!
//! Besides explicit operads, a component may hold free generators (optionally
//! with a basepoint that splices away, giving the pointed free operad on the
//! middle of a three-fold coproduct) or the carrier of a pointed bimodule,
//! whose action relations become extra rewrite moves used by the enveloping
//! operad oracle.

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::elem::Elem;
use crate::free_operad::{enumerate_labeled, Label, LabeledTree};
use crate::graded::GradedSet;
use crate::modules::{bimodule_left_merge, bimodule_right_merge};
use crate::report::{Check, Report};
use crate::table::{OpRef, OperadMap, TableOperad};
use crate::util::{par_map, DisjointSet};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Payload {
    /// An element of a table operad component.
    Op(OpRef),
    /// A generator of a free or bimodule component.
    Gen(Elem),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordLabel {
    pub comp: u32,
    pub payload: Payload,
}

impl WordLabel {
    pub fn op(comp: u32, r: OpRef) -> WordLabel {
        WordLabel {
            comp,
            payload: Payload::Op(r),
        }
    }

    pub fn gen(comp: u32, e: Elem) -> WordLabel {
        WordLabel {
            comp,
            payload: Payload::Gen(e),
        }
    }
}

impl Label for WordLabel {
    fn level(&self) -> u32 {
        match &self.payload {
            Payload::Op(r) => r.level,
            Payload::Gen(e) => e.level(),
        }
    }
}

impl fmt::Display for WordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Op(r) => write!(f, "c{}:#{}@{}", self.comp, r.index, r.level),
            Payload::Gen(e) => write!(f, "c{}:{e}", self.comp),
        }
    }
}

pub type Word = LabeledTree<WordLabel>;

pub enum Component {
    Table(TableOperad),
    Free {
        gens: GradedSet,
        basepoint: Option<Elem>,
    },
    /// Carrier of a pointed bimodule over the table components `left` and
    /// `right`; its basepoint splices away, and the two action relations
    /// become rewrites handled by the congruence oracle.
    Bimodule {
        over: TableOperad,
        carrier: GradedSet,
        basepoint: Elem,
        left: u32,
        right: u32,
    },
}

pub struct ColoredSystem {
    comps: Vec<Component>,
    names: Vec<String>,
}

impl ColoredSystem {
    pub fn new(comps: Vec<(String, Component)>) -> ColoredSystem {
        let (names, comps) = comps.into_iter().unzip();
        ColoredSystem { comps, names }
    }

    pub fn component(&self, k: u32) -> &Component {
        &self.comps[k as usize]
    }

    pub fn comp_name(&self, k: u32) -> &str {
        &self.names[k as usize]
    }

    fn has_bimodule(&self) -> bool {
        self.comps
            .iter()
            .any(|c| matches!(c, Component::Bimodule { .. }))
    }

    /// True when the label is an identity or basepoint, hence splices away.
    fn is_unit_label(&self, l: &WordLabel) -> bool {
        match (&self.comps[l.comp as usize], &l.payload) {
            (Component::Table(t), Payload::Op(r)) => *r == t.identity(),
            (Component::Free { basepoint, .. }, Payload::Gen(e)) => basepoint.as_ref() == Some(e),
            (Component::Bimodule { basepoint, .. }, Payload::Gen(e)) => basepoint == e,
            _ => false,
        }
    }

    /// Every label usable at a node, sorted canonically. Levels are capped by
    /// what a word of the given level and branch budget could use.
    fn alphabet(&self, level: u32, max_branch: u32) -> Result<Vec<WordLabel>> {
        let cap = level + max_branch;
        let mut out = Vec::new();
        for (k, comp) in self.comps.iter().enumerate() {
            let k = k as u32;
            match comp {
                Component::Table(t) => {
                    for n in 0..=t.level_bound().min(cap) {
                        for r in t.elements(n)? {
                            out.push(WordLabel::op(k, r));
                        }
                    }
                }
                Component::Free { gens, .. } | Component::Bimodule { carrier: gens, .. } => {
                    for n in 0..=gens.level_bound().min(cap) {
                        for e in gens.level(n) {
                            out.push(WordLabel::gen(k, e.clone()));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// All raw words of the given level with branch count at most
    /// `max_branch`, in canonical order.
    pub fn enumerate_words(&self, level: u32, max_branch: u32) -> Result<Vec<Word>> {
        let alphabet = self.alphabet(level, max_branch)?;
        let max_arity = level + max_branch;
        Ok(enumerate_labeled(&alphabet, level, max_branch, max_arity))
    }

    /// All words reachable from `w` by one rewrite step at any position.
    /// Splices and same-color merges always apply; bimodule action moves are
    /// included when the system has a bimodule component. Steps that would
    /// leave the truncation are skipped.
    pub fn rewrite_targets(&self, w: &Word) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        self.rewrites_here(w, &mut |r| out.push(r))?;
        // Rewrites inside a child, in context.
        if let LabeledTree::Node { label, children } = w {
            for (i, c) in children.iter().enumerate() {
                for rc in self.rewrite_targets(c)? {
                    let mut cs = children.clone();
                    cs[i] = rc;
                    out.push(LabeledTree::Node {
                        label: label.clone(),
                        children: cs,
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn rewrites_here(&self, w: &Word, emit: &mut impl FnMut(Word)) -> Result<()> {
        let LabeledTree::Node { label, children } = w else {
            return Ok(());
        };

        // Splice a unit label.
        if label.level() == 1 && self.is_unit_label(label) {
            emit(children[0].clone());
        }

        // Merge a same-colored child by partial composition.
        if let (Component::Table(t), Payload::Op(a)) =
            (&self.comps[label.comp as usize], &label.payload)
        {
            for (i, c) in children.iter().enumerate() {
                let LabeledTree::Node {
                    label: cl,
                    children: cc,
                } = c
                else {
                    continue;
                };
                if cl.comp != label.comp {
                    continue;
                }
                let Payload::Op(b) = &cl.payload else {
                    continue;
                };
                match t.partial_compose(*a, i as u32 + 1, *b) {
                    Ok(r) => {
                        let mut cs = Vec::with_capacity(children.len() + cc.len() - 1);
                        cs.extend_from_slice(&children[..i]);
                        cs.extend_from_slice(cc);
                        cs.extend_from_slice(&children[i + 1..]);
                        emit(LabeledTree::Node {
                            label: WordLabel::op(label.comp, r),
                            children: cs,
                        });
                    }
                    Err(Error::TruncationExceeded { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }

        // Bimodule action moves.
        for (bk, comp) in self.comps.iter().enumerate() {
            let Component::Bimodule {
                over, left, right, ..
            } = comp
            else {
                continue;
            };
            let bk = bk as u32;

            // Left action: an operad node of the left color whose children
            // are all bimodule nodes merges into one bimodule label.
            if label.comp == *left {
                if let Payload::Op(p) = &label.payload {
                    if let Some((xs, grandchildren)) = all_children_of(children, bk) {
                        let xs: Option<Vec<Elem>> = xs
                            .into_iter()
                            .map(|pl| match pl {
                                Payload::Gen(e) => Some(e),
                                Payload::Op(_) => None,
                            })
                            .collect();
                        if let Some(xs) = xs {
                            match bimodule_left_merge(over, *p, &xs) {
                                Ok(merged) => emit(LabeledTree::Node {
                                    label: WordLabel::gen(bk, merged),
                                    children: grandchildren,
                                }),
                                Err(Error::TruncationExceeded { .. }) => {}
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
            }

            // Right action: a bimodule node whose children are all operad
            // nodes of the right color absorbs them.
            if label.comp == bk && !children.is_empty() {
                if let Payload::Gen(x) = &label.payload {
                    if let Some((qs, grandchildren)) = all_children_of(children, *right) {
                        let qs: Option<Vec<OpRef>> = qs
                            .into_iter()
                            .map(|pl| match pl {
                                Payload::Op(r) => Some(r),
                                Payload::Gen(_) => None,
                            })
                            .collect();
                        if let Some(qs) = qs {
                            match bimodule_right_merge(over, x, &qs) {
                                Ok(merged) => emit(LabeledTree::Node {
                                    label: WordLabel::gen(bk, merged),
                                    children: grandchildren,
                                }),
                                Err(Error::TruncationExceeded { .. }) => {}
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// No unit labels and no same-colored parent-child pair among the table
    /// components.
    pub fn is_normal(&self, w: &Word) -> bool {
        match w {
            LabeledTree::Leaf => true,
            LabeledTree::Node { label, children } => {
                if self.is_unit_label(label) {
                    return false;
                }
                let tabular = matches!(self.comps[label.comp as usize], Component::Table(_));
                children.iter().all(|c| {
                    if let LabeledTree::Node { label: cl, .. } = c {
                        if tabular && cl.comp == label.comp {
                            return false;
                        }
                    }
                    self.is_normal(c)
                })
            }
        }
    }

    /// Rewrites to the unique normal form, innermost first. Unavailable when
    /// a bimodule component is present (use the oracle there). Errors with
    /// `TruncationExceeded` if a required composite lies above a component's
    /// bound.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        if self.has_bimodule() {
            return Err(Error::InvalidElement(
                "normalization over a bimodule component is oracle-only".into(),
            ));
        }
        let mut current = match w {
            LabeledTree::Leaf => return Ok(LabeledTree::Leaf),
            LabeledTree::Node { label, children } => {
                let children = children
                    .iter()
                    .map(|c| self.normalize(c))
                    .collect::<Result<Vec<_>>>()?;
                LabeledTree::Node {
                    label: label.clone(),
                    children,
                }
            }
        };
        loop {
            let LabeledTree::Node { label, children } = &current else {
                return Ok(current);
            };
            if label.level() == 1 && self.is_unit_label(label) {
                return Ok(children[0].clone());
            }
            let (Component::Table(t), Payload::Op(a)) =
                (&self.comps[label.comp as usize], &label.payload)
            else {
                return Ok(current);
            };
            let merge = children.iter().enumerate().find_map(|(i, c)| match c {
                LabeledTree::Node {
                    label: cl,
                    children: cc,
                } if cl.comp == label.comp => match &cl.payload {
                    Payload::Op(b) => Some((i, *b, cc.clone())),
                    Payload::Gen(_) => None,
                },
                _ => None,
            });
            match merge {
                None => return Ok(current),
                Some((i, b, cc)) => {
                    let r = t.partial_compose(*a, i as u32 + 1, b)?;
                    let mut cs = Vec::with_capacity(children.len() + cc.len() - 1);
                    cs.extend_from_slice(&children[..i]);
                    cs.extend_from_slice(&cc);
                    cs.extend_from_slice(&children[i + 1..]);
                    current = LabeledTree::Node {
                        label: WordLabel::op(label.comp, r),
                        children: cs,
                    };
                }
            }
        }
    }

    /// Applies uniformly random rewrite steps until none applies. With unique
    /// normal forms this must agree with [`ColoredSystem::normalize`];
    /// verifiers use the pair as a confluence test.
    pub fn normalize_random(&self, w: &Word, seed: u64) -> Result<Word> {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut current = w.clone();
        loop {
            let targets = self.rewrite_targets(&current)?;
            if targets.is_empty() {
                return Ok(current);
            }
            current = targets[rng.random_range(0..targets.len())].clone();
        }
    }

    /// Ground truth: closes the one-step rewrite relation over all words of
    /// the given level and branch bound by fixpoint, and returns the classes
    /// (as index sets into the returned word list).
    pub fn oracle_classes(
        &self,
        level: u32,
        max_branch: u32,
    ) -> Result<(Vec<Word>, Vec<Vec<usize>>)> {
        let words = self.enumerate_words(level, max_branch)?;
        let index: BTreeMap<&Word, usize> = words.iter().zip(0..).collect();
        let mut ds = DisjointSet::new(words.len());
        for (i, w) in words.iter().enumerate() {
            for t in self.rewrite_targets(w)? {
                match index.get(&t) {
                    Some(&j) => ds.union(i, j),
                    None => {
                        return Err(Error::InvalidElement(format!(
                            "rewrite left the enumerated set: {w} -> {t}"
                        )))
                    }
                }
            }
        }
        let classes = ds.classes(words.len());
        Ok((words, classes))
    }
}

/// When every child is a node of component `comp`, returns their payloads and
/// the concatenated grandchildren.
fn all_children_of(children: &[Word], comp: u32) -> Option<(Vec<Payload>, Vec<Word>)> {
    let mut payloads = Vec::with_capacity(children.len());
    let mut grandchildren = Vec::new();
    for c in children {
        match c {
            LabeledTree::Node {
                label: cl,
                children: cc,
            } if cl.comp == comp => {
                payloads.push(cl.payload.clone());
                grandchildren.extend_from_slice(cc);
            }
            _ => return None,
        }
    }
    Some((payloads, grandchildren))
}

/// Which side of a binary coproduct an element comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn comp(self) -> u32 {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

/// Census of raw words at one level: per branch count `k`, the number of
/// words `t[k]`, of collapsible words `c[k]`, and of normal forms reached
/// from words of branch count at most `k` (`f[k]`). The filtration recursion
/// `f[k] = f[k-1] + t[k] - c[k]` is checked at every `k`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Census {
    pub level: u32,
    pub t: Vec<u64>,
    pub c: Vec<u64>,
    pub f: Vec<u64>,
    pub recursion_holds: bool,
}

/// The coproduct of two table operads, with normalization, composition of
/// normal forms, the census, the congruence oracle, and evaluation through a
/// pair of homomorphisms.
pub struct OperadCoproduct {
    system: ColoredSystem,
}

impl OperadCoproduct {
    pub fn new(left: TableOperad, right: TableOperad) -> OperadCoproduct {
        let system = ColoredSystem::new(vec![
            ("p".to_string(), Component::Table(left)),
            ("q".to_string(), Component::Table(right)),
        ]);
        OperadCoproduct { system }
    }

    pub fn side(&self, side: Side) -> &TableOperad {
        match &self.system.comps[side.comp() as usize] {
            Component::Table(t) => t,
            _ => unreachable!("binary coproducts hold two tables"),
        }
    }

    pub fn system(&self) -> &ColoredSystem {
        &self.system
    }

    /// The canonical embedding of one element: its corolla, normalized (so
    /// identities embed as the coproduct identity).
    pub fn embed(&self, side: Side, name: &str) -> Result<Word> {
        let t = self.side(side);
        let r = t.ref_by_name(name)?;
        self.normalize(&LabeledTree::corolla(WordLabel::op(side.comp(), r)))
    }

    /// A level-one word from a chain of (side, element name) letters, first
    /// letter at the root.
    pub fn word_from_chain(&self, letters: &[(Side, &str)]) -> Result<Word> {
        let mut word = LabeledTree::Leaf;
        for (side, name) in letters.iter().rev() {
            let r = self.side(*side).ref_by_name(name)?;
            if r.level != 1 {
                return Err(Error::InvalidElement(format!(
                    "chain letter {name:?} is not a level-1 element"
                )));
            }
            word = LabeledTree::Node {
                label: WordLabel::op(side.comp(), r),
                children: vec![word],
            };
        }
        Ok(word)
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.system.is_normal(w)
    }

    pub fn normalize(&self, w: &Word) -> Result<Word> {
        self.system.normalize(w)
    }

    pub fn normalize_random(&self, w: &Word, seed: u64) -> Result<Word> {
        self.system.normalize_random(w, seed)
    }

    /// Composition of coproduct elements: graft, then normalize.
    pub fn compose(&self, u: &Word, vs: &[Word]) -> Result<Word> {
        self.system.normalize(&u.graft(vs)?)
    }

    /// Collapsible: displays adjacent colors, or carries an identity label.
    /// The trivial word is not collapsible.
    pub fn is_collapsible(&self, w: &Word) -> bool {
        self.displays_adjacent(w) || self.is_unital(w)
    }

    fn displays_adjacent(&self, w: &Word) -> bool {
        match w {
            LabeledTree::Leaf => false,
            LabeledTree::Node { label, children } => children.iter().any(|c| {
                if self.displays_adjacent(c) {
                    return true;
                }
                matches!(c, LabeledTree::Node { label: cl, .. } if cl.comp == label.comp)
            }),
        }
    }

    fn is_unital(&self, w: &Word) -> bool {
        match w {
            LabeledTree::Leaf => false,
            LabeledTree::Node { label, children } => {
                self.system.is_unit_label(label) || children.iter().any(|c| self.is_unital(c))
            }
        }
    }

    /// Census at one level up to a branch bound. `f` is computed by
    /// normalizing every word and counting distinct images; the recursion
    /// check then ties the rewriting system to the collapsibility predicate.
    pub fn census(&self, level: u32, max_branch: u32, jobs: usize) -> Result<Census> {
        let words = self.system.enumerate_words(level, max_branch)?;
        let mut t = vec![0u64; max_branch as usize + 1];
        let mut c = vec![0u64; max_branch as usize + 1];
        for w in &words {
            let k = w.branch_count() as usize;
            t[k] += 1;
            if self.is_collapsible(w) {
                c[k] += 1;
            }
        }
        let normalized: Vec<(u32, Word)> = par_map(jobs, words, |w| {
            let k = w.branch_count();
            let nf = self.normalize(&w).expect("composite stays in range");
            (k, nf)
        });
        let mut f = Vec::with_capacity(max_branch as usize + 1);
        let mut seen = std::collections::BTreeSet::new();
        for k in 0..=max_branch as usize {
            for (wk, nf) in &normalized {
                if *wk as usize == k {
                    seen.insert(nf.clone());
                }
            }
            f.push(seen.len() as u64);
        }
        let mut recursion_holds = true;
        for k in 0..=max_branch as usize {
            let prev = if k == 0 { 0 } else { f[k - 1] };
            if f[k] != prev + t[k] - c[k] {
                recursion_holds = false;
            }
        }
        Ok(Census {
            level,
            t,
            c,
            f,
            recursion_holds,
        })
    }

    /// Runs the congruence oracle and checks it against the rewriter: every
    /// class must contain exactly one normal form, and normalization must
    /// send each member to it.
    pub fn oracle(
        &self,
        level: u32,
        max_branch: u32,
    ) -> Result<(Vec<Word>, Vec<Vec<usize>>, Report)> {
        let (words, classes) = self.system.oracle_classes(level, max_branch)?;
        let mut report = Report::new(format!(
            "congruence oracle at level {level}, branch count <= {max_branch}"
        ));
        let mut v = Vec::new();
        for class in &classes {
            let normals: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&i| self.is_normal(&words[i]))
                .collect();
            if normals.len() != 1 {
                v.push(format!(
                    "class of {} contains {} normal forms",
                    words[class[0]],
                    normals.len()
                ));
            }
        }
        report.push(Check::from_violations("one normal form per class", v));

        let mut v = Vec::new();
        for class in &classes {
            let target: Vec<&Word> = class
                .iter()
                .filter(|&&i| self.is_normal(&words[i]))
                .map(|&i| &words[i])
                .collect();
            if target.len() != 1 {
                continue; // already reported above
            }
            for &i in class {
                let nf = self.normalize(&words[i])?;
                if &nf != target[0] {
                    v.push(format!(
                        "{} normalizes to {} instead of {}",
                        words[i], nf, target[0]
                    ));
                }
            }
        }
        report.push(Check::from_violations(
            "normalize lands on the class form",
            v,
        ));
        Ok((words, classes, report))
    }

    /// Evaluates a raw word through a pair of homomorphisms into a common
    /// target, using its full compositions. Well-defined on the quotient:
    /// `eval(normalize(w)) == eval(w)`.
    pub fn eval(&self, into_left: &OperadMap, into_right: &OperadMap, w: &Word) -> Result<OpRef> {
        let target = into_left.target;
        match w {
            LabeledTree::Leaf => Ok(target.identity()),
            LabeledTree::Node { label, children } => {
                let Payload::Op(r) = &label.payload else {
                    return Err(Error::InvalidElement(
                        "cannot evaluate a generator label".into(),
                    ));
                };
                let top = match label.comp {
                    0 => into_left.apply(*r)?,
                    _ => into_right.apply(*r)?,
                };
                let args = children
                    .iter()
                    .map(|c| self.eval(into_left, into_right, c))
                    .collect::<Result<Vec<_>>>()?;
                target.full_compose(top, &args)
            }
        }
    }

    pub fn word_to_value(&self, w: &Word) -> serde_json::Value {
        match w {
            LabeledTree::Leaf => serde_json::Value::Null,
            LabeledTree::Node { label, children } => {
                let (side, name) = match (&label.payload, label.comp) {
                    (Payload::Op(r), 0) => ("p", self.side(Side::Left).name_of(*r)),
                    (Payload::Op(r), _) => ("q", self.side(Side::Right).name_of(*r)),
                    (Payload::Gen(e), _) => ("gen", e.to_string()),
                };
                serde_json::json!({
                    "side": side,
                    "id": name,
                    "children": children
                        .iter()
                        .map(|c| self.word_to_value(c))
                        .collect::<Vec<_>>(),
                })
            }
        }
    }

    pub fn word_from_value(&self, v: &serde_json::Value) -> Result<Word> {
        match v {
            serde_json::Value::Null => Ok(LabeledTree::Leaf),
            serde_json::Value::Object(map) => {
                let side = match map.get("side").and_then(serde_json::Value::as_str) {
                    Some("p") => Side::Left,
                    Some("q") => Side::Right,
                    other => {
                        return Err(Error::Schema(format!(
                            "word node side must be \"p\" or \"q\", got {other:?}"
                        )))
                    }
                };
                let id = map
                    .get("id")
                    .and_then(serde_json::Value::as_str)
                    .ok_or_else(|| Error::Schema("word node missing \"id\"".into()))?;
                let r = self.side(side).ref_by_name(id)?;
                let children = map
                    .get("children")
                    .and_then(serde_json::Value::as_array)
                    .ok_or_else(|| Error::Schema("word node missing \"children\"".into()))?
                    .iter()
                    .map(|c| self.word_from_value(c))
                    .collect::<Result<Vec<_>>>()?;
                let node = LabeledTree::Node {
                    label: WordLabel::op(side.comp(), r),
                    children,
                };
                node.validate()?;
                Ok(node)
            }
            _ => Err(Error::Schema(format!("unrecognized word value: {v}"))),
        }
    }
}

/// The idempotent two-element monoid used across the verification suites.
pub fn idempotent_monoid() -> TableOperad {
    TableOperad::monoid("idem", &["1", "a"], "1", &[vec![0, 1], vec![1, 1]])
        .expect("static table is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monoid_pair() -> OperadCoproduct {
        OperadCoproduct::new(idempotent_monoid(), idempotent_monoid())
    }

    #[test]
    fn chain_normalization_merges_and_splices() {
        let cop = monoid_pair();
        let w = cop
            .word_from_chain(&[
                (Side::Left, "a"),
                (Side::Left, "a"),
                (Side::Right, "1"),
                (Side::Right, "a"),
            ])
            .unwrap();
        let nf = cop.normalize(&w).unwrap();
        let expected = cop
            .word_from_chain(&[(Side::Left, "a"), (Side::Right, "a")])
            .unwrap();
        assert_eq!(nf, expected);
        assert!(cop.is_normal(&nf));
        // Idempotent on already-normal words.
        assert_eq!(cop.normalize(&nf).unwrap(), nf);
    }

    #[test]
    fn identity_corolla_collapses() {
        let cop = monoid_pair();
        let w = cop.word_from_chain(&[(Side::Left, "1")]).unwrap();
        assert_eq!(cop.normalize(&w).unwrap(), LabeledTree::Leaf);
        assert_eq!(cop.embed(Side::Left, "1").unwrap(), LabeledTree::Leaf);
    }

    #[test]
    fn census_matches_the_hand_derived_instance() {
        let cop = monoid_pair();
        let census = cop.census(1, 2, 1).unwrap();
        assert_eq!(census.t[2], 16);
        assert_eq!(census.c[2], 14);
        assert_eq!(census.f[1], 3);
        assert_eq!(census.f[2], 5);
        assert!(census.recursion_holds);
        // The zeroth filtration stage is the identity alone.
        assert_eq!(census.f[0], 1);
    }

    /// Independent check for the census instance: level-one words are plain
    /// strings over four letters, counted without any tree machinery.
    #[test]
    fn string_model_confirms_census_counts() {
        let letters = ["1P", "aP", "1Q", "aQ"];
        let mut t2 = 0u64;
        let mut c2 = 0u64;
        for x in letters {
            for y in letters {
                t2 += 1;
                let same_color = x.ends_with('P') == y.ends_with('P');
                let unital = x.starts_with('1') || y.starts_with('1');
                if same_color || unital {
                    c2 += 1;
                }
            }
        }
        assert_eq!((t2, c2), (16, 14));
    }

    #[test]
    fn assoc_truncated_at_one_has_only_the_identity_at_level_one() {
        let a = TableOperad::associative(1);
        let cop = OperadCoproduct::new(a.clone(), a);
        let census = cop.census(1, 2, 1).unwrap();
        assert_eq!(*census.f.last().unwrap(), 1);
    }

    #[test]
    fn oracle_classes_and_normal_forms_agree() {
        let cop = monoid_pair();
        let (words, classes, report) = cop.oracle(1, 2).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(classes.len(), 5);
        // The identity class contains both identity corollas.
        let id_class = classes
            .iter()
            .find(|cl| cl.iter().any(|&i| words[i] == LabeledTree::Leaf))
            .unwrap();
        let p1 = cop.word_from_chain(&[(Side::Left, "1")]).unwrap();
        let q1 = cop.word_from_chain(&[(Side::Right, "1")]).unwrap();
        assert!(id_class.iter().any(|&i| words[i] == p1));
        assert!(id_class.iter().any(|&i| words[i] == q1));
        // Every class is inhabited.
        assert!(classes.iter().all(|cl| !cl.is_empty()));
    }

    #[test]
    fn random_strategies_agree_with_innermost_normalization() {
        let cop = monoid_pair();
        let words = cop.system().enumerate_words(1, 3).unwrap();
        for (k, w) in words.iter().enumerate() {
            let nf = cop.normalize(w).unwrap();
            for seed in 0..3u64 {
                assert_eq!(
                    cop.normalize_random(w, seed.wrapping_mul(97).wrapping_add(k as u64))
                        .unwrap(),
                    nf,
                    "word {w}"
                );
            }
        }
    }

    #[test]
    fn composition_of_normal_forms_is_associative_and_unital() {
        let cop = monoid_pair();
        let words = cop.system().enumerate_words(1, 3).unwrap();
        let nfs: Vec<Word> = words.iter().filter(|w| cop.is_normal(w)).cloned().collect();
        for u in &nfs {
            assert_eq!(
                cop.compose(&LabeledTree::Leaf, std::slice::from_ref(u))
                    .unwrap(),
                *u
            );
            assert_eq!(cop.compose(u, &[LabeledTree::Leaf]).unwrap(), *u);
            for v in &nfs {
                let uv = cop.compose(u, std::slice::from_ref(v)).unwrap();
                for w in &nfs {
                    let lhs = cop.compose(&uv, std::slice::from_ref(w)).unwrap();
                    let vw = cop.compose(v, std::slice::from_ref(w)).unwrap();
                    let rhs = cop.compose(u, &[vw]).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn level_one_composition_merges_same_colors() {
        let cop = monoid_pair();
        let u = cop
            .word_from_chain(&[(Side::Left, "a"), (Side::Right, "a")])
            .unwrap();
        let v = cop.word_from_chain(&[(Side::Right, "a")]).unwrap();
        let got = cop.compose(&u, &[v]).unwrap();
        assert_eq!(got, u);
    }

    #[test]
    fn embeddings_are_jointly_injective() {
        let cop = monoid_pair();
        let ap = cop.embed(Side::Left, "a").unwrap();
        let aq = cop.embed(Side::Right, "a").unwrap();
        assert_ne!(ap, aq);
        // Embedding preserves composition: a o a = a on either side.
        let merged = cop.compose(&ap, std::slice::from_ref(&ap)).unwrap();
        assert_eq!(merged, ap);
    }

    #[test]
    fn stacked_embeddings_stay_alternating() {
        // Elements from opposite sides stack without rewriting.
        let e2 = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let cop = OperadCoproduct::new(e2.clone(), e2.clone());
        let max = LabeledTree::corolla(WordLabel::op(0, e2.ref_by_name("0111").unwrap()));
        let zero = LabeledTree::corolla(WordLabel::op(1, e2.ref_by_name("0").unwrap()));
        let got = cop.compose(&max, &[zero, LabeledTree::Leaf]).unwrap();
        assert!(cop.is_normal(&got));
        assert_eq!(got.branch_count(), 2);
        assert_eq!(got.level(), 1);
    }

    #[test]
    fn evaluation_respects_normalization() {
        let cop = monoid_pair();
        let target = TableOperad::endomorphism_monoid(2).unwrap();
        let not = target.ref_by_name("10").unwrap();
        let p = cop.side(Side::Left);

        // The idempotent generator cannot map to an involution under a
        // homomorphism, but the evaluation of a fixed word is still the plain
        // composite of its labels' images.
        let f = OperadMap::from_fn(p, &target, |r| {
            Ok(match p.name_of(r).as_str() {
                "a" => not,
                _ => target.identity(),
            })
        })
        .unwrap();
        let w = cop
            .word_from_chain(&[(Side::Left, "a"), (Side::Right, "a")])
            .unwrap();
        assert_eq!(cop.eval(&f, &f, &w).unwrap(), target.identity());

        // Against a genuine homomorphism the value is invariant under
        // normalization.
        let g = OperadMap::from_fn(p, &target, |r| {
            Ok(match p.name_of(r).as_str() {
                "a" => target.ref_by_name("00").unwrap(),
                _ => target.identity(),
            })
        })
        .unwrap();
        assert!(g.verify().passed());
        for w in cop.system().enumerate_words(1, 3).unwrap() {
            let direct = cop.eval(&g, &g, &w).unwrap();
            let via_nf = cop.eval(&g, &g, &cop.normalize(&w).unwrap()).unwrap();
            assert_eq!(direct, via_nf);
        }
    }

    /// Hand count for the two-sided endomorphism coproduct at level 0,
    /// branch count 2: 8 level-1 roots times 4 nullary children; collapsible
    /// are 16 same-side pairs plus 8 unital-root words minus the 4 counted
    /// twice; 12 new normal forms join the 4 corollas.
    #[test]
    fn multi_arity_census_matches_the_hand_count() {
        let e2 = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let cop = OperadCoproduct::new(e2.clone(), e2);
        let census = cop.census(0, 2, 1).unwrap();
        assert_eq!(census.t, vec![0, 4, 32]);
        assert_eq!(census.c, vec![0, 0, 20]);
        assert_eq!(census.f, vec![0, 4, 16]);
        assert!(census.recursion_holds);
        let (_, classes, report) = cop.oracle(0, 2).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(classes.len(), 16);
    }

    #[test]
    fn corollas_evaluate_to_the_image_of_their_label() {
        let cop = monoid_pair();
        let target = TableOperad::endomorphism_monoid(2).unwrap();
        let p = cop.side(Side::Left);
        let f = OperadMap::from_fn(p, &target, |r| {
            Ok(match p.name_of(r).as_str() {
                "a" => target.ref_by_name("00").unwrap(),
                _ => target.identity(),
            })
        })
        .unwrap();
        let w = cop.word_from_chain(&[(Side::Left, "a")]).unwrap();
        assert_eq!(
            cop.eval(&f, &f, &w).unwrap(),
            target.ref_by_name("00").unwrap()
        );
    }

    #[test]
    fn embeddings_separate_all_non_identity_elements() {
        let mon = TableOperad::endomorphism_monoid(2).unwrap();
        let cop = OperadCoproduct::new(mon.clone(), mon.clone());
        let mut images = Vec::new();
        for r in mon.elements(1).unwrap() {
            if r == mon.identity() {
                continue;
            }
            for side in [Side::Left, Side::Right] {
                images.push(cop.embed(side, &mon.name_of(r)).unwrap());
            }
        }
        let total = images.len();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), total);
    }

    #[test]
    fn word_json_round_trip() {
        let cop = monoid_pair();
        for w in cop.system().enumerate_words(1, 2).unwrap() {
            let v = cop.word_to_value(&w);
            assert_eq!(cop.word_from_value(&v).unwrap(), w);
        }
    }
}
