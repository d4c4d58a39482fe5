//! Right modules, bimodules, and the resolutions built from them.
//!
//! The Hochschild resolution of an operad is the simplicial graded set whose
//! degree `n` is the (n+2)-fold composition power, with faces multiplying two
//! adjacent factors and degeneracies inserting the identity. An extra
//! degeneracy prepends the identity as a new first factor and contracts the
//! resolution onto the operad; at set level this shows up as the coequalizer
//! of the two bottom faces being the operad itself.
//!
//! The enveloping operad of a free pointed bimodule is presented as a
//! three-fold coproduct, computed here two independent ways: as normal forms
//! of a three-colored word system with a free middle component, and as a
//! congruence-closure oracle on words with bimodule generators whose action
//! relations rewrite directly.
//!
//! For a free operad, the splitting resolution records every way of cutting a
//! labeled tree into a bottom part, a layer of marked generators, and top
//! parts. Its path components recover the operad itself, component by
//! component, which is checked levelwise.
//!
//! Finally, the endomorphism operad of a right module collects, per arity
//! `n`, the level-preserving maps from the n-fold graded cartesian power that
//! commute with the truncated right action.

use std::collections::BTreeMap;

use crate::coproduct::{ColoredSystem, Component};
use crate::elem::Elem;
use crate::free_operad::{free_operad_level, LabeledTree};
use crate::graded::{circ_power, GradedMap, GradedSet};
use crate::report::{Check, Report};
use crate::simplicial::SimplicialGradedSet;
use crate::table::{OpRef, OperadMap, TableOperad};
use crate::util::DisjointSet;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Surgery on composition-power elements.

/// Multiplies the two outermost layers of a composition-power element into
/// one, using the operad's compositions. `factors` is the current number of
/// layers; with two factors the result is a plain element.
pub(crate) fn combine_first_two(over: &TableOperad, e: &Elem, factors: u32) -> Result<Elem> {
    let (outer, inners) = e
        .as_circ()
        .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
    let p = over.ref_of_elem(outer)?;
    if factors == 2 {
        let refs = inners
            .iter()
            .map(|q| over.ref_of_elem(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(over.elem(over.full_compose(p, &refs)?))
    } else if inners.is_empty() {
        Ok(e.clone())
    } else {
        let outers = inners
            .iter()
            .map(|q| match q.as_circ() {
                Some((o, _)) => over.ref_of_elem(o),
                None => Err(Error::InvalidElement(format!(
                    "{q} is not a composition element"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let merged = over.full_compose(p, &outers)?;
        let mut rest = Vec::new();
        for q in inners {
            let (_, deeper) = q.as_circ().expect("checked above");
            rest.extend_from_slice(deeper);
        }
        Elem::circ(&over.elem(merged), &rest)
    }
}

/// Multiplies layers `gap + 1` and `gap + 2` (counting layers from 1).
pub(crate) fn combine_at(over: &TableOperad, e: &Elem, gap: u32, factors: u32) -> Result<Elem> {
    if gap == 0 {
        return combine_first_two(over, e, factors);
    }
    let (outer, inners) = e
        .as_circ()
        .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
    let inners = inners
        .iter()
        .map(|q| combine_at(over, q, gap - 1, factors - 1))
        .collect::<Result<Vec<_>>>()?;
    Elem::circ(outer, &inners)
}

/// Inserts an identity layer into the gap after layer `gap + 1`.
pub(crate) fn insert_identity_at(over: &TableOperad, e: &Elem, gap: u32) -> Result<Elem> {
    let id = over.elem(over.identity());
    fn rec(id: &Elem, e: &Elem, gap: u32) -> Result<Elem> {
        let (outer, inners) = e
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
        let inners = inners
            .iter()
            .map(|q| {
                if gap == 0 {
                    Elem::circ(id, std::slice::from_ref(q))
                } else {
                    rec(id, q, gap - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Elem::circ(outer, &inners)
    }
    rec(&id, e, gap)
}

/// Left action of the operad on a composition power with at least two
/// layers: the acting element becomes part of the outermost layer.
pub(crate) fn bimodule_left_merge(over: &TableOperad, p: OpRef, xs: &[Elem]) -> Result<Elem> {
    if xs.is_empty() {
        return Elem::circ(&over.elem(p), &[]);
    }
    let lifted = Elem::circ(&over.elem(p), xs)?;
    // One extra layer on top, so `factors` is anything above 2.
    combine_first_two(over, &lifted, 3)
}

/// Right action on a composition power: the acting elements are absorbed into
/// the innermost layer, distributed by slot.
pub(crate) fn bimodule_right_merge(over: &TableOperad, x: &Elem, qs: &[OpRef]) -> Result<Elem> {
    if x.level() as usize != qs.len() {
        return Err(Error::ArityMismatch {
            what: format!("right action on {x}"),
            expected: x.level() as usize,
            got: qs.len(),
        });
    }
    match x.as_circ() {
        None => {
            let a = over.ref_of_elem(x)?;
            Ok(over.elem(over.full_compose(a, qs)?))
        }
        Some((outer, inners)) => {
            let mut out = Vec::with_capacity(inners.len());
            let mut offset = 0usize;
            for q in inners {
                let take = q.level() as usize;
                out.push(bimodule_right_merge(over, q, &qs[offset..offset + take])?);
                offset += take;
            }
            Elem::circ(outer, &out)
        }
    }
}

/// The element of the (`factors`)-fold composition power consisting of
/// identities only: the basepoint of the power as a pointed bimodule.
pub(crate) fn identity_power_elem(over: &TableOperad, factors: u32) -> Elem {
    let id = over.elem(over.identity());
    let mut e = id.clone();
    for _ in 1..factors {
        e = Elem::circ(&id, std::slice::from_ref(&e)).expect("identity has one slot");
    }
    e
}

// ---------------------------------------------------------------------------
// Right modules.

/// A right module over a table operad: a carrier graded set with a partial
/// action `m . (slot, q)` defined whenever the resulting level stays within
/// the carrier's bound.
pub struct RightModule {
    name: String,
    over: TableOperad,
    carrier: GradedSet,
    backend: ModuleBackend,
}

enum ModuleBackend {
    /// The operad acting on itself by partial composition.
    OverSelf,
    Table(BTreeMap<(Elem, u32, OpRef), Elem>),
}

impl RightModule {
    /// The operad as a right module over itself, truncated at `bound`.
    pub fn over_self(op: &TableOperad, bound: u32) -> Result<RightModule> {
        let bound = bound.min(op.level_bound());
        Ok(RightModule {
            name: format!("{} over itself", op.name()),
            over: op.clone(),
            carrier: op.carrier(bound)?,
            backend: ModuleBackend::OverSelf,
        })
    }

    pub fn from_table(
        name: &str,
        over: TableOperad,
        carrier: GradedSet,
        action: BTreeMap<(Elem, u32, OpRef), Elem>,
    ) -> RightModule {
        RightModule {
            name: name.to_string(),
            over,
            carrier,
            backend: ModuleBackend::Table(action),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn over(&self) -> &TableOperad {
        &self.over
    }

    pub fn carrier(&self) -> &GradedSet {
        &self.carrier
    }

    pub fn bound(&self) -> u32 {
        self.carrier.level_bound()
    }

    pub fn act(&self, m: &Elem, slot: u32, q: OpRef) -> Result<Elem> {
        if slot == 0 || slot > m.level() {
            return Err(Error::ArityMismatch {
                what: format!("module action slot {slot} on {m}"),
                expected: m.level() as usize,
                got: slot as usize,
            });
        }
        let result_level = m.level() + q.level - 1;
        if result_level > self.bound() {
            return Err(Error::TruncationExceeded {
                what: format!("action of {} on {m}", self.over.name_of(q)),
                needed: result_level,
                bound: self.bound(),
            });
        }
        match &self.backend {
            ModuleBackend::OverSelf => {
                let a = self.over.ref_of_elem(m)?;
                Ok(self.over.elem(self.over.partial_compose(a, slot, q)?))
            }
            ModuleBackend::Table(t) => t.get(&(m.clone(), slot, q)).cloned().ok_or_else(|| {
                Error::InvalidElement(format!(
                    "module action on {m} at slot {slot} is not in the table"
                ))
            }),
        }
    }

    /// Unit and associativity of the action, wherever defined.
    pub fn verify(&self) -> Report {
        let mut report = Report::new(format!("right module axioms for {}", self.name));
        let id = self.over.identity();

        let mut v = Vec::new();
        for m in self.carrier.iter() {
            for slot in 1..=m.level() {
                match self.act(m, slot, id) {
                    Ok(r) if &r == m => {}
                    Ok(r) => v.push(format!("{m} . (slot {slot}, id) = {r}, expected {m}")),
                    Err(e) => v.push(e.to_string()),
                }
            }
        }
        report.push(Check::from_violations("unit law", v));

        let mut v = Vec::new();
        for m in self.carrier.iter() {
            let n = m.level();
            for i in 1..=n {
                for la in 0..=self.over.level_bound() {
                    for a in self.over.elements(la).unwrap_or_default() {
                        let Ok(ma) = self.act(m, i, a) else { continue };
                        for lb in 0..=self.over.level_bound() {
                            for b in self.over.elements(lb).unwrap_or_default() {
                                for j in 1..=ma.level() {
                                    let Ok(lhs) = self.act(&ma, j, b) else {
                                        continue;
                                    };
                                    let rhs = if j < i {
                                        self.act(m, j, b)
                                            .and_then(|mb| self.act(&mb, i + lb - 1, a))
                                    } else if j < i + la {
                                        self.over
                                            .partial_compose(a, j - i + 1, b)
                                            .and_then(|ab| self.act(m, i, ab))
                                    } else {
                                        self.act(m, j - la + 1, b)
                                            .and_then(|mb| self.act(&mb, i, a))
                                    };
                                    match rhs {
                                        Ok(r) if r == lhs => {}
                                        Ok(r) => v.push(format!(
                                            "({m} . {}) . {}: got {lhs}, expected {r}",
                                            self.over.name_of(a),
                                            self.over.name_of(b)
                                        )),
                                        Err(_) => {}
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        report.push(Check::from_violations("associativity", v));
        report
    }
}

// ---------------------------------------------------------------------------
// The Hochschild resolution.

pub struct Hochschild {
    pub operad: TableOperad,
    pub bound: u32,
    pub simplicial: SimplicialGradedSet,
    /// The extra degeneracy prepending the identity, one map per degree below
    /// the top.
    pub extra_degeneracies: Vec<GradedMap>,
    /// Multiplication of the two factors of degree zero.
    pub augmentation: GradedMap,
}

/// Builds degrees `0..=n_max` of the Hochschild resolution of `p`, truncated
/// at `bound`, with all simplicial structure maps materialized.
///
/// Degrees are restricted to the face-closed part of each power: an element
/// is kept only if every iterated merge of adjacent layers stays within the
/// truncation. (The final composite always does; middle-layer merges need
/// not.) Degeneracy images remain face-closed, so all structure maps are
/// total on the kept elements.
pub fn hochschild(p: &TableOperad, n_max: u32, bound: u32) -> Result<Hochschild> {
    let bound = bound.min(p.level_bound());
    let carrier = p.carrier(bound)?;
    let mut degrees = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        degrees.push(circ_power(&carrier, n + 2, bound));
    }
    for n in 1..=n_max as usize {
        let mut kept: Vec<Vec<Elem>> = vec![Vec::new(); bound as usize + 1];
        let factors = n as u32 + 2;
        for e in degrees[n].iter() {
            let closed = (0..=n as u32).all(|i| match combine_at(p, e, i, factors) {
                Ok(img) => degrees[n - 1].contains(&img),
                Err(_) => false,
            });
            if closed {
                kept[e.level() as usize].push(e.clone());
            }
        }
        degrees[n] = GradedSet::new(kept)?;
    }

    let mut faces = vec![Vec::new()];
    for n in 1..=n_max as usize {
        let factors = n as u32 + 2;
        let mut maps = Vec::with_capacity(n + 1);
        for i in 0..=n {
            maps.push(GradedMap::from_fn(&degrees[n], &degrees[n - 1], |e| {
                combine_at(p, e, i as u32, factors)
            })?);
        }
        faces.push(maps);
    }

    let mut degeneracies = Vec::new();
    for n in 0..n_max as usize {
        let mut maps = Vec::with_capacity(n + 1);
        for i in 0..=n {
            maps.push(GradedMap::from_fn(&degrees[n], &degrees[n + 1], |e| {
                insert_identity_at(p, e, i as u32)
            })?);
        }
        degeneracies.push(maps);
    }
    degeneracies.push(Vec::new());

    let id = p.elem(p.identity());
    let mut extra = Vec::new();
    for n in 0..n_max as usize {
        extra.push(GradedMap::from_fn(&degrees[n], &degrees[n + 1], |e| {
            Elem::circ(&id, std::slice::from_ref(e))
        })?);
    }

    let augmentation = GradedMap::from_fn(&degrees[0], &carrier, |e| combine_first_two(p, e, 2))?;

    Ok(Hochschild {
        operad: p.clone(),
        bound,
        simplicial: SimplicialGradedSet::new(degrees, faces, degeneracies)?,
        extra_degeneracies: extra,
        augmentation,
    })
}

impl Hochschild {
    /// Simplicial identities, the extra-degeneracy laws, and the contraction
    /// of the bottom pair onto the operad.
    pub fn check(&self) -> Report {
        let mut report = Report::new(format!(
            "Hochschild resolution of {} (degrees 0..={}, levels <= {})",
            self.operad.name(),
            self.simplicial.top_degree(),
            self.bound
        ));
        report.extend(self.simplicial.check_identities());

        // d_0 after the extra degeneracy is the identity.
        let mut v = Vec::new();
        for (n, s) in self.extra_degeneracies.iter().enumerate() {
            match s.then(self.simplicial.face(n + 1, 0)) {
                Ok(m) if m.is_identity() => {}
                Ok(_) => v.push(format!("d_0 s_extra at degree {n} is not the identity")),
                Err(e) => v.push(e.to_string()),
            }
        }
        report.push(Check::from_violations("extra degeneracy contracts", v));

        // The extra degeneracy shifts the ordinary faces by one.
        let mut v = Vec::new();
        for n in 1..self.extra_degeneracies.len() {
            for i in 0..=n {
                let lhs = self.extra_degeneracies[n].then(self.simplicial.face(n + 1, i + 1));
                let rhs = self
                    .simplicial
                    .face(n, i)
                    .then(&self.extra_degeneracies[n - 1]);
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => {
                        for (x, lx) in l.entries() {
                            if r.apply(x).ok() != Some(lx) {
                                v.push(format!(
                                    "extra degeneracy does not shift d_{i} at degree {n} on {x}"
                                ));
                            }
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => v.push(e.to_string()),
                }
            }
        }
        report.push(Check::from_violations("extra degeneracy shifts faces", v));

        // Augmentation coequalizes the two bottom faces and identifies the
        // quotient with the operad.
        let mut v = Vec::new();
        if self.simplicial.top_degree() >= 1 {
            match self.bottom_coequalizer() {
                Ok(classes_by_level) => {
                    for (level, classes) in classes_by_level.iter().enumerate() {
                        let expected = self.operad.level_size(level as u32);
                        if classes.len() as u64 != expected {
                            v.push(format!(
                                "level {level}: {} classes, expected {expected}",
                                classes.len()
                            ));
                        }
                        for class in classes {
                            let values: std::collections::BTreeSet<&Elem> = class
                                .iter()
                                .map(|e| self.augmentation.apply(e).expect("total"))
                                .collect();
                            if values.len() != 1 {
                                v.push(format!(
                                    "augmentation is not constant on the class of {}",
                                    class[0]
                                ));
                            }
                        }
                    }
                }
                Err(e) => v.push(e.to_string()),
            }
        }
        report.push(Check::from_violations(
            "bottom coequalizer is the operad",
            v,
        ));
        report
    }

    /// Classes of degree-zero elements under the relation generated by the
    /// two faces out of degree one, grouped by level.
    pub fn bottom_coequalizer(&self) -> Result<Vec<Vec<Vec<Elem>>>> {
        let h0 = self.simplicial.degree(0);
        let d0 = self.simplicial.face(1, 0);
        let d1 = self.simplicial.face(1, 1);
        let mut out = Vec::new();
        for level in 0..=h0.level_bound() {
            let elems = h0.level(level);
            let index: BTreeMap<&Elem, usize> = elems.iter().zip(0..).collect();
            let mut ds = DisjointSet::new(elems.len());
            for w in self.simplicial.degree(1).level(level) {
                let a = d0.apply(w)?;
                let b = d1.apply(w)?;
                ds.union(index[a], index[b]);
            }
            out.push(
                ds.classes(elems.len())
                    .into_iter()
                    .map(|class| class.into_iter().map(|i| elems[i].clone()).collect())
                    .collect(),
            );
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Enveloping operads of free pointed bimodules.

/// The enveloping operad of the free pointed bimodule on `gens`, presented as
/// a three-fold coproduct: two table components and a free middle component
/// whose basepoint splices away.
pub struct FreeEnvelope {
    system: ColoredSystem,
}

pub fn envelope_free(
    left: &TableOperad,
    gens: &GradedSet,
    basepoint: Option<&Elem>,
    right: &TableOperad,
) -> FreeEnvelope {
    let system = ColoredSystem::new(vec![
        ("p".to_string(), Component::Table(left.clone())),
        ("q".to_string(), Component::Table(right.clone())),
        (
            "gen".to_string(),
            Component::Free {
                gens: gens.clone(),
                basepoint: basepoint.cloned(),
            },
        ),
    ]);
    FreeEnvelope { system }
}

/// The enveloping operad of degree `n` of the Hochschild resolution of `p`:
/// two copies of `p` around the pointed free operad on the n-fold composition
/// power, whose basepoint is the all-identities element.
pub fn envelope_of_hochschild(p: &TableOperad, n: u32, bound: u32) -> Result<FreeEnvelope> {
    let bound = bound.min(p.level_bound());
    let gens = circ_power(&p.carrier(bound)?, n, bound);
    let basepoint = identity_power_elem(p, n.max(1));
    let basepoint = if n == 0 { Elem::point(1) } else { basepoint };
    if !gens.contains(&basepoint) {
        return Err(Error::InvalidElement(format!(
            "basepoint {basepoint} missing from the generator set"
        )));
    }
    Ok(envelope_free(p, &gens, Some(&basepoint), p))
}

impl FreeEnvelope {
    pub fn system(&self) -> &ColoredSystem {
        &self.system
    }

    pub fn normalize(&self, w: &crate::coproduct::Word) -> Result<crate::coproduct::Word> {
        self.system.normalize(w)
    }

    pub fn is_normal(&self, w: &crate::coproduct::Word) -> bool {
        self.system.is_normal(w)
    }

    /// Number of distinct normal forms reachable from words of branch count
    /// at most `k`, for each `k` up to the bound.
    pub fn census_by_branch(&self, level: u32, max_branch: u32) -> Result<Vec<u64>> {
        let words = self.system.enumerate_words(level, max_branch)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut by_k: Vec<Vec<crate::coproduct::Word>> = vec![Vec::new(); max_branch as usize + 1];
        for w in words {
            let k = w.branch_count() as usize;
            let nf = self.system.normalize(&w)?;
            by_k[k].push(nf);
        }
        let mut out = Vec::with_capacity(max_branch as usize + 1);
        for bucket in by_k {
            seen.extend(bucket);
            out.push(seen.len() as u64);
        }
        Ok(out)
    }
}

/// Independent route to the same censuses: words over two copies of `p` and
/// the carrier of the (n+2)-fold power as bimodule generators, with the
/// action relations as rewrites, classified by congruence closure. Returns
/// the number of classes whose smallest member has branch count at most `k`.
pub fn envelope_oracle_census(
    p: &TableOperad,
    n: u32,
    bound: u32,
    level: u32,
    max_branch: u32,
) -> Result<Vec<u64>> {
    let bound = bound.min(p.level_bound());
    let carrier = circ_power(&p.carrier(bound)?, n + 2, bound);
    let basepoint = identity_power_elem(p, n + 2);
    let system = ColoredSystem::new(vec![
        ("p".to_string(), Component::Table(p.clone())),
        ("q".to_string(), Component::Table(p.clone())),
        (
            "h".to_string(),
            Component::Bimodule {
                over: p.clone(),
                carrier,
                basepoint,
                left: 0,
                right: 1,
            },
        ),
    ]);
    let (words, classes) = system.oracle_classes(level, max_branch)?;
    let mut out = Vec::with_capacity(max_branch as usize + 1);
    for k in 0..=max_branch {
        let count = classes
            .iter()
            .filter(|class| {
                class
                    .iter()
                    .map(|&i| words[i].branch_count())
                    .min()
                    .is_some_and(|m| m <= k)
            })
            .count();
        out.push(count as u64);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The splitting resolution of a free operad.

/// One element of the splitting resolution in simplicial degree `k`: a bottom
/// labeled tree, one slot per bottom leaf, each slot holding either a marked
/// generator (with a copy index in `1..=k`) over its own top trees, or a
/// plain pass-through top tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Splitting {
    bottom: LabeledTree<Elem>,
    slots: Vec<Slot>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Through(LabeledTree<Elem>),
    Marked {
        copy: u32,
        generator: Elem,
        tops: Vec<LabeledTree<Elem>>,
    },
}

impl Splitting {
    fn level(&self) -> u32 {
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Through(t) => t.level(),
                Slot::Marked { tops, .. } => tops.iter().map(LabeledTree::level).sum(),
            })
            .sum()
    }

    /// The composite labeled tree, forgetting the splitting.
    fn composite(&self) -> Result<LabeledTree<Elem>> {
        let args = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Through(t) => Ok(t.clone()),
                Slot::Marked {
                    generator, tops, ..
                } => LabeledTree::corolla(generator.clone()).graft(tops),
            })
            .collect::<Result<Vec<_>>>()?;
        self.bottom.graft(&args)
    }

    fn encode(&self) -> Elem {
        let slots: Vec<Elem> = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Through(t) => {
                    let inner = Elem::tree(t.clone());
                    Elem::circ(&Elem::point(1), std::slice::from_ref(&inner))
                        .expect("one inner for the pass-through point")
                }
                Slot::Marked {
                    copy,
                    generator,
                    tops,
                } => {
                    let tops: Vec<Elem> = tops.iter().map(|t| Elem::tree(t.clone())).collect();
                    Elem::circ(&Elem::tag(*copy, generator), &tops)
                        .expect("tops match the generator level")
                }
            })
            .collect();
        Elem::circ(&Elem::tree(self.bottom.clone()), &slots).expect("one slot per bottom leaf")
    }

    fn decode(e: &Elem) -> Result<Splitting> {
        let (bottom, slots) = e
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a splitting")))?;
        let bottom = bottom
            .as_tree()
            .ok_or_else(|| Error::InvalidElement("splitting bottom must be a tree".into()))?
            .clone();
        let slots = slots
            .iter()
            .map(|s| {
                let (head, tops) = s
                    .as_circ()
                    .ok_or_else(|| Error::InvalidElement("bad splitting slot".into()))?;
                if head.is_point() {
                    let t = tops[0]
                        .as_tree()
                        .ok_or_else(|| Error::InvalidElement("bad pass-through top".into()))?;
                    Ok(Slot::Through(t.clone()))
                } else {
                    let (copy, generator) = head
                        .as_tag()
                        .ok_or_else(|| Error::InvalidElement("bad marked generator".into()))?;
                    let tops = tops
                        .iter()
                        .map(|t| {
                            t.as_tree()
                                .cloned()
                                .ok_or_else(|| Error::InvalidElement("bad marked top".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Slot::Marked {
                        copy,
                        generator: generator.clone(),
                        tops,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Splitting { bottom, slots })
    }

    /// Face `i` in degree `k`: marked copies relabel along the monotone
    /// surjection; the vanishing copy is absorbed into the bottom (for
    /// `i = 0`) or into its top trees (for `i = k`).
    fn face(&self, i: u32, k: u32) -> Result<Splitting> {
        let mut bottom = self.bottom.clone();
        let mut slots: Vec<Slot> = Vec::new();
        let mut graft_args: Vec<LabeledTree<Elem>> = Vec::new();
        for slot in &self.slots {
            match slot {
                Slot::Through(t) => {
                    graft_args.push(LabeledTree::Leaf);
                    slots.push(Slot::Through(t.clone()));
                }
                Slot::Marked {
                    copy,
                    generator,
                    tops,
                } => {
                    let absorb_down = i == 0 && *copy == 1;
                    let absorb_up = i == k && *copy == k;
                    if absorb_down {
                        graft_args.push(LabeledTree::corolla(generator.clone()));
                        for t in tops {
                            slots.push(Slot::Through(t.clone()));
                        }
                    } else if absorb_up {
                        graft_args.push(LabeledTree::Leaf);
                        let merged = LabeledTree::corolla(generator.clone()).graft(tops)?;
                        slots.push(Slot::Through(merged));
                    } else {
                        graft_args.push(LabeledTree::Leaf);
                        let copy = if *copy > i { copy - 1 } else { *copy };
                        slots.push(Slot::Marked {
                            copy,
                            generator: generator.clone(),
                            tops: tops.clone(),
                        });
                    }
                }
            }
        }
        bottom = bottom.graft(&graft_args)?;
        Ok(Splitting { bottom, slots })
    }

    /// Degeneracy `i`: copies above `i` shift up, leaving copy `i + 1` empty.
    fn degeneracy(&self, i: u32) -> Splitting {
        let slots = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Through(t) => Slot::Through(t.clone()),
                Slot::Marked {
                    copy,
                    generator,
                    tops,
                } => Slot::Marked {
                    copy: if *copy > i { copy + 1 } else { *copy },
                    generator: generator.clone(),
                    tops: tops.clone(),
                },
            })
            .collect();
        Splitting {
            bottom: self.bottom.clone(),
            slots,
        }
    }
}

pub struct SplittingResolution {
    pub generators: GradedSet,
    pub simplicial: SimplicialGradedSet,
    pub max_level: u32,
    pub max_nodes: u32,
}

/// Builds degrees `0..=k_max` of the splitting resolution of the free operad
/// on `gens`: elements are encoded splittings with at most `max_nodes`
/// labeled nodes in total.
pub fn splitting_resolution(
    gens: &GradedSet,
    k_max: u32,
    max_level: u32,
    max_nodes: u32,
) -> Result<SplittingResolution> {
    let max_arity = gens.level_bound();
    let mut degrees = Vec::with_capacity(k_max as usize + 1);
    let mut raw: Vec<Vec<Splitting>> = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let mut elems: Vec<Vec<Elem>> = vec![Vec::new(); max_level as usize + 1];
        let mut all = Vec::new();
        // Bottom levels can exceed the composite level only through slots of
        // level zero, each of which costs at least one node.
        for j in 0..=(max_level + max_nodes) {
            for bottom in free_operad_level(gens, j, max_nodes, max_arity) {
                let budget = max_nodes - bottom.branch_count();
                for slots in enumerate_slots(gens, k, j as usize, max_level, budget, max_arity) {
                    let s = Splitting {
                        bottom: bottom.clone(),
                        slots,
                    };
                    let level = s.level();
                    if level <= max_level {
                        elems[level as usize].push(s.encode());
                        all.push(s);
                    }
                }
            }
        }
        degrees.push(GradedSet::new(elems)?);
        raw.push(all);
    }

    let mut faces = vec![Vec::new()];
    for k in 1..=k_max as usize {
        let mut maps = Vec::with_capacity(k + 1);
        for i in 0..=k {
            maps.push(GradedMap::from_fn(&degrees[k], &degrees[k - 1], |e| {
                Ok(Splitting::decode(e)?.face(i as u32, k as u32)?.encode())
            })?);
        }
        faces.push(maps);
    }

    let mut degeneracies = Vec::new();
    for k in 0..k_max as usize {
        let mut maps = Vec::with_capacity(k + 1);
        for i in 0..=k {
            maps.push(GradedMap::from_fn(&degrees[k], &degrees[k + 1], |e| {
                Ok(Splitting::decode(e)?.degeneracy(i as u32).encode())
            })?);
        }
        degeneracies.push(maps);
    }
    degeneracies.push(Vec::new());

    let _ = raw;
    Ok(SplittingResolution {
        generators: gens.clone(),
        simplicial: SimplicialGradedSet::new(degrees, faces, degeneracies)?,
        max_level,
        max_nodes,
    })
}

fn enumerate_slots(
    gens: &GradedSet,
    copies: u32,
    count: usize,
    max_level: u32,
    max_nodes: u32,
    max_arity: u32,
) -> Vec<Vec<Slot>> {
    if count == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (slot, level, nodes) in slot_choices(gens, copies, max_level, max_nodes, max_arity) {
        for mut rest in enumerate_slots(
            gens,
            copies,
            count - 1,
            max_level - level,
            max_nodes - nodes,
            max_arity,
        ) {
            let mut v = Vec::with_capacity(count);
            v.push(slot.clone());
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn slot_choices(
    gens: &GradedSet,
    copies: u32,
    max_level: u32,
    max_nodes: u32,
    max_arity: u32,
) -> Vec<(Slot, u32, u32)> {
    let mut out = Vec::new();
    for level in 0..=max_level {
        for t in free_operad_level(gens, level, max_nodes, max_arity) {
            let nodes = t.branch_count();
            out.push((Slot::Through(t), level, nodes));
        }
    }
    if max_nodes >= 1 {
        for glevel in 0..=gens.level_bound() {
            for g in gens.level(glevel) {
                for copy in 1..=copies {
                    for tops in
                        enumerate_tops(gens, glevel as usize, max_level, max_nodes - 1, max_arity)
                    {
                        let level: u32 = tops.iter().map(LabeledTree::level).sum();
                        let nodes = 1 + tops.iter().map(LabeledTree::branch_count).sum::<u32>();
                        out.push((
                            Slot::Marked {
                                copy,
                                generator: g.clone(),
                                tops,
                            },
                            level,
                            nodes,
                        ));
                    }
                }
            }
        }
    }
    out
}

fn enumerate_tops(
    gens: &GradedSet,
    count: usize,
    max_level: u32,
    max_nodes: u32,
    max_arity: u32,
) -> Vec<Vec<LabeledTree<Elem>>> {
    if count == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for level in 0..=max_level {
        for t in free_operad_level(gens, level, max_nodes, max_arity) {
            let nodes = t.branch_count();
            for mut rest in enumerate_tops(
                gens,
                count - 1,
                max_level - level,
                max_nodes - nodes,
                max_arity,
            ) {
                let mut v = Vec::with_capacity(count);
                v.push(t.clone());
                v.append(&mut rest);
                out.push(v);
            }
        }
    }
    out
}

impl SplittingResolution {
    /// Path components of the bottom pair, per level: classes of degree-zero
    /// splittings under the two faces out of degree one.
    pub fn pi0(&self) -> Result<Vec<Vec<Vec<Elem>>>> {
        let j0 = self.simplicial.degree(0);
        let d0 = self.simplicial.face(1, 0);
        let d1 = self.simplicial.face(1, 1);
        let mut out = Vec::new();
        for level in 0..=j0.level_bound() {
            let elems = j0.level(level);
            let index: BTreeMap<&Elem, usize> = elems.iter().zip(0..).collect();
            let mut ds = DisjointSet::new(elems.len());
            for w in self.simplicial.degree(1).level(level) {
                let a = d0.apply(w)?;
                let b = d1.apply(w)?;
                ds.union(index[a], index[b]);
            }
            out.push(
                ds.classes(elems.len())
                    .into_iter()
                    .map(|class| class.into_iter().map(|i| elems[i].clone()).collect())
                    .collect(),
            );
        }
        Ok(out)
    }

    /// Checks that path components biject with the free operad levelwise (by
    /// grafting each splitting back together) and that the component of every
    /// composite is connected. Returns the per-level component counts.
    pub fn pi0_report(&self) -> Result<(Vec<u64>, Report)> {
        let mut report = Report::new("splitting resolution components");
        let classes_by_level = self.pi0()?;
        let mut counts = Vec::new();

        let mut v = Vec::new();
        for (level, classes) in classes_by_level.iter().enumerate() {
            counts.push(classes.len() as u64);
            let expected = free_operad_level(
                &self.generators,
                level as u32,
                self.max_nodes,
                self.generators.level_bound(),
            )
            .len();
            if classes.len() != expected {
                v.push(format!(
                    "level {level}: {} components, expected {expected}",
                    classes.len()
                ));
            }
        }
        report.push(Check::from_violations("components match the operad", v));

        let mut v = Vec::new();
        for classes in &classes_by_level {
            let mut by_composite: BTreeMap<LabeledTree<Elem>, usize> = BTreeMap::new();
            for class in classes {
                let mut composites = std::collections::BTreeSet::new();
                for e in class {
                    composites.insert(Splitting::decode(e)?.composite()?);
                }
                if composites.len() != 1 {
                    v.push(format!(
                        "component of {} mixes {} composites",
                        class[0],
                        composites.len()
                    ));
                    continue;
                }
                let l = composites.into_iter().next().expect("one composite");
                *by_composite.entry(l).or_insert(0) += 1;
            }
            for (l, n) in by_composite {
                if n != 1 {
                    v.push(format!("composite {l} splits into {n} components"));
                }
            }
        }
        report.push(Check::from_violations("each component is connected", v));
        Ok((counts, report))
    }

    /// The degree-zero splittings of a given composite; for the trivial tree
    /// this is a single point.
    pub fn fiber_of(&self, composite: &LabeledTree<Elem>) -> Result<Vec<Elem>> {
        let level = composite.level();
        let mut out = Vec::new();
        for e in self.simplicial.degree(0).level(level) {
            if &Splitting::decode(e)?.composite()? == composite {
                out.push(e.clone());
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Endomorphism operads of right modules.

pub struct ModuleEndomorphisms {
    pub module_name: String,
    /// Per arity, the equivariant maps, each a total assignment on the
    /// bounded tuples.
    pub maps: Vec<Vec<BTreeMap<Vec<Elem>, Elem>>>,
    pub operad: TableOperad,
}

/// Enumerates, for each arity up to `n_max`, the level-preserving maps from
/// the arity-fold graded cartesian power of the module into the module that
/// commute with the truncated right action, and assembles them into an
/// operad under substitution. `search_cap` bounds the backtracking.
pub fn module_endomorphism_operad(
    module: &RightModule,
    n_max: u32,
    search_cap: u64,
) -> Result<ModuleEndomorphisms> {
    if n_max == 0 {
        return Err(Error::InvalidElement(
            "endomorphism operad needs at least arity 1 for its identity".into(),
        ));
    }
    let bound = module.bound();
    let mut maps: Vec<Vec<BTreeMap<Vec<Elem>, Elem>>> = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        maps.push(equivariant_maps(module, n, search_cap)?);
    }

    // Assemble the operad: substitution composition, identity at arity 1.
    let mut level_names: Vec<Vec<String>> = Vec::with_capacity(n_max as usize + 1);
    for (n, list) in maps.iter().enumerate() {
        level_names.push((0..list.len()).map(|k| format!("f{n}_{k}")).collect());
    }
    let identity_map: BTreeMap<Vec<Elem>, Elem> = tuples(module, 1)
        .into_iter()
        .map(|t| (t.clone(), t[0].clone()))
        .collect();
    let id_index = maps[1]
        .iter()
        .position(|m| *m == identity_map)
        .ok_or_else(|| {
            Error::InvalidElement("identity map is missing from the enumeration".into())
        })?;

    let mut comp = BTreeMap::new();
    for n in 1..=n_max {
        for (ai, a) in maps[n as usize].iter().enumerate() {
            for m in 0..=n_max + 1 - n {
                let target = n + m - 1;
                if target > n_max {
                    continue;
                }
                for (bi, b) in maps[m as usize].iter().enumerate() {
                    for slot in 1..=n {
                        let composite = substitute(module, a, n, b, m, slot, bound)?;
                        let ci = maps[target as usize]
                            .iter()
                            .position(|c| *c == composite)
                            .ok_or_else(|| {
                                Error::InvalidElement(format!(
                                    "composite of f{n}_{ai} and f{m}_{bi} is not equivariant"
                                ))
                            })?;
                        comp.insert(
                            (OpRef::new(n, ai as u64), slot, OpRef::new(m, bi as u64)),
                            OpRef::new(target, ci as u64),
                        );
                    }
                }
            }
        }
    }

    let operad = TableOperad::from_table(
        &format!("end[{}]", module.name()),
        level_names,
        OpRef::new(1, id_index as u64),
        comp,
    )?;
    Ok(ModuleEndomorphisms {
        module_name: module.name().to_string(),
        maps,
        operad,
    })
}

/// All tuples of module elements of the given length with total level within
/// the module bound, in canonical order.
fn tuples(module: &RightModule, n: u32) -> Vec<Vec<Elem>> {
    fn rec(
        module: &RightModule,
        n: u32,
        budget: u32,
        out: &mut Vec<Vec<Elem>>,
        cur: &mut Vec<Elem>,
    ) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for level in 0..=budget {
            for e in module.carrier().level(level) {
                cur.push(e.clone());
                rec(module, n - 1, budget - level, out, cur);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(module, n, module.bound(), &mut out, &mut Vec::new());
    out.sort();
    out
}

fn tuple_level(t: &[Elem]) -> u32 {
    t.iter().map(Elem::level).sum()
}

/// Applies the right action at a global slot of a tuple.
fn act_tuple(module: &RightModule, t: &[Elem], slot: u32, q: OpRef) -> Result<Vec<Elem>> {
    let mut offset = 0u32;
    for (k, e) in t.iter().enumerate() {
        let width = e.level();
        if slot <= offset + width {
            let mut out = t.to_vec();
            out[k] = module.act(e, slot - offset, q)?;
            return Ok(out);
        }
        offset += width;
    }
    Err(Error::ArityMismatch {
        what: "tuple action".into(),
        expected: offset as usize,
        got: slot as usize,
    })
}

/// Backtracking enumeration of the equivariant maps of one arity: deduce
/// forced values along action edges, branch on the smallest unassigned tuple,
/// and verify every completed assignment by a full sweep.
fn equivariant_maps(
    module: &RightModule,
    n: u32,
    search_cap: u64,
) -> Result<Vec<BTreeMap<Vec<Elem>, Elem>>> {
    let all = tuples(module, n);
    if all.is_empty() {
        return Ok(vec![BTreeMap::new()]);
    }
    let bound = module.bound();
    let over = module.over().clone();

    // Precompute action edges (tuple index, slot, q) -> tuple index.
    let index: BTreeMap<&[Elem], usize> = all.iter().map(Vec::as_slice).zip(0..).collect();
    let mut edges: Vec<Vec<(u32, OpRef, usize)>> = vec![Vec::new(); all.len()];
    for (ti, t) in all.iter().enumerate() {
        let lv = tuple_level(t);
        for ql in 0..=over.level_bound() {
            if lv + ql < 1 || lv + ql - 1 > bound {
                continue;
            }
            for q in over.elements(ql)? {
                for slot in 1..=lv {
                    if let Ok(t2) = act_tuple(module, t, slot, q) {
                        let tj = index[t2.as_slice()];
                        edges[ti].push((slot, q, tj));
                    }
                }
            }
        }
    }

    let mut results = Vec::new();
    let mut explored = 0u64;
    let mut assignment: Vec<Option<Elem>> = vec![None; all.len()];
    search(
        module,
        &all,
        &edges,
        &mut assignment,
        &mut results,
        &mut explored,
        search_cap,
    )?;

    // Full verification sweep; discard anything inconsistent.
    let mut verified = Vec::new();
    'candidate: for cand in results {
        for (ti, t) in all.iter().enumerate() {
            let val = &cand[ti];
            for (slot, q, tj) in &edges[ti] {
                let expected = module.act(val, *slot, *q)?;
                if cand[*tj] != expected {
                    continue 'candidate;
                }
            }
            let _ = t;
        }
        let map: BTreeMap<Vec<Elem>, Elem> =
            all.iter().cloned().zip(cand.iter().cloned()).collect();
        verified.push(map);
    }
    verified.sort();
    verified.dedup();
    Ok(verified)
}

fn search(
    module: &RightModule,
    all: &[Vec<Elem>],
    edges: &[Vec<(u32, OpRef, usize)>],
    assignment: &mut Vec<Option<Elem>>,
    results: &mut Vec<Vec<Elem>>,
    explored: &mut u64,
    cap: u64,
) -> Result<()> {
    *explored += 1;
    if *explored > cap {
        return Err(Error::Blowup(format!(
            "equivariant map search exceeded {cap} states"
        )));
    }

    // Deduce forced values until a fixpoint or a contradiction.
    let mut frontier: Vec<usize> = (0..all.len())
        .filter(|&i| assignment[i].is_some())
        .collect();
    let mut local: Vec<(usize, Elem)> = Vec::new();
    while let Some(ti) = frontier.pop() {
        let val = assignment[ti].clone().expect("frontier is assigned");
        for (slot, q, tj) in &edges[ti] {
            let expected = module.act(&val, *slot, *q)?;
            match &assignment[*tj] {
                Some(v) if *v == expected => {}
                Some(_) => {
                    for (i, _) in local {
                        assignment[i] = None;
                    }
                    return Ok(()); // contradiction: dead branch
                }
                None => {
                    assignment[*tj] = Some(expected.clone());
                    local.push((*tj, expected));
                    frontier.push(*tj);
                }
            }
        }
    }

    match assignment.iter().position(Option::is_none) {
        None => {
            results.push(
                assignment
                    .iter()
                    .map(|v| v.clone().expect("complete"))
                    .collect(),
            );
        }
        Some(ti) => {
            let level = tuple_level(&all[ti]);
            let candidates: Vec<Elem> = module.carrier().level(level).to_vec();
            for c in candidates {
                assignment[ti] = Some(c);
                search(module, all, edges, assignment, results, explored, cap)?;
                assignment[ti] = None;
            }
        }
    }

    for (i, _) in local {
        assignment[i] = None;
    }
    Ok(())
}

fn substitute(
    module: &RightModule,
    a: &BTreeMap<Vec<Elem>, Elem>,
    n: u32,
    b: &BTreeMap<Vec<Elem>, Elem>,
    m: u32,
    slot: u32,
    _bound: u32,
) -> Result<BTreeMap<Vec<Elem>, Elem>> {
    let target = n + m - 1;
    let mut out = BTreeMap::new();
    for t in tuples(module, target) {
        let s = slot as usize - 1;
        let mid = t[s..s + m as usize].to_vec();
        let bval = b
            .get(&mid)
            .ok_or_else(|| Error::InvalidElement("substitution met an unbounded tuple".into()))?;
        let mut outer = Vec::with_capacity(n as usize);
        outer.extend_from_slice(&t[..s]);
        outer.push(bval.clone());
        outer.extend_from_slice(&t[s + m as usize..]);
        let aval = a
            .get(&outer)
            .ok_or_else(|| Error::InvalidElement("substitution met an unbounded tuple".into()))?;
        out.insert(t, aval.clone());
    }
    Ok(out)
}

impl ModuleEndomorphisms {
    /// For a module that is the operad over itself: the comparison sending
    /// each operad element to the map it induces by full composition, checked
    /// to be a homomorphism inverse to evaluation at the identity tuple.
    pub fn compare_with_operad(&self, module: &RightModule) -> Result<Report> {
        let mut report = Report::new(format!(
            "endomorphisms of {} against the operad",
            module.name()
        ));
        let over = module.over();
        let n_max = self.operad.level_bound();
        let trunc = truncated_operad(over, n_max)?;

        let mut assignment = BTreeMap::new();
        let mut v = Vec::new();
        for n in 0..=n_max {
            for q in trunc.elements(n)? {
                let q_full = over.ref_by_name(&trunc.name_of(q))?;
                let mut table = BTreeMap::new();
                for t in tuples(module, n) {
                    let refs = t
                        .iter()
                        .map(|e| over.ref_of_elem(e))
                        .collect::<Result<Vec<_>>>()?;
                    table.insert(t, over.elem(over.full_compose(q_full, &refs)?));
                }
                match self.maps[n as usize].iter().position(|m| *m == table) {
                    Some(k) => {
                        assignment.insert(q, OpRef::new(n, k as u64));
                    }
                    None => v.push(format!(
                        "induced map of {} is not among the equivariant maps",
                        over.name_of(q_full)
                    )),
                }
            }
        }
        report.push(Check::from_violations("induced maps are equivariant", v));
        if !report.passed() {
            return Ok(report);
        }

        let cmp = OperadMap::new(&trunc, &self.operad, assignment)?;
        report.extend(cmp.verify());

        // Evaluation at the identity tuple inverts the comparison.
        let mut v = Vec::new();
        for n in 0..=n_max {
            let gen: Vec<Elem> = vec![over.elem(over.identity()); n as usize];
            if tuple_level(&gen) > module.bound() {
                v.push(format!("identity tuple at arity {n} exceeds the bound"));
                continue;
            }
            let mut seen = BTreeMap::new();
            for (k, map) in self.maps[n as usize].iter().enumerate() {
                let val = map.get(&gen).ok_or_else(|| {
                    Error::InvalidElement("identity tuple missing from a map".into())
                })?;
                if let Some(prev) = seen.insert(val.clone(), k) {
                    v.push(format!(
                        "maps f{n}_{prev} and f{n}_{k} agree at the identity tuple"
                    ));
                }
            }
            if seen.len() as u64 != trunc.level_size(n) {
                v.push(format!(
                    "arity {n}: {} maps vs {} operad elements",
                    seen.len(),
                    trunc.level_size(n)
                ));
            }
        }
        report.push(Check::from_violations(
            "evaluation at the identity tuple",
            v,
        ));
        Ok(report)
    }
}

/// Materializes a truncation of an operad as an explicit table.
pub fn truncated_operad(op: &TableOperad, bound: u32) -> Result<TableOperad> {
    let bound = bound.min(op.level_bound());
    let mut level_names = Vec::with_capacity(bound as usize + 1);
    for n in 0..=bound {
        level_names.push(
            op.elements(n)?
                .into_iter()
                .map(|r| op.name_of(r))
                .collect::<Vec<String>>(),
        );
    }
    let mut comp = BTreeMap::new();
    for n in 1..=bound {
        for a in op.elements(n)? {
            for m in 0..=bound + 1 - n {
                for b in op.elements(m)? {
                    for slot in 1..=n {
                        comp.insert((a, slot, b), op.partial_compose(a, slot, b)?);
                    }
                }
            }
        }
    }
    let identity = op.identity();
    TableOperad::from_table(
        &format!("{}|{bound}", op.name()),
        level_names,
        identity,
        comp,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::Elem;

    #[test]
    fn hochschild_of_the_one_point_operad_is_tiny_but_lawful() {
        let a = TableOperad::associative(1);
        let h = hochschild(&a, 3, 1).unwrap();
        let report = h.check();
        assert!(report.passed(), "{}", report.to_text());

        // Degree zero at level one is a single element, matched by the
        // augmentation.
        assert_eq!(h.simplicial.degree(0).size_at(1), 1);
        let e = &h.simplicial.degree(0).level(1)[0];
        assert_eq!(h.augmentation.apply(e).unwrap().level(), 1);
    }

    #[test]
    fn hochschild_identities_for_set_endomorphisms() {
        let e2 = TableOperad::endomorphism_of_set(2, 1).unwrap();
        let h = hochschild(&e2, 3, 1).unwrap();
        let report = h.check();
        assert!(report.passed(), "{}", report.to_text());
        // Degree sizes grow but stay enumerable at this truncation.
        assert_eq!(h.simplicial.degree(1).size_at(0), 42);
        assert_eq!(h.simplicial.degree(1).size_at(1), 64);
    }

    #[test]
    fn hochschild_bottom_faces_coequalize_onto_the_operad() {
        let e2 = TableOperad::endomorphism_of_set(2, 1).unwrap();
        let h = hochschild(&e2, 1, 1).unwrap();
        // d_0 then augmentation equals d_1 then augmentation, elementwise.
        let d0 = h.simplicial.face(1, 0);
        let d1 = h.simplicial.face(1, 1);
        for w in h.simplicial.degree(1).iter() {
            let a = h.augmentation.apply(d0.apply(w).unwrap()).unwrap();
            let b = h.augmentation.apply(d1.apply(w).unwrap()).unwrap();
            assert_eq!(a, b, "on {w}");
        }
        // And the classes biject with the operad.
        let classes = h.bottom_coequalizer().unwrap();
        assert_eq!(classes[0].len() as u64, e2.level_size(0));
        assert_eq!(classes[1].len() as u64, e2.level_size(1));
    }

    #[test]
    fn hochschild_at_a_wider_truncation() {
        let a = TableOperad::associative(2);
        let h = hochschild(&a, 2, 2).unwrap();
        let report = h.check();
        assert!(report.passed(), "{}", report.to_text());

        // The face-closure restriction is active here: some raw power
        // elements need a level-3 middle composite and are dropped.
        let carrier = a.carrier(2).unwrap();
        let raw = circ_power(&carrier, 3, 2);
        assert!(h.simplicial.degree(1).total_size() < raw.total_size());
    }

    #[test]
    fn envelope_of_degree_zero_is_two_copies() {
        let a = TableOperad::associative(1);
        let env = envelope_of_hochschild(&a, 0, 1).unwrap();
        assert_eq!(env.census_by_branch(0, 2).unwrap(), vec![0, 2, 2]);
        assert_eq!(env.census_by_branch(1, 2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn envelope_free_on_empty_generators_is_the_plain_coproduct() {
        let p = crate::coproduct::idempotent_monoid();
        let q = crate::coproduct::idempotent_monoid();
        let env = envelope_free(&p, &GradedSet::empty(1), None, &q);
        let cop = crate::coproduct::OperadCoproduct::new(p, q);
        let census = cop.census(1, 2, 1).unwrap();
        assert_eq!(env.census_by_branch(1, 2).unwrap(), census.f);
    }

    #[test]
    fn envelope_censuses_agree_between_the_two_routes() {
        let a = TableOperad::associative(1);
        for n in 0..=1u32 {
            let env = envelope_of_hochschild(&a, n, 1).unwrap();
            for level in 0..=1u32 {
                let free_route = env.census_by_branch(level, 2).unwrap();
                let oracle_route = envelope_oracle_census(&a, n, 1, level, 2).unwrap();
                assert_eq!(free_route, oracle_route, "degree {n}, level {level}");
            }
        }
    }

    fn magma() -> GradedSet {
        GradedSet::new(vec![vec![], vec![], vec![Elem::atom(2, "m")]]).unwrap()
    }

    #[test]
    fn splitting_resolution_components_count_binary_trees() {
        let res = splitting_resolution(&magma(), 2, 4, 4).unwrap();
        let (counts, report) = res.pi0_report().unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(counts, vec![0, 1, 1, 2, 5]);
    }

    #[test]
    fn splitting_resolution_satisfies_simplicial_identities() {
        let res = splitting_resolution(&magma(), 3, 4, 4).unwrap();
        let report = res.simplicial.check_identities();
        assert!(report.passed(), "{}", report.to_text());
        // Degree sizes grow by one marked copy per degree.
        assert_eq!(res.simplicial.degree(0).sizes(), vec![0, 1, 2, 6, 21]);
        assert_eq!(res.simplicial.degree(3).sizes(), vec![0, 1, 5, 18, 81]);
    }

    #[test]
    fn trivial_composite_has_a_single_splitting() {
        let res = splitting_resolution(&magma(), 1, 3, 3).unwrap();
        let fiber = res.fiber_of(&LabeledTree::Leaf).unwrap();
        assert_eq!(fiber.len(), 1);
    }

    #[test]
    fn splitting_resolution_handles_nullary_generators() {
        let gens = GradedSet::new(vec![
            vec![Elem::atom(0, "u")],
            vec![],
            vec![Elem::atom(2, "m")],
        ])
        .unwrap();
        let res = splitting_resolution(&gens, 2, 2, 3).unwrap();
        let identities = res.simplicial.check_identities();
        assert!(identities.passed(), "{}", identities.to_text());
        let (counts, report) = res.pi0_report().unwrap();
        assert!(report.passed(), "{}", report.to_text());
        // Level zero is inhabited thanks to the nullary generator.
        assert!(counts[0] > 0);
    }

    #[test]
    fn empty_generators_resolve_the_unit_operad() {
        let res = splitting_resolution(&GradedSet::empty(1), 1, 2, 2).unwrap();
        let (counts, report) = res.pi0_report().unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(counts[1], 1);
    }

    #[test]
    fn module_over_itself_verifies() {
        let e2 = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let m = RightModule::over_self(&e2, 2).unwrap();
        let report = m.verify();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn endomorphisms_of_the_one_point_module_are_single_points() {
        let a = TableOperad::associative(2);
        let m = RightModule::over_self(&a, 2).unwrap();
        let end = module_endomorphism_operad(&m, 2, 1 << 20).unwrap();
        assert_eq!(
            (0..=2).map(|n| end.maps[n].len()).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
        assert!(end.operad.verify().passed());
        let report = end.compare_with_operad(&m).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn endomorphisms_of_set_functions_match_the_operad() {
        let e2 = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let m = RightModule::over_self(&e2, 2).unwrap();
        let end = module_endomorphism_operad(&m, 2, 1 << 22).unwrap();
        // Arity one: module maps biject with the level-one elements.
        assert_eq!(end.maps[1].len(), 4);
        // Arity zero: values on the empty tuple.
        assert_eq!(end.maps[0].len(), 2);
        assert_eq!(end.maps[2].len(), 16);
        let report = end.compare_with_operad(&m).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }
}
