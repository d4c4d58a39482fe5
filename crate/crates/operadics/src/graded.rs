//! Finite graded sets, graded maps, and the two monoidal products.
//!
//! A graded set is a finite family of finite element sets indexed by levels
//! `0..=L`. Operations never look above the stated truncation bound, so every
//! cardinality below is truncation dependent; any two sides of a claimed
//! isomorphism must be formed at the same bound.
//!
//! The composition product pairs an outer element of level `i` with `i` inner
//! elements; the graded cartesian product pairs two elements additively. The
//! two are related by a distributive isomorphism, produced here as an explicit
//! pair of mutually inverse graded maps.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::elem::Elem;
use crate::util::compositions;
use crate::{Error, Result};

/// A finite graded set. Levels are kept sorted in the canonical element
/// order; element identity is structural and unique per set.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSet {
    levels: Vec<Vec<Elem>>,
}

impl GradedSet {
    pub fn new(levels: Vec<Vec<Elem>>) -> Result<Self> {
        let mut sorted = levels;
        for (n, level) in sorted.iter_mut().enumerate() {
            for e in level.iter() {
                if e.level() as usize != n {
                    return Err(Error::InvalidElement(format!(
                        "element {e} of level {} listed at level {n}",
                        e.level()
                    )));
                }
            }
            level.sort();
            if let Some(w) = level.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidElement(format!(
                    "duplicate element {} at level {n}",
                    w[0]
                )));
            }
        }
        Ok(GradedSet { levels: sorted })
    }

    pub fn empty(level_bound: u32) -> Self {
        GradedSet {
            levels: vec![Vec::new(); level_bound as usize + 1],
        }
    }

    /// The unit of the composition product: a single point at level 1.
    pub fn unit_circ() -> Self {
        GradedSet {
            levels: vec![vec![], vec![Elem::point(1)]],
        }
    }

    /// The unit of the graded cartesian product: a single point at level 0.
    pub fn unit_dot() -> Self {
        GradedSet {
            levels: vec![vec![Elem::point(0)]],
        }
    }

    pub fn from_names(names: &[&[&str]]) -> Result<Self> {
        GradedSet::new(
            names
                .iter()
                .enumerate()
                .map(|(n, ids)| ids.iter().map(|id| Elem::atom(n as u32, *id)).collect())
                .collect(),
        )
    }

    pub fn level_bound(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// Elements at a level; levels above the bound are empty.
    pub fn level(&self, n: u32) -> &[Elem] {
        self.levels
            .get(n as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.level(e.level()).binary_search(e).is_ok()
    }

    pub fn size_at(&self, n: u32) -> usize {
        self.level(n).len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Elem> {
        self.levels.iter().flatten()
    }

    pub fn truncated(&self, bound: u32) -> GradedSet {
        let mut levels = self.levels.clone();
        levels.truncate(bound as usize + 1);
        levels.resize(bound as usize + 1, Vec::new());
        GradedSet { levels }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "level_bound": self.level_bound(),
            "levels": self
                .levels
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|e| match e.as_atom() {
                            Some((_, id)) => Value::String(id.to_string()),
                            None => e.to_value(),
                        })
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Schema("graded set must be an object".into()))?;
        let bound = obj
            .get("level_bound")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema("graded set missing \"level_bound\"".into()))?;
        let levels_v = obj
            .get("levels")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("graded set missing \"levels\" array".into()))?;
        if levels_v.len() as u64 != bound + 1 {
            return Err(Error::Schema(format!(
                "expected {} levels, found {}",
                bound + 1,
                levels_v.len()
            )));
        }
        let mut levels = Vec::with_capacity(levels_v.len());
        for (n, lv) in levels_v.iter().enumerate() {
            let arr = lv
                .as_array()
                .ok_or_else(|| Error::Schema(format!("level {n} must be an array")))?;
            levels.push(
                arr.iter()
                    .map(|e| Elem::from_value(e, Some(n as u32)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        GradedSet::new(levels)
    }
}

impl std::fmt::Debug for GradedSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedSet{:?}", self.sizes())
    }
}

/// A level-preserving map of graded sets, total on the source within the
/// common level bound.
#[derive(Clone)]
pub struct GradedMap {
    source: GradedSet,
    target: GradedSet,
    map: BTreeMap<Elem, Elem>,
}

impl GradedMap {
    pub fn new(source: GradedSet, target: GradedSet, map: BTreeMap<Elem, Elem>) -> Result<Self> {
        for e in source.iter() {
            let img = map
                .get(e)
                .ok_or_else(|| Error::InvalidElement(format!("map undefined on {e}")))?;
            if img.level() != e.level() {
                return Err(Error::InvalidElement(format!(
                    "map sends {e} (level {}) to {img} (level {})",
                    e.level(),
                    img.level()
                )));
            }
            if !target.contains(img) {
                return Err(Error::InvalidElement(format!(
                    "image {img} is not in the target"
                )));
            }
        }
        Ok(GradedMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(set: &GradedSet) -> Self {
        let map = set.iter().map(|e| (e.clone(), e.clone())).collect();
        GradedMap {
            source: set.clone(),
            target: set.clone(),
            map,
        }
    }

    pub fn from_fn(
        source: &GradedSet,
        target: &GradedSet,
        mut f: impl FnMut(&Elem) -> Result<Elem>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for e in source.iter() {
            map.insert(e.clone(), f(e)?);
        }
        GradedMap::new(source.clone(), target.clone(), map)
    }

    pub fn source(&self) -> &GradedSet {
        &self.source
    }

    pub fn target(&self) -> &GradedSet {
        &self.target
    }

    pub fn apply(&self, e: &Elem) -> Result<&Elem> {
        self.map
            .get(e)
            .ok_or_else(|| Error::InvalidElement(format!("map undefined on {e}")))
    }

    /// `other` after `self`.
    pub fn then(&self, other: &GradedMap) -> Result<GradedMap> {
        let mut map = BTreeMap::new();
        for (k, v) in &self.map {
            map.insert(k.clone(), other.apply(v)?.clone());
        }
        GradedMap::new(self.source.clone(), other.target.clone(), map)
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Elem, &Elem)> {
        self.map.iter()
    }

    /// True when the two maps compose to the identity both ways.
    pub fn mutually_inverse(&self, other: &GradedMap) -> bool {
        matches!(self.then(other), Ok(m) if m.is_identity())
            && matches!(other.then(self), Ok(m) if m.is_identity())
    }
}

/// The composition product `X` after `Y`: level `n` collects an outer element
/// of `X` at some level `i` and `i` inner elements of `Y` whose levels sum to
/// `n`. Inner levels of zero are allowed, so the outer level ranges over all
/// of `X`; only the resulting level is truncated at `bound`.
pub fn circ_compose(x: &GradedSet, y: &GradedSet, bound: u32) -> GradedSet {
    let mut levels = Vec::with_capacity(bound as usize + 1);
    for n in 0..=bound {
        let mut out = Vec::new();
        for i in 0..=x.level_bound() {
            let outers = x.level(i);
            if outers.is_empty() {
                continue;
            }
            for parts in compositions(n, i as usize, y.level_bound().min(bound)) {
                let mut tuples: Vec<Vec<Elem>> = vec![Vec::new()];
                for &j in &parts {
                    let choices = y.level(j);
                    if choices.is_empty() {
                        tuples.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(tuples.len() * choices.len());
                    for t in &tuples {
                        for c in choices {
                            let mut t2 = t.clone();
                            t2.push(c.clone());
                            next.push(t2);
                        }
                    }
                    tuples = next;
                }
                for outer in outers {
                    for inners in &tuples {
                        out.push(Elem::circ(outer, inners).expect("arity matches by construction"));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        levels.push(out);
    }
    GradedSet { levels }
}

/// The graded cartesian product, truncated at `bound`: level `n` collects
/// pairs whose levels sum to `n`.
pub fn dot_compose(x: &GradedSet, y: &GradedSet, bound: u32) -> GradedSet {
    let mut levels = Vec::with_capacity(bound as usize + 1);
    for n in 0..=bound {
        let mut out = Vec::new();
        for i in 0..=n {
            for l in x.level(i) {
                for r in y.level(n - i) {
                    out.push(Elem::dot(l, r));
                }
            }
        }
        out.sort();
        levels.push(out);
    }
    GradedSet { levels }
}

/// Iterated composition power `x^(∘ k)`, truncated at `bound`. The zeroth
/// power is the composition unit and the first is `x` itself, so elements of
/// the k-th power are k-layer nestings bottoming out in plain elements of
/// `x`.
pub fn circ_power(x: &GradedSet, k: u32, bound: u32) -> GradedSet {
    if k == 0 {
        return GradedSet::unit_circ().truncated(bound);
    }
    let mut acc = x.truncated(bound);
    for _ in 1..k {
        acc = circ_compose(x, &acc, bound);
    }
    acc
}

/// The distributive isomorphism between `(X ⊙ Y) ∘ Z` and
/// `(X ∘ Z) ⊙ (Y ∘ Z)`, as a pair of mutually inverse graded maps. The
/// forward map splits the inner tuple after the first factor's slots.
pub fn distribute(
    x: &GradedSet,
    y: &GradedSet,
    z: &GradedSet,
    bound: u32,
) -> Result<(GradedMap, GradedMap)> {
    // The intermediate pair set must keep every pair whose slots could still
    // produce a level within `bound`, so it is formed at the sum of the input
    // bounds; only the composite is truncated.
    let pair_bound = x.level_bound() + y.level_bound();
    let lhs = circ_compose(&dot_compose(x, y, pair_bound), z, bound);
    let rhs = dot_compose(
        &circ_compose(x, z, bound),
        &circ_compose(y, z, bound),
        bound,
    );

    let forward = GradedMap::from_fn(&lhs, &rhs, |e| {
        let (outer, inners) = e
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
        let (a, b) = outer
            .as_dot()
            .ok_or_else(|| Error::InvalidElement(format!("{outer} is not a pair")))?;
        let split = a.level() as usize;
        Ok(Elem::dot(
            &Elem::circ(a, &inners[..split])?,
            &Elem::circ(b, &inners[split..])?,
        ))
    })?;

    let backward = GradedMap::from_fn(&rhs, &lhs, |e| {
        let (l, r) = e
            .as_dot()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a pair")))?;
        let (a, za) = l
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{l} is not a composition element")))?;
        let (b, zb) = r
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{r} is not a composition element")))?;
        let mut zs = za.to_vec();
        zs.extend_from_slice(zb);
        Elem::circ(&Elem::dot(a, b), &zs)
    })?;

    Ok((forward, backward))
}

/// Canonical bijection from `1 ∘ X` onto `X` (forgetting the forced outer
/// point), together with its inverse.
pub fn circ_unit_left(x: &GradedSet, bound: u32) -> Result<(GradedMap, GradedMap)> {
    let unit = GradedSet::unit_circ();
    let lhs = circ_compose(&unit, x, bound);
    let xt = x.truncated(bound);
    let fwd = GradedMap::from_fn(&lhs, &xt, |e| {
        let (_, inners) = e
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
        Ok(inners[0].clone())
    })?;
    let pt = Elem::point(1);
    let bwd = GradedMap::from_fn(&xt, &lhs, |e| Elem::circ(&pt, std::slice::from_ref(e)))?;
    Ok((fwd, bwd))
}

/// Canonical bijection from `X ∘ 1` onto `X` (forgetting the forced points in
/// every slot), together with its inverse.
pub fn circ_unit_right(x: &GradedSet, bound: u32) -> Result<(GradedMap, GradedMap)> {
    let unit = GradedSet::unit_circ();
    let lhs = circ_compose(x, &unit, bound);
    let xt = x.truncated(bound);
    let fwd = GradedMap::from_fn(&lhs, &xt, |e| {
        let (outer, _) = e
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
        Ok(outer.clone())
    })?;
    let pt = Elem::point(1);
    let bwd = GradedMap::from_fn(&xt, &lhs, |e| {
        Elem::circ(e, &vec![pt.clone(); e.level() as usize])
    })?;
    Ok((fwd, bwd))
}

/// Canonical reassociation from `(X ∘ Y) ∘ Z` onto `X ∘ (Y ∘ Z)`, with its
/// inverse. The inner tuple is cut into blocks following the middle factors.
pub fn circ_reassociate(
    x: &GradedSet,
    y: &GradedSet,
    z: &GradedSet,
    bound: u32,
) -> Result<(GradedMap, GradedMap)> {
    // Middle elements can sit at any level up to the largest slot count of
    // the pair, even when the final composite is low because of level-zero
    // entries; form the intermediate at that bound.
    let mid_bound = x.level_bound().saturating_mul(y.level_bound());
    let lhs = circ_compose(&circ_compose(x, y, mid_bound), z, bound);
    let rhs = circ_compose(x, &circ_compose(y, z, bound), bound);

    let fwd = GradedMap::from_fn(&lhs, &rhs, |e| {
        let (xy, zs) = e
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
        let (xe, ys) = xy
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{xy} is not a composition element")))?;
        let mut blocks = Vec::with_capacity(ys.len());
        let mut offset = 0usize;
        for ye in ys {
            let take = ye.level() as usize;
            blocks.push(Elem::circ(ye, &zs[offset..offset + take])?);
            offset += take;
        }
        Elem::circ(xe, &blocks)
    })?;

    let bwd = GradedMap::from_fn(&rhs, &lhs, |e| {
        let (xe, blocks) = e
            .as_circ()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not a composition element")))?;
        let mut ys = Vec::with_capacity(blocks.len());
        let mut zs = Vec::new();
        for b in blocks {
            let (ye, zpart) = b.as_circ().ok_or_else(|| {
                Error::InvalidElement(format!("{b} is not a composition element"))
            })?;
            ys.push(ye.clone());
            zs.extend_from_slice(zpart);
        }
        Elem::circ(&Elem::circ(xe, &ys)?, &zs)
    })?;

    Ok((fwd, bwd))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assoc_like(bound: u32) -> GradedSet {
        // One point per level, the shape of the terminal operad's carrier.
        GradedSet::new(
            (0..=bound)
                .map(|n| vec![Elem::atom(n, format!("a{n}"))])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn circ_unit_acts_as_identity() {
        let x = GradedSet::from_names(&[&["p"], &["q", "r"], &["s"]]).unwrap();
        let (f, b) = circ_unit_left(&x, 3).unwrap();
        assert!(f.mutually_inverse(&b));
        let (f, b) = circ_unit_right(&x, 3).unwrap();
        assert!(f.mutually_inverse(&b));
    }

    #[test]
    fn circ_cardinalities_for_two_level_inputs() {
        // Outer concentrated at level 2, inner with one element at levels 0
        // and 1: the level-n count is the number of binary level splittings.
        let x = GradedSet::from_names(&[&[], &[], &["f"]]).unwrap();
        let y = GradedSet::from_names(&[&["c"], &["u"]]).unwrap();
        let got = circ_compose(&x, &y, 2);
        assert_eq!(got.sizes(), vec![1, 2, 1]);
    }

    #[test]
    fn circ_level_zero_counts_outer_arities() {
        let a = assoc_like(2);
        let got = circ_compose(&a, &a, 2);
        assert_eq!(got.size_at(0), 3);
    }

    #[test]
    fn dot_unit_and_cardinalities() {
        let a = assoc_like(2);
        let unit = GradedSet::unit_dot();
        let left = dot_compose(&unit, &a, 2);
        assert_eq!(left.sizes(), a.truncated(2).sizes());

        let got = dot_compose(&a, &a, 2);
        assert_eq!(got.sizes(), vec![1, 2, 3]);

        let empty = GradedSet::empty(2);
        assert_eq!(dot_compose(&a, &empty, 2).total_size(), 0);
    }

    #[test]
    fn dot_is_associative_and_unital_elementwise() {
        let x = GradedSet::from_names(&[&["x0"], &["x1"]]).unwrap();
        let y = GradedSet::from_names(&[&[], &["y1", "y2"]]).unwrap();
        let z = GradedSet::from_names(&[&["z0"], &[], &["z2"]]).unwrap();
        let bound = 3;
        let lhs = dot_compose(&dot_compose(&x, &y, bound), &z, bound);
        let rhs = dot_compose(&x, &dot_compose(&y, &z, bound), bound);
        let re = GradedMap::from_fn(&lhs, &rhs, |e| {
            let (xy, ze) = e.as_dot().unwrap();
            let (xe, ye) = xy.as_dot().unwrap();
            Ok(Elem::dot(xe, &Elem::dot(ye, ze)))
        })
        .unwrap();
        let back = GradedMap::from_fn(&rhs, &lhs, |e| {
            let (xe, yz) = e.as_dot().unwrap();
            let (ye, ze) = yz.as_dot().unwrap();
            Ok(Elem::dot(&Elem::dot(xe, ye), ze))
        })
        .unwrap();
        assert!(re.mutually_inverse(&back));
    }

    #[test]
    fn distribute_round_trips_on_degenerate_and_small_inputs() {
        let a = assoc_like(2);
        let empty = GradedSet::empty(2);

        // Degenerate second factor: both sides reduce to compositions with
        // nothing contributed by the empty set.
        let (f, b) = distribute(&a, &empty, &a, 2).unwrap();
        assert!(f.mutually_inverse(&b));

        let (f, b) = distribute(&a, &a, &a, 2).unwrap();
        assert!(f.mutually_inverse(&b));
        assert_eq!(f.source().sizes(), f.target().sizes());
    }

    #[test]
    fn reassociation_round_trips() {
        let x = GradedSet::from_names(&[&["p"], &["q"], &["f"]]).unwrap();
        let y = GradedSet::from_names(&[&["c"], &["u", "v"]]).unwrap();
        let z = GradedSet::from_names(&[&["w"], &["t"]]).unwrap();
        let (f, b) = circ_reassociate(&x, &y, &z, 3).unwrap();
        assert!(f.mutually_inverse(&b));
    }

    #[test]
    fn json_round_trip() {
        let x = GradedSet::from_names(&[&["p"], &["q", "r"]]).unwrap();
        let v = x.to_value();
        assert_eq!(GradedSet::from_value(&v).unwrap(), x);
    }
}
