//! Dynamic elements of finite graded sets.
//!
//! All constructions in this crate (composition products, graded cartesian
//! products, free operads, resolutions) produce graded sets whose elements are
//! built from a handful of constructors. `Elem` is the shared immutable
//! representation, with the level cached at every node. Equality is
//! structural, and the `Ord` instance is the canonical element order used for
//! deterministic enumeration and serialization: level first, then constructor,
//! then components.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::free_operad::LabeledTree;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
struct Node {
    level: u32,
    kind: Kind,
}

#[derive(PartialEq, Eq, Hash)]
enum Kind {
    /// The distinguished single point: units of the two monoidal products and
    /// basepoints of pointed objects.
    Point,
    /// A named element of an explicitly listed set.
    Atom(String),
    /// A colored copy of another element (copy index in a disjoint union).
    Tag(u32, Elem),
    /// An element of a composition product: an outer element together with one
    /// inner element per slot of the outer one.
    Circ(Elem, Vec<Elem>),
    /// An element of a graded cartesian product.
    Dot(Elem, Elem),
    /// An element of a free operad.
    Tree(LabeledTree<Elem>),
}

impl Kind {
    fn rank(&self) -> u8 {
        match self {
            Kind::Point => 0,
            Kind::Atom(_) => 1,
            Kind::Tag(..) => 2,
            Kind::Circ(..) => 3,
            Kind::Dot(..) => 4,
            Kind::Tree(_) => 5,
        }
    }
}

impl Elem {
    pub fn point(level: u32) -> Elem {
        Elem(Arc::new(Node {
            level,
            kind: Kind::Point,
        }))
    }

    pub fn atom(level: u32, id: impl Into<String>) -> Elem {
        Elem(Arc::new(Node {
            level,
            kind: Kind::Atom(id.into()),
        }))
    }

    pub fn tag(color: u32, inner: &Elem) -> Elem {
        Elem(Arc::new(Node {
            level: inner.level(),
            kind: Kind::Tag(color, inner.clone()),
        }))
    }

    /// Pairs an outer element with one inner element per slot. The resulting
    /// level is the sum of the inner levels.
    pub fn circ(outer: &Elem, inners: &[Elem]) -> Result<Elem> {
        if outer.level() as usize != inners.len() {
            return Err(Error::ArityMismatch {
                what: format!("composition element with outer {outer}"),
                expected: outer.level() as usize,
                got: inners.len(),
            });
        }
        let level = inners.iter().map(|e| e.level()).sum();
        Ok(Elem(Arc::new(Node {
            level,
            kind: Kind::Circ(outer.clone(), inners.to_vec()),
        })))
    }

    pub fn dot(left: &Elem, right: &Elem) -> Elem {
        Elem(Arc::new(Node {
            level: left.level() + right.level(),
            kind: Kind::Dot(left.clone(), right.clone()),
        }))
    }

    pub fn tree(t: LabeledTree<Elem>) -> Elem {
        Elem(Arc::new(Node {
            level: t.level(),
            kind: Kind::Tree(t),
        }))
    }

    pub fn level(&self) -> u32 {
        self.0.level
    }

    pub fn is_point(&self) -> bool {
        matches!(self.0.kind, Kind::Point)
    }

    pub fn as_atom(&self) -> Option<(u32, &str)> {
        match &self.0.kind {
            Kind::Atom(id) => Some((self.0.level, id)),
            _ => None,
        }
    }

    pub fn as_tag(&self) -> Option<(u32, &Elem)> {
        match &self.0.kind {
            Kind::Tag(c, e) => Some((*c, e)),
            _ => None,
        }
    }

    pub fn as_circ(&self) -> Option<(&Elem, &[Elem])> {
        match &self.0.kind {
            Kind::Circ(o, i) => Some((o, i)),
            _ => None,
        }
    }

    pub fn as_dot(&self) -> Option<(&Elem, &Elem)> {
        match &self.0.kind {
            Kind::Dot(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn as_tree(&self) -> Option<&LabeledTree<Elem>> {
        match &self.0.kind {
            Kind::Tree(t) => Some(t),
            _ => None,
        }
    }

    pub fn to_value(&self) -> Value {
        match &self.0.kind {
            Kind::Point => json!({ "pt": self.0.level }),
            Kind::Atom(id) => json!({ "id": id, "lv": self.0.level }),
            Kind::Tag(c, e) => json!({ "tag": c, "of": e.to_value() }),
            Kind::Circ(o, inners) => json!({
                "o": o.to_value(),
                "in": inners.iter().map(Elem::to_value).collect::<Vec<_>>(),
            }),
            Kind::Dot(l, r) => json!({ "l": l.to_value(), "r": r.to_value() }),
            Kind::Tree(t) => json!({ "tree": tree_to_value(t) }),
        }
    }

    /// Parses an element. A bare string is an atom at `level_hint`, which is
    /// how graded-set files list plain elements.
    pub fn from_value(v: &Value, level_hint: Option<u32>) -> Result<Elem> {
        match v {
            Value::String(id) => match level_hint {
                Some(level) => Ok(Elem::atom(level, id.clone())),
                None => Err(Error::Schema(format!(
                    "bare element id {id:?} outside of a level context"
                ))),
            },
            Value::Object(map) => {
                if let Some(l) = map.get("pt") {
                    let level = as_u32(l, "pt")?;
                    return Ok(Elem::point(level));
                }
                if let (Some(id), Some(lv)) = (map.get("id"), map.get("lv")) {
                    let id = id
                        .as_str()
                        .ok_or_else(|| Error::Schema("atom id must be a string".into()))?;
                    return Ok(Elem::atom(as_u32(lv, "lv")?, id));
                }
                if let (Some(c), Some(of)) = (map.get("tag"), map.get("of")) {
                    let inner = Elem::from_value(of, None)?;
                    return Ok(Elem::tag(as_u32(c, "tag")?, &inner));
                }
                if let (Some(o), Some(inners)) = (map.get("o"), map.get("in")) {
                    let outer = Elem::from_value(o, None)?;
                    let inners = inners
                        .as_array()
                        .ok_or_else(|| Error::Schema("\"in\" must be an array".into()))?
                        .iter()
                        .map(|x| Elem::from_value(x, None))
                        .collect::<Result<Vec<_>>>()?;
                    return Elem::circ(&outer, &inners);
                }
                if let (Some(l), Some(r)) = (map.get("l"), map.get("r")) {
                    let left = Elem::from_value(l, None)?;
                    let right = Elem::from_value(r, None)?;
                    return Ok(Elem::dot(&left, &right));
                }
                if let Some(t) = map.get("tree") {
                    return Ok(Elem::tree(tree_from_value(t)?));
                }
                Err(Error::Schema(format!("unrecognized element object: {v}")))
            }
            _ => Err(Error::Schema(format!("unrecognized element value: {v}"))),
        }
    }
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| {
            Error::Schema(format!(
                "field {what:?} must be a small nonnegative integer"
            ))
        })
}

fn tree_to_value(t: &LabeledTree<Elem>) -> Value {
    match t {
        LabeledTree::Leaf => Value::Null,
        LabeledTree::Node { label, children } => json!({
            "lab": label.to_value(),
            "ch": children.iter().map(tree_to_value).collect::<Vec<_>>(),
        }),
    }
}

fn tree_from_value(v: &Value) -> Result<LabeledTree<Elem>> {
    match v {
        Value::Null => Ok(LabeledTree::Leaf),
        Value::Object(map) => {
            let label = Elem::from_value(
                map.get("lab")
                    .ok_or_else(|| Error::Schema("tree node missing \"lab\"".into()))?,
                None,
            )?;
            let children = map
                .get("ch")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Schema("tree node missing \"ch\" array".into()))?
                .iter()
                .map(tree_from_value)
                .collect::<Result<Vec<_>>>()?;
            let node = LabeledTree::Node { label, children };
            node.validate()?;
            Ok(node)
        }
        _ => Err(Error::Schema(format!("unrecognized tree value: {v}"))),
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .level
            .cmp(&other.0.level)
            .then_with(|| self.0.kind.rank().cmp(&other.0.kind.rank()))
            .then_with(|| match (&self.0.kind, &other.0.kind) {
                (Kind::Point, Kind::Point) => Ordering::Equal,
                (Kind::Atom(a), Kind::Atom(b)) => a.cmp(b),
                (Kind::Tag(c, e), Kind::Tag(d, f)) => c.cmp(d).then_with(|| e.cmp(f)),
                (Kind::Circ(o, i), Kind::Circ(p, j)) => o.cmp(p).then_with(|| i.cmp(j)),
                (Kind::Dot(a, b), Kind::Dot(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
                (Kind::Tree(s), Kind::Tree(t)) => s.cmp(t),
                _ => unreachable!("rank already distinguished the kinds"),
            })
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Point => write!(f, "*{}", self.0.level),
            Kind::Atom(id) => write!(f, "{id}"),
            Kind::Tag(c, e) => write!(f, "{c}#{e}"),
            Kind::Circ(o, inners) => {
                write!(f, "({o};")?;
                for (k, e) in inners.iter().enumerate() {
                    write!(f, "{}{e}", if k == 0 { " " } else { "," })?;
                }
                write!(f, ")")
            }
            Kind::Dot(l, r) => write!(f, "[{l}|{r}]"),
            Kind::Tree(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.0.level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_are_cached_and_additive() {
        let x = Elem::atom(2, "x");
        let a = Elem::atom(0, "a");
        let b = Elem::atom(1, "b");
        let c = Elem::circ(&x, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(c.level(), 1);
        assert_eq!(Elem::dot(&c, &b).level(), 2);
        assert!(Elem::circ(&x, &[a]).is_err());
    }

    #[test]
    fn canonical_order_is_level_first() {
        let lo = Elem::atom(0, "z");
        let hi = Elem::atom(1, "a");
        assert!(lo < hi);
        assert!(Elem::point(1) < Elem::atom(1, "a"));
    }

    #[test]
    fn json_round_trip() {
        let x = Elem::atom(2, "x");
        let e = Elem::dot(
            &Elem::circ(&x, &[Elem::point(0), Elem::atom(1, "b")]).unwrap(),
            &Elem::tag(3, &Elem::atom(1, "c")),
        );
        let v = e.to_value();
        assert_eq!(Elem::from_value(&v, None).unwrap(), e);
    }
}
