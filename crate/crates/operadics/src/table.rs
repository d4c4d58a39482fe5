//! Explicit finite truncated operads.
//!
//! An operad here is a carrier with finitely many elements per level up to a
//! bound `L`, a distinguished identity at level 1, and partial compositions
//! `a ∘_i b` defined whenever the resulting level stays within `L`. The
//! partial compositions determine the full structure map, reconstructed by
//! [`TableOperad::full_compose`].
//!
//! Three backends share this interface: explicit composition tables (loadable
//! from JSON), the operad with a single point at every level, and the
//! endomorphism operad of a finite set, whose compositions are computed by
//! substitution on value tables rather than stored. Elements are addressed by
//! [`OpRef`], a (level, index) pair; every element also has a stable name.

use std::collections::BTreeMap;
use std::fmt;

use crate::elem::Elem;
use crate::graded::GradedSet;
use crate::report::{Check, Report};
use crate::{Error, Result};

/// Reference to an element of a [`TableOperad`]: its level and its index in
/// the canonical enumeration of that level.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpRef {
    pub level: u32,
    pub index: u64,
}

impl OpRef {
    pub fn new(level: u32, index: u64) -> OpRef {
        OpRef { level, index }
    }
}

impl fmt::Debug for OpRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.index, self.level)
    }
}

/// Cap on how many elements of one level are ever materialized as a list.
const ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Clone)]
pub struct TableOperad {
    name: String,
    level_bound: u32,
    backend: Backend,
}

#[derive(Clone)]
enum Backend {
    Table {
        level_names: Vec<Vec<String>>,
        by_name: BTreeMap<String, OpRef>,
        identity: OpRef,
        comp: BTreeMap<(OpRef, u32, OpRef), OpRef>,
    },
    /// One point per level; all compositions forced.
    Assoc,
    /// Functions on a finite set `{0, .., size-1}`; level `n` holds the value
    /// tables of all maps from n-tuples, composed by substitution. Nothing is
    /// stored: names, indices, and compositions are computed on demand, so the
    /// level bound may exceed what could ever be listed.
    EndSet { size: u64 },
}

impl TableOperad {
    /// The operad with a single point at every level up to `bound`.
    pub fn associative(bound: u32) -> TableOperad {
        TableOperad {
            name: format!("assoc(L={bound})"),
            level_bound: bound,
            backend: Backend::Assoc,
        }
    }

    /// The endomorphism operad of the set `{0, .., size-1}`: level `n` is the
    /// set of functions from n-tuples, composition is substitution. Fails if
    /// element indices at some level would not fit in 64 bits.
    pub fn endomorphism_of_set(size: u64, bound: u32) -> Result<TableOperad> {
        if size == 0 {
            return Err(Error::InvalidElement(
                "endomorphism operad needs a nonempty set".into(),
            ));
        }
        for n in 0..=bound {
            end_set_level_size(size, n).ok_or_else(|| {
                Error::Blowup(format!(
                    "endomorphism operad of a {size}-element set has too many \
                     elements at level {n}"
                ))
            })?;
        }
        Ok(TableOperad {
            name: format!("end({size},L={bound})"),
            level_bound: bound,
            backend: Backend::EndSet { size },
        })
    }

    /// A monoid presented by its multiplication table, viewed as an operad
    /// concentrated at level 1. `table[a][b]` is the index of `a * b`.
    pub fn monoid(
        name: &str,
        elements: &[&str],
        unit: &str,
        table: &[Vec<usize>],
    ) -> Result<TableOperad> {
        let unit_index = elements
            .iter()
            .position(|e| *e == unit)
            .ok_or_else(|| Error::InvalidElement(format!("unit {unit:?} not listed")))?;
        let mut comp = BTreeMap::new();
        for (a, row) in table.iter().enumerate() {
            if row.len() != elements.len() {
                return Err(Error::Schema("multiplication table is not square".into()));
            }
            for (b, &r) in row.iter().enumerate() {
                if r >= elements.len() {
                    return Err(Error::Schema(
                        "multiplication table entry out of range".into(),
                    ));
                }
                comp.insert(
                    (OpRef::new(1, a as u64), 1, OpRef::new(1, b as u64)),
                    OpRef::new(1, r as u64),
                );
            }
        }
        if table.len() != elements.len() {
            return Err(Error::Schema("multiplication table is not square".into()));
        }
        TableOperad::from_table(
            name,
            vec![vec![], elements.iter().map(|s| s.to_string()).collect()],
            OpRef::new(1, unit_index as u64),
            comp,
        )
    }

    /// The level-1 part of the endomorphism operad of `{0, .., size-1}`: the
    /// monoid of self-maps under composition.
    pub fn endomorphism_monoid(size: u64) -> Result<TableOperad> {
        let end = TableOperad::endomorphism_of_set(size, 1)?;
        let n = end.level_size(1);
        let names: Vec<String> = (0..n).map(|i| end.name_of(OpRef::new(1, i))).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut table = Vec::with_capacity(n as usize);
        for a in 0..n {
            let mut row = Vec::with_capacity(n as usize);
            for b in 0..n {
                let r = end.partial_compose(OpRef::new(1, a), 1, OpRef::new(1, b))?;
                row.push(r.index as usize);
            }
            table.push(row);
        }
        let unit = end.name_of(end.identity());
        TableOperad::monoid(&format!("end-monoid({size})"), &name_refs, &unit, &table)
    }

    /// Builds an operad from explicit data. Names must be unique across the
    /// whole carrier; the composition table may be partial, in which case
    /// verification reports the missing entries.
    pub fn from_table(
        name: &str,
        level_names: Vec<Vec<String>>,
        identity: OpRef,
        comp: BTreeMap<(OpRef, u32, OpRef), OpRef>,
    ) -> Result<TableOperad> {
        if level_names.is_empty() {
            return Err(Error::Schema("operad needs at least levels 0 and 1".into()));
        }
        let mut by_name = BTreeMap::new();
        for (n, names) in level_names.iter().enumerate() {
            for (i, id) in names.iter().enumerate() {
                let r = OpRef::new(n as u32, i as u64);
                if by_name.insert(id.clone(), r).is_some() {
                    return Err(Error::Schema(format!("duplicate element name {id:?}")));
                }
            }
        }
        let bound = level_names.len() as u32 - 1;
        let op = TableOperad {
            name: name.to_string(),
            level_bound: bound,
            backend: Backend::Table {
                level_names,
                by_name,
                identity,
                comp,
            },
        };
        if identity.level != 1 || !op.in_range(identity) {
            return Err(Error::Schema(
                "identity must be a listed level-1 element".into(),
            ));
        }
        if let Backend::Table { comp, .. } = &op.backend {
            for ((a, i, b), r) in comp {
                if !op.in_range(*a) || !op.in_range(*b) || !op.in_range(*r) {
                    return Err(Error::Schema(
                        "composition entry references unknown element".into(),
                    ));
                }
                if *i == 0 || *i > a.level || r.level != a.level + b.level - 1 {
                    return Err(Error::Schema(format!(
                        "composition entry ({a:?} o_{i} {b:?}) -> {r:?} has inconsistent levels"
                    )));
                }
            }
        }
        Ok(op)
    }

    /// Same operad with one composition entry replaced, for fault injection.
    pub fn with_corrupted_entry(&self, a: OpRef, slot: u32, b: OpRef, wrong: OpRef) -> TableOperad {
        let mut out = self.materialized().expect("small enough to materialize");
        if let Backend::Table { comp, .. } = &mut out.backend {
            comp.insert((a, slot, b), wrong);
        }
        out
    }

    /// Rebuilds this operad as an explicit table.
    pub fn materialized(&self) -> Result<TableOperad> {
        let mut level_names = Vec::new();
        for n in 0..=self.level_bound {
            level_names.push(
                self.elements(n)?
                    .into_iter()
                    .map(|r| self.name_of(r))
                    .collect::<Vec<_>>(),
            );
        }
        let mut comp = BTreeMap::new();
        self.for_each_composable(|a, i, b| {
            let r = self.partial_compose(a, i, b)?;
            comp.insert((a, i, b), r);
            Ok(())
        })?;
        TableOperad::from_table(&self.name, level_names, self.identity(), comp)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level_bound(&self) -> u32 {
        self.level_bound
    }

    pub fn level_size(&self, n: u32) -> u64 {
        if n > self.level_bound {
            return 0;
        }
        match &self.backend {
            Backend::Table { level_names, .. } => level_names[n as usize].len() as u64,
            Backend::Assoc => 1,
            Backend::EndSet { size } => {
                end_set_level_size(*size, n).expect("checked at construction")
            }
        }
    }

    fn in_range(&self, r: OpRef) -> bool {
        r.level <= self.level_bound && r.index < self.level_size(r.level)
    }

    pub fn identity(&self) -> OpRef {
        match &self.backend {
            Backend::Table { identity, .. } => *identity,
            Backend::Assoc => OpRef::new(1, 0),
            Backend::EndSet { size } => {
                // The identity self-map has value table 0, 1, .., size-1.
                let mut index = 0u64;
                for x in 0..*size {
                    index = index * size + x;
                }
                OpRef::new(1, index)
            }
        }
    }

    pub fn elements(&self, n: u32) -> Result<Vec<OpRef>> {
        let size = self.level_size(n);
        if size > ENUMERATION_CAP {
            return Err(Error::Blowup(format!(
                "level {n} of {} has {size} elements, beyond the enumeration cap",
                self.name
            )));
        }
        Ok((0..size).map(|i| OpRef::new(n, i)).collect())
    }

    pub fn name_of(&self, r: OpRef) -> String {
        match &self.backend {
            Backend::Table { level_names, .. } => {
                level_names[r.level as usize][r.index as usize].clone()
            }
            Backend::Assoc => format!("a{}", r.level),
            Backend::EndSet { size } => {
                let digits = size.pow(r.level); // fits: checked at construction
                let mut out = String::with_capacity(digits as usize);
                let mut rem = r.index;
                let mut buf = vec![0u64; digits as usize];
                for d in (0..digits as usize).rev() {
                    buf[d] = rem % size;
                    rem /= size;
                }
                for d in buf {
                    out.push(char::from_digit(d as u32, 10).expect("set size below 10"));
                }
                out
            }
        }
    }

    pub fn ref_by_name(&self, name: &str) -> Result<OpRef> {
        match &self.backend {
            Backend::Table { by_name, .. } => by_name
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidElement(format!("unknown element {name:?}"))),
            Backend::Assoc => {
                let n: u32 = name
                    .strip_prefix('a')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::InvalidElement(format!("unknown element {name:?}")))?;
                if n > self.level_bound {
                    return Err(Error::InvalidElement(format!(
                        "{name:?} is above the bound"
                    )));
                }
                Ok(OpRef::new(n, 0))
            }
            Backend::EndSet { size } => {
                let level = (0..=self.level_bound)
                    .find(|n| size.pow(*n) == name.len() as u64)
                    .ok_or_else(|| {
                        Error::InvalidElement(format!(
                            "value table {name:?} has no level in {}",
                            self.name
                        ))
                    })?;
                let mut index = 0u64;
                for ch in name.chars() {
                    let d = ch.to_digit(10).map(u64::from).filter(|d| *d < *size);
                    match d {
                        Some(d) => index = index * size + d,
                        None => {
                            return Err(Error::InvalidElement(format!(
                                "bad digit in value table {name:?}"
                            )))
                        }
                    }
                }
                Ok(OpRef::new(level, index))
            }
        }
    }

    /// The element as an atom of a graded set, named by its table name.
    pub fn elem(&self, r: OpRef) -> Elem {
        Elem::atom(r.level, self.name_of(r))
    }

    pub fn ref_of_elem(&self, e: &Elem) -> Result<OpRef> {
        let (level, id) = e
            .as_atom()
            .ok_or_else(|| Error::InvalidElement(format!("{e} is not an operad element")))?;
        let r = self.ref_by_name(id)?;
        if r.level != level {
            return Err(Error::InvalidElement(format!(
                "{e} has level {level} but {id:?} lives at level {}",
                r.level
            )));
        }
        Ok(r)
    }

    /// The carrier as a graded set of named atoms, truncated at `bound`.
    pub fn carrier(&self, bound: u32) -> Result<GradedSet> {
        let bound = bound.min(self.level_bound);
        let mut levels = Vec::with_capacity(bound as usize + 1);
        for n in 0..=bound {
            levels.push(
                self.elements(n)?
                    .into_iter()
                    .map(|r| self.elem(r))
                    .collect(),
            );
        }
        GradedSet::new(levels)
    }

    /// Partial composition `a ∘_slot b`, slots counted from 1.
    pub fn partial_compose(&self, a: OpRef, slot: u32, b: OpRef) -> Result<OpRef> {
        if slot == 0 || slot > a.level {
            return Err(Error::ArityMismatch {
                what: format!("slot {slot} of {}", self.name_of(a)),
                expected: a.level as usize,
                got: slot as usize,
            });
        }
        let result_level = a.level + b.level - 1;
        if result_level > self.level_bound {
            return Err(Error::TruncationExceeded {
                what: format!("{} o_{slot} {}", self.name_of(a), self.name_of(b)),
                needed: result_level,
                bound: self.level_bound,
            });
        }
        match &self.backend {
            Backend::Table { comp, .. } => comp.get(&(a, slot, b)).copied().ok_or_else(|| {
                Error::InvalidElement(format!(
                    "composition {} o_{slot} {} is not in the table",
                    self.name_of(a),
                    self.name_of(b)
                ))
            }),
            Backend::Assoc => Ok(OpRef::new(result_level, 0)),
            Backend::EndSet { size } => Ok(end_set_compose(*size, a, slot, b, result_level)),
        }
    }

    /// Full composition `a(b_1, .., b_n)`, realized as iterated partial
    /// compositions. Arguments are applied in ascending level order so the
    /// intermediate levels never exceed the larger of the start and end
    /// levels; the result is order independent by associativity.
    pub fn full_compose(&self, a: OpRef, bs: &[OpRef]) -> Result<OpRef> {
        if bs.len() != a.level as usize {
            return Err(Error::ArityMismatch {
                what: format!("full composition of {}", self.name_of(a)),
                expected: a.level as usize,
                got: bs.len(),
            });
        }
        let result_level: u32 = bs.iter().map(|b| b.level).sum();
        if result_level > self.level_bound {
            return Err(Error::TruncationExceeded {
                what: format!("full composition of {}", self.name_of(a)),
                needed: result_level,
                bound: self.level_bound,
            });
        }
        let mut order: Vec<usize> = (0..bs.len()).collect();
        order.sort_by_key(|&k| (bs[k].level, k));
        let mut slots: Vec<u32> = (1..=bs.len() as u32).collect();
        let mut acc = a;
        for k in order {
            let b = bs[k];
            acc = self.partial_compose(acc, slots[k], b)?;
            for (u, s) in slots.iter_mut().enumerate() {
                if u > k {
                    *s = *s + b.level - 1;
                }
            }
        }
        Ok(acc)
    }

    /// Calls `f` on every `(a, slot, b)` whose composite stays within the
    /// bound, in canonical order.
    pub fn for_each_composable(
        &self,
        mut f: impl FnMut(OpRef, u32, OpRef) -> Result<()>,
    ) -> Result<()> {
        for n in 1..=self.level_bound {
            for a in self.elements(n)? {
                for m in 0..=self.level_bound + 1 - n {
                    for b in self.elements(m)? {
                        for slot in 1..=n {
                            f(a, slot, b)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks every operad axiom instance within the truncation: the identity
    /// laws, totality of the composition table, and both associativity
    /// shapes. An empty report means the table is an operad up to the bound.
    pub fn verify(&self) -> Report {
        let mut report = Report::new(format!("operad axioms for {}", self.name));
        let id = self.identity();

        let mut v = Vec::new();
        if id.level != 1 || !self.in_range(id) {
            v.push("identity is not a level-1 element".to_string());
        }
        report.push(Check::from_violations("identity element", v));

        // Totality within the bound.
        let mut missing = Vec::new();
        let _ = self.for_each_composable(|a, i, b| {
            if let Err(Error::InvalidElement(msg)) = self.partial_compose(a, i, b) {
                missing.push(msg);
            }
            Ok(())
        });
        report.push(Check::from_violations("composition totality", missing));

        // Unit laws.
        let mut v = Vec::new();
        let _ = self.for_each_level_element(|a| {
            for slot in 1..=a.level {
                match self.partial_compose(a, slot, id) {
                    Ok(r) if r == a => {}
                    Ok(r) => v.push(format!(
                        "{} o_{slot} id = {}, expected {}",
                        self.name_of(a),
                        self.name_of(r),
                        self.name_of(a)
                    )),
                    Err(_) => {}
                }
            }
            match self.partial_compose(id, 1, a) {
                Ok(r) if r == a => {}
                Ok(r) => v.push(format!(
                    "id o_1 {} = {}, expected {}",
                    self.name_of(a),
                    self.name_of(r),
                    self.name_of(a)
                )),
                Err(_) => {}
            }
            Ok(())
        });
        report.push(Check::from_violations("identity laws", v));

        // Associativity, both shapes, wherever all composites stay in range.
        let mut v = Vec::new();
        let _ = self.for_each_composable(|a, i, b| {
            let Ok(ab) = self.partial_compose(a, i, b) else {
                return Ok(());
            };
            let m = b.level;
            for p in 0..=self.level_bound + 1 - ab.level {
                for c in self.elements(p).unwrap_or_default() {
                    for j in 1..=ab.level {
                        let Ok(lhs) = self.partial_compose(ab, j, c) else {
                            continue;
                        };
                        let rhs = if j < i {
                            self.partial_compose(a, j, c)
                                .and_then(|ac| self.partial_compose(ac, i + p - 1, b))
                        } else if j < i + m {
                            self.partial_compose(b, j - i + 1, c)
                                .and_then(|bc| self.partial_compose(a, i, bc))
                        } else {
                            self.partial_compose(a, j - m + 1, c)
                                .and_then(|ac| self.partial_compose(ac, i, b))
                        };
                        match rhs {
                            Ok(r) if r == lhs => {}
                            Ok(r) => v.push(format!(
                                "(({}) o_{i} ({})) o_{j} ({}): got {}, expected {}",
                                self.name_of(a),
                                self.name_of(b),
                                self.name_of(c),
                                self.name_of(lhs),
                                self.name_of(r),
                            )),
                            Err(_) => {}
                        }
                    }
                }
            }
            Ok(())
        });
        report.push(Check::from_violations("associativity", v));
        report
    }

    fn for_each_level_element(&self, mut f: impl FnMut(OpRef) -> Result<()>) -> Result<()> {
        for n in 0..=self.level_bound {
            for a in self.elements(n)? {
                f(a)?;
            }
        }
        Ok(())
    }

    /// True when levels 0 and 1 are single points.
    pub fn is_reduced(&self) -> bool {
        self.level_size(0) == 1 && self.level_size(1) == 1
    }

    /// Evaluates a function-table element of an endomorphism operad on an
    /// argument tuple. Only meaningful for the `EndSet` backend.
    pub fn end_set_apply(&self, f: OpRef, args: &[u64]) -> Result<u64> {
        let Backend::EndSet { size } = &self.backend else {
            return Err(Error::InvalidElement(format!(
                "{} is not an endomorphism operad of a set",
                self.name
            )));
        };
        Ok(end_set_apply(*size, f, args))
    }

    pub fn end_set_size(&self) -> Option<u64> {
        match &self.backend {
            Backend::EndSet { size } => Some(*size),
            _ => None,
        }
    }
}

impl fmt::Debug for TableOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TableOperad({}, L={})", self.name, self.level_bound)
    }
}

fn end_set_level_size(size: u64, n: u32) -> Option<u64> {
    // size^(size^n) elements; None on overflow.
    let digits = size.checked_pow(n)?;
    let digits: u32 = digits.try_into().ok()?;
    size.checked_pow(digits)
}

fn end_set_apply(size: u64, f: OpRef, args: &[u64]) -> u64 {
    debug_assert_eq!(args.len(), f.level as usize);
    let mut pos = 0u64;
    for &x in args {
        pos = pos * size + x;
    }
    let digits = size.pow(f.level);
    // Digit `pos` counted from the most significant end.
    let shift = digits - 1 - pos;
    (f.index / size.pow(shift as u32)) % size
}

fn end_set_compose(size: u64, a: OpRef, slot: u32, b: OpRef, result_level: u32) -> OpRef {
    let n = a.level as usize;
    let m = b.level as usize;
    let s = slot as usize;
    let total = result_level as usize;
    let mut index = 0u64;
    let mut args = vec![0u64; total];
    loop {
        let inner = end_set_apply(size, b, &args[s - 1..s - 1 + m]);
        let mut outer_args = Vec::with_capacity(n);
        outer_args.extend_from_slice(&args[..s - 1]);
        outer_args.push(inner);
        outer_args.extend_from_slice(&args[s - 1 + m..]);
        index = index * size + end_set_apply(size, a, &outer_args);

        // Advance the argument tuple in lexicographic order.
        let mut k = total;
        loop {
            if k == 0 {
                return OpRef::new(result_level, index);
            }
            k -= 1;
            args[k] += 1;
            if args[k] < size {
                break;
            }
            args[k] = 0;
        }
    }
}

/// A level-preserving assignment between two operads, checked to preserve the
/// identity and all defined partial compositions.
pub struct OperadMap<'a> {
    pub source: &'a TableOperad,
    pub target: &'a TableOperad,
    map: BTreeMap<OpRef, OpRef>,
}

impl<'a> OperadMap<'a> {
    pub fn new(
        source: &'a TableOperad,
        target: &'a TableOperad,
        map: BTreeMap<OpRef, OpRef>,
    ) -> Result<Self> {
        for n in 0..=source.level_bound() {
            for a in source.elements(n)? {
                let img = map.get(&a).ok_or_else(|| {
                    Error::InvalidElement(format!("map undefined on {}", source.name_of(a)))
                })?;
                if img.level != a.level || !target.in_range(*img) {
                    return Err(Error::InvalidElement(format!(
                        "map sends {} to an invalid element",
                        source.name_of(a)
                    )));
                }
            }
        }
        Ok(OperadMap {
            source,
            target,
            map,
        })
    }

    pub fn from_fn(
        source: &'a TableOperad,
        target: &'a TableOperad,
        mut f: impl FnMut(OpRef) -> Result<OpRef>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for n in 0..=source.level_bound() {
            for a in source.elements(n)? {
                map.insert(a, f(a)?);
            }
        }
        OperadMap::new(source, target, map)
    }

    pub fn identity(op: &'a TableOperad) -> Result<Self> {
        OperadMap::from_fn(op, op, Ok)
    }

    pub fn apply(&self, a: OpRef) -> Result<OpRef> {
        self.map.get(&a).copied().ok_or_else(|| {
            Error::InvalidElement(format!("map undefined on {}", self.source.name_of(a)))
        })
    }

    /// Checks that the identity and every defined partial composition are
    /// preserved.
    pub fn verify(&self) -> Report {
        let mut report = Report::new(format!(
            "operad map {} -> {}",
            self.source.name(),
            self.target.name()
        ));
        let mut v = Vec::new();
        match self.apply(self.source.identity()) {
            Ok(r) if r == self.target.identity() => {}
            Ok(r) => v.push(format!(
                "identity maps to {}, expected {}",
                self.target.name_of(r),
                self.target.name_of(self.target.identity())
            )),
            Err(e) => v.push(e.to_string()),
        }
        report.push(Check::from_violations("identity preserved", v));

        let mut v = Vec::new();
        let _ = self.source.for_each_composable(|a, i, b| {
            let Ok(ab) = self.source.partial_compose(a, i, b) else {
                return Ok(());
            };
            let lhs = self.apply(ab);
            let rhs = (|| {
                let fa = self.apply(a)?;
                let fb = self.apply(b)?;
                self.target.partial_compose(fa, i, fb)
            })();
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => v.push(format!(
                    "f({} o_{i} {}) = {} but f(..) o_{i} f(..) = {}",
                    self.source.name_of(a),
                    self.source.name_of(b),
                    self.target.name_of(l),
                    self.target.name_of(r)
                )),
                (_, Err(e)) | (Err(e), _) => v.push(e.to_string()),
            }
            Ok(())
        });
        report.push(Check::from_violations("compositions preserved", v));
        report
    }

    /// Composes two maps.
    pub fn then<'b>(&self, other: &OperadMap<'b>) -> Result<OperadMap<'b>>
    where
        'a: 'b,
    {
        let mut map = BTreeMap::new();
        for (k, v) in &self.map {
            map.insert(*k, other.apply(*v)?);
        }
        OperadMap::new(self.source, other.target, map)
    }
}

/// A chosen multiplication on an operad: a level-0 element and a level-2
/// element subject to associativity and the two unit laws. Exactly the data
/// needed to compare the operad with the one-point operad.
#[derive(Clone)]
pub struct Multiplication {
    pub host: TableOperad,
    pub eps: OpRef,
    pub mu: OpRef,
}

impl Multiplication {
    pub fn new(host: TableOperad, eps: OpRef, mu: OpRef) -> Multiplication {
        Multiplication { host, eps, mu }
    }

    /// By-name convenience used by the command line.
    pub fn by_names(host: TableOperad, eps: &str, mu: &str) -> Result<Multiplication> {
        let eps = host.ref_by_name(eps)?;
        let mu = host.ref_by_name(mu)?;
        Ok(Multiplication { host, eps, mu })
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new(format!("multiplication on {}", self.host.name()));
        let mut v = Vec::new();
        if self.eps.level != 0 {
            v.push(format!("unit element has level {}", self.eps.level));
        }
        if self.mu.level != 2 {
            v.push(format!("product element has level {}", self.mu.level));
        }
        report.push(Check::from_violations("element levels", v));

        let mut v = Vec::new();
        if self.host.level_bound() >= 3 {
            match (
                self.host.partial_compose(self.mu, 1, self.mu),
                self.host.partial_compose(self.mu, 2, self.mu),
            ) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => v.push(format!(
                    "mu o_1 mu = {} but mu o_2 mu = {}",
                    self.host.name_of(l),
                    self.host.name_of(r)
                )),
                (Err(e), _) | (_, Err(e)) => v.push(e.to_string()),
            }
        }
        report.push(Check::from_violations("associativity", v));

        let id = self.host.identity();
        let mut v = Vec::new();
        for slot in [1u32, 2] {
            match self.host.partial_compose(self.mu, slot, self.eps) {
                Ok(r) if r == id => {}
                Ok(r) => v.push(format!(
                    "mu o_{slot} eps = {}, expected the identity",
                    self.host.name_of(r)
                )),
                Err(e) => v.push(e.to_string()),
            }
        }
        report.push(Check::from_violations("unit laws", v));
        report
    }

    /// The operad map from the one-point operad induced by the
    /// multiplication: level `n` goes to the left-bracketed n-fold product.
    pub fn induced_map<'a>(&'a self, assoc: &'a TableOperad) -> Result<OperadMap<'a>> {
        let mut images: Vec<OpRef> = Vec::with_capacity(self.host.level_bound() as usize + 1);
        images.push(self.eps);
        images.push(self.host.identity());
        for _ in 2..=self.host.level_bound() {
            let prev = *images.last().expect("nonempty");
            images.push(self.host.partial_compose(self.mu, 1, prev)?);
        }
        OperadMap::from_fn(assoc, &self.host, |a| {
            images
                .get(a.level as usize)
                .copied()
                .ok_or_else(|| Error::TruncationExceeded {
                    what: "induced multiplicative map".into(),
                    needed: a.level,
                    bound: self.host.level_bound(),
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn associative_operad_passes_everything() {
        let a = TableOperad::associative(3);
        assert_eq!(
            (0..=3).map(|n| a.level_size(n)).collect::<Vec<_>>(),
            vec![1; 4]
        );
        assert!(a.verify().passed());
        // Terminal levelwise: compositions land on the unique point.
        let p = a
            .partial_compose(OpRef::new(2, 0), 1, OpRef::new(2, 0))
            .unwrap();
        assert_eq!(p, OpRef::new(3, 0));
    }

    #[test]
    fn end_set_level_counts() {
        let e = TableOperad::endomorphism_of_set(2, 2).unwrap();
        assert_eq!(
            (0..=2).map(|n| e.level_size(n)).collect::<Vec<_>>(),
            vec![2, 4, 16]
        );
        let singleton = TableOperad::endomorphism_of_set(1, 3).unwrap();
        assert!((0..=3).all(|n| singleton.level_size(n) == 1));
        assert!(singleton.verify().passed());
    }

    #[test]
    fn end_set_axioms_hold_exhaustively() {
        for size in 1..=2u64 {
            for bound in 1..=3u32 {
                let e = TableOperad::endomorphism_of_set(size, bound).unwrap();
                let report = e.verify();
                assert!(report.passed(), "{}", report.to_text());
            }
        }
    }

    #[test]
    fn max_composed_with_constant_zero_is_the_identity() {
        let e = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let max = e.ref_by_name("0111").unwrap();
        let zero = e.ref_by_name("0").unwrap();
        let got = e.partial_compose(max, 1, zero).unwrap();
        assert_eq!(got, e.identity());
        assert_eq!(e.name_of(e.identity()), "01");
    }

    #[test]
    fn full_compose_builds_iterated_max() {
        let e = TableOperad::endomorphism_of_set(2, 3).unwrap();
        let max = e.ref_by_name("0111").unwrap();
        let id = e.identity();
        let got = e.full_compose(max, &[max, id]).unwrap();
        assert_eq!(e.name_of(got), "01111111");
        // Unit tuple is neutral.
        assert_eq!(e.full_compose(max, &[id, id]).unwrap(), max);
    }

    #[test]
    fn truncation_errors_are_flagged() {
        let a = TableOperad::associative(2);
        let two = OpRef::new(2, 0);
        match a.partial_compose(two, 1, two) {
            Err(Error::TruncationExceeded {
                needed: 3,
                bound: 2,
                ..
            }) => {}
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_entry_is_reported_with_its_triple() {
        let e = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let max = e.ref_by_name("0111").unwrap();
        let zero = e.ref_by_name("0").unwrap();
        let one = e.ref_by_name("1").unwrap();
        let bad = e.with_corrupted_entry(max, 1, zero, one);
        let report = bad.verify();
        assert!(!report.passed());
        let text = report.to_text();
        assert!(
            text.contains("0111"),
            "report should name the triple: {text}"
        );
    }

    #[test]
    fn identity_map_on_assoc_is_a_homomorphism() {
        let a = TableOperad::associative(3);
        let id = OperadMap::identity(&a).unwrap();
        assert!(id.verify().passed());
    }

    #[test]
    fn multiplication_max_with_zero_passes_and_with_one_fails() {
        let e = TableOperad::endomorphism_of_set(2, 3).unwrap();
        let max = e.ref_by_name("0111").unwrap();
        let good = Multiplication::new(e.clone(), e.ref_by_name("0").unwrap(), max);
        assert!(good.check().passed());

        let bad = Multiplication::new(e.clone(), e.ref_by_name("1").unwrap(), max);
        let report = bad.check();
        assert!(!report.passed());
        assert!(report.to_text().contains("unit"), "{}", report.to_text());
    }

    #[test]
    fn induced_multiplicative_map_is_a_homomorphism() {
        let e = TableOperad::endomorphism_of_set(2, 3).unwrap();
        let max = e.ref_by_name("0111").unwrap();
        let m = Multiplication::new(e.clone(), e.ref_by_name("0").unwrap(), max);
        let a = TableOperad::associative(3);
        let induced = m.induced_map(&a).unwrap();
        let report = induced.verify();
        assert!(report.passed(), "{}", report.to_text());

        let a2 = TableOperad::associative(2);
        let term = Multiplication::new(a2.clone(), OpRef::new(0, 0), OpRef::new(2, 0));
        let a2b = TableOperad::associative(2);
        assert!(term.induced_map(&a2b).unwrap().verify().passed());
    }

    #[test]
    fn homomorphism_composition_passes() {
        let a = TableOperad::associative(3);
        let e = TableOperad::endomorphism_of_set(2, 3).unwrap();
        let max = e.ref_by_name("0111").unwrap();
        let m = Multiplication::new(e.clone(), e.ref_by_name("0").unwrap(), max);
        let f = OperadMap::identity(&a).unwrap();
        let g = m.induced_map(&a).unwrap();
        let gf = f.then(&g).unwrap();
        assert!(gf.verify().passed());
    }

    #[test]
    fn monoid_operad_round_trip() {
        // Idempotent two-element monoid.
        let m = TableOperad::monoid("idem", &["1", "a"], "1", &[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(m.verify().passed());
        let a = m.ref_by_name("a").unwrap();
        assert_eq!(m.partial_compose(a, 1, a).unwrap(), a);
    }

    #[test]
    fn endomorphism_monoid_matches_the_level_one_part() {
        let mon = TableOperad::endomorphism_monoid(2).unwrap();
        assert!(mon.verify().passed());
        assert_eq!(mon.level_size(1), 4);
        let not = mon.ref_by_name("10").unwrap();
        assert_eq!(mon.partial_compose(not, 1, not).unwrap(), mon.identity());
    }

    #[test]
    fn materialized_table_behaves_identically() {
        let e = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let t = e.materialized().unwrap();
        assert!(t.verify().passed());
        let max = t.ref_by_name("0111").unwrap();
        let zero = t.ref_by_name("0").unwrap();
        assert_eq!(t.partial_compose(max, 2, zero).unwrap(), t.identity());
    }
}
