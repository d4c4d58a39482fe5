//! The cosimplicial object of a multiplicative operad.
//!
//! A multiplication on an operad `O` (a level-0 element and an associative
//! level-2 element with unit laws) induces a cosimplicial set with `O(n)` in
//! degree `n`: the outer cofaces multiply a fresh variable onto either end,
//! the inner ones compose the product into a slot, and the codegeneracies
//! insert the unit element. Everything is built from partial compositions and
//! stored elementwise, so the cosimplicial identities can be checked by
//! composing tables.
//!
//! The same object arises a second way, as maps out of the two-sided bar
//! resolution of the one-point operad under the graded cartesian product.
//! Levels of that resolution are integer compositions; a map out of it is
//! pinned down by its value on the standard generator, and transporting the
//! simplicial operators across that identification must reproduce the coface
//! and codegeneracy formulas on the nose. [`compare_hochschild`] performs the
//! transport and reports elementwise equality.

use std::collections::BTreeMap;

use crate::report::{Check, Report};
use crate::table::{Multiplication, OpRef, OperadMap, TableOperad};
use crate::{Error, Result};

type OpTable = BTreeMap<OpRef, OpRef>;

pub struct CosimplicialObject {
    pub host: TableOperad,
    pub degree_bound: u32,
    /// `levels[n]` is the carrier of degree `n`.
    pub levels: Vec<Vec<OpRef>>,
    /// `cofaces[n][i]`: degree `n` to `n + 1`, for `n < degree_bound` and
    /// `0 <= i <= n + 1`.
    pub cofaces: Vec<Vec<OpTable>>,
    /// `codegeneracies[n][i]`: degree `n` to `n - 1`, for `1 <= n` and
    /// `0 <= i <= n - 1`.
    pub codegeneracies: Vec<Vec<OpTable>>,
}

/// Builds degrees `0..=degree_bound`. Requires the multiplication to pass its
/// own checks and the operad to hold the degrees.
pub fn build_cosimplicial(m: &Multiplication, degree_bound: u32) -> Result<CosimplicialObject> {
    let host = &m.host;
    if degree_bound > host.level_bound() {
        return Err(Error::TruncationExceeded {
            what: "cosimplicial degrees".into(),
            needed: degree_bound,
            bound: host.level_bound(),
        });
    }
    let mcheck = m.check();
    if !mcheck.passed() {
        return Err(Error::InvalidElement(format!(
            "multiplication fails its laws:\n{}",
            mcheck.to_text()
        )));
    }

    let mut levels = Vec::with_capacity(degree_bound as usize + 1);
    for n in 0..=degree_bound {
        levels.push(host.elements(n)?);
    }

    let mut cofaces = Vec::new();
    for n in 0..degree_bound {
        let mut maps = Vec::with_capacity(n as usize + 2);
        for i in 0..=n + 1 {
            let mut table = OpTable::new();
            for &f in &levels[n as usize] {
                let img = coface(m, f, i, n)?;
                table.insert(f, img);
            }
            maps.push(table);
        }
        cofaces.push(maps);
    }

    let mut codegeneracies = vec![Vec::new()];
    for n in 1..=degree_bound {
        let mut maps = Vec::with_capacity(n as usize);
        for i in 0..n {
            let mut table = OpTable::new();
            for &f in &levels[n as usize] {
                // Insert the unit into slot i + 1.
                table.insert(f, host.partial_compose(f, i + 1, m.eps)?);
            }
            maps.push(table);
        }
        codegeneracies.push(maps);
    }

    Ok(CosimplicialObject {
        host: host.clone(),
        degree_bound,
        levels,
        cofaces,
        codegeneracies,
    })
}

fn coface(m: &Multiplication, f: OpRef, i: u32, n: u32) -> Result<OpRef> {
    let host = &m.host;
    if i == 0 {
        // A fresh first variable multiplied from the left.
        host.partial_compose(m.mu, 2, f)
    } else if i <= n {
        // The product lands in slot i.
        host.partial_compose(f, i, m.mu)
    } else {
        // A fresh last variable multiplied from the right.
        host.partial_compose(m.mu, 1, f)
    }
}

impl CosimplicialObject {
    /// Verifies every cosimplicial identity that stays within the stored
    /// degrees, elementwise.
    pub fn check(&self) -> Report {
        let mut report = Report::new(format!(
            "cosimplicial identities over {} (degrees <= {})",
            self.host.name(),
            self.degree_bound
        ));

        // d^j d^i = d^i d^{j-1} for i < j.
        let mut v = Vec::new();
        for n in 0..self.degree_bound.saturating_sub(1) {
            let lower = &self.cofaces[n as usize];
            let upper = &self.cofaces[n as usize + 1];
            for j in 1..=n + 2 {
                for i in 0..j {
                    for &f in &self.levels[n as usize] {
                        let lhs = upper[j as usize][&lower[i as usize][&f]];
                        let rhs = upper[i as usize][&lower[j as usize - 1][&f]];
                        if lhs != rhs {
                            v.push(format!(
                                "d^{j} d^{i} vs d^{i} d^{}: differ on {} at degree {n}",
                                j - 1,
                                self.host.name_of(f)
                            ));
                        }
                    }
                }
            }
        }
        report.push(Check::from_violations("coface relations", v));

        // s_j s_i = s_i s_{j+1} for i <= j, applying the inner map first.
        let mut v = Vec::new();
        for n in 2..=self.degree_bound {
            let upper = &self.codegeneracies[n as usize];
            let lower = &self.codegeneracies[n as usize - 1];
            for j in 0..=n - 2 {
                for i in 0..=j {
                    for &f in &self.levels[n as usize] {
                        let lhs = lower[j as usize][&upper[i as usize][&f]];
                        let rhs = lower[i as usize][&upper[j as usize + 1][&f]];
                        if lhs != rhs {
                            v.push(format!(
                                "s_{j} s_{i} vs s_{i} s_{}: differ on {} at degree {n}",
                                j + 1,
                                self.host.name_of(f)
                            ));
                        }
                    }
                }
            }
        }
        report.push(Check::from_violations("codegeneracy relations", v));

        // Mixed relations: s_j d^i.
        let mut v = Vec::new();
        for n in 0..self.degree_bound {
            let d = &self.cofaces[n as usize];
            let s_up = &self.codegeneracies[n as usize + 1];
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for &f in &self.levels[n as usize] {
                        let lhs = s_up[j as usize][&d[i as usize][&f]];
                        let expected = if i == j || i == j + 1 {
                            f
                        } else if i < j {
                            // s_j d^i = d^i s_{j-1}.
                            let s_here = &self.codegeneracies[n as usize];
                            self.cofaces[n as usize - 1][i as usize][&s_here[j as usize - 1][&f]]
                        } else {
                            // i > j + 1: s_j d^i = d^{i-1} s_j.
                            let s_here = &self.codegeneracies[n as usize];
                            self.cofaces[n as usize - 1][i as usize - 1][&s_here[j as usize][&f]]
                        };
                        if lhs != expected {
                            v.push(format!(
                                "s_{j} d^{i} differs on {} at degree {n}",
                                self.host.name_of(f)
                            ));
                        }
                    }
                }
            }
        }
        report.push(Check::from_violations("mixed relations", v));
        report
    }

    /// The set-level limit: degree-zero elements equalized by the two
    /// cofaces.
    pub fn discrete_limit(&self) -> Result<Vec<OpRef>> {
        if self.degree_bound < 1 {
            return Err(Error::TruncationExceeded {
                what: "limit needs degrees 0 and 1".into(),
                needed: 1,
                bound: self.degree_bound,
            });
        }
        Ok(self.levels[0]
            .iter()
            .copied()
            .filter(|c| self.cofaces[0][0][c] == self.cofaces[0][1][c])
            .collect())
    }

    /// Pushes this object along a homomorphism commuting with the chosen
    /// multiplications, and checks that all operators commute elementwise.
    pub fn naturality_along(&self, map: &OperadMap, other: &CosimplicialObject) -> Report {
        let mut report = Report::new(format!(
            "cosimplicial naturality along {} -> {}",
            self.host.name(),
            other.host.name()
        ));
        let bound = self.degree_bound.min(other.degree_bound);
        let mut v = Vec::new();
        for n in 0..bound {
            for i in 0..=n + 1 {
                for &f in &self.levels[n as usize] {
                    let lhs = map.apply(self.cofaces[n as usize][i as usize][&f]);
                    let rhs = map
                        .apply(f)
                        .map(|g| other.cofaces[n as usize][i as usize][&g]);
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        _ => v.push(format!(
                            "coface {i} at degree {n} does not commute on {}",
                            self.host.name_of(f)
                        )),
                    }
                }
            }
        }
        for n in 1..=bound {
            for i in 0..n {
                for &f in &self.levels[n as usize] {
                    let lhs = map.apply(self.codegeneracies[n as usize][i as usize][&f]);
                    let rhs = map
                        .apply(f)
                        .map(|g| other.codegeneracies[n as usize][i as usize][&g]);
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        _ => v.push(format!(
                            "codegeneracy {i} at degree {n} does not commute on {}",
                            self.host.name_of(f)
                        )),
                    }
                }
            }
        }
        report.push(Check::from_violations("operators commute", v));
        report
    }
}

// ---------------------------------------------------------------------------
// The bar resolution under the graded cartesian product, and the comparison.

/// Degree `n` of the bar resolution is the (n+2)-fold cartesian power of the
/// one-point operad; its level-L part is the set of compositions of L into
/// n + 2 nonnegative parts. Faces add adjacent parts, degeneracies insert a
/// zero part.
#[derive(Clone, Debug)]
pub struct BarResolution {
    pub degree_bound: u32,
    pub level_bound: u32,
    /// `degrees[n][level]` lists the compositions.
    pub degrees: Vec<Vec<Vec<Composition>>>,
}

pub type Composition = Vec<u32>;

pub fn bar_resolution(degree_bound: u32, level_bound: u32) -> BarResolution {
    let mut degrees = Vec::with_capacity(degree_bound as usize + 1);
    for n in 0..=degree_bound {
        let parts = n as usize + 2;
        let mut by_level = Vec::with_capacity(level_bound as usize + 1);
        for level in 0..=level_bound {
            by_level.push(crate::util::compositions(level, parts, level));
        }
        degrees.push(by_level);
    }
    BarResolution {
        degree_bound,
        level_bound,
        degrees,
    }
}

impl BarResolution {
    pub fn face(c: &Composition, i: usize) -> Composition {
        let mut out = Vec::with_capacity(c.len() - 1);
        out.extend_from_slice(&c[..i]);
        out.push(c[i] + c[i + 1]);
        out.extend_from_slice(&c[i + 2..]);
        out
    }

    pub fn degeneracy(c: &Composition, i: usize) -> Composition {
        let mut out = Vec::with_capacity(c.len() + 1);
        out.extend_from_slice(&c[..i + 1]);
        out.push(0);
        out.extend_from_slice(&c[i + 1..]);
        out
    }

    /// The free generator of degree `n`: zero at both ends, ones between.
    pub fn generator(n: u32) -> Composition {
        let mut g = vec![0u32];
        g.extend(std::iter::repeat_n(1u32, n as usize));
        g.push(0);
        g
    }

    /// Simplicial identities on compositions, checked directly.
    pub fn check(&self) -> Report {
        let mut report = Report::new("bar resolution simplicial identities");
        let mut v = Vec::new();
        for n in 2..=self.degree_bound as usize {
            for by_level in &self.degrees[n] {
                for c in by_level {
                    for j in 1..n + 1 {
                        for i in 0..j {
                            let lhs = Self::face(&Self::face(c, j), i);
                            let rhs = Self::face(&Self::face(c, i), j - 1);
                            if lhs != rhs {
                                v.push(format!("d_{i} d_{j} on {c:?}"));
                            }
                        }
                    }
                }
            }
        }
        report.push(Check::from_violations("face relations", v));

        let mut v = Vec::new();
        for n in 0..self.degree_bound as usize {
            for by_level in &self.degrees[n] {
                for c in by_level {
                    for j in 0..=n {
                        for i in 0..=j {
                            let lhs = Self::degeneracy(&Self::degeneracy(c, j), i);
                            let rhs = Self::degeneracy(&Self::degeneracy(c, i), j + 1);
                            if lhs != rhs {
                                v.push(format!("s_{i} s_{j} on {c:?}"));
                            }
                        }
                        for i in 0..=n + 1 {
                            let val = Self::face(&Self::degeneracy(c, j), i);
                            let expected = if i == j || i == j + 1 {
                                c.clone()
                            } else if i < j {
                                Self::degeneracy(&Self::face(c, i), j - 1)
                            } else {
                                Self::degeneracy(&Self::face(c, i - 1), j)
                            };
                            if val != expected {
                                v.push(format!("d_{i} s_{j} on {c:?}"));
                            }
                        }
                    }
                }
            }
        }
        report.push(Check::from_violations("degeneracy and mixed relations", v));
        report
    }
}

/// A bimodule map out of a bar degree into the operad, reconstructed from its
/// value at the free generator: the left and right actions fill the end
/// parts, the inner actions fill the middle parts.
fn transported_value(m: &Multiplication, n: u32, value: OpRef, c: &Composition) -> Result<OpRef> {
    let host = &m.host;
    debug_assert_eq!(c.len(), n as usize + 2);
    let mut widths: Vec<u32> = vec![1; n as usize];
    let mut acc = value;

    // Middle parts, shrinking ones first so intermediate levels never exceed
    // max(n, final level).
    let mut order: Vec<usize> = (0..n as usize).collect();
    order.sort_by_key(|&t| c[t + 1]);
    for t in order {
        let target = c[t + 1];
        if target == 1 {
            continue;
        }
        let slot: u32 = 1 + widths[..t].iter().sum::<u32>();
        let arg = induced_element(m, target)?;
        acc = host.partial_compose(acc, slot, arg)?;
        widths[t] = target;
    }

    // The left end: multiply a block of fresh variables from the left.
    if c[0] > 0 {
        let left = induced_element(m, c[0])?;
        let mu_applied = host.partial_compose(m.mu, 2, acc)?;
        acc = host.partial_compose(mu_applied, 1, left)?;
    }
    // The right end.
    if c[n as usize + 1] > 0 {
        let right = induced_element(m, c[n as usize + 1])?;
        let mu_applied = host.partial_compose(m.mu, 1, acc)?;
        acc = host.partial_compose(mu_applied, acc.level + 1, right)?;
    }
    Ok(acc)
}

/// The image of the unique arity-k element under the multiplicative
/// structure: the left-bracketed k-fold product.
fn induced_element(m: &Multiplication, k: u32) -> Result<OpRef> {
    let host = &m.host;
    let mut acc = match k {
        0 => return Ok(m.eps),
        _ => host.identity(),
    };
    for _ in 1..k {
        acc = host.partial_compose(m.mu, 1, acc)?;
    }
    Ok(acc)
}

/// Compares the cosimplicial object of a multiplication with the transport of
/// the bar resolution's simplicial operators: for every degree and operator,
/// the two constructions must agree elementwise. Also checks that bimodule
/// maps out of each bar degree biject with the operad level by counting
/// consistent generator values.
pub fn compare_hochschild(m: &Multiplication, degree_bound: u32) -> Result<Report> {
    let mut report = Report::new(format!(
        "bar resolution transport over {} (degrees <= {degree_bound})",
        m.host.name()
    ));
    let host = &m.host;
    let bar = bar_resolution(degree_bound + 1, host.level_bound());
    report.extend(bar.check());

    let direct = build_cosimplicial(m, degree_bound)?;

    // Freeness: for each degree, every operad element is a consistent
    // generator value, and distinct elements stay distinct. Consistency means
    // the reconstruction commutes with every single action step.
    let mut v = Vec::new();
    for n in 0..=degree_bound {
        let mut consistent = 0u64;
        for f in host.elements(n)? {
            if generator_value_consistent(m, n, f, &bar)? {
                consistent += 1;
            } else {
                v.push(format!(
                    "generator value {} at degree {n} is inconsistent",
                    host.name_of(f)
                ));
            }
        }
        if consistent != host.level_size(n) {
            v.push(format!(
                "degree {n}: {consistent} bimodule maps vs {} operad elements",
                host.level_size(n)
            ));
        }
    }
    report.push(Check::from_violations(
        "bimodule maps biject with operad levels",
        v,
    ));

    // Transport the simplicial operators and compare with the direct
    // construction.
    let mut v = Vec::new();
    for n in 0..degree_bound {
        let gen_up = BarResolution::generator(n + 1);
        for i in 0..=n as usize + 1 {
            let moved = BarResolution::face(&gen_up, i);
            for &f in &direct.levels[n as usize] {
                let transported = transported_value(m, n, f, &moved)?;
                let stated = direct.cofaces[n as usize][i][&f];
                if transported != stated {
                    v.push(format!(
                        "coface {i} at degree {n} on {}: transport gives {}, formula gives {}",
                        host.name_of(f),
                        host.name_of(transported),
                        host.name_of(stated)
                    ));
                }
            }
        }
    }
    for n in 1..=degree_bound {
        let gen_down = BarResolution::generator(n - 1);
        for i in 0..n as usize {
            let moved = BarResolution::degeneracy(&gen_down, i);
            for &f in &direct.levels[n as usize] {
                let transported = transported_value(m, n, f, &moved)?;
                let stated = direct.codegeneracies[n as usize][i][&f];
                if transported != stated {
                    v.push(format!(
                        "codegeneracy {i} at degree {n} on {}: transport gives {}, formula gives {}",
                        host.name_of(f),
                        host.name_of(transported),
                        host.name_of(stated)
                    ));
                }
            }
        }
    }
    report.push(Check::from_violations(
        "transported operators equal the direct ones",
        v,
    ));
    Ok(report)
}

/// Checks that reconstructing a map from a generator value commutes with
/// every one-step action on every composition within bounds: composing an
/// induced element into any slot (which grows the owning part), and the two
/// end multiplications.
fn generator_value_consistent(
    m: &Multiplication,
    n: u32,
    value: OpRef,
    bar: &BarResolution,
) -> Result<bool> {
    let host = &m.host;
    let bound = host.level_bound();
    for by_level in &bar.degrees[n as usize] {
        for c in by_level {
            let level: u32 = c.iter().sum();
            let base = transported_value(m, n, value, c)?;

            // Slot actions: for a slot owned by part `t`, composing with the
            // induced arity-k element turns the part width w into w + k - 1.
            for k in 0..=bound {
                if k == 1 || level + k < 1 || level + k - 1 > bound {
                    continue;
                }
                let arg = induced_element(m, k)?;
                let mut slot = 0u32;
                for (t, &w) in c.iter().enumerate() {
                    for _ in 0..w {
                        slot += 1;
                        let mut c2 = c.clone();
                        c2[t] = w + k - 1;
                        let expected = transported_value(m, n, value, &c2)?;
                        let acted = host.partial_compose(base, slot, arg)?;
                        if acted != expected {
                            return Ok(false);
                        }
                    }
                }
            }

            // End multiplications grow the outer parts.
            for k in 1..=bound {
                if level + k > bound {
                    continue;
                }
                let block = induced_element(m, k)?;

                let mut c2 = c.clone();
                c2[0] += k;
                let expected = transported_value(m, n, value, &c2)?;
                let mu_applied = host.partial_compose(m.mu, 2, base)?;
                if host.partial_compose(mu_applied, 1, block)? != expected {
                    return Ok(false);
                }

                let mut c2 = c.clone();
                c2[n as usize + 1] += k;
                let expected = transported_value(m, n, value, &c2)?;
                let mu_applied = host.partial_compose(m.mu, 1, base)?;
                if host.partial_compose(mu_applied, base.level + 1, block)? != expected {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn end2_max() -> Multiplication {
        let e = TableOperad::endomorphism_of_set(2, 3).unwrap();
        let eps = e.ref_by_name("0").unwrap();
        let mu = e.ref_by_name("0111").unwrap();
        Multiplication::new(e, eps, mu)
    }

    fn assoc_mult(bound: u32) -> Multiplication {
        let a = TableOperad::associative(bound);
        Multiplication::new(a, OpRef::new(0, 0), OpRef::new(2, 0))
    }

    #[test]
    fn one_point_operad_gives_the_terminal_object() {
        let c = build_cosimplicial(&assoc_mult(3), 3).unwrap();
        assert!(c.levels.iter().all(|l| l.len() == 1));
        let report = c.check();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(c.discrete_limit().unwrap().len(), 1);
    }

    #[test]
    fn cofaces_of_the_identity_all_give_the_product() {
        let m = end2_max();
        let c = build_cosimplicial(&m, 2).unwrap();
        let id = m.host.identity();
        for i in 0..=2usize {
            assert_eq!(c.cofaces[1][i][&id], m.mu, "coface {i}");
        }
    }

    #[test]
    fn codegeneracy_of_the_product_is_the_identity() {
        let m = end2_max();
        let c = build_cosimplicial(&m, 2).unwrap();
        assert_eq!(c.codegeneracies[2][0][&m.mu], m.host.identity());
        assert_eq!(c.codegeneracies[2][1][&m.mu], m.host.identity());
    }

    #[test]
    fn identities_hold_for_set_endomorphisms() {
        let c = build_cosimplicial(&end2_max(), 3).unwrap();
        let report = c.check();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn swapped_coface_tables_are_reported() {
        let mut c = build_cosimplicial(&end2_max(), 3).unwrap();
        c.cofaces[1].swap(1, 2);
        let report = c.check();
        assert!(!report.passed());
        let text = report.to_text();
        assert!(text.contains("degree"), "{text}");
    }

    #[test]
    fn discrete_limits_match_the_expected_counts() {
        assert_eq!(
            build_cosimplicial(&assoc_mult(2), 1)
                .unwrap()
                .discrete_limit()
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            build_cosimplicial(&end2_max(), 1)
                .unwrap()
                .discrete_limit()
                .unwrap()
                .len(),
            2
        );

        // Left-zero-with-unit monoid on three points: only the unit commutes
        // with everything.
        let e3 = TableOperad::endomorphism_of_set(3, 3).unwrap();
        let mu = e3.ref_by_name("012111222").unwrap();
        let eps = e3.ref_by_name("0").unwrap();
        let m = Multiplication::new(e3, eps, mu);
        assert!(m.check().passed(), "{}", m.check().to_text());
        let c = build_cosimplicial(&m, 1).unwrap();
        assert_eq!(c.discrete_limit().unwrap().len(), 1);
    }

    #[test]
    fn bar_resolution_identities_and_freeness() {
        let bar = bar_resolution(3, 2);
        let report = bar.check();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(BarResolution::generator(2), vec![0, 1, 1, 0]);
    }

    #[test]
    fn transport_matches_the_direct_construction() {
        let report = compare_hochschild(&end2_max(), 2).unwrap();
        assert!(report.passed(), "{}", report.to_text());

        let report = compare_hochschild(&assoc_mult(3), 2).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn transport_matches_at_a_deeper_degree() {
        let e = TableOperad::endomorphism_of_set(2, 3).unwrap();
        let m = Multiplication::new(
            e.clone(),
            e.ref_by_name("0").unwrap(),
            e.ref_by_name("0111").unwrap(),
        );
        let report = compare_hochschild(&m, 3).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn naturality_along_the_induced_multiplicative_map() {
        let m = end2_max();
        let a = TableOperad::associative(3);
        let am = Multiplication::new(a.clone(), OpRef::new(0, 0), OpRef::new(2, 0));
        let ca = build_cosimplicial(&am, 2).unwrap();
        let ce = build_cosimplicial(&m, 2).unwrap();
        let induced = m.induced_map(&a).unwrap();
        assert!(induced.verify().passed());
        let report = ca.naturality_along(&induced, &ce);
        assert!(report.passed(), "{}", report.to_text());
    }
}
