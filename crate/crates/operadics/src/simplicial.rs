//! Simplicial graded sets: a sequence of graded sets with face and degeneracy
//! assignments, and the elementwise verification of the simplicial
//! identities.

use crate::graded::{GradedMap, GradedSet};
use crate::report::{Check, Report};
use crate::Result;

/// Degrees `0..=top` with faces `d_0..d_n` out of every positive degree and
/// degeneracies `s_0..s_n` out of every degree below the top. All maps are
/// stored elementwise, so the identities can be checked by composing
/// assignments.
pub struct SimplicialGradedSet {
    degrees: Vec<GradedSet>,
    /// `faces[n][i]` maps degree `n` to `n - 1`; `faces[0]` is empty.
    faces: Vec<Vec<GradedMap>>,
    /// `degeneracies[n][i]` maps degree `n` to `n + 1`; empty at the top.
    degeneracies: Vec<Vec<GradedMap>>,
}

impl SimplicialGradedSet {
    pub fn new(
        degrees: Vec<GradedSet>,
        faces: Vec<Vec<GradedMap>>,
        degeneracies: Vec<Vec<GradedMap>>,
    ) -> Result<Self> {
        Ok(SimplicialGradedSet {
            degrees,
            faces,
            degeneracies,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &GradedSet {
        &self.degrees[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &GradedMap {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &GradedMap {
        &self.degeneracies[n][i]
    }

    pub fn faces_at(&self, n: usize) -> &[GradedMap] {
        &self.faces[n]
    }

    pub fn degeneracies_at(&self, n: usize) -> &[GradedMap] {
        &self.degeneracies[n]
    }

    /// Verifies every simplicial identity that stays within the stored
    /// degrees, elementwise.
    pub fn check_identities(&self) -> Report {
        let mut report = Report::new("simplicial identities");
        let top = self.top_degree();

        // d_i d_j = d_{j-1} d_i for i < j.
        let mut v = Vec::new();
        for n in 2..=top {
            let fs = &self.faces[n];
            for j in 1..fs.len() {
                for i in 0..j {
                    let lhs = fs[j].then(&self.faces[n - 1][i]);
                    let rhs = fs[i].then(&self.faces[n - 1][j - 1]);
                    compare_composites(&mut v, lhs, rhs, format!("d_{i} d_{j} at degree {n}"));
                }
            }
        }
        report.push(Check::from_violations("face relations", v));

        // s_i s_j = s_{j+1} s_i for i <= j.
        let mut v = Vec::new();
        for n in 0..top.saturating_sub(1) {
            let ss = &self.degeneracies[n];
            for j in 0..ss.len() {
                for i in 0..=j {
                    let lhs = ss[j].then(&self.degeneracies[n + 1][i]);
                    let rhs = ss[i].then(&self.degeneracies[n + 1][j + 1]);
                    compare_composites(&mut v, lhs, rhs, format!("s_{i} s_{j} at degree {n}"));
                }
            }
        }
        report.push(Check::from_violations("degeneracy relations", v));

        // Mixed relations: s into degree n + 1, then d back down. The branches
        // needing degree n - 1 can only fire when n >= 1.
        let mut v = Vec::new();
        for n in 0..top {
            let ss = &self.degeneracies[n];
            let fs_up = &self.faces[n + 1];
            for (j, s) in ss.iter().enumerate() {
                for (i, d) in fs_up.iter().enumerate() {
                    let lhs = s.then(d);
                    let name = format!("d_{i} s_{j} at degree {n}");
                    if i == j || i == j + 1 {
                        match lhs {
                            Ok(m) if m.is_identity() => {}
                            Ok(_) => v.push(format!("{name} is not the identity")),
                            Err(e) => v.push(format!("{name}: {e}")),
                        }
                    } else if i < j {
                        let rhs = self.faces[n][i].then(&self.degeneracies[n - 1][j - 1]);
                        compare_composites(&mut v, lhs, rhs, name);
                    } else {
                        let rhs = self.faces[n][i - 1].then(&self.degeneracies[n - 1][j]);
                        compare_composites(&mut v, lhs, rhs, name);
                    }
                }
            }
        }
        report.push(Check::from_violations("mixed relations", v));
        report
    }
}

fn compare_composites(
    violations: &mut Vec<String>,
    lhs: Result<GradedMap>,
    rhs: Result<GradedMap>,
    name: String,
) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            for (x, lx) in l.entries() {
                match r.apply(x) {
                    Ok(rx) if rx == lx => {}
                    Ok(rx) => violations.push(format!("{name}: {x} goes to {lx} vs {rx}")),
                    Err(e) => violations.push(format!("{name}: {e}")),
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => violations.push(format!("{name}: {e}")),
    }
}
