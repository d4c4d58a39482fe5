//! Python bindings for the operadics kernel.
//!
//! Exposes the main types and operations as a small extension module:
//! operads as a class, the coproduct rewriting system, and one-call wrappers
//! for the resolutions, the cosimplicial comparisons, and the selftest.
//!
//! Build the shared library with `cargo build -p operadics-py`, then see
//! `python/smoke_test.py` at the repository root for a usage tour.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use operadics::acceptance;
use operadics::coproduct::{OperadCoproduct, Side};
use operadics::cosimplicial::{build_cosimplicial, compare_hochschild};
use operadics::elem::Elem;
use operadics::free_operad::free_operad_level;
use operadics::graded::GradedSet;
use operadics::modules::{
    hochschild, module_endomorphism_operad, splitting_resolution, RightModule,
};
use operadics::schema;
use operadics::table::{Multiplication, TableOperad};
use operadics::tree::enumerate_trees;

fn err<T>(r: operadics::Result<T>) -> PyResult<T> {
    r.map_err(|e| PyValueError::new_err(e.to_string()))
}

fn generator_set(levels: &[u32]) -> PyResult<GradedSet> {
    let bound = levels.iter().copied().max().unwrap_or(0);
    let mut by_level: Vec<Vec<Elem>> = vec![Vec::new(); bound as usize + 1];
    for (k, l) in levels.iter().enumerate() {
        by_level[*l as usize].push(Elem::atom(*l, format!("g{k}")));
    }
    err(GradedSet::new(by_level))
}

/// A finite truncated operad.
#[pyclass(name = "Operad", from_py_object)]
#[derive(Clone)]
struct PyOperad {
    inner: TableOperad,
}

#[pymethods]
impl PyOperad {
    /// The operad with a single point at every level up to the bound.
    #[staticmethod]
    fn assoc(level_bound: u32) -> PyOperad {
        PyOperad {
            inner: TableOperad::associative(level_bound),
        }
    }

    /// The endomorphism operad of the set {0, .., size-1}.
    #[staticmethod]
    fn end_set(size: u64, level_bound: u32) -> PyResult<PyOperad> {
        Ok(PyOperad {
            inner: err(TableOperad::endomorphism_of_set(size, level_bound))?,
        })
    }

    /// The monoid of self-maps of {0, .., size-1}, concentrated at level 1.
    #[staticmethod]
    fn end_monoid(size: u64) -> PyResult<PyOperad> {
        Ok(PyOperad {
            inner: err(TableOperad::endomorphism_monoid(size))?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyOperad> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyOperad {
            inner: err(schema::operad_from_value(&v))?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        let v = err(schema::operad_to_value(&self.inner))?;
        Ok(serde_json::to_string_pretty(&v).expect("serializable"))
    }

    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn level_bound(&self) -> u32 {
        self.inner.level_bound()
    }

    fn level_size(&self, n: u32) -> u64 {
        self.inner.level_size(n)
    }

    fn identity(&self) -> String {
        self.inner.name_of(self.inner.identity())
    }

    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    /// Partial composition by element names; slots count from 1.
    fn compose(&self, a: &str, slot: u32, b: &str) -> PyResult<String> {
        let a = err(self.inner.ref_by_name(a))?;
        let b = err(self.inner.ref_by_name(b))?;
        let r = err(self.inner.partial_compose(a, slot, b))?;
        Ok(self.inner.name_of(r))
    }

    /// Runs the axiom checks; returns (passed, report text).
    fn verify(&self) -> (bool, String) {
        let report = self.inner.verify();
        (report.passed(), report.to_text())
    }

    fn __repr__(&self) -> String {
        format!(
            "Operad({}, level_bound={})",
            self.inner.name(),
            self.inner.level_bound()
        )
    }
}

/// The coproduct of two operads, with its rewriting system.
#[pyclass(name = "Coproduct")]
struct PyCoproduct {
    inner: OperadCoproduct,
}

/// Per-branch-count word counts, collapsible counts, normal-form counts, and
/// the recursion verdict.
type CensusTuple = (Vec<u64>, Vec<u64>, Vec<u64>, bool);

fn parse_chain(cop: &OperadCoproduct, chain: &str) -> PyResult<operadics::coproduct::Word> {
    let letters = chain
        .split(',')
        .map(|tok| {
            let (side, name) = tok
                .trim()
                .split_once(':')
                .ok_or_else(|| PyValueError::new_err(format!("bad chain letter {tok:?}")))?;
            let side = match side.trim() {
                "p" | "P" => Side::Left,
                "q" | "Q" => Side::Right,
                other => return Err(PyValueError::new_err(format!("unknown side {other:?}"))),
            };
            Ok((side, name.trim()))
        })
        .collect::<PyResult<Vec<_>>>()?;
    err(cop.word_from_chain(&letters))
}

#[pymethods]
impl PyCoproduct {
    #[new]
    fn new(left: PyOperad, right: PyOperad) -> PyCoproduct {
        PyCoproduct {
            inner: OperadCoproduct::new(left.inner, right.inner),
        }
    }

    /// Normalizes a level-one chain like "p:a,p:a,q:1,q:a"; returns the
    /// surviving letters root-first, e.g. ["p:a", "q:a"].
    fn normalize_chain(&self, chain: &str) -> PyResult<Vec<String>> {
        let w = parse_chain(&self.inner, chain)?;
        let mut nf = err(self.inner.normalize(&w))?;
        let mut out = Vec::new();
        loop {
            match nf {
                operadics::free_operad::LabeledTree::Leaf => return Ok(out),
                operadics::free_operad::LabeledTree::Node { label, children } => {
                    let side = if label.comp == 0 { "p" } else { "q" };
                    let name = match &label.payload {
                        operadics::coproduct::Payload::Op(r) => self
                            .inner
                            .side(if label.comp == 0 {
                                Side::Left
                            } else {
                                Side::Right
                            })
                            .name_of(*r),
                        operadics::coproduct::Payload::Gen(e) => e.to_string(),
                    };
                    out.push(format!("{side}:{name}"));
                    nf = children.into_iter().next().expect("level-one chain");
                }
            }
        }
    }

    /// Census at one level: returns (words, collapsible, normal_forms,
    /// recursion_holds) with the three count vectors indexed by branch count.
    fn census(&self, level: u32, max_beta: u32) -> PyResult<CensusTuple> {
        let c = err(self.inner.census(level, max_beta, 1))?;
        Ok((c.t, c.c, c.f, c.recursion_holds))
    }

    /// Congruence-closure classification: returns (class count, checks pass).
    fn oracle(&self, level: u32, max_beta: u32) -> PyResult<(usize, bool)> {
        let (_, classes, report) = err(self.inner.oracle(level, max_beta))?;
        Ok((classes.len(), report.passed()))
    }
}

/// Level counts of the free operad on generators at the given levels.
#[pyfunction]
fn free_operad_counts(
    generator_levels: Vec<u32>,
    max_level: u32,
    max_branch: u32,
    max_arity: u32,
) -> PyResult<Vec<usize>> {
    let gens = generator_set(&generator_levels)?;
    Ok((0..=max_level)
        .map(|n| free_operad_level(&gens, n, max_branch, max_arity).len())
        .collect())
}

/// Number of planar rooted trees within the stated bounds.
#[pyfunction]
fn tree_count(max_leaf: u32, max_branch: u32, max_arity: u32, allow_nullary: bool) -> usize {
    enumerate_trees(max_leaf, max_branch, max_arity, allow_nullary).len()
}

/// Builds the Hochschild resolution and checks its identities; returns
/// (passed, degree sizes).
#[pyfunction]
fn hochschild_check(op: PyOperad, n_max: u32, bound: u32) -> PyResult<(bool, Vec<Vec<usize>>)> {
    let h = err(hochschild(&op.inner, n_max, bound))?;
    let sizes = (0..=h.simplicial.top_degree())
        .map(|n| h.simplicial.degree(n).sizes())
        .collect();
    Ok((h.check().passed(), sizes))
}

/// Path-component counts of the splitting resolution, plus whether the
/// component checks pass.
#[pyfunction]
fn splitting_components(
    generator_levels: Vec<u32>,
    k_max: u32,
    max_level: u32,
    max_nodes: u32,
) -> PyResult<(Vec<u64>, bool)> {
    let gens = generator_set(&generator_levels)?;
    let res = err(splitting_resolution(&gens, k_max, max_level, max_nodes))?;
    let identities = res.simplicial.check_identities().passed();
    let (counts, report) = err(res.pi0_report())?;
    Ok((counts, identities && report.passed()))
}

/// Sizes of the endomorphism operad of an operad over itself, plus whether
/// the comparison with the operad passes.
#[pyfunction]
fn end_operad_sizes(op: PyOperad, n_max: u32) -> PyResult<(Vec<usize>, bool)> {
    let module = err(RightModule::over_self(&op.inner, op.inner.level_bound()))?;
    let end = err(module_endomorphism_operad(&module, n_max, 1 << 22))?;
    let sizes = end.maps.iter().map(Vec::len).collect();
    let passed = end.operad.verify().passed() && err(end.compare_with_operad(&module))?.passed();
    Ok((sizes, passed))
}

fn multiplication(op: &PyOperad, eps: &str, mu: &str) -> PyResult<Multiplication> {
    err(Multiplication::by_names(op.inner.clone(), eps, mu))
}

/// Element names in the discrete limit of the cosimplicial object.
#[pyfunction]
fn cosimplicial_limit(op: PyOperad, eps: &str, mu: &str) -> PyResult<Vec<String>> {
    let m = multiplication(&op, eps, mu)?;
    let c = err(build_cosimplicial(&m, 1))?;
    let limit = err(c.discrete_limit())?;
    Ok(limit.iter().map(|r| m.host.name_of(*r)).collect())
}

/// Checks the cosimplicial identities up to the given degree.
#[pyfunction]
fn cosimplicial_check(op: PyOperad, eps: &str, mu: &str, degrees: u32) -> PyResult<bool> {
    let m = multiplication(&op, eps, mu)?;
    Ok(err(build_cosimplicial(&m, degrees))?.check().passed())
}

/// Compares the direct cosimplicial construction with the operators
/// transported from the bar resolution.
#[pyfunction]
fn compare_bar_transport(op: PyOperad, eps: &str, mu: &str, degrees: u32) -> PyResult<bool> {
    let m = multiplication(&op, eps, mu)?;
    Ok(err(compare_hochschild(&m, degrees))?.passed())
}

/// The value table of binary max over {0, .., size-1}, usable as a `mu` name
/// for endomorphism operads.
#[pyfunction]
fn max_table(size: u64) -> String {
    let mut out = String::new();
    for x in 0..size {
        for y in 0..size {
            out.push(char::from_digit(x.max(y) as u32, 10).expect("single digit"));
        }
    }
    out
}

/// Runs the full acceptance suite; returns (passed, report text).
#[pyfunction]
#[pyo3(signature = (seed = acceptance::DEFAULT_SEED, jobs = 1))]
fn selftest(seed: u64, jobs: usize) -> PyResult<(bool, String)> {
    let report = err(acceptance::run_all(seed, jobs))?;
    Ok((report.passed(), report.to_text()))
}

#[pymodule]
fn operadics_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperad>()?;
    m.add_class::<PyCoproduct>()?;
    m.add_function(wrap_pyfunction!(free_operad_counts, m)?)?;
    m.add_function(wrap_pyfunction!(tree_count, m)?)?;
    m.add_function(wrap_pyfunction!(hochschild_check, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_components, m)?)?;
    m.add_function(wrap_pyfunction!(end_operad_sizes, m)?)?;
    m.add_function(wrap_pyfunction!(cosimplicial_limit, m)?)?;
    m.add_function(wrap_pyfunction!(cosimplicial_check, m)?)?;
    m.add_function(wrap_pyfunction!(compare_bar_transport, m)?)?;
    m.add_function(wrap_pyfunction!(max_table, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
