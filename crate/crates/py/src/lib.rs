//! Python module `rmatch`: hypergraphs, degree conditions, the constructive
//! matcher, the exact LP engine and the oracle.
//!
//! Edges are tuples of ints, partial tuples are `{side: index}` dicts and exact
//! rationals come back as `fractions.Fraction`.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use rmatch_core::conditions::{self, ConditionReport as CoreReport};
use rmatch_core::fractional;
use rmatch_core::generators::{self, LatinRule};
use rmatch_core::matcher::{self, TraceFile};
use rmatch_core::oracle::{self, DEFAULT_BUDGET};
use rmatch_core::rational::{format_pq, Rational};
use rmatch_core::text::parse_hypergraph;
use rmatch_core::{Edge, Error, Hypergraph as CoreGraph, Matching, PartialTuple};

create_exception!(rmatch, RmatchError, PyException);
create_exception!(rmatch, ConditionViolated, RmatchError);
create_exception!(rmatch, NoPerfectMatching, RmatchError);
create_exception!(rmatch, BudgetExhausted, RmatchError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::ConditionViolated(_) | Error::HypothesisViolated { .. } => ConditionViolated::new_err(msg),
        Error::NoNearPerfectFound { .. } => NoPerfectMatching::new_err(msg),
        Error::BudgetExhausted { .. } => BudgetExhausted::new_err(msg),
        Error::Parse { .. }
        | Error::InvalidTuple(_)
        | Error::InvalidQuery(_)
        | Error::InvalidSides(_)
        | Error::InvalidSubset { .. }
        | Error::InvalidParameter(_)
        | Error::InvalidMatching(_)
        | Error::UnsupportedArity { .. } => PyValueError::new_err(msg),
        _ => RmatchError::new_err(msg),
    }
}

fn edges_out(m: &Matching) -> Vec<Vec<usize>> {
    m.iter().map(|e| e.as_slice().to_vec()).collect()
}

fn matching_in(edges: Vec<Vec<usize>>) -> Matching {
    Matching::new(edges.into_iter().map(Edge::new).collect())
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_pq(x),))
}

#[pyclass(name = "Hypergraph", module = "rmatch", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHypergraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(r: usize, n: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        CoreGraph::new(r, n, edges.into_iter().map(Edge::new))
            .map(|inner| PyHypergraph { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        parse_hypergraph(text)
            .map(|p| PyHypergraph { inner: p.graph })
            .map_err(to_py)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().iter().map(|e| e.as_slice().to_vec()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __contains__(&self, edge: Vec<usize>) -> bool {
        self.inner.contains_slice(&edge)
    }

    /// Number of edges agreeing with `{side: index}`.
    fn degree(&self, tuple: BTreeMap<usize, usize>) -> PyResult<usize> {
        let f = PartialTuple::from_pairs(tuple).map_err(to_py)?;
        self.inner.degree(&f).map_err(to_py)
    }

    /// `(valid, perfect)` for a list of edges.
    fn validate_matching(&self, edges: Vec<Vec<usize>>) -> (bool, bool) {
        let v = self.inner.validate_matching(&matching_in(edges));
        (v.valid, v.perfect)
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(r={}, n={}, edges={})",
            self.inner.r(),
            self.inner.n(),
            self.inner.edge_count()
        )
    }
}

#[pyclass(name = "ConditionReport", module = "rmatch", frozen)]
struct PyReport {
    inner: CoreReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn holds(&self) -> bool {
        self.inner.holds
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.condition.name()
    }

    /// `(tuple, observed)` pairs; `observed` is the degree, or `theta + zeta`
    /// for the fractional condition.
    #[getter]
    fn violations<'py>(&self, py: Python<'py>) -> PyResult<Vec<(BTreeMap<usize, usize>, Bound<'py, PyAny>)>> {
        self.inner
            .violations
            .iter()
            .map(|v| Ok((v.tuple.iter().collect(), fraction(py, &v.observed)?)))
            .collect()
    }

    fn __bool__(&self) -> bool {
        self.inner.holds
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }
}

fn report(r: Result<CoreReport, Error>) -> PyResult<PyReport> {
    r.map(|inner| PyReport { inner }).map_err(to_py)
}

#[pyfunction]
fn check_main_condition(h: &PyHypergraph, strict_side: usize, weak_side: usize) -> PyResult<PyReport> {
    report(conditions::check_main_condition(&h.inner, strict_side, weak_side))
}

#[pyfunction]
#[pyo3(signature = (h, sides, strict = false))]
fn check_fractional_condition(h: &PyHypergraph, sides: Vec<usize>, strict: bool) -> PyResult<PyReport> {
    report(conditions::check_fractional_condition(&h.inner, &sides, strict))
}

#[pyfunction]
fn check_itupl_condition(h: &PyHypergraph, sides: Vec<usize>) -> PyResult<PyReport> {
    report(conditions::check_itupl_condition(&h.inner, &sides))
}

#[pyfunction]
fn check_ko_threshold(h: &PyHypergraph) -> PyReport {
    PyReport {
        inner: conditions::check_ko_threshold(&h.inner),
    }
}

#[pyfunction]
fn check_latin_property(h: &PyHypergraph) -> PyResult<PyReport> {
    report(conditions::check_latin_property(&h.inner))
}

#[pyclass(name = "Solution", module = "rmatch", frozen)]
struct PySolution {
    inner: matcher::Solution,
}

#[pymethods]
impl PySolution {
    #[getter]
    fn matching(&self) -> Vec<Vec<usize>> {
        edges_out(&self.inner.matching)
    }

    #[getter]
    fn near(&self) -> Vec<Vec<usize>> {
        edges_out(&self.inner.near)
    }

    #[getter]
    fn strict_side(&self) -> usize {
        self.inner.strict_side
    }

    #[getter]
    fn weak_side(&self) -> usize {
        self.inner.weak_side
    }

    /// Case tags of the augmentations, e.g. `["Case2b"]`.
    #[getter]
    fn cases(&self) -> Vec<&'static str> {
        self.inner.traces.iter().map(|t| t.case.as_str()).collect()
    }

    /// The `NEAR` / `CASE` / `PM` trace file.
    fn trace(&self) -> String {
        self.inner.trace_file().to_string()
    }
}

#[pyfunction]
fn find_perfect_matching(h: &PyHypergraph) -> PyResult<PySolution> {
    matcher::find_perfect_matching(&h.inner)
        .map(|inner| PySolution { inner })
        .map_err(to_py)
}

/// True iff the trace text replays to its claimed perfect matching.
#[pyfunction]
fn verify_trace(h: &PyHypergraph, trace: &str) -> PyResult<bool> {
    let file: TraceFile = match trace.parse() {
        Ok(f) => f,
        Err(Error::InvalidTrace(_)) => return Ok(false),
        Err(e) => return Err(to_py(e)),
    };
    Ok(matcher::verify_trace(&h.inner, &file).is_ok())
}

/// `(size, witness, nodes_explored)`.
#[pyfunction]
#[pyo3(signature = (h, budget = DEFAULT_BUDGET))]
fn max_matching(h: &PyHypergraph, budget: u64) -> PyResult<(usize, Vec<Vec<usize>>, u64)> {
    let res = oracle::max_matching(&h.inner, budget).map_err(to_py)?;
    Ok((res.max_matching_size, edges_out(&res.witness), res.nodes_explored))
}

#[pyfunction]
#[pyo3(signature = (h, budget = DEFAULT_BUDGET))]
fn has_perfect_matching(h: &PyHypergraph, budget: u64) -> PyResult<bool> {
    oracle::has_perfect_matching(&h.inner, budget).map_err(to_py)
}

#[pyfunction]
fn nu_star<'py>(py: Python<'py>, h: &PyHypergraph) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &fractional::nu_star(&h.inner).0)
}

#[pyfunction]
fn tau_star<'py>(py: Python<'py>, h: &PyHypergraph) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &fractional::tau_star(&h.inner).0)
}

#[pyfunction]
fn verify_duality(h: &PyHypergraph) -> bool {
    fractional::verify_duality(&h.inner)
}

/// Edge weights of a perfect fractional matching, keyed by edge.
#[pyfunction]
fn perfect_fractional_matching<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    sides: Vec<usize>,
) -> PyResult<Vec<(Vec<usize>, Bound<'py, PyAny>)>> {
    let a = fractional::perfect_fractional_matching(&h.inner, &sides).map_err(to_py)?;
    h.inner
        .edges()
        .iter()
        .map(|e| (e, a.weight_on_edge(e)))
        .filter(|(_, w)| *w != rmatch_core::rational::zero())
        .map(|(e, w)| Ok((e.as_slice().to_vec(), fraction(py, &w)?)))
        .collect()
}

/// The `n^(k-1)` perfect matchings of the complete k-partite k-graph.
#[pyfunction]
fn decompose_complete_multipartite(n: usize, k: usize) -> PyResult<Vec<Vec<Vec<usize>>>> {
    Ok(fractional::decompose_complete_multipartite(n, k)
        .map_err(to_py)?
        .iter()
        .map(|m| edges_out(&m.matching))
        .collect())
}

fn graph(r: Result<CoreGraph, Error>) -> PyResult<PyHypergraph> {
    r.map(|inner| PyHypergraph { inner }).map_err(to_py)
}

#[pyfunction]
fn gen_complete(r: usize, n: usize) -> PyResult<PyHypergraph> {
    graph(generators::gen_complete(r, n))
}

/// The parity construction and its marked sets `A_i`.
#[pyfunction]
fn gen_parity_sharpness(r: usize, n: usize) -> PyResult<(PyHypergraph, Vec<Vec<usize>>)> {
    let p = generators::gen_parity_sharpness(r, n).map_err(to_py)?;
    Ok((PyHypergraph { inner: p.graph }, p.a_sets))
}

#[pyfunction]
fn gen_union_cover(r: usize, n: usize, k: usize) -> PyResult<PyHypergraph> {
    graph(generators::gen_union_cover(r, n, k))
}

#[pyfunction]
fn gen_latin(n: usize) -> PyResult<PyHypergraph> {
    graph(generators::gen_latin(n, &LatinRule::Cyclic))
}

#[pyfunction]
fn gen_random(r: usize, n: usize, p: f64, seed: u64) -> PyResult<PyHypergraph> {
    graph(generators::gen_random(r, n, p, seed))
}

#[pymodule]
fn rmatch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("RmatchError", py.get_type::<RmatchError>())?;
    m.add("ConditionViolated", py.get_type::<ConditionViolated>())?;
    m.add("NoPerfectMatching", py.get_type::<NoPerfectMatching>())?;
    m.add("BudgetExhausted", py.get_type::<BudgetExhausted>())?;
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(check_main_condition, m)?)?;
    m.add_function(wrap_pyfunction!(check_fractional_condition, m)?)?;
    m.add_function(wrap_pyfunction!(check_itupl_condition, m)?)?;
    m.add_function(wrap_pyfunction!(check_ko_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(check_latin_property, m)?)?;
    m.add_function(wrap_pyfunction!(find_perfect_matching, m)?)?;
    m.add_function(wrap_pyfunction!(verify_trace, m)?)?;
    m.add_function(wrap_pyfunction!(max_matching, m)?)?;
    m.add_function(wrap_pyfunction!(has_perfect_matching, m)?)?;
    m.add_function(wrap_pyfunction!(nu_star, m)?)?;
    m.add_function(wrap_pyfunction!(tau_star, m)?)?;
    m.add_function(wrap_pyfunction!(verify_duality, m)?)?;
    m.add_function(wrap_pyfunction!(perfect_fractional_matching, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_complete_multipartite, m)?)?;
    m.add_function(wrap_pyfunction!(gen_complete, m)?)?;
    m.add_function(wrap_pyfunction!(gen_parity_sharpness, m)?)?;
    m.add_function(wrap_pyfunction!(gen_union_cover, m)?)?;
    m.add_function(wrap_pyfunction!(gen_latin, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    Ok(())
}
