//! Python bindings: `import berge`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use berge_core::certificate::{verify_berge_certificate, BergeCertificate, VerificationReport};
use berge_core::hamiltonicity::SearchConfig;
use berge_core::harness::{brute_force_exists, stress_theorem, BruteVerdict, Generator, StressConfig};
use berge_core::hypergraph::{random_coloring, ColoredHypergraph, Params};
use berge_core::r4::{r4_find, R4Config, R4Error};
use berge_core::search::{generic_search, GenericOutcome};
use berge_core::shadow::{build_shadow, ShadowMulticoloring};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An edge-colored complete r-uniform hypergraph.
#[pyclass(name = "Hypergraph", module = "berge", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyHypergraph(ColoredHypergraph);

#[pymethods]
impl PyHypergraph {
    /// Colors listed in colex order of the edges, each in `1..=c`.
    #[new]
    fn new(n: usize, r: usize, c: usize, colors: Vec<u8>) -> PyResult<Self> {
        ColoredHypergraph::from_colors(n, r, c, colors).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn random(n: usize, r: usize, c: usize, seed: u64) -> PyResult<Self> {
        let p = Params::new(n, r, 2.min(r), c).map_err(value_err)?;
        random_coloring(&p, seed).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn monochromatic(n: usize, r: usize, c: usize, color: u8) -> PyResult<Self> {
        ColoredHypergraph::monochromatic(n, r, c, color).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        ColoredHypergraph::from_text(text).map(Self).map_err(value_err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn r(&self) -> usize {
        self.0.r()
    }

    #[getter]
    fn c(&self) -> usize {
        self.0.c()
    }

    fn colors(&self) -> Vec<u8> {
        self.0.colors().to_vec()
    }

    fn color_of(&self, edge: Vec<usize>) -> PyResult<u8> {
        self.0.try_color(&edge).ok_or_else(|| value_err(format!("{edge:?} is not an edge")))
    }

    /// Edge counts per color; index 0 is unused.
    fn histogram(&self) -> Vec<usize> {
        self.0.histogram()
    }

    fn __len__(&self) -> usize {
        self.0.edge_count()
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(n={}, r={}, c={})", self.0.n(), self.0.r(), self.0.c())
    }
}

/// A Hamiltonian Berge-cycle: core order plus one edge per window.
#[pyclass(name = "Certificate", module = "berge", get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCertificate {
    color: u8,
    core: Vec<usize>,
    edges: Vec<Vec<usize>>,
    t: usize,
}

impl From<BergeCertificate> for PyCertificate {
    fn from(c: BergeCertificate) -> Self {
        Self { color: c.color, core: c.core, edges: c.edges, t: c.t }
    }
}

impl PyCertificate {
    fn inner(&self) -> BergeCertificate {
        BergeCertificate { color: self.color, core: self.core.clone(), edges: self.edges.clone(), t: self.t }
    }
}

#[pymethods]
impl PyCertificate {
    #[new]
    fn new(color: u8, core: Vec<usize>, edges: Vec<Vec<usize>>, t: usize) -> Self {
        Self { color, core, edges, t }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        BergeCertificate::from_json(text).map(Into::into).map_err(value_err)
    }

    fn to_json(&self) -> String {
        self.inner().to_json()
    }

    fn __repr__(&self) -> String {
        format!("Certificate(color={}, n={}, t={})", self.color, self.core.len(), self.t)
    }
}

/// Per-t-set color counts and good-color sets.
#[pyclass(name = "Shadow", module = "berge", frozen)]
pub struct PyShadow(ShadowMulticoloring);

#[pymethods]
impl PyShadow {
    #[getter]
    fn t(&self) -> usize {
        self.0.t()
    }

    /// Minimum count for a color to be good.
    #[getter]
    fn threshold(&self) -> u32 {
        self.0.threshold()
    }

    fn counts(&self, set: Vec<usize>) -> PyResult<Vec<u32>> {
        let mut s = set.clone();
        s.sort_unstable();
        let rank = berge_core::subset::rank_subset(&s, self.0.n()).map_err(value_err)?;
        if s.len() != self.0.t() {
            return Err(value_err(format!("expected {} vertices", self.0.t())));
        }
        Ok(self.0.counts_at(rank as usize).to_vec())
    }

    fn is_good(&self, set: Vec<usize>, color: u8) -> PyResult<bool> {
        let counts = self.counts(set)?;
        Ok((color as usize).checked_sub(1).and_then(|k| counts.get(k)).is_some_and(|&k| k >= self.0.threshold()))
    }

    fn good_count(&self, color: u8) -> usize {
        self.0.good_count(color)
    }

    fn dump(&self) -> String {
        self.0.dump()
    }
}

#[pyfunction]
#[pyo3(signature = (h, t=2))]
fn shadow(h: &PyHypergraph, t: usize) -> PyResult<PyShadow> {
    build_shadow(&h.0, t).map(PyShadow).map_err(value_err)
}

/// `None` when the certificate passes, else the violated invariant.
#[pyfunction]
#[pyo3(signature = (cert, h, t=None))]
fn verify(cert: &PyCertificate, h: &PyHypergraph, t: Option<usize>) -> Option<String> {
    match verify_berge_certificate(&cert.inner(), &h.0, t.unwrap_or(cert.t)) {
        VerificationReport::Pass => None,
        VerificationReport::Fail(v) => Some(v.to_string()),
    }
}

/// Budgeted generic search; `None` when unresolved.
#[pyfunction]
#[pyo3(signature = (h, t=2, budget=None, seed=0))]
fn search(py: Python<'_>, h: &PyHypergraph, t: usize, budget: Option<u64>, seed: u64) -> Option<PyCertificate> {
    let mut cfg = SearchConfig { seed, ..SearchConfig::default() };
    if let Some(b) = budget {
        cfg.budget = b;
    }
    py.detach(|| match generic_search(&h.0, t, &cfg, &mut Vec::new()) {
        GenericOutcome::Found(c) => Some(c.into()),
        GenericOutcome::Unresolved => None,
    })
}

/// The `K_n^4` construction; returns the certificate and the trace as JSON.
#[pyfunction]
fn extract(py: Python<'_>, h: &PyHypergraph) -> PyResult<(PyCertificate, String)> {
    match py.detach(|| r4_find(&h.0, &R4Config::default())) {
        Ok((cert, trace)) => Ok((cert.into(), trace.to_json())),
        Err(e @ R4Error::InvalidParams(_)) => Err(value_err(e)),
        Err(e) => Err(PyRuntimeError::new_err(e.to_string())),
    }
}

/// Exhaustive existence check for small `n`; `None` when none exists.
#[pyfunction]
#[pyo3(signature = (h, t=2))]
fn brute_force(py: Python<'_>, h: &PyHypergraph, t: usize) -> PyResult<Option<PyCertificate>> {
    match py.detach(|| brute_force_exists(&h.0, t)).map_err(value_err)? {
        BruteVerdict::Found(c) => Ok(Some(c.into())),
        BruteVerdict::ProvenNone => Ok(None),
    }
}

/// Seeded stress run; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (r, t, c, n, trials=100, seed=0, generator="random", budget=None, jobs=0))]
#[allow(clippy::too_many_arguments)]
fn stress(
    py: Python<'_>,
    r: usize,
    t: usize,
    c: usize,
    n: usize,
    trials: u64,
    seed: u64,
    generator: &str,
    budget: Option<u64>,
    jobs: usize,
) -> PyResult<String> {
    let cfg = StressConfig {
        params: Params::new(n, r, t, c).map_err(value_err)?,
        generator: generator.parse::<Generator>().map_err(value_err)?,
        trials,
        master_seed: seed,
        budget: budget.unwrap_or(SearchConfig::default().budget),
        jobs,
        reproducer_dir: None,
    };
    Ok(py.detach(|| stress_theorem(&cfg)).to_json())
}

#[pymodule]
pub fn berge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyShadow>()?;
    m.add_function(wrap_pyfunction!(shadow, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(extract, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(stress, m)?)?;
    Ok(())
}
