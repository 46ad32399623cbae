//! Python module `lincode`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use lincode_core::code::macwilliams_transform;
use lincode_core::{
    canon, classify, Budget, ClassificationTask, ExtensionProblem, GeneratorMatrix, LinearCode, WeightEnumerator,
    WeightSet, WeightSpec,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A linear code stored as its multiset of projective points.
#[pyclass(name = "LinearCode", frozen, eq, hash, ord, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyLinearCode {
    inner: LinearCode,
}

#[pymethods]
impl PyLinearCode {
    /// From generator matrix rows written as digit strings, e.g. `["1011", "0111"]`.
    #[new]
    fn new(q: u32, rows: Vec<String>) -> PyResult<Self> {
        let g = GeneratorMatrix::from_strings(q, &rows).map_err(value_err)?;
        let inner = LinearCode::from_generator_matrix(&g).map_err(value_err)?;
        Ok(PyLinearCode { inner })
    }

    /// From `(point index, multiplicity)` pairs in PG(k-1, q).
    #[staticmethod]
    fn from_multiplicities(q: u32, k: usize, mult: Vec<(u64, u32)>) -> PyResult<Self> {
        let inner = LinearCode::from_multiplicities(q, k, mult).map_err(value_err)?;
        Ok(PyLinearCode { inner })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.length()
    }

    fn support(&self) -> Vec<(u64, u32)> {
        self.inner.support().to_vec()
    }

    /// Systematic generator matrix rows.
    fn generator_matrix(&self) -> Vec<String> {
        self.inner.to_systematic_generator_matrix().to_strings()
    }

    /// `A_0, ..., A_n`.
    fn weight_enumerator(&self) -> Vec<u64> {
        self.inner.weight_enumerator().0
    }

    fn min_distance(&self) -> Option<usize> {
        self.inner.weight_enumerator().min_distance()
    }

    fn is_projective(&self) -> bool {
        self.inner.is_projective()
    }

    fn is_divisible(&self, delta: u32) -> bool {
        self.inner.is_divisible(delta)
    }

    fn min_col_mult(&self) -> u32 {
        self.inner.min_col_mult()
    }

    fn max_col_mult(&self) -> u32 {
        self.inner.max_col_mult()
    }

    fn residual(&self, point: u64) -> PyResult<Self> {
        let inner = self.inner.residual_subcode(point).map_err(value_err)?;
        Ok(PyLinearCode { inner })
    }

    fn minimal_codewords(&self) -> PyResult<u64> {
        self.inner.minimal_codewords_count().map_err(value_err)
    }

    fn automorphism_order(&self, py: Python<'_>) -> PyResult<u64> {
        let code = self.inner.clone();
        py.detach(|| canon::automorphism_order(&code)).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// Hex string equal for isometric codes and only for those.
    fn canonical_form(&self, py: Python<'_>) -> PyResult<String> {
        let code = self.inner.clone();
        py.detach(|| canon::canonical_form(&code))
            .map(|s| s.to_hex())
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("LinearCode([{},{}]_{}, {:?})", self.inner.length(), self.inner.k(), self.inner.q(), self.generator_matrix())
    }
}

#[pyfunction]
fn isometric(py: Python<'_>, a: &PyLinearCode, b: &PyLinearCode) -> PyResult<bool> {
    let (a, b) = (a.inner.clone(), b.inner.clone());
    py.detach(|| canon::isometric(&a, &b)).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Children of one extension step, deduplicated, and whether the search
/// finished within its node budget.
#[pyfunction]
#[pyo3(signature = (code, r, weights, canonical = true, lexicographic = true, budget_nodes = None))]
fn extend(
    py: Python<'_>,
    code: &PyLinearCode,
    r: u32,
    weights: Vec<u32>,
    canonical: bool,
    lexicographic: bool,
    budget_nodes: Option<u64>,
) -> PyResult<(Vec<PyLinearCode>, bool)> {
    let weights = WeightSet::new(weights).map_err(value_err)?;
    let problem = ExtensionProblem::new(code.inner.clone(), r, weights).with_filters(canonical, lexicographic);
    let budget = budget_nodes.map_or_else(Budget::from_env, Budget::nodes);
    let (children, complete) = py
        .detach(|| -> Result<_, String> {
            let outcome = lincode_core::extender::extend(&problem, budget).map_err(|e| e.to_string())?;
            let children = canon::dedupe(outcome.children).map_err(|e| e.to_string())?;
            Ok((children, outcome.complete))
        })
        .map_err(PyValueError::new_err)?;
    Ok((children.into_iter().map(|inner| PyLinearCode { inner }).collect(), complete))
}

/// Counts per `(n, k)` and whether every cell is complete. Exactly one of
/// `d` and `weights` must be given.
#[pyfunction]
#[pyo3(signature = (q, nmax, kmax, d = None, weights = None, projective = false, shards = 1))]
fn classify_counts(
    py: Python<'_>,
    q: u32,
    nmax: u32,
    kmax: usize,
    d: Option<u32>,
    weights: Option<Vec<u32>>,
    projective: bool,
    shards: usize,
) -> PyResult<(BTreeMap<(usize, usize), usize>, bool)> {
    let spec = match (d, weights) {
        (Some(d), None) => WeightSpec::MinDistance { d, delta: 1 },
        (None, Some(w)) => WeightSpec::Explicit(w),
        _ => return Err(PyValueError::new_err("give exactly one of d and weights")),
    };
    let mut task = ClassificationTask::new(q, spec, nmax, kmax).with_shards(shards);
    task.projective = projective;
    let result = py.detach(|| classify::classify(&task)).map_err(value_err)?;
    let counts = result.cells.iter().map(|(&key, cell)| (key, cell.count)).collect();
    Ok((counts, result.is_complete()))
}

/// Dual weight distribution of a code with weight distribution `a`.
#[pyfunction]
fn macwilliams(a: Vec<u64>, q: u32, k: usize) -> PyResult<Vec<BigInt>> {
    let b = macwilliams_transform(&WeightEnumerator(a), q, k).map_err(value_err)?;
    let ints = b
        .to_integers()
        .ok_or_else(|| PyValueError::new_err("dual distribution is not integral, so no such code exists"))?;
    if ints.iter().any(|x| x < &BigInt::zero()) {
        return Err(PyValueError::new_err("dual distribution has a negative entry, so no such code exists"));
    }
    Ok(ints)
}

#[pymodule]
fn lincode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLinearCode>()?;
    m.add_function(wrap_pyfunction!(isometric, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(classify_counts, m)?)?;
    m.add_function(wrap_pyfunction!(macwilliams, m)?)?;
    Ok(())
}
