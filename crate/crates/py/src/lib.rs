//! Python bindings. Rationals cross the boundary as `"p/q"` strings and
//! structured results as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use weightlab::admissible::{classify_admissible, empirical_max_multiplicity};
use weightlab::classify::{canonical_form, is_isomorphic};
use weightlab::evaluation::{tensor_multiplicity, EvaluationDescriptor as CoreDescriptor};
use weightlab::io::{descriptor_json, multiplicities_json, parse_algebra, parse_descriptor, psi_json, verdict_json};
use weightlab::rational::{format_rational, parse_rational, Rational};
use weightlab::report::{verify_all as core_verify_all, VerifyConfig};
use weightlab::rootsys::{enumerate_bases, verify_gamma_lemma, CartanType, RootSystem as CoreRootSystem};
use weightlab::shadow::{enumerate_and_verify, sample_and_verify, MAX_ENUMERATED_ROOTS};
use weightlab::ucext::{central_space, FiniteAlgebra};
use weightlab::weightmod;

fn err(e: weightlab::Error) -> PyErr {
    match e {
        weightlab::Error::Io(_) | weightlab::Error::ResourceLimit { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn cartan(s: &str) -> PyResult<CartanType> {
    s.parse().map_err(err)
}

/// An irreducible root system.
#[pyclass(name = "RootSystem", module = "weightlab")]
struct PyRootSystem {
    inner: CoreRootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(cartan_type: &str) -> PyResult<Self> {
        Ok(PyRootSystem { inner: CoreRootSystem::of_type(cartan(cartan_type)?).map_err(err)? })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.cartan_type())
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_indices().map(|i| self.inner.root(i).0.clone()).collect()
    }

    fn highest_root(&self) -> Vec<i64> {
        self.inner.highest_root().0.clone()
    }

    fn is_root(&self, coords: Vec<i64>) -> bool {
        self.inner.is_root(&coords)
    }

    fn num_bases(&self) -> PyResult<usize> {
        Ok(enumerate_bases(&self.inner).map_err(err)?.len())
    }

    /// Returns `{"bases", "cases", "counterexample"}`.
    fn verify_gamma<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = py.detach(|| verify_gamma_lemma(&self.inner)).map_err(err)?;
        let v = serde_json::json!({"bases": r.bases, "cases": r.cases, "counterexample": r.counterexample});
        to_py(py, &v)
    }

    /// Exhaustive for systems with at most 18 roots unless `samples` is given.
    #[pyo3(signature = (samples=None, seed=0))]
    fn verify_shadow<'py>(&self, py: Python<'py>, samples: Option<usize>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let rs = &self.inner;
        let s = py
            .detach(|| match samples {
                Some(n) => sample_and_verify(rs, n, seed),
                None if rs.len() <= MAX_ENUMERATED_ROOTS => enumerate_and_verify(rs),
                None => Err(weightlab::Error::ResourceLimit { what: "roots for exhaustive enumeration", limit: MAX_ENUMERATED_ROOTS }),
            })
            .map_err(err)?;
        let v = serde_json::json!({
            "convex": s.total, "filtered": s.filtered, "counterexamples": s.counterexamples(),
            "base_inconsistent": s.base_inconsistent, "counterexample": s.counterexample,
        });
        to_py(py, &v)
    }
}

/// Weight multiplicities of `L(λ)` as `{"weights": [{"weight", "mult"}], ...}`.
#[pyfunction]
fn freudenthal<'py>(py: Python<'py>, cartan_type: &str, highest: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
    let rs = CoreRootSystem::of_type(cartan(cartan_type)?).map_err(err)?;
    let m = weightmod::freudenthal(&rs, &highest).map_err(err)?;
    to_py(py, &multiplicities_json(&m))
}

#[pyfunction]
fn weyl_dimension(cartan_type: &str, highest: Vec<i64>) -> PyResult<u128> {
    let rs = CoreRootSystem::of_type(cartan(cartan_type)?).map_err(err)?;
    weightmod::weyl_dimension(&rs, &highest).map_err(err)
}

#[pyfunction]
fn is_simple_dense(mu: &str, tau0: &str) -> PyResult<bool> {
    Ok(weightmod::is_simple_dense(&rational(mu)?, &rational(tau0)?))
}

#[pyfunction]
fn casimir(mu: &str, tau0: &str) -> PyResult<String> {
    Ok(format_rational(&weightmod::casimir_invariant(&rational(mu)?, &rational(tau0)?)))
}

/// `(coefficient, index)` of `x · v_i` in the dense module, `x` one of `e`, `h`, `f`.
#[pyfunction]
fn dense_action(mu: &str, tau0: &str, x: &str, i: i64) -> PyResult<(String, i64)> {
    let x: weightmod::Sl2Generator = x.parse().map_err(err)?;
    let (c, j) = weightmod::dense_action(&rational(mu)?, &rational(tau0)?, x, i);
    Ok((format_rational(&c), j))
}

/// An evaluation module, built from the JSON descriptor format.
#[pyclass(name = "EvaluationDescriptor", module = "weightlab")]
struct PyDescriptor {
    inner: CoreDescriptor,
}

#[pymethods]
impl PyDescriptor {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDescriptor { inner: parse_descriptor(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        descriptor_json(&self.inner).to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.factors().len()
    }

    fn __repr__(&self) -> String {
        format!("EvaluationDescriptor({})", self.to_json())
    }

    /// `(count, infinite)`; for an infinite space the count is windowed.
    #[pyo3(signature = (weight, window=None))]
    fn tensor_multiplicity(&self, weight: Vec<String>, window: Option<i64>) -> PyResult<(u64, bool)> {
        let w = weight.iter().map(|s| rational(s)).collect::<PyResult<Vec<_>>>()?;
        let c = tensor_multiplicity(&self.inner, &w, window).map_err(err)?;
        Ok((c.count(), c.is_infinite()))
    }

    #[pyo3(signature = (window=30))]
    fn classify_admissible<'py>(&self, py: Python<'py>, window: i64) -> PyResult<Bound<'py, PyAny>> {
        let v = classify_admissible(&self.inner, window).map_err(err)?;
        to_py(py, &verdict_json(&v))
    }

    /// `(weight, count)` of the largest windowed multiplicity.
    fn empirical_max(&self, window: i64) -> PyResult<(Vec<String>, u64)> {
        let (w, c) = empirical_max_multiplicity(&self.inner, window).map_err(err)?;
        Ok((w.iter().map(format_rational).collect(), c))
    }

    fn canonical_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &psi_json(&canonical_form(&self.inner).map_err(err)?))
    }

    fn is_isomorphic(&self, other: &PyDescriptor) -> PyResult<bool> {
        is_isomorphic(&self.inner, &other.inner).map_err(err)
    }
}

/// `dim ⟨S,S⟩` for an algebra in the JSON algebra format.
#[pyfunction]
fn central_quotient_dim(algebra_json: &str) -> PyResult<usize> {
    Ok(central_space(&parse_algebra(algebra_json).map_err(err)?).map_err(err)?.quotient_dim())
}

/// `dim ⟨S,S⟩` for `S = k[t]/(t^m)`.
#[pyfunction]
fn truncated_polynomial_quotient_dim(m: usize) -> PyResult<usize> {
    if m == 0 {
        return Err(PyValueError::new_err("m must be positive"));
    }
    Ok(central_space(&FiniteAlgebra::truncated_polynomial(m)).map_err(err)?.quotient_dim())
}

/// Runs the verification battery; returns one dict per check.
#[pyfunction]
#[pyo3(signature = (max_rank=4, window=30, samples=100, seed=None))]
fn verify_all<'py>(py: Python<'py>, max_rank: usize, window: i64, samples: usize, seed: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = VerifyConfig { max_rank, window, samples, ..VerifyConfig::default() };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = py.detach(|| core_verify_all(&cfg));
    let checks = serde_json::to_value(&report.checks).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &checks)
}

#[pymodule]
#[pyo3(name = "weightlab")]
fn weightlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyDescriptor>()?;
    m.add_function(wrap_pyfunction!(freudenthal, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(is_simple_dense, m)?)?;
    m.add_function(wrap_pyfunction!(casimir, m)?)?;
    m.add_function(wrap_pyfunction!(dense_action, m)?)?;
    m.add_function(wrap_pyfunction!(central_quotient_dim, m)?)?;
    m.add_function(wrap_pyfunction!(truncated_polynomial_quotient_dim, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
