//! Python bindings. Scalars cross the boundary as text in the scalar
//! grammar (or as `Scalar` objects), reports come back as plain dicts
//! with the same keys as the CLI reports.

use nawelch_core::classical::{self, ClassicalConfig, ComplexVector, FieldTag};
use nawelch_core::field::{Scalar, Valuation};
use nawelch_core::linalg::{Config, DiagCertificate, Matrix, Vector};
use nawelch_core::search::{self, GeneratorSet, SearchParams};
use nawelch_core::welch;
use num_complex::Complex64;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde::Serialize;
use serde_json::Value;

fn value_err(e: nawelch_core::Error) -> PyErr {
    match e {
        nawelch_core::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_py_any(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_py_any(py),
        },
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let items = items
                .iter()
                .map(|x| json_to_py(py, x))
                .collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_py_any(py)
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, json_to_py(py, x)?)?;
            }
            d.into_py_any(py)
        }
    }
}

fn to_py<T: Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

/// Accepts a `Scalar`, scalar text or a Python int.
fn scalar_arg(x: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(s) = x.cast::<PyScalar>() {
        return Ok(s.get().0.clone());
    }
    if let Ok(k) = x.extract::<i64>() {
        return Ok(Scalar::from_int(k));
    }
    let text: String = x.extract()?;
    text.parse().map_err(value_err)
}

fn na_config(vectors: &Bound<'_, PyAny>) -> PyResult<Config> {
    let rows: Vec<Vec<Bound<'_, PyAny>>> = vectors.extract()?;
    let vs = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(scalar_arg)
                .collect::<PyResult<Vec<_>>>()
                .map(Vector::new)
        })
        .collect::<PyResult<Vec<_>>>()?;
    Config::new(vs).map_err(value_err)
}

fn certificate(
    p: Option<&Bound<'_, PyAny>>,
    d: Option<&Bound<'_, PyAny>>,
) -> PyResult<Option<DiagCertificate>> {
    match (p, d) {
        (None, None) => Ok(None),
        (Some(p), Some(d)) => {
            let rows: Vec<Vec<Bound<'_, PyAny>>> = p.extract()?;
            let rows = rows
                .iter()
                .map(|r| r.iter().map(scalar_arg).collect::<PyResult<Vec<_>>>())
                .collect::<PyResult<Vec<_>>>()?;
            let diag: Vec<Bound<'_, PyAny>> = d.extract()?;
            Ok(Some(DiagCertificate {
                p: Matrix::from_rows(rows).map_err(value_err)?,
                d: diag.iter().map(scalar_arg).collect::<PyResult<_>>()?,
            }))
        }
        _ => Err(PyValueError::new_err("certificate needs both P and D")),
    }
}

/// An int, or `None` / `"inf"` for the valuation of zero.
fn valuation_arg(x: Option<&Bound<'_, PyAny>>) -> PyResult<Valuation> {
    let Some(x) = x.filter(|x| !x.is_none()) else {
        return Ok(Valuation::Infinite);
    };
    if let Ok(k) = x.extract::<i64>() {
        return Ok(Valuation::Finite(k));
    }
    let text: String = x.extract()?;
    text.parse()
        .map_err(|_| PyValueError::new_err(format!("bad valuation {text:?}")))
}

fn field_arg(field: &str) -> PyResult<FieldTag> {
    field.parse().map_err(value_err)
}

fn classical_config(vectors: Vec<Vec<Complex64>>, field: &str) -> PyResult<ClassicalConfig> {
    ClassicalConfig::new(
        vectors.into_iter().map(ComplexVector::new).collect(),
        field_arg(field)?,
    )
    .map_err(value_err)
}

fn vector_texts(v: &Vector) -> Vec<String> {
    v.entries().iter().map(Scalar::to_string).collect()
}

/// Element of `Q(t)`.
#[pyclass(name = "Scalar", module = "nawelch", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyScalar(Scalar);

#[pymethods]
impl PyScalar {
    #[new]
    fn new(x: &Bound<'_, PyAny>) -> PyResult<Self> {
        scalar_arg(x).map(PyScalar)
    }

    #[staticmethod]
    fn t() -> Self {
        PyScalar(Scalar::t())
    }

    /// `None` for zero.
    fn valuation(&self) -> Option<i64> {
        self.0.valuation().finite()
    }

    fn is_zero(&self) -> bool {
        self.0 == Scalar::from_int(0)
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().map(PyScalar).map_err(value_err)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 + &scalar_arg(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 - &scalar_arg(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&scalar_arg(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 * &scalar_arg(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0
            .checked_div(&scalar_arg(other)?)
            .map(PyScalar)
            .map_err(value_err)
    }

    fn __rtruediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        scalar_arg(other)?
            .checked_div(&self.0)
            .map(PyScalar)
            .map_err(value_err)
    }

    fn __neg__(&self) -> Self {
        PyScalar(-self.0.clone())
    }

    fn __pow__(&self, e: u32, _modulo: Option<&Bound<'_, PyAny>>) -> Self {
        PyScalar(self.0.pow(e))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0)
    }
}

/// Non-Archimedean Welch bound of order `m`. With `general=True` the
/// unit-norm hypothesis is dropped.
#[pyfunction]
#[pyo3(signature = (vectors, m = 1, general = false, cert_p = None, cert_d = None))]
fn check_welch(
    py: Python<'_>,
    vectors: &Bound<'_, PyAny>,
    m: u32,
    general: bool,
    cert_p: Option<&Bound<'_, PyAny>>,
    cert_d: Option<&Bound<'_, PyAny>>,
) -> PyResult<Py<PyAny>> {
    let cfg = na_config(vectors)?;
    let cert = certificate(cert_p, cert_d)?;
    let rep = if general {
        welch::check_general(&cfg, m, cert.as_ref())
    } else {
        welch::check_higher_order(&cfg, m, cert.as_ref())
    }
    .map_err(value_err)?;
    to_py(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (vectors, cert_p = None, cert_d = None))]
fn zauner_check(
    py: Python<'_>,
    vectors: &Bound<'_, PyAny>,
    cert_p: Option<&Bound<'_, PyAny>>,
    cert_d: Option<&Bound<'_, PyAny>>,
) -> PyResult<Py<PyAny>> {
    let cfg = na_config(vectors)?;
    let cert = certificate(cert_p, cert_d)?;
    to_py(
        py,
        &welch::zauner_check(&cfg, cert.as_ref()).map_err(value_err)?,
    )
}

/// `gamma_valuation=None` means `gamma = 0`.
#[pyfunction]
#[pyo3(signature = (vectors, norm, gamma_valuation))]
fn equiangular_check(
    vectors: &Bound<'_, PyAny>,
    norm: &Bound<'_, PyAny>,
    gamma_valuation: Option<&Bound<'_, PyAny>>,
) -> PyResult<bool> {
    let cfg = na_config(vectors)?;
    Ok(welch::equiangular_check(
        &cfg,
        &scalar_arg(norm)?,
        valuation_arg(gamma_valuation)?,
    ))
}

#[pyfunction]
fn na_circle_point(s: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
    let v = search::na_circle_point(&scalar_arg(s)?).map_err(value_err)?;
    Ok(vector_texts(&v))
}

/// Equiangular families found by exhaustive search, each a list of
/// vectors in scalar text.
#[pyfunction]
#[pyo3(signature = (d, n_max, gens, norm = None, gamma_valuation = None))]
fn na_search(
    d: usize,
    n_max: usize,
    gens: Vec<Bound<'_, PyAny>>,
    norm: Option<&Bound<'_, PyAny>>,
    gamma_valuation: Option<&Bound<'_, PyAny>>,
) -> PyResult<Vec<Vec<Vec<String>>>> {
    let gens = GeneratorSet::new(gens.iter().map(scalar_arg).collect::<PyResult<_>>()?)
        .map_err(value_err)?;
    let a = match norm {
        Some(x) => scalar_arg(x)?,
        None => Scalar::from_int(1),
    };
    let hits = search::na_search(d, n_max, &gens, &a, valuation_arg(gamma_valuation)?);
    Ok(hits
        .iter()
        .map(|h| h.config.vectors().iter().map(vector_texts).collect())
        .collect())
}

#[pyfunction]
#[pyo3(signature = (vectors, field = "c"))]
fn coherence(vectors: Vec<Vec<Complex64>>, field: &str) -> PyResult<f64> {
    classical::coherence(&classical_config(vectors, field)?).map_err(value_err)
}

#[pyfunction]
fn welch_max_bound(py: Python<'_>, n: usize, d: usize, m: u32) -> PyResult<Py<PyAny>> {
    to_py(py, &classical::welch_max_bound(n, d, m).map_err(value_err)?)
}

#[pyfunction]
fn welch_sum_rhs(n: usize, d: usize, m: u32) -> f64 {
    classical::welch_sum_rhs(n, d, m)
}

#[pyfunction]
#[pyo3(signature = (d, field = "c"))]
fn gerzon(d: usize, field: &str) -> PyResult<u64> {
    Ok(classical::gerzon(d, field_arg(field)?))
}

#[pyfunction]
#[pyo3(signature = (n, d, field = "c", orders = vec![1]))]
fn bounds_table(
    py: Python<'_>,
    n: usize,
    d: usize,
    field: &str,
    orders: Vec<u32>,
) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &classical::bounds_table(n, d, field_arg(field)?, &orders).map_err(value_err)?,
    )
}

#[pyfunction]
fn sic_construct_d2() -> Vec<Vec<Complex64>> {
    search::sic_construct_d2()
        .vectors()
        .iter()
        .map(|v| v.entries().to_vec())
        .collect()
}

#[pyfunction]
#[pyo3(signature = (d, n, field = "c", trials = 32, seed = 0, steps = 2000, initial_step = 0.3, shrink = 0.99))]
#[allow(clippy::too_many_arguments)]
fn classical_search(
    py: Python<'_>,
    d: usize,
    n: usize,
    field: &str,
    trials: usize,
    seed: u64,
    steps: usize,
    initial_step: f64,
    shrink: f64,
) -> PyResult<Py<PyAny>> {
    let params = SearchParams {
        d,
        n,
        trials,
        seed,
        steps,
        initial_step,
        shrink,
    };
    let field = field_arg(field)?;
    let res = py
        .detach(|| search::classical_search(&params, field))
        .map_err(value_err)?;
    let out = PyDict::new(py);
    let vectors: Vec<Vec<Complex64>> = res
        .best
        .vectors()
        .iter()
        .map(|v| v.entries().to_vec())
        .collect();
    out.set_item("vectors", vectors)?;
    out.set_item("coherence", res.coherence)?;
    out.set_item("best_bound", res.best_bound)?;
    out.set_item("gap", res.gap)?;
    out.into_py_any(py)
}

#[pymodule]
fn nawelch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_function(wrap_pyfunction!(check_welch, m)?)?;
    m.add_function(wrap_pyfunction!(zauner_check, m)?)?;
    m.add_function(wrap_pyfunction!(equiangular_check, m)?)?;
    m.add_function(wrap_pyfunction!(na_circle_point, m)?)?;
    m.add_function(wrap_pyfunction!(na_search, m)?)?;
    m.add_function(wrap_pyfunction!(coherence, m)?)?;
    m.add_function(wrap_pyfunction!(welch_max_bound, m)?)?;
    m.add_function(wrap_pyfunction!(welch_sum_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(gerzon, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_table, m)?)?;
    m.add_function(wrap_pyfunction!(sic_construct_d2, m)?)?;
    m.add_function(wrap_pyfunction!(classical_search, m)?)?;
    Ok(())
}
