//! Python bindings. Rationals cross the boundary as `p/q` strings (or
//! plain integers on the way in) so nothing is ever rounded; structured
//! results use the same field names as the CLI's JSON output.

use nilrad::catalog::Catalog;
use nilrad::classify::classify as run_classify;
use nilrad::classify::classify_entry;
use nilrad::degeneration::find_degeneration;
use nilrad::derivations::derivation_space;
use nilrad::format::{parse, parse_numeric, serialize, serialize_numeric};
use nilrad::moment::{emit_soliton_system, moment_map, norm_sq};
use nilrad::nice::{gram_matrix, nice_criterion};
use nilrad::numeric::{verify_soliton, verify_soliton_numeric, SolitonVerdict};
use nilrad::pre_einstein::pre_einstein;
use nilrad::rational::{fmt_rat, parse_rat, Rat};
use nilrad::report::{report_to_json, table_rows};
use nilrad::{LieLaw, RMatrix};
use num_bigint::BigInt;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::{json, Value};

fn pyerr(e: nilrad::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat_from_py(v: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(Rat::from_integer(i.into()));
    }
    if let Ok(s) = v.extract::<String>() {
        return parse_rat(&s).map_err(PyValueError::new_err);
    }
    Err(PyTypeError::new_err(
        "expected an integer or a rational string like '3/4'",
    ))
}

fn rats_from_py(vs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rat>> {
    vs.iter().map(rat_from_py).collect()
}

fn matrix_strings(m: &RMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| fmt_rat(&m[[i, j]])).collect())
        .collect()
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py_any(py)?,
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)?
            } else if let Some(u) = n.as_u64() {
                u.into_py_any(py)?
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)?
            }
        }
        Value::String(s) => s.into_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)?
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_py_any(py)?
        }
    })
}

fn soliton_json(s: &SolitonVerdict) -> Value {
    json!({
        "soliton": s.soliton,
        "c": s.c,
        "cExact": s.c_exact.as_ref().map(|c| fmt_rat(c)),
        "residual": s.residual,
        "route": s.route.to_string(),
    })
}

/// A nilpotent Lie algebra law given by rational structure constants.
#[pyclass]
struct Law {
    inner: LieLaw,
}

#[pymethods]
impl Law {
    #[new]
    fn new(dim: usize) -> PyResult<Self> {
        Ok(Law {
            inner: LieLaw::new(dim).map_err(pyerr)?,
        })
    }

    /// Parses the text form written by `serialize`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Law {
            inner: parse(text).map_err(pyerr)?,
        })
    }

    /// Loads a bundled catalog law by name.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let entry = Catalog::bundled()
            .find(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown catalog entry '{name}'")))?;
        let law = entry
            .law
            .clone()
            .ok_or_else(|| PyValueError::new_err(format!("{name} stores table values only")))?;
        Ok(Law { inner: law })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Name of the free parameter, if the law has one.
    #[getter]
    fn param(&self) -> Option<String> {
        self.inner.param().map(str::to_string)
    }

    fn set(&mut self, i: usize, j: usize, k: usize, value: &Bound<'_, PyAny>) -> PyResult<()> {
        self.inner
            .set_const(i, j, k, rat_from_py(value)?)
            .map_err(pyerr)
    }

    fn c(&self, i: usize, j: usize, k: usize) -> String {
        fmt_rat(&self.inner.c(i, j, k))
    }

    fn support(&self) -> Vec<(usize, usize, usize)> {
        self.inner.support()
    }

    fn serialize(&self) -> PyResult<String> {
        serialize(&self.inner).map_err(pyerr)
    }

    /// Substitutes a value for the parameter, yielding a constant law.
    fn instantiate(&self, value: &Bound<'_, PyAny>) -> PyResult<Law> {
        Ok(Law {
            inner: self.inner.instantiate(&rat_from_py(value)?),
        })
    }

    fn bracket(
        &self,
        u: Vec<Bound<'_, PyAny>>,
        v: Vec<Bound<'_, PyAny>>,
    ) -> PyResult<Vec<String>> {
        let u = rats_from_py(&u)?;
        let v = rats_from_py(&v)?;
        if u.len() != self.inner.dim() || v.len() != self.inner.dim() {
            return Err(PyValueError::new_err("vector length must equal dim"));
        }
        Ok(self.inner.bracket(&u, &v).iter().map(fmt_rat).collect())
    }

    fn is_jacobi(&self) -> bool {
        self.inner.require_jacobi().is_ok()
    }

    fn descending_central_series(&self) -> PyResult<Vec<usize>> {
        self.inner.descending_central_series().map_err(pyerr)
    }

    fn derived_series(&self) -> PyResult<Vec<usize>> {
        self.inner.derived_series().map_err(pyerr)
    }

    fn dim_der(&self) -> PyResult<usize> {
        Ok(derivation_space(&self.inner).map_err(pyerr)?.dim())
    }

    /// Relabels the basis: entry `i` of `perm` (0-based) is where basis
    /// vector `i+1` goes.
    fn permuted(&self, perm: Vec<usize>) -> PyResult<Law> {
        Ok(Law {
            inner: self.inner.permuted(&perm).map_err(pyerr)?,
        })
    }

    fn rescaled(&self, scales: Vec<Bound<'_, PyAny>>) -> PyResult<Law> {
        Ok(Law {
            inner: self.inner.rescaled(&rats_from_py(&scales)?).map_err(pyerr)?,
        })
    }

    fn __repr__(&self) -> String {
        match self.inner.param() {
            Some(p) => format!(
                "<Law dim={} slots={} param={}>",
                self.inner.dim(),
                self.inner.support().len(),
                p
            ),
            None => format!(
                "<Law dim={} slots={}>",
                self.inner.dim(),
                self.inner.support().len()
            ),
        }
    }
}

/// Runs the full classification pipeline; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (law, name="law", tol=1e-10))]
fn classify(py: Python<'_>, law: PyRef<Law>, name: &str, tol: f64) -> PyResult<Py<PyAny>> {
    let report = run_classify(name, &law.inner, None, tol).map_err(pyerr)?;
    json_to_py(py, &report_to_json(&report))
}

/// Classifies a bundled catalog entry, using its soliton representative
/// when one ships with the entry.
#[pyfunction]
#[pyo3(signature = (name, param=None, tol=1e-10))]
fn classify_catalog(
    py: Python<'_>,
    name: &str,
    param: Option<&Bound<'_, PyAny>>,
    tol: f64,
) -> PyResult<Py<PyAny>> {
    let entry = Catalog::bundled()
        .find(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown catalog entry '{name}'")))?;
    let value = param.map(rat_from_py).transpose()?;
    let report = classify_entry(entry, value.as_ref(), tol).map_err(pyerr)?;
    json_to_py(py, &report_to_json(&report))
}

/// The pre-Einstein derivation: solved exactly over the diagonal torus and
/// verified against the full derivation algebra.
#[pyfunction]
fn pre_einstein_derivation(py: Python<'_>, law: PyRef<Law>) -> PyResult<Py<PyAny>> {
    let pre = pre_einstein(&law.inner).map_err(pyerr)?;
    let ty = pre.eigenvalue_type().ok();
    let min = ty.as_ref().and_then(|t| t.min_value().ok());
    let v = json!({
        "scale": fmt_rat(&pre.scale),
        "diag": pre.diag_ints.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        "values": pre.phi.iter().map(fmt_rat).collect::<Vec<_>>(),
        "rank": pre.rank,
        "eigenvalueType": ty.map(|t| t.to_string()),
        "min": min.as_ref().map(|m| fmt_rat(m)),
    });
    json_to_py(py, &v)
}

/// The moment map value at the law, an exact symmetric matrix.
#[pyfunction]
fn moment_map_matrix(law: PyRef<Law>) -> PyResult<Vec<Vec<String>>> {
    Ok(matrix_strings(&moment_map(&law.inner).map_err(pyerr)?))
}

/// Squared norm of the law, `2 * sum of squared structure constants`.
#[pyfunction]
fn norm_squared(law: PyRef<Law>) -> PyResult<String> {
    Ok(fmt_rat(&norm_sq(&law.inner).map_err(pyerr)?))
}

/// Gram matrix of the support weight vectors (rows follow the support in
/// lexicographic order).
#[pyfunction]
fn gram(law: PyRef<Law>) -> PyResult<Vec<Vec<String>>> {
    Ok(matrix_strings(&gram_matrix(&law.inner).map_err(pyerr)?))
}

/// The convex-geometry criterion for laws with a nice basis.
#[pyfunction]
fn nice(py: Python<'_>, law: PyRef<Law>) -> PyResult<Py<PyAny>> {
    let n = nice_criterion(&law.inner).map_err(pyerr)?;
    let v = json!({
        "isNice": n.violations.is_empty(),
        "violations": n.violations.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "einstein": n.einstein,
        "witness": n.witness.as_ref().map(|w| w.iter().map(fmt_rat).collect::<Vec<_>>()),
        "forcedZero": n.forced_zero,
    });
    json_to_py(py, &v)
}

/// Searches for a diagonal degeneration; None when no candidate exists.
#[pyfunction]
fn degeneration(py: Python<'_>, law: PyRef<Law>) -> PyResult<Py<PyAny>> {
    let pre = pre_einstein(&law.inner).map_err(pyerr)?;
    match find_degeneration(&law.inner, &pre.phi).map_err(pyerr)? {
        None => Ok(py.None()),
        Some(c) => {
            let v = json!({
                "x": c.x.iter().map(fmt_rat).collect::<Vec<_>>(),
                "dropped": c.dropped,
                "original": {
                    "dimDer": c.original.dim_der,
                    "descendingCentralSeries": c.original.dcs,
                    "derivedSeries": c.original.derived,
                },
                "limit": {
                    "dimDer": c.limit_invariants.dim_der,
                    "descendingCentralSeries": c.limit_invariants.dcs,
                    "derivedSeries": c.limit_invariants.derived,
                },
            });
            json_to_py(py, &v)
        }
    }
}

/// Checks a law (or serialized law text, possibly with square-root
/// coefficients) against the nilsoliton equation.
#[pyfunction]
#[pyo3(signature = (law, tol=1e-10))]
fn soliton_check(py: Python<'_>, law: &Bound<'_, PyAny>, tol: f64) -> PyResult<Py<PyAny>> {
    let verdict = if let Ok(l) = law.extract::<PyRef<Law>>() {
        verify_soliton(&l.inner, tol).map_err(pyerr)?
    } else if let Ok(text) = law.extract::<String>() {
        let numeric = parse_numeric(&text).map_err(pyerr)?;
        verify_soliton_numeric(&numeric, tol).map_err(pyerr)?
    } else {
        return Err(PyTypeError::new_err("expected a Law or serialized law text"));
    };
    json_to_py(py, &soliton_json(&verdict))
}

/// Serialized text of an entry's bundled soliton representative, if any.
#[pyfunction]
fn catalog_fixture(name: &str) -> PyResult<Option<String>> {
    let entry = Catalog::bundled()
        .find(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown catalog entry '{name}'")))?;
    Ok(entry.soliton_fixture.as_ref().map(serialize_numeric))
}

/// The Jacobi + soliton polynomial system for a graded diagonal.
#[pyfunction]
fn soliton_system(diag: Vec<i64>) -> PyResult<String> {
    let d: Vec<BigInt> = diag.into_iter().map(BigInt::from).collect();
    emit_soliton_system(&d).map_err(pyerr)
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    Catalog::bundled().names().map(str::to_string).collect()
}

/// The full catalog summary table as a list of dicts.
#[pyfunction]
#[pyo3(signature = (tol=1e-10))]
fn table(py: Python<'_>, tol: f64) -> PyResult<Py<PyAny>> {
    let rows = table_rows(Catalog::bundled(), tol);
    json_to_py(py, &nilrad::report::render_json(&rows))
}

#[pymodule]
fn nilrad_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Law>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(classify_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(pre_einstein_derivation, m)?)?;
    m.add_function(wrap_pyfunction!(moment_map_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(norm_squared, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(nice, m)?)?;
    m.add_function(wrap_pyfunction!(degeneration, m)?)?;
    m.add_function(wrap_pyfunction!(soliton_check, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(soliton_system, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    Ok(())
}
