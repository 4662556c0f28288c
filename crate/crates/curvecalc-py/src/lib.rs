//! Python bindings. Orbit formulas return integers; workspace commands return
//! `(exit_code, report_json)` with the same reports as the command line tool.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use curvecalc::commands::{self, CheckArgs, GinMode, Theorem};
use curvecalc::orbit::{alpha_iter, cz_index, parity_iter, spectral_covering};
use curvecalc::report::Report;
use curvecalc::workspace::Workspace;
use curvecalc::{Error, SimpleOrbit, Q};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

fn make_orbit(kind: &str, theta: Option<(i64, i64)>, alpha0: Option<i64>) -> PyResult<SimpleOrbit> {
    match (kind, theta, alpha0) {
        ("elliptic", Some((p, q)), None) if q != 0 => SimpleOrbit::elliptic("g", Q::new(p, q)).map_err(py_err),
        ("even_hyperbolic", None, Some(a)) => Ok(SimpleOrbit::even("g", a)),
        ("odd_hyperbolic", None, Some(a)) => Ok(SimpleOrbit::odd("g", a)),
        _ => Err(PyValueError::new_err(
            "expected kind elliptic with theta=(p, q), or even_hyperbolic/odd_hyperbolic with alpha0",
        )),
    }
}

/// `alpha` of the `k`-fold cover.
#[pyfunction]
#[pyo3(signature = (kind, k, theta=None, alpha0=None))]
fn alpha(kind: &str, k: i64, theta: Option<(i64, i64)>, alpha0: Option<i64>) -> PyResult<i64> {
    alpha_iter(&make_orbit(kind, theta, alpha0)?, k).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (kind, k, theta=None, alpha0=None))]
fn parity(kind: &str, k: i64, theta: Option<(i64, i64)>, alpha0: Option<i64>) -> PyResult<i64> {
    parity_iter(&make_orbit(kind, theta, alpha0)?, k).map_err(py_err)
}

/// Conley-Zehnder index `2 alpha + p` of the `k`-fold cover.
#[pyfunction]
#[pyo3(signature = (kind, k, theta=None, alpha0=None))]
fn cz(kind: &str, k: i64, theta: Option<(i64, i64)>, alpha0: Option<i64>) -> PyResult<i64> {
    cz_index(&make_orbit(kind, theta, alpha0)?, k).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (kind, k, theta=None, alpha0=None))]
fn sigma_bar(kind: &str, k: i64, theta: Option<(i64, i64)>, alpha0: Option<i64>) -> PyResult<i64> {
    spectral_covering(&make_orbit(kind, theta, alpha0)?, k).map_err(py_err)
}

fn finish(command: Vec<String>, result: curvecalc::Result<Report>) -> (i32, String) {
    let report = result.unwrap_or_else(|e| Report::failed(command, &e));
    (report.exit_code(), report.to_json())
}

fn argv(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

/// A parsed workspace document.
#[pyclass(name = "Workspace", frozen)]
struct PyWorkspace {
    inner: Workspace,
}

#[pymethods]
impl PyWorkspace {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Workspace::parse_str(text).map(|inner| PyWorkspace { inner }).map_err(py_err)
    }

    #[pyo3(signature = (orbit=None, cover=1, curve=None))]
    fn invariants(&self, orbit: Option<&str>, cover: i64, curve: Option<&str>) -> (i32, String) {
        let cmd = argv(&["invariants"]);
        finish(cmd.clone(), commands::invariants(&self.inner, orbit, cover, curve, cmd))
    }

    #[pyo3(signature = (a, b, mode="all"))]
    fn gin(&self, a: &str, b: &str, mode: &str) -> (i32, String) {
        let cmd = argv(&["gin", a, b, mode]);
        let run = || commands::gin(&self.inner, a, b, mode.parse::<GinMode>()?, cmd.clone());
        finish(cmd.clone(), run())
    }

    fn adjunction(&self, curve: &str) -> (i32, String) {
        let cmd = argv(&["adjunction", curve]);
        finish(cmd.clone(), commands::adjunction(&self.inner, curve, cmd))
    }

    #[pyo3(signature = (theorem, a, b=None, z=0, w=0, flagged=false))]
    fn check(&self, theorem: &str, a: &str, b: Option<&str>, z: usize, w: usize, flagged: bool) -> (i32, String) {
        let cmd = argv(&["check", theorem, a, b.unwrap_or("")]);
        let run = || {
            let args = CheckArgs {
                theorem: theorem.parse::<Theorem>()?,
                a,
                b,
                z,
                w,
                flagged,
            };
            commands::check(&self.inner, &args, cmd.clone())
        };
        finish(cmd.clone(), run())
    }

    fn concat(&self, u: &str, v: &str) -> (i32, String) {
        let cmd = argv(&["concat", u, v]);
        finish(cmd.clone(), commands::concat(&self.inner, u, v, cmd))
    }

    fn openbook(&self, book: &str, curve: &str) -> (i32, String) {
        let cmd = argv(&["openbook", book, curve]);
        finish(cmd.clone(), commands::openbook(&self.inner, book, curve, cmd))
    }
}

#[pymodule]
fn pycurvecalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(parity, m)?)?;
    m.add_function(wrap_pyfunction!(cz, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_bar, m)?)?;
    m.add_class::<PyWorkspace>()?;
    Ok(())
}
