//! Python bindings: time scales, expressions and the verified integrator.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tsquad as core;
use tsquad::{BoxKind, IntegratorConfig};

fn to_py_err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<BoxKind> {
    match kind {
        "delta" => Ok(BoxKind::Delta),
        "nabla" => Ok(BoxKind::Nabla),
        other => Err(PyValueError::new_err(format!(
            "kind must be \"delta\" or \"nabla\", got \"{other}\""
        ))),
    }
}

fn config(tol: Option<f64>) -> IntegratorConfig {
    let mut cfg = IntegratorConfig::default();
    if let Some(tol) = tol {
        cfg.tol = tol;
    }
    cfg
}

/// A nonempty closed bounded time scale.
#[pyclass(name = "TimeScale", frozen)]
struct PyTimeScale {
    inner: core::TimeScale,
}

#[pymethods]
impl PyTimeScale {
    /// Parse the scale grammar: points(...), uniform(a,b,h), qscale(q),
    /// interval(lo,hi), union(e1; e2; ...).
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyTimeScale {
            inner: core::parse_scale(text).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn points(pts: Vec<f64>) -> PyResult<Self> {
        Ok(PyTimeScale {
            inner: core::TimeScale::points(pts).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn interval(lo: f64, hi: f64) -> PyResult<Self> {
        Ok(PyTimeScale {
            inner: core::TimeScale::interval(lo, hi).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn uniform(a: f64, b: f64, h: f64) -> PyResult<Self> {
        Ok(PyTimeScale {
            inner: core::TimeScale::uniform(a, b, h).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn qscale(q: f64) -> PyResult<Self> {
        Ok(PyTimeScale {
            inner: core::TimeScale::qscale(q).map_err(to_py_err)?,
        })
    }

    fn min(&self) -> f64 {
        self.inner.min()
    }

    fn max(&self) -> f64 {
        self.inner.max()
    }

    fn contains(&self, t: f64) -> bool {
        self.inner.contains(t)
    }

    fn snap(&self, t: f64) -> PyResult<f64> {
        self.inner.snap(t).map_err(to_py_err)
    }

    fn sigma(&self, t: f64) -> PyResult<f64> {
        self.inner.sigma(t).map_err(to_py_err)
    }

    fn rho(&self, t: f64) -> PyResult<f64> {
        self.inner.rho(t).map_err(to_py_err)
    }

    fn mu(&self, t: f64) -> PyResult<f64> {
        self.inner.mu(t).map_err(to_py_err)
    }

    fn nu(&self, t: f64) -> PyResult<f64> {
        self.inner.nu(t).map_err(to_py_err)
    }

    #[pyo3(signature = (lo, hi, cap = 100_000))]
    fn enumerate_between(&self, lo: f64, hi: f64, cap: usize) -> PyResult<Vec<f64>> {
        self.inner.enumerate_between(lo, hi, cap).map_err(to_py_err)
    }

    fn restrict(&self, a: f64, b: f64) -> PyResult<Self> {
        Ok(PyTimeScale {
            inner: self.inner.restrict(a, b).map_err(to_py_err)?,
        })
    }
}

/// An expression in the single variable t.
#[pyclass(name = "Expr", frozen)]
struct PyExpr {
    inner: core::Expr,
}

#[pymethods]
impl PyExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyExpr {
            inner: core::parse_expr(text).map_err(to_py_err)?,
        })
    }

    fn eval(&self, t: f64) -> PyResult<f64> {
        self.inner.eval(t).map_err(to_py_err)
    }

    fn differentiate(&self) -> Self {
        PyExpr {
            inner: self.inner.differentiate(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Expr(\"{}\")", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Verified enclosure of a box-integral.
#[pyclass(name = "IntegralResult", frozen)]
struct PyIntegralResult {
    #[pyo3(get)]
    lower: f64,
    #[pyo3(get)]
    upper: f64,
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    exact: bool,
    #[pyo3(get)]
    refinements: usize,
    #[pyo3(get)]
    partition_size: usize,
}

impl From<core::IntegralResult> for PyIntegralResult {
    fn from(r: core::IntegralResult) -> Self {
        PyIntegralResult {
            lower: r.lower,
            upper: r.upper,
            value: r.value,
            exact: r.exact,
            refinements: r.refinements,
            partition_size: r.final_partition_size,
        }
    }
}

#[pymethods]
impl PyIntegralResult {
    fn width(&self) -> f64 {
        self.upper - self.lower
    }

    fn __repr__(&self) -> String {
        format!(
            "IntegralResult(value={}, lower={}, upper={}, exact={})",
            self.value, self.lower, self.upper, self.exact
        )
    }
}

/// Enclose the Riemann-Stieltjes box-integral of f with respect to g over
/// [a, b] of the scale. f and g are expression strings in t; kind is
/// "delta" or "nabla".
#[pyfunction]
#[pyo3(signature = (f, g, scale, a, b, kind = "delta", tol = None))]
fn integrate(
    f: &str,
    g: &str,
    scale: &PyTimeScale,
    a: f64,
    b: f64,
    kind: &str,
    tol: Option<f64>,
) -> PyResult<PyIntegralResult> {
    let f = core::parse_expr(f).map_err(to_py_err)?;
    let g = core::parse_expr(g).map_err(to_py_err)?;
    let kind = parse_kind(kind)?;
    core::integrate(&f, &g, &scale.inner, a, b, kind, &config(tol))
        .map(Into::into)
        .map_err(to_py_err)
}

/// One-step closed form: f(t)(g(sigma(t)) - g(t)) for delta,
/// f(t)(g(t) - g(rho(t))) for nabla.
#[pyfunction]
#[pyo3(signature = (f, g, scale, t, kind = "delta"))]
fn single_step(f: &str, g: &str, scale: &PyTimeScale, t: f64, kind: &str) -> PyResult<f64> {
    let f = core::parse_expr(f).map_err(to_py_err)?;
    let g = core::parse_expr(g).map_err(to_py_err)?;
    let kind = parse_kind(kind)?;
    core::single_step(&f, &g, &scale.inner, t, kind).map_err(to_py_err)
}

/// Defect of the transition identity; returns (residual, width_budget).
#[pyfunction]
#[pyo3(signature = (f, g, scale, a, b, kind = "delta", tol = None))]
fn transition_residual(
    f: &str,
    g: &str,
    scale: &PyTimeScale,
    a: f64,
    b: f64,
    kind: &str,
    tol: Option<f64>,
) -> PyResult<(f64, f64)> {
    let f = core::parse_expr(f).map_err(to_py_err)?;
    let g = core::parse_expr(g).map_err(to_py_err)?;
    let kind = parse_kind(kind)?;
    let r = core::transition_residual(&f, &g, &scale.inner, a, b, kind, &config(tol))
        .map_err(to_py_err)?;
    Ok((r.residual, r.width_budget))
}

/// Defect of the integration-by-parts identity; returns
/// (residual, width_budget).
#[pyfunction]
#[pyo3(signature = (f, g, scale, a, b, kind = "delta", tol = None))]
fn by_parts_residual(
    f: &str,
    g: &str,
    scale: &PyTimeScale,
    a: f64,
    b: f64,
    kind: &str,
    tol: Option<f64>,
) -> PyResult<(f64, f64)> {
    let f = core::parse_expr(f).map_err(to_py_err)?;
    let g = core::parse_expr(g).map_err(to_py_err)?;
    let kind = parse_kind(kind)?;
    let r = core::by_parts_residual(&f, &g, &scale.inner, a, b, kind, &config(tol))
        .map_err(to_py_err)?;
    Ok((r.residual, r.width_budget))
}

/// Defect of the substitution identity under a strictly increasing map
/// phi; returns (residual, width_budget).
#[pyfunction]
#[pyo3(signature = (f, g, phi, source_scale, a, b, kind = "delta", tol = None))]
#[allow(clippy::too_many_arguments)]
fn substitution_check(
    f: &str,
    g: &str,
    phi: &str,
    source_scale: &PyTimeScale,
    a: f64,
    b: f64,
    kind: &str,
    tol: Option<f64>,
) -> PyResult<(f64, f64)> {
    let f = core::parse_expr(f).map_err(to_py_err)?;
    let g = core::parse_expr(g).map_err(to_py_err)?;
    let phi = core::parse_expr(phi).map_err(to_py_err)?;
    let kind = parse_kind(kind)?;
    let r = core::substitution_check(&f, &g, &phi, &source_scale.inner, a, b, kind, &config(tol))
        .map_err(to_py_err)?;
    Ok((r.residual, r.width_budget))
}

/// Closed forms on the q-scale for f = t, g = t^2 over [0, 1]:
/// (delta, nabla) = ((q+1)/(q^2+q+1), (q^2+q)/(q^2+q+1)).
#[pyfunction]
fn qscale_oracle(q: f64) -> PyResult<(f64, f64)> {
    core::qscale_oracle(q).map_err(to_py_err)
}

#[pymodule]
fn tsquad_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTimeScale>()?;
    m.add_class::<PyExpr>()?;
    m.add_class::<PyIntegralResult>()?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(single_step, m)?)?;
    m.add_function(wrap_pyfunction!(transition_residual, m)?)?;
    m.add_function(wrap_pyfunction!(by_parts_residual, m)?)?;
    m.add_function(wrap_pyfunction!(substitution_check, m)?)?;
    m.add_function(wrap_pyfunction!(qscale_oracle, m)?)?;
    Ok(())
}
