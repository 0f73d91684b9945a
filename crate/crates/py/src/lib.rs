//! Python bindings for `lah_core`.
//!
//! Integers cross the boundary as Python `int` and rationals as
//! `fractions.Fraction`.

use std::collections::BTreeMap;

use lah_core::report::{emit_report, Format};
use lah_core::verify::{self, IdentityInstance, Route, RouteValue};
use lah_core::{comb, exact, symbolic, Error, Integer, Rational};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Mismatch { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

/// Accepts `int`, `Fraction`, or anything with integer `numerator` and
/// `denominator` attributes.
fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<BigInt>() {
        return Ok(Rational::from_integer(i));
    }
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn instance(k: i64, n: i64) -> PyResult<IdentityInstance> {
    IdentityInstance::new(k, n).map_err(to_py_err)
}

#[pyfunction]
fn factorial(m: i64) -> PyResult<Integer> {
    exact::factorial_checked(m).map_err(to_py_err)
}

#[pyfunction]
fn binomial(r: BigInt, j: i64) -> Integer {
    exact::binomial_general(&r, j)
}

#[pyfunction]
fn rising<'py>(py: Python<'py>, x: &Bound<'py, PyAny>, n: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &exact::rising(&rational_arg(x)?, n))
}

#[pyfunction]
fn falling<'py>(py: Python<'py>, x: &Bound<'py, PyAny>, n: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &exact::falling(&rational_arg(x)?, n))
}

#[pyfunction]
fn lah(n: u64, k: u64) -> Integer {
    comb::lah(n, k)
}

#[pyfunction]
fn lah_bruteforce(n: i64, k: i64) -> PyResult<Integer> {
    comb::lah_bruteforce(n, k).map_err(to_py_err)
}

#[pyfunction]
fn lah_triangle(max_n: usize) -> Vec<Vec<Integer>> {
    comb::lah_triangle(max_n)
        .rows()
        .map(<[Integer]>::to_vec)
        .collect()
}

#[pyfunction]
fn stirling1(n: u64, k: u64) -> Integer {
    comb::stirling1(n, k)
}

#[pyfunction]
fn stirling1_triangle(max_n: usize) -> Vec<Vec<Integer>> {
    comb::stirling1_triangle(max_n)
        .rows()
        .map(<[Integer]>::to_vec)
        .collect()
}

#[pyfunction]
fn stirling1_from_rising_poly(n: u64) -> Vec<Integer> {
    comb::stirling1_from_rising_poly(n)
}

#[pyfunction]
fn stirling1_from_log_series(
    py: Python<'_>,
    max_n: usize,
    k: usize,
) -> PyResult<Vec<Bound<'_, PyAny>>> {
    if k > max_n {
        return Err(PyValueError::new_err(format!(
            "need k <= max_n, got k = {k}, max_n = {max_n}"
        )));
    }
    comb::stirling1_from_log_series(max_n, k)
        .iter()
        .map(|c| fraction(py, c))
        .collect()
}

#[pyfunction]
fn rhs_reference(k: i64, n: i64) -> PyResult<Integer> {
    Ok(verify::rhs_reference(&instance(k, n)?))
}

#[pyfunction]
fn lhs_direct(k: i64, n: i64) -> PyResult<Integer> {
    Ok(verify::lhs_direct(&instance(k, n)?))
}

/// Value of one route (`"r1"` .. `"r6"`) at `(k, n)`.
#[pyfunction]
fn route(name: &str, k: i64, n: i64) -> PyResult<Integer> {
    let r: Route = name.parse().map_err(to_py_err)?;
    r.eval(&instance(k, n)?).map_err(to_py_err)
}

#[pyfunction]
fn gkp_identity(l: u64, m: i64, s: i64, n: i64) -> (Integer, Integer) {
    verify::gkp_identity(l, m, s, n)
}

#[pyfunction]
fn chu_vandermonde(r: u64, s: i64, m: i64, n: i64) -> (Integer, Integer) {
    verify::chu_vandermonde(r, s, m, n)
}

#[pyfunction]
fn binomial_inversion(h: Vec<BigInt>) -> Vec<Integer> {
    verify::binomial_inversion(&h)
}

#[pyfunction]
fn hypergeom_2f1_terminating(py: Python<'_>, a: i64, b: i64, c: i64) -> PyResult<Bound<'_, PyAny>> {
    fraction(
        py,
        &verify::hypergeom_2f1_terminating(a, b, c).map_err(to_py_err)?,
    )
}

#[pyfunction]
fn chu_vandermonde_closed(py: Python<'_>, a: i64, b: i64, c: i64) -> PyResult<Bound<'_, PyAny>> {
    fraction(
        py,
        &verify::chu_vandermonde_closed(a, b, c).map_err(to_py_err)?,
    )
}

/// Terms `(c, a, b)` of the `k`-th `t`-derivative of `exp(-u/t)`.
#[pyfunction]
fn exp_derivative_lah(py: Python<'_>, k: i64) -> PyResult<Vec<Bound<'_, PyTuple>>> {
    let e = symbolic::exp_derivative_lah(k).map_err(to_py_err)?;
    e.terms()
        .map(|(c, a, b)| {
            PyTuple::new(
                py,
                [
                    fraction(py, c)?,
                    a.into_pyobject(py)?.into_any(),
                    b.into_pyobject(py)?.into_any(),
                ],
            )
        })
        .collect()
}

#[pyfunction]
fn route6_coefficient_chain(m: i64, k: i64) -> PyResult<BTreeMap<i64, Integer>> {
    symbolic::route6_coefficient_chain(m, k).map_err(to_py_err)
}

/// Outcome of checking one `(k, n)` instance.
#[pyclass(frozen, name = "VerificationReport")]
struct PyReport {
    #[pyo3(get)]
    k: i64,
    #[pyo3(get)]
    n: i64,
    #[pyo3(get)]
    reference: Integer,
    #[pyo3(get)]
    lhs_direct: Integer,
    /// Route name to value, or to an error message when the route failed.
    routes: BTreeMap<String, RouteValue>,
    #[pyo3(get)]
    all_match: bool,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn routes<'py>(&self, py: Python<'py>) -> PyResult<BTreeMap<String, Bound<'py, PyAny>>> {
        self.routes
            .iter()
            .map(|(name, v)| {
                let obj = match v {
                    RouteValue::Value(i) => i.into_pyobject(py)?.into_any(),
                    RouteValue::Failed(e) => e.into_pyobject(py)?.into_any(),
                };
                Ok((name.clone(), obj))
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(k={}, n={}, reference={}, all_match={})",
            self.k,
            self.n,
            self.reference,
            if self.all_match { "True" } else { "False" }
        )
    }
}

fn parse_routes(routes: &str, k_max: i64, n_max: i64) -> PyResult<Vec<Route>> {
    if routes == "all" {
        return Ok(Route::default_set(k_max, n_max));
    }
    routes
        .split(',')
        .map(|s| s.parse().map_err(to_py_err))
        .collect()
}

fn run_grid(
    k_min: i64,
    k_max: i64,
    n_min: i64,
    n_max: i64,
    routes: &str,
    jobs: usize,
) -> PyResult<(Vec<Route>, Vec<verify::VerificationReport>)> {
    let routes = parse_routes(routes, k_max, n_max)?;
    let reports = verify::verify_grid(k_min..=k_max, n_min..=n_max, &routes, jobs.max(1))
        .map_err(to_py_err)?;
    Ok((routes, reports))
}

/// Reports for every `(k, n)` of the grid, in lexicographic order.
#[pyfunction]
#[pyo3(signature = (k_min, k_max, n_min, n_max, routes = "all", jobs = 1))]
fn verify_grid(
    py: Python<'_>,
    k_min: i64,
    k_max: i64,
    n_min: i64,
    n_max: i64,
    routes: &str,
    jobs: usize,
) -> PyResult<Vec<PyReport>> {
    let (_, reports) = py.detach(|| run_grid(k_min, k_max, n_min, n_max, routes, jobs))?;
    Ok(reports
        .into_iter()
        .map(|r| PyReport {
            k: r.instance.k(),
            n: r.instance.n(),
            reference: r.reference,
            lhs_direct: r.lhs_direct,
            routes: r.route_values,
            all_match: r.all_match,
        })
        .collect())
}

/// Same grid as [`verify_grid`] rendered as `text`, `json` or `csv`.
#[pyfunction]
#[pyo3(signature = (k_min, k_max, n_min, n_max, routes = "all", format = "json", jobs = 1))]
#[allow(clippy::too_many_arguments)]
fn verify_report(
    py: Python<'_>,
    k_min: i64,
    k_max: i64,
    n_min: i64,
    n_max: i64,
    routes: &str,
    format: &str,
    jobs: usize,
) -> PyResult<String> {
    let format: Format = format.parse().map_err(PyValueError::new_err)?;
    let (routes, reports) = py.detach(|| run_grid(k_min, k_max, n_min, n_max, routes, jobs))?;
    let names: Vec<String> = routes.iter().map(|r| r.name().to_owned()).collect();
    Ok(emit_report(&reports, &names, format))
}

#[pymodule]
fn pylah(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(factorial, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(rising, m)?)?;
    m.add_function(wrap_pyfunction!(falling, m)?)?;
    m.add_function(wrap_pyfunction!(lah, m)?)?;
    m.add_function(wrap_pyfunction!(lah_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(lah_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(stirling1, m)?)?;
    m.add_function(wrap_pyfunction!(stirling1_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(stirling1_from_rising_poly, m)?)?;
    m.add_function(wrap_pyfunction!(stirling1_from_log_series, m)?)?;
    m.add_function(wrap_pyfunction!(rhs_reference, m)?)?;
    m.add_function(wrap_pyfunction!(lhs_direct, m)?)?;
    m.add_function(wrap_pyfunction!(route, m)?)?;
    m.add_function(wrap_pyfunction!(gkp_identity, m)?)?;
    m.add_function(wrap_pyfunction!(chu_vandermonde, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_inversion, m)?)?;
    m.add_function(wrap_pyfunction!(hypergeom_2f1_terminating, m)?)?;
    m.add_function(wrap_pyfunction!(chu_vandermonde_closed, m)?)?;
    m.add_function(wrap_pyfunction!(exp_derivative_lah, m)?)?;
    m.add_function(wrap_pyfunction!(route6_coefficient_chain, m)?)?;
    m.add_function(wrap_pyfunction!(verify_grid, m)?)?;
    m.add_function(wrap_pyfunction!(verify_report, m)?)?;
    Ok(())
}
