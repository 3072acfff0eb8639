//! Python bindings. Rationals cross the boundary as `fractions.Fraction`; any
//! object whose `str()` is an integer or `p/q` literal is accepted as input.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use hsimplex_core::verify::{run_suite, Suite, SuiteConfig};
use hsimplex_core::{
    alternant_matrix, area_factors, det_oracle, difference_product, signed_area_direct,
    vandermonde_matrix, vanishing_sum, volume_direct, volume_factored, CurveSimplexSpec, Error,
    ExactMatrix, HRequest, Nodes, Poly, Rational, Strategy,
};

create_exception!(
    hsimplex,
    DomainError,
    PyValueError,
    "Input violates a precondition."
);

fn to_py_err(e: Error) -> PyErr {
    if e.is_domain() {
        DomainError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    Rational::parse(text.trim()).map_err(to_py_err)
}

fn rationals(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Rational>> {
    obj.try_iter()?.map(|item| rational(&item?)).collect()
}

fn nodes(obj: &Bound<'_, PyAny>) -> PyResult<Nodes> {
    Nodes::new(rationals(obj)?).map_err(to_py_err)
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.to_string(),))
}

fn fraction_list<'py>(py: Python<'py>, qs: &[Rational]) -> PyResult<Bound<'py, PyList>> {
    let items = qs
        .iter()
        .map(|q| fraction(py, q))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn matrix(obj: &Bound<'_, PyAny>) -> PyResult<ExactMatrix> {
    let rows = obj
        .try_iter()?
        .map(|row| rationals(&row?))
        .collect::<PyResult<Vec<_>>>()?;
    ExactMatrix::from_rows(rows).map_err(to_py_err)
}

fn matrix_rows<'py>(py: Python<'py>, m: &ExactMatrix) -> PyResult<Bound<'py, PyList>> {
    let rows = m
        .rows()
        .map(|r| fraction_list(py, r))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, rows)
}

/// Complete homogeneous symmetric polynomial h_d evaluated at `xs`.
#[pyfunction]
#[pyo3(signature = (d, xs, method = "recurrence"))]
fn h<'py>(
    py: Python<'py>,
    d: usize,
    xs: &Bound<'py, PyAny>,
    method: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let strategy: Strategy = method.parse().map_err(to_py_err)?;
    let value = HRequest::new(d, nodes(xs)?, strategy)
        .evaluate()
        .map_err(to_py_err)?;
    fraction(py, &value)
}

/// Product of (x_j - x_i) over i < j.
#[pyfunction(name = "difference_product")]
fn py_difference_product<'py>(
    py: Python<'py>,
    xs: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &difference_product(&rationals(xs)?))
}

/// Sum of x_i^k over the product of (x_i - x_j), j != i.
#[pyfunction(name = "vanishing_sum")]
fn py_vanishing_sum<'py>(
    py: Python<'py>,
    k: usize,
    xs: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &vanishing_sum(k, &nodes(xs)?).map_err(to_py_err)?)
}

/// Exact determinant of a square matrix given as a list of rows.
#[pyfunction]
fn det<'py>(py: Python<'py>, rows: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &det_oracle(&matrix(rows)?))
}

#[pyfunction]
fn vandermonde<'py>(py: Python<'py>, xs: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyList>> {
    matrix_rows(py, &vandermonde_matrix(&nodes(xs)?))
}

/// Vandermonde matrix with the last power column raised to n-1+m.
#[pyfunction]
fn alternant<'py>(
    py: Python<'py>,
    m: usize,
    xs: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyList>> {
    matrix_rows(py, &alternant_matrix(m, &nodes(xs)?).map_err(to_py_err)?)
}

/// Points (x_i, p(x_i)) on the graph of a polynomial.
#[pyclass(module = "hsimplex", frozen)]
struct CurveSimplex {
    spec: CurveSimplexSpec,
}

#[pymethods]
impl CurveSimplex {
    #[new]
    fn new(poly: &Bound<'_, PyAny>, xs: &Bound<'_, PyAny>) -> PyResult<Self> {
        let poly = Poly::new(rationals(poly)?);
        let spec = CurveSimplexSpec::new(poly, nodes(xs)?).map_err(to_py_err)?;
        Ok(CurveSimplex { spec })
    }

    #[getter]
    fn poly<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fraction_list(py, self.spec.poly.coeffs())
    }

    #[getter]
    fn nodes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fraction_list(py, self.spec.nodes.values())
    }

    /// Signed area of the triangle, from the vertex coordinates.
    fn signed_area<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let a = signed_area_direct(&self.spec.poly, &self.spec.nodes).map_err(to_py_err)?;
        fraction(py, &a)
    }

    /// Area of the triangle from the factored formula.
    fn area<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let f = area_factors(&self.spec.poly, &self.spec.nodes).map_err(to_py_err)?;
        fraction(py, &f.area)
    }

    #[pyo3(signature = (direct = false))]
    fn volume<'py>(&self, py: Python<'py>, direct: bool) -> PyResult<Bound<'py, PyDict>> {
        let r = if direct {
            volume_direct(&self.spec)
        } else {
            volume_factored(&self.spec)
        };
        let out = PyDict::new(py);
        out.set_item("det", fraction(py, &r.det)?)?;
        out.set_item(
            "difference_product",
            fraction(py, &r.factored.difference_product)?,
        )?;
        out.set_item("h_sum", fraction(py, &r.factored.h_sum)?)?;
        out.set_item(
            "parallelepiped_volume",
            fraction(py, &r.parallelepiped_volume)?,
        )?;
        out.set_item("simplex_volume", fraction(py, &r.simplex_volume)?)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        let join = |qs: &[Rational]| {
            qs.iter()
                .map(|q| format!("'{q}'"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!(
            "CurveSimplex([{}], [{}])",
            join(self.spec.poly.coeffs()),
            join(self.spec.nodes.values())
        )
    }
}

/// Run one seeded verification suite; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, trials = None, seed = 0, n_range = None, d_range = None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    trials: Option<usize>,
    seed: u64,
    n_range: Option<(usize, usize)>,
    d_range: Option<(usize, usize)>,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(to_py_err)?;
    let mut config = SuiteConfig::defaults(suite, seed);
    if let Some(t) = trials {
        config.trials = t;
    }
    if let Some(r) = n_range {
        config.n_range = r;
    }
    if let Some(r) = d_range {
        config.d_range = r;
    }
    let report = py.detach(|| run_suite(suite, &config)).map_err(to_py_err)?;
    py.import("json")?
        .getattr("loads")?
        .call1((report.to_json_line(),))
}

#[pymodule]
fn hsimplex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    m.add_class::<CurveSimplex>()?;
    m.add_function(wrap_pyfunction!(h, m)?)?;
    m.add_function(wrap_pyfunction!(py_difference_product, m)?)?;
    m.add_function(wrap_pyfunction!(py_vanishing_sum, m)?)?;
    m.add_function(wrap_pyfunction!(det, m)?)?;
    m.add_function(wrap_pyfunction!(vandermonde, m)?)?;
    m.add_function(wrap_pyfunction!(alternant, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
