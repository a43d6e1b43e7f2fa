//! Python bindings: `Model` (a model document with named forms, complex
//! structures and metrics), `Form` (an exact differential form) and the
//! verification commands, which return reports as plain dicts.

use pairgeom::catalog;
use pairgeom::commands;
use pairgeom::document::ModelBundle;
use pairgeom::report::Report;
use pairgeom::scalar::{format_scalar, int, parse_scalar};
use pairgeom::{Error, KForm, Scalar};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

create_exception!(pairgeom, PairgeomError, PyValueError, "Malformed or mismatched input.");

fn err(e: Error) -> PyErr {
    PairgeomError::new_err(e.to_string())
}

/// Integers, `Fraction`s and strings such as `"-3/2"`.
fn scalar_arg(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(int(i));
    }
    let text = obj.str()?.to_string();
    parse_scalar(&text).map_err(|e| PairgeomError::new_err(e.to_string()))
}

/// `"e3"`, `"0,0,1,0"` or a sequence of scalars.
fn vector_arg(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.extract::<String>() {
        return Ok(s);
    }
    let parts = obj
        .try_iter()?
        .map(|item| scalar_arg(&item?).map(|s| format_scalar(&s)))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(parts.join(","))
}

fn to_python(py: Python<'_>, json: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (json,))?.unbind())
}

fn report(py: Python<'_>, r: pairgeom::Result<Report>) -> PyResult<Py<PyAny>> {
    to_python(py, &r.map_err(err)?.to_json())
}

#[pyclass(name = "Form", module = "pairgeom", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyForm(KForm);

#[pymethods]
impl PyForm {
    /// The coframe form `w_i` (1-based) on a `dim`-dimensional algebra.
    #[staticmethod]
    fn basis(dim: usize, i: usize) -> PyResult<Self> {
        if i == 0 || i > dim {
            return Err(err(Error::IndexOutOfRange { index: i, dim }));
        }
        Ok(PyForm(KForm::basis(dim, i - 1)))
    }

    /// `coeff · w_{i_1} ∧ .. ∧ w_{i_k}` with 1-based increasing indices.
    #[staticmethod]
    #[pyo3(signature = (dim, indices, coeff = None))]
    fn monomial(dim: usize, indices: Vec<usize>, coeff: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let c = coeff.map(scalar_arg).transpose()?.unwrap_or_else(|| int(1));
        if let Some(&i) = indices.iter().find(|&&i| i == 0) {
            return Err(err(Error::IndexOutOfRange { index: i, dim }));
        }
        let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        KForm::monomial(dim, &zero_based, c).map(PyForm).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn wedge(&self, other: &PyForm) -> PyResult<PyForm> {
        self.0.wedge(&other.0).map(PyForm).map_err(err)
    }

    fn power(&self, m: usize) -> PyForm {
        PyForm(self.0.power(m))
    }

    fn scale(&self, s: &Bound<'_, PyAny>) -> PyResult<PyForm> {
        Ok(PyForm(self.0.scale_scalar(&scalar_arg(s)?)))
    }

    /// Coefficient on `w_1 ∧ .. ∧ w_n` as a string.
    fn top_coefficient(&self) -> String {
        format_scalar(&self.0.top_coefficient())
    }

    fn rank(&self) -> PyResult<usize> {
        self.0.two_form_rank().map_err(err)
    }

    fn interior(&self, x: &Bound<'_, PyAny>) -> PyResult<PyForm> {
        let v = pairgeom::TangentVector::parse(&vector_arg(x)?).map_err(err)?;
        self.0.interior(&v).map(PyForm).map_err(err)
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_python(py, &serde_json::to_string(&self.0).expect("forms serialize"))
    }

    fn __xor__(&self, other: &PyForm) -> PyResult<PyForm> {
        self.wedge(other)
    }

    fn __add__(&self, other: &PyForm) -> PyResult<PyForm> {
        self.0.checked_add(&other.0).map(PyForm).map_err(err)
    }

    fn __sub__(&self, other: &PyForm) -> PyResult<PyForm> {
        self.0.checked_sub(&other.0).map(PyForm).map_err(err)
    }

    fn __neg__(&self) -> PyForm {
        PyForm(-&self.0)
    }

    fn __rmul__(&self, s: &Bound<'_, PyAny>) -> PyResult<PyForm> {
        self.scale(s)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Form({})", self.0)
    }
}

#[pyclass(name = "Model", module = "pairgeom", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModel(ModelBundle);

#[pymethods]
impl PyModel {
    /// A built-in model by name.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog::load_model(name).map(PyModel).map_err(err)
    }

    /// A model document in JSON.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ModelBundle::from_json(text).map(PyModel).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_document().to_json()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.0.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn form_names(&self) -> Vec<String> {
        self.0.forms.keys().cloned().collect()
    }

    /// A named form, or a coframe form such as `"w3"`.
    fn form(&self, name: &str) -> PyResult<PyForm> {
        self.0.form(name).map(PyForm).map_err(err)
    }

    /// A copy of the model with `form` stored under `name`.
    fn with_form(&self, name: &str, form: &PyForm) -> PyResult<PyModel> {
        if form.0.dim() != self.0.dim() {
            return Err(err(Error::DimensionMismatch {
                expected: self.0.dim(),
                found: form.0.dim(),
            }));
        }
        Ok(PyModel(self.0.clone().with_form(name, form.0.clone())))
    }

    /// Chevalley–Eilenberg differential.
    fn d(&self, form: &PyForm) -> PyResult<PyForm> {
        self.0.model.ce_differential(&form.0).map(PyForm).map_err(err)
    }

    /// `[x, y]` as a list of coordinate strings.
    fn bracket(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let (x, y) = (self.0.vector(&vector_arg(x)?).map_err(err)?, self.0.vector(&vector_arg(y)?).map_err(err)?);
        let v = self.0.model.bracket(&x, &y).map_err(err)?;
        Ok(v.components().iter().map(format_scalar).collect())
    }

    fn verify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        report(py, Ok(commands::verify(&self.0)))
    }

    #[pyo3(signature = (alpha, beta, h = None, k = None))]
    fn contact_pair(&self, py: Python<'_>, alpha: &str, beta: &str, h: Option<usize>, k: Option<usize>) -> PyResult<Py<PyAny>> {
        report(py, commands::contact_pair(&self.0, alpha, beta, h, k))
    }

    fn reeb(&self, py: Python<'_>, alpha: &str, beta: &str) -> PyResult<Py<PyAny>> {
        report(py, commands::reeb(&self.0, alpha, beta))
    }

    /// `c` may be a number, a string such as `"1/2"`, or `"formal"`.
    #[pyo3(signature = (alpha, beta, c = None))]
    fn to_lcs(&self, py: Python<'_>, alpha: &str, beta: &str, c: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let c = match c {
            None => None,
            Some(obj) => Some(commands::parse_c(&obj.str()?.to_string()).map_err(err)?),
        };
        report(py, commands::to_lcs(&self.0, alpha, beta, c))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_lcs(&self, py: Python<'_>, omega: &str, x: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        report(py, commands::from_lcs(&self.0, omega, &vector_arg(x)?))
    }

    fn lcs(&self, py: Python<'_>, omega: &str) -> PyResult<Py<PyAny>> {
        report(py, commands::lcs(&self.0, omega))
    }

    fn nijenhuis(&self, py: Python<'_>, j: &str) -> PyResult<Py<PyAny>> {
        report(py, commands::nijenhuis(&self.0, j))
    }

    fn normal(&self, py: Python<'_>, alpha: &str, beta: &str, j: &str, g: &str) -> PyResult<Py<PyAny>> {
        report(py, commands::normal(&self.0, alpha, beta, j, g))
    }

    fn vaisman(&self, py: Python<'_>, j: &str, g: &str) -> PyResult<Py<PyAny>> {
        report(py, commands::vaisman(&self.0, j, g))
    }

    fn symplectic_pair(&self, py: Python<'_>, w1: &str, w2: &str) -> PyResult<Py<PyAny>> {
        report(py, commands::symplectic_pair(&self.0, w1, w2))
    }

    fn kahler_pair(&self, py: Python<'_>, w1: &str, w2: &str, j: &str) -> PyResult<Py<PyAny>> {
        report(py, commands::kahler_pair(&self.0, w1, w2, j))
    }

    fn __repr__(&self) -> String {
        format!("Model({}, dim={})", self.0.name.as_deref().unwrap_or("unnamed"), self.0.dim())
    }
}

/// Names of the built-in models.
#[pyfunction]
fn list_models(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    PyList::new(py, catalog::list_models())
}

#[pymodule]
#[pyo3(name = "pairgeom")]
fn pairgeom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForm>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(list_models, m)?)?;
    m.add("PairgeomError", m.py().get_type::<PairgeomError>())?;
    Ok(())
}
