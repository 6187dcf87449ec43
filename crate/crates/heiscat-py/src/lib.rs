use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use heiscat::diagram_engine::{self as de, relations};
use heiscat::thick_karoubi as tk;
use heiscat::{Error, HeisElem, SymElem};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A symmetric function with rational coefficients in the Schur basis.
#[pyclass(name = "Sym", frozen)]
struct PySym(SymElem);

#[pymethods]
impl PySym {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        SymElem::parse(text).map(PySym).map_err(err)
    }

    fn __mul__(&self, o: &PySym) -> PySym {
        PySym(self.0.mul(&o.0))
    }

    fn __add__(&self, o: &PySym) -> PySym {
        PySym(&self.0 + &o.0)
    }

    fn __eq__(&self, o: &PySym) -> bool {
        self.0 == o.0
    }

    fn __repr__(&self) -> String {
        format!("Sym({})", self.0)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }
}

/// An element of the Heisenberg ring at a fixed charge.
#[pyclass(name = "Heis", frozen)]
struct PyHeis(HeisElem);

#[pymethods]
impl PyHeis {
    #[new]
    fn new(text: &str, charge: i64) -> PyResult<Self> {
        HeisElem::parse(text, charge).map(PyHeis).map_err(err)
    }

    fn __mul__(&self, o: &PyHeis) -> PyResult<PyHeis> {
        self.0.mul(&o.0).map(PyHeis).map_err(err)
    }

    fn __add__(&self, o: &PyHeis) -> PyResult<PyHeis> {
        self.0.add(&o.0).map(PyHeis).map_err(err)
    }

    fn __eq__(&self, o: &PyHeis) -> bool {
        self.0 == o.0
    }

    fn __repr__(&self) -> String {
        format!("Heis({})", self.0)
    }

    fn delta(&self, l: i64, m: i64) -> PyResult<String> {
        self.0.delta_lm(l, m).map(|t| t.to_json().to_string()).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }
}

/// A morphism of the Heisenberg category in normal form.
#[pyclass(name = "Morphism", frozen)]
struct PyMorphism(de::Morphism);

#[pymethods]
impl PyMorphism {
    #[new]
    fn new(text: &str, charge: i64) -> PyResult<Self> {
        de::parse_morphism(text, charge).map(PyMorphism).map_err(err)
    }

    #[getter]
    fn charge(&self) -> i64 {
        self.0.k
    }

    #[getter]
    fn source(&self) -> String {
        de::word_string(&self.0.source)
    }

    #[getter]
    fn target(&self) -> String {
        de::word_string(&self.0.target)
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyMorphism) -> PyResult<PyMorphism> {
        de::Morphism::compose(&self.0, &other.0).map(PyMorphism).map_err(err)
    }

    fn tensor(&self, other: &PyMorphism) -> PyResult<PyMorphism> {
        de::Morphism::tensor(&self.0, &other.0).map(PyMorphism).map_err(err)
    }

    fn star(&self) -> PyResult<PyMorphism> {
        self.0.star().map(PyMorphism).map_err(err)
    }

    fn omega(&self) -> PyResult<PyMorphism> {
        self.0.omega().map(PyMorphism).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __eq__(&self, o: &PyMorphism) -> PyResult<bool> {
        self.0.equal(&o.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Morphism({})", self.0)
    }

    /// An expression in the term grammar that parses back to this morphism.
    fn expr(&self) -> String {
        de::morphism_expr(&self.0)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }
}

#[pyfunction]
#[pyo3(signature = (dots, charge, ccw = true))]
fn bubble(dots: i64, charge: i64, ccw: bool) -> PySym {
    PySym(de::bubble(ccw, dots, charge))
}

/// `(name, passed)` for every defining and derived relation.
#[pyfunction]
fn relation_suite(charge: i64) -> Vec<(String, bool)> {
    let mut out = relations::defining_suite(charge);
    out.extend(relations::derived_suite(charge));
    out
}

#[pyfunction]
#[pyo3(signature = (m, n, charge, degree = 4))]
fn verify_t3(m: usize, n: usize, charge: i64, degree: usize) -> PyResult<bool> {
    let r = tk::verify_t3(m, n, charge, degree).map_err(err)?;
    Ok(r.ok && r.classes_match)
}

#[pyfunction]
#[pyo3(signature = (charge, degree = 4))]
fn verify_invrel(charge: i64, degree: usize) -> PyResult<bool> {
    let r = tk::verify_invrel(charge, degree).map_err(err)?;
    Ok(r.ok && r.classes_match)
}

#[pymodule]
fn heiscat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySym>()?;
    m.add_class::<PyHeis>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(bubble, m)?)?;
    m.add_function(wrap_pyfunction!(relation_suite, m)?)?;
    m.add_function(wrap_pyfunction!(verify_t3, m)?)?;
    m.add_function(wrap_pyfunction!(verify_invrel, m)?)?;
    Ok(())
}
