//! Python bindings. Points, words and sets cross the boundary in their
//! textual forms; reports and certificates as JSON strings.

use cantor_core::cert::{family_export, Certificate, CertificateFile, DecompositionPayload};
use cantor_core::lab::{
    decompose as decompose_image, falsify_restriction, lc2_certificate, project_union, resolvable_probe,
    verify_witness, Rect, RectUnion,
};
use cantor_core::suite::{run_all, SuiteConfig};
use cantor_core::{CantorPoint, ClopenSet, Construction, Error, Word};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExhausted { .. } | Error::Certification(_) | Error::NonMonotone { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("values serialize")
}

/// An eventually periodic point of the Cantor set, e.g. `Point("02^(20)")`.
#[pyclass(name = "Point", frozen, skip_from_py_object, module = "cantor_py")]
#[derive(Clone)]
struct PyPoint(CantorPoint);

#[pymethods]
impl PyPoint {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse(text).map(PyPoint)
    }

    /// Exact value in [0, 1] as `"p/q"`.
    fn value(&self) -> String {
        self.0.value().to_string()
    }

    fn distance(&self, other: &PyPoint) -> String {
        self.0.distance(&other.0).to_string()
    }

    fn digit(&self, k: usize) -> u8 {
        self.0.digit(k)
    }

    fn head(&self, len: usize) -> String {
        self.0.head(len).to_string()
    }

    fn in_cylinder(&self, word: &str) -> PyResult<bool> {
        Ok(self.0.in_cylinder(&parse::<Word>(word)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Point('{}')", self.0)
    }

    fn __eq__(&self, other: &PyPoint) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }
}

/// A clopen subset of the Cantor set, e.g. `Clopen("00,2")`.
#[pyclass(name = "Clopen", frozen, skip_from_py_object, module = "cantor_py")]
#[derive(Clone)]
struct PyClopen(ClopenSet);

#[pymethods]
impl PyClopen {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse(text).map(PyClopen)
    }

    fn union(&self, other: &PyClopen) -> Self {
        PyClopen(self.0.union(&other.0))
    }

    fn intersect(&self, other: &PyClopen) -> Self {
        PyClopen(self.0.intersect(&other.0))
    }

    fn difference(&self, other: &PyClopen) -> Self {
        PyClopen(self.0.difference(&other.0))
    }

    fn complement(&self) -> Self {
        PyClopen(self.0.complement())
    }

    fn contains(&self, point: &PyPoint) -> bool {
        self.0.contains(&point.0)
    }

    fn is_subset(&self, other: &PyClopen) -> bool {
        self.0.is_subset(&other.0)
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn diam(&self) -> PyResult<String> {
        self.0.diam().map(|d| d.to_string()).map_err(py_err)
    }

    fn words(&self) -> Vec<String> {
        self.0.words().iter().map(|w| w.to_string()).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Clopen('{}')", self.0)
    }

    fn __eq__(&self, other: &PyClopen) -> bool {
        self.0 == other.0
    }
}

/// The dense family, approximants and base enumeration, memoized.
#[pyclass(name = "Construction", frozen, module = "cantor_py")]
struct PyConstruction(Construction);

#[pymethods]
impl PyConstruction {
    #[new]
    fn new() -> Self {
        PyConstruction(Construction::new())
    }

    /// `(a_n, b_n)`.
    fn dense_pair(&self, n: usize) -> (PyPoint, PyPoint) {
        let p = self.0.dense_pair(n);
        (PyPoint(p.a), PyPoint(p.b))
    }

    /// `(a_{n,i}, D(n,i))`.
    fn approximant(&self, n: usize, i: usize) -> (PyPoint, usize) {
        let a = self.0.approximant(n, i);
        (PyPoint(a.point), a.depth)
    }

    fn recognize(&self, point: &PyPoint) -> Option<(usize, usize)> {
        self.0.recognize(&point.0)
    }

    fn base_word(&self, n: usize) -> String {
        self.0.base_word(n).to_string()
    }

    fn base_index(&self, word: &str) -> PyResult<usize> {
        self.0.base_index(&parse(word)?).map_err(py_err)
    }

    fn in_x(&self, x: &PyPoint, y: &PyPoint) -> bool {
        self.0.in_x(&x.0, &y.0)
    }

    fn fiber_witness(&self, x: &PyPoint) -> PyPoint {
        PyPoint(self.0.fiber_witness(&x.0))
    }

    /// Whether `π(U ∩ X)` contains `x`.
    fn image_contains(&self, union: &str, x: &PyPoint) -> PyResult<bool> {
        let u: RectUnion = parse(union)?;
        Ok(project_union(&self.0, &u).contains(&self.0, &x.0))
    }

    /// Decomposition certificate for `π(U ∩ X)` as JSON.
    fn decompose(&self, union: &str) -> PyResult<String> {
        let u: RectUnion = parse(union)?;
        let img = project_union(&self.0, &u);
        let dec = decompose_image(&self.0, &img).map_err(py_err)?;
        Ok(CertificateFile::new(Certificate::Decomposition(DecompositionPayload {
            rect_union: u,
            image: img.canonical,
            decomposition: dec,
        }))
        .to_json())
    }

    fn lc2(&self, union: &str) -> PyResult<String> {
        let img = project_union(&self.0, &parse(union)?);
        lc2_certificate(&self.0, &img).map(|c| to_json(&c)).map_err(py_err)
    }

    fn resolvable(&self, union: &str, f: &PyClopen) -> PyResult<bool> {
        let img = project_union(&self.0, &parse(union)?);
        resolvable_probe(&self.0, &img, &f.0).map(|p| p.resolvable).map_err(py_err)
    }

    /// Witness certificate file for the piece `X \ complement` as JSON.
    #[pyo3(signature = (rect, complement = "∅", budget = 10_000, samples = 20))]
    fn falsify(&self, rect: &str, complement: &str, budget: usize, samples: usize) -> PyResult<String> {
        let rect: Rect = parse(rect)?;
        let complement: RectUnion = parse(complement)?;
        let cert = falsify_restriction(&self.0, &complement, &rect, budget, samples).map_err(py_err)?;
        Ok(CertificateFile::new(Certificate::Witness(cert)).to_json())
    }

    /// Name of the first failing clause, or `None` if the certificate holds.
    #[pyo3(signature = (certificate, k = 20))]
    fn verify(&self, certificate: &str, k: usize) -> PyResult<Option<String>> {
        let file = CertificateFile::from_json(certificate).map_err(py_err)?;
        let Certificate::Witness(cert) = file.body else {
            return Err(PyValueError::new_err("not a witness certificate"));
        };
        Ok(verify_witness(&self.0, &cert, k).failed.map(|c| c.name().to_string()))
    }

    #[pyo3(signature = (n_max = 50, i_max = 20))]
    fn export(&self, n_max: usize, i_max: usize) -> String {
        to_json(&family_export(&self.0, n_max, i_max))
    }
}

/// Runs every invariant suite and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (seed = 0, instances = 1000, probes = 500))]
fn check(seed: u64, instances: usize, probes: usize) -> String {
    to_json(&run_all(&SuiteConfig {
        seed,
        instances,
        probes,
        ..SuiteConfig::default()
    }))
}

#[pymodule]
fn cantor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoint>()?;
    m.add_class::<PyClopen>()?;
    m.add_class::<PyConstruction>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
