//! Python module `quadric_cr`. Exact scalars cross the boundary as strings
//! (`"3/4"`, `"1/2-i"`); reports come back as dicts with string-valued numbers.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use quadric_cr::cli::render;
use quadric_cr::exact::{ExactMatrix, GaussianRational};
use quadric_cr::harness::{run_harness, HarnessConfig};
use quadric_cr::jet::{self, Route};
use quadric_cr::{catalog, format, nondegeneracy, random, Error};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownCatalogEntry(_) => PyKeyError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

pub fn parse_vector(v: &[String]) -> Result<Vec<GaussianRational>, Error> {
    v.iter().map(|s| s.parse()).collect()
}

pub fn parse_matrix(rows: &[Vec<String>]) -> Result<ExactMatrix, Error> {
    ExactMatrix::from_rows(rows.iter().map(|r| parse_vector(r)).collect::<Result<_, _>>()?)
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(T::to_string).collect()
}

fn to_dict<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyDict>> {
    let text = serde_json::to_string(v).expect("serializable");
    py.import("json")?.call_method1("loads", (text,))?.cast_into::<PyDict>().map_err(Into::into)
}

#[pyclass(name = "QuadricModel", module = "quadric_cr", frozen, skip_from_py_object)]
pub struct PyQuadricModel {
    inner: quadric_cr::QuadricModel,
}

#[pymethods]
impl PyQuadricModel {
    /// Builds a model from a list of `n x n` Hermitian matrices of entry strings.
    #[new]
    fn new(matrices: Vec<Vec<Vec<String>>>) -> PyResult<Self> {
        let raw = matrices
            .iter()
            .map(|m| parse_matrix(m))
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py_err)?;
        let inner = quadric_cr::QuadricModel::from_matrices(raw).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        format::parse_model(text).map(|inner| Self { inner }).map_err(to_py_err)
    }

    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        catalog::get(name).map(|e| Self { inner: e.model }).map_err(to_py_err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, d, bound = 2, seed = 1))]
    fn random(n: usize, d: usize, bound: i64, seed: u64) -> PyResult<Self> {
        if n == 0 || d == 0 || bound < 1 {
            return Err(PyValueError::new_err("n, d and bound must be positive"));
        }
        Ok(Self {
            inner: random::random_model(n, d, bound, seed),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    fn matrices(&self) -> Vec<Vec<Vec<String>>> {
        let n = self.inner.n();
        self.inner
            .matrices()
            .iter()
            .map(|a| (0..n).map(|r| (0..n).map(|c| a.get(r, c).to_string()).collect()).collect())
            .collect()
    }

    fn to_json(&self) -> String {
        format::write_model(&self.inner)
    }

    fn levi(&self, z: Vec<String>) -> PyResult<Vec<String>> {
        let z = parse_vector(&z).map_err(to_py_err)?;
        let v = self.inner.levi(&z).map_err(to_py_err)?;
        Ok(v.0.iter().map(format::rational_string).collect())
    }

    fn sesqui(&self, z: Vec<String>, zp: Vec<String>) -> PyResult<Vec<String>> {
        let z = parse_vector(&z).map_err(to_py_err)?;
        let zp = parse_vector(&zp).map_err(to_py_err)?;
        Ok(strings(&self.inner.sesqui(&z, &zp).map_err(to_py_err)?.0))
    }

    fn change_coordinates(&self, c: Vec<Vec<String>>) -> PyResult<Self> {
        let c = parse_matrix(&c).map_err(to_py_err)?;
        let inner = self.inner.change_coordinates(&c).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[pyo3(signature = (relation_degree = 3))]
    fn classify<'py>(&self, py: Python<'py>, relation_degree: usize) -> PyResult<Bound<'py, PyDict>> {
        let report = py.detach(|| {
            nondegeneracy::classify(&self.inner, nondegeneracy::ClassifyOptions { relation_degree })
        });
        to_dict(py, &render::classification(&report))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("QuadricModel(n={}, d={})", self.inner.n(), self.inner.d())
    }
}

#[pyclass(name = "SolutionSpace", module = "quadric_cr", frozen)]
pub struct PySolutionSpace {
    inner: jet::SolutionSpace,
}

#[pymethods]
impl PySolutionSpace {
    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension
    }

    #[getter]
    fn cap(&self) -> usize {
        self.inner.cap
    }

    #[getter]
    fn route(&self) -> String {
        self.inner.route.to_string()
    }

    /// Basis elements rendered as `f1 = ...; g1 = ...`.
    #[getter]
    fn basis(&self) -> Vec<String> {
        strings(&self.inner.basis)
    }

    fn degree_bounds_pass(&self) -> bool {
        jet::degree_bounds(&self.inner).passes()
    }

    fn two_jet_injective(&self) -> bool {
        jet::two_jet_injective(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.dimension
    }

    fn __repr__(&self) -> String {
        format!(
            "SolutionSpace(route={}, cap={}, dimension={})",
            self.inner.route, self.inner.cap, self.inner.dimension
        )
    }
}

#[pyfunction]
#[pyo3(signature = (model, relation_degree = 3))]
fn classify<'py>(py: Python<'py>, model: &PyQuadricModel, relation_degree: usize) -> PyResult<Bound<'py, PyDict>> {
    model.classify(py, relation_degree)
}

#[pyfunction]
#[pyo3(signature = (model, cap, route = "direct"))]
fn solve_jet_system(py: Python<'_>, model: &PyQuadricModel, cap: usize, route: &str) -> PyResult<PySolutionSpace> {
    let route: Route = route.parse().map_err(to_py_err)?;
    if cap < 1 {
        return Err(PyValueError::new_err("cap must be at least 1"));
    }
    let inner = py.detach(|| jet::solve_jet_system(&model.inner, cap, route));
    Ok(PySolutionSpace { inner })
}

#[pyfunction]
fn char_variety_test(model: &PyQuadricModel, zeta: Vec<String>) -> PyResult<bool> {
    let zeta = parse_vector(&zeta).map_err(to_py_err)?;
    jet::char_variety_test(&model.inner, &zeta).map_err(to_py_err)
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::NAMES.to_vec()
}

#[pyfunction]
#[pyo3(signature = (count = 500, n_max = 3, d_max = 4, bound = 2, seed = 1))]
fn harness<'py>(
    py: Python<'py>,
    count: usize,
    n_max: usize,
    d_max: usize,
    bound: i64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    if count == 0 || n_max == 0 || d_max == 0 || bound < 1 {
        return Err(PyValueError::new_err("all harness parameters must be positive"));
    }
    let config = HarnessConfig {
        count,
        n_max,
        d_max,
        bound,
        seed,
    };
    let summary = py.detach(|| run_harness(&config));
    to_dict(py, &render::harness(&summary))
}

#[pymodule]
#[pyo3(name = "quadric_cr")]
fn quadric_cr_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadricModel>()?;
    m.add_class::<PySolutionSpace>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(solve_jet_system, m)?)?;
    m.add_function(wrap_pyfunction!(char_variety_test, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(harness, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_string_vectors_and_matrices() {
        let v = parse_vector(&["1/2".into(), "-i".into()]).unwrap();
        assert_eq!(v[1], GaussianRational::int(0, -1));
        let m = parse_matrix(&[vec!["1".into(), "i".into()], vec!["-i".into(), "0".into()]]).unwrap();
        assert_eq!(m.get(1, 0), &GaussianRational::int(0, -1));
        assert!(parse_vector(&["x".into()]).is_err());
    }
}
