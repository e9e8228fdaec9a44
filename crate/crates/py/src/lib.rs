use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lietorus_core::config::{parse_box, RunConfig};
use lietorus_core::liealg::{CartanType, LieAlgebra, SigmaSpec};
use lietorus_core::loopmod::{component_lattice, verify_classification_instance};
use lietorus_core::repmod::{weyl_dimension as weyl_dim, EvalModule, HWModule};
use lietorus_core::scalars::CycScalar;
use lietorus_core::selftest::{builtin_matrix, run_selftest};

fn to_py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn loads<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(to_py_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn algebra(ctype: &str, rank: usize) -> PyResult<LieAlgebra> {
    LieAlgebra::new(CartanType::parse(ctype).map_err(to_py_err)?, rank).map_err(to_py_err)
}

/// An element of a cyclotomic field, e.g. `Scalar("2*z3^2 - 1/2")`.
#[pyclass(name = "Scalar", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyScalar {
    inner: CycScalar,
}

#[pymethods]
impl PyScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyScalar { inner: CycScalar::parse(text).map_err(to_py_err)? })
    }

    #[staticmethod]
    fn zeta(n: u32, k: i64) -> Self {
        PyScalar { inner: CycScalar::zeta(n, k) }
    }

    fn __add__(&self, other: &Self) -> Self {
        PyScalar { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyScalar { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyScalar { inner: &self.inner * &other.inner }
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        let inv = other.inner.inv().map_err(to_py_err)?;
        Ok(PyScalar { inner: &self.inner * &inv })
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Self> {
        Ok(PyScalar { inner: self.inner.pow(e).map_err(to_py_err)? })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.inner)
    }
}

/// A simple Lie algebra with commuting automorphisms and the graded torus they define.
#[pyclass(name = "Torus", frozen)]
struct PyTorus {
    inner: lietorus_core::torus::Torus,
}

#[pymethods]
impl PyTorus {
    /// `sigma` is a JSON list such as `[{"kind": "diagram", "perm": [2, 1]}]`.
    #[new]
    fn new(ctype: &str, rank: usize, sigma: &str) -> PyResult<Self> {
        let specs: Vec<SigmaSpec> = serde_json::from_str(sigma).map_err(to_py_err)?;
        let ctype = CartanType::parse(ctype).map_err(to_py_err)?;
        let inner = lietorus_core::torus::Torus::from_specs(ctype, rank, &specs).map_err(to_py_err)?;
        Ok(PyTorus { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> Vec<u32> {
        self.inner.m().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.g.dim()
    }

    fn piece_dims(&self) -> Vec<usize> {
        self.inner.grading.dims()
    }

    /// The Lie torus axiom report as a dictionary.
    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        loads(py, self.inner.report())
    }

    fn jacobi_violation(&self, radius: i64) -> Option<(usize, usize, usize)> {
        self.inner.jacobi_violation(radius)
    }
}

/// Tensor product of evaluation modules described by a run configuration.
#[pyclass(name = "Instance", frozen)]
struct PyInstance {
    config: RunConfig,
    torus: lietorus_core::torus::Torus,
    module: EvalModule,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(config: &str) -> PyResult<Self> {
        let config = RunConfig::from_json_str(config).map_err(to_py_err)?;
        config.validate().map_err(to_py_err)?;
        let torus = config.torus().map_err(to_py_err)?;
        let module = config.module(&torus).map_err(to_py_err)?;
        Ok(PyInstance { config, torus, module })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The predicate `m(b_i) != m(b_j)` for all `i != j`.
    fn separated(&self) -> bool {
        self.module.separated()
    }

    fn check_irreducible<'py>(&self, py: Python<'py>, max_radius: i64) -> PyResult<Bound<'py, PyAny>> {
        loads(py, &self.module.check_irreducible(&self.torus, max_radius))
    }

    fn check_integrable<'py>(&self, py: Python<'py>, radius: i64) -> PyResult<Bound<'py, PyAny>> {
        loads(py, &self.module.check_integrable(&self.torus, radius))
    }

    fn component_lattice<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        loads(py, &component_lattice(&self.torus, &self.module))
    }

    /// Runs the classification pipeline; `box` uses the `lo:hi,...` syntax.
    #[pyo3(signature = (r#box=None, escalate=None))]
    fn verify<'py>(&self, py: Python<'py>, r#box: Option<&str>, escalate: Option<i64>) -> PyResult<Bound<'py, PyAny>> {
        let bounds = r#box.map(parse_box).transpose().map_err(to_py_err)?;
        let rep = verify_classification_instance(&self.config, bounds, escalate).map_err(to_py_err)?;
        loads(py, &rep)
    }
}

/// Weyl dimension of the irreducible module with Dynkin labels `weight`.
#[pyfunction]
fn weyl_dimension(ctype: &str, rank: usize, weight: Vec<i64>) -> PyResult<u64> {
    let g = algebra(ctype, rank)?;
    if weight.len() != rank || weight.iter().any(|&x| x < 0) {
        return Err(PyValueError::new_err("weight must be dominant with one label per node"));
    }
    Ok(weyl_dim(&g.rs, &weight))
}

/// Dimension and weight multiplicities of the constructed highest weight module.
#[pyfunction]
fn hw_module(ctype: &str, rank: usize, weight: Vec<i64>) -> PyResult<(usize, Vec<(Vec<i64>, usize)>)> {
    let g = algebra(ctype, rank)?;
    let v = HWModule::new(&g, &weight).map_err(to_py_err)?;
    Ok((v.dim(), v.weight_table().into_iter().collect()))
}

/// The invariant suite on the built-in instance matrix.
#[pyfunction]
#[pyo3(signature = (inject_fault=false))]
fn selftest(py: Python<'_>, inject_fault: bool) -> PyResult<Bound<'_, PyAny>> {
    loads(py, &run_selftest(&builtin_matrix(), inject_fault))
}

#[pymodule]
fn lietorus(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PyTorus>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(hw_module, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
