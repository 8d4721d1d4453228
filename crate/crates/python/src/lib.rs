//! Python bindings: measures, potentials, the forward map, the Toeplitz/OPUC
//! inverse, round trips and scaled-mass tables.

use nlft::converge::{default_zgrid, figure1_data, roundtrip_residual, HamiltonianOracle};
use nlft::inverse::hamiltonian;
use nlft::{Complex64, InverseMethod, ToeplitzSolver, TrigMoments};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn err(e: nlft::Error) -> PyErr {
    if e.is_numerical() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse_method(name: &str) -> PyResult<InverseMethod> {
    name.parse().map_err(err)
}

/// A positive measure on the real line, optionally periodic.
#[pyclass(name = "Measure", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMeasure(nlft::Measure);

#[pymethods]
impl PyMeasure {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        nlft::Measure::from_json(text).map(PyMeasure).map_err(err)
    }

    /// `rho` times Lebesgue measure.
    #[staticmethod]
    fn lebesgue(rho: f64) -> Self {
        PyMeasure(nlft::Measure::lebesgue(rho))
    }

    /// `rho` times Lebesgue measure plus an atom of the given mass at `x`.
    #[staticmethod]
    fn lebesgue_plus_atom(rho: f64, x: f64, mass: f64) -> PyResult<Self> {
        nlft::Measure::lebesgue_plus_atom(rho, x, mass).map(PyMeasure).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn periodize(&self, t: f64) -> PyResult<Self> {
        self.0.periodize(t).map(PyMeasure).map_err(err)
    }

    #[getter]
    fn half_period(&self) -> Option<f64> {
        self.0.half_period()
    }

    /// Trigonometric moments `a_0..a_n` of a periodic measure.
    fn trig_moments(&self, n: usize) -> PyResult<Vec<f64>> {
        self.0.trig_moments(n).map(|m| m.coeffs().to_vec()).map_err(err)
    }

    fn schwarz(&self, z: Complex64, tol: f64) -> PyResult<Complex64> {
        nlft::schwarz_transform(&self.0, z, tol).map(|v| v.value).map_err(err)
    }

    /// `(S - 1)/(S + 1)` with `S` the Schwarz transform.
    fn schur(&self, z: Complex64, tol: f64) -> PyResult<Complex64> {
        nlft::schur_from_measure(&self.0, z, tol).map(|v| v.value).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Measure({})", self.0.to_json().split_whitespace().collect::<Vec<_>>().join(" "))
    }
}

/// Point masses `c_k` at `k * spacing`, `k = 1..`, plus an optional mass at the origin.
#[pyclass(name = "DiscretePotential", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDiscrete(nlft::DiscretePotential);

#[pymethods]
impl PyDiscrete {
    #[new]
    #[pyo3(signature = (spacing, masses, origin_mass = 0.0))]
    fn new(spacing: f64, masses: Vec<f64>, origin_mass: f64) -> PyResult<Self> {
        nlft::DiscretePotential::with_origin(spacing, origin_mass, masses).map(PyDiscrete).map_err(err)
    }

    #[getter]
    fn spacing(&self) -> f64 {
        self.0.spacing()
    }

    #[getter]
    fn origin_mass(&self) -> f64 {
        self.0.origin_mass()
    }

    #[getter]
    fn masses(&self) -> Vec<f64> {
        self.0.masses().to_vec()
    }

    fn to_json(&self) -> String {
        nlft::Potential::Discrete(self.0.clone()).to_json()
    }

    fn forward(&self, z: Complex64) -> PyTransfer {
        PyTransfer(nlft::forward_discrete(&self.0, z))
    }
}

/// Piecewise constant potential: `values[j]` on `[breakpoints[j], breakpoints[j+1])`.
#[pyclass(name = "StepPotential", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyStep(nlft::StepPotential);

#[pymethods]
impl PyStep {
    #[new]
    fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        nlft::StepPotential::new(breakpoints, values).map(PyStep).map_err(err)
    }

    fn forward(&self, z: Complex64) -> PyTransfer {
        PyTransfer(nlft::forward_continuous(&self.0, z))
    }
}

#[pyclass(name = "TransferMatrix", frozen)]
struct PyTransfer(nlft::TransferMatrix);

#[pymethods]
impl PyTransfer {
    #[getter]
    fn a(&self) -> Complex64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.0.b()
    }

    #[getter]
    fn det_drift(&self) -> f64 {
        self.0.det_drift
    }

    /// `b/a`.
    fn schur(&self) -> PyResult<Complex64> {
        nlft::schur_ratio(&self.0).map(|s| s.value).map_err(err)
    }
}

fn moments(coeffs: Vec<f64>, half_period: f64) -> PyResult<TrigMoments> {
    TrigMoments::new(half_period, coeffs).map_err(err)
}

/// Hamiltonian steps from moments `a_0..a_{n-1}` via the Toeplitz sums.
#[pyfunction]
#[pyo3(signature = (coeffs, half_period, n, solver = "levinson"))]
fn toeplitz_h11(coeffs: Vec<f64>, half_period: f64, n: usize, solver: &str) -> PyResult<Vec<f64>> {
    let solver = match solver {
        "levinson" => ToeplitzSolver::Levinson,
        "cholesky" => ToeplitzSolver::Cholesky,
        other => return Err(PyValueError::new_err(format!("unknown solver {other:?}"))),
    };
    nlft::toeplitz_h11_with(&moments(coeffs, half_period)?, n, solver)
        .map(|h| h.steps().to_vec())
        .map_err(err)
}

/// Hamiltonian steps from moments via Verblunsky coefficients.
#[pyfunction]
fn opuc_h11(coeffs: Vec<f64>, half_period: f64, n: usize) -> PyResult<Vec<f64>> {
    nlft::opuc_h11(&moments(coeffs, half_period)?, n).map(|h| h.steps().to_vec()).map_err(err)
}

/// Discrete potential with `n` Hamiltonian steps recovered from a periodic measure.
#[pyfunction]
#[pyo3(signature = (mu, n, method = "toeplitz"))]
fn inverse_nlft(mu: &PyMeasure, n: usize, method: &str) -> PyResult<PyDiscrete> {
    nlft::inverse_nlft(&mu.0, n, parse_method(method)?).map(PyDiscrete).map_err(err)
}

/// Hamiltonian steps `h_0..h_{n-1}` of a periodic measure.
#[pyfunction]
#[pyo3(signature = (mu, n, method = "toeplitz"))]
fn hamiltonian_steps(mu: &PyMeasure, n: usize, method: &str) -> PyResult<Vec<f64>> {
    hamiltonian(&mu.0, n, parse_method(method)?).map(|h| h.steps().to_vec()).map_err(err)
}

/// Max over the default 50-point grid of `|forward(inverse(mu_T)) - schur(mu_T)|`.
#[pyfunction]
#[pyo3(signature = (mu, t, n, tol = 1e-12, method = "toeplitz"))]
fn roundtrip(mu: &PyMeasure, t: f64, n: usize, tol: f64, method: &str) -> PyResult<f64> {
    roundtrip_residual(&mu.0, t, n, &default_zgrid(), tol, parse_method(method)?)
        .map(|rt| rt.residual)
        .map_err(err)
}

/// Rows `(t_n, c_n 2T/pi, oracle f(t_n))`; needs constant density plus at most an atom at 0.
#[pyfunction]
#[pyo3(signature = (mu, t, n, method = "toeplitz"))]
fn figure1(mu: &PyMeasure, t: f64, n: usize, method: &str) -> PyResult<Vec<(f64, f64, f64)>> {
    let oracle = HamiltonianOracle::for_measure(&mu.0)
        .ok_or_else(|| PyValueError::new_err("no closed-form oracle for this measure"))?;
    let fig = figure1_data(&mu.0, t, n, &oracle, parse_method(method)?).map_err(err)?;
    Ok(fig.rows.iter().map(|r| (r.t, r.scaled_mass, r.oracle_f)).collect())
}

#[pymodule]
fn pynlft(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMeasure>()?;
    m.add_class::<PyDiscrete>()?;
    m.add_class::<PyStep>()?;
    m.add_class::<PyTransfer>()?;
    m.add_function(wrap_pyfunction!(toeplitz_h11, m)?)?;
    m.add_function(wrap_pyfunction!(opuc_h11, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_nlft, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian_steps, m)?)?;
    m.add_function(wrap_pyfunction!(roundtrip, m)?)?;
    m.add_function(wrap_pyfunction!(figure1, m)?)?;
    Ok(())
}
