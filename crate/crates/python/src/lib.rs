use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use xyswap_core::critical::{self, CriticalKind};
use xyswap_core::teleport::{teleport, TeleportConfig};
use xyswap_core::xychain::{self, FieldRegime};

fn to_py(e: xyswap_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Two-qubit XY chain parameters (J, gamma, eta, T).
#[pyclass(name = "ChainParams", frozen, from_py_object)]
#[derive(Clone)]
struct PyChainParams {
    inner: xychain::ChainParams,
}

#[pymethods]
impl PyChainParams {
    #[new]
    #[pyo3(signature = (j, gamma, eta, t))]
    fn new(j: f64, gamma: f64, eta: f64, t: f64) -> PyResult<Self> {
        let inner = xychain::ChainParams::new(j, gamma, eta, t).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn j(&self) -> f64 {
        self.inner.j
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma
    }

    #[getter]
    fn eta(&self) -> f64 {
        self.inner.eta
    }

    #[getter]
    fn t(&self) -> f64 {
        self.inner.t
    }

    /// "below", "critical" or "above" the critical field.
    fn regime(&self) -> &'static str {
        match self.inner.regime() {
            FieldRegime::Below => "below",
            FieldRegime::Critical => "critical",
            FieldRegime::Above => "above",
        }
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("ChainParams(j={}, gamma={}, eta={}, t={})", p.j, p.gamma, p.eta, p.t)
    }
}

#[pyclass(name = "PairMetrics", frozen, get_all)]
struct PyPairMetrics {
    lambdas: [f64; 4],
    concurrence: f64,
    fef: f64,
}

#[pyclass(name = "Fidelity", frozen, get_all)]
struct PyFidelity {
    c1: f64,
    c2: f64,
    phi_closed: f64,
    phi_simulated: f64,
}

#[pyclass(name = "CriticalResult", frozen, get_all)]
struct PyCriticalResult {
    kind: u8,
    gamma: f64,
    eta: f64,
    t_over_j: f64,
    bracket: (f64, f64),
    converged: bool,
    crossings: usize,
}

impl From<critical::CriticalResult> for PyCriticalResult {
    fn from(r: critical::CriticalResult) -> Self {
        Self {
            kind: r.kind.index(),
            gamma: r.gamma,
            eta: r.eta,
            t_over_j: r.t_over_j,
            bracket: r.bracket,
            converged: r.converged,
            crossings: r.crossings,
        }
    }
}

/// 4×4 density matrix as nested lists of complex numbers.
#[pyfunction]
fn chain_state(params: &PyChainParams) -> PyResult<Vec<Vec<Complex64>>> {
    let rho = xychain::chain_state(&params.inner).map_err(to_py)?;
    Ok(rho.matrix().rows())
}

#[pyfunction]
fn pair_metrics(params: &PyChainParams) -> PyResult<PyPairMetrics> {
    let m = xychain::pair_metrics(&params.inner).map_err(to_py)?;
    Ok(PyPairMetrics {
        lambdas: m.lambdas,
        concurrence: m.concurrence,
        fef: m.fef,
    })
}

/// GHZ-outcome probabilities after swapping three identical chains.
#[pyfunction]
fn swap_probabilities(params: &PyChainParams) -> PyResult<Vec<f64>> {
    let swap = xyswap_core::swapnet::swap_all(&params.inner).map_err(to_py)?;
    Ok(swap.probabilities())
}

#[pyfunction]
#[pyo3(signature = (params, mu = std::f64::consts::FRAC_PI_4))]
fn fidelity(py: Python<'_>, params: &PyChainParams, mu: f64) -> PyResult<PyFidelity> {
    let cfg = TeleportConfig::new(mu).map_err(to_py)?;
    let p = params.inner;
    let r = py.detach(|| teleport(&p, &cfg)).map_err(to_py)?;
    Ok(PyFidelity {
        c1: r.c1,
        c2: r.c2,
        phi_closed: r.phi_closed,
        phi_simulated: r.phi_simulated,
    })
}

#[pyfunction]
#[pyo3(signature = (kind, gamma, eta, j = 1.0))]
fn critical_temperature(kind: u8, gamma: f64, eta: f64, j: f64) -> PyResult<PyCriticalResult> {
    let kind = CriticalKind::from_index(kind).map_err(to_py)?;
    critical::solve(kind, gamma, eta, j, &critical::SolverConfig::default())
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (kind, gamma, etas, j = 1.0))]
fn sweep(py: Python<'_>, kind: u8, gamma: f64, etas: Vec<f64>, j: f64) -> PyResult<Vec<PyCriticalResult>> {
    let kind = CriticalKind::from_index(kind).map_err(to_py)?;
    let rows = py.detach(|| critical::sweep(kind, gamma, &etas, j)).map_err(to_py)?;
    Ok(rows.into_iter().map(Into::into).collect())
}

#[pyfunction]
#[pyo3(signature = (gamma, eta, j = 1.0))]
fn t2_asymptote(gamma: f64, eta: f64, j: f64) -> PyResult<f64> {
    critical::t2_asymptote(gamma, eta, j).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (gamma, eta, j = 1.0))]
fn t3_asymptote(gamma: f64, eta: f64, j: f64) -> PyResult<f64> {
    critical::t3_asymptote(gamma, eta, j).map_err(to_py)
}

#[pymodule]
fn xyswap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChainParams>()?;
    m.add_class::<PyPairMetrics>()?;
    m.add_class::<PyFidelity>()?;
    m.add_class::<PyCriticalResult>()?;
    m.add_function(wrap_pyfunction!(chain_state, m)?)?;
    m.add_function(wrap_pyfunction!(pair_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(swap_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(critical_temperature, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(t2_asymptote, m)?)?;
    m.add_function(wrap_pyfunction!(t3_asymptote, m)?)?;
    Ok(())
}
