//! Python bindings for the bnsd library: states, the dephasing channel,
//! Bell-operator evaluation and optimization, critical times, and the
//! WWZB family.
//!
//! Density matrices cross the boundary as nested lists of complex numbers
//! (row-major 8×8); angles are radians.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bnsd::analysis::{
    closed_form, critical_time, optimize_analytic, optimize_bloch, optimize_in_plane, verdict,
    OptimalSettings,
};
use bnsd::channel::DephasingChannel;
use bnsd::error::Error;
use bnsd::numeric::{expectation, ComplexMatrix};
use bnsd::operators::{build_operator, InPlaneSettings, OperatorKind, ALL_OPERATORS};
use bnsd::state::{GenericState, PresetState};
use bnsd::wwzb::{classify_orbits, enumerate_family, locality_verdict};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn rows_to_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("density matrix must be square"));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn parse_kind(name: &str) -> PyResult<OperatorKind> {
    OperatorKind::parse(name).map_err(to_py_err)
}

/// A pure three-qubit state of the five-amplitude family
/// a0|000> + a4|100> + a5|101> + a6|110> + a7|111>.
#[pyclass(name = "GenericState", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGenericState {
    inner: GenericState,
}

#[pymethods]
impl PyGenericState {
    #[new]
    fn new(
        a0: Complex64,
        a4: Complex64,
        a5: Complex64,
        a6: Complex64,
        a7: Complex64,
    ) -> PyResult<Self> {
        GenericState::new(a0, a4, a5, a6, a7)
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    /// Build from unnormalized amplitudes, rescaling to unit norm.
    #[staticmethod]
    fn normalized(
        a0: Complex64,
        a4: Complex64,
        a5: Complex64,
        a6: Complex64,
        a7: Complex64,
    ) -> PyResult<Self> {
        GenericState::normalized(a0, a4, a5, a6, a7)
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    /// The corner coherence weight |a0||a7| driving every violation.
    fn coherence_weight(&self) -> f64 {
        self.inner.coherence_weight()
    }

    /// Relative phase arg(a0) - arg(a7); raises when |a0||a7| = 0.
    fn relative_phase(&self) -> PyResult<f64> {
        self.inner.relative_phase().map_err(to_py_err)
    }

    /// 8x8 density matrix as nested lists of complex numbers.
    fn density_matrix(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(&self.inner.density_matrix())
    }

    fn __repr__(&self) -> String {
        format!(
            "GenericState(a0={}, a4={}, a5={}, a6={}, a7={})",
            self.inner.a0, self.inner.a4, self.inner.a5, self.inner.a6, self.inner.a7
        )
    }
}

/// Multilocal dephasing: each qubit independently loses phase coherence at
/// rate gamma; off-diagonal elements pick up gamma(t)^(Hamming distance).
#[pyclass(name = "DephasingChannel", frozen)]
struct PyDephasingChannel {
    inner: DephasingChannel,
}

#[pymethods]
impl PyDephasingChannel {
    #[new]
    fn new(gamma_rate: f64, t: f64) -> PyResult<Self> {
        DephasingChannel::new(gamma_rate, t)
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    /// Surviving coherence factor gamma(t) = exp(-gamma_rate * t).
    fn gamma(&self) -> f64 {
        self.inner.gamma()
    }

    /// Complementary factor omega(t) = sqrt(1 - gamma(t)^2).
    fn omega(&self) -> f64 {
        self.inner.omega()
    }

    /// Evolve a five-amplitude state; returns the dephased density matrix.
    fn apply(&self, state: &PyGenericState) -> Vec<Vec<Complex64>> {
        matrix_to_rows(&self.inner.apply_mask(&state.inner))
    }

    /// Evolve an arbitrary 8x8 density matrix.
    fn apply_matrix(&self, rho: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
        let rho = rows_to_matrix(rho)?;
        self.inner
            .mask_matrix(&rho)
            .map(|m| matrix_to_rows(&m))
            .map_err(to_py_err)
    }
}

/// The GHZ state (|000> + |111>)/sqrt(2).
#[pyfunction]
fn ghz_state() -> PyGenericState {
    PyGenericState {
        inner: PresetState::Ghz.generic().expect("GHZ is in the family"),
    }
}

/// The product state |000>.
#[pyfunction]
fn zero_state() -> PyGenericState {
    PyGenericState {
        inner: PresetState::Zero.generic().expect("|000> is in the family"),
    }
}

/// Density matrix of the W state (outside the five-amplitude family).
#[pyfunction]
fn w_density_matrix() -> Vec<Vec<Complex64>> {
    matrix_to_rows(&PresetState::W.density_matrix())
}

/// The ten supported operator names.
#[pyfunction]
fn operator_names() -> Vec<&'static str> {
    ALL_OPERATORS.iter().map(|k| k.name()).collect()
}

/// Signed expectation of one operator on the dephased state at explicit
/// in-plane settings (theta_bc drives the bipartition CHSH operator).
#[pyfunction]
#[pyo3(signature = (op, state, gamma_rate, t, theta_b = 0.0, theta_c = 0.0, theta_bc = None))]
fn expectation_value(
    op: &str,
    state: &PyGenericState,
    gamma_rate: f64,
    t: f64,
    theta_b: f64,
    theta_c: f64,
    theta_bc: Option<f64>,
) -> PyResult<f64> {
    let kind = parse_kind(op)?;
    let channel = DephasingChannel::new(gamma_rate, t).map_err(to_py_err)?;
    let rho = channel.apply_mask(&state.inner);
    let settings = InPlaneSettings { theta_b, theta_c };
    let operator = build_operator(kind, &settings, theta_bc.unwrap_or(theta_b + theta_c));
    expectation(&operator.matrix, &rho).map_err(to_py_err)
}

/// Closed-form optimized max |<B>| for a five-amplitude state.
#[pyfunction]
fn optimized_max(op: &str, state: &PyGenericState, gamma_rate: f64, t: f64) -> PyResult<f64> {
    let kind = parse_kind(op)?;
    closed_form(kind, &state.inner, gamma_rate)
        .map(|cf| cf.max_abs_value(t))
        .map_err(to_py_err)
}

/// Numerically optimized max |<B>| over in-plane angles on an arbitrary
/// density matrix.
#[pyfunction]
fn optimized_max_matrix(op: &str, rho: Vec<Vec<Complex64>>) -> PyResult<f64> {
    let kind = parse_kind(op)?;
    let rho = rows_to_matrix(rho)?;
    optimize_in_plane(kind, &rho)
        .map(|out| out.max_abs)
        .map_err(to_py_err)
}

/// Multi-start optimization over general Bloch directions; returns
/// (max_abs, gradient_norm).
#[pyfunction]
#[pyo3(signature = (op, rho, seed = 0))]
fn optimize_bloch_value(op: &str, rho: Vec<Vec<Complex64>>, seed: u64) -> PyResult<(f64, f64)> {
    let kind = parse_kind(op)?;
    let rho = rows_to_matrix(rho)?;
    optimize_bloch(kind, &rho, seed)
        .map(|out| (out.max_abs, out.gradient_norm.unwrap_or(f64::NAN)))
        .map_err(to_py_err)
}

/// Optimal in-plane settings for a five-amplitude state:
/// (setting_angle, combined_angle, signed_value).
#[pyfunction]
fn optimal_settings(
    op: &str,
    state: &PyGenericState,
    gamma_rate: f64,
    t: f64,
) -> PyResult<(f64, f64, f64)> {
    let kind = parse_kind(op)?;
    let channel = DephasingChannel::new(gamma_rate, t).map_err(to_py_err)?;
    let out = optimize_analytic(kind, &state.inner, &channel).map_err(to_py_err)?;
    let angle = match out.settings {
        OptimalSettings::InPlane(s) => s.theta_b,
        OptimalSettings::Bipartition { theta_bc } => theta_bc,
        OptimalSettings::Bloch(_) => unreachable!("analytic optima are in-plane"),
    };
    Ok((angle, out.theta_bc_alpha.unwrap_or(f64::NAN), out.value))
}

/// Critical (sudden-death) time of one operator's optimized violation:
/// dict with analytic_t, numeric_t (None = never violated), never_violated.
#[pyfunction]
fn critical_time_report(
    py: Python<'_>,
    op: &str,
    state: &PyGenericState,
    gamma_rate: f64,
) -> PyResult<Py<PyAny>> {
    let kind = parse_kind(op)?;
    let report = critical_time(kind, &state.inner, gamma_rate).map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("operator", kind.name())?;
    dict.set_item("analytic_t", report.analytic_t)?;
    dict.set_item("numeric_t", report.numeric_t)?;
    dict.set_item("never_violated", report.never_violated)?;
    dict.set_item("settings_policy", report.settings_policy.name())?;
    Ok(dict.into())
}

/// The four nonlocality notions at (gamma_rate, t): dict of booleans.
#[pyfunction]
fn nonlocality_verdict(
    py: Python<'_>,
    state: &PyGenericState,
    gamma_rate: f64,
    t: f64,
) -> PyResult<Py<PyAny>> {
    let v = verdict(&state.inner, gamma_rate, t).map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("genuinely_tripartite", v.genuinely_tripartite)?;
    dict.set_item("generic", v.generic)?;
    dict.set_item("subsystem_bipartite", v.subsystem_bipartite)?;
    dict.set_item("even_odd_bipartition", v.even_odd_bipartition)?;
    Ok(dict.into())
}

/// Evaluate the full 256-member WWZB family on a density matrix at fixed
/// in-plane settings: (max_violation, violating_count, fully_local).
#[pyfunction]
#[pyo3(signature = (rho, theta_b = 0.0, theta_c = 0.0))]
fn wwzb_locality(
    rho: Vec<Vec<Complex64>>,
    theta_b: f64,
    theta_c: f64,
) -> PyResult<(f64, usize, bool)> {
    let rho = rows_to_matrix(rho)?;
    let settings = InPlaneSettings { theta_b, theta_c };
    let v = locality_verdict(&rho, &settings).map_err(to_py_err)?;
    Ok((v.max_violation, v.violating_count, v.is_fully_local_at_settings))
}

/// Orbit sizes of the WWZB family under its symmetry group, by class 1..5.
#[pyfunction]
fn wwzb_class_sizes() -> PyResult<[usize; 5]> {
    let family = enumerate_family();
    classify_orbits(&family)
        .map(|p| p.class_sizes())
        .map_err(to_py_err)
}

#[pymodule]
fn bnsd_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGenericState>()?;
    m.add_class::<PyDephasingChannel>()?;
    m.add_function(wrap_pyfunction!(ghz_state, m)?)?;
    m.add_function(wrap_pyfunction!(zero_state, m)?)?;
    m.add_function(wrap_pyfunction!(w_density_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(operator_names, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_value, m)?)?;
    m.add_function(wrap_pyfunction!(optimized_max, m)?)?;
    m.add_function(wrap_pyfunction!(optimized_max_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_bloch_value, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_settings, m)?)?;
    m.add_function(wrap_pyfunction!(critical_time_report, m)?)?;
    m.add_function(wrap_pyfunction!(nonlocality_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(wwzb_locality, m)?)?;
    m.add_function(wrap_pyfunction!(wwzb_class_sizes, m)?)?;
    Ok(())
}
