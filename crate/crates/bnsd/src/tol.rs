//! Named numerical tolerances.
//!
//! Every tolerance used by the library or its test suites lives here so the
//! contracts stay auditable in one place. Values are chosen for dense f64
//! linear algebra on 8x8 problems: well above accumulated rounding noise,
//! well below any physically meaningful scale of the model.

/// Max entry deviation |A - A^H| accepted before a matrix is rejected as
/// non-Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Generic entrywise equality for matrix identities (Kraus completeness,
/// operator algebra).
pub const EQUALITY: f64 = 1e-10;

/// Trace linearity / cyclicity identities on random matrices.
pub const TRACE_IDENTITY: f64 = 1e-12;

/// Deviation of tr(rho) from 1 after a channel application.
pub const CHANNEL_TRACE: f64 = 1e-11;

/// Eigenvalue floor: min eigenvalue of an evolved state must stay above
/// -POSITIVITY.
pub const POSITIVITY: f64 = 1e-10;

/// Sum of Hermitian eigenvalues vs matrix trace.
pub const EIGEN_SUM: f64 = 1e-9;

/// Kraus bilinearity / kron product identities on random inputs.
pub const KRON_IDENTITY: f64 = 1e-12;

/// Entrywise agreement between the 8-term Kraus sum and the analytic
/// decay-mask application.
pub const ORACLE_EQUIV: f64 = 1e-12;

/// Agreement between closed-form expectation values and dense matrix traces.
pub const CLOSED_FORM: f64 = 1e-10;

/// Agreement between analytic critical times and bisection results.
pub const CRITICAL_TIME: f64 = 1e-8;

/// Absolute time tolerance of the bisection itself.
pub const BISECTION: f64 = 1e-10;

/// Norm deviation beyond which state constructors reject amplitudes.
pub const STATE_NORM: f64 = 1e-8;

/// Norm deviation allowed for built-in preset states.
pub const PRESET_NORM: f64 = 1e-12;

/// Angle resolution of golden-section refinement.
pub const GOLDEN_ANGLE: f64 = 1e-9;

/// Gradient norm below which a Bloch-mode optimum is accepted as stationary.
pub const STATIONARY_GRADIENT: f64 = 1e-7;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_are_positive_and_ordered() {
        assert!(TRACE_IDENTITY > 0.0);
        assert!(TRACE_IDENTITY < CHANNEL_TRACE);
        assert!(CHANNEL_TRACE < POSITIVITY);
        assert!(POSITIVITY <= HERMITICITY);
        assert!(HERMITICITY <= CLOSED_FORM);
        assert!(BISECTION < CRITICAL_TIME);
        assert!(GOLDEN_ANGLE < STATE_NORM);
        assert!(PRESET_NORM < STATE_NORM);
    }
}
