//! Multilocal dephasing: one phase-damping channel per qubit, equal rates.
//!
//! Each qubit K ∈ {A, B, C} is damped by the Kraus pair
//! `K1 = diag(1, γ)` and `K2 = diag(0, ω)` acting on its slot, with
//! `γ(t) = exp(−Γt)` and `ω = sqrt(1 − γ²)`. Populations are untouched; the
//! coherence between basis states m and n decays by γ for every bit position
//! where m and n differ. `apply_kraus` evaluates the full 8-term operator sum
//! with no algebraic shortcuts and serves as the oracle for the closed-form
//! `apply_mask` path.


use crate::error::{Error, Result};
use crate::numeric::{dagger, kron, re, ComplexMatrix};
use crate::state::GenericState;

/// Phase damping with rate Γ evaluated at time t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingChannel {
    gamma_rate: f64,
    t: f64,
}

/// The six Kraus factors, one damping pair per qubit, each embedded in the
/// full 8-dimensional space.
pub struct KrausSet {
    /// [E1, E2] acting on qubit A.
    pub e: [ComplexMatrix; 2],
    /// [F1, F2] acting on qubit B.
    pub f: [ComplexMatrix; 2],
    /// [G1, G2] acting on qubit C.
    pub g: [ComplexMatrix; 2],
}

impl DephasingChannel {
    pub fn new(gamma_rate: f64, t: f64) -> Result<Self> {
        if !(gamma_rate.is_finite() && gamma_rate > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "dephasing rate must be finite and positive, got {gamma_rate}"
            )));
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidParameters(format!(
                "time must be finite and nonnegative, got {t}"
            )));
        }
        Ok(Self { gamma_rate, t })
    }

    pub fn gamma_rate(&self) -> f64 {
        self.gamma_rate
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Surviving coherence fraction per qubit, γ = exp(−Γt) ∈ (0, 1].
    pub fn gamma(&self) -> f64 {
        (-self.gamma_rate * self.t).exp()
    }

    /// Damped fraction, ω = sqrt(1 − γ²).
    pub fn omega(&self) -> f64 {
        let g = self.gamma();
        (1.0 - g * g).max(0.0).sqrt()
    }

    /// Build the six Kraus factors at the current (Γ, t).
    pub fn kraus_set(&self) -> KrausSet {
        let g = self.gamma();
        let w = self.omega();
        let id2 = ComplexMatrix::identity(2, 2);
        let k1 = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            re(1.0),
            re(g),
        ]));
        let k2 = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            re(0.0),
            re(w),
        ]));
        KrausSet {
            e: [kron(&kron(&k1, &id2), &id2), kron(&kron(&k2, &id2), &id2)],
            f: [kron(&kron(&id2, &k1), &id2), kron(&kron(&id2, &k2), &id2)],
            g: [kron(&kron(&id2, &id2), &k1), kron(&kron(&id2, &id2), &k2)],
        }
    }

    /// Oracle path: ρ(t) = Σ_{i,j,k} (G_k F_j E_i) ρ (G_k F_j E_i)†,
    /// all eight terms formed and summed explicitly.
    pub fn apply_kraus(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.shape() != (8, 8) {
            return Err(Error::DimensionMismatch(format!(
                "channel expects an 8x8 density matrix, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let ks = self.kraus_set();
        let mut out = ComplexMatrix::zeros(8, 8);
        for e in &ks.e {
            for f in &ks.f {
                for g in &ks.g {
                    let op = g * f * e;
                    out += &op * rho * dagger(&op);
                }
            }
        }
        Ok(out)
    }

    /// Closed-form path for the five-amplitude family: build ρ(0) = |Ψ⟩⟨Ψ|
    /// and damp each coherence by γ^(number of differing bits).
    pub fn apply_mask(&self, s: &GenericState) -> ComplexMatrix {
        self.mask_matrix(&s.density_matrix())
            .expect("density_matrix is 8x8 by construction")
    }

    /// The same decay mask applied to an arbitrary 8x8 matrix. Entry (m, n)
    /// is multiplied by γ^(hamming distance of the 3-bit indices); diagonal
    /// entries are untouched (the exponent is zero).
    pub fn mask_matrix(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.shape() != (8, 8) {
            return Err(Error::DimensionMismatch(format!(
                "mask expects an 8x8 matrix, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let g = self.gamma();
        let pow = [1.0, g, g * g, g * g * g];
        let mut out = rho.clone();
        for m in 0..8 {
            for n in 0..8 {
                let d = ((m ^ n) as u32).count_ones() as usize;
                if d > 0 {
                    out[(m, n)] *= pow[d];
                }
            }
        }
        Ok(out)
    }
}

/// Completeness deviation max |Σ K†K − I| for one damping pair.
pub fn completeness_deviation(pair: &[ComplexMatrix; 2]) -> f64 {
    let sum = dagger(&pair[0]) * &pair[0] + dagger(&pair[1]) * &pair[1];
    crate::numeric::max_entry_diff(&sum, &ComplexMatrix::identity(8, 8))
}
