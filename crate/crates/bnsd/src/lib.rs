//! Bell-nonlocality sudden death (BNSD) for three qubits under multilocal dephasing.
//!
//! The library models a five-amplitude family of GHZ-class pure states
//! `|Ψ⟩ = a0|000⟩ + a4|100⟩ + a5|101⟩ + a6|110⟩ + a7|111⟩`, evolves it through
//! independent phase-damping channels acting on each qubit, and evaluates the
//! standard tripartite Bell operators (Svetlichny, MABK, the WWZB family) plus
//! a CHSH operator on the even/odd bipartition. Closed-form expectations,
//! measurement-setting optimizers, critical death times, and nonlocality
//! verdicts are built on top.
//!
//! Conventions used throughout:
//! - basis ordering `|abc⟩ → index 4a + 2b + c`;
//! - in-plane measurement directions `σ(φ) = cos φ σx + sin φ σy`, with the
//!   unprimed setting of party K at `φ = θ_K + π/2` and the primed one at
//!   `φ = θ_K` (party A is fixed at `θ_A = 0`);
//! - expectation values are reported signed; violation verdicts compare
//!   absolute values against the classical bounds.

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod error;
pub mod numeric;
pub mod operators;
pub mod state;
pub mod tol;
pub mod wwzb;

pub use error::{Error, Result};
