//! Bell operators: Svetlichny, the two MABK combinations, the five named
//! WWZB representatives, and the even/odd-bipartition CHSH operator.
//!
//! All tripartite operators share one skeleton: a coefficient map c(s) over
//! the eight setting choices s = (s_A, s_B, s_C), s_K ∈ {0 = unprimed,
//! 1 = primed}, contracted against products of single-party observables.
//! In-plane observables live in the x-y plane, `σ(φ) = cos φ σx + sin φ σy`;
//! party K's unprimed setting is `φ = θ_K + π/2`, primed is `φ = θ_K`, and
//! θ_A is fixed at 0. Bloch-mode observables are arbitrary unit directions.
//!
//! The bipartition operator treats qubits B and C as one four-level party
//! with the flip observables τ1 = σx ⊗ σx and τ2 = σy ⊗ σx, which act on the
//! |00⟩/|11⟩ doublet exactly as σx and σy act on a single qubit
//! (τ1|00⟩ = |11⟩, τ2|00⟩ = i|11⟩, τ2|11⟩ = −i|00⟩).


use crate::error::{Error, Result};
use crate::numeric::{identity, kron, re, zeros, ComplexMatrix, I};

pub fn pauli_x() -> ComplexMatrix {
    let mut m = zeros(2);
    m[(0, 1)] = re(1.0);
    m[(1, 0)] = re(1.0);
    m
}

pub fn pauli_y() -> ComplexMatrix {
    let mut m = zeros(2);
    m[(0, 1)] = -I;
    m[(1, 0)] = I;
    m
}

pub fn pauli_z() -> ComplexMatrix {
    let mut m = zeros(2);
    m[(0, 0)] = re(1.0);
    m[(1, 1)] = re(-1.0);
    m
}

/// In-plane observable σ(φ) = cos φ σx + sin φ σy.
pub fn in_plane_direction(phi: f64) -> ComplexMatrix {
    pauli_x() * re(phi.cos()) + pauli_y() * re(phi.sin())
}

/// Observable n·σ for a unit Bloch vector n.
pub fn bloch_direction(n: [f64; 3]) -> Result<ComplexMatrix> {
    let len2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    if !(len2.is_finite() && (len2 - 1.0).abs() < 1e-9) {
        return Err(Error::InvalidParameters(format!(
            "Bloch direction must be a unit vector, |n|^2 = {len2}"
        )));
    }
    Ok(pauli_x() * re(n[0]) + pauli_y() * re(n[1]) + pauli_z() * re(n[2]))
}

/// Measurement angles for parties B and C (party A is fixed at θ_A = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InPlaneSettings {
    pub theta_b: f64,
    pub theta_c: f64,
}

/// Six unit Bloch vectors: (unprimed, primed) per party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochSettings {
    pub a: [f64; 3],
    pub a_prime: [f64; 3],
    pub b: [f64; 3],
    pub b_prime: [f64; 3],
    pub c: [f64; 3],
    pub c_prime: [f64; 3],
}

/// The six in-plane party observables, each embedded in the 8-dim space.
pub struct PartyOperators {
    /// Indexed [party][setting]: party ∈ {A, B, C}, setting ∈ {unprimed, primed}.
    pub ops: [[ComplexMatrix; 2]; 3],
}

/// Embed a single-qubit operator into the given party slot.
fn embed(party: usize, op: &ComplexMatrix) -> ComplexMatrix {
    let id = identity(2);
    match party {
        0 => kron(&kron(op, &id), &id),
        1 => kron(&kron(&id, op), &id),
        _ => kron(&kron(&id, &id), op),
    }
}

/// In-plane observables at per-party angles (θ_A, θ_B, θ_C). The public
/// entry point fixes θ_A = 0; the general form exists for symmetry tests.
pub fn party_operators_general(theta: [f64; 3]) -> PartyOperators {
    let make = |party: usize, th: f64| {
        [
            embed(party, &in_plane_direction(th + std::f64::consts::FRAC_PI_2)),
            embed(party, &in_plane_direction(th)),
        ]
    };
    PartyOperators {
        ops: [make(0, theta[0]), make(1, theta[1]), make(2, theta[2])],
    }
}

/// In-plane observables at (θ_B, θ_C): A's pair is (σy, σx) ⊗ I ⊗ I.
pub fn party_operators(settings: &InPlaneSettings) -> PartyOperators {
    party_operators_general([0.0, settings.theta_b, settings.theta_c])
}

/// The ten supported Bell operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Svetlichny,
    SvetlichnyPrime,
    MabkM,
    MabkMprime,
    P1,
    P2,
    P3,
    P4,
    P5,
    ChshBipartition,
}

/// Canonical evaluation/reporting order.
pub const ALL_OPERATORS: [OperatorKind; 10] = [
    OperatorKind::Svetlichny,
    OperatorKind::SvetlichnyPrime,
    OperatorKind::MabkM,
    OperatorKind::MabkMprime,
    OperatorKind::P1,
    OperatorKind::P2,
    OperatorKind::P3,
    OperatorKind::P4,
    OperatorKind::P5,
    OperatorKind::ChshBipartition,
];

impl OperatorKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "svetlichny" => Ok(Self::Svetlichny),
            "svetlichny-prime" => Ok(Self::SvetlichnyPrime),
            "mabk-m" => Ok(Self::MabkM),
            "mabk-mprime" => Ok(Self::MabkMprime),
            "p1" => Ok(Self::P1),
            "p2" => Ok(Self::P2),
            "p3" => Ok(Self::P3),
            "p4" => Ok(Self::P4),
            "p5" => Ok(Self::P5),
            "chsh-bipartition" => Ok(Self::ChshBipartition),
            other => Err(Error::InvalidParameters(format!(
                "unknown operator '{other}'"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Svetlichny => "svetlichny",
            Self::SvetlichnyPrime => "svetlichny-prime",
            Self::MabkM => "mabk-m",
            Self::MabkMprime => "mabk-mprime",
            Self::P1 => "p1",
            Self::P2 => "p2",
            Self::P3 => "p3",
            Self::P4 => "p4",
            Self::P5 => "p5",
            Self::ChshBipartition => "chsh-bipartition",
        }
    }

    /// Local bound the violation verdicts compare against: the hybrid
    /// nonseparability bound 4 for the Svetlichny pair, the deterministic
    /// local bound 2 for everything else.
    pub fn classical_bound(self) -> f64 {
        match self {
            Self::Svetlichny | Self::SvetlichnyPrime => 4.0,
            _ => 2.0,
        }
    }

    /// Largest quantum-mechanical expectation magnitude, where known.
    pub fn quantum_bound(self) -> Option<f64> {
        match self {
            Self::Svetlichny | Self::SvetlichnyPrime => Some(4.0 * std::f64::consts::SQRT_2),
            Self::MabkM | Self::MabkMprime | Self::P5 => Some(4.0),
            Self::P1 => Some(2.0),
            Self::P3 | Self::ChshBipartition => Some(2.0 * std::f64::consts::SQRT_2),
            Self::P2 | Self::P4 => None,
        }
    }

    pub fn is_bipartition(self) -> bool {
        self == Self::ChshBipartition
    }

    /// Coefficient map c(s) over s-index 4s_A + 2s_B + s_C, for tripartite
    /// operators. Each operator is Σ_s c(s) · O_A^(s_A) O_B^(s_B) O_C^(s_C).
    pub fn coefficients(self) -> Option<[f64; 8]> {
        match self {
            // + on 0 or 1 primes, − on 2 or 3 primes.
            Self::Svetlichny => Some([1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0]),
            // The prime-swapped partner: + on ABC and A'B'C', − elsewhere.
            Self::SvetlichnyPrime => Some([1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0]),
            Self::MabkM => Some([0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, -1.0]),
            Self::MabkMprime => Some([1.0, 0.0, 0.0, -1.0, 0.0, -1.0, -1.0, 0.0]),
            Self::P1 => Some([2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            Self::P2 => Some([-1.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5]),
            Self::P3 => Some([1.0, 0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0]),
            Self::P4 => Some([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0]),
            Self::P5 => Some([0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, -1.0]),
            Self::ChshBipartition => None,
        }
    }
}

/// A concrete Bell operator matrix with its bounds.
pub struct BellOperator {
    pub kind: OperatorKind,
    pub matrix: ComplexMatrix,
    pub classical_bound: f64,
    pub quantum_bound: Option<f64>,
}

fn contract(kind: OperatorKind, parts: &PartyOperators) -> ComplexMatrix {
    let c = kind
        .coefficients()
        .expect("contract is only called for tripartite kinds");
    let mut out = zeros(8);
    for (s, &co) in c.iter().enumerate() {
        if co == 0.0 {
            continue;
        }
        let (sa, sb, sc) = (s >> 2 & 1, s >> 1 & 1, s & 1);
        out += (&parts.ops[0][sa] * &parts.ops[1][sb] * &parts.ops[2][sc]) * re(co);
    }
    out
}

/// Tripartite operator at in-plane settings.
pub fn tripartite_operator(kind: OperatorKind, settings: &InPlaneSettings) -> Result<BellOperator> {
    if kind.is_bipartition() {
        return Err(Error::InvalidParameters(
            "chsh-bipartition takes a θ_BC angle, not per-party in-plane settings".into(),
        ));
    }
    let parts = party_operators(settings);
    Ok(BellOperator {
        kind,
        matrix: contract(kind, &parts),
        classical_bound: kind.classical_bound(),
        quantum_bound: kind.quantum_bound(),
    })
}

/// Tripartite operator at arbitrary Bloch directions.
pub fn tripartite_operator_bloch(
    kind: OperatorKind,
    settings: &BlochSettings,
) -> Result<BellOperator> {
    if kind.is_bipartition() {
        return Err(Error::InvalidParameters(
            "chsh-bipartition has no Bloch-mode form; it is parameterized by θ_BC".into(),
        ));
    }
    let mk = |party: usize, n: [f64; 3]| -> Result<ComplexMatrix> {
        Ok(embed(party, &bloch_direction(n)?))
    };
    let parts = PartyOperators {
        ops: [
            [mk(0, settings.a)?, mk(0, settings.a_prime)?],
            [mk(1, settings.b)?, mk(1, settings.b_prime)?],
            [mk(2, settings.c)?, mk(2, settings.c_prime)?],
        ],
    };
    Ok(BellOperator {
        kind,
        matrix: contract(kind, &parts),
        classical_bound: kind.classical_bound(),
        quantum_bound: kind.quantum_bound(),
    })
}

/// τ1 = σx ⊗ σx: flips |00⟩ ↔ |11⟩ (and |01⟩ ↔ |10⟩) with no phase.
pub fn tau_1() -> ComplexMatrix {
    kron(&pauli_x(), &pauli_x())
}

/// τ2 = σy ⊗ σx: τ2|00⟩ = i|11⟩, τ2|11⟩ = −i|00⟩.
pub fn tau_2() -> ComplexMatrix {
    kron(&pauli_y(), &pauli_x())
}

/// The four observables of the A | BC bipartition: A keeps (σy, σx); the BC
/// pair rotates (τ2, τ1) by θ_BC exactly as the single-qubit pairs rotate
/// (σy, σx) by θ_K.
pub fn bipartition_party_operators(theta_bc: f64) -> [ComplexMatrix; 4] {
    let id4 = identity(4);
    let id2 = identity(2);
    let m_a = kron(&pauli_y(), &id4);
    let m_a_prime = kron(&pauli_x(), &id4);
    let m_bc = kron(
        &id2,
        &(tau_2() * re(theta_bc.cos()) - tau_1() * re(theta_bc.sin())),
    );
    let m_bc_prime = kron(
        &id2,
        &(tau_2() * re(theta_bc.sin()) + tau_1() * re(theta_bc.cos())),
    );
    [m_a, m_a_prime, m_bc, m_bc_prime]
}

/// CHSH operator on the A | BC bipartition:
/// B = M_A(M_BC + M_BC′) + M_A′(M_BC − M_BC′).
pub fn bipartition_chsh_operator(theta_bc: f64) -> BellOperator {
    let [m_a, m_a_prime, m_bc, m_bc_prime] = bipartition_party_operators(theta_bc);
    let matrix = &m_a * (&m_bc + &m_bc_prime) + &m_a_prime * (&m_bc - &m_bc_prime);
    BellOperator {
        kind: OperatorKind::ChshBipartition,
        matrix,
        classical_bound: 2.0,
        quantum_bound: Some(2.0 * std::f64::consts::SQRT_2),
    }
}

/// Uniform builder used by the CLI: in-plane angles for tripartite kinds,
/// θ_BC for the bipartition kind.
pub fn build_operator(
    kind: OperatorKind,
    settings: &InPlaneSettings,
    theta_bc: f64,
) -> BellOperator {
    if kind.is_bipartition() {
        bipartition_chsh_operator(theta_bc)
    } else {
        tripartite_operator(kind, settings).expect("kind checked above")
    }
}
