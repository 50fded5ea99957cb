//! Three-qubit states: the five-amplitude pure family, presets, and JSON IO.
//!
//! Basis ordering is `|abc⟩ → index 4a + 2b + c`. The five-amplitude family
//! `a0|000⟩ + a4|100⟩ + a5|101⟩ + a6|110⟩ + a7|111⟩` is closed under the
//! multilocal dephasing channel and carries all the closed-form machinery;
//! the `W` preset lies outside it and is handled through its full density
//! matrix.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::numeric::ComplexMatrix;
use crate::tol;

/// Indices of the five populated basis states, in amplitude order.
pub const AMPLITUDE_INDICES: [usize; 5] = [0, 4, 5, 6, 7];

/// Pure state of the five-amplitude family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericState {
    pub a0: Complex64,
    pub a4: Complex64,
    pub a5: Complex64,
    pub a6: Complex64,
    pub a7: Complex64,
}

impl GenericState {
    /// Construct from amplitudes that must already be normalized to
    /// `tol::STATE_NORM`.
    pub fn new(
        a0: Complex64,
        a4: Complex64,
        a5: Complex64,
        a6: Complex64,
        a7: Complex64,
    ) -> Result<Self> {
        let s = Self { a0, a4, a5, a6, a7 };
        let dev = (s.norm_sqr() - 1.0).abs();
        if !dev.is_finite() {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        if dev > tol::STATE_NORM {
            return Err(Error::NotNormalized(dev));
        }
        Ok(s)
    }

    /// Construct from arbitrary amplitudes, rescaling to unit norm.
    pub fn normalized(
        a0: Complex64,
        a4: Complex64,
        a5: Complex64,
        a6: Complex64,
        a7: Complex64,
    ) -> Result<Self> {
        let raw = Self { a0, a4, a5, a6, a7 };
        let n2 = raw.norm_sqr();
        if !n2.is_finite() {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        if n2 <= 0.0 {
            return Err(Error::InvalidState("all amplitudes are zero".into()));
        }
        let inv = 1.0 / n2.sqrt();
        Ok(Self {
            a0: a0 * inv,
            a4: a4 * inv,
            a5: a5 * inv,
            a6: a6 * inv,
            a7: a7 * inv,
        })
    }

    fn norm_sqr(&self) -> f64 {
        self.a0.norm_sqr()
            + self.a4.norm_sqr()
            + self.a5.norm_sqr()
            + self.a6.norm_sqr()
            + self.a7.norm_sqr()
    }

    /// Amplitudes embedded in the full 8-dimensional basis.
    pub fn amplitudes8(&self) -> [Complex64; 8] {
        let z = Complex64::new(0.0, 0.0);
        [self.a0, z, z, z, self.a4, self.a5, self.a6, self.a7]
    }

    /// Density matrix |Ψ⟩⟨Ψ| (8x8).
    pub fn density_matrix(&self) -> ComplexMatrix {
        let a = self.amplitudes8();
        ComplexMatrix::from_fn(8, 8, |m, n| a[m] * a[n].conj())
    }

    /// x = |a0||a7|, the weight of the only coherence every Bell operator
    /// here couples to.
    pub fn coherence_weight(&self) -> f64 {
        self.a0.norm() * self.a7.norm()
    }

    /// Relative phase α = arg(a0) − arg(a7), wrapped to (−π, π].
    pub fn relative_phase(&self) -> Result<f64> {
        if self.a0.norm() == 0.0 || self.a7.norm() == 0.0 {
            return Err(Error::UndefinedPhase(
                "a0 * a7 = 0, so arg(a0) - arg(a7) has no value".into(),
            ));
        }
        Ok(wrap_angle(self.a0.arg() - self.a7.arg()))
    }

    /// Like `relative_phase`, but 0 when undefined. The phase only ever
    /// enters multiplied by `coherence_weight`, which is 0 exactly when the
    /// phase is undefined.
    pub fn relative_phase_or_zero(&self) -> f64 {
        self.relative_phase().unwrap_or(0.0)
    }
}

/// Wrap an angle to (−π, π].
pub fn wrap_angle(a: f64) -> f64 {
    let mut x = a.rem_euclid(2.0 * std::f64::consts::PI);
    if x > std::f64::consts::PI {
        x -= 2.0 * std::f64::consts::PI;
    }
    x
}

/// Built-in named states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetState {
    Ghz,
    W,
    Zero,
}

impl PresetState {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "ghz" => Ok(Self::Ghz),
            "w" => Ok(Self::W),
            "zero" => Ok(Self::Zero),
            other => Err(Error::InvalidState(format!(
                "unknown preset '{other}' (expected ghz, w, or zero)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Ghz => "ghz",
            Self::W => "w",
            Self::Zero => "zero",
        }
    }

    pub fn amplitudes8(self) -> [Complex64; 8] {
        let z = Complex64::new(0.0, 0.0);
        let r = |x: f64| Complex64::new(x, 0.0);
        match self {
            Self::Ghz => {
                let c = r(std::f64::consts::FRAC_1_SQRT_2);
                [c, z, z, z, z, z, z, c]
            }
            Self::W => {
                let c = r(1.0 / 3.0f64.sqrt());
                [z, c, c, z, c, z, z, z]
            }
            Self::Zero => [r(1.0), z, z, z, z, z, z, z],
        }
    }

    pub fn density_matrix(self) -> ComplexMatrix {
        let a = self.amplitudes8();
        ComplexMatrix::from_fn(8, 8, |m, n| a[m] * a[n].conj())
    }

    /// The five-amplitude form, when the preset has one.
    pub fn generic(self) -> Option<GenericState> {
        let a = self.amplitudes8();
        if a[1].norm() == 0.0 && a[2].norm() == 0.0 && a[3].norm() == 0.0 {
            Some(GenericState {
                a0: a[0],
                a4: a[4],
                a5: a[5],
                a6: a[6],
                a7: a[7],
            })
        } else {
            None
        }
    }
}

/// A state as specified by the user: preset tag or explicit amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Preset(PresetState),
    Generic(GenericState),
}

impl StateSpec {
    pub fn density_matrix(&self) -> ComplexMatrix {
        match self {
            Self::Preset(p) => p.density_matrix(),
            Self::Generic(g) => g.density_matrix(),
        }
    }

    pub fn generic(&self) -> Option<GenericState> {
        match self {
            Self::Preset(p) => p.generic(),
            Self::Generic(g) => Some(*g),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Preset(p) => format!("preset '{}'", p.name()),
            Self::Generic(_) => "five-amplitude state".into(),
        }
    }

    /// Parse the JSON state schema:
    /// `{"a0": [re, im], "a4": ..., "a5": ..., "a6": ..., "a7": ...}`,
    /// optionally carrying `"preset": "ghz"|"w"|"zero"` which takes
    /// precedence over amplitude keys. Missing amplitude keys default to 0.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidState("state JSON must be an object".into()))?;
        if let Some(p) = obj.get("preset") {
            let name = p.as_str().ok_or_else(|| {
                Error::InvalidState("state JSON key 'preset' must be a string".into())
            })?;
            return Ok(Self::Preset(PresetState::parse(name)?));
        }
        let read = |key: &str| -> Result<Complex64> {
            match obj.get(key) {
                None => Ok(Complex64::new(0.0, 0.0)),
                Some(Value::Array(pair)) if pair.len() == 2 => {
                    let re = pair[0].as_f64().ok_or_else(|| {
                        Error::InvalidState(format!("state key '{key}' has a non-numeric entry"))
                    })?;
                    let im = pair[1].as_f64().ok_or_else(|| {
                        Error::InvalidState(format!("state key '{key}' has a non-numeric entry"))
                    })?;
                    Ok(Complex64::new(re, im))
                }
                Some(_) => Err(Error::InvalidState(format!(
                    "state key '{key}' must be a [re, im] pair"
                ))),
            }
        };
        let g = GenericState::new(
            read("a0")?,
            read("a4")?,
            read("a5")?,
            read("a6")?,
            read("a7")?,
        )?;
        Ok(Self::Generic(g))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)
            .map_err(|e| Error::InvalidState(format!("state JSON parse error: {e}")))?;
        Self::from_json(&v)
    }

    /// Serialize to the same schema `from_json` reads. Amplitudes are written
    /// at full f64 precision so that a round trip preserves them exactly.
    pub fn to_json(&self) -> Value {
        match self {
            Self::Preset(PresetState::W) => json!({ "preset": "w" }),
            Self::Preset(p) => {
                let g = p.generic().expect("non-W presets have a generic form");
                let mut m = generic_to_map(&g);
                m.insert("preset".into(), Value::String(p.name().into()));
                Value::Object(m)
            }
            Self::Generic(g) => Value::Object(generic_to_map(g)),
        }
    }
}

fn generic_to_map(g: &GenericState) -> Map<String, Value> {
    let mut m = Map::new();
    let put = |m: &mut Map<String, Value>, key: &str, z: Complex64| {
        m.insert(key.into(), json!([z.re, z.im]));
    };
    put(&mut m, "a0", g.a0);
    put(&mut m, "a4", g.a4);
    put(&mut m, "a5", g.a5);
    put(&mut m, "a6", g.a6);
    put(&mut m, "a7", g.a7);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{hermitian_eigenvalues, max_entry_diff, re, trace};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn z() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    #[test]
    fn constructor_rejects_unnormalized_amplitudes() {
        let err = GenericState::new(re(0.9), z(), z(), z(), re(0.9)).unwrap_err();
        assert!(matches!(err, Error::NotNormalized(_)));
    }

    #[test]
    fn constructor_accepts_within_tolerance() {
        let c = FRAC_1_SQRT_2;
        assert!(GenericState::new(re(c), z(), z(), z(), re(c)).is_ok());
    }

    #[test]
    fn normalized_rescales_and_rejects_zero() {
        let s = GenericState::normalized(re(3.0), z(), z(), z(), re(4.0)).unwrap();
        assert!((s.a0.re - 0.6).abs() < 1e-15);
        assert!((s.a7.re - 0.8).abs() < 1e-15);
        let err = GenericState::normalized(z(), z(), z(), z(), z()).unwrap_err();
        assert!(matches!(err, Error::InvalidState(_)));
    }

    #[test]
    fn ghz_density_matrix_has_half_corners() {
        let rho = PresetState::Ghz.density_matrix();
        assert!((rho[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((rho[(7, 7)].re - 0.5).abs() < 1e-15);
        assert!((rho[(0, 7)].re - 0.5).abs() < 1e-15);
        assert!((rho[(7, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_state_density_matrix_is_e00() {
        let rho = PresetState::Zero.density_matrix();
        assert!((rho[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((trace(&rho).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn corner_coherence_carries_the_conjugate_phase() {
        // a0 = 0.8, a7 = 0.6i: rho(0,7) = a0 * conj(a7) = -0.48i.
        let s =
            GenericState::new(re(0.8), z(), z(), z(), Complex64::new(0.0, 0.6)).unwrap();
        let rho = s.density_matrix();
        assert!((rho[(0, 7)] - Complex64::new(0.0, -0.48)).norm() < 1e-15);
        assert!((rho[(7, 0)] - Complex64::new(0.0, 0.48)).norm() < 1e-15);
    }

    #[test]
    fn rows_for_unpopulated_basis_states_are_zero() {
        let s = GenericState::normalized(re(1.0), re(2.0), re(3.0), re(4.0), re(5.0)).unwrap();
        let rho = s.density_matrix();
        for idx in [1usize, 2, 3] {
            for k in 0..8 {
                assert_eq!(rho[(idx, k)], z());
                assert_eq!(rho[(k, idx)], z());
            }
        }
    }

    #[test]
    fn density_matrix_is_a_projector() {
        let s = GenericState::normalized(re(1.0), re(-1.0), re(0.5), z(), re(2.0)).unwrap();
        let rho = s.density_matrix();
        assert!(max_entry_diff(&(&rho * &rho), &rho) < 1e-14);
        let ev = hermitian_eigenvalues(&rho).unwrap();
        assert!(ev[0] > -1e-12);
        assert!((ev[7] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_spectrum_is_seven_zeros_and_a_one() {
        let ev = hermitian_eigenvalues(&PresetState::Ghz.density_matrix()).unwrap();
        for v in &ev[..7] {
            assert!(v.abs() < 1e-12);
        }
        assert!((ev[7] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn relative_phase_examples() {
        let c = FRAC_1_SQRT_2;
        let ghz = GenericState::new(re(c), z(), z(), z(), re(c)).unwrap();
        assert_eq!(ghz.relative_phase().unwrap(), 0.0);

        let s = GenericState::new(
            re(c),
            z(),
            z(),
            z(),
            Complex64::from_polar(c, PI / 3.0),
        )
        .unwrap();
        assert!((s.relative_phase().unwrap() + PI / 3.0).abs() < 1e-15);

        let s = GenericState::new(Complex64::new(0.0, c), z(), z(), z(), re(c)).unwrap();
        assert!((s.relative_phase().unwrap() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn relative_phase_stays_in_half_open_interval() {
        // arg(a0) - arg(a7) = -pi wraps to +pi.
        let c = FRAC_1_SQRT_2;
        let s = GenericState::new(re(-c), z(), z(), z(), re(c)).unwrap();
        assert!((s.relative_phase().unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn relative_phase_undefined_when_a_corner_amplitude_vanishes() {
        let s = GenericState::new(re(1.0), z(), z(), z(), z()).unwrap();
        assert!(matches!(
            s.relative_phase().unwrap_err(),
            Error::UndefinedPhase(_)
        ));
        assert_eq!(s.relative_phase_or_zero(), 0.0);
        assert_eq!(s.coherence_weight(), 0.0);
    }

    #[test]
    fn presets_are_normalized_to_machine_precision() {
        for p in [PresetState::Ghz, PresetState::W, PresetState::Zero] {
            let n2: f64 = p.amplitudes8().iter().map(|a| a.norm_sqr()).sum();
            assert!((n2 - 1.0).abs() < tol::PRESET_NORM);
        }
    }

    #[test]
    fn w_preset_has_no_generic_form_but_others_do() {
        assert!(PresetState::W.generic().is_none());
        assert!(PresetState::Ghz.generic().is_some());
        assert!(PresetState::Zero.generic().is_some());
    }

    #[test]
    fn json_round_trip_preserves_amplitudes_exactly() {
        let s = GenericState::normalized(
            Complex64::new(0.37, -0.11),
            Complex64::new(-0.2, 0.05),
            Complex64::new(0.0, 0.4),
            Complex64::new(0.1, 0.1),
            Complex64::new(0.55, 0.21),
        )
        .unwrap();
        let spec = StateSpec::Generic(s);
        let text = serde_json::to_string(&spec.to_json()).unwrap();
        let back = StateSpec::from_json_str(&text).unwrap();
        match back {
            StateSpec::Generic(g) => {
                assert!((g.a0 - s.a0).norm() < 1e-15);
                assert!((g.a4 - s.a4).norm() < 1e-15);
                assert!((g.a5 - s.a5).norm() < 1e-15);
                assert!((g.a6 - s.a6).norm() < 1e-15);
                assert!((g.a7 - s.a7).norm() < 1e-15);
            }
            _ => panic!("expected generic state"),
        }
    }

    #[test]
    fn json_preset_key_takes_precedence() {
        let spec = StateSpec::from_json_str(r#"{"preset": "w", "a0": [1.0, 0.0]}"#).unwrap();
        assert_eq!(spec, StateSpec::Preset(PresetState::W));
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(StateSpec::from_json_str(r#"[1, 2]"#).is_err());
        assert!(StateSpec::from_json_str(r#"{"a0": "big"}"#).is_err());
        assert!(StateSpec::from_json_str(r#"{"a0": [1.0, 0.0, 0.0]}"#).is_err());
        // Unnormalized amplitudes are rejected by the state constructor.
        assert!(matches!(
            StateSpec::from_json_str(r#"{"a0": [0.9, 0.0], "a7": [0.9, 0.0]}"#).unwrap_err(),
            Error::NotNormalized(_)
        ));
    }
}
