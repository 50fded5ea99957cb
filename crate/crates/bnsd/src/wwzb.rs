//! The complete 256-element WWZB full-correlation inequality family for
//! three parties, its five symmetry classes, and settings-relative
//! locality verdicts.
//!
//! Every inequality is generated by a sign function f: {0,1}³ → {±1} via
//! the transform c(s) = (1/4) Σ_r f(r) (−1)^{r·s}; an expectation
//! Σ_s c(s) E(s) ≤ 2 for every local model, and joint satisfaction of all
//! 256 members is necessary and sufficient for a fully local description
//! of the full correlations. The symmetry group (per-party setting swaps,
//! per-setting outcome flips, party permutations) partitions the family
//! into five orbits; class ids 1..5 follow the five named representatives
//! p1..p5.
//!
//! Indexing: r = 4r_A + 2r_B + r_C and s = 4s_A + 2s_B + s_C throughout.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numeric::{check_density_matrix, expectation, ComplexMatrix};
use crate::operators::{party_operators, InPlaneSettings, OperatorKind, PartyOperators};

/// Bitmasks implementing the per-party setting swap in f-space:
/// f'(r) = (−1)^{r_K} f(r) toggles the sign wherever bit K of r is set.
const SETTING_SWAP_MASKS: [u8; 3] = [0b1111_0000, 0b1100_1100, 0b1010_1010];

/// The five nontrivial party permutations (images of (A, B, C)).
const PARTY_PERMS: [[usize; 3]; 5] = [
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn parity_sign(r: usize, s: usize) -> f64 {
    if (r & s).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A sign function f: {0,1}³ → {±1} indexed by r = 4r_A + 2r_B + r_C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignFunction {
    signs: [i8; 8],
}

impl SignFunction {
    /// Decode a bitmask: bit r set means f(r) = +1.
    pub fn from_bitmask(mask: u8) -> Self {
        let mut signs = [0i8; 8];
        for (r, sign) in signs.iter_mut().enumerate() {
            *sign = if mask >> r & 1 == 1 { 1 } else { -1 };
        }
        Self { signs }
    }

    pub fn from_signs(signs: [i8; 8]) -> Result<Self> {
        if signs.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidFamily(format!(
                "sign function entries must be ±1, got {signs:?}"
            )));
        }
        Ok(Self { signs })
    }

    /// Invert the coefficient transform: f(r) = (1/2) Σ_s c(s) (−1)^{r·s}.
    /// Fails when the coefficients do not come from any sign function.
    pub fn from_coefficients(c: &[f64; 8]) -> Result<Self> {
        let mut signs = [0i8; 8];
        for (r, sign) in signs.iter_mut().enumerate() {
            let f: f64 = (0..8).map(|s| c[s] * parity_sign(r, s)).sum::<f64>() / 2.0;
            let rounded = f.round();
            if (f - rounded).abs() > 1e-9 || (rounded != 1.0 && rounded != -1.0) {
                return Err(Error::InvalidFamily(format!(
                    "coefficients do not define a ±1 sign function (f({r}) = {f})"
                )));
            }
            *sign = rounded as i8;
        }
        Ok(Self { signs })
    }

    pub fn bitmask(&self) -> u8 {
        let mut mask = 0u8;
        for (r, &sign) in self.signs.iter().enumerate() {
            if sign == 1 {
                mask |= 1 << r;
            }
        }
        mask
    }

    pub fn signs(&self) -> [i8; 8] {
        self.signs
    }

    /// c(s) = (1/4) Σ_r f(r) (−1)^{r·s}; every value lies on the dyadic
    /// grid {0, ±1/2, ±1, ±3/2, ±2}.
    pub fn coefficients(&self) -> [f64; 8] {
        let mut c = [0.0; 8];
        for (s, co) in c.iter_mut().enumerate() {
            *co = (0..8)
                .map(|r| f64::from(self.signs[r]) * parity_sign(r, s))
                .sum::<f64>()
                / 4.0;
        }
        c
    }

    /// 4·c(s) as exact integers.
    fn coefficients_times4(&self) -> [i32; 8] {
        let mut c = [0i32; 8];
        for (s, co) in c.iter_mut().enumerate() {
            *co = (0..8)
                .map(|r| {
                    i32::from(self.signs[r]) * if (r & s).count_ones() % 2 == 0 { 1 } else { -1 }
                })
                .sum();
        }
        c
    }

    /// Global outcome relabeling: f → −f, equivalently c → −c.
    pub fn negated(&self) -> Self {
        Self::from_bitmask(self.bitmask() ^ 0xFF)
    }

    /// Swap party K's two settings: c'(s) = c(s ⊕ e_K), f'(r) = (−1)^{r_K} f(r).
    pub fn swap_settings(&self, party: usize) -> Self {
        Self::from_bitmask(self.bitmask() ^ SETTING_SWAP_MASKS[party])
    }

    /// Flip the outcome labels of party K's primed observable:
    /// c'(s) = (−1)^{s_K} c(s), f'(r) = f(r ⊕ e_K).
    pub fn shift_outcome(&self, party: usize) -> Self {
        let e = 1usize << (2 - party);
        let mask = self.bitmask();
        let mut out = 0u8;
        for r in 0..8usize {
            if mask >> (r ^ e) & 1 == 1 {
                out |= 1 << r;
            }
        }
        Self::from_bitmask(out)
    }

    /// Relabel parties: new party slot j takes old party perm[j].
    pub fn permute_parties(&self, perm: [usize; 3]) -> Self {
        let mask = self.bitmask();
        let mut out = 0u8;
        for r in 0..8usize {
            let bits = [r >> 2 & 1, r >> 1 & 1, r & 1];
            let image = 4 * bits[perm[0]] + 2 * bits[perm[1]] + bits[perm[2]];
            if mask >> r & 1 == 1 {
                out |= 1 << image;
            }
        }
        Self::from_bitmask(out)
    }

    /// Largest |Σ_s c(s) a_{s_A} b_{s_B} c_{s_C}| over the 2⁶ deterministic
    /// local strategies, computed exactly in integers. Equals 2 for every
    /// member of the family (the common tight bound).
    pub fn deterministic_strategy_max(&self) -> f64 {
        let c4 = self.coefficients_times4();
        let mut best: i32 = 0;
        for strat in 0..64u32 {
            let pick = |bit: u32| -> i32 {
                if strat >> bit & 1 == 1 {
                    1
                } else {
                    -1
                }
            };
            let a = [pick(0), pick(1)];
            let b = [pick(2), pick(3)];
            let c = [pick(4), pick(5)];
            let mut total: i32 = 0;
            for (s, &co) in c4.iter().enumerate() {
                total += co * a[s >> 2 & 1] * b[s >> 1 & 1] * c[s & 1];
            }
            best = best.max(total.abs());
        }
        f64::from(best) / 4.0
    }
}

/// One member of the family: coefficients, the common bound 2, and its
/// symmetry class (1..5, numbered by the representative p1..p5).
#[derive(Debug, Clone)]
pub struct WwzbInequality {
    pub sign_function: SignFunction,
    pub coefficients: [f64; 8],
    pub bound: f64,
    pub class_id: u8,
}

impl WwzbInequality {
    /// Σ_s c(s) E(s) against precomputed correlators.
    pub fn evaluate(&self, correlators: &[f64; 8]) -> f64 {
        evaluate_coefficients(&self.coefficients, correlators)
    }
}

pub fn evaluate_coefficients(coefficients: &[f64; 8], correlators: &[f64; 8]) -> f64 {
    coefficients
        .iter()
        .zip(correlators)
        .map(|(c, e)| c * e)
        .sum()
}

/// The five class representatives in class-id order.
fn representatives() -> [SignFunction; 5] {
    let kinds = [
        OperatorKind::P1,
        OperatorKind::P2,
        OperatorKind::P3,
        OperatorKind::P4,
        OperatorKind::P5,
    ];
    kinds.map(|k| {
        let c = k
            .coefficients()
            .expect("the five representatives are tripartite");
        SignFunction::from_coefficients(&c)
            .expect("representative coefficient maps are exact sign functions")
    })
}

/// Class id (1..5) per bitmask, built once by closing each representative's
/// orbit under the symmetry generators.
fn class_table() -> &'static [u8; 256] {
    static TABLE: OnceLock<[u8; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0u8; 256];
        for (index, rep) in representatives().into_iter().enumerate() {
            let id = index as u8 + 1;
            let start = rep.bitmask();
            if table[start as usize] != 0 {
                continue;
            }
            let mut stack = vec![start];
            table[start as usize] = id;
            while let Some(mask) = stack.pop() {
                let f = SignFunction::from_bitmask(mask);
                let mut neighbors = vec![f.negated()];
                for party in 0..3 {
                    neighbors.push(f.swap_settings(party));
                    neighbors.push(f.shift_outcome(party));
                }
                for perm in PARTY_PERMS {
                    neighbors.push(f.permute_parties(perm));
                }
                for g in neighbors {
                    let m = g.bitmask() as usize;
                    if table[m] == 0 {
                        table[m] = id;
                        stack.push(g.bitmask());
                    }
                }
            }
        }
        table
    })
}

/// Symmetry class (1..5) of the sign function with the given bitmask.
pub fn class_of_mask(mask: u8) -> u8 {
    class_table()[mask as usize]
}

/// All 256 inequalities, indexed by sign-function bitmask.
pub fn enumerate_family() -> Vec<WwzbInequality> {
    (0..=255u8)
        .map(|mask| {
            let sign_function = SignFunction::from_bitmask(mask);
            let coefficients = sign_function.coefficients();
            WwzbInequality {
                sign_function,
                coefficients,
                bound: 2.0,
                class_id: class_of_mask(mask),
            }
        })
        .collect()
}

/// The orbit partition of the full family: classes[k] holds the bitmasks
/// of class k+1, each sorted ascending.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub classes: [Vec<u8>; 5],
}

impl OrbitPartition {
    pub fn class_sizes(&self) -> [usize; 5] {
        let mut sizes = [0usize; 5];
        for (k, class) in self.classes.iter().enumerate() {
            sizes[k] = class.len();
        }
        sizes
    }
}

/// Partition the enumerated family into its five symmetry classes.
pub fn classify_orbits(family: &[WwzbInequality]) -> Result<OrbitPartition> {
    if family.len() != 256 {
        return Err(Error::InvalidFamily(format!(
            "expected the full 256-member family, got {}",
            family.len()
        )));
    }
    let mut seen = [false; 256];
    let mut classes: [Vec<u8>; 5] = Default::default();
    for ineq in family {
        let mask = ineq.sign_function.bitmask();
        if seen[mask as usize] {
            return Err(Error::InvalidFamily(format!(
                "duplicate sign function {mask:#04x}"
            )));
        }
        seen[mask as usize] = true;
        let id = class_of_mask(mask);
        if !(1..=5).contains(&id) {
            return Err(Error::InvalidFamily(format!(
                "sign function {mask:#04x} not reached by any representative orbit"
            )));
        }
        classes[usize::from(id) - 1].push(mask);
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    Ok(OrbitPartition { classes })
}

/// Settings-relative full-locality report: a `true` verdict at one settings
/// choice does not prove locality over all settings; the analysis engine's
/// optimization over angles discharges the all-angles statement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalityVerdict {
    /// max over the family of |⟨B⟩| − 2 (positive iff something is violated).
    pub max_violation: f64,
    pub violating_count: usize,
    pub is_fully_local_at_settings: bool,
}

/// The eight full correlators E(s) = ⟨O_A^{(s_A)} O_B^{(s_B)} O_C^{(s_C)}⟩
/// at the given in-plane settings.
pub fn correlators(rho: &ComplexMatrix, settings: &InPlaneSettings) -> Result<[f64; 8]> {
    check_density_matrix(rho, 8)?;
    correlators_from_parts(rho, &party_operators(settings))
}

pub fn correlators_from_parts(rho: &ComplexMatrix, parts: &PartyOperators) -> Result<[f64; 8]> {
    let mut e = [0.0; 8];
    for (s, entry) in e.iter_mut().enumerate() {
        let op = &parts.ops[0][s >> 2 & 1] * &parts.ops[1][s >> 1 & 1] * &parts.ops[2][s & 1];
        *entry = expectation(&op, rho)?;
    }
    Ok(e)
}

/// All 256 expectation values in bitmask order at the given settings.
pub fn family_values(rho: &ComplexMatrix, settings: &InPlaneSettings) -> Result<Vec<f64>> {
    let e = correlators(rho, settings)?;
    Ok((0..=255u8)
        .map(|mask| evaluate_coefficients(&SignFunction::from_bitmask(mask).coefficients(), &e))
        .collect())
}

/// Evaluate the whole family at one settings choice.
pub fn locality_verdict(rho: &ComplexMatrix, settings: &InPlaneSettings) -> Result<LocalityVerdict> {
    let values = family_values(rho, settings)?;
    let mut max_violation = f64::NEG_INFINITY;
    let mut violating_count = 0usize;
    for v in values {
        let margin = v.abs() - 2.0;
        if margin > max_violation {
            max_violation = margin;
        }
        if margin > 0.0 {
            violating_count += 1;
        }
    }
    Ok(LocalityVerdict {
        max_violation,
        violating_count,
        is_fully_local_at_settings: violating_count == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::DephasingChannel;
    use crate::numeric::re;
    use crate::operators::party_operators_general;
    use crate::state::{GenericState, PresetState};
    use crate::tol;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn random_rho(rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut v = [Complex64::default(); 5];
        let mut norm = 0.0;
        for z in &mut v {
            *z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            norm += z.norm_sqr();
        }
        let scale = re(1.0 / norm.sqrt());
        let s = GenericState::new(
            v[0] * scale,
            v[1] * scale,
            v[2] * scale,
            v[3] * scale,
            v[4] * scale,
        )
        .unwrap();
        s.density_matrix()
    }

    #[test]
    fn family_has_256_distinct_members_on_the_dyadic_grid() {
        let family = enumerate_family();
        assert_eq!(family.len(), 256);
        let mut seen = [false; 256];
        for ineq in &family {
            let mask = ineq.sign_function.bitmask() as usize;
            assert!(!seen[mask]);
            seen[mask] = true;
            assert_eq!(ineq.bound, 2.0);
            for &c in &ineq.coefficients {
                let scaled = 4.0 * c;
                assert_eq!(scaled, scaled.round());
                assert!(c.abs() <= 2.0);
            }
        }
    }

    #[test]
    fn sign_function_coefficient_transform_is_a_bijection() {
        for mask in 0..=255u8 {
            let f = SignFunction::from_bitmask(mask);
            let back = SignFunction::from_coefficients(&f.coefficients()).unwrap();
            assert_eq!(back.bitmask(), mask);
        }
    }

    #[test]
    fn from_coefficients_rejects_non_sign_functions() {
        // A lone 1/2 coefficient transforms to fractional f values.
        let mut c = [0.0; 8];
        c[0] = 0.5;
        assert!(SignFunction::from_coefficients(&c).is_err());
        assert!(SignFunction::from_signs([1, 1, 1, 0, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn representatives_have_the_expected_sign_patterns() {
        let reps = representatives();
        // p1: constant +1; p2: +1 only at r = 0; p3: independent of r_C,
        // − only at r_A = r_B = 1; p4; p5: +1 iff weight(r) ≤ 1.
        assert_eq!(reps[0].bitmask(), 0xFF);
        assert_eq!(reps[1].bitmask(), 0x01);
        assert_eq!(reps[2].bitmask(), 0x3F);
        assert_eq!(reps[3].bitmask(), 0x7D);
        assert_eq!(reps[4].bitmask(), 0x17);
        for (i, rep) in reps.iter().enumerate() {
            assert_eq!(class_of_mask(rep.bitmask()), i as u8 + 1);
        }
    }

    #[test]
    fn enumerated_coefficients_reproduce_the_named_representatives() {
        let family = enumerate_family();
        let pairs = [
            (OperatorKind::P1, 0xFFu8),
            (OperatorKind::P2, 0x01),
            (OperatorKind::P3, 0x3F),
            (OperatorKind::P4, 0x7D),
            (OperatorKind::P5, 0x17),
        ];
        for (kind, mask) in pairs {
            let want = kind.coefficients().unwrap();
            let got = family[mask as usize].coefficients;
            for s in 0..8 {
                assert_eq!(got[s], want[s], "{} coefficient {s}", kind.name());
            }
        }
    }

    #[test]
    fn orbit_partition_has_the_computed_class_sizes() {
        let family = enumerate_family();
        let partition = classify_orbits(&family).unwrap();
        // Sizes are a computed property of the symmetry group (independently
        // cross-checked by brute-force closure): classes 1..5.
        assert_eq!(partition.class_sizes(), [16, 128, 48, 48, 16]);
        assert_eq!(partition.class_sizes().iter().sum::<usize>(), 256);
    }

    #[test]
    fn classify_rejects_truncated_or_duplicated_families() {
        let family = enumerate_family();
        assert!(classify_orbits(&family[..100]).is_err());
        let mut dup = family.clone();
        dup[1] = dup[0].clone();
        assert!(classify_orbits(&dup).is_err());
    }

    #[test]
    fn mabk_combinations_live_in_the_p5_class() {
        for kind in [OperatorKind::MabkM, OperatorKind::MabkMprime] {
            let c = kind.coefficients().unwrap();
            let f = SignFunction::from_coefficients(&c).unwrap();
            assert_eq!(class_of_mask(f.bitmask()), 5, "{}", kind.name());
        }
    }

    #[test]
    fn parity_sign_function_is_a_single_term_inequality_not_p5() {
        // f(r) = (−1)^{r_A + r_B + r_C} transforms to c(s) = 2·[s = 111],
        // which is in the single-term class 1.
        let f = SignFunction::from_bitmask(0b0110_1001);
        let c = f.coefficients();
        assert_eq!(c[7], 2.0);
        assert!(c[..7].iter().all(|&v| v == 0.0));
        assert_eq!(class_of_mask(f.bitmask()), 1);
    }

    #[test]
    fn class_one_members_are_exactly_the_single_term_inequalities() {
        let family = enumerate_family();
        let partition = classify_orbits(&family).unwrap();
        for &mask in &partition.classes[0] {
            let c = family[mask as usize].coefficients;
            let nonzero: Vec<f64> = c.iter().copied().filter(|v| *v != 0.0).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(nonzero[0].abs(), 2.0);
        }
    }

    #[test]
    fn deterministic_strategy_maximum_is_exactly_two_for_every_member() {
        for mask in 0..=255u8 {
            let f = SignFunction::from_bitmask(mask);
            assert_eq!(f.deterministic_strategy_max(), 2.0, "mask {mask:#04x}");
        }
    }

    #[test]
    fn symmetry_generators_preserve_expectation_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..25 {
            let rho = random_rho(&mut rng);
            let theta: [f64; 3] = [
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
            ];
            let parts = party_operators_general(theta);
            let e = correlators_from_parts(&rho, &parts).unwrap();
            let f = SignFunction::from_bitmask(rng.random_range(0..=255u8));
            let value = evaluate_coefficients(&f.coefficients(), &e);

            // Global sign: value negates.
            let neg = evaluate_coefficients(&f.negated().coefficients(), &e);
            assert!((neg + value).abs() < tol::EQUALITY);

            for party in 0..3 {
                // Setting swap at K against swapped observables at K.
                let mut swapped = parts.ops.clone();
                swapped[party].swap(0, 1);
                let e_swapped =
                    correlators_from_parts(&rho, &PartyOperators { ops: swapped }).unwrap();
                let v_swapped =
                    evaluate_coefficients(&f.swap_settings(party).coefficients(), &e_swapped);
                assert!((v_swapped - value).abs() < tol::EQUALITY);

                // Outcome shift at K against a negated primed observable at K.
                let mut flipped = parts.ops.clone();
                flipped[party][1] = &flipped[party][1] * re(-1.0);
                let e_flipped =
                    correlators_from_parts(&rho, &PartyOperators { ops: flipped }).unwrap();
                let v_flipped =
                    evaluate_coefficients(&f.shift_outcome(party).coefficients(), &e_flipped);
                assert!((v_flipped - value).abs() < tol::EQUALITY);
            }

            // Party permutation against permuted angles and permuted state.
            for perm in PARTY_PERMS {
                let theta_p = [theta[perm[0]], theta[perm[1]], theta[perm[2]]];
                let mut p = ComplexMatrix::zeros(8, 8);
                for r in 0..8usize {
                    let bits = [r >> 2 & 1, r >> 1 & 1, r & 1];
                    let image = 4 * bits[perm[0]] + 2 * bits[perm[1]] + bits[perm[2]];
                    p[(image, r)] = re(1.0);
                }
                let rho_p = &p * &rho * p.adjoint();
                let e_p =
                    correlators_from_parts(&rho_p, &party_operators_general(theta_p)).unwrap();
                let v_p = evaluate_coefficients(&f.permute_parties(perm).coefficients(), &e_p);
                assert!((v_p - value).abs() < tol::EQUALITY, "perm {perm:?}");
            }
        }
    }

    #[test]
    fn ghz_violates_a_class_five_member_at_quarter_turn_settings() {
        let rho = PresetState::Ghz.density_matrix();
        let settings = InPlaneSettings {
            theta_b: FRAC_PI_2,
            theta_c: 0.0,
        };
        let verdict = locality_verdict(&rho, &settings).unwrap();
        assert!(verdict.violating_count >= 1);
        assert!(!verdict.is_fully_local_at_settings);
        // The largest value in the family here is 4, attained in class 5.
        assert!((verdict.max_violation - 2.0).abs() < 1e-10);
        let values = family_values(&rho, &settings).unwrap();
        let (best_mask, best) = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap();
        assert!((best.abs() - 4.0).abs() < 1e-10);
        assert_eq!(class_of_mask(best_mask as u8), 5);
    }

    #[test]
    fn fully_dephased_ghz_satisfies_the_whole_family_on_a_grid() {
        // Beyond t = ln 2 / 3 the family is satisfied at every angle.
        let rho = DephasingChannel::new(1.0, 0.5)
            .unwrap()
            .apply_mask(&PresetState::Ghz.generic().unwrap());
        for k in 0..90 {
            let theta_b = -PI + 2.0 * PI * (k as f64) / 89.0;
            let verdict = locality_verdict(
                &rho,
                &InPlaneSettings {
                    theta_b,
                    theta_c: 0.0,
                },
            )
            .unwrap();
            assert!(verdict.is_fully_local_at_settings, "θ_B = {theta_b}");
        }
    }

    #[test]
    fn product_zero_state_satisfies_everything() {
        let rho = PresetState::Zero.density_matrix();
        let verdict = locality_verdict(
            &rho,
            &InPlaneSettings {
                theta_b: 0.77,
                theta_c: -0.2,
            },
        )
        .unwrap();
        assert_eq!(verdict.violating_count, 0);
        assert!(verdict.is_fully_local_at_settings);
        // Every in-plane correlator of |000⟩ vanishes, so the margin is −2.
        assert!((verdict.max_violation + 2.0).abs() < 1e-12);
    }

    #[test]
    fn verdict_rejects_invalid_density_matrices() {
        let bad = ComplexMatrix::zeros(4, 4);
        let settings = InPlaneSettings {
            theta_b: 0.0,
            theta_c: 0.0,
        };
        assert!(locality_verdict(&bad, &settings).is_err());
        let mut non_unit = PresetState::Ghz.density_matrix();
        non_unit[(0, 0)] = re(0.9);
        assert!(locality_verdict(&non_unit, &settings).is_err());
    }
}
