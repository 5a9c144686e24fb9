//! Physical parameter space, unit conventions, and validation shared by all
//! solvers.
//!
//! The model is a four-level double-Λ atom: two ground states |1⟩, |2⟩ and
//! two excited states |3⟩, |4⟩ split by `omega_34` (|4⟩ above |3⟩). Field
//! component `g ∈ {1,2}` couples |g⟩ → |3⟩ with half-Rabi frequency `Ω_g` and
//! |g⟩ → |4⟩ with `p_g Ω_g`, where `p_g` is the (real) dipole ratio.
//!
//! All rates and frequencies are expressed in units of the optical
//! decoherence rate Γ (`gamma_opt`), which is therefore normally set to 1.

use crate::error::{Error, Result};

/// Population-transfer rates γ_eg from the excited states to the ground
/// states, in units of Γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchingRatios {
    /// γ₃₁: |3⟩ → |1⟩.
    pub gamma_31: f64,
    /// γ₃₂: |3⟩ → |2⟩.
    pub gamma_32: f64,
    /// γ₄₁: |4⟩ → |1⟩.
    pub gamma_41: f64,
    /// γ₄₂: |4⟩ → |2⟩.
    pub gamma_42: f64,
}

impl BranchingRatios {
    /// Uniform relaxation: all four transfer rates equal γ/2, so each excited
    /// state decays with total rate γ and no branching asymmetry.
    pub fn uniform(gamma_exc: f64) -> Self {
        let half = 0.5 * gamma_exc;
        Self {
            gamma_31: half,
            gamma_32: half,
            gamma_41: half,
            gamma_42: half,
        }
    }
}

/// Full set of physical parameters. Immutable value type; the single source
/// of physical truth for every solver in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Γ: optical (ground-excited) decoherence rate; the internal unit.
    pub gamma_opt: f64,
    /// γ = γ₃ = γ₄: total excited-state decay rate.
    pub gamma_exc: f64,
    /// Γ₁₂: ground-state decoherence rate.
    pub gamma_12: f64,
    /// ω₃₄: excited-state splitting (|4⟩ above |3⟩).
    pub omega_34: f64,
    /// Ω₁: half-Rabi frequency of field 1 on |1⟩ → |3⟩.
    pub rabi_1: f64,
    /// Ω₂: half-Rabi frequency of field 2 on |2⟩ → |3⟩.
    pub rabi_2: f64,
    /// p₁ = d₁₄/d₁₃: dipole ratio of field 1.
    pub p_1: f64,
    /// p₂ = d₂₄/d₂₃: dipole ratio of field 2.
    pub p_2: f64,
    /// Population-transfer rates out of the excited states.
    pub branching: BranchingRatios,
}

/// Detunings of the two field components.
///
/// Convention: Δ₁ = Δ₀ + δ/2 and Δ₂ = Δ₀ − δ/2, where δ = Δ₁ − Δ₂ is the
/// two-photon detuning and Δ₀ is a common one-photon detuning (default 0).
/// The symmetric split keeps both one-photon detunings minimal across a
/// δ-scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningSpec {
    /// δ: two-photon detuning.
    pub delta: f64,
    /// Δ₀: common one-photon detuning.
    pub delta_common: f64,
}

impl DetuningSpec {
    /// Two-photon detuning δ with Δ₀ = 0.
    pub fn two_photon(delta: f64) -> Self {
        Self {
            delta,
            delta_common: 0.0,
        }
    }

    /// Δ₁ = Δ₀ + δ/2.
    pub fn detuning_1(&self) -> f64 {
        self.delta_common + 0.5 * self.delta
    }

    /// Δ₂ = Δ₀ − δ/2.
    pub fn detuning_2(&self) -> f64 {
        self.delta_common - 0.5 * self.delta
    }
}

/// Outcome of parameter validation: hard errors (invariant violations) and
/// soft advisories (regimes where approximate solvers degrade).
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    /// Invariant violations; any entry makes the parameters unusable.
    pub errors: Vec<Error>,
    /// Soft warnings (adiabaticity, detuning smallness). Never fatal.
    pub advisories: Vec<String>,
}

impl ValidationReport {
    /// True when no hard error was recorded.
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    /// The first hard error, if any, for `Result`-style propagation.
    pub fn into_result(self) -> Result<()> {
        match self.errors.into_iter().next() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

/// Fraction of Γ above which drive strengths or detunings draw an
/// adiabaticity / smallness advisory.
pub const ADVISORY_FRACTION: f64 = 0.3;

/// Checks all `ModelParams` invariants and collects advisories.
///
/// Hard errors: non-positive Γ, γ or ω₃₄; negative Γ₁₂; decoherence below the
/// radiative bound Γ ≥ γ/2; both drives zero; branching rates negative or not
/// summing to γ; non-finite values.
pub fn validate(params: &ModelParams) -> ValidationReport {
    let mut report = ValidationReport::default();
    let p = params;

    let all = [
        p.gamma_opt,
        p.gamma_exc,
        p.gamma_12,
        p.omega_34,
        p.rabi_1,
        p.rabi_2,
        p.p_1,
        p.p_2,
        p.branching.gamma_31,
        p.branching.gamma_32,
        p.branching.gamma_41,
        p.branching.gamma_42,
    ];
    if all.iter().any(|v| !v.is_finite()) {
        report
            .errors
            .push(Error::InvalidParameter("non-finite parameter".into()));
        return report;
    }

    if p.gamma_opt <= 0.0 {
        report
            .errors
            .push(Error::InvalidParameter("gamma_opt must be > 0".into()));
    }
    if p.gamma_exc <= 0.0 {
        report
            .errors
            .push(Error::InvalidParameter("gamma_exc must be > 0".into()));
    }
    if p.gamma_12 < 0.0 {
        report
            .errors
            .push(Error::InvalidParameter("gamma_12 must be >= 0".into()));
    }
    if p.omega_34 <= 0.0 {
        report
            .errors
            .push(Error::InvalidParameter("omega_34 must be > 0".into()));
    }
    if p.gamma_opt < 0.5 * p.gamma_exc {
        report.errors.push(Error::DecoherenceBound {
            gamma_opt: p.gamma_opt,
            bound: 0.5 * p.gamma_exc,
        });
    }
    if p.rabi_1 * p.rabi_1 + p.rabi_2 * p.rabi_2 <= 0.0 {
        report.errors.push(Error::NoDrive);
    }

    let b = &p.branching;
    if b.gamma_31 < 0.0 || b.gamma_32 < 0.0 || b.gamma_41 < 0.0 || b.gamma_42 < 0.0 {
        report
            .errors
            .push(Error::InvalidParameter("branching rates must be >= 0".into()));
    }
    let tol = 1e-12 * p.gamma_exc.max(1.0);
    if (b.gamma_31 + b.gamma_32 - p.gamma_exc).abs() > tol
        || (b.gamma_41 + b.gamma_42 - p.gamma_exc).abs() > tol
    {
        report.errors.push(Error::InvalidParameter(
            "branching rates must sum to gamma_exc per excited state".into(),
        ));
    }

    if p.rabi_1.abs().max(p.rabi_2.abs()) > ADVISORY_FRACTION * p.gamma_opt {
        report.advisories.push(format!(
            "adiabaticity: max(rabi_1, rabi_2) = {:.3e} exceeds {}*gamma_opt; \
             weak-coupling and adiabatic results degrade",
            p.rabi_1.abs().max(p.rabi_2.abs()),
            ADVISORY_FRACTION
        ));
    }

    report
}

/// Checks the one-photon detuning smallness advisory |Δ_g| ≤ 0.3 Γ.
pub fn validate_detuning(params: &ModelParams, det: &DetuningSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !det.delta.is_finite() || !det.delta_common.is_finite() {
        report
            .errors
            .push(Error::InvalidParameter("non-finite detuning".into()));
        return report;
    }
    let max_det = det.detuning_1().abs().max(det.detuning_2().abs());
    if max_det > ADVISORY_FRACTION * params.gamma_opt {
        report.advisories.push(format!(
            "one-photon detuning {:.3e} exceeds {}*gamma_opt; \
             small-detuning closed forms degrade",
            max_det, ADVISORY_FRACTION
        ));
    }
    report
}

/// Builds a parameter set with the uniform relaxation preset
/// (γ₃₁ = γ₃₂ = γ₄₁ = γ₄₂ = γ/2), propagating validation errors.
#[allow(clippy::too_many_arguments)]
pub fn uniform_preset(
    gamma_exc: f64,
    gamma_opt: f64,
    gamma_12: f64,
    omega_34: f64,
    rabi_1: f64,
    rabi_2: f64,
    p_1: f64,
    p_2: f64,
) -> Result<ModelParams> {
    let params = ModelParams {
        gamma_opt,
        gamma_exc,
        gamma_12,
        omega_34,
        rabi_1,
        rabi_2,
        p_1,
        p_2,
        branching: BranchingRatios::uniform(gamma_exc),
    };
    validate(&params).into_result()?;
    Ok(params)
}

impl ModelParams {
    /// The same physical system with field labels 1 ↔ 2 exchanged
    /// (Ω₁, p₁, γ_e1) ↔ (Ω₂, p₂, γ_e2). Combined with δ → −δ at Δ₀ = 0 this
    /// is an exact relabeling symmetry of the model.
    pub fn swapped(&self) -> Self {
        Self {
            rabi_1: self.rabi_2,
            rabi_2: self.rabi_1,
            p_1: self.p_2,
            p_2: self.p_1,
            branching: BranchingRatios {
                gamma_31: self.branching.gamma_32,
                gamma_32: self.branching.gamma_31,
                gamma_41: self.branching.gamma_42,
                gamma_42: self.branching.gamma_41,
            },
            ..*self
        }
    }

    /// Ω₁² + Ω₂².
    pub fn rabi_sq_sum(&self) -> f64 {
        self.rabi_1 * self.rabi_1 + self.rabi_2 * self.rabi_2
    }

    /// Dimensionless total intensity x = (Ω₁² + Ω₂²)/Γ².
    pub fn intensity(&self) -> f64 {
        self.rabi_sq_sum() / (self.gamma_opt * self.gamma_opt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2_params() -> ModelParams {
        // ω₃₄ = 10Γ, Ω₁ = 3Ω₂, Ω₁² + Ω₂² = 1e-4 Γ², p₁ = 1, p₂ = −1.
        uniform_preset(
            2.0,
            1.0,
            0.0,
            10.0,
            (9e-5f64).sqrt(),
            (1e-5f64).sqrt(),
            1.0,
            -1.0,
        )
        .unwrap()
    }

    #[test]
    fn uniform_preset_is_valid_without_advisories() {
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.01, 0.01, 0.0, 0.0).unwrap();
        let report = validate(&p);
        assert!(report.is_valid());
        assert!(report.advisories.is_empty());
    }

    #[test]
    fn no_drive_is_a_hard_error() {
        let err = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NoDrive));
    }

    #[test]
    fn decoherence_bound_is_enforced() {
        let err = uniform_preset(3.0, 1.0, 0.0, 1.0, 0.01, 0.01, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::DecoherenceBound { .. }));
    }

    #[test]
    fn branching_normalization_is_exact() {
        let p = fig2_params();
        assert_eq!(p.branching.gamma_31 + p.branching.gamma_32, p.gamma_exc);
        assert_eq!(p.branching.gamma_41 + p.branching.gamma_42, p.gamma_exc);
        assert_eq!(p.branching.gamma_31, 1.0);
        assert_eq!(p.branching.gamma_42, 1.0);
    }

    #[test]
    fn detuning_convention_is_symmetric() {
        let det = DetuningSpec {
            delta: 4e-4,
            delta_common: 0.1,
        };
        assert_eq!(det.detuning_1(), 0.1 + 2e-4);
        assert_eq!(det.detuning_2(), 0.1 - 2e-4);
        assert!((det.detuning_1() - det.detuning_2() - 4e-4).abs() < 1e-15);
    }

    #[test]
    fn adiabaticity_advisory_fires() {
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.4, 0.01, 0.0, 0.0).unwrap();
        let report = validate(&p);
        assert!(report.is_valid());
        assert_eq!(report.advisories.len(), 1);
    }

    #[test]
    fn swap_is_an_involution() {
        let p = fig2_params();
        assert_eq!(p.swapped().swapped(), p);
        assert_eq!(p.swapped().rabi_1, p.rabi_2);
        assert_eq!(p.swapped().p_2, p.p_1);
    }
}
