//! Analytic machinery for the weak-coupling (small G) and adiabatic regimes:
//! the dispersive weight G, the resonance width γ_D, the dynamic Stark and
//! distortion shifts, the first-order coherence and populations, and the
//! general 2×2 adiabatically reduced solution valid at arbitrary ω₃₄.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{validate, DetuningSpec, ModelParams};
use crate::search::bisect_zero;

/// Dispersive weight G = Γω₃₄/(Γ² + ω₃₄²) governing the influence of the
/// second excited level; an N-shaped function of ω₃₄ peaking at ω₃₄ = Γ.
pub fn g_factor(omega_34: f64, gamma_opt: f64) -> f64 {
    gamma_opt * omega_34 / (gamma_opt * gamma_opt + omega_34 * omega_34)
}

/// Power-broadened CPT resonance half-width γ_D = (Ω₁² + Ω₂²)/Γ + Γ₁₂.
pub fn gamma_d(params: &ModelParams) -> f64 {
    params.rabi_sq_sum() / params.gamma_opt + params.gamma_12
}

/// Effective resonance half-width at general ω₃₄, counting the
/// power broadening through both excited levels:
/// γ_D,eff = [Ω₁²(1 + p₁²L) + Ω₂²(1 + p₂²L)]/Γ + Γ₁₂ with
/// L = Γ²/(Γ² + ω₃₄²). Reduces to γ_D as ω₃₄ → ∞; used to normalize shift
/// maps in the strong-coupling regime where the bare γ_D underestimates the
/// width at large |p_g|.
pub fn gamma_d_effective(params: &ModelParams) -> f64 {
    let g2 = params.gamma_opt * params.gamma_opt;
    let lorentz = g2 / (g2 + params.omega_34 * params.omega_34);
    let o1sq = params.rabi_1 * params.rabi_1;
    let o2sq = params.rabi_2 * params.rabi_2;
    (o1sq * (1.0 + params.p_1 * params.p_1 * lorentz)
        + o2sq * (1.0 + params.p_2 * params.p_2 * lorentz))
        / params.gamma_opt
        + params.gamma_12
}

/// Dynamic Stark shift of the two-photon resonance,
/// δ_AC = (G/Γ)(p₁²Ω₁² − p₂²Ω₂²).
pub fn stark_shift(params: &ModelParams) -> f64 {
    let g = g_factor(params.omega_34, params.gamma_opt);
    (g / params.gamma_opt)
        * (params.p_1 * params.p_1 * params.rabi_1 * params.rabi_1
            - params.p_2 * params.p_2 * params.rabi_2 * params.rabi_2)
}

/// Distortion shift from the line-shape asymmetry induced by the
/// off-resonant transitions, δ_D = p₁p₂ G γ_D (Ω₂² − Ω₁²)/(Ω₁² + Ω₂²).
pub fn distortion_shift(params: &ModelParams) -> f64 {
    let g = g_factor(params.omega_34, params.gamma_opt);
    let o1sq = params.rabi_1 * params.rabi_1;
    let o2sq = params.rabi_2 * params.rabi_2;
    params.p_1 * params.p_2 * g * gamma_d(params) * (o2sq - o1sq) / (o1sq + o2sq)
}

/// Stationary ground-state coherence of the analogous three-level Λ-system,
/// ρ̃₁₂⁽⁰⁾ = −Ω₁Ω₂ / (Γ[γ_D + i(δ − δ_AC)]).
pub fn rho12_three_level(params: &ModelParams, delta: f64) -> Complex64 {
    let denom = Complex64::new(gamma_d(params), delta - stark_shift(params));
    Complex64::new(-params.rabi_1 * params.rabi_2, 0.0) / (params.gamma_opt * denom)
}

/// First-order ground-state coherence:
/// ρ̃₁₂ = ρ̃₁₂⁽⁰⁾ · (1 + i p₁p₂ G (Ω₂² − Ω₁²)/(Ω₁² + Ω₂²)).
///
/// Valid for small G (ω₃₄ ≳ 3Γ) or small |p₁p₂|; advisory only.
pub fn rho12_weak(params: &ModelParams, delta: f64) -> Complex64 {
    let g = g_factor(params.omega_34, params.gamma_opt);
    let o1sq = params.rabi_1 * params.rabi_1;
    let o2sq = params.rabi_2 * params.rabi_2;
    let correction = Complex64::new(
        1.0,
        params.p_1 * params.p_2 * g * (o2sq - o1sq) / (o1sq + o2sq),
    );
    rho12_three_level(params, delta) * correction
}

/// First-order ground-state populations (ρ₁₁, ρ₂₂); sums to 1 exactly.
pub fn populations_weak(params: &ModelParams, delta: f64) -> (f64, f64) {
    let g = g_factor(params.omega_34, params.gamma_opt);
    let o1sq = params.rabi_1 * params.rabi_1;
    let o2sq = params.rabi_2 * params.rabi_2;
    let sum = o1sq + o2sq;
    let rho0 = rho12_three_level(params, delta);
    let correction = 2.0 * params.p_1 * params.p_2 * g * params.gamma_opt
        * (delta - stark_shift(params))
        / sum
        * rho0.norm_sqr();
    let rho11 = o2sq / sum + correction;
    (rho11, 1.0 - rho11)
}

/// Coefficients of the adiabatically reduced 2×2 system for (ρ₁₁, ρ̃₁₂),
/// evaluated with the full detuning dependence (no small-Δ expansion):
/// δ_g3 = Γ + iΔ_g, δ_g4 = Γ + i(Δ_g − ω₃₄), δ₁₂ = Γ₁₂ + iδ.
#[derive(Debug, Clone, Copy)]
pub struct ReducedCoefficients {
    /// Real coefficient of ρ₁₁ in the population balance row.
    pub a: f64,
    /// Complex coefficient of ρ̃₁₂ in the population balance row.
    pub b: Complex64,
    /// Complex coefficient of ρ₁₁ in the coherence row.
    pub c: Complex64,
    /// Complex coefficient of ρ̃₁₂ in the coherence row.
    pub d: Complex64,
    /// Real inhomogeneous term of the population balance row.
    pub f: f64,
    /// Complex inhomogeneous term of the coherence row.
    pub h: Complex64,
    /// Branching asymmetry Δγ₁ (zero under the uniform preset).
    pub delta_gamma_1: f64,
    /// Branching asymmetry Δγ₂ (zero under the uniform preset).
    pub delta_gamma_2: f64,
}

/// Builds the reduced-system coefficients at two-photon detuning δ.
pub fn reduced_coefficients(params: &ModelParams, det: &DetuningSpec) -> ReducedCoefficients {
    let br = &params.branching;
    let gam = params.gamma_opt;
    let o1 = params.rabi_1;
    let o2 = params.rabi_2;
    let (p1, p2) = (params.p_1, params.p_2);
    let d1 = det.detuning_1();
    let d2 = det.detuning_2();

    // Δγ_g = (γ₄g/γ₃g − γ₄g′/γ₃g′)·γ₃g/γ₄ with γ₄ the total decay of |4⟩.
    let dg1 = (br.gamma_41 / br.gamma_31 - br.gamma_42 / br.gamma_32) * br.gamma_31
        / params.gamma_exc;
    let dg2 = (br.gamma_42 / br.gamma_32 - br.gamma_41 / br.gamma_31) * br.gamma_32
        / params.gamma_exc;

    let d13 = Complex64::new(gam, d1);
    let d14 = Complex64::new(gam, d1 - params.omega_34);
    let d23 = Complex64::new(gam, d2);
    let d24 = Complex64::new(gam, d2 - params.omega_34);
    let d12 = Complex64::new(params.gamma_12, det.delta);

    let a = -((o1 * o1 / br.gamma_31) / d13 * (1.0 + p1 * p1 * (1.0 - dg1) * d13 / d14)
        + (o2 * o2 / br.gamma_32) / d23 * (1.0 + p2 * p2 * (1.0 - dg2) * d23 / d24))
        .re;
    let b = -(o1 * o2 / br.gamma_31) / d13 * (1.0 + p1 * p2 * (1.0 - dg1) * d13 / d14)
        + (o1 * o2 / br.gamma_32) / d23.conj()
            * (1.0 + p1 * p2 * (1.0 - dg2) * d23.conj() / d24.conj());
    let c = (o1 * o2) / d23.conj() * (1.0 + p2 * p1 * d23.conj() / d24.conj())
        - (o1 * o2) / d13 * (1.0 + p2 * p1 * d13 / d14);
    let d = -(o1 * o1) / d23.conj() * (1.0 + p1 * p1 * d23.conj() / d24.conj())
        - (o2 * o2) / d13 * (1.0 + p2 * p2 * d13 / d14)
        - d12;
    let f = -(o2 * o2 / br.gamma_32)
        * ((1.0 / d23) * (1.0 + p2 * p2 * (1.0 - dg2) * d23 / d24)).re;
    let h = (o1 * o2) / d23.conj() * (1.0 + p2 * p1 * d23.conj() / d24.conj());

    ReducedCoefficients {
        a,
        b,
        c,
        d,
        f,
        h,
        delta_gamma_1: dg1,
        delta_gamma_2: dg2,
    }
}

/// Solves the adiabatically reduced 2×2 system for (ρ₁₁, ρ̃₁₂), accounting
/// for the complex nature of ρ̃₁₂ by eliminating its conjugate:
///
/// ρ₁₁ = (−f|d|² + Re{b h d̄}) / (−a|d|² + Re{b c d̄}),
/// ρ̃₁₂ = (h − c ρ₁₁)/d.
pub fn reduced_solution(params: &ModelParams, det: &DetuningSpec) -> Result<(f64, Complex64)> {
    validate(params).into_result()?;
    let k = reduced_coefficients(params, det);
    let d_sq = k.d.norm_sqr();
    let denom = -k.a * d_sq + (k.b * k.c * k.d.conj()).re;
    let scale = k.a.abs() * d_sq + (k.b.norm() * k.c.norm() + 1e-300) * k.d.norm();
    if denom.abs() < 1e-14 * scale || k.d.norm() == 0.0 {
        return Err(Error::DegenerateReduction);
    }
    let rho11 = (-k.f * d_sq + (k.b * k.h * k.d.conj()).re) / denom;
    let rho12 = (k.h - k.c * rho11) / k.d;
    Ok((rho11, rho12))
}

/// δ₀ extraction results from the closed forms, with a numeric diagnostic
/// zero of Im ρ̃₁₂ of the reduced solution.
#[derive(Debug, Clone)]
pub struct ShiftResult {
    /// δ_AC.
    pub delta_ac: f64,
    /// δ_D.
    pub delta_d: f64,
    /// γ_D.
    pub gamma_d: f64,
    /// δ₀ = δ_AC + δ_D (first-order closed form).
    pub delta0_analytic: f64,
    /// Zero of Im ρ̃₁₂ of the reduced solution, when bracketed.
    pub delta0_numeric: Option<f64>,
    /// How the numeric value was obtained.
    pub numeric_method: &'static str,
    /// |Im ρ̃₁₂| left at the reported numeric zero.
    pub numeric_residual: Option<f64>,
}

/// Computes the analytic shift δ₀ = δ_AC + δ_D and, for diagnostics, locates
/// the Im ρ̃₁₂ = 0 point of the reduced solution by bracketed bisection on
/// δ ∈ [δ_AC − 10γ_D, δ_AC + 10γ_D] to absolute tolerance 1e-6 γ_D.
pub fn shift_weak(params: &ModelParams) -> Result<ShiftResult> {
    validate(params).into_result()?;
    let delta_ac = stark_shift(params);
    let delta_d = distortion_shift(params);
    let gd = gamma_d(params);

    let im_rho12 = |delta: f64| -> f64 {
        reduced_solution(params, &DetuningSpec::two_photon(delta))
            .map(|(_, r12)| r12.im)
            .unwrap_or(f64::NAN)
    };
    let (lo, hi) = (delta_ac - 10.0 * gd, delta_ac + 10.0 * gd);
    let numeric = bisect_zero(&im_rho12, lo, hi, 1e-6 * gd).ok();
    let residual = numeric.map(|z| im_rho12(z).abs());

    Ok(ShiftResult {
        delta_ac,
        delta_d,
        gamma_d: gd,
        delta0_analytic: delta_ac + delta_d,
        delta0_numeric: numeric,
        numeric_method: "bisection on Im rho12 (reduced solution)",
        numeric_residual: residual,
    })
}
