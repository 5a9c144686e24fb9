//! Exact steady state of the rotating-frame density-matrix equations, with a
//! fixed-step time-evolution oracle used for validation.
//!
//! The ten coupled equations for the populations and slow (tilde) coherences
//! are assembled over 16 real degrees of freedom — four populations plus the
//! real and imaginary parts of the six independent coherences — so that
//! Hermiticity and trace conservation are structural properties of the
//! representation rather than numerical ones.

use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{validate, DetuningSpec, ModelParams};

/// Real state-vector layout: populations, then Re/Im pairs per coherence.
pub mod idx {
    pub const R11: usize = 0;
    pub const R22: usize = 1;
    pub const R33: usize = 2;
    pub const R44: usize = 3;
    pub const X12: usize = 4;
    pub const Y12: usize = 5;
    pub const X13: usize = 6;
    pub const Y13: usize = 7;
    pub const X14: usize = 8;
    pub const Y14: usize = 9;
    pub const X23: usize = 10;
    pub const Y23: usize = 11;
    pub const X24: usize = 12;
    pub const Y24: usize = 13;
    pub const X34: usize = 14;
    pub const Y34: usize = 15;
}

/// Human-readable provenance label for each row of the assembled system.
pub const ROW_LABELS: [&str; 16] = [
    "d/dt rho_11",
    "d/dt rho_22",
    "d/dt rho_33",
    "d/dt rho_44",
    "d/dt Re rho_12",
    "d/dt Im rho_12",
    "d/dt Re rho_13",
    "d/dt Im rho_13",
    "d/dt Re rho_14",
    "d/dt Im rho_14",
    "d/dt Re rho_23",
    "d/dt Im rho_23",
    "d/dt Re rho_24",
    "d/dt Im rho_24",
    "d/dt Re rho_34",
    "d/dt Im rho_34",
];

/// 4×4 Hermitian rotating-frame density matrix (tilde variables).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    /// Full complex matrix; ordering |1⟩, |2⟩, |3⟩, |4⟩.
    pub matrix: Matrix4<Complex64>,
}

impl DensityMatrix {
    /// Builds the Hermitian matrix from the 16 real degrees of freedom.
    pub fn from_state(x: &SVector<f64, 16>) -> Self {
        use idx::*;
        let c = Complex64::new;
        let mut m = Matrix4::zeros();
        m[(0, 0)] = c(x[R11], 0.0);
        m[(1, 1)] = c(x[R22], 0.0);
        m[(2, 2)] = c(x[R33], 0.0);
        m[(3, 3)] = c(x[R44], 0.0);
        m[(0, 1)] = c(x[X12], x[Y12]);
        m[(0, 2)] = c(x[X13], x[Y13]);
        m[(0, 3)] = c(x[X14], x[Y14]);
        m[(1, 2)] = c(x[X23], x[Y23]);
        m[(1, 3)] = c(x[X24], x[Y24]);
        m[(2, 3)] = c(x[X34], x[Y34]);
        for i in 0..4 {
            for j in (i + 1)..4 {
                m[(j, i)] = m[(i, j)].conj();
            }
        }
        Self { matrix: m }
    }

    /// Projects back onto the 16 real degrees of freedom.
    pub fn state_vector(&self) -> SVector<f64, 16> {
        use idx::*;
        let m = &self.matrix;
        let mut x = SVector::<f64, 16>::zeros();
        x[R11] = m[(0, 0)].re;
        x[R22] = m[(1, 1)].re;
        x[R33] = m[(2, 2)].re;
        x[R44] = m[(3, 3)].re;
        x[X12] = m[(0, 1)].re;
        x[Y12] = m[(0, 1)].im;
        x[X13] = m[(0, 2)].re;
        x[Y13] = m[(0, 2)].im;
        x[X14] = m[(0, 3)].re;
        x[Y14] = m[(0, 3)].im;
        x[X23] = m[(1, 2)].re;
        x[Y23] = m[(1, 2)].im;
        x[X24] = m[(1, 3)].re;
        x[Y24] = m[(1, 3)].im;
        x[X34] = m[(2, 3)].re;
        x[Y34] = m[(2, 3)].im;
        x
    }

    /// Initial state with all population in |1⟩.
    pub fn ground_1() -> Self {
        let mut x = SVector::<f64, 16>::zeros();
        x[idx::R11] = 1.0;
        Self::from_state(&x)
    }

    /// ρ_nn for n ∈ 1..=4.
    pub fn population(&self, n: usize) -> f64 {
        self.matrix[(n - 1, n - 1)].re
    }

    /// Ground-state coherence ρ̃₁₂.
    pub fn rho12(&self) -> Complex64 {
        self.matrix[(0, 1)]
    }

    /// Optical coherence ρ̃_{g3} for g ∈ {1,2}.
    pub fn rho_g3(&self, g: usize) -> Complex64 {
        self.matrix[(g - 1, 2)]
    }

    /// Optical coherence ρ̃_{g4} for g ∈ {1,2}.
    pub fn rho_g4(&self, g: usize) -> Complex64 {
        self.matrix[(g - 1, 3)]
    }

    /// Tr ρ.
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Smallest eigenvalue, computed through the real symmetric embedding
    /// [[X, −Y], [Y, X]] of the Hermitian matrix X + iY (which has the same
    /// spectrum with doubled multiplicity).
    pub fn min_eigenvalue(&self) -> f64 {
        let mut emb = SMatrix::<f64, 8, 8>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let z = self.matrix[(i, j)];
                emb[(i, j)] = z.re;
                emb[(i + 4, j + 4)] = z.re;
                emb[(i, j + 4)] = -z.im;
                emb[(i + 4, j)] = z.im;
            }
        }
        emb.symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks Hermiticity (structural here), unit trace to 1e-12 and positive
    /// semidefiniteness to eigenvalues ≥ −1e-10.
    pub fn check_invariants(&self) -> Result<()> {
        for i in 0..4 {
            for j in 0..4 {
                let gap = (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm();
                if gap > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "density matrix not Hermitian (gap {gap:.3e})"
                    )));
                }
            }
        }
        let trace_gap = (self.trace() - 1.0).abs();
        if trace_gap > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace off by {trace_gap:.3e}"
            )));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < -1e-10 {
            return Err(Error::InvalidParameter(format!(
                "density matrix not positive semidefinite (min eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(())
    }
}

/// Steady-state linear system over the 16 real degrees of freedom.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    /// Coefficient matrix after replacing the ρ₁₁ row with the trace row.
    pub matrix: SMatrix<f64, 16, 16>,
    /// Right-hand side (unit entry on the trace row, zero elsewhere).
    pub rhs: SVector<f64, 16>,
    /// The untouched trace-conserving generator, kept for residual checks
    /// and time evolution.
    pub generator: SMatrix<f64, 16, 16>,
    /// Which equation each generator row encodes.
    pub labels: [&'static str; 16],
}

/// Assembles the trace-conserving generator G with ẋ = G·x over the real
/// state layout of [`idx`].
///
/// Decoherence rates: Γ on every ground-excited coherence, Γ₁₂ on the
/// ground-state coherence, and γ on the excited-excited coherence ρ₃₄ (the
/// radiative floor (γ₃ + γ₄)/2 of the uniform model).
pub fn generator(params: &ModelParams, det: &DetuningSpec) -> SMatrix<f64, 16, 16> {
    use idx::*;
    let gam_opt = params.gamma_opt;
    let gam_exc = params.gamma_exc;
    let gam_12 = params.gamma_12;
    let gam_34 = params.gamma_exc;
    let w34 = params.omega_34;
    let o1 = params.rabi_1;
    let o2 = params.rabi_2;
    let p1o1 = params.p_1 * o1;
    let p2o2 = params.p_2 * o2;
    let d1 = det.detuning_1();
    let d2 = det.detuning_2();
    let delta = det.delta;
    let b = &params.branching;

    let mut g = SMatrix::<f64, 16, 16>::zeros();

    // Populations.
    g[(R11, Y13)] = 2.0 * o1;
    g[(R11, Y14)] = 2.0 * p1o1;
    g[(R11, R33)] = b.gamma_31;
    g[(R11, R44)] = b.gamma_41;

    g[(R22, Y23)] = 2.0 * o2;
    g[(R22, Y24)] = 2.0 * p2o2;
    g[(R22, R33)] = b.gamma_32;
    g[(R22, R44)] = b.gamma_42;

    g[(R33, Y13)] = -2.0 * o1;
    g[(R33, Y23)] = -2.0 * o2;
    g[(R33, R33)] = -gam_exc;

    g[(R44, Y14)] = -2.0 * p1o1;
    g[(R44, Y24)] = -2.0 * p2o2;
    g[(R44, R44)] = -gam_exc;

    // Ground-state coherence rho_12.
    g[(X12, Y23)] = o1;
    g[(X12, Y13)] = o2;
    g[(X12, Y24)] = p1o1;
    g[(X12, Y14)] = p2o2;
    g[(X12, Y12)] = delta;
    g[(X12, X12)] = -gam_12;

    g[(Y12, X23)] = o1;
    g[(Y12, X13)] = -o2;
    g[(Y12, X24)] = p1o1;
    g[(Y12, X14)] = -p2o2;
    g[(Y12, X12)] = -delta;
    g[(Y12, Y12)] = -gam_12;

    // Optical coherence rho_13.
    g[(X13, Y34)] = p1o1;
    g[(X13, Y12)] = o2;
    g[(X13, Y13)] = d1;
    g[(X13, X13)] = -gam_opt;

    g[(Y13, X34)] = p1o1;
    g[(Y13, R33)] = o1;
    g[(Y13, X12)] = -o2;
    g[(Y13, R11)] = -o1;
    g[(Y13, X13)] = -d1;
    g[(Y13, Y13)] = -gam_opt;

    // Optical coherence rho_14.
    g[(X14, Y34)] = -o1;
    g[(X14, Y12)] = p2o2;
    g[(X14, Y14)] = d1 - w34;
    g[(X14, X14)] = -gam_opt;

    g[(Y14, X34)] = o1;
    g[(Y14, R44)] = p1o1;
    g[(Y14, X12)] = -p2o2;
    g[(Y14, R11)] = -p1o1;
    g[(Y14, X14)] = -(d1 - w34);
    g[(Y14, Y14)] = -gam_opt;

    // Optical coherence rho_23.
    g[(X23, Y34)] = p2o2;
    g[(X23, Y12)] = -o1;
    g[(X23, Y23)] = d2;
    g[(X23, X23)] = -gam_opt;

    g[(Y23, X34)] = p2o2;
    g[(Y23, R33)] = o2;
    g[(Y23, X12)] = -o1;
    g[(Y23, R22)] = -o2;
    g[(Y23, X23)] = -d2;
    g[(Y23, Y23)] = -gam_opt;

    // Optical coherence rho_24.
    g[(X24, Y34)] = -o2;
    g[(X24, Y12)] = -p1o1;
    g[(X24, Y24)] = d2 - w34;
    g[(X24, X24)] = -gam_opt;

    g[(Y24, X34)] = o2;
    g[(Y24, R44)] = p2o2;
    g[(Y24, X12)] = -p1o1;
    g[(Y24, R22)] = -p2o2;
    g[(Y24, X24)] = -(d2 - w34);
    g[(Y24, Y24)] = -gam_opt;

    // Excited-excited coherence rho_34.
    g[(X34, Y14)] = -o1;
    g[(X34, Y13)] = -p1o1;
    g[(X34, Y24)] = -o2;
    g[(X34, Y23)] = -p2o2;
    g[(X34, Y34)] = -w34;
    g[(X34, X34)] = -gam_34;

    g[(Y34, X14)] = o1;
    g[(Y34, X13)] = -p1o1;
    g[(Y34, X24)] = o2;
    g[(Y34, X23)] = -p2o2;
    g[(Y34, X34)] = w34;
    g[(Y34, Y34)] = -gam_34;

    g
}

/// Assembles the steady-state system: the generator with the ρ₁₁ row
/// replaced by the trace constraint Σ ρ_nn = 1.
pub fn build_system(params: &ModelParams, det: &DetuningSpec) -> Result<LinearSystem> {
    validate(params).into_result()?;
    let gen = generator(params, det);
    let mut matrix = gen;
    for col in 0..16 {
        matrix[(idx::R11, col)] = 0.0;
    }
    matrix[(idx::R11, idx::R11)] = 1.0;
    matrix[(idx::R11, idx::R22)] = 1.0;
    matrix[(idx::R11, idx::R33)] = 1.0;
    matrix[(idx::R11, idx::R44)] = 1.0;
    let mut rhs = SVector::<f64, 16>::zeros();
    rhs[idx::R11] = 1.0;
    Ok(LinearSystem {
        matrix,
        rhs,
        generator: gen,
        labels: ROW_LABELS,
    })
}

fn inf_norm(m: &SMatrix<f64, 16, 16>) -> f64 {
    (0..16)
        .map(|i| (0..16).map(|j| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves the steady state exactly (no adiabatic elimination).
///
/// Post-conditions checked here: the full generator residual ‖G·x‖∞ ≤ 1e-10
/// (excluding the substituted trace row, whose residual is the trace gap),
/// and all [`DensityMatrix`] invariants.
pub fn solve_steady(params: &ModelParams, det: &DetuningSpec) -> Result<DensityMatrix> {
    let sys = build_system(params, det)?;
    let lu = sys.matrix.lu();
    let x = lu.solve(&sys.rhs).ok_or(Error::SingularSystem)?;

    let inv = lu.try_inverse().ok_or(Error::SingularSystem)?;
    let cond = inf_norm(&sys.matrix) * inf_norm(&inv);
    if cond > 1e12 {
        return Err(Error::IllConditioned(cond));
    }

    let residual_vec = sys.generator * x;
    let residual = residual_vec.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tolerance = 1e-10;
    if residual > tolerance {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance,
        });
    }

    let rho = DensityMatrix::from_state(&x);
    rho.check_invariants()?;
    Ok(rho)
}

/// Fixed-step classical 4th-order integration of ẋ = G·x, used as the
/// validation oracle for [`solve_steady`].
///
/// The step bound dt ≤ 0.1 / max(Γ, ω₃₄, |Δ₁|, |Δ₂|) keeps the explicit
/// scheme well inside its stability region (γ ≤ 2Γ always holds, so the Γ
/// term also covers the decay rates).
pub fn evolve(
    params: &ModelParams,
    det: &DetuningSpec,
    rho0: &DensityMatrix,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    validate(params).into_result()?;
    rho0.check_invariants()?;
    if !(t_final >= 0.0) || !(dt > 0.0) {
        return Err(Error::InvalidParameter(
            "t_final must be >= 0 and dt > 0".into(),
        ));
    }
    let fastest = params
        .gamma_opt
        .max(params.omega_34)
        .max(det.detuning_1().abs())
        .max(det.detuning_2().abs());
    let bound = 0.1 / fastest;
    if dt > bound {
        return Err(Error::StepTooLarge { dt, bound });
    }
    if t_final == 0.0 {
        return Ok(rho0.clone());
    }

    let g = generator(params, det);
    let mut x = rho0.state_vector();
    let n_full = (t_final / dt).floor() as u64;
    let remainder = t_final - (n_full as f64) * dt;

    let step = |x: &SVector<f64, 16>, h: f64| -> SVector<f64, 16> {
        let k1 = g * x;
        let k2 = g * (x + k1 * (0.5 * h));
        let k3 = g * (x + k2 * (0.5 * h));
        let k4 = g * (x + k3 * h);
        x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
    };

    for _ in 0..n_full {
        x = step(&x, dt);
    }
    if remainder > 0.0 {
        x = step(&x, remainder);
    }

    let rho = DensityMatrix::from_state(&x);
    let trace_gap = (rho.trace() - 1.0).abs();
    if trace_gap > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "trace drifted by {trace_gap:.3e} during evolution"
        )));
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uniform_preset;
    use approx::assert_abs_diff_eq;

    fn fig2_params() -> ModelParams {
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
    fn population_rows_sum_to_zero_before_trace_substitution() {
        let p = fig2_params();
        let g = generator(&p, &DetuningSpec::two_photon(3e-5));
        for col in 0..16 {
            let sum: f64 =
                g[(idx::R11, col)] + g[(idx::R22, col)] + g[(idx::R33, col)] + g[(idx::R44, col)];
            assert_eq!(sum, 0.0, "trace not conserved in column {col}");
        }
    }

    #[test]
    fn fourth_level_decouples_at_p_zero() {
        let mut p = fig2_params();
        p.p_1 = 0.0;
        p.p_2 = 0.0;
        let g = generator(&p, &DetuningSpec::two_photon(1e-5));
        // The |4⟩ sector receives no drive from the Λ subsystem, so it is an
        // invariant subspace that stays empty: its rows carry no Λ columns.
        // (The converse is false — Λ populations are still fed by the |4⟩
        // spontaneous decay terms.)
        let lambda_cols = [
            idx::R11,
            idx::R22,
            idx::R33,
            idx::X12,
            idx::Y12,
            idx::X13,
            idx::Y13,
            idx::X23,
            idx::Y23,
        ];
        let four_rows = [
            idx::R44,
            idx::X14,
            idx::Y14,
            idx::X24,
            idx::Y24,
            idx::X34,
            idx::Y34,
        ];
        for &r in &four_rows {
            for &c in &lambda_cols {
                assert_eq!(g[(r, c)], 0.0, "row {r} couples to column {c}");
            }
        }
    }

    #[test]
    fn pump_out_into_uncoupled_ground_state() {
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.05, 0.0, 0.0, 0.0).unwrap();
        let rho = solve_steady(&p, &DetuningSpec::two_photon(0.3e-3)).unwrap();
        assert_abs_diff_eq!(rho.population(2), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.population(1), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.rho12().norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn perfect_dark_state_of_the_three_level_lambda() {
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.03, 0.01, 0.0, 0.0).unwrap();
        let rho = solve_steady(&p, &DetuningSpec::two_photon(0.0)).unwrap();
        let expected = -p.rabi_1 * p.rabi_2 / p.rabi_sq_sum();
        assert_abs_diff_eq!(rho.rho12().re, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.rho12().im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.population(3), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.population(4), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn steady_state_invariants_on_fig2_params() {
        let p = fig2_params();
        let rho = solve_steady(&p, &DetuningSpec::two_photon(1.6e-5)).unwrap();
        rho.check_invariants().unwrap();
        assert!(rho.population(3) > 0.0);
    }

    #[test]
    fn swap_symmetry_relabels_the_solution() {
        let p = uniform_preset(2.0, 1.0, 1e-6, 1.5, 0.02, 0.05, 0.7, -1.3).unwrap();
        let delta = 3.7e-4;
        let rho = solve_steady(&p, &DetuningSpec::two_photon(delta)).unwrap();
        let rho_sw = solve_steady(&p.swapped(), &DetuningSpec::two_photon(-delta)).unwrap();
        assert_abs_diff_eq!(rho.population(1), rho_sw.population(2), epsilon = 1e-10);
        assert_abs_diff_eq!(rho.population(2), rho_sw.population(1), epsilon = 1e-10);
        assert_abs_diff_eq!(rho.rho12().re, rho_sw.rho12().re, epsilon = 1e-10);
        assert_abs_diff_eq!(rho.rho12().im, -rho_sw.rho12().im, epsilon = 1e-10);
    }

    #[test]
    fn evolve_zero_time_is_identity() {
        let p = fig2_params();
        let rho0 = DensityMatrix::ground_1();
        let rho = evolve(&p, &DetuningSpec::two_photon(0.0), &rho0, 0.0, 0.01).unwrap();
        assert_eq!(rho, rho0);
    }

    #[test]
    fn evolve_rejects_oversized_steps() {
        let p = fig2_params();
        let rho0 = DensityMatrix::ground_1();
        let err = evolve(&p, &DetuningSpec::two_photon(0.0), &rho0, 1.0, 0.5).unwrap_err();
        assert!(matches!(err, Error::StepTooLarge { .. }));
    }

    #[test]
    fn long_time_evolution_reaches_the_steady_state() {
        // Moderate drive so the pumping time is short enough for a unit test.
        let p = uniform_preset(2.0, 1.0, 0.0, 2.0, 0.08, 0.06, 1.0, -1.0).unwrap();
        let det = DetuningSpec::two_photon(2e-3);
        let gamma_d = p.rabi_sq_sum() / p.gamma_opt;
        let rho_ss = solve_steady(&p, &det).unwrap();
        let rho_t = evolve(
            &p,
            &det,
            &DensityMatrix::ground_1(),
            50.0 / gamma_d,
            0.05 / p.omega_34,
        )
        .unwrap();
        let gap = (rho_t.state_vector() - rho_ss.state_vector())
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        assert!(gap < 1e-8, "oracle gap {gap:.3e}");
    }

    #[test]
    fn three_level_reduction_matches_analytic_lambda_coherence() {
        // p = 0: the exact solution reduces to the three-level Λ form
        // ρ̃₁₂ = −Ω₁Ω₂ / (Γ(γ_D + iδ)) to first order in Ω²/Γ².
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.01, 0.02, 0.0, 0.0).unwrap();
        let gamma_d = p.rabi_sq_sum() / p.gamma_opt;
        let delta = 0.5 * gamma_d;
        let rho = solve_steady(&p, &DetuningSpec::two_photon(delta)).unwrap();
        let expected = -p.rabi_1 * p.rabi_2
            / (p.gamma_opt * Complex64::new(gamma_d, delta));
        let rel = (rho.rho12() - expected).norm() / expected.norm();
        assert!(rel < 10.0 * p.intensity(), "relative gap {rel:.3e}");
    }
}
