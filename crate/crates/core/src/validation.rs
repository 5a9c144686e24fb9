//! Self-contained validation suites, one per acceptance criterion of the
//! artifact. Each suite returns a [`SuiteOutcome`] so the same code backs
//! both the `cpt-shift validate` subcommand and the acceptance integration
//! test. All randomness is seeded; suites are deterministic.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{uniform_preset, DetuningSpec, ModelParams};
use crate::observables::{
    corrected_coefficient, reconstruct_rational, tabulated_coefficients, SolverPath,
};
use crate::shift::{
    chi_extremum_polynomial, contrast, rho_exc_extremum, series_coefficients, shift_from_rho12,
    DEFAULT_X_GRID,
};
use crate::steady_state::{evolve, solve_steady, DensityMatrix};
use crate::weak_coupling::{distortion_shift, gamma_d, gamma_d_effective, stark_shift};

/// Verdict of one validation suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    /// Short stable suite name (e.g. "criterion 4").
    pub name: String,
    /// Whether every check in the suite held.
    pub passed: bool,
    /// Human-readable evidence: measured numbers and bounds.
    pub details: String,
}

impl SuiteOutcome {
    fn from_checks(name: &str, result: Result<(bool, String)>) -> Self {
        match result {
            Ok((passed, details)) => Self {
                name: name.to_string(),
                passed,
                details,
            },
            Err(e) => Self {
                name: name.to_string(),
                passed: false,
                details: format!("suite aborted: {e}"),
            },
        }
    }
}

fn fig2_params(omega_34: f64) -> ModelParams {
    uniform_preset(
        2.0,
        1.0,
        0.0,
        omega_34,
        (9e-5f64).sqrt(),
        (1e-5f64).sqrt(),
        1.0,
        -1.0,
    )
    .expect("fig2 parameters are valid")
}

/// Fig. 4-style drive: strongly asymmetric intensities at total 0.1 Γ².
fn fig4_params(omega_34: f64, p_1: f64, p_2: f64) -> ModelParams {
    let o1: f64 = 10.0 * 0.1 / 11.0;
    let o2: f64 = 0.1 / 11.0;
    uniform_preset(2.0, 1.0, 0.0, omega_34, o1.sqrt(), o2.sqrt(), p_1, p_2)
        .expect("fig4 parameters are valid")
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Criterion 1: the direct steady-state solve agrees with long-time
/// integration of the equations of motion to 1e-8 max-norm on 10 seeded
/// random draws.
pub fn criterion_1() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 1 (solver vs time evolution)", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            // Draw ranges keep 50/gamma_D integration horizons tractable
            // while still spanning weak drives, both splitting regimes,
            // and both signs of the dipole ratios.
            let params = uniform_preset(
                2.0,
                1.0,
                if i % 2 == 0 { 0.0 } else { 1e-6 },
                log_uniform(&mut rng, 0.1, 20.0),
                log_uniform(&mut rng, 0.05, 0.1),
                log_uniform(&mut rng, 0.05, 0.1),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            )?;
            let gd = gamma_d(&params);
            let det = DetuningSpec::two_photon(rng.gen_range(-1.0..1.0) * gd);
            let direct = solve_steady(&params, &det)?;
            let fastest = params
                .gamma_opt
                .max(params.omega_34)
                .max(det.detuning_1().abs())
                .max(det.detuning_2().abs());
            let evolved = evolve(
                &params,
                &det,
                &DensityMatrix::ground_1(),
                50.0 / gd,
                0.09 / fastest,
            )?;
            let gap = (direct.state_vector() - evolved.state_vector())
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()));
            worst = worst.max(gap);
        }
        Ok((
            worst <= 1e-8,
            format!("10 draws, worst max-norm gap {worst:.3e} (bound 1e-8)"),
        ))
    })())
}

/// Criterion 2: the reconstructed rational-form coefficients match the
/// hand-derived table on the entries known to be exact, and the frozen
/// corrections repair five of the seven defective entries; B3 and B5
/// remain documented defects.
pub fn criterion_2() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 2 (coefficient table)", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst_exact: f64 = 0.0;
        let mut worst_fixed: f64 = 0.0;
        let mut defect_seen = false;
        for _ in 0..5 {
            let params = uniform_preset(
                2.0,
                1.0,
                0.0,
                log_uniform(&mut rng, 0.2, 20.0),
                log_uniform(&mut rng, 0.01, 0.1),
                log_uniform(&mut rng, 0.01, 0.1),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            )?;
            let tab = tabulated_coefficients(&params, 1)?;
            let rec = reconstruct_rational(&params, 1)?;
            let rel = |t: f64, r: f64| (t - r).abs() / r.abs().max(f64::MIN_POSITIVE);
            // Entries exact as printed (B6 under the evident reading of a
            // typeset artifact in its prefactor).
            for n in [1, 5, 6, 7] {
                worst_exact = worst_exact.max(rel(tab.a[n], rec.a[n]));
            }
            for n in [1, 4, 6, 8, 9] {
                worst_exact = worst_exact.max(rel(tab.b[n], rec.b[n]));
            }
            // Frozen corrections for the recovered defects.
            for (fam, n) in [('A', 2), ('A', 3), ('A', 4), ('B', 2), ('B', 7)] {
                let fixed = corrected_coefficient(&params, fam, n)
                    .expect("correction exists for this entry");
                let r = if fam == 'A' { rec.a[n] } else { rec.b[n] };
                worst_fixed = worst_fixed.max(rel(fixed, r));
            }
            // The unrecovered defects really are defects.
            defect_seen |= rel(tab.b[3], rec.b[3]) > 1e-6 || rel(tab.b[5], rec.b[5]) > 1e-6;
        }
        let passed = worst_exact <= 1e-8 && worst_fixed <= 1e-8;
        Ok((
            passed,
            format!(
                "5 draws; exact entries (incl. B6 reading) rel err {worst_exact:.3e}, \
                 corrected A2/A3/A4/B2/B7 rel err {worst_fixed:.3e} (bound 1e-8); \
                 B3/B5 carry unrepaired defects (observed: {defect_seen})"
            ),
        ))
    })())
}

/// Criterion 3: the residual of the first-order shift formula falls at
/// least as fast as second order when the excited-state splitting doubles.
pub fn criterion_3() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 3 (weak-coupling convergence)", (|| {
        let residual = |omega: f64| -> Result<f64> {
            let p = fig2_params(omega);
            let exact = shift_from_rho12(&p, SolverPath::Exact)?.delta0;
            Ok((exact - stark_shift(&p) - distortion_shift(&p)).abs())
        };
        let r10 = residual(10.0)?;
        let r20 = residual(20.0)?;
        let r40 = residual(40.0)?;
        let (q1, q2) = (r20 / r10, r40 / r20);
        Ok((
            q1 <= 0.35 && q2 <= 0.35,
            format!("R(20)/R(10) = {q1:.3}, R(40)/R(20) = {q2:.3} (bound 0.35)"),
        ))
    })())
}

/// Criterion 4: the exact-solver dispersive zero reproduces the derived
/// closed-form shift 1.584e-5 Γ within 15%.
pub fn criterion_4() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 4 (reference shift)", (|| {
        let expected = 1.584_158_415_841_584_2e-5;
        let got = shift_from_rho12(&fig2_params(10.0), SolverPath::Exact)?.delta0;
        let rel = (got - expected).abs() / expected;
        Ok((
            rel <= 0.15,
            format!("delta0 = {got:.6e} vs closed form {expected:.6e} (rel {rel:.3}, bound 0.15)"),
        ))
    })())
}

/// Criterion 5: cancellation identities — equal dipole ratios cancel the
/// closed-form shift to machine precision and the exact shift to 1e-3 γ_D;
/// the pure three-level system (p = 0) carries no shift at all.
pub fn criterion_5() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 5 (cancellation identities)", (|| {
        // (a) p1 = p2 with unequal drives.
        let pa = uniform_preset(
            2.0,
            1.0,
            0.0,
            10.0,
            (9e-5f64).sqrt(),
            (1e-5f64).sqrt(),
            1.3,
            1.3,
        )?;
        let closed = stark_shift(&pa) + distortion_shift(&pa);
        let eps_bound = 4.0 * f64::EPSILON * stark_shift(&pa).abs();
        let gd_a = gamma_d(&pa);
        let exact_a = shift_from_rho12(&pa, SolverPath::Exact)?.delta0;
        let a_ok = closed.abs() <= eps_bound && exact_a.abs() <= 1e-3 * gd_a;
        // (b) p1 = p2 = 0.
        let pb = uniform_preset(2.0, 1.0, 0.0, 10.0, 0.008, 0.004, 0.0, 0.0)?;
        let gd_b = gamma_d(&pb);
        let exact_b = shift_from_rho12(&pb, SolverPath::Exact)?.delta0;
        let b_ok = exact_b.abs() <= 1e-6 * gd_b;
        Ok((
            a_ok && b_ok,
            format!(
                "(a) closed sum {closed:.2e} (bound {eps_bound:.2e}), exact {:.2e} gamma_D; \
                 (b) exact {:.2e} gamma_D (bound 1e-6)",
                exact_a / gd_a,
                exact_b / gd_b
            ),
        ))
    })())
}

/// Criterion 6: resonance disappearance — antisymmetric dipole ratios kill
/// the contrast at small splitting but not at large splitting, while equal
/// ratios keep high contrast everywhere.
pub fn criterion_6() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 6 (resonance disappearance)", (|| {
        let c_small = contrast(&fig4_params(0.1, -1.0, 1.0))?;
        let c_large = contrast(&fig4_params(10.0, -1.0, 1.0))?;
        let mut sym = Vec::new();
        for omega in [0.1, 0.5, 1.0, 10.0] {
            sym.push(contrast(&fig4_params(omega, 1.0, 1.0))?);
        }
        let sym_ok = sym.iter().all(|&c| c > 0.1);
        Ok((
            c_small < 1e-3 && c_large > 0.1 && sym_ok,
            format!(
                "antisymmetric: C(0.1) = {c_small:.2e} (< 1e-3), C(10) = {c_large:.3} (> 0.1); \
                 symmetric C = {sym:.3?} (all > 0.1)"
            ),
        ))
    })())
}

/// Criterion 7: shift-map structure along the p2 axis at strong coupling —
/// zero crossing at p2 = p1 and decay of the width-normalized shift after
/// an interior extremum.
pub fn criterion_7() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 7 (shift-map structure)", (|| {
        let make = |p2: f64| {
            uniform_preset(2.0, 1.0, 0.0, 0.5, (5e-5f64).sqrt(), (5e-5f64).sqrt(), 1.0, p2)
        };
        let p_sym = make(1.0)?;
        let at_sym = chi_extremum_polynomial(&p_sym)?.delta0;
        let zero_ok = at_sym.abs() <= 1e-3 * gamma_d(&p_sym);
        // Width-normalized shift along p2: the raw shift grows with the
        // off-resonant pumping, but the shift-to-width ratio peaks and then
        // decays toward large p2.
        let mut normalized = Vec::new();
        for k in 2..=10 {
            let p = make(k as f64)?;
            let d0 = chi_extremum_polynomial(&p)?.delta0;
            normalized.push((d0 / gamma_d_effective(&p)).abs());
        }
        let last = *normalized.last().unwrap();
        let max_interior = normalized[..normalized.len() - 1]
            .iter()
            .fold(0.0f64, |m, &v| m.max(v));
        Ok((
            zero_ok && last < max_interior,
            format!(
                "delta0(p2=1) = {:.2e} gamma_D (bound 1e-3); normalized |delta0|/gamma_D_eff \
                 ends at {last:.3e} vs interior max {max_interior:.3e}",
                at_sym / gamma_d(&p_sym)
            ),
        ))
    })())
}

/// Criterion 8: on the cancellation line p2 Ω2² = −p1 Ω1² the linear series
/// coefficient vanishes while the quadratic one stays resolved.
pub fn criterion_8() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 8 (linear-coefficient null line)", (|| {
        let shape = |p2: f64| uniform_preset(2.0, 1.0, 0.0, 2.0, 0.01, 0.01, 1.0, p2);
        let on_line = series_coefficients(&shape(-2.0)?, 2.0, &DEFAULT_X_GRID)?;
        let off_line = series_coefficients(&shape(-1.0)?, 2.0, &DEFAULT_X_GRID)?;
        let a1_ok = on_line.alpha1.abs() <= 0.05 * off_line.alpha1.abs();
        let a2_ok = on_line.alpha2.abs() > 3.0 * on_line.alpha2_sigma;
        Ok((
            a1_ok && a2_ok,
            format!(
                "alpha1(-2) = {:.3e} vs 0.05*alpha1(-1) = {:.3e}; alpha2(-2) = {:.3e} \
                 (3 sigma = {:.3e})",
                on_line.alpha1.abs(),
                0.05 * off_line.alpha1.abs(),
                on_line.alpha2,
                3.0 * on_line.alpha2_sigma
            ),
        ))
    })())
}

/// Criterion 9: the fully compensated configuration (equal drives, opposite
/// unit dipole ratios) carries no shift at any intensity on the default
/// grid.
pub fn criterion_9() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 9 (complete shift null)", (|| {
        let shape = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.01, 0.01, 1.0, -1.0)?;
        let series = series_coefficients(&shape, 1.0, &DEFAULT_X_GRID)?;
        let mut worst: f64 = 0.0;
        for (&x, &d0) in series.x_grid.iter().zip(&series.delta0) {
            // gamma_D at this grid point (gamma_12 = 0, Gamma = 1): x.
            worst = worst.max(d0.abs() / x);
        }
        Ok((
            worst <= 1e-6,
            format!("worst |S|/gamma_D across grid = {worst:.3e} (bound 1e-6)"),
        ))
    })())
}

/// Criterion 10: the three independent shift extractors agree pairwise in
/// the weak-coupling regime on 5 seeded draws.
pub fn criterion_10() -> SuiteOutcome {
    SuiteOutcome::from_checks("criterion 10 (method concordance)", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst_ratio: f64 = 0.0;
        for _ in 0..5 {
            let params = uniform_preset(
                2.0,
                1.0,
                0.0,
                20.0,
                log_uniform(&mut rng, 0.005, 0.02),
                log_uniform(&mut rng, 0.005, 0.02),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            )?;
            let gd = gamma_d(&params);
            let a = shift_from_rho12(&params, SolverPath::Exact)?.delta0;
            let b = chi_extremum_polynomial(&params)?.delta0;
            let c = rho_exc_extremum(&params)?.delta0;
            for (x, y) in [(a, b), (a, c), (b, c)] {
                let bound = 0.1 * x.abs() + 1e-3 * gd;
                worst_ratio = worst_ratio.max((x - y).abs() / bound);
            }
        }
        Ok((
            worst_ratio <= 1.0,
            format!("5 draws; worst pairwise gap = {worst_ratio:.3} of the allowed bound"),
        ))
    })())
}

/// Runs all ten suites in order.
pub fn run_all() -> Vec<SuiteOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}

/// Suite names in execution order, for `validate --list`.
pub fn suite_names() -> Vec<&'static str> {
    vec![
        "criterion 1 (solver vs time evolution)",
        "criterion 2 (coefficient table)",
        "criterion 3 (weak-coupling convergence)",
        "criterion 4 (reference shift)",
        "criterion 5 (cancellation identities)",
        "criterion 6 (resonance disappearance)",
        "criterion 7 (shift-map structure)",
        "criterion 8 (linear-coefficient null line)",
        "criterion 9 (complete shift null)",
        "criterion 10 (method concordance)",
    ]
}
