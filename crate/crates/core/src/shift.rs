//! Resonance-shift extraction: locating the CPT feature position δ₀ by
//! three independent routes (dispersive zero, rational-form extremum
//! polynomial, direct minimization of ρ_exc), plus contrast and the
//! small-intensity series δ₀(x) = α₁x + α₂x².

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::model::{validate, DetuningSpec, ModelParams};
use crate::observables::{
    chi_adiabatic, excited_population, reconstruct_rational, RationalChi, SolverPath,
};
use crate::par;
use crate::search::{bisect_zero, bracket_zero, minimize_interior};
use crate::steady_state::solve_steady;
use crate::weak_coupling::{gamma_d, stark_shift};

/// How a reported extremum was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumMethod {
    /// Companion-matrix roots of the extremum polynomial.
    PolynomialRoots,
    /// Golden-section minimization of the signal.
    GoldenSection,
    /// Bisection on a sign change.
    Bisection,
}

/// A classified real stationary point of the line shape.
#[derive(Debug, Clone, Copy)]
pub struct ClassifiedRoot {
    /// Position in Γ units.
    pub delta: f64,
    /// Second finite difference of the signal at the root.
    pub curvature: f64,
    /// Whether the root is a minimum of the signal.
    pub is_minimum: bool,
}

/// Located resonance extremum with its search provenance.
#[derive(Debug, Clone)]
pub struct ExtremumReport {
    /// The resonance position δ₀ in Γ units.
    pub delta0: f64,
    /// Signal curvature at δ₀ (positive for the CPT minimum).
    pub curvature: f64,
    /// Search window (lo, hi) in Γ units.
    pub window: (f64, f64),
    /// Search method that produced `delta0`.
    pub method: ExtremumMethod,
    /// All classified real stationary points found inside the window.
    pub roots: Vec<ClassifiedRoot>,
}

/// Standard half-width of the δ search window: wide enough to hold the
/// power-broadened line and the full Stark displacement with margin.
fn window_half_width(params: &ModelParams) -> f64 {
    let gd = gamma_d(params);
    let dac = stark_shift(params).abs();
    (10.0 * gd).max(2.0 * dac + 10.0 * gd)
}

fn rho_exc_point(params: &ModelParams, delta: f64, path: SolverPath) -> Result<f64> {
    let det = DetuningSpec::two_photon(delta);
    match path {
        SolverPath::Exact => {
            let rho = solve_steady(params, &det)?;
            Ok(excited_population(params, &rho))
        }
        _ => {
            let chi1 = chi_adiabatic(params, &det, 1)?;
            let chi2 = chi_adiabatic(params, &det, 2)?;
            Ok((2.0 / params.gamma_exc)
                * (params.rabi_1 * params.rabi_1 * chi1.im
                    + params.rabi_2 * params.rabi_2 * chi2.im))
        }
    }
}

/// Second finite difference of ρ_exc at `delta` with step 0.01γ_D.
fn rho_exc_curvature(params: &ModelParams, delta: f64, path: SolverPath) -> Result<f64> {
    let h = 0.01 * gamma_d(params);
    let lo = rho_exc_point(params, delta - h, path)?;
    let mid = rho_exc_point(params, delta, path)?;
    let hi = rho_exc_point(params, delta + h, path)?;
    Ok((hi - 2.0 * mid + lo) / (h * h))
}

/// Runs a closure-based search while capturing the first solver error seen
/// inside the closure, so a failure is reported instead of a spurious
/// search outcome.
struct ErrorTrap {
    first: RefCell<Option<Error>>,
}

impl ErrorTrap {
    fn new() -> Self {
        Self {
            first: RefCell::new(None),
        }
    }

    fn eval(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.first.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn check<T>(&self, outcome: Result<T>) -> Result<T> {
        if let Some(e) = self.first.borrow_mut().take() {
            return Err(e);
        }
        outcome
    }
}

/// Locates δ₀ as the zero of the dispersive ground-state coherence
/// Im ρ̃₁₂(δ), bisected to 10⁻⁷γ_D inside [δ_AC − 10γ_D, δ_AC + 10γ_D].
///
/// `path` selects the solver: `Exact` for the full steady state,
/// `Adiabatic` for the reduced 2×2 solution (`Rational` is not meaningful
/// here and is rejected).
pub fn shift_from_rho12(params: &ModelParams, path: SolverPath) -> Result<ExtremumReport> {
    validate(params).into_result()?;
    if path == SolverPath::Rational {
        return Err(Error::Unsupported(
            "shift_from_rho12 works on a solver path (exact|adiabatic)".into(),
        ));
    }
    let gd = gamma_d(params);
    let dac = stark_shift(params);
    let (lo, hi) = (dac - 10.0 * gd, dac + 10.0 * gd);

    let trap = ErrorTrap::new();
    let f = |delta: f64| -> f64 {
        let det = DetuningSpec::two_photon(delta);
        let im = match path {
            SolverPath::Exact => solve_steady(params, &det).map(|rho| rho.rho12().im),
            _ => crate::weak_coupling::reduced_solution(params, &det).map(|(_, r12)| r12.im),
        };
        trap.eval(im)
    };
    let delta0 = trap.check(bisect_zero(&f, lo, hi, 1e-7 * gd))?;
    let curvature = rho_exc_curvature(params, delta0, path)?;
    Ok(ExtremumReport {
        delta0,
        curvature,
        window: (lo, hi),
        method: ExtremumMethod::Bisection,
        roots: vec![ClassifiedRoot {
            delta: delta0,
            curvature,
            is_minimum: curvature > 0.0,
        }],
    })
}

// --- dense polynomial helpers (ascending coefficients) ---------------------

fn poly_deriv(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &v)| (k as f64) * v)
        .collect()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_val(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

/// Drops leading coefficients that are negligible relative to the largest.
fn poly_trim(mut c: Vec<f64>) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    while c.len() > 1 && c.last().unwrap().abs() <= 1e-13 * scale {
        c.pop();
    }
    c
}

/// All complex roots of the (trimmed, monic-normalized) polynomial via
/// companion-matrix eigenvalues.
fn poly_roots(c: &[f64]) -> Result<Vec<num_complex::Complex64>> {
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::PolynomialIllConditioned(
            "non-finite coefficient".into(),
        ));
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    if lead == 0.0 {
        return Err(Error::PolynomialIllConditioned("zero leading term".into()));
    }
    let companion = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    // A bounded Schur iteration instead of `complex_eigenvalues`: badly
    // scaled companions can keep the unbounded QR iteration spinning
    // forever, and the caller has a bisection fallback for that case.
    let schur = nalgebra::linalg::Schur::try_new(companion, f64::EPSILON, 100 * n.max(10))
        .ok_or_else(|| Error::PolynomialIllConditioned("Schur iteration stalled".into()))?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Locates δ₀ as a root of the extremum polynomial of the rational χ″ form.
///
/// With the common δ factor divided out (A₀ = B₀ = 0 exactly), the
/// stationarity condition N′D − ND′ = 0 is a degree-13 polynomial — the
/// unreduced degree-15 form carries a spurious double root at δ = 0 on top
/// of the same root set. Roots come from companion-matrix eigenvalues on
/// the δ/s rescaled polynomial; real minima inside the standard window are
/// classified by the χ″ second difference, the one closest to δ = 0 is
/// Newton-polished, and a dense sign-change scan backstops conditioning
/// failures.
pub fn chi_extremum_polynomial(params: &ModelParams) -> Result<ExtremumReport> {
    chi_extremum_polynomial_in(params, 1.0)
}

fn chi_extremum_polynomial_in(params: &ModelParams, window_factor: f64) -> Result<ExtremumReport> {
    validate(params).into_result()?;
    let rat = reconstruct_rational(params, 1)?;
    let gd = gamma_d(params);
    let dac = stark_shift(params);
    let w = window_half_width(params) * window_factor;
    let window = (-w, w);

    // Reduced numerator/denominator (common δ factor removed).
    let num: Vec<f64> = rat.a[1..].to_vec();
    let den: Vec<f64> = rat.b[1..].to_vec();
    let e = poly_trim({
        let mut e = poly_mul(&poly_deriv(&num), &den);
        let nd = poly_mul(&num, &poly_deriv(&den));
        for (a, b) in e.iter_mut().zip(nd.iter()) {
            *a -= b;
        }
        e
    });

    // Rescale to u = δ/s so the companion matrix is balanced.
    let s = (10.0 * gd).max(dac.abs());
    let scaled: Vec<f64> = e
        .iter()
        .enumerate()
        .map(|(k, &c)| c * s.powi(k as i32))
        .collect();
    let scaled = poly_trim(scaled);
    let max_c = scaled.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if max_c == 0.0 {
        return Err(Error::PolynomialIllConditioned(
            "identically zero extremum polynomial".into(),
        ));
    }
    let scaled: Vec<f64> = scaled.iter().map(|&c| c / max_c).collect();
    let scaled_deriv = poly_deriv(&scaled);

    let curvature_at = |delta: f64| -> f64 {
        let h = 0.01 * gd;
        (rat.eval(delta + h) - 2.0 * rat.eval(delta) + rat.eval(delta - h)) / (h * h)
    };

    let mut roots: Vec<ClassifiedRoot> = Vec::new();
    let mut method = ExtremumMethod::PolynomialRoots;
    match poly_roots(&scaled) {
        Ok(eigs) => {
            for z in eigs {
                if z.im.abs() > 1e-8 * z.re.abs().max(1.0) {
                    continue;
                }
                // Newton polish in the scaled variable.
                let mut u = z.re;
                for _ in 0..8 {
                    let d = poly_val(&scaled_deriv, u);
                    if d == 0.0 {
                        break;
                    }
                    let step = poly_val(&scaled, u) / d;
                    u -= step;
                    if step.abs() <= 1e-15 * u.abs().max(1.0) {
                        break;
                    }
                }
                let delta = u * s;
                if !delta.is_finite() || delta.abs() > w {
                    continue;
                }
                let curvature = curvature_at(delta);
                roots.push(ClassifiedRoot {
                    delta,
                    curvature,
                    is_minimum: curvature > 0.0,
                });
            }
        }
        Err(_) => {
            // Conditioning fallback: bracketed sign changes of E on a dense
            // grid over the window.
            method = ExtremumMethod::Bisection;
            let f = |delta: f64| poly_val(&e, delta);
            let n = 2048;
            for i in 0..n {
                let lo = -w + 2.0 * w * (i as f64) / (n as f64);
                let hi = -w + 2.0 * w * ((i + 1) as f64) / (n as f64);
                if let Some((a, b)) = bracket_zero(&f, lo, hi, 1) {
                    if let Ok(delta) = bisect_zero(&f, a, b, 1e-9 * gd) {
                        let curvature = curvature_at(delta);
                        roots.push(ClassifiedRoot {
                            delta,
                            curvature,
                            is_minimum: curvature > 0.0,
                        });
                    }
                }
            }
        }
    }

    roots.sort_by(|a, b| a.delta.total_cmp(&b.delta));
    roots.dedup_by(|a, b| (a.delta - b.delta).abs() <= 1e-12 * gd.max(a.delta.abs()));
    let best = roots
        .iter()
        .filter(|r| r.is_minimum)
        .min_by(|a, b| a.delta.abs().total_cmp(&b.delta.abs()))
        .copied()
        .ok_or(Error::NoRealRootInWindow)?;

    Ok(ExtremumReport {
        delta0: best.delta,
        curvature: best.curvature,
        window,
        method,
        roots,
    })
}

/// Golden-section minimum of the reconstructed rational χ″ inside the
/// standard window; the direct-search cross-check of
/// [`chi_extremum_polynomial`].
pub fn chi_extremum_golden(params: &ModelParams) -> Result<ExtremumReport> {
    validate(params).into_result()?;
    let rat: RationalChi = reconstruct_rational(params, 1)?;
    let gd = gamma_d(params);
    let w = window_half_width(params);
    let (delta0, _) = minimize_interior(&|d| rat.eval(d), -w, w, 513, 1e-7 * gd)?;
    let h = 0.01 * gd;
    let curvature = (rat.eval(delta0 + h) - 2.0 * rat.eval(delta0) + rat.eval(delta0 - h)) / (h * h);
    Ok(ExtremumReport {
        delta0,
        curvature,
        window: (-w, w),
        method: ExtremumMethod::GoldenSection,
        roots: vec![ClassifiedRoot {
            delta: delta0,
            curvature,
            is_minimum: curvature > 0.0,
        }],
    })
}

/// Locates the ρ_exc minimum of the exact solver by golden-section search
/// (tolerance 10⁻⁶γ_D) inside the standard window; a scan that converges
/// onto the window boundary reports [`Error::NoExtremum`].
pub fn rho_exc_extremum(params: &ModelParams) -> Result<ExtremumReport> {
    validate(params).into_result()?;
    let gd = gamma_d(params);
    let w = window_half_width(params);
    let trap = ErrorTrap::new();
    let f = |delta: f64| trap.eval(rho_exc_point(params, delta, SolverPath::Exact));
    let found = trap.check(minimize_interior(&f, -w, w, 257, 1e-6 * gd))?;
    let (delta0, _) = found;
    let curvature = rho_exc_curvature(params, delta0, SolverPath::Exact)?;
    Ok(ExtremumReport {
        delta0,
        curvature,
        window: (-w, w),
        method: ExtremumMethod::GoldenSection,
        roots: vec![ClassifiedRoot {
            delta: delta0,
            curvature,
            is_minimum: curvature > 0.0,
        }],
    })
}

/// Resonance contrast C = [ρ_exc(δ_bg) − ρ_exc(δ₀)]/ρ_exc(δ_bg) with
/// background point δ_bg = 20γ_D. An absent resonance (no interior
/// extremum) is encoded as C = 0 rather than an error.
pub fn contrast(params: &ModelParams) -> Result<f64> {
    validate(params).into_result()?;
    let delta0 = match rho_exc_extremum(params) {
        Ok(rep) => rep.delta0,
        Err(Error::NoExtremum) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let gd = gamma_d(params);
    let bg = rho_exc_point(params, 20.0 * gd, SolverPath::Exact)?;
    if bg <= 0.0 {
        return Ok(0.0);
    }
    let dip = rho_exc_point(params, delta0, SolverPath::Exact)?;
    Ok((bg - dip) / bg)
}

/// Threshold on [`contrast`] below which the resonance is declared absent.
pub const CONTRAST_THRESHOLD: f64 = 1e-3;

/// Quadratic intensity-series fit δ₀(x) = α₁x + α₂x², x = (Ω₁²+Ω₂²)/Γ².
#[derive(Debug, Clone)]
pub struct SeriesCoeffs {
    /// Linear coefficient (Γ per unit x).
    pub alpha1: f64,
    /// Quadratic coefficient (Γ per unit x²).
    pub alpha2: f64,
    /// α₂/α₁; ±∞ signals a vanishing linear coefficient.
    pub ratio: f64,
    /// Root-mean-square fit residual (Γ units).
    pub residual: f64,
    /// One-σ uncertainty of α₂ from the fit covariance.
    pub alpha2_sigma: f64,
    /// Intensity grid used.
    pub x_grid: Vec<f64>,
    /// Per-point shifts δ₀(x) (Γ units).
    pub delta0: Vec<f64>,
}

fn params_at_x(shape: &ModelParams, ratio: f64, x: f64) -> ModelParams {
    let gam2 = shape.gamma_opt * shape.gamma_opt;
    let mut p = shape.clone();
    p.rabi_1 = (ratio / (1.0 + ratio) * x * gam2).sqrt();
    p.rabi_2 = (x / (1.0 + ratio) * gam2).sqrt();
    p
}

fn check_series_pre(shape: &ModelParams, ratio: f64, x_grid: &[f64]) -> Result<()> {
    validate(&params_at_x(shape, ratio, 0.01)).into_result()?;
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "intensity ratio must be positive and finite, got {ratio}"
        )));
    }
    if x_grid.len() < 4 {
        return Err(Error::InvalidParameter(
            "x-grid needs at least 4 points".into(),
        ));
    }
    if x_grid.iter().any(|&x| !(x > 0.0 && x <= 0.1)) {
        return Err(Error::InvalidParameter(
            "x-grid points must lie in (0, 0.1]".into(),
        ));
    }
    Ok(())
}

/// Default geometric intensity grid, deep in the adiabatic regime.
pub const DEFAULT_X_GRID: [f64; 5] = [2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3];

/// Computes δ₀ over the intensity grid and fits δ₀(x) = α₁x + α₂x² by
/// least squares with the constant term constrained to zero.
///
/// `shape` carries everything except the drive scale; `ratio` = Ω₁²/Ω₂²
/// fixes the intensity split. A grid point whose [`contrast`] falls below
/// [`CONTRAST_THRESHOLD`] aborts with [`Error::ResonanceAbsent`].
pub fn series_coefficients(
    shape: &ModelParams,
    ratio: f64,
    x_grid: &[f64],
) -> Result<SeriesCoeffs> {
    check_series_pre(shape, ratio, x_grid)?;

    let shifts: Vec<Result<f64>> = par::map_grid(x_grid, |&x| {
        let p = params_at_x(shape, ratio, x);
        let c = contrast(&p)?;
        if c < CONTRAST_THRESHOLD {
            return Err(Error::ResonanceAbsent { x, contrast: c });
        }
        Ok(chi_extremum_polynomial(&p)?.delta0)
    });
    let delta0 = shifts.into_iter().collect::<Result<Vec<f64>>>()?;

    // Normal equations for [α₁, α₂] on the basis {x, x²}.
    let (mut s2, mut s3, mut s4, mut t1, mut t2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&x, &d) in x_grid.iter().zip(&delta0) {
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
        t1 += x * d;
        t2 += x * x * d;
    }
    let det = s2 * s4 - s3 * s3;
    let scale = (s2 * s4).abs().max(s3 * s3);
    if !(det.abs() > 1e-14 * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::FitIllConditioned(scale / det.abs().max(f64::MIN_POSITIVE)));
    }
    let alpha1 = (s4 * t1 - s3 * t2) / det;
    let alpha2 = (s2 * t2 - s3 * t1) / det;

    let n = x_grid.len() as f64;
    let ss_res: f64 = x_grid
        .iter()
        .zip(&delta0)
        .map(|(&x, &d)| {
            let r = d - alpha1 * x - alpha2 * x * x;
            r * r
        })
        .sum();
    let residual = (ss_res / n).sqrt();
    let dof = (x_grid.len() as f64 - 2.0).max(1.0);
    let alpha2_sigma = ((ss_res / dof) * (s2 / det)).sqrt();

    Ok(SeriesCoeffs {
        alpha1,
        alpha2,
        ratio: alpha2 / alpha1,
        residual,
        alpha2_sigma,
        x_grid: x_grid.to_vec(),
        delta0,
    })
}

/// The frequency-style shift curve S(x) = δ₀(x)/(2π) over an intensity
/// grid, with an interior-extremum marker when S(x) turns over.
#[derive(Debug, Clone)]
pub struct ShiftCurve {
    /// (x, S) samples in grid order.
    pub points: Vec<(f64, f64)>,
    /// Interior extremum (x, S), detected as a strict slope sign change.
    pub extremum: Option<(f64, f64)>,
}

/// Computes S(x) = δ₀(x)/(2π) along the grid and flags an interior
/// extremum when consecutive slopes change sign strictly.
pub fn shift_vs_intensity(shape: &ModelParams, ratio: f64, x_grid: &[f64]) -> Result<ShiftCurve> {
    let series = series_coefficients(shape, ratio, x_grid)?;
    let points: Vec<(f64, f64)> = series
        .x_grid
        .iter()
        .zip(&series.delta0)
        .map(|(&x, &d)| (x, d / std::f64::consts::TAU))
        .collect();
    let mut extremum: Option<(f64, f64)> = None;
    for i in 1..points.len().saturating_sub(1) {
        let left = points[i].1 - points[i - 1].1;
        let right = points[i + 1].1 - points[i].1;
        if left * right < 0.0 {
            let better = match extremum {
                None => true,
                Some((_, s)) => points[i].1.abs() > s.abs(),
            };
            if better {
                extremum = Some(points[i]);
            }
        }
    }
    Ok(ShiftCurve { points, extremum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uniform_preset;
    use crate::weak_coupling::distortion_shift;

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
    fn symmetric_three_level_shift_vanishes() {
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.006, 0.006, 0.0, 0.0).unwrap();
        let gd = gamma_d(&p);
        let zero = shift_from_rho12(&p, SolverPath::Exact).unwrap();
        assert!(zero.delta0.abs() <= 1e-6 * gd, "{}", zero.delta0);
        let poly = chi_extremum_polynomial(&p).unwrap();
        assert!(poly.delta0.abs() <= 1e-6 * gd, "{}", poly.delta0);
        assert!(poly.curvature > 0.0);
        let exc = rho_exc_extremum(&p).unwrap();
        assert!(exc.delta0.abs() <= 1e-5 * gd, "{}", exc.delta0);
    }

    #[test]
    fn dispersive_zero_matches_first_order_formula() {
        let p = fig2_params();
        let expected = stark_shift(&p) + distortion_shift(&p);
        let rep = shift_from_rho12(&p, SolverPath::Exact).unwrap();
        assert!(
            (rep.delta0 - expected).abs() <= 0.15 * expected.abs(),
            "delta0 {} vs first order {}",
            rep.delta0,
            expected
        );
        assert!(rep.curvature > 0.0);
        let (lo, hi) = rep.window;
        assert!(rep.delta0 > lo && rep.delta0 < hi);
    }

    #[test]
    fn polynomial_and_golden_search_agree() {
        let p = fig2_params();
        let gd = gamma_d(&p);
        let poly = chi_extremum_polynomial(&p).unwrap();
        let gold = chi_extremum_golden(&p).unwrap();
        assert!(
            (poly.delta0 - gold.delta0).abs() <= 1e-6 * gd,
            "{} vs {}",
            poly.delta0,
            gold.delta0
        );
    }

    #[test]
    fn window_widening_leaves_the_root_unchanged() {
        let p = fig2_params();
        let gd = gamma_d(&p);
        let base = chi_extremum_polynomial_in(&p, 1.0).unwrap();
        let wide = chi_extremum_polynomial_in(&p, 2.0).unwrap();
        assert!((base.delta0 - wide.delta0).abs() < 1e-8 * gd);
    }

    #[test]
    fn extractors_flip_sign_under_field_swap() {
        let p = fig2_params();
        let gd = gamma_d(&p);
        let fwd = shift_from_rho12(&p, SolverPath::Exact).unwrap().delta0;
        let rev = shift_from_rho12(&p.swapped(), SolverPath::Exact)
            .unwrap()
            .delta0;
        assert!((fwd + rev).abs() <= 1e-6 * gd, "{fwd} vs {rev}");
        let fwd_p = chi_extremum_polynomial(&p).unwrap().delta0;
        let rev_p = chi_extremum_polynomial(&p.swapped()).unwrap().delta0;
        assert!((fwd_p + rev_p).abs() <= 1e-6 * gd, "{fwd_p} vs {rev_p}");
    }

    #[test]
    fn extractor_concordance_in_the_weak_coupling_regime() {
        let p = uniform_preset(2.0, 1.0, 0.0, 20.0, 0.008, 0.004, 1.0, -0.8).unwrap();
        let gd = gamma_d(&p);
        let a = shift_from_rho12(&p, SolverPath::Exact).unwrap().delta0;
        let b = chi_extremum_polynomial(&p).unwrap().delta0;
        let c = rho_exc_extremum(&p).unwrap().delta0;
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let bound = 0.1 * x.abs() + 1e-3 * gd;
            assert!((x - y).abs() <= bound, "{x} vs {y} (bound {bound})");
        }
    }

    #[test]
    fn perfect_dark_state_has_unit_contrast() {
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.01, 0.006, 0.0, 0.0).unwrap();
        let c = contrast(&p).unwrap();
        assert!((c - 1.0).abs() < 1e-6, "contrast {c}");
    }

    #[test]
    fn fully_symmetric_case_keeps_high_contrast_at_small_splitting() {
        let p = uniform_preset(2.0, 1.0, 0.0, 0.5, 0.005, 0.005, 1.0, 1.0).unwrap();
        assert!(contrast(&p).unwrap() > 0.1);
    }

    #[test]
    fn antisymmetric_case_loses_the_resonance_at_small_splitting() {
        let p = uniform_preset(2.0, 1.0, 0.0, 0.1, 0.005, 0.005, -1.0, 1.0).unwrap();
        assert!(contrast(&p).unwrap() < 1e-3);
    }

    #[test]
    fn series_null_case_gives_vanishing_coefficients() {
        // Equal drives with opposite unit dipole ratios: no shift at any x.
        let shape = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.01, 0.01, 1.0, -1.0).unwrap();
        let series = series_coefficients(&shape, 1.0, &DEFAULT_X_GRID).unwrap();
        for (&x, &d) in series.x_grid.iter().zip(&series.delta0) {
            let gd_x = x; // gamma_d = (rabi_1^2 + rabi_2^2)/gamma_opt at gamma_12 = 0
            assert!(d.abs() <= 1e-6 * gd_x, "delta0({x}) = {d}");
        }
        assert!(series.alpha1.abs() < 1e-8);
        assert!(series.alpha2.abs() < 1e-4);
    }

    #[test]
    fn series_linear_term_matches_the_stark_slope() {
        // Far from the cancellation line the fit's alpha1 tracks the
        // closed-form Stark + distortion slope in x. The closed forms are
        // leading order in gamma_opt/omega_34, so probe a well-split excited
        // doublet where their relative defect is ~(gamma_opt/omega_34)^2.
        let shape = uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.01, 1.0, -1.0).unwrap();
        let ratio = 2.0;
        let series = series_coefficients(&shape, ratio, &DEFAULT_X_GRID).unwrap();
        let x_probe = 1e-3;
        let p = params_at_x(&shape, ratio, x_probe);
        let slope = (stark_shift(&p) + distortion_shift(&p)) / x_probe;
        assert!(
            (series.alpha1 - slope).abs() <= 0.05 * slope.abs(),
            "alpha1 {} vs slope {}",
            series.alpha1,
            slope
        );
        assert!(series.residual < 1e-3 * series.delta0.iter().fold(0.0f64, |m, d| m.max(d.abs())));
    }

    #[test]
    fn series_grid_validation() {
        let shape = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.01, 0.01, 1.0, -1.0).unwrap();
        assert!(series_coefficients(&shape, 1.0, &[1e-3, 2e-3, 4e-3]).is_err());
        assert!(series_coefficients(&shape, 1.0, &[0.0, 1e-3, 2e-3, 4e-3]).is_err());
        assert!(series_coefficients(&shape, -1.0, &DEFAULT_X_GRID).is_err());
    }

    #[test]
    fn shift_curve_endpoint_scales_to_zero() {
        let shape = uniform_preset(2.0, 1.0, 0.0, 2.0, 0.01, 0.01, 1.0, -1.0).unwrap();
        let curve = shift_vs_intensity(&shape, 2.0, &DEFAULT_X_GRID).unwrap();
        let first = curve.points.first().unwrap();
        let last = curve.points.last().unwrap();
        assert!(first.1.abs() < last.1.abs());
    }
}
