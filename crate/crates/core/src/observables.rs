//! Measurable spectra: complex susceptibilities χ_g, absorption χ″_g, the
//! excited-state population ρ_exc, and the strong-coupling rational form of
//! χ″_g(δ) with its coefficient table.
//!
//! Sign convention: χ_g = (ρ̃₃g + p_g ρ̃₄g)/Ω_g, so χ″_g has a positive
//! off-resonant background and the CPT resonance is a minimum of χ″_g (and
//! of ρ_exc).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{validate, DetuningSpec, ModelParams};
use crate::par;
use crate::steady_state::{solve_steady, DensityMatrix};
use crate::weak_coupling::reduced_solution;

/// Which solver produced a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverPath {
    /// Full 16-dimensional steady state; valid everywhere.
    Exact,
    /// Adiabatically reduced 2×2 solution; valid for Ω ≪ Γ.
    Adiabatic,
    /// Rational closed form of χ″; requires Γ₁₂ = 0 and Δ₀ = 0.
    Rational,
}

impl SolverPath {
    /// Stable lowercase label used in CSV provenance headers.
    pub fn label(&self) -> &'static str {
        match self {
            SolverPath::Exact => "exact",
            SolverPath::Adiabatic => "adiabatic",
            SolverPath::Rational => "rational",
        }
    }
}

impl std::str::FromStr for SolverPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SolverPath::Exact),
            "adiabatic" => Ok(SolverPath::Adiabatic),
            "rational" => Ok(SolverPath::Rational),
            other => Err(Error::InvalidParameter(format!(
                "unknown solver path '{other}' (expected exact|adiabatic|rational)"
            ))),
        }
    }
}

/// Complex susceptibilities (χ₁, χ₂) of a solved state,
/// χ_g = (ρ̃₃g + p_g ρ̃₄g)/Ω_g.
pub fn susceptibility(params: &ModelParams, rho: &DensityMatrix) -> Result<(Complex64, Complex64)> {
    Ok((
        susceptibility_g(params, rho, 1)?,
        susceptibility_g(params, rho, 2)?,
    ))
}

/// χ_g for a single field component g ∈ {1, 2}.
pub fn susceptibility_g(params: &ModelParams, rho: &DensityMatrix, g: u8) -> Result<Complex64> {
    let (rabi, p) = match g {
        1 => (params.rabi_1, params.p_1),
        2 => (params.rabi_2, params.p_2),
        _ => return Err(Error::InvalidParameter(format!("field component {g}"))),
    };
    if rabi == 0.0 {
        return Err(Error::ZeroDrive(g));
    }
    let num = rho.rho_g3(g as usize) + p * rho.rho_g4(g as usize);
    Ok(num.conj() / rabi)
}

/// Ω_g² χ″_g in the product form −Ω_g·Im(ρ̃_g3 + p_g ρ̃_g4), which stays
/// finite (zero) at Ω_g = 0.
pub fn weighted_chi_im(params: &ModelParams, rho: &DensityMatrix, g: u8) -> f64 {
    let (rabi, p) = match g {
        1 => (params.rabi_1, params.p_1),
        _ => (params.rabi_2, params.p_2),
    };
    -(rabi * (rho.rho_g3(g as usize) + p * rho.rho_g4(g as usize)).im)
}

/// Total excited-state population ρ_exc = ρ₃₃ + ρ₄₄.
///
/// In steady state this equals (2/γ)(Ω₁²χ″₁ + Ω₂²χ″₂); the identity is
/// asserted to 1e-10 in debug builds, and exposed to callers through
/// [`excited_population_identity_gap`].
pub fn excited_population(params: &ModelParams, rho: &DensityMatrix) -> f64 {
    let direct = rho.population(3) + rho.population(4);
    debug_assert!(
        excited_population_identity_gap(params, rho) <= 1e-10,
        "excited-population identity violated"
    );
    direct
}

/// |ρ₃₃ + ρ₄₄ − (2/γ)(Ω₁²χ″₁ + Ω₂²χ″₂)| for a solved steady state.
pub fn excited_population_identity_gap(params: &ModelParams, rho: &DensityMatrix) -> f64 {
    let direct = rho.population(3) + rho.population(4);
    let via_chi = (2.0 / params.gamma_exc)
        * (weighted_chi_im(params, rho, 1) + weighted_chi_im(params, rho, 2));
    (direct - via_chi).abs()
}

/// χ_g from the adiabatically reduced solution: the optical coherences are
/// eliminated through ρ̃_g3 = −i(Ω_g ρ_gg + Ω_g′ ρ̃_gg′)/δ_g3 and
/// ρ̃_g4 = −i(p_g Ω_g ρ_gg + p_g′ Ω_g′ ρ̃_gg′)/δ_g4.
pub fn chi_adiabatic(params: &ModelParams, det: &DetuningSpec, g: u8) -> Result<Complex64> {
    let (rabi_g, p_g, rabi_o, p_o) = match g {
        1 => (params.rabi_1, params.p_1, params.rabi_2, params.p_2),
        2 => (params.rabi_2, params.p_2, params.rabi_1, params.p_1),
        _ => return Err(Error::InvalidParameter(format!("field component {g}"))),
    };
    if rabi_g == 0.0 {
        return Err(Error::ZeroDrive(g));
    }
    let (r11, r12) = reduced_solution(params, det)?;
    let (pop, coh) = match g {
        1 => (Complex64::from(r11), r12),
        _ => (Complex64::from(1.0 - r11), r12.conj()),
    };
    let gam = params.gamma_opt;
    let d_g = if g == 1 {
        det.detuning_1()
    } else {
        det.detuning_2()
    };
    let d_g3 = Complex64::new(gam, d_g);
    let d_g4 = Complex64::new(gam, d_g - params.omega_34);
    let i = Complex64::i();
    let rt_g3 = -i * (rabi_g * pop + rabi_o * coh) / d_g3;
    let rt_g4 = -i * (p_g * rabi_g * pop + p_o * rabi_o * coh) / d_g4;
    Ok((rt_g3 + p_g * rt_g4).conj() / rabi_g)
}

/// Where a [`RationalChi`]'s coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Evaluated verbatim from the hand-derived closed-form table. Seven of
    /// the sixteen entries carry known algebraic defects (see
    /// [`tabulated_coefficients`]); use only for cross-validation.
    Tabulated,
    /// Reconstructed exactly (rational arithmetic) from the adiabatic
    /// closed-form solution; the authoritative computational path.
    Reconstructed,
}

/// χ″_g(δ) as a rational function:
/// χ″_g = Γ Ω_g′² · (Σ_{n≤7} A_n δⁿ) / (Σ_{n≤9} B_n δⁿ),
/// normalized by B₉ = −(p̃₁²Ω₁² + p̃₂²Ω₂²) with p̃_g² = 1 + p_g².
#[derive(Debug, Clone)]
pub struct RationalChi {
    /// Numerator coefficients A₀…A₇ (ascending powers of δ).
    pub a: [f64; 8],
    /// Denominator coefficients B₀…B₉ (ascending powers of δ).
    pub b: [f64; 10],
    /// Overall prefactor Γ Ω_g′².
    pub prefactor: f64,
    /// Coefficient provenance.
    pub provenance: Provenance,
}

fn polyval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

impl RationalChi {
    /// Evaluates χ″_g(δ).
    ///
    /// Both polynomials carry an exact common factor of δ (a₀ = b₀ = 0), so
    /// the reduced forms are divided instead; the value is then finite at
    /// δ = 0 where the raw quotient would be 0/0.
    pub fn eval(&self, delta: f64) -> f64 {
        self.prefactor * polyval(&self.a[1..], delta) / polyval(&self.b[1..], delta)
    }

    /// True when the reduced denominator keeps one sign on
    /// `[-window, window]` (513-point scan); a sign change would mean a pole
    /// inside the scan.
    pub fn denominator_single_signed(&self, window: f64) -> bool {
        let first = polyval(&self.b[1..], -window);
        (0..=512).all(|i| {
            let x = -window + 2.0 * window * (i as f64) / 512.0;
            polyval(&self.b[1..], x) * first > 0.0
        })
    }
}

fn require_rational_regime(params: &ModelParams) -> Result<()> {
    validate(params).into_result()?;
    if params.gamma_12 != 0.0 {
        return Err(Error::Unsupported(
            "rational chi'' form requires gamma_12 = 0".into(),
        ));
    }
    Ok(())
}

/// Hand-derived closed-form coefficient table of the rational χ″ form,
/// evaluated verbatim.
///
/// Status of the sixteen entries, established by exact comparison against
/// [`reconstruct_rational`] in rational arithmetic:
/// - exact: A₁, A₅, A₆, A₇, B₁, B₄, B₆ (evident reading of a typeset
///   artifact in its prefactor), B₈, B₉;
/// - known algebraic defects, exact corrections frozen in
///   [`corrected_coefficient`]: A₂, A₃, A₄, B₂, B₇;
/// - known algebraic defects, no closed correction recovered: B₃, B₅.
///
/// The constant terms A₀ and B₀ vanish identically (the reconstruction
/// proves the true degrees are 6/8 over a common factor of δ); they are
/// returned as exact zeros. Use [`reconstruct_rational`] for computation.
pub fn tabulated_coefficients(params: &ModelParams, g: u8) -> Result<RationalChi> {
    require_rational_regime(params)?;
    let w = params.omega_34;
    let gam = params.gamma_opt;
    let g2 = gam * gam;
    let g4 = g2 * g2;
    let o1 = params.rabi_1 * params.rabi_1;
    let o2 = params.rabi_2 * params.rabi_2;
    let (q1, q2) = (params.p_1, params.p_2);
    let t1 = 1.0 + q1 * q1;
    let t2 = 1.0 + q2 * q2;
    let w2 = w * w;
    let w4 = w2 * w2;

    let a1 = -64.0
        * (q1 - q2).powi(2)
        * (g2 * (t1 * o1 + t2 * o2).powi(2)
            + (t1 * o1 * o1 + 2.0 * (1.0 + q1 * q2) * o1 * o2 + t2 * o2 * o2) * w2);

    let a2 = 64.0
        * (q1 - q2)
        * w
        * (-q2 * o1 * o1 - q2.powi(3) * o1 * o2
            + q1.powi(3) * o1 * (2.0 * g2 + o1 - o2)
            + q2 * o2 * (g2 + 2.0 * w2 + o2)
            + q1 * (2.0 * g2 * o1 + o1 * o1 - q2 * q2 * o1 - t2 * o2 * o2
                + 2.0 * t2 * o1 * o2));

    let a3 = -16.0
        * (4.0 * g2 * o1 * o2 + 4.0 * w4 - 4.0 * q2 * q2 * w2 * o1
            + q2.powi(6) * o1 * o1
            - 2.0 * q1.powi(5) * q2 * o1 * o1
            + q2 * q2 * o1 * o1
            + 4.0 * q2 * q2 * w2 * o2
            + 2.0 * q2 * q2 * o1 * o2
            + 2.0 * q2.powi(4) * o1 * o2
            + q2 * q2 * o2 * o2
            + 2.0 * q2.powi(4) * o2 * o2
            + q2.powi(6) * o2 * o2
            - 4.0 * q1.powi(3) * q2 * (o1 + t2 * o2) * o1
            - 2.0 * q1 * q2 * (o1 + t2 * o2).powi(2)
            + q1.powi(4) * (o1 * o1 + 2.0 * t2 * o1 * o2)
            - 4.0 * w2
                * (-2.0 * w2 + q1.powi(4) * o1 - 2.0 * q1.powi(3) * q2 * o1
                    + q2.powi(4) * o2
                    + q2 * q2 * (-w2 + o1 + o2)
                    - 2.0 * q1 * q2 * (o1 + t2 * o2)
                    + q1 * q1 * (-w2 + t2 * o1 + t2 * o2))
            + q1 * q1
                * ((1.0 + 2.0 * q2 * q2) * o1 * o1 - 4.0 * w2 * o2 + t2 * o2 * o2
                    + 2.0 * o1 * (2.0 * w2 + t2 * o2)));

    let a4 = 32.0
        * w
        * (q1 - q2)
        * (q1.powi(3) * o1 - q1 * (g2 + o1 - 2.0 * o2)
            + q2 * (-g2 + 2.0 * o1 + (-1.0 + q2 * q2) * o2));

    let a5 = 16.0
        * (-2.0 * g2 * t1 * t2 + 2.0 * w2 - q2 * q2 * w2 + q1.powi(4) * o1
            - 2.0 * q1.powi(3) * q2 * o1
            + q2 * q2 * o1
            + q2 * q2 * o2
            + q2.powi(4) * o2
            - 2.0 * q1 * q2 * (o1 + t2 * o2)
            + q1 * q1 * (-w2 + t2 * o1 + t2 * o2));

    let a6 = 16.0 * w * (q2 * q2 - q1 * q1);
    let a7 = -4.0 * t1 * t2;

    let b1 = -64.0 * w4 * (o1 + o2).powi(3) - 64.0 * g4 * (t1 * o1 + t2 * o2).powi(3)
        - 64.0 * g2 * w2 * (o1 + o2)
            * ((2.0 + 3.0 * q1 * q1 + q1.powi(4)) * o1 * o1
                + (4.0 + 3.0 * q2 * q2 + q1 * q1 * (3.0 + 2.0 * q2 * q2)) * o1 * o2
                + (2.0 + 3.0 * q2 * q2 + q2.powi(4)) * o2 * o2);

    let b2 = 64.0
        * w
        * (t1 * o1 - t2 * o2)
        * (2.0 * g2 * w2 * (o1 + o2) - w2 * (o1 + o2).powi(2) + 2.0 * g4 * (t1 * o1 + t2 * o2));

    let b3 = -64.0 * g2 * (t1 * o1 + t2 * o2)
        + 64.0 * g4
            * (t1 * o1 * o1 - (2.0 + q2 * q2) * w2 * o2 + t2 * o2 * o2
                + o1 * (-(2.0 + q1 * q1) * w2 + 2.0 * t1 * t2 * o2))
        - 16.0 * w2 * (o1 + o2)
            * ((q1.powi(4) - 2.0 - q1 * q1) * o1 * o1
                + (q2.powi(4) - 2.0 - q2 * q2) * o2 * o2
                - 4.0 * w2 * o2
                - 4.0 * w2 * o1
                + (-4.0 - q2 * q2 + q1 * q1 * (-1.0 + 2.0 * q2 * q2)) * o2)
        - 32.0 * g2
            * (t1 * o1.powi(3) + 2.0 * w4 * o2 - 4.0 * w2 * o2 * o2 + t2 * o2.powi(3)
                + o1 * o1 * (-4.0 * w2 + 3.0 * t1 * t2 * o2)
                + o1 * (2.0 * w4 - 8.0 * w2 * o2 + 3.0 * t1 * t2 * o2 * o2));

    let b4 = 32.0
        * w
        * (q1 * q1 * o1 - q2 * q2 * o2)
        * (-2.0 * g4 + w2 * (o1 + o2) + 2.0 * g2 * (t1 * o1 + t2 * o2));

    let b5 = -4.0
        * (t1 * o1.powi(3) + 4.0 * w4 * o2 + 8.0 * w2 * o2 * o2 + o2.powi(3)
            + 3.0 * q2 * q2 * o2.powi(3)
            + 3.0 * q2.powi(4) * o2.powi(3)
            + q2.powi(6) * o2.powi(3)
            + 12.0 * g2 * (t1 * o1 + t2 * o2)
            + o1 * o1 * (8.0 * w2 + 3.0 * t1 * t2 * o2)
            + o1 * (4.0 * w4 + 16.0 * w2 * o2 + 3.0 * t1 * t2 * o2 * o2)
            - 8.0 * g2
                * (t1 * o1 * o1 - q2 * q2 * w2 * o2 + t2 * o2 * o2
                    + o1 * (-q1 * q1 * w2 + 2.0 * t1 * t2 * o2)));

    let b6 = 8.0 * w * (q1 * q1 * o1 - q2 * q2 * o2) * (-4.0 * g2 + t1 * o1 + t2 * o2);

    let b7 = 4.0
        * (t1 * o1 * o1 - (q2 * q2 - 2.0) * w2 * o2 + t2 * o2 * o2
            - 3.0 * g2 * (t1 * o1 + t2 * o2)
            + o1 * (-(q1 * q1 - 2.0) * w2 + 2.0 * t1 * t2 * o2));

    let b8 = -4.0 * w * (q1 * q1 * o1 - q2 * q2 * o2);
    let b9 = -(t1 * o1 + t2 * o2);

    let rabi_other_sq = if g == 1 { o2 } else { o1 };
    Ok(RationalChi {
        a: [0.0, a1, a2, a3, a4, a5, a6, a7],
        b: [0.0, b1, b2, b3, b4, b5, b6, b7, b8, b9],
        prefactor: gam * rabi_other_sq,
        provenance: Provenance::Tabulated,
    })
}

/// Exact corrections to the five defective table entries whose closed-form
/// repair was recovered (frozen from an exact symbolic comparison against
/// the reconstruction). For `n` in {A2, A3, A4, B2, B7} — addressed as
/// `("A", 2)` etc. — returns the corrected coefficient; `None` for entries
/// that are exact as printed or whose correction was not recovered (B3, B5).
pub fn corrected_coefficient(params: &ModelParams, family: char, n: usize) -> Option<f64> {
    let w = params.omega_34;
    let gam = params.gamma_opt;
    let g2 = gam * gam;
    let g4 = g2 * g2;
    let o1 = params.rabi_1 * params.rabi_1;
    let o2 = params.rabi_2 * params.rabi_2;
    let (q1, q2) = (params.p_1, params.p_2);
    let t1 = 1.0 + q1 * q1;
    let t2 = 1.0 + q2 * q2;
    let w2 = w * w;
    let w4 = w2 * w2;
    let tab = tabulated_coefficients(params, 1).ok()?;

    match (family, n) {
        ('A', 2) => {
            let diff = 64.0
                * w
                * (q1 - q2)
                * (g2 * o1 * q1 * q2 * q2 + 2.0 * g2 * o2 * q2.powi(3) + g2 * o2 * q2
                    - o1 * o1 * q1 * q1 * q2
                    + o1 * o2 * q1 * q1 * q2
                    - o1 * o2 * q1 * q2 * q2
                    - 2.0 * o1 * o2 * q1
                    + 2.0 * o1 * w2 * q1
                    + o2 * o2 * q2.powi(3));
            Some(tab.a[2] + diff)
        }
        ('A', 3) => {
            let diff = -16.0
                * (4.0 * g4 * q1 * q1 * q2 * q2 + 4.0 * g4 * q1 * q1 + 4.0 * g4 * q2 * q2
                    + 4.0 * g4
                    - 4.0 * g2 * o1 * q1.powi(4)
                    + 8.0 * g2 * o1 * q1.powi(3) * q2
                    - 4.0 * g2 * o1 * q1 * q1 * q2 * q2
                    - 4.0 * g2 * o1 * q1 * q1
                    + 8.0 * g2 * o1 * q1 * q2
                    - 4.0 * g2 * o1 * q2 * q2
                    - 4.0 * g2 * o2 * q1 * q1 * q2 * q2
                    - 4.0 * g2 * o2 * q1 * q1
                    + 8.0 * g2 * o2 * q1 * q2.powi(3)
                    + 8.0 * g2 * o2 * q1 * q2
                    - 4.0 * g2 * o2 * q2.powi(4)
                    - 4.0 * g2 * o2 * q2 * q2
                    + 4.0 * g2 * w2 * q1 * q1
                    + 4.0 * g2 * w2 * q2 * q2
                    + 8.0 * g2 * w2
                    + o1 * o1 * q1.powi(6)
                    + o1 * o1 * q1.powi(4) * q2 * q2
                    + o1 * o1 * q1.powi(4)
                    - o1 * o1 * q2.powi(6)
                    + 2.0 * o1 * o2 * q1 * q1 * q2.powi(4)
                    + 2.0 * o1 * o2 * q1 * q1 * q2 * q2
                    - 4.0 * o1 * o2
                    + 4.0 * o1 * w2 * q1.powi(4)
                    - 8.0 * o1 * w2 * q1.powi(3) * q2
                    + 4.0 * o1 * w2 * q1 * q1 * q2 * q2
                    + 4.0 * o1 * w2 * q1 * q1
                    - 8.0 * o1 * w2 * q1 * q2
                    + 4.0 * o1 * w2 * q2 * q2
                    + o2 * o2 * q1 * q1 * q2.powi(4)
                    + o2 * o2 * q1 * q1 * q2 * q2
                    + 4.0 * o2 * w2 * q1 * q1 * q2 * q2
                    + 4.0 * o2 * w2 * q1 * q1
                    - 8.0 * o2 * w2 * q1 * q2.powi(3)
                    - 8.0 * o2 * w2 * q1 * q2
                    + 4.0 * o2 * w2 * q2.powi(4)
                    + 4.0 * o2 * w2 * q2 * q2
                    - 4.0 * w4 * q1 * q1
                    - 4.0 * w4 * q2 * q2
                    - 8.0 * w4);
            Some(tab.a[3] + diff)
        }
        ('A', 4) => Some(tab.a[4] - 32.0 * g2 * w * (q1 - q2) * (q1 + q2)),
        ('B', 2) => {
            // The defect is the prefactor: (p̃₁²Ω₁² − p̃₂²Ω₂²) should read
            // (p₁²Ω₁² − p₂²Ω₂²).
            Some(
                64.0 * w
                    * (q1 * q1 * o1 - q2 * q2 * o2)
                    * (2.0 * g2 * w2 * (o1 + o2) - w2 * (o1 + o2).powi(2)
                        + 2.0 * g4 * (t1 * o1 + t2 * o2)),
            )
        }
        ('B', 7) => {
            let diff = 4.0
                * (o1 * o1 * q1.powi(4) + o1 * o1 * q1 * q1 + o2 * o2 * q2.powi(4)
                    + o2 * o2 * q2 * q2);
            Some(tab.b[7] + diff)
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Exact rational reconstruction.
// ---------------------------------------------------------------------------

mod exact {
    //! Complex arithmetic over arbitrary-precision rationals, used to
    //! reconstruct the rational χ″ form without rounding error.

    use num_rational::BigRational;
    use num_traits::Zero;

    #[derive(Debug, Clone, PartialEq)]
    pub struct CRat {
        pub re: BigRational,
        pub im: BigRational,
    }

    impl CRat {
        pub fn new(re: BigRational, im: BigRational) -> Self {
            Self { re, im }
        }

        pub fn real(re: BigRational) -> Self {
            Self {
                re,
                im: BigRational::zero(),
            }
        }

        pub fn zero() -> Self {
            Self::real(BigRational::zero())
        }

        pub fn conj(&self) -> Self {
            Self {
                re: self.re.clone(),
                im: -self.im.clone(),
            }
        }

        pub fn add(&self, other: &Self) -> Self {
            Self {
                re: &self.re + &other.re,
                im: &self.im + &other.im,
            }
        }

        pub fn sub(&self, other: &Self) -> Self {
            Self {
                re: &self.re - &other.re,
                im: &self.im - &other.im,
            }
        }

        pub fn mul(&self, other: &Self) -> Self {
            Self {
                re: &self.re * &other.re - &self.im * &other.im,
                im: &self.re * &other.im + &self.im * &other.re,
            }
        }

        pub fn scale(&self, s: &BigRational) -> Self {
            Self {
                re: &self.re * s,
                im: &self.im * s,
            }
        }

        pub fn norm_sqr(&self) -> BigRational {
            &self.re * &self.re + &self.im * &self.im
        }

        pub fn inv(&self) -> Option<Self> {
            let n = self.norm_sqr();
            if n.is_zero() {
                return None;
            }
            Some(Self {
                re: &self.re / &n,
                im: -&self.im / &n,
            })
        }

        pub fn div(&self, other: &Self) -> Option<Self> {
            other.inv().map(|inv| self.mul(&inv))
        }

        /// Multiplication by −i: −i(x + iy) = y − ix.
        pub fn mul_neg_i(&self) -> Self {
            Self {
                re: self.im.clone(),
                im: -self.re.clone(),
            }
        }
    }
}

use exact::CRat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

fn big(x: f64) -> Result<BigRational> {
    BigRational::from_float(x)
        .ok_or_else(|| Error::InvalidParameter(format!("non-finite value {x}")))
}

/// Samples χ″_g(δ) exactly (rational arithmetic) from the adiabatic
/// closed-form solution at Γ₁₂ = 0, Δ₀ = 0.
fn chi_exact_sample(params: &ModelParams, g: u8, delta: &BigRational) -> Result<BigRational> {
    let gam = big(params.gamma_opt)?;
    let w = big(params.omega_34)?;
    let o1 = big(params.rabi_1)?;
    let o2 = big(params.rabi_2)?;
    let p1 = big(params.p_1)?;
    let p2 = big(params.p_2)?;
    let o1sq = &o1 * &o1;
    let o2sq = &o2 * &o2;
    let half: BigRational = delta / BigRational::from_integer(2.into());

    let d13 = CRat::new(gam.clone(), half.clone());
    let d14 = CRat::new(gam.clone(), &half - &w);
    let d23 = CRat::new(gam.clone(), -half.clone());
    let d24 = CRat::new(gam.clone(), -&half - &w);
    let d12 = CRat::new(BigRational::zero(), delta.clone());

    let s13 = d13.inv().ok_or_else(|| degenerate("zero d13"))?;
    let s14 = d14.inv().ok_or_else(|| degenerate("zero d14"))?;
    let s23 = d23.inv().ok_or_else(|| degenerate("zero d23"))?;
    let s24 = d24.inv().ok_or_else(|| degenerate("zero d24"))?;

    let p1p2 = &p1 * &p2;
    let p1sq = &p1 * &p1;
    let p2sq = &p2 * &p2;
    let o1o2 = &o1 * &o2;

    // Branch-1/branch-2 pathway sums through |3⟩ and |4⟩.
    let u1_cross = s13.add(&s14.scale(&p1p2));
    let u2_cross = s23.add(&s24.scale(&p1p2));
    let u1_self = s13.add(&s14.scale(&p1sq));
    let u2_self = s23.add(&s24.scale(&p2sq));
    let u1_mixed = s13.add(&s14.scale(&p2sq));
    let u2_mixed = s23.add(&s24.scale(&p1sq));

    let p1_bal = &o1sq * &u1_self.re + &o2sq * &u2_self.re;
    let f_bal = &o2sq * &u2_self.re;
    let w_c = u1_cross.sub(&u2_cross.conj()).scale(&o1o2);
    let d_c = u2_mixed
        .conj()
        .scale(&o1sq)
        .add(&u1_mixed.scale(&o2sq))
        .add(&d12);
    let d_c = CRat::zero().sub(&d_c);
    let c_c = CRat::zero().sub(&w_c);
    let h_c = u2_cross.conj().scale(&o1o2);

    let d_sq = d_c.norm_sqr();
    let denom = &p1_bal * &d_sq - w_c.mul(&c_c).mul(&d_c.conj()).re;
    if denom.is_zero() {
        return Err(degenerate("zero reduced denominator"));
    }
    let r11 = (&f_bal * &d_sq - w_c.mul(&h_c).mul(&d_c.conj()).re) / denom;
    let r12 = h_c
        .sub(&c_c.scale(&r11))
        .div(&d_c)
        .ok_or_else(|| degenerate("zero coherence pivot"))?;

    let chi_num = match g {
        1 => {
            let pop = CRat::real(&o1 * &r11);
            let u = pop.add(&r12.scale(&o2));
            let v = CRat::real(&(&p1 * &o1) * &r11).add(&r12.scale(&(&p2 * &o2)));
            let rt13 = u.mul(&s13).mul_neg_i();
            let rt14 = v.mul(&s14).mul_neg_i();
            let total = rt13.add(&rt14.scale(&p1));
            -(total.im) / &o1
        }
        2 => {
            let r22 = BigRational::one() - &r11;
            let r21 = r12.conj();
            let u = CRat::real(&o2 * &r22).add(&r21.scale(&o1));
            let v = CRat::real(&(&p2 * &o2) * &r22).add(&r21.scale(&(&p1 * &o1)));
            let rt23 = u.mul(&s23).mul_neg_i();
            let rt24 = v.mul(&s24).mul_neg_i();
            let total = rt23.add(&rt24.scale(&p2));
            -(total.im) / &o2
        }
        _ => return Err(Error::InvalidParameter(format!("field component {g}"))),
    };
    Ok(chi_num)
}

fn degenerate(msg: &str) -> Error {
    Error::FitDegenerate(msg.to_string())
}

/// Reconstructs the rational χ″_g form exactly.
///
/// The adiabatic closed form is sampled at 21 rational δ points and the
/// linear system for the reduced coefficients (numerator degree 6,
/// denominator degree 8 monic, both after dividing out the common factor δ)
/// is solved in exact rational arithmetic; the six surplus samples verify
/// the fit with zero residual. The result is rescaled to the
/// B₉ = −(p̃₁²Ω₁² + p̃₂²Ω₂²) normalization, which fixes A₀ = B₀ = 0.
pub fn reconstruct_rational(params: &ModelParams, g: u8) -> Result<RationalChi> {
    require_rational_regime(params)?;
    if params.rabi_1 == 0.0 || params.rabi_2 == 0.0 {
        return Err(Error::ZeroDrive(if params.rabi_1 == 0.0 { 1 } else { 2 }));
    }

    // 21 distinct nonzero rational sample points, j/8 for j in ±1..±10, 11.
    let eight = BigRational::from_integer(8.into());
    let mut points: Vec<BigRational> = Vec::new();
    for j in 1..=10i32 {
        points.push(BigRational::from_integer(j.into()) / &eight);
        points.push(BigRational::from_integer((-j).into()) / &eight);
    }
    points.push(BigRational::from_integer(11.into()) / &eight);

    // Unknowns: n₀…n₆ (7), d₀…d₇ (8) with d₈ = 1. Row per sample:
    // Σ n_k δᵏ − χ·Σ d_k δᵏ = χ·δ⁸.
    const NU: usize = 15;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(points.len());
    for delta in &points {
        let chi = chi_exact_sample(params, g, delta)?;
        let mut powers = vec![BigRational::one()];
        for _ in 0..8 {
            powers.push(powers.last().unwrap() * delta);
        }
        let mut row = Vec::with_capacity(NU + 1);
        for p in powers.iter().take(7) {
            row.push(p.clone());
        }
        for p in powers.iter().take(8) {
            row.push(-(&chi * p));
        }
        row.push(&chi * &powers[8]);
        rows.push(row);
    }

    // Exact solve with free variables pinned to zero; the system is
    // overdetermined (21×15) and must be exactly consistent. Rows are
    // cleared of denominators and reduced by fraction-free (Bareiss)
    // elimination over integers — far cheaper than rational Gauss, whose
    // per-operation gcd reductions dominate at these operand sizes.
    let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut common = BigInt::one();
        for e in row {
            common = lcm_big(&common, e.denom());
        }
        int_rows.push(
            row.iter()
                .map(|e| e.numer() * (&common / e.denom()))
                .collect(),
        );
    }

    let n_rows = int_rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (column, row)
    let mut prev = BigInt::one();
    let mut next_row = 0usize;
    for col in 0..NU {
        let Some(r) = (next_row..n_rows).find(|&r| !int_rows[r][col].is_zero()) else {
            continue;
        };
        int_rows.swap(next_row, r);
        let (head, tail) = int_rows.split_at_mut(next_row + 1);
        let pivot_row = &head[next_row];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                // Still rescale so every entry stays a minor of the input
                // matrix (keeps later exact divisions valid).
                for j in (col + 1)..=NU {
                    row[j] = &(&pivot * &row[j]) / &prev;
                }
            } else {
                let factor = row[col].clone();
                for j in (col + 1)..=NU {
                    row[j] = &(&pivot * &row[j] - &factor * &pivot_row[j]) / &prev;
                }
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        pivots.push((col, next_row));
        next_row += 1;
        if next_row == n_rows {
            break;
        }
    }

    // Any remaining nonzero rhs in a zero row means the degree-6/8 model
    // cannot represent the sampled function.
    for row in int_rows.iter().skip(next_row) {
        if !row[NU].is_zero() {
            return Err(degenerate("inconsistent sample system"));
        }
    }

    // Back-substitution in rational arithmetic; free variables stay zero.
    let mut sol = vec![BigRational::zero(); NU];
    for &(col, r) in pivots.iter().rev() {
        let mut acc = BigRational::from_integer(int_rows[r][NU].clone());
        for j in (col + 1)..NU {
            if !int_rows[r][j].is_zero() && !sol[j].is_zero() {
                acc -= BigRational::from_integer(int_rows[r][j].clone()) * &sol[j];
            }
        }
        sol[col] = acc / BigRational::from_integer(int_rows[r][col].clone());
    }

    // The eliminated system only guarantees consistency of the pivot rows;
    // verify every original sample equation exactly.
    for row in &rows {
        let mut acc = -row[NU].clone();
        for (e, s) in row[..NU].iter().zip(&sol) {
            if !s.is_zero() {
                acc += e * s;
            }
        }
        if !acc.is_zero() {
            return Err(degenerate("reconstruction failed exact verification"));
        }
    }

    // Rescale to the B₉ normalization and undo the prefactor on A.
    let o1sq = big(params.rabi_1)? * big(params.rabi_1)?;
    let o2sq = big(params.rabi_2)? * big(params.rabi_2)?;
    let t1 = BigRational::one() + big(params.p_1)? * big(params.p_1)?;
    let t2 = BigRational::one() + big(params.p_2)? * big(params.p_2)?;
    let b9 = -(&t1 * &o1sq + &t2 * &o2sq);
    let gam = big(params.gamma_opt)?;
    let other_sq = if g == 1 { &o2sq } else { &o1sq };
    let a_scale = &b9 / (&gam * other_sq);

    let to64 = |x: &BigRational| -> Result<f64> {
        x.to_f64()
            .ok_or_else(|| degenerate("coefficient not representable"))
    };

    let mut a = [0.0f64; 8];
    let mut b = [0.0f64; 10];
    for k in 0..7 {
        a[k + 1] = to64(&(&sol[k] * &a_scale))?;
    }
    for k in 0..8 {
        b[k + 1] = to64(&(&sol[7 + k] * &b9))?;
    }
    b[9] = to64(&b9)?;

    Ok(RationalChi {
        a,
        b,
        prefactor: params.gamma_opt
            * if g == 1 {
                params.rabi_2 * params.rabi_2
            } else {
                params.rabi_1 * params.rabi_1
            },
        provenance: Provenance::Reconstructed,
    })
}

// ---------------------------------------------------------------------------
// Spectrum assembly.
// ---------------------------------------------------------------------------

/// Observables at one two-photon detuning.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumPoint {
    /// δ in units of Γ.
    pub delta: f64,
    /// χ″₁.
    pub chi1_im: f64,
    /// χ″₂.
    pub chi2_im: f64,
    /// ρ₃₃ + ρ₄₄.
    pub rho_exc: f64,
    /// Re ρ̃₁₂.
    pub rho12_re: f64,
    /// Im ρ̃₁₂.
    pub rho12_im: f64,
    /// ρ₁₁.
    pub rho11: f64,
    /// ρ₂₂.
    pub rho22: f64,
}

/// A solved δ-grid.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Per-point observables, in grid order.
    pub points: Vec<SpectrumPoint>,
    /// Which solver produced every column.
    pub path: SolverPath,
}

fn exact_point(params: &ModelParams, delta: f64, delta_common: f64) -> Result<SpectrumPoint> {
    let det = DetuningSpec {
        delta,
        delta_common,
    };
    let rho = solve_steady(params, &det)?;
    let (chi1, chi2) = susceptibility(params, &rho)?;
    Ok(SpectrumPoint {
        delta,
        chi1_im: chi1.im,
        chi2_im: chi2.im,
        rho_exc: excited_population(params, &rho),
        rho12_re: rho.rho12().re,
        rho12_im: rho.rho12().im,
        rho11: rho.population(1),
        rho22: rho.population(2),
    })
}

fn adiabatic_point(params: &ModelParams, delta: f64, delta_common: f64) -> Result<SpectrumPoint> {
    let det = DetuningSpec {
        delta,
        delta_common,
    };
    let (r11, r12) = reduced_solution(params, &det)?;
    let chi1 = chi_adiabatic(params, &det, 1)?;
    let chi2 = chi_adiabatic(params, &det, 2)?;
    let rho_exc = (2.0 / params.gamma_exc)
        * (params.rabi_1 * params.rabi_1 * chi1.im + params.rabi_2 * params.rabi_2 * chi2.im);
    Ok(SpectrumPoint {
        delta,
        chi1_im: chi1.im,
        chi2_im: chi2.im,
        rho_exc,
        rho12_re: r12.re,
        rho12_im: r12.im,
        rho11: r11,
        rho22: 1.0 - r11,
    })
}

/// Evaluates all observables over a monotone δ-grid.
///
/// The exact path runs the full solver per point (parallelized when the
/// `parallel` feature is on, with deterministic output order); the adiabatic
/// path uses the reduced solution; the rational path (Γ₁₂ = 0, Δ₀ = 0 only)
/// evaluates χ″ from the reconstructed rational form and the remaining
/// columns from the reduced solution.
pub fn spectrum(
    params: &ModelParams,
    deltas: &[f64],
    delta_common: f64,
    path: SolverPath,
) -> Result<Spectrum> {
    validate(params).into_result()?;
    if deltas.is_empty() {
        return Err(Error::InvalidParameter("empty detuning grid".into()));
    }
    if deltas.windows(2).any(|w| w[1] <= w[0]) && deltas.len() > 1 {
        return Err(Error::InvalidParameter(
            "detuning grid must be strictly increasing".into(),
        ));
    }

    let points: Vec<Result<SpectrumPoint>> = match path {
        SolverPath::Exact => par::map_grid(deltas, |&d| exact_point(params, d, delta_common)),
        SolverPath::Adiabatic => {
            par::map_grid(deltas, |&d| adiabatic_point(params, d, delta_common))
        }
        SolverPath::Rational => {
            if delta_common != 0.0 {
                return Err(Error::Unsupported(
                    "rational path requires delta_common = 0".into(),
                ));
            }
            let chi1 = reconstruct_rational(params, 1)?;
            let chi2 = reconstruct_rational(params, 2)?;
            par::map_grid(deltas, |&d| {
                let mut point = adiabatic_point(params, d, 0.0)?;
                point.chi1_im = chi1.eval(d);
                point.chi2_im = chi2.eval(d);
                point.rho_exc = (2.0 / params.gamma_exc)
                    * (params.rabi_1 * params.rabi_1 * point.chi1_im
                        + params.rabi_2 * params.rabi_2 * point.chi2_im);
                Ok(point)
            })
        }
    };

    let points = points.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Spectrum { points, path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uniform_preset;
    use crate::weak_coupling::{gamma_d, stark_shift};
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

    fn draw_params() -> ModelParams {
        uniform_preset(2.0, 1.0, 0.0, 1.3, 0.05, 0.03, 1.2, -0.7).unwrap()
    }

    #[test]
    fn dark_state_has_zero_susceptibility() {
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.03, 0.01, 0.0, 0.0).unwrap();
        let rho = solve_steady(&p, &DetuningSpec::two_photon(0.0)).unwrap();
        let (chi1, chi2) = susceptibility(&p, &rho).unwrap();
        assert_abs_diff_eq!(chi1.norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(chi2.norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(excited_population(&p, &rho), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn excited_population_identity_on_solved_points() {
        let p = draw_params();
        for delta in [-3e-3, 1e-4, 2.4e-3, 0.3] {
            let rho = solve_steady(&p, &DetuningSpec::two_photon(delta)).unwrap();
            assert!(excited_population_identity_gap(&p, &rho) < 1e-10);
        }
    }

    #[test]
    fn background_absorption_is_positive_and_dips_at_resonance() {
        let p = fig2_params();
        let gd = gamma_d(&p);
        let center = solve_steady(&p, &DetuningSpec::two_photon(stark_shift(&p))).unwrap();
        let wing = solve_steady(&p, &DetuningSpec::two_photon(50.0 * gd)).unwrap();
        let chi1_center = susceptibility_g(&p, &center, 1).unwrap().im;
        let chi1_wing = susceptibility_g(&p, &wing, 1).unwrap().im;
        assert!(chi1_wing > 0.0);
        assert!(chi1_center < 0.2 * chi1_wing);
        // Wing value approaches the Ω₂²/(Ω₁²+Ω₂²) background.
        assert!((chi1_wing - 0.1).abs() < 0.03);
    }

    #[test]
    fn adiabatic_chi_matches_exact_to_second_order_in_drive() {
        let mut p = draw_params();
        let mut gaps = Vec::new();
        for scale in [1.0, 0.5] {
            p.rabi_1 = 0.05 * scale;
            p.rabi_2 = 0.03 * scale;
            let det = DetuningSpec::two_photon(1.5 * gamma_d(&p));
            let rho = solve_steady(&p, &det).unwrap();
            let exact = susceptibility_g(&p, &rho, 1).unwrap().im;
            let adia = chi_adiabatic(&p, &det, 1).unwrap().im;
            let rel = (exact - adia).abs() / exact.abs();
            assert!(rel < 10.0 * p.intensity(), "relative gap {rel:.3e}");
            gaps.push(rel);
        }
        // Quartering the intensity should cut the deviation ~4x.
        assert!(gaps[1] < 0.5 * gaps[0]);
    }

    #[test]
    fn reconstruction_matches_adiabatic_chi_pointwise() {
        let p = draw_params();
        let rat = reconstruct_rational(&p, 1).unwrap();
        assert_eq!(rat.provenance, Provenance::Reconstructed);
        let gd = gamma_d(&p);
        for i in 0..100 {
            let delta = -20.0 * gd + 40.0 * gd * (i as f64) / 99.0;
            let direct = chi_adiabatic(&p, &DetuningSpec::two_photon(delta), 1)
                .unwrap()
                .im;
            let fitted = rat.eval(delta);
            assert!(
                (direct - fitted).abs() <= 1e-10 * direct.abs().max(1e-3),
                "mismatch at delta={delta}: {direct} vs {fitted}"
            );
        }
        assert!(rat.denominator_single_signed(20.0 * gd));
    }

    #[test]
    fn reconstruction_is_g_independent_after_normalization() {
        let p = draw_params();
        let r1 = reconstruct_rational(&p, 1).unwrap();
        let r2 = reconstruct_rational(&p, 2).unwrap();
        for k in 0..8 {
            assert_abs_diff_eq!(r1.a[k], r2.a[k], epsilon = 1e-10 * r1.a[k].abs().max(1e-300));
        }
        for k in 0..10 {
            assert_abs_diff_eq!(r1.b[k], r2.b[k], epsilon = 1e-10 * r1.b[k].abs().max(1e-300));
        }
    }

    #[test]
    fn constant_terms_vanish_identically() {
        let rat = reconstruct_rational(&draw_params(), 1).unwrap();
        assert_eq!(rat.a[0], 0.0);
        assert_eq!(rat.b[0], 0.0);
    }

    #[test]
    fn three_level_limit_of_the_reconstruction() {
        // p = 0: χ″₁ must reduce to the three-level Λ closed form.
        let p = uniform_preset(2.0, 1.0, 0.0, 1.0, 0.04, 0.03, 0.0, 0.0).unwrap();
        let rat = reconstruct_rational(&p, 1).unwrap();
        let gd = gamma_d(&p);
        for delta in [-5.0 * gd, -0.4 * gd, 0.7 * gd, 12.0 * gd] {
            let direct = chi_adiabatic(&p, &DetuningSpec::two_photon(delta), 1)
                .unwrap()
                .im;
            assert_abs_diff_eq!(rat.eval(delta), direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn tabulated_leading_coefficients_match_the_reconstruction() {
        let p = draw_params();
        let tab = tabulated_coefficients(&p, 1).unwrap();
        let rec = reconstruct_rational(&p, 1).unwrap();
        // The entries known to be exact.
        for (fam, n) in [('A', 1), ('A', 5), ('A', 6), ('A', 7)] {
            let (t, r) = (tab.a[n], rec.a[n]);
            assert!(
                (t - r).abs() <= 1e-8 * r.abs().max(1e-300),
                "{fam}{n}: {t} vs {r}"
            );
        }
        for n in [1, 4, 6, 8, 9] {
            let (t, r) = (tab.b[n], rec.b[n]);
            assert!((t - r).abs() <= 1e-8 * r.abs().max(1e-300), "B{n}: {t} vs {r}");
        }
        // The frozen corrections repair the defective entries.
        for (fam, n) in [('A', 2), ('A', 3), ('A', 4), ('B', 2), ('B', 7)] {
            let fixed = corrected_coefficient(&p, fam, n).unwrap();
            let r = if fam == 'A' { rec.a[n] } else { rec.b[n] };
            assert!(
                (fixed - r).abs() <= 1e-8 * r.abs().max(1e-300),
                "corrected {fam}{n}: {fixed} vs {r}"
            );
        }
    }

    #[test]
    fn background_ratio_of_leading_coefficients() {
        let p = draw_params();
        let rec = reconstruct_rational(&p, 1).unwrap();
        let t1 = 1.0 + p.p_1 * p.p_1;
        let t2 = 1.0 + p.p_2 * p.p_2;
        let expected = 4.0 * t1 * t2
            / (t1 * p.rabi_1 * p.rabi_1 + t2 * p.rabi_2 * p.rabi_2);
        assert_abs_diff_eq!(
            rec.a[7] / rec.b[9],
            expected,
            epsilon = 1e-8 * expected.abs()
        );
    }

    #[test]
    fn swap_symmetry_of_the_rational_form() {
        // Exchanging field labels and negating δ reproduces χ″ of the other
        // component.
        let p = draw_params();
        let r1 = reconstruct_rational(&p, 1).unwrap();
        let r2_swapped = reconstruct_rational(&p.swapped(), 2).unwrap();
        let gd = gamma_d(&p);
        for delta in [-7.0 * gd, -0.3 * gd, 2.0 * gd] {
            assert_abs_diff_eq!(
                r1.eval(delta),
                r2_swapped.eval(-delta),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn rational_form_rejects_ground_state_decoherence() {
        let mut p = draw_params();
        p.gamma_12 = 1e-6;
        assert!(matches!(
            reconstruct_rational(&p, 1),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            tabulated_coefficients(&p, 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn spectrum_paths_are_consistent() {
        let p = fig2_params();
        let gd = gamma_d(&p);
        let deltas: Vec<f64> = (0..41).map(|i| -4.0 * gd + 8.0 * gd * (i as f64) / 40.0).collect();
        let exact = spectrum(&p, &deltas, 0.0, SolverPath::Exact).unwrap();
        let adia = spectrum(&p, &deltas, 0.0, SolverPath::Adiabatic).unwrap();
        let rational = spectrum(&p, &deltas, 0.0, SolverPath::Rational).unwrap();
        assert_eq!(exact.points.len(), 41);
        for i in 0..41 {
            let (e, a, r) = (&exact.points[i], &adia.points[i], &rational.points[i]);
            assert!(e.rho_exc >= -1e-12 && e.rho_exc <= 1.0);
            assert!(e.rho11 + e.rho22 + e.rho_exc <= 1.0 + 1e-9);
            assert!((e.chi1_im - a.chi1_im).abs() <= 10.0 * p.intensity() * e.chi1_im.abs().max(1e-4));
            assert!((a.chi1_im - r.chi1_im).abs() <= 1e-10 * a.chi1_im.abs().max(1e-4));
        }
        // Im rho12 crosses zero between grid points bracketing delta0.
        let crossing = exact
            .points
            .windows(2)
            .any(|w| w[0].rho12_im.signum() != w[1].rho12_im.signum());
        assert!(crossing);
    }

    #[test]
    fn spectrum_single_point_and_bad_grid() {
        let p = fig2_params();
        let s = spectrum(&p, &[1e-5], 0.0, SolverPath::Exact).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(spectrum(&p, &[], 0.0, SolverPath::Exact).is_err());
        assert!(spectrum(&p, &[1e-5, 0.0], 0.0, SolverPath::Exact).is_err());
    }
}
