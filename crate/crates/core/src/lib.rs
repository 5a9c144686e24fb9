//! Line shapes and light shifts of coherent-population-trapping (CPT)
//! resonances in a four-level double-Λ atom.
//!
//! Two ground states |1⟩, |2⟩ couple to two excited states |3⟩, |4⟩
//! (split by ω₃₄) through a bichromatic field; each component g drives its
//! resonant transition |g⟩→|3⟩ with half-Rabi frequency Ω_g and the
//! off-resonant |g⟩→|4⟩ with p_g Ω_g. The crate computes:
//!
//! - the exact steady-state density matrix ([`steady_state`]) and a
//!   time-domain integrator for cross-validation;
//! - complex susceptibilities, the excited-state population, and full line
//!   shapes over detuning grids ([`observables`]), including an exact
//!   rational closed form of the absorption χ″(δ) reconstructed in
//!   arbitrary-precision rational arithmetic;
//! - weak-coupling closed forms for the resonance width, AC Stark shift,
//!   and line-distortion shift ([`weak_coupling`]);
//! - resonance-position extraction by three independent methods, contrast,
//!   and the small-intensity series δ₀(x) = α₁x + α₂x² ([`shift`]);
//! - a self-contained validation suite ([`validation`]).
//!
//! Units: the optical decoherence rate Γ (`gamma_opt`) is the natural
//! frequency unit; all rates, detunings, and Rabi frequencies are quoted
//! in Γ.
//!
//! ```
//! use cpt_core::{uniform_preset, shift_from_rho12, SolverPath};
//!
//! // omega_34 = 10, drives 3:1 in intensity, opposite dipole ratios.
//! let params = uniform_preset(
//!     2.0, 1.0, 0.0, 10.0,
//!     (9e-5f64).sqrt(), (1e-5f64).sqrt(), 1.0, -1.0,
//! ).unwrap();
//! let report = shift_from_rho12(&params, SolverPath::Exact).unwrap();
//! assert!((report.delta0 - 1.6e-5).abs() < 2e-6);
//! ```
//!
//! Grid-valued operations run data-parallel under the default `parallel`
//! feature and sequentially (identical results) without it.

pub mod error;
pub mod model;
pub mod observables;
pub mod par;
mod search;
pub mod shift;
pub mod steady_state;
pub mod validation;
pub mod weak_coupling;

pub use error::{Error, Result};
pub use model::{
    uniform_preset, validate, validate_detuning, BranchingRatios, DetuningSpec, ModelParams,
    ValidationReport,
};
pub use observables::{
    chi_adiabatic, excited_population, reconstruct_rational, spectrum, susceptibility,
    tabulated_coefficients, Provenance, RationalChi, SolverPath, Spectrum, SpectrumPoint,
};
pub use shift::{
    chi_extremum_polynomial, contrast, rho_exc_extremum, series_coefficients, shift_from_rho12,
    shift_vs_intensity, ExtremumReport, SeriesCoeffs, ShiftCurve, CONTRAST_THRESHOLD,
    DEFAULT_X_GRID,
};
pub use steady_state::{evolve, solve_steady, DensityMatrix};
pub use weak_coupling::{
    distortion_shift, g_factor, gamma_d, gamma_d_effective, shift_weak, stark_shift, ShiftResult,
};
