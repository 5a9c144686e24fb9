//! Error types shared across the crate.

use thiserror::Error;

/// Unified error type for model validation, linear algebra, and root finding.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A model parameter is outside its physical domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Both Rabi frequencies vanish; the optical problem is empty.
    #[error("no drive: both Rabi frequencies are zero")]
    NoDrive,

    /// The requested Rabi frequency is zero where a per-field quantity is needed.
    #[error("zero drive on field {0}")]
    ZeroDrive(u8),

    /// Optical decoherence below the radiative bound Gamma >= gamma_exc / 2.
    #[error("optical decoherence rate {gamma_opt} is below the radiative bound {bound}")]
    DecoherenceBound { gamma_opt: f64, bound: f64 },

    /// The steady-state linear system is singular.
    #[error("singular steady-state system")]
    SingularSystem,

    /// The steady-state linear system is too ill-conditioned to trust.
    #[error("ill-conditioned steady-state system (cond ~ {0:.3e})")]
    IllConditioned(f64),

    /// The steady-state residual exceeded its tolerance.
    #[error("steady-state residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    /// The requested integration step violates the explicit stability bound.
    #[error("time step {dt:.3e} exceeds stability bound {bound:.3e}")]
    StepTooLarge { dt: f64, bound: f64 },

    /// The adiabatic 2x2 reduction is degenerate (zero ground-coherence pivot).
    #[error("degenerate adiabatic reduction")]
    DegenerateReduction,

    /// The operation requires a restricted parameter regime it did not get.
    #[error("unsupported regime: {0}")]
    Unsupported(String),

    /// Exact rational reconstruction could not be completed or verified.
    #[error("rational reconstruction degenerate: {0}")]
    FitDegenerate(String),

    /// No sign change of the dispersive signal inside the search window.
    #[error("no zero of Im rho12 inside the search window")]
    NoZeroInWindow,

    /// No real polynomial root with the requested curvature inside the window.
    #[error("no real extremum root inside the search window")]
    NoRealRootInWindow,

    /// Companion-matrix root finding failed or produced unusable roots.
    #[error("extremum polynomial is ill-conditioned: {0}")]
    PolynomialIllConditioned(String),

    /// No interior extremum: the scan converged onto the window boundary.
    #[error("no interior extremum inside the search window")]
    NoExtremum,

    /// The resonance feature is absent (contrast below threshold).
    #[error("resonance absent at x = {x:.3e} (contrast {contrast:.3e})")]
    ResonanceAbsent { x: f64, contrast: f64 },

    /// The quadratic series fit is ill-conditioned.
    #[error("ill-conditioned series fit (cond ~ {0:.3e})")]
    FitIllConditioned(f64),
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
