//! Solvers for the per-σ intertwining systems: homotopy order recursion plus
//! resummation for σ₁, an exactly integrated conservation law plus pointwise
//! quadratic for σ₃, an eliminated implicit complex ODE for σ₂, and an
//! independent adaptive Runge-Kutta oracle.

mod hpm;
mod phase_poly;
pub mod residuals;
mod rk;
mod sigma2;
mod sigma3;

use num_complex::Complex64 as C64;
use thiserror::Error;

pub use hpm::{
    closed_form_sigma1, hpm_solve_sigma1, resum_sigma1, sigma1_initial_state, HpmExpansion,
};
pub use rk::{rk_oracle, Dopri5, Rhs};
pub use sigma2::{sigma2_alpha, sigma2_derivatives, sigma2_rhs, solve_sigma2};
pub use sigma3::{sigma3_alpha_from_constraint, sigma3_derivatives, solve_sigma3};

/// The pair (α, β) at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiState {
    pub alpha: C64,
    pub beta: C64,
}

impl RiccatiState {
    pub fn new(alpha: C64, beta: C64) -> Self {
        assert!(alpha.re.is_finite() && alpha.im.is_finite());
        assert!(beta.re.is_finite() && beta.im.is_finite());
        RiccatiState { alpha, beta }
    }
}

/// Failure modes of the trajectory solvers.
#[derive(Debug, Error)]
pub enum SolverError {
    /// b₀ = 1 makes the σ₁ initial condition singular.
    #[error("degenerate amplitude: b0 = 1 puts a pole in the initial condition")]
    DegenerateAmplitude,
    /// Both quadratic roots jumped away from the previous point; a branch
    /// collision on the σ₃ track.
    #[error("root jump at t = {t}: nearest root moved {dist:.3e} (threshold {threshold:.3e})")]
    RootJump { t: f64, dist: f64, threshold: f64 },
    /// An eliminating denominator (β − b₀ cos ωt up to scale) vanished.
    #[error("singular denominator at t = {t}")]
    SingularDenominator { t: f64 },
    /// The coefficient multiplying the implicit derivative vanished.
    #[error("implicit ODE coefficient vanished at t = {t}")]
    ImplicitSingularity { t: f64 },
    /// The adaptive step collapsed; a singularity sits on the path.
    #[error("step size underflow at t = {t} (h = {h:.3e})")]
    StepUnderflow { t: f64, h: f64 },
}

/// Relative scale used when flagging vanishing denominators.
pub(crate) fn singularity_tolerance(b0: f64) -> f64 {
    1e-10 * 1.0f64.max(b0.abs())
}
