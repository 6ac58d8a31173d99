//! σ₂ trajectory solver.
//!
//! The algebraic member of the σ₂ system fixes α pointwise,
//!
//! ```text
//! α = g(t, β) = iω b₀ (sin ωt + cos ωt) / (2β − 2b₀ cos ωt),
//! ```
//!
//! and substituting `α̇ = ∂g/∂t + ∂g/∂β · β̇` into the derivative member
//! leaves one implicit scalar complex ODE,
//!
//! ```text
//! β̇ = −(2ħΩ β(β − b) + i ∂g/∂t − iω b) / (i ∂g/∂β − 1),
//! ```
//!
//! integrated by adaptive Runge-Kutta; α is recovered pointwise afterwards.

use num_complex::Complex64 as C64;

use super::rk::Dopri5;
use super::{singularity_tolerance, SolverError};
use crate::darboux::{classical_field, DarbouxSolution, SigmaChoice};
use crate::jc::PhysParams;

struct GParts {
    g: C64,
    g_t: C64,
    g_beta: C64,
}

fn g_parts(t: f64, beta: C64, p: &PhysParams) -> Result<GParts, SolverError> {
    let b0 = p.b0;
    let w = p.omega;
    let c = (w * t).cos();
    let s = (w * t).sin();
    if (beta - b0 * c).norm() < singularity_tolerance(b0) {
        return Err(SolverError::SingularDenominator { t });
    }
    let d = 2.0 * beta - 2.0 * b0 * c;
    let iwb = C64::i() * w * b0;
    let g = iwb * (s + c) / d;
    let g_beta = -2.0 * iwb * (s + c) / (d * d);
    let g_t = iwb * (w * (c - s) / d - (s + c) * (2.0 * b0 * w * s) / (d * d));
    Ok(GParts { g, g_t, g_beta })
}

/// α₂ recovered from the algebraic member at `(t, β)`.
pub fn sigma2_alpha(t: f64, beta: C64, p: &PhysParams) -> Result<C64, SolverError> {
    Ok(g_parts(t, beta, p)?.g)
}

/// The eliminated derivative β̇ at `(t, β)`.
pub fn sigma2_rhs(t: f64, beta: C64, p: &PhysParams) -> Result<C64, SolverError> {
    let parts = g_parts(t, beta, p)?;
    let coeff = C64::i() * parts.g_beta - 1.0;
    if coeff.norm() < 1e-10 {
        return Err(SolverError::ImplicitSingularity { t });
    }
    let b = classical_field(t, p);
    let num = 2.0 * p.hw() * beta * (beta - b) + C64::i() * parts.g_t - C64::i() * p.omega * b;
    Ok(-num / coeff)
}

/// Integrates β₂ over the grid from `ic_beta` and recovers α₂ pointwise.
pub fn solve_sigma2(
    p: &PhysParams,
    ic_beta: C64,
    grid: &[f64],
) -> Result<DarbouxSolution, SolverError> {
    assert!(!grid.is_empty(), "empty grid");
    assert!(
        grid.windows(2).all(|w| w[0] < w[1]),
        "grid must be strictly increasing"
    );
    let p_owned = *p;
    let rhs = move |t: f64, y: &[C64], dy: &mut [C64]| -> Result<(), SolverError> {
        dy[0] = sigma2_rhs(t, y[0], &p_owned)?;
        Ok(())
    };
    let states = Dopri5::default().integrate(rhs, &[ic_beta], grid)?;
    let beta: Vec<C64> = states.into_iter().map(|row| row[0]).collect();
    let alpha = grid
        .iter()
        .zip(&beta)
        .map(|(&t, &b)| sigma2_alpha(t, b, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DarbouxSolution::new(
        SigmaChoice::Sigma2,
        grid.to_vec(),
        alpha,
        beta,
        p,
    ))
}

/// Time derivatives (α̇, β̇) along a σ₂ solution: β̇ from the eliminated
/// right-hand side (the integrator's own derivative), α̇ by the chain rule
/// through the algebraic member.
pub fn sigma2_derivatives(
    p: &PhysParams,
    sol: &DarbouxSolution,
) -> Result<Vec<(C64, C64)>, SolverError> {
    sol.t
        .iter()
        .zip(&sol.beta)
        .map(|(&t, &b)| {
            let parts = g_parts(t, b, p)?;
            let beta_dot = sigma2_rhs(t, b, p)?;
            Ok((parts.g_t + parts.g_beta * beta_dot, beta_dot))
        })
        .collect()
}
