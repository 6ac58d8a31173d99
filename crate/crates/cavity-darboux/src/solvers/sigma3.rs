//! σ₃ trajectory solver.
//!
//! The derivative member of the σ₃ system integrates exactly:
//! `d/dt (β + iα) = −iω b₀ e^{−iωt}`, so `β(t) + iα(t) − b₀ e^{−iωt}` is a
//! constant fixed by the initial state. Substituting `α = i(β − K(t))` with
//! `K(t) = K₀ + b₀ e^{−iωt}` into the algebraic member turns it into a
//! quadratic in β at each grid point:
//!
//! ```text
//! 2β² − β S(t) + C(t) = 0,
//! S = K + 2b₀ cos ωt + b₀ e^{−iωt},
//! C = K b₀ cos ωt + (b₀²/2)(1 + e^{−2iωt}) + (b₀²ω/2)(sin ωt + cos ωt),
//! ```
//!
//! whose root is selected by continuity with the previous point. This
//! eliminates integration drift entirely and makes the conservation law
//! exactly testable.

use num_complex::Complex64 as C64;

use super::{singularity_tolerance, RiccatiState, SolverError};
use crate::complex::csqrt;
use crate::darboux::{classical_field, DarbouxSolution, SigmaChoice};
use crate::jc::PhysParams;

/// Quadratic coefficients (S, C) at time `t` for the conserved combination
/// constant `k0`.
fn quadratic_parts(t: f64, k0: C64, p: &PhysParams) -> (C64, C64) {
    let b0 = p.b0;
    let e = (-C64::i() * p.omega * t).exp();
    let c = (p.omega * t).cos();
    let s = (p.omega * t).sin();
    let k = k0 + b0 * e;
    let big_s = k + 2.0 * b0 * c + b0 * e;
    let big_c = k * b0 * c + 0.5 * b0 * b0 * (1.0 + e * e) + 0.5 * b0 * b0 * p.omega * (s + c);
    (big_s, big_c)
}

fn quadratic_roots(big_s: C64, big_c: C64) -> (C64, C64) {
    let disc = csqrt(big_s * big_s - 8.0 * big_c);
    ((big_s + disc) / 4.0, (big_s - disc) / 4.0)
}

/// α₃ consistent with the algebraic member at `(t, β)`, used to build
/// initial states. Fails when the eliminating factor `β − b₀ cos ωt`
/// vanishes to within tolerance.
pub fn sigma3_alpha_from_constraint(t: f64, beta: C64, p: &PhysParams) -> Result<C64, SolverError> {
    let b0 = p.b0;
    let e = (-C64::i() * p.omega * t).exp();
    let c = (p.omega * t).cos();
    let s = (p.omega * t).sin();
    let den = beta - b0 * c;
    if den.norm() < singularity_tolerance(b0) {
        return Err(SolverError::SingularDenominator { t });
    }
    let i = C64::i();
    let rest = -i * b0 * beta * (c + e)
        + i * beta * beta
        + (i * b0 / 2.0) * (b0 * (1.0 + e * e) + b0 * p.omega * (s + c));
    Ok(-rest / den)
}

/// Solves the σ₃ system on the grid. The first grid point reproduces `ic`
/// exactly; later points take the quadratic root nearest the previous β,
/// with the branch-collision threshold `0.5|b₀| + 10 Δt |b₀ ω|`.
pub fn solve_sigma3(
    p: &PhysParams,
    ic: &RiccatiState,
    grid: &[f64],
) -> Result<DarbouxSolution, SolverError> {
    assert!(!grid.is_empty(), "empty grid");
    assert!(
        grid.windows(2).all(|w| w[0] < w[1]),
        "grid must be strictly increasing"
    );
    let k0 = ic.beta + C64::i() * ic.alpha - classical_field(grid[0], p);

    let mut alpha = Vec::with_capacity(grid.len());
    let mut beta = Vec::with_capacity(grid.len());
    alpha.push(ic.alpha);
    beta.push(ic.beta);
    let mut prev = ic.beta;
    for (idx, &t) in grid.iter().enumerate().skip(1) {
        let (big_s, big_c) = quadratic_parts(t, k0, p);
        let (r1, r2) = quadratic_roots(big_s, big_c);
        let (near, dist) = if (r1 - prev).norm() <= (r2 - prev).norm() {
            (r1, (r1 - prev).norm())
        } else {
            (r2, (r2 - prev).norm())
        };
        let dt = t - grid[idx - 1];
        let threshold = 0.5 * p.b0.abs() + 10.0 * dt * (p.b0 * p.omega).abs();
        if dist > threshold {
            return Err(SolverError::RootJump { t, dist, threshold });
        }
        let k = k0 + p.b0 * (-C64::i() * p.omega * t).exp();
        alpha.push(C64::i() * (near - k));
        beta.push(near);
        prev = near;
    }
    Ok(DarbouxSolution::new(
        SigmaChoice::Sigma3,
        grid.to_vec(),
        alpha,
        beta,
        p,
    ))
}

/// Time derivatives (α̇, β̇) along a σ₃ solution.
///
/// β̇ comes from implicit differentiation of the quadratic,
/// `β̇ = (β Ṡ − Ċ)/(4β − S)`, and α̇ from the derivative member. Near a
/// double root (vanishing 4β − S) the derivative falls back to a centered
/// difference of the locally re-solved quadratic with step
/// `h = 1e−6 max(1, |t|)`.
pub fn sigma3_derivatives(p: &PhysParams, sol: &DarbouxSolution) -> Vec<(C64, C64)> {
    let k0 = sol.beta[0] + C64::i() * sol.alpha[0] - classical_field(sol.t[0], p);
    let b0 = p.b0;
    let w = p.omega;
    sol.t
        .iter()
        .zip(&sol.beta)
        .map(|(&t, &b)| {
            let e = (-C64::i() * w * t).exp();
            let c = (w * t).cos();
            let s = (w * t).sin();
            let k = k0 + b0 * e;
            let (big_s, _) = quadratic_parts(t, k0, p);
            let s_dot = -2.0 * C64::i() * w * b0 * e - 2.0 * b0 * w * s;
            let c_dot =
                -C64::i() * w * b0 * b0 * e * c - k * b0 * w * s - C64::i() * w * b0 * b0 * e * e
                    + 0.5 * b0 * b0 * w * w * (c - s);
            let lead = 4.0 * b - big_s;
            let beta_dot = if lead.norm() > 1e-8 * 1.0f64.max(b0.abs()) {
                (b * s_dot - c_dot) / lead
            } else {
                let h = 1e-6 * 1.0f64.max(t.abs());
                let resolve = |tt: f64| -> C64 {
                    let (ss, cc) = quadratic_parts(tt, k0, p);
                    let (r1, r2) = quadratic_roots(ss, cc);
                    if (r1 - b).norm() <= (r2 - b).norm() {
                        r1
                    } else {
                        r2
                    }
                };
                (resolve(t + h) - resolve(t - h)) / (2.0 * h)
            };
            // derivative member: α̇ = i(β̇ + iω b₀ e^{−iωt})
            let alpha_dot = C64::i() * (beta_dot + C64::i() * w * b0 * e);
            (alpha_dot, beta_dot)
        })
        .collect()
}
