//! Point residuals of the three defining systems, assembled term by term
//! from the component equations so that solver outputs can be plugged back
//! in through an expression path independent of the solvers.

use num_complex::Complex64 as C64;

use crate::jc::PhysParams;

fn phase(t: f64, p: &PhysParams) -> (C64, C64, f64, f64) {
    let e_minus = (-C64::i() * p.omega * t).exp();
    let e_plus = (C64::i() * p.omega * t).exp();
    (e_minus, e_plus, (p.omega * t).cos(), (p.omega * t).sin())
}

/// Residual pair of the σ₁ system:
///
/// ```text
/// (a)  α̇/(2ħΩ) − β² + β(e^{iωt} + b₀ e^{−iωt}) + b₀
/// (b)  −β̇ + iω b₀ e^{−iωt}(ħΩ − 1) + 2 α ħΩ (β − cos ωt)
/// ```
pub fn eq9_residuals(
    t: f64,
    alpha_dot: C64,
    beta_dot: C64,
    alpha: C64,
    beta: C64,
    p: &PhysParams,
) -> (f64, f64) {
    let (e_minus, e_plus, c, _s) = phase(t, p);
    let hw = p.hw();
    let ra = alpha_dot / (2.0 * hw) - beta * beta
        + beta * (e_plus + p.b0 * e_minus)
        + C64::new(p.b0, 0.0);
    let rb = -beta_dot
        + C64::i() * p.omega * p.b0 * e_minus * (hw - 1.0)
        + 2.0 * alpha * hw * (beta - c);
    (ra.norm(), rb.norm())
}

/// Residual of the σ₃ derivative equation `β̇ + iα̇ + iω b₀ e^{−iωt}`.
pub fn eq16a_residual(t: f64, alpha_dot: C64, beta_dot: C64, p: &PhysParams) -> f64 {
    let (e_minus, _, _, _) = phase(t, p);
    (beta_dot + C64::i() * alpha_dot + C64::i() * p.omega * p.b0 * e_minus).norm()
}

/// Residual of the σ₃ algebraic equation
///
/// ```text
/// α(β − b₀ cos ωt) − i b₀ β (cos ωt + e^{−iωt}) + iβ²
///   + (i b₀/2)(b₀(1 + e^{−2iωt}) + b₀ ω (sin ωt + cos ωt))
/// ```
pub fn eq16b_residual(t: f64, alpha: C64, beta: C64, p: &PhysParams) -> f64 {
    let (e_minus, _, c, s) = phase(t, p);
    let i = C64::i();
    let b0 = p.b0;
    let r = alpha * (beta - b0 * c) - i * b0 * beta * (c + e_minus)
        + i * beta * beta
        + (i * b0 / 2.0) * (b0 * (1.0 + e_minus * e_minus) + b0 * p.omega * (s + c));
    r.norm()
}

/// Residual of the σ₂ derivative equation
///
/// ```text
/// 2ħΩ(β² − β b₀ e^{−iωt}) + iα̇ − (iω b₀ e^{−iωt} + β̇)
/// ```
pub fn eq17a_residual(t: f64, alpha_dot: C64, beta_dot: C64, beta: C64, p: &PhysParams) -> f64 {
    let (e_minus, _, _, _) = phase(t, p);
    let r = 2.0 * p.hw() * (beta * beta - beta * p.b0 * e_minus) + C64::i() * alpha_dot
        - (C64::i() * p.omega * p.b0 * e_minus + beta_dot);
    r.norm()
}

/// Residual of the σ₂ algebraic equation
///
/// ```text
/// −ħΩ b₀ (iω)(sin ωt + cos ωt) + ħΩ α (2β − b₀ e^{iωt}) − ħΩ α b₀ e^{−iωt}
/// ```
pub fn eq17b_residual(t: f64, alpha: C64, beta: C64, p: &PhysParams) -> f64 {
    let (e_minus, e_plus, c, s) = phase(t, p);
    let hw = p.hw();
    let r = -hw * p.b0 * (C64::i() * p.omega) * (s + c) + hw * alpha * (2.0 * beta - p.b0 * e_plus)
        - hw * alpha * p.b0 * e_minus;
    r.norm()
}
