//! The modified Rabi frequency and modified atomic inversion, driven by the
//! classical occupation of the transformed field.

use num_complex::Complex64 as C64;

use crate::complex::csqrt;
use crate::darboux::DarbouxSolution;
use crate::jc::{poisson_weights, PhysParams};

/// The classical occupation `b[1]† b[1] = |2β(t) − b(t)|²` sampled on the
/// solution grid; nonnegative pointwise by construction.
#[derive(Debug, Clone)]
pub struct ModifiedDrive {
    pub t: Vec<f64>,
    pub nbb: Vec<f64>,
}

impl ModifiedDrive {
    pub fn new(t: Vec<f64>, nbb: Vec<f64>) -> Self {
        assert_eq!(t.len(), nbb.len());
        assert!(nbb.iter().all(|&v| v >= 0.0), "occupation must be >= 0");
        ModifiedDrive { t, nbb }
    }

    /// Applies the switch-on protocol (zero before `t_on`) and an amplitude
    /// scale factor to the occupation.
    pub fn gated(&self, t_on: f64, scale: f64) -> ModifiedDrive {
        let nbb = self
            .t
            .iter()
            .zip(&self.nbb)
            .map(|(&t, &v)| if t < t_on { 0.0 } else { scale * v })
            .collect();
        ModifiedDrive {
            t: self.t.clone(),
            nbb,
        }
    }
}

/// Reads the occupation off a solved trajectory: `nbb[k] = |b1[k]|²`.
pub fn drive_from_solution(sol: &DarbouxSolution) -> ModifiedDrive {
    ModifiedDrive {
        t: sol.t.clone(),
        nbb: sol.b1.iter().map(|b| b.norm_sqr()).collect(),
    }
}

/// Modified Rabi frequency `Ω_n^m = sqrt(Ω(κ² + b†b + n + 1))`.
pub fn modified_rabi_frequency(n: u32, nbb: f64, p: &PhysParams) -> f64 {
    assert!(nbb >= 0.0);
    let kappa = p.kappa();
    (p.coupling * (kappa * kappa + nbb + n as f64 + 1.0)).sqrt()
}

/// Modified atomic inversion at one instant:
///
/// ```text
/// W(t) = e^(-n̄) Σ_n n̄^n/n! (1 - 2Ω² sqrt(b†b + n + 1) sin²(Ω_n^m t)/(Ω_n^m)²)
/// ```
///
/// The square root follows the principal-branch convention of
/// [`csqrt`](crate::complex::csqrt); the argument is real and nonnegative
/// here, so the real branch applies. Unlike the standard inversion the
/// amplitude factor is sqrt(b†b + n + 1), so the modified sum is not
/// normalized to [-1, 1].
pub fn modified_inversion(t: f64, nbb_at_t: f64, p: &PhysParams, n_max: u32) -> f64 {
    let weights = poisson_weights(p.nbar(), n_max);
    modified_inversion_with_weights(t, nbb_at_t, p, &weights)
}

/// Same as [`modified_inversion`] with precomputed Poisson weights.
pub fn modified_inversion_with_weights(
    t: f64,
    nbb_at_t: f64,
    p: &PhysParams,
    weights: &[f64],
) -> f64 {
    assert!(nbb_at_t >= 0.0);
    let kappa2 = p.kappa() * p.kappa();
    let om2 = p.coupling * p.coupling;
    weights
        .iter()
        .enumerate()
        .map(|(n, &wn)| {
            let arg = nbb_at_t + n as f64 + 1.0;
            let root = csqrt(C64::new(arg, 0.0)).re;
            let om_m2 = p.coupling * (kappa2 + arg);
            let s = (om_m2.sqrt() * t).sin();
            wn * (1.0 - 2.0 * om2 * root * s * s / om_m2)
        })
        .sum()
}

/// Explicit amplitude bound of the modified sum:
/// `|W| <= 1 + 2Ω² max_n sqrt(nbb + n + 1)/(Ω_n^m)²`.
pub fn modified_inversion_bound(nbb: f64, p: &PhysParams, n_max: u32) -> f64 {
    let max_amp = (0..=n_max)
        .map(|n| {
            let om_m = modified_rabi_frequency(n, nbb, p);
            2.0 * p.coupling * p.coupling * (nbb + n as f64 + 1.0).sqrt() / (om_m * om_m)
        })
        .fold(0.0f64, f64::max);
    1.0 + max_amp
}
