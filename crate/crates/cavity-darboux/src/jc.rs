//! Standard cavity-QED quantities: Rabi frequency, Jaynes-Cummings atomic
//! inversion over a coherent state, potential magnitudes, and the
//! classical/quantum boundary amplitude.

use num_complex::Complex64 as C64;

/// Physical constants of the atom-field model.
///
/// `delta` and `kappa` are recomputed from the stored frequencies on every
/// access so they can never go stale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    /// Coupling strength Ω (> 0).
    pub coupling: f64,
    /// Field frequency ω (> 0).
    pub omega: f64,
    /// Atomic transition frequency ω₀.
    pub omega0: f64,
    /// Planck constant scale ħ (> 0, default 1).
    pub hbar: f64,
    /// Classical field amplitude b₀ (real).
    pub b0: f64,
    /// Coherent-state amplitude γ; the mean photon number is |γ|².
    pub gamma: C64,
}

impl PhysParams {
    /// Builds a parameter set from the detuning Δ = ω₀ − ω (the frequencies
    /// ω and ω₀ are never needed separately by the observables, only Δ).
    pub fn from_detuning(
        coupling: f64,
        omega: f64,
        delta: f64,
        hbar: f64,
        b0: f64,
        gamma: C64,
    ) -> Self {
        let p = PhysParams {
            coupling,
            omega,
            omega0: omega + delta,
            hbar,
            b0,
            gamma,
        };
        p.validate();
        p
    }

    fn validate(&self) {
        assert!(self.coupling > 0.0, "coupling must be positive");
        assert!(self.omega > 0.0, "omega must be positive");
        assert!(self.hbar > 0.0, "hbar must be positive");
        assert!(self.gamma.re.is_finite() && self.gamma.im.is_finite());
    }

    /// Detuning Δ = ω₀ − ω.
    pub fn delta(&self) -> f64 {
        self.omega0 - self.omega
    }

    /// Normalized detuning κ = Δ/(2Ω).
    pub fn kappa(&self) -> f64 {
        self.delta() / (2.0 * self.coupling)
    }

    /// Mean photon number n̄ = |γ|².
    pub fn nbar(&self) -> f64 {
        self.gamma.norm_sqr()
    }

    /// The product ħΩ, the only combination in which ħ and Ω enter the
    /// intertwining systems.
    pub fn hw(&self) -> f64 {
        self.hbar * self.coupling
    }

    /// Classical amplitude at the quantum/classical boundary for photon
    /// number `n`: |b₀| = sqrt(n + 1/2) equates the classical and
    /// Jaynes-Cummings potential magnitudes.
    pub fn classical_boundary_amplitude(n: u32) -> f64 {
        (n as f64 + 0.5).sqrt()
    }
}

/// A time grid with atomic-inversion values on it.
#[derive(Debug, Clone)]
pub struct InversionTrace {
    pub t: Vec<f64>,
    pub w: Vec<f64>,
}

impl InversionTrace {
    /// Panics unless the grid is strictly increasing and lengths agree.
    pub fn new(t: Vec<f64>, w: Vec<f64>) -> Self {
        assert_eq!(t.len(), w.len(), "grid/value length mismatch");
        assert!(
            t.windows(2).all(|p| p[0] < p[1]),
            "time grid must be strictly increasing"
        );
        InversionTrace { t, w }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Rabi frequency Ω_n = sqrt(Ω (κ² + n + 1)).
pub fn rabi_frequency(n: u32, p: &PhysParams) -> f64 {
    let kappa = p.kappa();
    (p.coupling * (kappa * kappa + n as f64 + 1.0)).sqrt()
}

/// ln(n!) by direct accumulation; exact enough for the few hundred terms a
/// Poisson sum ever needs.
fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Poisson weights e^(-n̄) n̄^n / n! for n = 0..=n_max, computed in log
/// space: the numerator and factorial both overflow long before the weight
/// underflows.
pub fn poisson_weights(nbar: f64, n_max: u32) -> Vec<f64> {
    assert!(nbar >= 0.0, "mean photon number must be nonnegative");
    if nbar == 0.0 {
        let mut w = vec![0.0; n_max as usize + 1];
        w[0] = 1.0;
        return w;
    }
    let ln_nbar = nbar.ln();
    (0..=n_max)
        .map(|n| (-nbar + n as f64 * ln_nbar - ln_factorial(n)).exp())
        .collect()
}

/// Smallest `N` whose Poisson tail mass `P(X > N)` falls below `tol`.
pub fn poisson_truncation(nbar: f64, tol: f64) -> u32 {
    assert!(nbar >= 0.0, "mean photon number must be nonnegative");
    assert!(tol > 0.0 && tol < 1.0, "tolerance must lie in (0, 1)");
    if nbar == 0.0 {
        return 0;
    }
    let ln_nbar = nbar.ln();
    let mut ln_fact = 0.0;
    let mut cumulative = 0.0;
    let mut n: u32 = 0;
    loop {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        cumulative += (-nbar + n as f64 * ln_nbar - ln_fact).exp();
        if 1.0 - cumulative < tol {
            return n;
        }
        n += 1;
        assert!(n < 1_000_000, "poisson_truncation failed to converge");
    }
}

/// Jaynes-Cummings atomic inversion at time `t`, summing the coherent-state
/// photon distribution through `n_max`:
///
/// ```text
/// W(t) = e^(-n̄) Σ_n n̄^n/n! (1 - 2 Ω² (n+1) sin²(Ω_n t) / Ω_n²)
/// ```
pub fn atomic_inversion(t: f64, p: &PhysParams, n_max: u32) -> f64 {
    let weights = poisson_weights(p.nbar(), n_max);
    atomic_inversion_with_weights(t, p, &weights)
}

/// Same as [`atomic_inversion`] with precomputed Poisson weights, for grid
/// evaluation.
pub fn atomic_inversion_with_weights(t: f64, p: &PhysParams, weights: &[f64]) -> f64 {
    let kappa2 = p.kappa() * p.kappa();
    let om2 = p.coupling * p.coupling;
    weights
        .iter()
        .enumerate()
        .map(|(n, &wn)| {
            let on2 = p.coupling * (kappa2 + n as f64 + 1.0);
            let s = (on2.sqrt() * t).sin();
            wn * (1.0 - 2.0 * om2 * (n as f64 + 1.0) * s * s / on2)
        })
        .sum()
}

/// Evaluates the standard inversion on a grid, checking the |W| <= 1 bound
/// the normalized model guarantees.
pub fn inversion_trace(grid: &[f64], p: &PhysParams, n_max: u32) -> InversionTrace {
    let weights = poisson_weights(p.nbar(), n_max);
    let w: Vec<f64> = grid
        .iter()
        .map(|&t| atomic_inversion_with_weights(t, p, &weights))
        .collect();
    debug_assert!(w.iter().all(|v| v.abs() <= 1.0 + 1e-9));
    InversionTrace::new(grid.to_vec(), w)
}

/// Jaynes-Cummings potential magnitude (ħΩ)² (n + 1/2).
pub fn jc_potential_magnitude(n: u32, p: &PhysParams) -> f64 {
    let hw = p.hw();
    hw * hw * (n as f64 + 0.5)
}
