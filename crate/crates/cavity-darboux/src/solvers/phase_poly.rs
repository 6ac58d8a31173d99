//! Exact arithmetic on the function basis `t^n e^(i m ω t)` (polynomial
//! coefficients times integer harmonics of one base frequency).
//!
//! The homotopy order equations only ever combine constants, the drive
//! phases `e^(±iωt)` and products/antiderivatives of earlier orders, all of
//! which stay inside this basis, so every order can be integrated in closed
//! form with no quadrature.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::series::TruncSeries;

/// `sum_m P_m(t) e^(i m ω t)`, keyed by the harmonic index m.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct PhasePoly {
    terms: BTreeMap<i32, Vec<C64>>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        PhasePoly::default()
    }

    pub fn constant(c: C64) -> Self {
        PhasePoly::harmonic(0, vec![c])
    }

    /// `e^(i m ω t)` times the given polynomial.
    pub fn harmonic(m: i32, poly: Vec<C64>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, poly);
        let mut out = PhasePoly { terms };
        out.trim();
        out
    }

    /// `cos(ωt)` as half the sum of the two unit harmonics.
    pub fn cosine() -> Self {
        let half = C64::new(0.5, 0.0);
        PhasePoly::harmonic(1, vec![half]).add(&PhasePoly::harmonic(-1, vec![half]))
    }

    fn trim(&mut self) {
        for poly in self.terms.values_mut() {
            while poly.last() == Some(&C64::new(0.0, 0.0)) {
                poly.pop();
            }
        }
        self.terms.retain(|_, poly| !poly.is_empty());
    }

    pub fn add(&self, other: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (&m, poly) in &other.terms {
            let slot = out.terms.entry(m).or_default();
            if slot.len() < poly.len() {
                slot.resize(poly.len(), C64::new(0.0, 0.0));
            }
            for (s, &c) in slot.iter_mut().zip(poly) {
                *s += c;
            }
        }
        out.trim();
        out
    }

    pub fn scale(&self, f: C64) -> PhasePoly {
        let mut out = self.clone();
        for poly in out.terms.values_mut() {
            for c in poly.iter_mut() {
                *c *= f;
            }
        }
        out.trim();
        out
    }

    pub fn mul(&self, other: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (&ma, pa) in &self.terms {
            for (&mb, pb) in &other.terms {
                let mut prod = vec![C64::new(0.0, 0.0); pa.len() + pb.len() - 1];
                for (i, &ca) in pa.iter().enumerate() {
                    for (j, &cb) in pb.iter().enumerate() {
                        prod[i + j] += ca * cb;
                    }
                }
                let slot = out.terms.entry(ma + mb).or_default();
                if slot.len() < prod.len() {
                    slot.resize(prod.len(), C64::new(0.0, 0.0));
                }
                for (s, &c) in slot.iter_mut().zip(&prod) {
                    *s += c;
                }
            }
        }
        out.trim();
        out
    }

    /// Exact antiderivative vanishing at t = 0.
    ///
    /// `∫ t^n dt = t^(n+1)/(n+1)` for the zero harmonic; for `m != 0` with
    /// `a = imω`, integration by parts gives
    /// `∫_0^t τ^n e^(aτ) dτ = e^(at) Σ_k (-1)^k n!/(n-k)! t^(n-k)/a^(k+1)
    ///  - (-1)^n n!/a^(n+1)`.
    pub fn integrate(&self, omega: f64) -> PhasePoly {
        let mut out = PhasePoly::zero();
        let mut constant = C64::new(0.0, 0.0);
        for (&m, poly) in &self.terms {
            if m == 0 {
                let mut anti = vec![C64::new(0.0, 0.0); poly.len() + 1];
                for (n, &c) in poly.iter().enumerate() {
                    anti[n + 1] = c / (n as f64 + 1.0);
                }
                out = out.add(&PhasePoly::harmonic(0, anti));
                continue;
            }
            let a = C64::new(0.0, m as f64 * omega);
            let mut anti = vec![C64::new(0.0, 0.0); poly.len()];
            for (n, &c) in poly.iter().enumerate() {
                let mut falling = 1.0; // n!/(n-k)!
                let mut a_pow = a; // a^(k+1)
                let mut sign = 1.0;
                for k in 0..=n {
                    anti[n - k] += c * sign * falling / a_pow;
                    if k < n {
                        falling *= (n - k) as f64;
                        a_pow *= a;
                        sign = -sign;
                    }
                }
                // subtract the antiderivative's value at t = 0
                let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
                let n_fact: f64 = (1..=n).fold(1.0, |acc, v| acc * v as f64);
                constant -= c * parity * n_fact / a.powu(n as u32 + 1);
            }
            out = out.add(&PhasePoly::harmonic(m, anti));
        }
        out = out.add(&PhasePoly::constant(constant));
        out
    }

    #[cfg(test)]
    pub fn eval(&self, t: f64, omega: f64) -> C64 {
        self.terms
            .iter()
            .map(|(&m, poly)| {
                let horner = poly
                    .iter()
                    .rev()
                    .fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c);
                horner * (C64::new(0.0, m as f64 * omega) * t).exp()
            })
            .sum()
    }

    /// Taylor expansion through `t^order` (the harmonics expanded as
    /// exponential series).
    pub fn taylor(&self, order: usize, omega: f64) -> TruncSeries {
        let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
        for (&m, poly) in &self.terms {
            let a = C64::new(0.0, m as f64 * omega);
            // e^(at) coefficients a^j / j!
            let mut exp_coeff = vec![C64::new(1.0, 0.0); order + 1];
            for j in 1..=order {
                exp_coeff[j] = exp_coeff[j - 1] * a / j as f64;
            }
            for (i, &c) in poly.iter().enumerate() {
                if i > order {
                    break;
                }
                for j in 0..=(order - i) {
                    coeffs[i + j] += c * exp_coeff[j];
                }
            }
        }
        TruncSeries::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: f64 = 1.3;

    fn cr(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn product_of_harmonics_adds_indices() {
        let a = PhasePoly::harmonic(1, vec![cr(2.0)]);
        let b = PhasePoly::harmonic(-2, vec![cr(0.0), cr(1.0)]); // t e^{-2iwt}
        let p = a.mul(&b);
        for &t in &[0.0, 0.4, 2.2] {
            let expect = 2.0 * t * (C64::new(0.0, -W) * t).exp();
            assert!((p.eval(t, W) - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn integral_matches_hand_results() {
        // ∫_0^t e^{iwτ} dτ = (e^{iwt} - 1)/(iw)
        let f = PhasePoly::harmonic(1, vec![cr(1.0)]);
        let int = f.integrate(W);
        for &t in &[0.0, 0.7, 3.0] {
            let iw = C64::new(0.0, W);
            let expect = ((iw * t).exp() - 1.0) / iw;
            assert!((int.eval(t, W) - expect).norm() < 1e-13);
        }
        // ∫_0^t τ² dτ = t³/3
        let g = PhasePoly::harmonic(0, vec![cr(0.0), cr(0.0), cr(1.0)]);
        let int = g.integrate(W);
        assert!((int.eval(2.0, W) - cr(8.0 / 3.0)).norm() < 1e-13);
        // ∫_0^t τ e^{-iwτ} dτ, by parts
        let h = PhasePoly::harmonic(-1, vec![cr(0.0), cr(1.0)]);
        let int = h.integrate(W);
        for &t in &[0.5, 1.9] {
            let a = C64::new(0.0, -W);
            let expect = (a * t).exp() * (t / a - 1.0 / (a * a)) + 1.0 / (a * a);
            assert!((int.eval(t, W) - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn integral_vanishes_at_origin() {
        let f = PhasePoly::harmonic(2, vec![cr(1.0), cr(-0.5), cr(2.0)])
            .add(&PhasePoly::harmonic(0, vec![cr(3.0), cr(1.0)]))
            .add(&PhasePoly::harmonic(-1, vec![cr(0.0), cr(0.0), cr(1.0)]));
        let int = f.integrate(W);
        assert!(int.eval(0.0, W).norm() < 1e-14);
    }

    #[test]
    fn taylor_agrees_with_eval() {
        let f = PhasePoly::harmonic(1, vec![cr(1.0), cr(2.0)])
            .add(&PhasePoly::harmonic(-2, vec![cr(0.5)]))
            .add(&PhasePoly::constant(cr(-1.0)));
        let series = f.taylor(18, W);
        for &t in &[0.0, 0.05, 0.2] {
            assert!((series.eval(t) - f.eval(t, W)).norm() < 1e-12);
        }
    }
}
