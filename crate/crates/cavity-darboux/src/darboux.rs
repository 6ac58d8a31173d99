//! The one-fold intertwining (Darboux) transformation of the classical drive
//! field: field transform, vector potential components, transformed potential
//! magnitude, and the 2x2 master-equation residual.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::jc::PhysParams;

/// Which Pauli matrix sits in the intertwiner `B = α + i(b - β)σ_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaChoice {
    Sigma1,
    Sigma2,
    Sigma3,
}

impl SigmaChoice {
    pub fn index(self) -> u8 {
        match self {
            SigmaChoice::Sigma1 => 1,
            SigmaChoice::Sigma2 => 2,
            SigmaChoice::Sigma3 => 3,
        }
    }

    fn pauli(self) -> Mat2 {
        let i = C64::new(0.0, 1.0);
        let o = C64::new(0.0, 0.0);
        let u = C64::new(1.0, 0.0);
        match self {
            SigmaChoice::Sigma1 => Mat2([[o, u], [u, o]]),
            SigmaChoice::Sigma2 => Mat2([[o, -i], [i, o]]),
            SigmaChoice::Sigma3 => Mat2([[u, o], [o, -u]]),
        }
    }
}

impl fmt::Display for SigmaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FromStr for SigmaChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" => Ok(SigmaChoice::Sigma1),
            "2" => Ok(SigmaChoice::Sigma2),
            "3" => Ok(SigmaChoice::Sigma3),
            other => Err(format!("sigma must be 1, 2 or 3, got '{other}'")),
        }
    }
}

/// The σ_x and σ_y components of the Dirac vector potential sampled at one
/// instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorPotential {
    /// Coefficient of σ_x.
    pub f1: C64,
    /// Coefficient of σ_y.
    pub f2: C64,
}

impl VectorPotential {
    /// Untransformed drive potential `iħΩb₀(σ_x sin ωt − σ_y cos ωt)`.
    pub fn untransformed(t: f64, p: &PhysParams) -> Self {
        let i = C64::new(0.0, 1.0);
        let hwb = p.hw() * p.b0;
        VectorPotential {
            f1: i * hwb * (p.omega * t).sin(),
            f2: -i * hwb * (p.omega * t).cos(),
        }
    }

    /// Transformed potential `−iħΩ(σ_x b₀ sin ωt + σ_y (2β − b₀ cos ωt))`.
    pub fn transformed(t: f64, beta: C64, p: &PhysParams) -> Self {
        let i = C64::new(0.0, 1.0);
        let hw = p.hw();
        VectorPotential {
            f1: -i * hw * p.b0 * (p.omega * t).sin(),
            f2: -i * hw * (2.0 * beta - p.b0 * (p.omega * t).cos()),
        }
    }

    /// |f₁|² + |f₂|²; constant `(ħΩb₀)²` for the untransformed potential.
    pub fn magnitude_sq(&self) -> f64 {
        self.f1.norm_sqr() + self.f2.norm_sqr()
    }
}

/// Classical drive field `b(t) = b₀ e^(−iωt)`.
pub fn classical_field(t: f64, p: &PhysParams) -> C64 {
    p.b0 * (-C64::i() * p.omega * t).exp()
}

/// One-fold transform of the field, `b[1](t) = 2β(t) − b(t)`.
pub fn transform_field(t: f64, beta: C64, p: &PhysParams) -> C64 {
    2.0 * beta - classical_field(t, p)
}

/// Transformed potential magnitude
/// `|4β²(t) − 4β(t) b₀ cos(ωt) + b₀²|`, the modulus taken because β runs
/// complex along the solved trajectories.
pub fn potential_magnitude(t: f64, beta: C64, p: &PhysParams) -> f64 {
    let c = (p.omega * t).cos();
    (4.0 * beta * beta - 4.0 * beta * p.b0 * c + C64::new(p.b0 * p.b0, 0.0)).norm()
}

/// Time-gridded trajectories of one σ-choice: the intertwiner coefficients
/// α(t), β(t), the transformed field b[1](t), and the potential magnitude.
///
/// The field column is derived from β inside the constructor, so
/// `b1[k] = 2 beta[k] - b(t[k])` holds bit-for-bit.
#[derive(Debug, Clone)]
pub struct DarbouxSolution {
    pub sigma: SigmaChoice,
    pub t: Vec<f64>,
    pub alpha: Vec<C64>,
    pub beta: Vec<C64>,
    pub b1: Vec<C64>,
    pub vmag: Vec<f64>,
}

impl DarbouxSolution {
    pub fn new(
        sigma: SigmaChoice,
        t: Vec<f64>,
        alpha: Vec<C64>,
        beta: Vec<C64>,
        p: &PhysParams,
    ) -> Self {
        assert_eq!(t.len(), alpha.len());
        assert_eq!(t.len(), beta.len());
        let b1: Vec<C64> = t
            .iter()
            .zip(&beta)
            .map(|(&tk, &bk)| transform_field(tk, bk, p))
            .collect();
        let vmag: Vec<f64> = t
            .iter()
            .zip(&beta)
            .map(|(&tk, &bk)| potential_magnitude(tk, bk, p))
            .collect();
        DarbouxSolution {
            sigma,
            t,
            alpha,
            beta,
            b1,
            vmag,
        }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Mat2([[C64; 2]; 2]);

impl Mat2 {
    fn identity() -> Self {
        let o = C64::new(0.0, 0.0);
        let u = C64::new(1.0, 0.0);
        Mat2([[u, o], [o, u]])
    }

    fn scaled(self, f: C64) -> Self {
        let m = self.0;
        Mat2([[m[0][0] * f, m[0][1] * f], [m[1][0] * f, m[1][1] * f]])
    }

    fn add(self, other: Mat2) -> Self {
        let (a, b) = (self.0, other.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }

    fn mul(self, other: Mat2) -> Self {
        let (a, b) = (self.0, other.0);
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }

    fn frobenius(self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn sigma_plus() -> Mat2 {
    let o = C64::new(0.0, 0.0);
    let u = C64::new(1.0, 0.0);
    Mat2([[o, u], [o, o]])
}

fn sigma_minus() -> Mat2 {
    let o = C64::new(0.0, 0.0);
    let u = C64::new(1.0, 0.0);
    Mat2([[o, o], [u, o]])
}

/// Frobenius norm of the master intertwining equation assembled at one point:
///
/// ```text
/// iσ_z Ḃ + ħΩ(σ⁺ b[1] + σ⁻ b[1]†) B − ħΩ(B σ⁺ b + B σ⁻ b†) − ħΩ(σ⁺ ḃ + σ⁻ ḃ†)
/// ```
///
/// with `B = α + i(b − β)σ_i` and `b[1] = 2β − b`. The adjoint of the
/// transformed field is formed as `b[1]† = 2β − b†` with β entering
/// unconjugated, which keeps the expression holomorphic in β and matches the
/// component equations the per-σ solvers integrate.
///
/// `dalpha`/`dbeta` are the time derivatives of α, β at `t`, supplied by the
/// producing solver.
pub fn intertwine_residual(
    t: f64,
    alpha: C64,
    beta: C64,
    dalpha: C64,
    dbeta: C64,
    sigma: SigmaChoice,
    p: &PhysParams,
) -> f64 {
    let i = C64::i();
    let hw = C64::new(p.hw(), 0.0);
    let b = classical_field(t, p);
    let bdag = b.conj();
    let bdot = -i * p.omega * b;
    let bdag_dot = i * p.omega * bdag;
    let b1 = 2.0 * beta - b;
    let b1dag = 2.0 * beta - bdag;

    let s = sigma.pauli();
    let sz = SigmaChoice::Sigma3.pauli();
    let sp = sigma_plus();
    let sm = sigma_minus();

    let bmat = Mat2::identity().scaled(alpha).add(s.scaled(i * (b - beta)));
    let bmat_dot = Mat2::identity()
        .scaled(dalpha)
        .add(s.scaled(i * (bdot - dbeta)));

    let term1 = sz.mul(bmat_dot).scaled(i);
    let term2 = sp.scaled(b1).add(sm.scaled(b1dag)).mul(bmat).scaled(hw);
    let term3 = bmat.mul(sp.scaled(b).add(sm.scaled(bdag))).scaled(-hw);
    let term4 = sp.scaled(bdot).add(sm.scaled(bdag_dot)).scaled(-hw);

    term1.add(term2).add(term3).add(term4).frobenius()
}
