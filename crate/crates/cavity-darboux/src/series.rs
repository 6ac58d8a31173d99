//! Truncated power-series arithmetic and the Laplace → Padé → inverse-Laplace
//! resummation pipeline used to enlarge the convergence domain of
//! perturbation series.
//!
//! The pipeline works in three moves: term-wise Laplace transform written in
//! the variable `u = 1/s`, a `[M/N]` Padé approximant of the transformed
//! series, and the inverse Laplace transform of the approximant via partial
//! fractions over the complex roots of its denominator. A truncated series
//! that is secretly an exponential-polynomial with at most `N` distinct rates
//! is reproduced exactly.

use num_complex::Complex64 as C64;
use thiserror::Error;

/// Errors raised by the resummation pipeline.
#[derive(Debug, Error)]
pub enum SeriesError {
    /// The Hankel system behind the `[M/N]` denominator is rank-deficient
    /// beyond tolerance. The order pair is unusable; reduce `N`.
    #[error("singular Padé system at [{m}/{n}]: pivot {pivot:.3e} below tolerance {tol:.3e}")]
    SingularPadeSystem {
        m: usize,
        n: usize,
        pivot: f64,
        tol: f64,
    },
    /// The rational does not vanish at `s -> inf`, so it has no inverse
    /// transform of exponential-polynomial type. Signals a malformed order
    /// choice upstream.
    #[error("improper rational: value at s -> inf is {a0:.3e}, not 0")]
    ImproperRational { a0: f64 },
}

/// Exact factorial in f64 (exact through n = 22).
pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// A truncated power series `c_0 + c_1 t + ... + c_K t^K`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<C64>,
}

impl TruncSeries {
    /// Builds a series from coefficients `c_0..c_K`. Panics on an empty or
    /// non-finite coefficient list.
    pub fn new(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "TruncSeries requires at least c_0");
        assert!(
            coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "TruncSeries requires finite coefficients"
        );
        TruncSeries { coeffs }
    }

    /// The zero series of the given truncation order.
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![C64::new(0.0, 0.0); order + 1],
        }
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> C64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Horner evaluation at `t`.
    pub fn eval(&self, t: f64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// Sum, padded to the larger truncation order.
    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|n| self.coeff(n) + other.coeff(n)).collect();
        TruncSeries { coeffs }
    }

    pub fn scale(&self, factor: C64) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Copy truncated (or zero-padded) to order `k`.
    pub fn truncated(&self, k: usize) -> TruncSeries {
        let coeffs = (0..=k).map(|n| self.coeff(n)).collect();
        TruncSeries { coeffs }
    }
}

/// Cauchy product truncated at `min(K_a, K_b)`.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    let k = a.order().min(b.order());
    let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
    for (n, c) in coeffs.iter_mut().enumerate() {
        for i in 0..=n {
            *c += a.coeff(i) * b.coeff(n - i);
        }
    }
    TruncSeries { coeffs }
}

/// Term-wise Laplace transform written in `u = 1/s`:
/// `c_n t^n  ->  c_n n! u^(n+1)`. The returned series is in `u` and its
/// order is one above the input's.
pub fn series_laplace(s: &TruncSeries) -> TruncSeries {
    let mut coeffs = vec![C64::new(0.0, 0.0); s.order() + 2];
    for n in 0..=s.order() {
        coeffs[n + 1] = s.coeff(n) * factorial(n);
    }
    TruncSeries { coeffs }
}

/// Rational approximant `[M/N]` with numerator `a_0..a_M` and denominator
/// `1 + b_1 x + ... + b_N x^N`.
#[derive(Debug, Clone)]
pub struct PadeRational {
    num: Vec<C64>,
    den: Vec<C64>,
}

impl PadeRational {
    pub fn from_parts(num: Vec<C64>, den: Vec<C64>) -> Self {
        assert!(!num.is_empty(), "numerator requires at least a_0");
        PadeRational { num, den }
    }

    pub fn numerator(&self) -> &[C64] {
        &self.num
    }

    /// Denominator coefficients `b_1..b_N` (the constant term is 1).
    pub fn denominator(&self) -> &[C64] {
        &self.den
    }

    pub fn m(&self) -> usize {
        self.num.len() - 1
    }

    pub fn n(&self) -> usize {
        self.den.len()
    }

    pub fn eval(&self, x: f64) -> C64 {
        let num = horner(&self.num, C64::new(x, 0.0));
        let mut den = C64::new(1.0, 0.0);
        let mut xp = C64::new(x, 0.0);
        for &b in &self.den {
            den += b * xp;
            xp *= x;
        }
        num / den
    }

    /// Re-expansion of the rational as a power series through order `k`.
    pub fn taylor(&self, k: usize) -> TruncSeries {
        let mut q = vec![C64::new(0.0, 0.0); k + 1];
        for n in 0..=k {
            let mut acc = if n < self.num.len() {
                self.num[n]
            } else {
                C64::new(0.0, 0.0)
            };
            for j in 1..=n.min(self.den.len()) {
                acc -= self.den[j - 1] * q[n - j];
            }
            q[n] = acc;
        }
        TruncSeries { coeffs: q }
    }
}

fn horner(coeffs: &[C64], x: C64) -> C64 {
    coeffs
        .iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// `[M/N]` Padé approximant of the series. Requires `M + N <= K`.
///
/// The denominator coefficients solve the linear system
/// `sum_j b_j c_{M+k-j} = -c_{M+k}` for `k = 1..N`, eliminated with full
/// pivoting and rank tolerance `1e-12 * max|entry|`.
pub fn pade(series: &TruncSeries, m: usize, n: usize) -> Result<PadeRational, SeriesError> {
    assert!(
        m + n <= series.order(),
        "pade: need M+N <= K ({} + {} > {})",
        m,
        n,
        series.order()
    );
    let c = |idx: isize| -> C64 {
        if idx < 0 {
            C64::new(0.0, 0.0)
        } else {
            series.coeff(idx as usize)
        }
    };

    let mut b = vec![C64::new(0.0, 0.0); n];
    if n > 0 {
        let mut mat = vec![vec![C64::new(0.0, 0.0); n]; n];
        let mut rhs = vec![C64::new(0.0, 0.0); n];
        for k in 1..=n {
            for j in 1..=n {
                mat[k - 1][j - 1] = c((m + k) as isize - j as isize);
            }
            rhs[k - 1] = -c((m + k) as isize);
        }
        let norm = mat
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        let tol = 1e-12 * norm;
        b = solve_full_pivot(mat, rhs, tol).map_err(|pivot| SeriesError::SingularPadeSystem {
            m,
            n,
            pivot,
            tol,
        })?;
    }

    let mut a = vec![C64::new(0.0, 0.0); m + 1];
    for (i, ai) in a.iter_mut().enumerate() {
        let mut acc = series.coeff(i);
        for j in 1..=i.min(n) {
            acc += b[j - 1] * series.coeff(i - j);
        }
        *ai = acc;
    }
    Ok(PadeRational { num: a, den: b })
}

/// Gaussian elimination with full pivoting; fails with the offending pivot
/// magnitude when it falls below `tol` before the system is solved.
fn solve_full_pivot(mut a: Vec<Vec<C64>>, mut rhs: Vec<C64>, tol: f64) -> Result<Vec<C64>, f64> {
    let n = rhs.len();
    let mut col_of = (0..n).collect::<Vec<_>>();
    for step in 0..n {
        let mut best = (step, step, 0.0f64);
        for r in step..n {
            for c in step..n {
                let mag = a[r][c].norm();
                if mag > best.2 {
                    best = (r, c, mag);
                }
            }
        }
        if best.2 <= tol {
            return Err(best.2);
        }
        a.swap(step, best.0);
        rhs.swap(step, best.0);
        if best.1 != step {
            for row in a.iter_mut() {
                row.swap(step, best.1);
            }
            col_of.swap(step, best.1);
        }
        let pivot = a[step][step];
        for r in step + 1..n {
            let f = a[r][step] / pivot;
            if f.norm() == 0.0 {
                continue;
            }
            for c in step..n {
                let upper = a[step][c];
                a[r][c] -= f * upper;
            }
            let u = rhs[step];
            rhs[r] -= f * u;
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for step in (0..n).rev() {
        let mut acc = rhs[step];
        for c in step + 1..n {
            acc -= a[step][c] * x[c];
        }
        x[step] = acc / a[step][step];
    }
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (slot, &col) in col_of.iter().enumerate() {
        out[col] = x[slot];
    }
    Ok(out)
}

/// One term `c t^k e^(r t)` of an exponential-polynomial sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub amp: C64,
    pub rate: C64,
    pub power: u32,
}

/// A finite sum of `c t^k e^(r t)` terms; the image of a proper rational
/// function under the inverse Laplace transform. Terms are kept sorted and
/// no two terms share the same `(rate, power)` pair.
#[derive(Debug, Clone, Default)]
pub struct ExpPolySum {
    terms: Vec<ExpTerm>,
}

impl ExpPolySum {
    pub fn new(mut terms: Vec<ExpTerm>) -> Self {
        terms.sort_by(|a, b| {
            (a.rate.re, a.rate.im, a.power)
                .partial_cmp(&(b.rate.re, b.rate.im, b.power))
                .expect("finite exp-poly terms")
        });
        let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.rate == t.rate && last.power == t.power => last.amp += t.amp,
                _ => merged.push(t),
            }
        }
        ExpPolySum { terms: merged }
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn eval(&self, t: f64) -> C64 {
        self.terms
            .iter()
            .map(|term| term.amp * t.powi(term.power as i32) * (term.rate * t).exp())
            .sum()
    }

    /// The distinct rates present, in sorted order.
    pub fn rates(&self) -> Vec<C64> {
        let mut out: Vec<C64> = Vec::new();
        for t in &self.terms {
            if out.last() != Some(&t.rate) {
                out.push(t.rate);
            }
        }
        out
    }
}

/// Inverse Laplace transform of the approximant, read as a function of
/// `s` through `u = 1/s`: with `L = max(M, N)`,
///
/// ```text
/// F(s) = P(1/s)/Q(1/s) = (a_0 s^L + a_1 s^(L-1) + ...) / (s^L + b_1 s^(L-1) + ...)
/// ```
///
/// Properness demands `a_0 = 0`; the denominator roots come from a
/// Durand-Kerner iteration, roots closer than `1e-8` relative are clustered
/// into a single root of higher multiplicity, and each pole
/// `1/(s-r)^k` maps to `t^(k-1) e^(rt) / (k-1)!`.
pub fn pade_inverse_laplace(r: &PadeRational) -> Result<ExpPolySum, SeriesError> {
    let m = r.m();
    let n = r.n();
    let l = m.max(n);
    let a_scale = r.num.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    if r.num[0].norm() > 1e-13 * a_scale {
        return Err(SeriesError::ImproperRational {
            a0: r.num[0].norm(),
        });
    }
    if l == 0 {
        return Ok(ExpPolySum::default());
    }

    // Numerator and monic denominator as polynomials in s (index = power).
    let mut num_s = vec![C64::new(0.0, 0.0); l];
    for (i, &ai) in r.num.iter().enumerate().skip(1) {
        num_s[l - i] = ai;
    }
    let mut den_s = vec![C64::new(0.0, 0.0); l + 1];
    den_s[l] = C64::new(1.0, 0.0);
    for (j, &bj) in r.den.iter().enumerate() {
        den_s[l - (j + 1)] = bj;
    }

    let roots = durand_kerner(&den_s);
    let clusters = cluster_roots(&roots);

    let mut terms = Vec::new();
    for (ci, &(root, mult)) in clusters.iter().enumerate() {
        // q(s) = den(s) / (s - root)^mult, rebuilt from the other clusters.
        let mut q = vec![C64::new(1.0, 0.0)];
        for (cj, &(other, m_other)) in clusters.iter().enumerate() {
            if cj == ci {
                continue;
            }
            for _ in 0..m_other {
                q = poly_mul_linear(&q, other);
            }
        }
        // G(s) = num(s)/q(s) expanded about the root to order mult-1.
        let num_sh = taylor_shift(&num_s, root);
        let q_sh = taylor_shift(&q, root);
        let g = series_divide(&num_sh, &q_sh, mult - 1);
        for k in 1..=mult {
            let amp = g[mult - k] / factorial(k - 1);
            if amp.norm() > 0.0 {
                terms.push(ExpTerm {
                    amp,
                    rate: root,
                    power: (k - 1) as u32,
                });
            }
        }
    }
    Ok(ExpPolySum::new(terms))
}

/// Durand-Kerner simultaneous root iteration on a monic polynomial
/// (index = power, leading coefficient 1). Degrees here never exceed a
/// handful, where the method needs no tuning.
fn durand_kerner(monic: &[C64]) -> Vec<C64> {
    let deg = monic.len() - 1;
    let radius = 1.0 + monic[..deg].iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let seed = C64::new(0.4, 0.9);
    let mut z: Vec<C64> = (0..deg).map(|k| radius * seed.powu(k as u32 + 1)).collect();
    let eval = |x: C64| horner(monic, x);
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Coincident iterates: nudge apart and retry next sweep.
                z[i] += C64::new(1e-10 * radius, 1e-10 * radius);
                max_step = f64::MAX;
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / radius.max(1.0));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Groups roots closer than `1e-8` relative into multiplicity clusters,
/// represented by the cluster mean. Floating-point roots of true
/// multiplicity above one never coincide exactly, hence the clustering.
fn cluster_roots(roots: &[C64]) -> Vec<(C64, usize)> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0f64.max(roots[i].norm().max(roots[j].norm()));
            if (roots[i] - roots[j]).norm() <= 1e-8 * scale {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<(C64, usize, usize)> = Vec::new(); // (sum, count, repr)
    for i in 0..n {
        let root_of = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.2 == root_of) {
            Some(g) => {
                g.0 += roots[i];
                g.1 += 1;
            }
            None => groups.push((roots[i], 1, root_of)),
        }
    }
    let mut out: Vec<(C64, usize)> = groups
        .into_iter()
        .map(|(sum, count, _)| (sum / count as f64, count))
        .collect();
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite roots")
    });
    out
}

/// Multiplies a polynomial (index = power) by `(s - root)`.
fn poly_mul_linear(p: &[C64], root: C64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

/// Re-centers a polynomial at `s = center` via repeated synthetic division.
fn taylor_shift(p: &[C64], center: C64) -> Vec<C64> {
    let mut work = p.to_vec();
    let mut out = vec![C64::new(0.0, 0.0); p.len()];
    for slot in out.iter_mut() {
        // Divide work(s) by (s - center); remainder is the next coefficient.
        let mut rem = C64::new(0.0, 0.0);
        for c in work.iter_mut().rev() {
            let tmp = *c;
            *c = rem;
            rem = tmp + rem * center;
        }
        *slot = rem;
        // the quotient now occupies the low positions; drop the vacated top
        work.pop();
        if work.is_empty() {
            break;
        }
    }
    out
}

/// Leading `order+1` coefficients of the series quotient `num/den`
/// (den constant term must be nonzero).
fn series_divide(num: &[C64], den: &[C64], order: usize) -> Vec<C64> {
    let at = |p: &[C64], i: usize| p.get(i).copied().unwrap_or_default();
    let d0 = den[0];
    let mut g = vec![C64::new(0.0, 0.0); order + 1];
    for k in 0..=order {
        let mut acc = at(num, k);
        for j in 1..=k {
            acc -= at(den, j) * g[k - j];
        }
        g[k] = acc / d0;
    }
    g
}

/// The full resummation pipeline: term-wise Laplace transform into `u = 1/s`,
/// `[M/N]` Padé approximant, back-substitution to `s`, inverse Laplace via
/// partial fractions. Requires `M + N <= K + 1` (the Laplace step raises the
/// order by one).
pub fn laplace_pade_resum(
    series: &TruncSeries,
    m: usize,
    n: usize,
) -> Result<ExpPolySum, SeriesError> {
    assert!(
        m + n <= series.order() + 1,
        "laplace_pade_resum: need M+N <= K+1"
    );
    let u_series = series_laplace(series);
    let rational = pade(&u_series, m, n)?;
    pade_inverse_laplace(&rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }
    fn cr(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    /// Forward Laplace transform of an exp-poly sum at a point `s`:
    /// `L[c t^k e^(rt)](s) = c k! / (s-r)^(k+1)`. Test-side oracle.
    fn laplace_of(sum: &ExpPolySum, s: C64) -> C64 {
        sum.terms()
            .iter()
            .map(|t| t.amp * factorial(t.power as usize) / (s - t.rate).powu(t.power + 1))
            .sum()
    }

    #[test]
    fn mul_binomials() {
        let a = TruncSeries::new(vec![cr(1.0), cr(1.0), cr(0.0)]);
        let b = TruncSeries::new(vec![cr(1.0), cr(-1.0), cr(0.0)]);
        let p = series_mul(&a, &b);
        assert_eq!(p.coeffs(), &[cr(1.0), cr(0.0), cr(-1.0)]);
    }

    #[test]
    fn mul_identity() {
        let a = TruncSeries::new(vec![c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0)]);
        let mut one = TruncSeries::zero(a.order());
        one = one.add(&TruncSeries::new(vec![cr(1.0)]));
        assert_eq!(series_mul(&a, &one), a);
    }

    #[test]
    fn mul_matches_double_loop_convolution() {
        // deterministic pseudo-random coefficients, K = 8
        let mk = |seed: f64| {
            TruncSeries::new(
                (0..9)
                    .map(|k| c((seed + k as f64).sin(), (seed * 1.7 + k as f64).cos()))
                    .collect(),
            )
        };
        let (a, b) = (mk(0.3), mk(4.1));
        let p = series_mul(&a, &b);
        for n in 0..=8usize {
            let mut expect = C64::default();
            for i in 0..=n {
                expect += a.coeff(i) * b.coeff(n - i);
            }
            assert!((p.coeff(n) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn laplace_of_t_squared_and_one() {
        let t2 = TruncSeries::new(vec![cr(0.0), cr(0.0), cr(1.0)]);
        assert_eq!(
            series_laplace(&t2).coeffs(),
            &[cr(0.0), cr(0.0), cr(0.0), cr(2.0)]
        );
        let one = TruncSeries::new(vec![cr(1.0)]);
        assert_eq!(series_laplace(&one).coeffs(), &[cr(0.0), cr(1.0)]);
    }

    #[test]
    fn laplace_factorial_scaling() {
        let s = TruncSeries::new((0..7).map(|k| c(0.1 * k as f64 + 1.0, -0.2)).collect());
        let l = series_laplace(&s);
        for n in 0..=6usize {
            assert!((l.coeff(n + 1) - s.coeff(n) * factorial(n)).norm() < 1e-12);
        }
        assert_eq!(l.coeff(0), cr(0.0));
    }

    #[test]
    fn pade_of_exp_through_t2() {
        // e^t ~ 1 + t + t^2/2; [1/1] is (1 + t/2)/(1 - t/2)
        let s = TruncSeries::new(vec![cr(1.0), cr(1.0), cr(0.5)]);
        let r = pade(&s, 1, 1).unwrap();
        assert!((r.numerator()[0] - cr(1.0)).norm() < 1e-14);
        assert!((r.numerator()[1] - cr(0.5)).norm() < 1e-14);
        assert!((r.denominator()[0] - cr(-0.5)).norm() < 1e-14);
    }

    #[test]
    fn pade_k_over_zero_is_the_series() {
        let s = TruncSeries::new(vec![c(1.0, -1.0), c(0.5, 2.0), c(-3.0, 0.1)]);
        let r = pade(&s, 2, 0).unwrap();
        assert_eq!(r.numerator(), s.coeffs());
        assert!(r.denominator().is_empty());
    }

    #[test]
    fn pade_reconstructs_geometric_series() {
        // 1/(1-t) ~ 1 + t + t^2 + t^3; [0/1] recovers it exactly
        let s = TruncSeries::new(vec![cr(1.0); 4]);
        let r = pade(&s, 0, 1).unwrap();
        for &t in &[0.0, 0.2, 0.5, 0.9] {
            let exact = 1.0 / (1.0 - t);
            assert!((r.eval(t) - cr(exact)).norm() < 1e-12 * exact.abs());
        }
    }

    #[test]
    fn pade_singular_system_reported() {
        // c_1 = 0 zeroes the [1/1] denominator system outright.
        let s = TruncSeries::new(vec![cr(1.0), cr(0.0), cr(0.0)]);
        match pade(&s, 1, 1) {
            Err(SeriesError::SingularPadeSystem { .. }) => {}
            other => panic!("expected SingularPadeSystem, got {other:?}"),
        }
    }

    #[test]
    fn inverse_laplace_single_pole() {
        // 1/(s-a) = u/(1-au): num [0,1], den [-a]
        let a = c(0.5, -1.25);
        let r = PadeRational::from_parts(vec![cr(0.0), cr(1.0)], vec![-a]);
        let sum = pade_inverse_laplace(&r).unwrap();
        assert_eq!(sum.terms().len(), 1);
        let term = sum.terms()[0];
        assert!((term.amp - cr(1.0)).norm() < 1e-12);
        assert!((term.rate - a).norm() < 1e-12);
        assert_eq!(term.power, 0);
    }

    #[test]
    fn inverse_laplace_double_pole_at_origin() {
        // 1/s^2 = u^2: num [0,0,1], den []
        let r = PadeRational::from_parts(vec![cr(0.0), cr(0.0), cr(1.0)], vec![]);
        let sum = pade_inverse_laplace(&r).unwrap();
        assert_eq!(sum.terms().len(), 1);
        let term = sum.terms()[0];
        assert!((term.amp - cr(1.0)).norm() < 1e-10);
        assert!(term.rate.norm() < 1e-7);
        assert_eq!(term.power, 1);
        for &t in &[0.0, 0.3, 1.7] {
            assert!((sum.eval(t) - cr(t)).norm() < 1e-7 * t.max(1.0));
        }
    }

    #[test]
    fn inverse_laplace_double_pole_off_origin() {
        // (s+1)/(s-a)^2 = 1/(s-a) + (a+1)/(s-a)^2  ->  (1 + (a+1) t) e^{at}
        let a = c(-0.6, 0.8);
        let r = PadeRational::from_parts(
            vec![cr(0.0), cr(1.0), cr(1.0)],
            vec![-2.0 * a, a * a],
        );
        let sum = pade_inverse_laplace(&r).unwrap();
        assert_eq!(sum.terms().len(), 2);
        for k in 0..=10 {
            let t = 0.2 * k as f64;
            let exact = (cr(1.0) + (a + 1.0) * t) * (a * t).exp();
            assert!(
                (sum.eval(t) - exact).norm() <= 1e-7 * exact.norm().max(1.0),
                "t = {t}: {} vs {exact}",
                sum.eval(t)
            );
        }
    }

    #[test]
    fn inverse_laplace_roundtrips_degree_four() {
        // Random stable degree-4 denominator; forward-Laplace oracle on a grid.
        let rates = [c(-1.0, 0.7), c(-2.5, -0.3), c(-0.4, 1.9), c(-3.1, 0.0)];
        let mut den = vec![cr(1.0)];
        for &r in &rates {
            // (1 - r u) factors in u
            let mut next = vec![cr(0.0); den.len() + 1];
            for (i, &dcoeff) in den.iter().enumerate() {
                next[i] += dcoeff;
                next[i + 1] -= dcoeff * r;
            }
            den = next;
        }
        let num = vec![cr(0.0), c(1.0, 0.2), c(-0.3, 0.5), cr(0.7)];
        let r = PadeRational::from_parts(num, den[1..].to_vec());
        let sum = pade_inverse_laplace(&r).unwrap();
        for j in 0..8 {
            let s = c(1.0 + j as f64, 0.5 * j as f64);
            let direct = r.eval_as_u_of_s(s);
            assert!(
                (laplace_of(&sum, s) - direct).norm() <= 1e-8,
                "mismatch at s = {s}"
            );
        }
    }

    #[test]
    fn improper_rational_rejected() {
        let r = PadeRational::from_parts(vec![cr(1.0), cr(1.0)], vec![cr(-0.5)]);
        match pade_inverse_laplace(&r) {
            Err(SeriesError::ImproperRational { .. }) => {}
            other => panic!("expected ImproperRational, got {other:?}"),
        }
    }

    #[test]
    fn resum_fixed_point_exp2t() {
        // truncation of e^{2t} through t^4, [1/1]
        let s = TruncSeries::new(
            (0..5)
                .map(|n| cr(2.0f64.powi(n) / factorial(n as usize)))
                .collect(),
        );
        let sum = laplace_pade_resum(&s, 1, 1).unwrap();
        for k in 0..=20 {
            let t = 0.1 * k as f64;
            let exact = (2.0 * t).exp();
            assert!(
                (sum.eval(t) - cr(exact)).norm() <= 1e-9 * exact.max(1.0),
                "t = {t}"
            );
        }
    }

    #[test]
    fn resum_recovers_two_rates() {
        // truncation of 3 e^{-t} + 1 through t^5, [2/2] -> rates {-1, 0}
        let s = TruncSeries::new(
            (0..6)
                .map(|n| {
                    cr(3.0 * (-1.0f64).powi(n) / factorial(n as usize)
                        + if n == 0 { 1.0 } else { 0.0 })
                })
                .collect(),
        );
        let sum = laplace_pade_resum(&s, 2, 2).unwrap();
        let rates = sum.rates();
        assert_eq!(rates.len(), 2);
        assert!((rates[0] - cr(-1.0)).norm() < 1e-9);
        assert!(rates[1].norm() < 1e-9);
        for k in 0..=10 {
            let t = 0.2 * k as f64;
            let exact = 3.0 * (-t).exp() + 1.0;
            assert!((sum.eval(t) - cr(exact)).norm() < 1e-8);
        }
    }

    impl PadeRational {
        /// Evaluates the approximant as a function of s through u = 1/s,
        /// clearing denominators exactly (test helper).
        fn eval_as_u_of_s(&self, s: C64) -> C64 {
            let l = self.m().max(self.n()) as u32;
            let mut num = C64::default();
            for (i, &a) in self.num.iter().enumerate() {
                num += a * s.powu(l - i as u32);
            }
            let mut den = s.powu(l);
            for (j, &b) in self.den.iter().enumerate() {
                den += b * s.powu(l - (j as u32 + 1));
            }
            num / den
        }
    }

    proptest! {
        #[test]
        fn mul_commutes(seed_a in 0u64..1000, seed_b in 0u64..1000, ka in 0usize..8, kb in 0usize..8) {
            let mk = |seed: u64, k: usize| {
                TruncSeries::new(
                    (0..=k)
                        .map(|i| c(((seed + i as u64) as f64).sin(), ((seed * 3 + i as u64) as f64).cos()))
                        .collect(),
                )
            };
            let a = mk(seed_a, ka);
            let b = mk(seed_b, kb);
            let ab = series_mul(&a, &b);
            let ba = series_mul(&b, &a);
            for n in 0..=ab.order() {
                // summation order differs, so compare to rounding accuracy
                prop_assert!((ab.coeff(n) - ba.coeff(n)).norm() < 1e-13);
            }
        }

        #[test]
        fn mul_associates_up_to_truncation(sa in 0u64..100, sb in 0u64..100, sc in 0u64..100) {
            let mk = |seed: u64| {
                TruncSeries::new(
                    (0..=6)
                        .map(|i| c(((seed + i) as f64).sin(), ((seed * 7 + i) as f64).cos()))
                        .collect(),
                )
            };
            let (a, b, cc) = (mk(sa), mk(sb), mk(sc));
            let left = series_mul(&series_mul(&a, &b), &cc);
            let right = series_mul(&a, &series_mul(&b, &cc));
            for n in 0..=left.order() {
                prop_assert!((left.coeff(n) - right.coeff(n)).norm() < 1e-12);
            }
        }

        #[test]
        fn pade_taylor_matches_through_m_plus_n(seed in 0u64..500, m in 0usize..3, n in 0usize..3) {
            let series = TruncSeries::new(
                (0..=5)
                    .map(|i| c(1.0 + ((seed + i) as f64).sin(), ((seed * 5 + i) as f64).cos() * 0.5))
                    .collect(),
            );
            if let Ok(r) = pade(&series, m, n) {
                let back = r.taylor(m + n);
                for k in 0..=(m + n) {
                    prop_assert!(
                        (back.coeff(k) - series.coeff(k)).norm() < 1e-8,
                        "coefficient {} differs", k
                    );
                }
            }
        }

        #[test]
        fn resum_exact_on_exp_poly_truncations(
            re1 in -1.5f64..1.5, im1 in -1.5f64..1.5,
            re2 in -1.5f64..1.5, im2 in -1.5f64..1.5,
            a1 in 0.5f64..2.0, a2 in 0.5f64..2.0,
        ) {
            let r1 = c(re1, im1);
            let r2 = c(re2, im2);
            prop_assume!((r1 - r2).norm() > 0.2);
            let truth = ExpPolySum::new(vec![
                ExpTerm { amp: cr(a1), rate: r1, power: 0 },
                ExpTerm { amp: cr(a2), rate: r2, power: 0 },
            ]);
            // Taylor coefficients of a1 e^{r1 t} + a2 e^{r2 t} through t^5
            let series = TruncSeries::new(
                (0..6)
                    .map(|nn| (cr(a1) * r1.powu(nn) + cr(a2) * r2.powu(nn)) / factorial(nn as usize))
                    .collect(),
            );
            let sum = laplace_pade_resum(&series, 2, 2).unwrap();
            for k in 0..=10 {
                let t = 0.1 * k as f64;
                let exact = truth.eval(t);
                prop_assert!(
                    (sum.eval(t) - exact).norm() <= 1e-7 * exact.norm().max(1.0),
                    "t = {}", t
                );
            }
        }
    }
}
