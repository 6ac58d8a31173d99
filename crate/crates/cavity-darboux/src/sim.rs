//! Simulation orchestration: turns a [`SimConfig`](crate::config::SimConfig)
//! into in-memory traces and writes them out as CSV and SVG, one file per
//! figure panel.

use std::path::PathBuf;

use thiserror::Error;

use crate::config::{ConfigError, SimConfig};
use crate::darboux::{DarbouxSolution, SigmaChoice};
use crate::jc::{
    atomic_inversion_with_weights, poisson_truncation, poisson_weights, InversionTrace,
};
use crate::modified::{drive_from_solution, modified_inversion_with_weights, ModifiedDrive};
use crate::solvers::{
    closed_form_sigma1, sigma3_alpha_from_constraint, solve_sigma2, solve_sigma3, RiccatiState,
    SolverError,
};
use crate::{csv, svg};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("solver failed: {0}")]
    Solver(#[from] SolverError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Everything one run produces, kept in memory so the files and any
/// downstream checks share identical data.
#[derive(Debug)]
pub struct RunOutput {
    /// Inversion trace (standard or modified, depending on sigma).
    pub inversion: InversionTrace,
    /// Transformed potential magnitude, present for Darboux runs.
    pub potential: Option<InversionTrace>,
    /// The solved trajectory, present for Darboux runs.
    pub solution: Option<DarbouxSolution>,
    /// Files written, in creation order.
    pub files: Vec<PathBuf>,
}

/// Computes the traces for the configuration without touching the
/// filesystem.
pub fn compute(cfg: &SimConfig) -> Result<RunOutput, RunError> {
    cfg.validate()?;
    let p = cfg.phys_params();
    let grid = cfg.grid();
    let n_max = poisson_truncation(cfg.nbar, cfg.poisson_tol);
    let weights = poisson_weights(p.nbar(), n_max);

    let output = match cfg.sigma {
        None => {
            let w: Vec<f64> = grid
                .iter()
                .map(|&t| atomic_inversion_with_weights(t, &p, &weights))
                .collect();
            RunOutput {
                inversion: InversionTrace::new(grid, w),
                potential: None,
                solution: None,
                files: Vec::new(),
            }
        }
        Some(sigma) => {
            let solution = solve_darboux(cfg, sigma, &grid)?;
            let drive = build_drive(cfg, sigma, &solution);
            let w: Vec<f64> = grid
                .iter()
                .zip(&drive.nbb)
                .map(|(&t, &nbb)| modified_inversion_with_weights(t, nbb, &p, &weights))
                .collect();
            let vmag: Vec<f64> = if cfg.vmag_prefactor {
                let f = p.hw() * p.hw();
                solution.vmag.iter().map(|v| f * v).collect()
            } else {
                solution.vmag.clone()
            };
            RunOutput {
                inversion: InversionTrace::new(grid.clone(), w),
                potential: Some(InversionTrace::new(grid, vmag)),
                solution: Some(solution),
                files: Vec::new(),
            }
        }
    };
    Ok(output)
}

fn solve_darboux(
    cfg: &SimConfig,
    sigma: SigmaChoice,
    grid: &[f64],
) -> Result<DarbouxSolution, RunError> {
    let p = cfg.phys_params();
    match sigma {
        SigmaChoice::Sigma1 => {
            // short-time closed forms evaluated on the grid
            let mut alpha = Vec::with_capacity(grid.len());
            let mut beta = Vec::with_capacity(grid.len());
            for &t in grid {
                let state = closed_form_sigma1(t, &p)?;
                alpha.push(state.alpha);
                beta.push(state.beta);
            }
            Ok(DarbouxSolution::new(sigma, grid.to_vec(), alpha, beta, &p))
        }
        SigmaChoice::Sigma2 => Ok(solve_sigma2(&p, cfg.beta0, grid)?),
        SigmaChoice::Sigma3 => {
            let alpha0 = sigma3_alpha_from_constraint(grid[0], cfg.beta0, &p)?;
            let ic = RiccatiState::new(alpha0, cfg.beta0);
            Ok(solve_sigma3(&p, &ic, grid)?)
        }
    }
}

fn build_drive(cfg: &SimConfig, sigma: SigmaChoice, sol: &DarbouxSolution) -> ModifiedDrive {
    let drive = drive_from_solution(sol);
    match sigma {
        // the switch-on protocol belongs to the σ₁ figures
        SigmaChoice::Sigma1 => drive.gated(cfg.t_on, 1.0),
        SigmaChoice::Sigma2 => drive.gated(f64::NEG_INFINITY, cfg.sigma2_scale),
        SigmaChoice::Sigma3 => drive,
    }
}

/// Runs the configuration and writes the requested artifacts.
pub fn run(cfg: &SimConfig) -> Result<RunOutput, RunError> {
    let mut output = compute(cfg)?;
    std::fs::create_dir_all(&cfg.out_dir).map_err(|source| RunError::Io {
        path: cfg.out_dir.clone(),
        source,
    })?;
    let stem = match cfg.sigma {
        None => "jc".to_string(),
        Some(s) => format!("sigma{s}"),
    };

    let emit = |name: String,
                y_label: &str,
                trace: &InversionTrace,
                logy: bool,
                files: &mut Vec<PathBuf>|
     -> Result<(), RunError> {
        if cfg.write_csv {
            let path = cfg.out_dir.join(format!("{name}.csv"));
            csv::write(&path, "t", y_label, &trace.t, &trace.w).map_err(|source| RunError::Io {
                path: path.clone(),
                source,
            })?;
            files.push(path);
        }
        if cfg.write_svg {
            let path = cfg.out_dir.join(format!("{name}.svg"));
            let style = svg::PlotStyle {
                title: format!("{y_label}(t)"),
                x_label: "t".to_string(),
                y_label: y_label.to_string(),
                logy,
            };
            svg::write(&path, &trace.t, &trace.w, &style).map_err(|source| RunError::Io {
                path: path.clone(),
                source,
            })?;
            files.push(path);
        }
        Ok(())
    };

    let mut files = Vec::new();
    emit(
        format!("{stem}_inversion"),
        "W",
        &output.inversion,
        false,
        &mut files,
    )?;
    if let Some(potential) = &output.potential {
        emit(
            format!("{stem}_potential"),
            "V",
            potential,
            cfg.logy,
            &mut files,
        )?;
    }
    output.files = files;
    Ok(output)
}

/// Re-renders the SVG for a trace parsed back out of its CSV text; byte
/// identity with the original SVG shows both came from one in-memory trace.
pub fn svg_from_csv(csv_text: &str, logy: bool) -> Result<String, String> {
    let ((_, y_label), t, v) = csv::parse(csv_text)?;
    let style = svg::PlotStyle {
        title: format!("{y_label}(t)"),
        x_label: "t".to_string(),
        y_label,
        logy,
    };
    Ok(svg::render(&t, &v, &style))
}

/// Sampled occupation of the configured drive, exposed for verification.
pub fn drive_for(cfg: &SimConfig) -> Result<Option<ModifiedDrive>, RunError> {
    cfg.validate()?;
    match cfg.sigma {
        None => Ok(None),
        Some(sigma) => {
            let grid = cfg.grid();
            let sol = solve_darboux(cfg, sigma, &grid)?;
            Ok(Some(build_drive(cfg, sigma, &sol)))
        }
    }
}

/// Initial σ₃ state consistent with the algebraic member at `t0`.
pub fn sigma3_default_ic(cfg: &SimConfig) -> Result<RiccatiState, RunError> {
    let p = cfg.phys_params();
    let alpha0 = sigma3_alpha_from_constraint(cfg.t0, cfg.beta0, &p)?;
    Ok(RiccatiState::new(alpha0, cfg.beta0))
}
