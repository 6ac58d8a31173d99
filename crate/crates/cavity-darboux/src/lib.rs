//! Numerical toolkit for collapse and revival of Rabi oscillations in cavity
//! QED when the classical component of the drive field is reshaped by a
//! one-fold Darboux (intertwining) transformation.
//!
//! The library covers:
//! - the standard Jaynes-Cummings atomic inversion over a coherent state
//!   ([`jc`]),
//! - truncated power-series arithmetic with a Laplace → Padé → inverse-Laplace
//!   resummation pipeline ([`series`]),
//! - the σ₁/σ₂/σ₃ intertwining systems for the transformed field and their
//!   solvers: homotopy-perturbation order recursion for σ₁, a conservation-law
//!   quadratic for σ₃, and an eliminated complex ODE for σ₂ ([`solvers`]),
//! - the modified Rabi frequency and modified inversion driven by the
//!   transformed field occupation ([`modified`]),
//! - CSV/SVG emission and a flat-file configuration layer for the CLI
//!   ([`config`], [`csv`], [`svg`], [`sim`]).

pub mod complex;
pub mod config;
pub mod csv;
pub mod darboux;
pub mod envelope;
pub mod jc;
pub mod modified;
pub mod series;
pub mod sim;
pub mod solvers;
pub mod svg;
pub mod verify;

pub use num_complex::Complex64 as C64;
