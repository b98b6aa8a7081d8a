//! Solving and diagnosing the twisted cohomological equation
//! `phi(x + alpha) - e^{2 pi i beta} phi(x) = rho(x)`.
//!
//! A vortex of the rotation family is reducible exactly when this equation
//! has a continuous solution, and almost-reducible when continuous sections
//! solve it with defect tending to zero. This crate provides the Cesàro
//! sections built from twisted Birkhoff sums, the frequency-by-frequency
//! small-divisor solver, Diophantine classification of the pair of angles,
//! a generator of small-divisor blow-up series for Liouville pairs, the
//! regularity bookkeeping formula, and the transfer of solutions between a
//! vortex and its torus lift.

pub mod diophantine;
pub mod sections;
pub mod solver;
pub mod transfer;

pub use diophantine::{diophantine_scan, liouville_generator, DiophantineReport, GrowthRow};
pub use sections::{cesaro_sections, defect, sup_ratio, DefectReport};
pub use solver::{build_coboundary, fourier_solve, herman_regularity, SolveOutcome};
pub use transfer::{transfer_from_lift, transfer_to_lift};

/// Finite Fourier data; same carrier as the fiber translations downstairs.
pub type FourierSeries = vortex_core::TrigPoly;
