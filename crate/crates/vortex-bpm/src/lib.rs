//! Completely invariant closed sets "at infinity" for affine Euclidean
//! isometries and for vortices over finite cyclic bases.
//!
//! Given a bounded open set `U` and an isometry `I`, there is a closed set
//! `K` avoiding `U`, connected together with the point at infinity,
//! completely invariant (`I(K) = I^{-1}(K) = K`) and touching the boundary
//! of `U`. The constructions here follow the classification of the
//! isometry: a band complement tangent to `U` for translations, the
//! complement of the smallest enclosing ball about the fixed point for
//! rotations, and a squaring trick for orientation-reversing maps. Regions
//! are kept symbolic so that invariance is an exact parameter identity, not
//! a sampled approximation.

pub mod construct;
pub mod experiment;
pub mod normal_form;
pub mod region;
pub mod verify;

pub use construct::{bpm_highdim, bpm_periodic, bpm_planar, BpmCertificate, Witness};
pub use experiment::{periodic_approx_experiment, ExperimentRow, ExperimentTable};
pub use normal_form::{normal_form, NormalForm, SpectralBlock};
pub use region::{BoundedRegion, Piece, SymbolicRegion};
pub use verify::{verify_bpm, BpmChecks, VerifyTarget};
