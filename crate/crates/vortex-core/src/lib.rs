//! Core machinery for cylindrical vortices: fibered maps
//! `(x, v) -> (T(x), Psi(x) v + rho(x))` over circle rotations and finite
//! cyclic bases.
//!
//! The crate provides exact base arithmetic (big rationals reduced mod 1),
//! finite Fourier carriers for the fiber translation, cocycle composition
//! with fast doubling, Birkhoff sums, drift estimation, the lift of a vortex
//! to a cylindrical cascade over the 2-torus together with the factor map
//! back down, squaring, first-return induction and a heuristic escape scan.
//!
//! ```
//! use vortex_core::{Angle, O2Map, State, TrigPoly, VortexSpec};
//!
//! // x -> x + 1/4, z -> -z + 1 on the fiber (beta = 1/2 is the half turn)
//! let v = VortexSpec::new(
//!     Angle::from_ratio(1, 4).unwrap(),
//!     O2Map::rotation(Angle::from_ratio(1, 2).unwrap()),
//!     TrigPoly::constant(1.0.into()),
//! );
//! let mut s = State::origin();
//! let mut fibers = Vec::new();
//! for _ in 0..4 {
//!     fibers.push(s.z.re);
//!     s = v.step(&s);
//! }
//! assert_eq!(fibers, vec![0.0, 1.0, 0.0, 1.0]);
//! ```

pub mod angle;
pub mod cascade;
pub mod drift;
pub mod error;
pub mod isometry;
pub mod trig;
pub mod vortex;

pub use angle::Angle;
pub use cascade::{
    birkhoff_sum, birkhoff_sum_torus, factor_project, project_cocycle, LiftedCascade, TorusPoint,
};
pub use drift::{drift_estimate, DriftReport};
pub use error::{Result, VortexError};
pub use isometry::{EuclideanIsometry, O2Map};
pub use trig::{TrigPoly, TrigPoly2};
pub use vortex::{
    EscapeReport, FiniteBaseVortex, InducedVortex, SpecCocycle, State, VortexSpec,
};

use num_complex::Complex64;

/// `e^{2 pi i t}` for a plain float argument.
pub fn unit(t: f64) -> Complex64 {
    let a = 2.0 * std::f64::consts::PI * t;
    Complex64::new(a.cos(), a.sin())
}

/// `e^{2 pi i a}` evaluated through the exact reduction of `a` mod 1.
pub fn unit_angle(a: &Angle) -> Complex64 {
    unit(a.to_f64())
}
