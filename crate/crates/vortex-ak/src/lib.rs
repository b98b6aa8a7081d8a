//! The staged construction of a topologically transitive vortex over an
//! irrational rotation, driven by the FS(2,3) frequency sets.
//!
//! Everything the construction must certify — the stage conditions, the
//! convergence-rate bound chain, the rational-independence dichotomy — is
//! checked in exact big-rational arithmetic. Irrational quantities
//! (`q^{1/12}`, square roots, pi) enter only through directed-rounding
//! brackets, so every asserted inequality is conservative.

pub mod density;
pub mod estimate;
pub mod export;
pub mod fs;
pub mod independence;
pub mod roots;
pub mod stage;

pub use density::{graph_density, orbit_density, DensityCertificate, EmpiricalOutcome};
pub use estimate::{verify_stage_estimate, StageEstimateReport};
pub use export::{ak_export, AkExport};
pub use fs::{fs_density_scan, fs_entry, fs_family, fs_q_set, CoverageMap, FsEntry, ScanInput};
pub use independence::{independence_check, IndependenceReport};
pub use roots::{pi_bracket, sqrt_bracket, twelfth_root_bracket, RatBracket};
pub use stage::{ak_init, ak_next, AkStage, SearchRange, StageConditions};
