//! Export of the truncated construction as an ordinary vortex spec.
//!
//! Each section term `l sin(2 pi t x) e^{2 pi i r x}` contributes the two
//! frequencies `r - t` and `r + t` with coefficients `± i l / 2`, and the
//! stage translation follows from the invariance relation
//! `rho_k(x) = phi_k(x + alpha_k) - e^{2 pi i beta_k} phi_k(x)`. The tail
//! bound `sum_{j >= K} 2^{-j}` controls the sup distance between the
//! exported truncation and the limit translation function.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use vortex_core::{unit_angle, O2Map, Result, TrigPoly, VortexError, VortexSpec};

use crate::stage::AkStage;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AkExport {
    pub vortex: VortexSpec,
    /// `sup |rho - rho_K| <= 2^{1-K}` from the convergence-rate bound.
    pub tail_bound: f64,
    pub stages: u32,
}

/// Fourier expansion of the stage section `phi_k`.
pub fn phi_expansion(stage: &AkStage) -> TrigPoly {
    let mut out = TrigPoly::new();
    for term in &stage.phi {
        let l = term.ell.mid_f64();
        // sin(2 pi t x) e^{2 pi i r x} = (e^{2 pi i (r+t) x} - e^{2 pi i (r-t) x}) / (2i)
        out.add_term(term.r + term.t, Complex64::new(0.0, -l / 2.0));
        out.add_term(term.r - term.t, Complex64::new(0.0, l / 2.0));
    }
    out
}

/// Fourier expansion of the stage translation `rho_k`.
pub fn rho_expansion(stage: &AkStage) -> TrigPoly {
    let alpha = stage.alpha_angle();
    let beta_twist = unit_angle(&stage.beta_angle());
    let mut out = TrigPoly::new();
    for (f, c) in phi_expansion(stage).terms() {
        out.add_term(f, c * (unit_angle(&alpha.mul_int(f)) - beta_twist));
    }
    out
}

/// Emit the last stage as a vortex together with its tail bound.
pub fn ak_export(stages: &[AkStage]) -> Result<AkExport> {
    let last = stages
        .last()
        .ok_or_else(|| VortexError::input("export requires at least one stage"))?;
    let vortex = VortexSpec::new(
        last.alpha_angle(),
        O2Map::rotation(last.beta_angle()),
        rho_expansion(last),
    );
    Ok(AkExport {
        vortex,
        tail_bound: 2f64.powi(1 - last.k as i32),
        stages: last.k,
    })
}
