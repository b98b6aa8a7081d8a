//! Transfer of reducing sections between a vortex and its torus lift.
//!
//! A section `phi_*` for the vortex equation produces the bivariate section
//! `phi(x, y) = e^{2 pi i y} phi_*(x)` for the lifted cascade, and
//! conversely the `y`-frequency-1 coefficient of a bivariate section
//! descends. Either direction preserves solving the respective equation.

use vortex_core::{unit_angle, Angle, Result, TrigPoly, TrigPoly2, VortexError};

/// Tolerance for the structural check of the lifted equation.
pub const TRANSFER_TOL: f64 = 1e-9;

/// `phi_*(x) -> phi(x, y) = e^{2 pi i y} phi_*(x)`.
pub fn transfer_to_lift(phi_star: &TrigPoly) -> TrigPoly2 {
    let mut out = TrigPoly2::new();
    for (n, c) in phi_star.terms() {
        out.add_term(n, 1, c);
    }
    out
}

/// The cocycle induced by a bivariate section under the torus rotation
/// `(alpha, -beta)`: `chi(x, y) = phi(x + alpha, y - beta) - phi(x, y)`.
pub fn induced_chi(phi: &TrigPoly2, alpha: &Angle, beta: &Angle) -> TrigPoly2 {
    phi.shift(alpha, &beta.neg()).sub(phi)
}

/// Descend a bivariate section: checks that the induced cocycle has the
/// lifted form `e^{2 pi i (y - beta)} rho(x)` (pure `y`-frequency 1) within
/// tolerance, then extracts `phi_*(x) = ∫ e^{-2 pi i y} phi(x, y) dy`.
///
/// Returns the section together with the vortex-level `rho` it solves.
pub fn transfer_from_lift(
    phi: &TrigPoly2,
    alpha: &Angle,
    beta: &Angle,
) -> Result<(TrigPoly, TrigPoly)> {
    let chi = induced_chi(phi, alpha, beta);
    for k in chi.y_frequencies() {
        if k != 1 {
            let stray = chi.y_row(k).sup_norm_bound();
            if stray > TRANSFER_TOL {
                return Err(VortexError::input(format!(
                    "section does not solve a lifted equation: spurious y-frequency {k} \
                     with mass {stray:.3e}"
                )));
            }
        }
    }
    let phi_star = phi.y_row(1);
    // chi = e^{2 pi i (y - beta)} rho(x)  =>  rho = e^{2 pi i beta} row_1(chi)
    let rho = chi.y_row(1).scale(unit_angle(beta));
    Ok((phi_star, rho))
}

/// Residual of the vortex equation `phi(x+alpha) - e^{2 pi i beta} phi(x) = rho(x)`.
pub fn vortex_equation_residual(
    phi_star: &TrigPoly,
    rho: &TrigPoly,
    alpha: &Angle,
    beta: &Angle,
) -> f64 {
    phi_star
        .shift(alpha)
        .sub(&phi_star.scale(unit_angle(beta)))
        .sub(rho)
        .sup_norm_bound()
}

/// Residual of the lifted equation `phi(x+alpha, y-beta) - phi(x, y) = chi(x, y)`.
pub fn lift_equation_residual(
    phi: &TrigPoly2,
    chi: &TrigPoly2,
    alpha: &Angle,
    beta: &Angle,
) -> f64 {
    induced_chi(phi, alpha, beta).sub(chi).sup_norm_bound()
}
