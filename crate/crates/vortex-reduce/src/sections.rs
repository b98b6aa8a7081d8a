//! Cesàro almost-reducibility sections and defect measurement.
//!
//! The section of order `k` is `phi_k := -(rho_1 + ... + rho_k)/k` built
//! from the twisted cocycle sums of the vortex. For the untwisted cascade
//! (`beta = 0`) the defect of `phi_k` is exactly `sup_x |rho_k(Tx)|/k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use vortex_core::{unit_angle, Angle, O2Map, Result, TrigPoly, VortexError, VortexSpec};

/// Defect of a candidate section, together with the section tested.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DefectReport {
    pub k: u64,
    pub sup_defect: f64,
    pub section: TrigPoly,
}

fn family(rho: &TrigPoly, alpha: &Angle, beta: &Angle) -> VortexSpec {
    VortexSpec::new(alpha.clone(), O2Map::rotation(beta.clone()), rho.clone())
}

/// The twisted cocycle sum `rho_n` as a trigonometric polynomial.
pub fn rho_n(rho: &TrigPoly, alpha: &Angle, beta: &Angle, n: i64) -> TrigPoly {
    family(rho, alpha, beta).cocycle(n).rho_n
}

/// Cesàro section `phi_k = -(rho_1 + ... + rho_k) / k`.
pub fn cesaro_sections(rho: &TrigPoly, alpha: &Angle, beta: &Angle, k: u64) -> Result<TrigPoly> {
    if k < 1 {
        return Err(VortexError::input("Cesàro section requires k >= 1"));
    }
    let twist = unit_angle(beta);
    let mut rho_j = rho.clone(); // rho_1
    let mut sum = rho_j.clone();
    for j in 1..k {
        // rho_{j+1}(x) = e^{2 pi i beta} rho_j(x) + rho(x + j alpha)
        rho_j = rho_j
            .scale(twist)
            .add(&rho.shift(&alpha.mul_int(j as i64)));
        sum = sum.add(&rho_j);
    }
    Ok(sum.scale(Complex64::new(-1.0 / k as f64, 0.0)))
}

/// Sup over a uniform grid of
/// `|rho(x) - [phi(x + alpha) - e^{2 pi i beta} phi(x)]|`.
pub fn defect(rho: &TrigPoly, phi: &TrigPoly, alpha: &Angle, beta: &Angle, grid: usize) -> f64 {
    residual(rho, phi, alpha, beta).sup_on_grid(grid.max(1))
}

/// The defect as a full report for a section of known order.
pub fn defect_report(
    rho: &TrigPoly,
    phi: &TrigPoly,
    alpha: &Angle,
    beta: &Angle,
    grid: usize,
    k: u64,
) -> DefectReport {
    DefectReport {
        k,
        sup_defect: defect(rho, phi, alpha, beta, grid),
        section: phi.clone(),
    }
}

/// `rho - [phi ∘ T - e^{2 pi i beta} phi]` as a carrier.
pub fn residual(rho: &TrigPoly, phi: &TrigPoly, alpha: &Angle, beta: &Angle) -> TrigPoly {
    let coboundary = phi.shift(alpha).sub(&phi.scale(unit_angle(beta)));
    rho.sub(&coboundary)
}

/// Sup over a uniform grid of `|rho_n(x)| / n` using the vortex cocycle.
pub fn sup_ratio(
    rho: &TrigPoly,
    alpha: &Angle,
    beta: &Angle,
    n: u64,
    grid: usize,
) -> Result<f64> {
    if n < 1 {
        return Err(VortexError::input("sup ratio requires n >= 1"));
    }
    let poly = rho_n(rho, alpha, beta, n as i64);
    Ok(poly.sup_on_grid(grid.max(1)) / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Angle {
        Angle::from_f64(0.618_033_988_749_894_8)
    }

    #[test]
    fn cascade_constant_sections() {
        // cascade with rho = c: rho_j = j c, so phi_k = -c (k+1)/2 and the
        // defect stays |c| at every order
        let c = Complex64::new(0.8, -0.6);
        let rho = TrigPoly::constant(c);
        let alpha = golden();
        let beta = Angle::zero();
        for k in [1u64, 2, 7, 33] {
            let phi = cesaro_sections(&rho, &alpha, &beta, k).unwrap();
            let expect = -c * ((k + 1) as f64) / 2.0;
            assert!((phi.coeff(0) - expect).norm() < 1e-12);
            assert_eq!(phi.len(), 1);
            let d = defect(&rho, &phi, &alpha, &beta, 64);
            assert!((d - c.norm()).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn zero_rho_zero_sections() {
        let phi = cesaro_sections(&TrigPoly::new(), &golden(), &Angle::zero(), 5).unwrap();
        assert!(phi.is_zero());
        assert_eq!(defect(&TrigPoly::new(), &phi, &golden(), &Angle::zero(), 32), 0.0);
    }

    #[test]
    fn cascade_defect_identity_for_coboundary() {
        // rho a coboundary of phi(x) = e^{2 pi i x} over a Diophantine alpha:
        // the exact identity defect(phi_k) = sup |rho_k(Tx)| / k holds and
        // the defect tends to zero
        let alpha = golden();
        let beta = Angle::zero();
        let phi_true = TrigPoly::single(1, Complex64::new(1.0, 0.0));
        let rho = residual(&TrigPoly::new(), &phi_true, &alpha, &beta)
            .scale(Complex64::new(-1.0, 0.0));
        let grid = 512;
        let mut defects = Vec::new();
        for k in [1u64, 4, 16, 64] {
            let phi_k = cesaro_sections(&rho, &alpha, &beta, k).unwrap();
            let d = defect(&rho, &phi_k, &alpha, &beta, grid);
            let identity = rho_n(&rho, &alpha, &beta, k as i64)
                .shift(&alpha)
                .sup_on_grid(grid)
                / k as f64;
            assert!((d - identity).abs() < 1e-9, "k = {k}: {d} vs {identity}");
            defects.push(d);
        }
        assert!(defects.last().unwrap() < &(defects[0] / 8.0));
    }

    #[test]
    fn defect_of_exact_solution_and_of_zero() {
        let alpha = golden();
        let beta = Angle::from_f64(0.414_213_562_373_095_1);
        let phi = TrigPoly::from_terms([
            (1, Complex64::new(0.3, 0.2)),
            (-2, Complex64::new(-0.4, 0.1)),
        ]);
        let rho = residual(&TrigPoly::new(), &phi, &alpha, &beta).scale(Complex64::new(-1.0, 0.0));
        assert!(defect(&rho, &phi, &alpha, &beta, 128) < 1e-12);
        let sup = rho.sup_on_grid(128);
        assert!((defect(&rho, &TrigPoly::new(), &alpha, &beta, 128) - sup).abs() < 1e-12);
    }

    #[test]
    fn sup_ratio_cases() {
        let alpha = golden();
        let beta = Angle::zero();
        // constant cascade: ratio |c|
        let c = Complex64::new(0.0, 1.25);
        let r = sup_ratio(&TrigPoly::constant(c), &alpha, &beta, 17, 64).unwrap();
        assert!((r - 1.25).abs() < 1e-10);
        // zero rho
        assert_eq!(sup_ratio(&TrigPoly::new(), &alpha, &beta, 9, 64).unwrap(), 0.0);
        // coboundary: telescoping gives <= 2 sup|phi| / n
        let phi = TrigPoly::from_terms([(1, Complex64::new(1.0, 0.0)), (3, Complex64::new(0.0, 0.5))]);
        let rho = residual(&TrigPoly::new(), &phi, &alpha, &beta).scale(Complex64::new(-1.0, 0.0));
        for n in [8u64, 64, 256] {
            let r = sup_ratio(&rho, &alpha, &beta, n, 128).unwrap();
            assert!(r <= 2.0 * phi.sup_norm_bound() / n as f64 + 1e-9, "n = {n}");
        }
        assert!(sup_ratio(&TrigPoly::new(), &alpha, &beta, 0, 8).is_err());
    }
}
