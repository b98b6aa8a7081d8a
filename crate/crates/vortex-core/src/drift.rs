//! Drift estimation: the sup of `|rho_n(x)| / n` over a sample grid along a
//! doubling sequence of times. The sub-additive structure of the cocycle
//! makes this ratio converge; the report keeps the whole trace.

use serde::{Deserialize, Serialize};

use crate::error::{Result, VortexError};
use crate::vortex::VortexSpec;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DriftReport {
    pub n_values: Vec<u64>,
    /// `sup_x |rho_n(x)| / n` over the grid, one entry per `n`.
    pub sup_ratios: Vec<f64>,
    /// Last ratio of the trace.
    pub extrapolated_drift: f64,
    /// Separate Lipschitz slack `|rho_n|' / (2 grid n)` per entry; the true
    /// sup is at most `sup_ratio + slack`.
    pub lipschitz_slack: Vec<f64>,
}

/// Default grid size for sup-norm sampling.
pub const DEFAULT_GRID: usize = 1 << 12;

/// Sup of `|rho_n(x)|/n` over a uniform grid for `n = 1, 2, 4, ...` up to
/// `n_max`.
pub fn drift_estimate(v: &VortexSpec, n_max: u64, grid: usize) -> Result<DriftReport> {
    if n_max < 1 || grid < 1 {
        return Err(VortexError::input("drift estimate requires n_max, grid >= 1"));
    }
    let mut n_values = Vec::new();
    let mut n = 1u64;
    while n <= n_max {
        n_values.push(n);
        n = n.saturating_mul(2);
    }
    let mut sup_ratios = Vec::with_capacity(n_values.len());
    let mut lipschitz_slack = Vec::with_capacity(n_values.len());
    for &n in &n_values {
        let rho_n = v.cocycle(n as i64).rho_n;
        let sup = rho_n.sup_on_grid(grid);
        sup_ratios.push(sup / n as f64);
        lipschitz_slack.push(rho_n.deriv_bound() / (2.0 * grid as f64 * n as f64));
    }
    let extrapolated_drift = *sup_ratios.last().unwrap();
    Ok(DriftReport {
        n_values,
        sup_ratios,
        extrapolated_drift,
        lipschitz_slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::isometry::O2Map;
    use crate::trig::TrigPoly;
    use num_complex::Complex64;

    #[test]
    fn constant_cascade_has_constant_ratio() {
        let v = VortexSpec::new(
            Angle::from_f64(0.377),
            O2Map::identity(),
            TrigPoly::constant(Complex64::new(0.0, -2.5)),
        );
        let rep = drift_estimate(&v, 64, 16).unwrap();
        for r in &rep.sup_ratios {
            assert!((r - 2.5).abs() < 1e-10);
        }
        assert!((rep.extrapolated_drift - 2.5).abs() < 1e-10);
    }

    #[test]
    fn zero_rho_gives_zero_drift() {
        let v = VortexSpec::new(Angle::from_f64(0.377), O2Map::identity(), TrigPoly::new());
        let rep = drift_estimate(&v, 128, 8).unwrap();
        assert!(rep.sup_ratios.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn rotation_family_ratios_decay() {
        // rationally independent pair: the drift is zero, so ratios shrink
        let v = VortexSpec::new(
            Angle::from_f64(0.618_033_988_749_894_8),
            O2Map::rotation(Angle::from_f64(0.414_213_562_373_095_1)),
            TrigPoly::single(1, Complex64::new(1.0, 0.0)),
        );
        let rep = drift_estimate(&v, 1 << 12, 64).unwrap();
        let first = rep.sup_ratios[0];
        let last = rep.extrapolated_drift;
        assert!(last < first / 100.0, "ratios did not decay: {rep:?}");
        assert!(rep.sup_ratios.iter().all(|&r| r >= 0.0));
    }

    #[test]
    fn invalid_arguments() {
        let v = VortexSpec::new(Angle::zero(), O2Map::identity(), TrigPoly::new());
        assert!(drift_estimate(&v, 0, 8).is_err());
        assert!(drift_estimate(&v, 8, 0).is_err());
    }
}
