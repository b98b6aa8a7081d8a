//! Type-1 Diophantine classification of an angle pair, and the explicit
//! small-divisor blow-up series available over Liouville pairs.
//!
//! The scan measures `d_n = |e^{2 pi i (n alpha - beta)} - 1|` for
//! `1 <= n <= N`; the pair satisfies a type-1 condition with exponent `tau`
//! and constant `C` when `d_n >= C / n^{1+tau}` for all `n`, so the best
//! constant visible at range `N` is `min_n d_n n^{1+tau}`.

use serde::{Deserialize, Serialize};
use vortex_core::{unit_angle, Angle, Result, TrigPoly, VortexError};

use crate::solver::RESONANCE_TOL;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiophantineReport {
    pub tau: f64,
    #[serde(rename = "best_C")]
    pub best_c: f64,
    pub worst_n: i64,
    /// The smallest divisors seen, as `(n, d_n)` sorted by value.
    pub min_values: Vec<(i64, f64)>,
    /// Set when some divisor vanishes within the resonance tolerance.
    pub resonant_n: Option<i64>,
}

/// `|e^{2 pi i (n alpha - beta)} - 1|`, with the phase reduced exactly for
/// rational angles.
pub fn small_divisor(alpha: &Angle, beta: &Angle, n: i64) -> f64 {
    let phase = alpha.mul_int(n).sub(beta);
    (unit_angle(&phase) - num_complex::Complex64::new(1.0, 0.0)).norm()
}

/// Scan `1 <= n <= max_n`. `keep` limits how many of the smallest divisors
/// are retained in `min_values` (they feed `liouville_generator`).
pub fn diophantine_scan(
    alpha: &Angle,
    beta: &Angle,
    max_n: i64,
    tau: f64,
    keep: usize,
) -> Result<DiophantineReport> {
    if max_n < 1 {
        return Err(VortexError::input("scan requires N >= 1"));
    }
    if tau < 0.0 {
        return Err(VortexError::input("tau must be nonnegative"));
    }
    let exact = alpha.is_rational() && beta.is_rational();
    let mut best_c = f64::INFINITY;
    let mut worst_n = 0i64;
    let mut resonant_n = None;
    let mut values: Vec<(i64, f64)> = Vec::with_capacity(max_n as usize);
    for n in 1..=max_n {
        let exact_zero = exact && alpha.mul_int(n).sub(beta).is_zero();
        let d = if exact_zero {
            0.0
        } else {
            small_divisor(alpha, beta, n)
        };
        if (exact_zero || d <= RESONANCE_TOL) && resonant_n.is_none() {
            resonant_n = Some(n);
        }
        values.push((n, d));
        let c = d * (n as f64).powf(1.0 + tau);
        if c < best_c {
            best_c = c;
            worst_n = n;
        }
    }
    values.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    values.truncate(keep.max(1));
    Ok(DiophantineReport {
        tau,
        best_c,
        worst_n,
        min_values: values,
        resonant_n,
    })
}

/// One row of the coefficient growth table emitted by the generator.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: i64,
    pub divisor: f64,
    pub rho_hat: f64,
    /// `|phi_hat_n| = rho_hat_n / d_n`; unbounded along a genuinely
    /// Liouville sequence.
    pub phi_hat_abs: f64,
}

/// Build the standard blow-up series along a sequence of near-resonant
/// frequencies: the `j`-th coefficient is
/// `rho_hat_n = min(d_n * 2^j, n^{-n})`, so the series decays
/// superpolynomially while the solved coefficients
/// `|phi_hat_n| = min(2^j, n^{-n}/d_n)` grow without bound whenever
/// `d_n` decays faster than `n^{-n} 2^{-j}` along the sequence.
pub fn liouville_generator(
    alpha: &Angle,
    beta: &Angle,
    resonant_ns: &[i64],
) -> Result<(TrigPoly, Vec<GrowthRow>)> {
    if resonant_ns.is_empty() {
        return Err(VortexError::input(
            "liouville generator needs a nonempty frequency sequence",
        ));
    }
    let mut rho = TrigPoly::new();
    let mut table = Vec::with_capacity(resonant_ns.len());
    for (idx, &n) in resonant_ns.iter().enumerate() {
        if n == 0 {
            return Err(VortexError::input("frequency 0 cannot carry a divisor"));
        }
        let d = small_divisor(alpha, beta, n);
        if d <= 0.0 {
            return Err(VortexError::input(format!(
                "frequency {n} is exactly resonant; the generator requires d_n > 0"
            )));
        }
        let j = (idx + 1) as i32;
        // log-space guards against underflow of n^{-n} for large n
        let log_cap = -(n.unsigned_abs() as f64) * (n.unsigned_abs() as f64).ln();
        let log_scaled = d.ln() + j as f64 * std::f64::consts::LN_2;
        let log_rho = log_scaled.min(log_cap);
        let rho_hat = log_rho.exp();
        let phi_hat_abs = (log_rho - d.ln()).exp();
        rho.add_term(n, num_complex::Complex64::new(rho_hat, 0.0));
        table.push(GrowthRow {
            n,
            divisor: d,
            rho_hat,
            phi_hat_abs,
        });
    }
    if table.iter().all(|r| r.rho_hat == 0.0) {
        return Err(VortexError::Degenerate(
            "all generated coefficients underflowed to zero".into(),
        ));
    }
    Ok((rho, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonance_flagged_for_multiples() {
        // beta = 3 alpha mod 1: divisor vanishes at n = 3
        let a = Angle::from_f64(0.618_033_988_749_894_8);
        let b = a.mul_int(3);
        let rep = diophantine_scan(&a, &b, 10, 1.0, 4).unwrap();
        assert_eq!(rep.resonant_n, Some(3));
        // rational resonance: alpha = 1/3, beta = 2/3 resonates at n = 2
        let ar = Angle::from_ratio(1, 3).unwrap();
        let br = Angle::from_ratio(2, 3).unwrap();
        let rep = diophantine_scan(&ar, &br, 5, 0.0, 4).unwrap();
        assert_eq!(rep.resonant_n, Some(2));
        assert_eq!(rep.min_values[0], (2, 0.0));
    }

    #[test]
    fn golden_pair_has_positive_constant() {
        let a = Angle::from_f64(0.618_033_988_749_894_8);
        let b = Angle::from_f64(0.414_213_562_373_095_1);
        let rep = diophantine_scan(&a, &b, 10_000, 1.0, 8).unwrap();
        assert!(rep.resonant_n.is_none());
        assert!(rep.best_c > 0.0);
        assert!(rep.worst_n >= 1);
        // min_values sorted ascending
        for w in rep.min_values.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn best_constant_monotone_in_range() {
        let a = Angle::from_f64(0.618_033_988_749_894_8);
        let b = Angle::from_f64(0.414_213_562_373_095_1);
        let mut prev = f64::INFINITY;
        for n in [10i64, 100, 1000, 5000] {
            let rep = diophantine_scan(&a, &b, n, 1.0, 2).unwrap();
            assert!(rep.best_c <= prev + 1e-15);
            prev = rep.best_c;
        }
    }

    #[test]
    fn generator_division() {
        // single near-resonant frequency: |phi_hat| = rho_hat / d
        let a = Angle::from_f64(0.618_033_988_749_894_8);
        let b = Angle::from_f64(0.618_033_988_749_894_8 * 7.0 - 4.0 + 1e-13);
        let d = small_divisor(&a, &b, 7);
        assert!(d > 0.0 && d < 1e-11);
        let (rho, table) = liouville_generator(&a, &b, &[7]).unwrap();
        assert_eq!(table.len(), 1);
        let expect = (d * 2.0).min(7f64.powi(-7));
        assert!((rho.coeff(7).re - expect).abs() < 1e-20);
        assert!((table[0].phi_hat_abs - expect / d).abs() < 1e-9);
    }

    #[test]
    fn generator_growth_along_scanned_minima() {
        // a synthetic near-Liouville pair: beta is a tiny perturbation of
        // 7 alpha, so the scan's smallest divisors sit over multiples where
        // n alpha - beta nearly vanishes; the generated |phi_hat| exceed 1
        // by a wide margin along that sequence
        let a = Angle::from_f64(0.618_033_988_749_894_8);
        let b = Angle::from_f64(0.618_033_988_749_894_8 * 7.0 - 4.0 + 1e-13);
        let rep = diophantine_scan(&a, &b, 2000, 1.0, 3).unwrap();
        let ns: Vec<i64> = rep.min_values.iter().map(|&(n, _)| n).collect();
        let (_, table) = liouville_generator(&a, &b, &ns).unwrap();
        // the first row divides a ~1e-12 divisor into a much larger cap
        assert!(table[0].phi_hat_abs >= 2.0 - 1e-12);
        assert!(table.iter().any(|r| r.phi_hat_abs > 1.0));
    }

    #[test]
    fn generator_refusals() {
        let a = Angle::from_f64(0.618_033_988_749_894_8);
        let b = Angle::from_f64(0.3);
        assert!(liouville_generator(&a, &b, &[]).is_err());
        // exact resonance refused
        let ar = Angle::from_ratio(1, 3).unwrap();
        let br = Angle::from_ratio(2, 3).unwrap();
        assert!(liouville_generator(&ar, &br, &[2]).is_err());
    }
}
