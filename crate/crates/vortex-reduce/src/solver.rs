//! Frequency-by-frequency solution of the twisted cohomological equation.
//!
//! At the level of Fourier coefficients the equation reads
//! `phi_hat_n = rho_hat_n / (e^{2 pi i n alpha} - e^{2 pi i beta})`; the
//! solver applies this on the supported frequencies and reports the
//! smallest divisor it met. Exact rational angle pairs are screened
//! symbolically for resonances before any floating division.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use vortex_core::{unit_angle, Angle, Result, TrigPoly, VortexError};

/// Relative tolerance distinguishing an exact resonance from a small divisor.
pub const RESONANCE_TOL: f64 = 1e-15;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub phi: TrigPoly,
    /// Smallest `|e^{2 pi i n alpha} - e^{2 pi i beta}|` over the solved
    /// frequencies, with the frequency it occurred at.
    pub smallest_divisor: f64,
    pub smallest_at: i64,
}

/// The divisor `e^{2 pi i n alpha} - e^{2 pi i beta}` for one frequency.
pub fn divisor(alpha: &Angle, beta: &Angle, n: i64) -> Complex64 {
    unit_angle(&alpha.mul_int(n)) - unit_angle(beta)
}

/// Exact resonance test: `n alpha - beta` lies in `Z`. Decidable only for
/// rational pairs; float pairs fall back to the tolerance.
pub fn exact_resonance(alpha: &Angle, beta: &Angle, n: i64) -> bool {
    match (alpha.rational(), beta.rational()) {
        (Some(_), Some(_)) => alpha.mul_int(n).sub(beta).is_zero(),
        _ => divisor(alpha, beta, n).norm() <= RESONANCE_TOL,
    }
}

/// Solve on all supported frequencies with `|n| <= max_freq` (defaulting to
/// the support of the input when `None`).
pub fn fourier_solve(
    rho_hat: &TrigPoly,
    alpha: &Angle,
    beta: &Angle,
    max_freq: Option<i64>,
) -> Result<SolveOutcome> {
    let bound = max_freq.unwrap_or_else(|| rho_hat.degree());
    let mut phi = TrigPoly::new();
    let mut smallest = f64::INFINITY;
    let mut smallest_at = 0i64;
    for (n, c) in rho_hat.terms() {
        if n.abs() > bound {
            continue;
        }
        if exact_resonance(alpha, beta, n) {
            return Err(VortexError::Resonance { n });
        }
        let d = divisor(alpha, beta, n);
        let dn = d.norm();
        if dn <= RESONANCE_TOL {
            return Err(VortexError::Resonance { n });
        }
        if dn < smallest {
            smallest = dn;
            smallest_at = n;
        }
        phi.add_term(n, c / d);
    }
    Ok(SolveOutcome {
        phi,
        smallest_divisor: smallest,
        smallest_at,
    })
}

/// Build `rho` from a known solution `phi`:
/// `rho(x) = phi(x + alpha) - e^{2 pi i beta} phi(x)`.
pub fn build_coboundary(phi: &TrigPoly, alpha: &Angle, beta: &Angle) -> TrigPoly {
    phi.shift(alpha).sub(&phi.scale(unit_angle(beta)))
}

/// Regularity bookkeeping for solutions with `C^r` data over a pair
/// satisfying a type-1 Diophantine condition with exponent `tau`:
/// `s = r - 1 - tau` when `r > tau + 1` and `s` is not an integer.
/// Report-only; no analysis is performed.
pub fn herman_regularity(r: f64, tau: f64) -> Option<f64> {
    if !(r > tau + 1.0) {
        return None;
    }
    let s = r - 1.0 - tau;
    if (s - s.round()).abs() < 1e-12 {
        return None;
    }
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> (Angle, Angle) {
        (
            Angle::from_f64(0.618_033_988_749_894_8), // (sqrt 5 - 1)/2
            Angle::from_f64(0.414_213_562_373_095_1), // sqrt 2 - 1
        )
    }

    #[test]
    fn zero_input_zero_output() {
        let (a, b) = pair();
        let out = fourier_solve(&TrigPoly::new(), &a, &b, None).unwrap();
        assert!(out.phi.is_zero());
    }

    #[test]
    fn recovers_constructed_coboundary_coefficient() {
        // rho_hat_1 = e^{2 pi i alpha} - e^{2 pi i beta} gives phi_hat_1 = 1
        let (a, b) = pair();
        let rho = TrigPoly::single(1, divisor(&a, &b, 1));
        let out = fourier_solve(&rho, &a, &b, None).unwrap();
        assert!((out.phi.coeff(1) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn round_trip_degree_16() {
        use rand::{Rng, SeedableRng};
        let (a, b) = pair();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut phi = TrigPoly::new();
            for n in -16i64..=16 {
                phi.add_term(
                    n,
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                );
            }
            let rho = build_coboundary(&phi, &a, &b);
            let out = fourier_solve(&rho, &a, &b, None).unwrap();
            let err: f64 = out
                .phi
                .sub(&phi)
                .terms()
                .map(|(_, c)| c.norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-8, "recovery error {err}");
        }
    }

    #[test]
    fn resonance_is_detected() {
        // beta = 3 alpha mod 1: resonance at n = 3
        let a = Angle::from_f64(0.618_033_988_749_894_8);
        let b = a.mul_int(3);
        let rho = TrigPoly::from_terms([
            (1, Complex64::new(1.0, 0.0)),
            (3, Complex64::new(0.5, 0.0)),
        ]);
        match fourier_solve(&rho, &a, &b, None) {
            Err(VortexError::Resonance { n }) => assert_eq!(n, 3),
            other => panic!("expected resonance, got {other:?}"),
        }
        // exact rational resonance caught symbolically
        let ar = Angle::from_ratio(1, 3).unwrap();
        let br = Angle::from_ratio(2, 3).unwrap();
        assert!(exact_resonance(&ar, &br, 2));
        let rho = TrigPoly::single(2, Complex64::new(1.0, 0.0));
        assert!(matches!(
            fourier_solve(&rho, &ar, &br, None),
            Err(VortexError::Resonance { n: 2 })
        ));
    }

    #[test]
    fn regularity_formula() {
        assert_eq!(herman_regularity(5.0, 1.5), Some(2.5));
        assert_eq!(herman_regularity(2.0, 1.5), None); // r <= tau + 1
        assert_eq!(herman_regularity(4.0, 1.0), None); // s = 2 integral
    }
}
