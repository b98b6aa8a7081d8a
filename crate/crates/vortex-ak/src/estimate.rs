//! Quantitative convergence check between consecutive stages.
//!
//! For `1 <= n <= q_k` the stage difference obeys
//!
//! ```text
//! |(rho_{k+1})_n - (rho_k)_n|
//!     <= l_{k+1} q_k s_{k+1} / q_{k+1}
//!        + C_k q_k |alpha_{k+1} - alpha_k|
//!        + D_k q_k |beta_{k+1} - beta_k|          (the stated bound B)
//! ```
//!
//! and the stage conditions force the chain
//! `B <= q_k / q_{k+1}^{5/12} + 2^{-(k+1)} <= 2^{-k}`, which is what makes
//! the stages a Cauchy sequence. The chain is certified here in exact
//! rational arithmetic through directed root brackets.
//!
//! The stated bound is tight only up to unit-circle chord/arc conversion:
//! turning an angle difference `d` into a chord costs `2 sin(pi d) <= 2 pi d`,
//! so the rigorous pointwise bound carries an extra `2 pi` on the first and
//! third terms (the middle term already holds the `2 pi` inside `C_k`). The
//! sampled sup is therefore compared against that corrected bound, and both
//! values are reported.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use vortex_core::{Angle, Result, VortexError};

use crate::roots::{pi_bracket, pow_frac_bracket};
use crate::stage::AkStage;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageEstimateReport {
    pub k: u32,
    /// Max of `|(rho_{k+1})_n - (rho_k)_n|` over the sample set.
    pub sampled_sup: f64,
    /// The stated bound `B` (exact value, rounded up).
    pub stated_rhs: f64,
    /// The chord-corrected rigorous bound the samples are checked against.
    pub corrected_rhs: f64,
    /// `2^{-k}`.
    pub rapidez_bound: f64,
    pub n_sampled: usize,
    pub grid: usize,
    pub chain_ok: bool,
}

const SAMPLE_CAP: u64 = 64;
const FLOAT_SLACK: f64 = 1e-9;

fn rat_f64_up(r: &BigRational) -> f64 {
    let v = r.to_f64().unwrap_or(f64::NAN);
    v + v.abs() * 1e-14
}

/// Sup of `|(rho_next)_n(x) - (rho_prev)_n(x)|` over sampled `n` and grid
/// `x`; usable on its own (identical stages give zero).
pub fn sampled_sup_difference(
    prev: &AkStage,
    next: &AkStage,
    grid: usize,
    n_cap: u64,
) -> (f64, usize) {
    let q_prev = prev.q.to_u64().unwrap_or(u64::MAX);
    let mut ns: Vec<i64> = Vec::new();
    if q_prev <= n_cap {
        ns.extend(1..=q_prev as i64);
    } else {
        let step = q_prev / n_cap;
        ns.extend((1..=n_cap).map(|i| (i * step) as i64));
        ns.push(1);
        ns.push(q_prev as i64);
        ns.sort_unstable();
        ns.dedup();
    }
    let mut sup: f64 = 0.0;
    for &n in &ns {
        for i in 0..grid {
            let x = Angle::from_f64(i as f64 / grid as f64);
            let d = (next.rho_stage_n(n, &x) - prev.rho_stage_n(n, &x)).norm();
            sup = sup.max(d);
        }
    }
    (sup, ns.len())
}

/// Verify the estimate between consecutive stages: exact bound chain plus
/// a sampled sup against the corrected bound.
pub fn verify_stage_estimate(
    prev: &AkStage,
    next: &AkStage,
    grid: usize,
) -> Result<StageEstimateReport> {
    if next.k != prev.k + 1 {
        return Err(VortexError::input(format!(
            "stages must be consecutive (got k = {} and {})",
            prev.k, next.k
        )));
    }
    if grid < 1 {
        return Err(VortexError::input("grid must be >= 1"));
    }
    let k = prev.k;
    let q_k = BigRational::from(prev.q.clone());
    let q_next = BigRational::from(next.q.clone());
    let d_alpha = (&next.alpha - &prev.alpha).abs();
    let d_beta = (&next.beta - &prev.beta).abs();

    // stated bound B, each term exact (l rounded up)
    let term1 = &next.ell.hi * &q_k * BigRational::from(next.s.clone()) / &q_next;
    let term2 = &prev.c_lip.hi * &q_k * &d_alpha;
    let term3 = &prev.d_sup.hi * &q_k * &d_beta;
    let stated = &term1 + &term2 + &term3;

    // -- exact bound chain ---------------------------------------------
    let two_t = BigInt::from(2) * &next.t;
    let chain_fail = |what: &str| {
        Err(VortexError::ConstructionBug(format!(
            "stage estimate chain failed at k = {k}: {what}"
        )))
    };
    // s <= 2t <= 2 q^{1/3} < q^{1/2}
    if next.s > two_t {
        return chain_fail("s > 2t");
    }
    if next.t.pow(3) > next.q {
        return chain_fail("t^3 > q");
    }
    if two_t.pow(2) >= next.q {
        return chain_fail("(2t)^2 >= q, so 2 q^{1/3} < q^{1/2} fails");
    }
    if next.s.pow(2) > next.q {
        return chain_fail("s^2 > q");
    }
    // term1 <= q_k / q^{5/12}: certified by l_hi * s * (q^{5/12})_hi <= q
    let q512 = pow_frac_bracket(&next.q, 5, 12);
    if &next.ell.hi * BigRational::from(next.s.clone()) * &q512.hi > q_next {
        return chain_fail("l_{k+1} s_{k+1} q^{5/12} > q");
    }
    // conditions 3 and 4 digest: C q |da| + D q |db| <= 2^{-(k+1)}
    let half_pow = BigRational::new(BigInt::one(), BigInt::one() << (k + 1) as usize);
    if &term2 + &term3 > half_pow {
        return chain_fail("C q |d alpha| + D q |d beta| > 2^{-(k+1)}");
    }
    // q_k / q^{5/12} <= 2^{-(k+1)}: certified by 2^{k+1} q_k <= (q^{5/12})_lo
    if BigRational::from(BigInt::one() << (k + 1) as usize) * &q_k > q512.lo {
        return chain_fail("2^{k+1} q_k > q^{5/12}");
    }
    // together: stated <= q_k/q^{5/12} + 2^{-(k+1)} <= 2^{-k}
    let rapidez = BigRational::new(BigInt::one(), BigInt::one() << k as usize);

    // -- sampled sup against the chord-corrected bound ------------------
    let two_pi_hi = pi_bracket().hi * BigRational::from(BigInt::from(2));
    let corrected = &term1 * &two_pi_hi + &term2 + &term3 * &two_pi_hi;
    let (sampled_sup, n_sampled) = sampled_sup_difference(prev, next, grid, SAMPLE_CAP);
    let corrected_f = rat_f64_up(&corrected);
    if sampled_sup > corrected_f + FLOAT_SLACK {
        return Err(VortexError::ConstructionBug(format!(
            "sampled stage difference {sampled_sup:.6e} exceeds the corrected bound {corrected_f:.6e}"
        )));
    }

    Ok(StageEstimateReport {
        k,
        sampled_sup,
        stated_rhs: rat_f64_up(&stated),
        corrected_rhs: corrected_f,
        rapidez_bound: rapidez.to_f64().unwrap_or(f64::NAN),
        n_sampled,
        grid,
        chain_ok: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stage::{ak_init, ak_next, SearchRange};
    use num_traits::Zero;

    fn two_stages() -> (AkStage, AkStage) {
        let s1 = ak_init(1.0, 1).unwrap();
        let s2 = ak_next(&s1, SearchRange { m_min: 1, m_max: 32 }).unwrap();
        (s1, s2)
    }

    #[test]
    fn identical_stages_have_zero_difference() {
        let (s1, _) = two_stages();
        let (sup, _) = sampled_sup_difference(&s1, &s1, 64, 16);
        assert!(sup < 1e-12);
    }

    #[test]
    fn first_pair_estimate() {
        let (s1, s2) = two_stages();
        let rep = verify_stage_estimate(&s1, &s2, 256).unwrap();
        assert!(rep.chain_ok);
        // eq. rapidez at k = 1: the stated bound stays below 1/2
        assert!(rep.stated_rhs <= 0.5);
        assert_eq!(rep.rapidez_bound, 0.5);
        assert!(rep.sampled_sup <= rep.corrected_rhs + 1e-9);
        // the chord gap is real: the sampled sup genuinely exceeds the
        // stated (uncorrected) bound near x = 1/4, n = q_1
        assert!(rep.sampled_sup > rep.stated_rhs);
    }

    #[test]
    fn sabotaged_alpha_fails_chain() {
        let (s1, s2) = two_stages();
        let mut bad = s2.clone();
        // double the alpha increment and keep beta = r alpha consistent
        let d_alpha = &s2.alpha - &s1.alpha;
        bad.alpha = &s2.alpha + &d_alpha;
        let shifted = &bad.alpha * BigRational::from(bad.r.clone());
        bad.beta = shifted.clone() - shifted.floor();
        assert!(!(&bad.beta - &s1.beta).abs().is_zero());
        match verify_stage_estimate(&s1, &bad, 32) {
            Err(VortexError::ConstructionBug(msg)) => {
                assert!(msg.contains("2^{-(k+1)}"), "{msg}");
            }
            other => panic!("expected chain failure, got {other:?}"),
        }
    }

    #[test]
    fn non_consecutive_rejected() {
        let (s1, _) = two_stages();
        assert!(verify_stage_estimate(&s1, &s1, 16).is_err());
    }
}
