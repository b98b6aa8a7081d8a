//! The rational-independence dichotomy at the last constructed stage.
//!
//! For every nonzero integer triple `(p, q, r)` within the bound, either
//! `p alpha_k + q beta_k + r` vanishes exactly — which forces the
//! divisibility `q_k | p + q r_k`, impossible for large stages since
//! `r_k <= sqrt(q_k)` — or its absolute value is at least `1/q_k`. The 5'
//! per-step bound then caps every future drift of the pair below `1/q_k`,
//! which is what pushes the dichotomy through to the limit angles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use vortex_core::{Result, VortexError};

use crate::stage::AkStage;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub k: u32,
    pub bound: i64,
    pub triples_checked: u64,
    /// Triples where the combination vanishes exactly; each carries the
    /// verified divisibility obstruction `q_k | p + q r_k`.
    pub vanishing: Vec<(i64, i64, i64)>,
    /// Smallest nonzero `|p alpha + q beta + r|` seen.
    pub min_abs: f64,
    /// Exact check that `max(|p|, |q|) * (5'-tail) < 1/q_k` held for all
    /// triples.
    pub tail_ok: bool,
}

/// Rigorous upper bound for the 5' tail `sum_{j>=k} (|d alpha_j| + |d beta_j|)`
/// at the last built stage `k`: the first future step contributes at most
/// `2^{-(k+1)}/(k q_k)` and all later ones live over `q >= q_k^3`.
fn tail_bound(stage: &AkStage) -> BigRational {
    let k = stage.k as u64;
    let q = BigRational::from(stage.q.clone());
    let q3 = BigRational::from(stage.q.pow(3));
    let pow = BigRational::new(BigInt::one(), BigInt::one() << (stage.k + 1) as usize);
    let first = &pow / (BigRational::from(BigInt::from(k)) * &q);
    let rest = &pow / (BigRational::from(BigInt::from(k + 1)) * &q3);
    first + rest
}

/// Check the dichotomy for all triples `|p|, |q|, |r| <= bound`, `(p,q,r) != 0`.
pub fn independence_check(stages: &[AkStage], bound: i64) -> Result<IndependenceReport> {
    if stages.len() < 2 {
        return Err(VortexError::input(
            "independence check requires at least two constructed stages",
        ));
    }
    if bound < 1 {
        return Err(VortexError::input("bound must be >= 1"));
    }
    let last = stages.last().unwrap();
    let inv_q = BigRational::new(BigInt::one(), last.q.clone());
    let tail = tail_bound(last);
    let mut vanishing = Vec::new();
    let mut min_abs = f64::INFINITY;
    let mut checked = 0u64;
    for p in -bound..=bound {
        for q in -bound..=bound {
            for r in -bound..=bound {
                if p == 0 && q == 0 && r == 0 {
                    continue;
                }
                checked += 1;
                let v = BigRational::from(BigInt::from(p)) * &last.alpha
                    + BigRational::from(BigInt::from(q)) * &last.beta
                    + BigRational::from(BigInt::from(r));
                if v.is_zero() {
                    // the proof's algebra forces q_k | p + q r_k here
                    let obstruction = BigInt::from(p) + BigInt::from(q) * &last.r;
                    if !(obstruction.clone() % &last.q).is_zero() {
                        return Err(VortexError::ConstructionBug(format!(
                            "triple ({p}, {q}, {r}) vanished without the divisibility \
                             obstruction q_k | p + q r_k"
                        )));
                    }
                    vanishing.push((p, q, r));
                } else {
                    if v.abs() < inv_q {
                        return Err(VortexError::ConstructionBug(format!(
                            "triple ({p}, {q}, {r}) gives 0 < |p a + q b + r| < 1/q_k"
                        )));
                    }
                    min_abs = min_abs.min(v.abs().to_f64().unwrap_or(f64::NAN));
                }
                // 5' tail: max(|p|, |q|) * tail < 1/q_k
                let m = BigRational::from(BigInt::from(p.abs().max(q.abs())));
                if m * &tail >= inv_q {
                    return Err(VortexError::ConstructionBug(format!(
                        "5' tail bound failed for triple ({p}, {q}, {r})"
                    )));
                }
            }
        }
    }
    // the constructed sequence must eventually lose all exact relations
    Ok(IndependenceReport {
        k: last.k,
        bound,
        triples_checked: checked,
        vanishing,
        min_abs,
        tail_ok: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stage::{ak_init, ak_next, SearchRange};

    fn stages() -> Vec<AkStage> {
        let s1 = ak_init(1.0, 1).unwrap();
        let s2 = ak_next(&s1, SearchRange { m_min: 1, m_max: 32 }).unwrap();
        vec![s1, s2]
    }

    #[test]
    fn two_stage_dichotomy_bound_ten() {
        let report = independence_check(&stages(), 10).unwrap();
        assert_eq!(report.triples_checked, 21 * 21 * 21 - 1);
        // stage 2's angles admit no small integer relation at all
        assert!(report.vanishing.is_empty());
        assert!(report.min_abs >= 1.0 / 24_304_901.0 - 1e-12);
        assert!(report.tail_ok);
    }

    #[test]
    fn trivial_triples() {
        // (0, 0, 1) gives exactly 1 >= 1/q_k; (1, 0, 0) gives alpha itself
        let report = independence_check(&stages(), 1).unwrap();
        assert!(report.min_abs <= 1.0);
        assert!(report.vanishing.is_empty());
    }

    #[test]
    fn requires_two_stages() {
        let s1 = ak_init(1.0, 1).unwrap();
        assert!(independence_check(&[s1], 3).is_err());
    }

    #[test]
    fn stage_one_vanishing_relation_has_obstruction() {
        // at stage 1 (alpha, beta) = (1/5, 2/5): alpha + 2 beta - 1 = 0 and
        // indeed q_1 = 5 divides p + q r_1 = 1 + 2*2 = 5. The dichotomy
        // logic accepts it as a reported vanishing triple.
        let s1 = ak_init(1.0, 1).unwrap();
        let fake = vec![s1.clone(), s1]; // same stage twice only for the API
        let report = independence_check(&fake, 2).unwrap();
        assert!(report.vanishing.contains(&(1, 2, -1)));
    }
}
