//! Stages of the approximation-by-conjugation construction.
//!
//! Stage `k` carries exact rationals `alpha_k = s_k p_k / q_k mod 1` and
//! `beta_k = r_k alpha_k mod 1` drawn from the FS(2,3) family, together
//! with the section `phi_k = sum_j l_j sin(2 pi t_j x) e^{2 pi i r_j x}`
//! whose graph is invariant under the stage map. Advancing a stage searches
//! the family, ascending in `m` then in `s`, for the first pair satisfying
//! the growth conditions (1)-(4) plus the strengthened per-step closeness
//! bound (5'), all verified in exact arithmetic:
//!
//! 1. `1 <= s <= 2t`
//! 2. `q > q_k^3`, `q^{5/12} >= 2^{k+1} q_k`, `q^{1/12} >= 2k q_k^{1/12}`,
//!    `q >= ceil(2(k+1) sum_{j<=k} l_j sqrt(q_j))^3`
//! 3. `|alpha_{k+1} - alpha_k| <= 1 / (2^{k+2} q_k C_k)`
//! 4. `|beta_{k+1} - beta_k| <= 1 / (2^{k+2} q_k D_k)`
//! 5'. `|alpha_{k+1} - alpha_k| + |beta_{k+1} - beta_k| <= 2^{-(k+1)} / (k q_k)`
//!
//! 5' is strictly stronger than the tail-sum condition it replaces: since
//! `j q_j` is nondecreasing, summing it over `j >= k` stays below `1/(k q_k)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use vortex_core::{unit, Angle, Result, VortexError};

use crate::fs::{fs_family, FsEntry};
use crate::roots::{pi_bracket, sqrt_bracket, twelfth_root_bracket, RatBracket};

/// One additive term of the section: `l sin(2 pi t x) e^{2 pi i r x}`.
#[derive(Clone, Debug)]
pub struct PhiTerm {
    pub ell: RatBracket,
    pub t: i64,
    pub r: i64,
    /// Bracket of `sqrt(q_j)` for the stage this term was added at.
    pub sqrt_q: RatBracket,
}

/// Booleans recording the exact condition checks of the stage search.
/// Stage 1 has no predecessor; its conditions hold vacuously.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct StageConditions {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub c4: bool,
    #[serde(rename = "c5'")]
    pub c5p: bool,
}

impl StageConditions {
    pub fn all(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4 && self.c5p
    }

    fn vacuous() -> Self {
        StageConditions {
            c1: true,
            c2: true,
            c3: true,
            c4: true,
            c5p: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AkStage {
    pub k: u32,
    pub m: u64,
    pub q: BigInt,
    pub s: BigInt,
    pub p: BigInt,
    pub t: BigInt,
    pub r: BigInt,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// `l_k` (`q_k^{1/12}` from stage 2 on; configurable at stage 1).
    pub ell: RatBracket,
    /// Lipschitz bound `C_k = 2 pi sum_j l_j (t_j + r_j)`.
    pub c_lip: RatBracket,
    /// Sup bound `D_k = sum_j l_j`.
    pub d_sup: RatBracket,
    pub phi: Vec<PhiTerm>,
    pub conditions: StageConditions,
}

/// Search window for the next stage.
#[derive(Clone, Copy, Debug)]
pub struct SearchRange {
    pub m_min: u64,
    pub m_max: u64,
}

fn frac(r: BigRational) -> BigRational {
    let f = r.floor();
    r - f
}

fn big_to_i64(v: &BigInt, what: &str) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| VortexError::input(format!("{what} exceeds i64 range")))
}

fn lip_term(ell: &RatBracket, t: &BigInt, r: &BigInt) -> RatBracket {
    // 2 pi l (t + r), rounded up through pi_hi and l_hi
    let two = BigRational::from(BigInt::from(2));
    let tr = BigRational::from(t + r);
    pi_bracket().mul_nonneg(ell).scale(&(two * tr))
}

impl AkStage {
    pub fn alpha_angle(&self) -> Angle {
        Angle::from_big_ratio(self.alpha.clone())
    }

    pub fn beta_angle(&self) -> Angle {
        Angle::from_big_ratio(self.beta.clone())
    }

    /// `phi_k(x)` in double precision.
    pub fn phi_eval(&self, x: f64) -> Complex64 {
        let tau = 2.0 * std::f64::consts::PI;
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.phi {
            let l = term.ell.mid_f64();
            acc += unit(term.r as f64 * x).scale(l * (tau * term.t as f64 * x).sin());
        }
        acc
    }

    /// `phi_k` at an exact circle point: phases reduced mod 1 before
    /// rounding, so long rational orbits stay accurate.
    pub fn phi_eval_angle(&self, x: &Angle) -> Complex64 {
        let tau = 2.0 * std::f64::consts::PI;
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.phi {
            let l = term.ell.mid_f64();
            let tx = x.mul_int(term.t).to_f64();
            let rx = x.mul_int(term.r).to_f64();
            acc += unit(rx).scale(l * (tau * tx).sin());
        }
        acc
    }

    /// `(rho_k)_n(x) = phi_k(x + n alpha_k) - e^{2 pi i n beta_k} phi_k(x)`.
    pub fn rho_stage_n(&self, n: i64, x: &Angle) -> Complex64 {
        let shifted = x.add(&self.alpha_angle().mul_int(n));
        let twist = vortex_core::unit_angle(&self.beta_angle().mul_int(n));
        self.phi_eval_angle(&shifted) - twist * self.phi_eval_angle(x)
    }

    /// `rho_k = (rho_k)_1`.
    pub fn rho_stage(&self, x: &Angle) -> Complex64 {
        self.rho_stage_n(1, x)
    }

    /// Sum over the section terms of `l_j^hi`, exact.
    pub fn sum_ell_hi(&self) -> BigRational {
        self.phi.iter().map(|t| t.ell.hi.clone()).sum()
    }

    /// Cylinder radius of the density lemmas: `l_k - sum_{j<k} l_j`
    /// (lower bound through directed rounding).
    pub fn cylinder_radius_lo(&self) -> BigRational {
        let prev: BigRational = self.phi[..self.phi.len() - 1]
            .iter()
            .map(|t| t.ell.hi.clone())
            .sum();
        &self.ell.lo - &prev
    }
}

/// Stage 1. The modulus is free; `m1` picks the family entry and `ell1 >= 1`
/// scales the first section term.
pub fn ak_init(ell1: f64, m1: u64) -> Result<AkStage> {
    if !(ell1 >= 1.0) {
        return Err(VortexError::input("stage 1 requires ell1 >= 1"));
    }
    let entry = fs_family(m1)?;
    if entry.p.is_zero() {
        return Err(VortexError::input("chosen family entry has no inverse"));
    }
    let ell = RatBracket::exact(
        BigRational::from_float(ell1)
            .ok_or_else(|| VortexError::input("ell1 must be finite"))?,
    );
    let s = BigInt::one();
    let alpha = frac(BigRational::new(&s * &entry.p, entry.q.clone()));
    let beta = frac(&alpha * BigRational::from(entry.r.clone()));
    let term = PhiTerm {
        ell: ell.clone(),
        t: big_to_i64(&entry.t, "t")?,
        r: big_to_i64(&entry.r, "r")?,
        sqrt_q: sqrt_bracket(&entry.q),
    };
    let c_lip = lip_term(&term.ell, &entry.t, &entry.r);
    let stage = AkStage {
        k: 1,
        m: m1,
        q: entry.q,
        s,
        p: entry.p,
        t: entry.t,
        r: entry.r,
        alpha,
        beta,
        ell: ell.clone(),
        c_lip,
        d_sup: ell,
        phi: vec![term],
        conditions: StageConditions::vacuous(),
    };
    check_stage_invariants(&stage)?;
    Ok(stage)
}

fn check_stage_invariants(stage: &AkStage) -> Result<()> {
    // beta = r alpha mod 1 exactly
    let expect = frac(&stage.alpha * BigRational::from(stage.r.clone()));
    if expect != stage.beta {
        return Err(VortexError::ConstructionBug(
            "beta is not r * alpha mod 1".into(),
        ));
    }
    let one = BigRational::one();
    if stage.c_lip.hi < one || stage.d_sup.hi < one {
        return Err(VortexError::ConstructionBug("C, D must be >= 1".into()));
    }
    // cylinder growth: sum_{j<k} l_j <= l_k / 2
    let prev: BigRational = stage.phi[..stage.phi.len() - 1]
        .iter()
        .map(|t| t.ell.hi.clone())
        .sum();
    let two = BigRational::from(BigInt::from(2));
    if &prev * &two > stage.ell.lo {
        return Err(VortexError::ConstructionBug(
            "cylinder radius shrank below l_k / 2".into(),
        ));
    }
    Ok(())
}

/// Exact condition 2 for a candidate modulus.
fn condition2(k: u32, q_k: &BigInt, sum_ell_sqrt_hi: &BigRational, q: &BigInt) -> bool {
    if q <= &q_k.pow(3) {
        return false;
    }
    // q^{5/12} >= 2^{k+1} q_k  <=>  q^5 >= 2^{12(k+1)} q_k^12
    let rhs = (BigInt::one() << (12 * (k + 1) as usize)) * q_k.pow(12);
    if q.pow(5) < rhs {
        return false;
    }
    // q^{1/12} >= 2k q_k^{1/12}  <=>  q >= (2k)^12 q_k
    if *q < BigInt::from(2 * k as u64).pow(12) * q_k {
        return false;
    }
    // q >= ceil(2 (k+1) S)^3 with S an upper bound of sum l_j sqrt(q_j)
    let factor = BigRational::from(BigInt::from(2 * (k as u64 + 1)));
    let bound = (factor * sum_ell_sqrt_hi).ceil().to_integer().pow(3);
    *q >= bound
}

/// Exact enumeration of the multipliers `s` whose `alpha' = frac(s p / q)`
/// can land in the condition-3 window, using the family identity
/// `p = q - (m^2+1)^2`, i.e. `alpha' = frac(-s A / q)` with `A = q - p`.
fn s_candidates(entry: &FsEntry, target: &BigRational, w: &BigRational) -> Vec<BigInt> {
    let a = &entry.q - &entry.p; // (m^2 + 1)^2 for family entries
    let two_t = BigInt::from(2) * &entry.t;
    let c = BigRational::new(a, entry.q.clone()); // A / q
    // frac(s c) must lie in [1 - target - w, 1 - target + w] (mod 1)
    let lo_band = BigRational::one() - target - w;
    let hi_band = BigRational::one() - target + w;
    let u_max = (BigRational::from(two_t.clone()) * &c).ceil().to_integer() + 1;
    let mut out = Vec::new();
    let mut i = BigInt::from(-1);
    while i <= u_max {
        let band_lo = &lo_band + BigRational::from(i.clone());
        let band_hi = &hi_band + BigRational::from(i.clone());
        let s_lo = (band_lo / c.clone()).ceil().to_integer();
        let s_hi = (band_hi / c.clone()).floor().to_integer();
        let mut s = s_lo.max(BigInt::one());
        let s_end = s_hi.min(two_t.clone());
        while s <= s_end {
            out.push(s.clone());
            s += 1;
        }
        i += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Advance the construction one stage. Ascending in `m` then `s`; the first
/// candidate passing all exact conditions wins. Exhaustion reports how many
/// `(m, s)` pairs fell to each condition.
pub fn ak_next(stage: &AkStage, search: SearchRange) -> Result<AkStage> {
    if search.m_min > search.m_max {
        return Err(VortexError::input("empty search range"));
    }
    let k = stage.k;
    let two = BigInt::from(2);
    let q_k_rat = BigRational::from(stage.q.clone());
    // exact condition windows (C, D rounded up makes them conservative)
    let w3 = BigRational::one()
        / (BigRational::from(BigInt::one() << (k + 2) as usize) * &q_k_rat * &stage.c_lip.hi);
    let w4 = BigRational::one()
        / (BigRational::from(BigInt::one() << (k + 2) as usize) * &q_k_rat * &stage.d_sup.hi);
    let w5 = BigRational::one()
        / (BigRational::from((BigInt::one() << (k + 1) as usize) * BigInt::from(k as u64)) * &q_k_rat);

    let sum_ell_sqrt_hi: BigRational = stage
        .phi
        .iter()
        .map(|t| &t.ell.hi * &t.sqrt_q.hi)
        .sum();

    let mut fail2 = BigInt::zero();
    let mut fail3 = BigInt::zero();
    let mut fail4 = BigInt::zero();
    let mut fail5 = BigInt::zero();

    for m in search.m_min..=search.m_max {
        let entry = fs_family(m)?;
        let two_t = &two * &entry.t;
        if !condition2(k, &stage.q, &sum_ell_sqrt_hi, &entry.q) {
            fail2 += &two_t;
            continue;
        }
        let cands = s_candidates(&entry, &stage.alpha, &w3);
        fail3 += &two_t - BigInt::from(cands.len());
        for s in cands {
            let alpha_next = frac(BigRational::new(&s * &entry.p, entry.q.clone()));
            let d_alpha = (&alpha_next - &stage.alpha).abs();
            if d_alpha > w3 {
                fail3 += 1;
                continue;
            }
            let beta_next = frac(&alpha_next * BigRational::from(entry.r.clone()));
            let d_beta = (&beta_next - &stage.beta).abs();
            if d_beta > w4 {
                fail4 += 1;
                continue;
            }
            if &d_alpha + &d_beta > w5 {
                fail5 += 1;
                continue;
            }
            return build_next(stage, m, &entry, s, alpha_next, beta_next);
        }
    }
    Err(VortexError::SearchExhausted(format!(
        "no (m, s) with m in [{}, {}] satisfies the stage conditions; \
         failures: condition2 = {fail2}, condition3 = {fail3}, condition4 = {fail4}, \
         condition5' = {fail5}",
        search.m_min, search.m_max
    )))
}

fn build_next(
    stage: &AkStage,
    m: u64,
    entry: &FsEntry,
    s: BigInt,
    alpha: BigRational,
    beta: BigRational,
) -> Result<AkStage> {
    let ell = twelfth_root_bracket(&entry.q);
    let term = PhiTerm {
        ell: ell.clone(),
        t: big_to_i64(&entry.t, "t")?,
        r: big_to_i64(&entry.r, "r")?,
        sqrt_q: sqrt_bracket(&entry.q),
    };
    let mut phi = stage.phi.clone();
    phi.push(term);
    let c_lip = stage.c_lip.add(&lip_term(&ell, &entry.t, &entry.r));
    let d_sup = stage.d_sup.add(&ell);
    let next = AkStage {
        k: stage.k + 1,
        m,
        q: entry.q.clone(),
        s,
        p: entry.p.clone(),
        t: entry.t.clone(),
        r: entry.r.clone(),
        alpha,
        beta,
        ell,
        c_lip,
        d_sup,
        phi,
        conditions: StageConditions {
            c1: true,
            c2: true,
            c3: true,
            c4: true,
            c5p: true,
        },
    };
    check_stage_invariants(&next)?;
    Ok(next)
}

/// Serializable stage log entry (big integers as strings).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageLog {
    pub k: u32,
    pub m: u64,
    pub q: String,
    pub s: String,
    pub p: String,
    pub t: String,
    pub r: String,
    pub alpha: Angle,
    pub beta: Angle,
    pub ell: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub conditions: StageConditions,
}

impl From<&AkStage> for StageLog {
    fn from(s: &AkStage) -> Self {
        StageLog {
            k: s.k,
            m: s.m,
            q: s.q.to_string(),
            s: s.s.to_string(),
            p: s.p.to_string(),
            t: s.t.to_string(),
            r: s.r.to_string(),
            alpha: s.alpha_angle(),
            beta: s.beta_angle(),
            ell: s.ell.mid_f64(),
            c: s.c_lip.hi.to_f64().unwrap_or(f64::NAN),
            d: s.d_sup.hi.to_f64().unwrap_or(f64::NAN),
            conditions: s.conditions,
        }
    }
}
