//! The FS(2,3) frequency sets: for each modulus `q`, the pairs
//! `(s p / q, s p r / q) mod 1` with `t = floor(q^{1/3})`,
//! `r = floor(sqrt(q))`, `p` the inverse of `t` mod `q` (when it exists)
//! and `1 <= s <= 2t`. Their union over `q` is dense in the unit square,
//! which is what lets the stage search hit arbitrarily small target
//! windows. The one-parameter family `q = m^6 + 2m^4 + m^2 + 1` realizes
//! the density constructively.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use vortex_core::{Result, VortexError};

use crate::roots::integer_root;

/// The arithmetic data attached to one modulus `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FsEntry {
    pub q: BigInt,
    /// `floor(q^{1/3})`
    pub t: BigInt,
    /// `floor(sqrt(q))`
    pub r: BigInt,
    /// Inverse of `t` mod `q`, or `0` when `gcd(q, t) > 1`.
    pub p: BigInt,
}

/// Extended-Euclid modular inverse: `a^{-1} mod m` when `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m <= &BigInt::one() {
        return None;
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn fs_entry(q: &BigInt) -> Result<FsEntry> {
    if q < &BigInt::one() {
        return Err(VortexError::input("fs entry requires q >= 1"));
    }
    let t = integer_root(q, 3);
    let r = integer_root(q, 2);
    let p = mod_inverse(&t, q).unwrap_or_else(BigInt::zero);
    Ok(FsEntry { q: q.clone(), t, r, p })
}

/// The closed-form family `q = m^6 + 2 m^4 + m^2 + 1 = (m^3 + m)^2 + 1`,
/// for which `t = m^2`, `r = m^3 + m` and `p = m^6 + m^4 - m^2`.
pub fn fs_family(m: u64) -> Result<FsEntry> {
    if m < 1 {
        return Err(VortexError::input("fs family requires m >= 1"));
    }
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let m3 = &m2 * &m;
    let m4 = &m2 * &m2;
    let m6 = &m4 * &m2;
    let q = &m6 + BigInt::from(2) * &m4 + &m2 + 1;
    let t = m2.clone();
    let r = &m3 + &m;
    let p = &m6 + &m4 - &m2;
    debug_assert_eq!((&p * &t).mod_floor(&q), BigInt::one());
    Ok(FsEntry { q, t, r, p })
}

fn frac(r: BigRational) -> BigRational {
    let f = r.floor();
    r - f
}

impl FsEntry {
    /// `s p / q mod 1` for one multiplier.
    pub fn alpha_of(&self, s: &BigInt) -> BigRational {
        frac(BigRational::new(s * &self.p, self.q.clone()))
    }

    /// The full set `FS_q(2,3)` as exact rational pairs; empty when `p = 0`.
    pub fn pairs(&self) -> Vec<(BigRational, BigRational)> {
        if self.p.is_zero() {
            return Vec::new();
        }
        let two_t = BigInt::from(2) * &self.t;
        let mut out = Vec::new();
        let mut s = BigInt::one();
        while s <= two_t {
            let a = self.alpha_of(&s);
            let b = frac(&a * BigRational::from(self.r.clone()));
            out.push((a, b));
            s += 1;
        }
        out
    }
}

/// Convenience wrapper matching the operation name.
pub fn fs_q_set(q: &BigInt) -> Result<Vec<(BigRational, BigRational)>> {
    Ok(fs_entry(q)?.pairs())
}

/// What a density scan ranges over.
#[derive(Clone, Debug)]
pub enum ScanInput {
    /// All family entries with `1 <= m <= m_max`.
    FamilyUpTo(u64),
    /// All moduli `1 <= q <= q_max`.
    AllQUpTo(u64),
    /// An explicit list of moduli.
    Moduli(Vec<u64>),
}

/// Cell-coverage map of the unit square by FS pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverageMap {
    pub grid_n: usize,
    /// Row-major `grid_n x grid_n` hit mask.
    pub covered: Vec<bool>,
}

impl CoverageMap {
    fn new(grid_n: usize) -> Self {
        Self {
            grid_n,
            covered: vec![false; grid_n * grid_n],
        }
    }

    fn mark_pair(&mut self, pair: &(BigRational, BigRational)) {
        let cell = |v: &BigRational| -> usize {
            // floor(grid_n * v) computed exactly; v lies in [0, 1)
            let scaled = (BigInt::from(self.grid_n) * v.numer()).div_floor(v.denom());
            scaled.to_usize().unwrap_or(0).min(self.grid_n - 1)
        };
        let (i, j) = (cell(&pair.0), cell(&pair.1));
        self.covered[i * self.grid_n + j] = true;
    }

    pub fn is_full(&self) -> bool {
        self.covered.iter().all(|&c| c)
    }

    pub fn uncovered_cells(&self) -> Vec<(usize, usize)> {
        (0..self.grid_n * self.grid_n)
            .filter(|&k| !self.covered[k])
            .map(|k| (k / self.grid_n, k % self.grid_n))
            .collect()
    }
}

/// Mark every grid cell hit by an FS pair of the requested moduli.
pub fn fs_density_scan(input: &ScanInput, grid_n: usize) -> Result<CoverageMap> {
    if grid_n < 1 {
        return Err(VortexError::input("density scan requires grid_n >= 1"));
    }
    let mut map = CoverageMap::new(grid_n);
    let mut feed = |entry: FsEntry| {
        for pair in entry.pairs() {
            map.mark_pair(&pair);
        }
    };
    match input {
        ScanInput::FamilyUpTo(m_max) => {
            for m in 1..=*m_max {
                feed(fs_family(m)?);
            }
        }
        ScanInput::AllQUpTo(q_max) => {
            for q in 1..=*q_max {
                feed(fs_entry(&BigInt::from(q))?);
            }
        }
        ScanInput::Moduli(qs) => {
            for &q in qs {
                feed(fs_entry(&BigInt::from(q))?);
            }
        }
    }
    Ok(map)
}

/// Feed family entries `m = 1, 2, ...` until the grid is fully covered;
/// returns the map and the first `m` achieving full coverage, if any
/// within `m_limit`.
pub fn coverage_fill_family(grid_n: usize, m_limit: u64) -> Result<(CoverageMap, Option<u64>)> {
    if grid_n < 1 {
        return Err(VortexError::input("density scan requires grid_n >= 1"));
    }
    let mut map = CoverageMap::new(grid_n);
    for m in 1..=m_limit {
        for pair in fs_family(m)?.pairs() {
            map.mark_pair(&pair);
        }
        if map.is_full() {
            return Ok((map, Some(m)));
        }
    }
    Ok((map, None))
}
