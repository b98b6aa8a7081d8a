//! Directed-rounding brackets for the irrational quantities of the staged
//! construction: `q^{1/12}`, `q^{5/12}`, square roots and pi.
//!
//! A bracket is a pair of exact rationals `lo <= x <= hi` with dyadic width
//! `2^{-PRECISION_BITS} * scale`. Conditions use `hi` wherever the quantity
//! sits on the large side of an inequality and `lo` on the small side, so
//! each certified inequality implies the true one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Dyadic denominator exponent of every bracket.
pub const PRECISION_BITS: u32 = 64;

/// An exact enclosure `lo <= x <= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatBracket {
    pub fn exact(v: BigRational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Self {
        Self::exact(BigRational::from(BigInt::from(v)))
    }

    pub fn add(&self, other: &RatBracket) -> RatBracket {
        RatBracket {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Product of nonnegative brackets.
    pub fn mul_nonneg(&self, other: &RatBracket) -> RatBracket {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RatBracket {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatBracket {
        debug_assert!(!c.is_negative());
        RatBracket {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    pub fn mid_f64(&self) -> f64 {
        let two = BigRational::from(BigInt::from(2));
        let m = (&self.lo + &self.hi) / two;
        m.to_f64().unwrap_or(f64::NAN)
    }
}

/// `floor(root_b(x))` for a nonnegative big integer, by Newton iteration.
pub fn integer_root(x: &BigInt, b: u32) -> BigInt {
    assert!(!x.is_negative() && b >= 1);
    num_integer::Roots::nth_root(x, b)
}

/// Bracket of `n^{a/b}` for a nonnegative integer `n`:
/// the integer `r = floor((n^a * 2^{b P})^{1/b})` yields
/// `r / 2^P <= n^{a/b} <= (r+1) / 2^P`.
pub fn pow_frac_bracket(n: &BigInt, a: u32, b: u32) -> RatBracket {
    assert!(!n.is_negative());
    let scaled = n.pow(a) << (b * PRECISION_BITS);
    let r = integer_root(&scaled, b);
    let den = BigInt::one() << PRECISION_BITS;
    RatBracket {
        lo: BigRational::new(r.clone(), den.clone()),
        hi: BigRational::new(r + 1, den),
    }
}

pub fn sqrt_bracket(n: &BigInt) -> RatBracket {
    pow_frac_bracket(n, 1, 2)
}

pub fn twelfth_root_bracket(n: &BigInt) -> RatBracket {
    pow_frac_bracket(n, 1, 12)
}

pub fn pow_5_12_bracket(n: &BigInt) -> RatBracket {
    pow_frac_bracket(n, 5, 12)
}

/// A rational enclosure of pi good to 14 decimal digits.
pub fn pi_bracket() -> RatBracket {
    let den = BigInt::from(10u64).pow(14);
    RatBracket {
        lo: BigRational::new(BigInt::from(314_159_265_358_979u64), den.clone()),
        hi: BigRational::new(BigInt::from(314_159_265_358_980u64), den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_encloses(b: &RatBracket, v: f64) {
        assert!(b.lo.to_f64().unwrap() <= v + 1e-12, "{b:?} vs {v}");
        assert!(b.hi.to_f64().unwrap() >= v - 1e-12);
        assert!(b.lo <= b.hi);
    }

    #[test]
    fn brackets_enclose() {
        check_encloses(&sqrt_bracket(&BigInt::from(5)), 5f64.sqrt());
        check_encloses(&twelfth_root_bracket(&BigInt::from(24_304_901u64)), (24_304_901f64).powf(1.0 / 12.0));
        check_encloses(&pow_5_12_bracket(&BigInt::from(49285)), (49285f64).powf(5.0 / 12.0));
        let pi = pi_bracket();
        check_encloses(&pi, std::f64::consts::PI);
        // width of the pi bracket is 1e-14
        assert!((&pi.hi - &pi.lo).to_f64().unwrap() < 2e-14);
    }

    #[test]
    fn exact_cases_are_tight() {
        // perfect powers give lo equal to the true value
        let b = sqrt_bracket(&BigInt::from(49));
        assert_eq!(b.lo, BigRational::from(BigInt::from(7)));
        let b = pow_frac_bracket(&BigInt::from(4096), 1, 12);
        assert_eq!(b.lo, BigRational::from(BigInt::from(2)));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(&BigInt::from(8), 3), BigInt::from(2));
        assert_eq!(integer_root(&BigInt::from(26), 3), BigInt::from(2));
        assert_eq!(integer_root(&BigInt::from(27), 3), BigInt::from(3));
        assert_eq!(integer_root(&BigInt::from(101), 2), BigInt::from(10));
    }
}
