//! Angles on the circle, stored either as exact big rationals or as plain
//! floats, always reduced into `[0, 1)`.
//!
//! Base coordinates of a vortex live here. Exact rationals keep periodic
//! base dynamics periodic to the bit; floats carry the irrational cases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, VortexError};

/// A point of the circle `R/Z`, reduced into `[0, 1)`.
///
/// Rational values are kept in lowest terms and all arithmetic between
/// rationals stays exact. Any operation mixing a rational with a float
/// demotes to a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    Rational(BigRational),
    Real(f64),
}

fn reduce_mod1(r: BigRational) -> BigRational {
    let fl = r.floor();
    r - fl
}

fn frac_f64(x: f64) -> f64 {
    let f = x - x.floor();
    // x slightly below an integer can round the fractional part up to 1.0
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

impl Angle {
    pub fn zero() -> Self {
        Angle::Rational(BigRational::zero())
    }

    /// Exact rational angle `num/den` reduced mod 1.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(VortexError::input("angle denominator must be nonzero"));
        }
        Ok(Self::from_big_ratio(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_big_ratio(r: BigRational) -> Self {
        Angle::Rational(reduce_mod1(r))
    }

    pub fn from_f64(x: f64) -> Self {
        Angle::Real(frac_f64(x))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Angle::Rational(_))
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Angle::Rational(r) => Some(r),
            Angle::Real(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Angle::Rational(r) => r.is_zero(),
            Angle::Real(x) => *x == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Angle::Rational(r) => {
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }
            Angle::Real(x) => *x,
        }
    }

    pub fn add(&self, other: &Angle) -> Angle {
        match (self, other) {
            (Angle::Rational(a), Angle::Rational(b)) => Angle::Rational(reduce_mod1(a + b)),
            _ => Angle::Real(frac_f64(self.to_f64() + other.to_f64())),
        }
    }

    pub fn sub(&self, other: &Angle) -> Angle {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Angle {
        match self {
            Angle::Rational(r) => Angle::Rational(reduce_mod1(-r)),
            Angle::Real(x) => Angle::Real(frac_f64(-x)),
        }
    }

    /// `n * self` reduced mod 1; exact in the rational case for any `n`.
    pub fn mul_int(&self, n: i64) -> Angle {
        match self {
            Angle::Rational(r) => Angle::Rational(reduce_mod1(r * BigInt::from(n))),
            Angle::Real(x) => Angle::Real(frac_f64(*x * n as f64)),
        }
    }

    pub fn mul_big(&self, n: &BigInt) -> Angle {
        match self {
            Angle::Rational(r) => Angle::Rational(reduce_mod1(r * n)),
            Angle::Real(x) => Angle::Real(frac_f64(*x * n.to_f64().unwrap_or(f64::NAN))),
        }
    }

    /// Distance on the circle (minimum of the two arcs), as a float.
    pub fn circle_dist(&self, other: &Angle) -> f64 {
        let d = frac_f64(self.to_f64() - other.to_f64());
        d.min(1.0 - d)
    }

    /// Plain distance of the representatives in `[0, 1)`.
    pub fn rep_dist(&self, other: &Angle) -> f64 {
        (self.to_f64() - other.to_f64()).abs()
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Angle::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Angle::Real(x) => write!(f, "{x:.17}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RatioJson {
    num: String,
    den: String,
}

/// JSON form: exact rationals as `{"num": "...", "den": "..."}`, floats as a
/// decimal string (tagged inexact by virtue of being a bare string).
impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Angle::Rational(r) => RatioJson {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            }
            .serialize(ser),
            Angle::Real(x) => format!("{x:.17}").serialize(ser),
        }
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Ratio(RatioJson),
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(de)? {
            Raw::Ratio(r) => {
                let num: BigInt = r.num.parse().map_err(D::Error::custom)?;
                let den: BigInt = r.den.parse().map_err(D::Error::custom)?;
                if den.is_zero() {
                    return Err(D::Error::custom("angle denominator must be nonzero"));
                }
                Ok(Angle::from_big_ratio(BigRational::new(num, den)))
            }
            Raw::Text(s) => {
                let x: f64 = s.trim().parse().map_err(D::Error::custom)?;
                Ok(Angle::from_f64(x))
            }
            Raw::Number(x) => Ok(Angle::from_f64(x)),
        }
    }
}
