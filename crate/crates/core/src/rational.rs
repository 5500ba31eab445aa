//! Exact rational numbers backed by big integers.
//!
//! Every exact predicate in the crate (densities, `f_alpha`, interval
//! endpoints) goes through [`Rational`]. Floating point shows up only in
//! Monte Carlo summaries.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        let (q, r) = self.0.numer().div_mod_floor(self.0.denom());
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    }

    /// Nearest `f64`; only for reporting.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let negative = self.0.is_negative();
        let numer = self.0.numer().abs();
        let denom = self.0.denom();
        let (int_part, mut rem) = numer.div_rem(denom);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            for _ in 0..digits {
                rem *= 10;
                let (d, r) = rem.div_rem(denom);
                out.push_str(&d.to_string());
                rem = r;
            }
        }
        out
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `a`, `a/b` and finite decimals such as `1.2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let bad = || ParseRationalError::Invalid(s.to_string());
        if let Some((n, d)) = text.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational::new(n, d));
        }
        if let Some((int, frac)) = text.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits = format!("{int_digits}{frac}");
            let mut n: BigInt = digits.parse().map_err(|_| bad())?;
            if negative {
                n = -n;
            }
            let d = num_traits::pow(BigInt::from(10), frac.len());
            return Ok(Rational::new(n, d));
        }
        let n: BigInt = text.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Shorthand for `Rational::new(n, d)` with machine integers.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = ratio(170, 256);
        assert_eq!(r.to_string(), "85/128");
        assert_eq!(ratio(4, -6).to_string(), "-2/3");
        assert_eq!(ratio(6, 3).to_string(), "2");
    }

    #[test]
    fn parsing() {
        assert_eq!("2/3".parse::<Rational>().unwrap(), ratio(2, 3));
        assert_eq!("1.2".parse::<Rational>().unwrap(), ratio(6, 5));
        assert_eq!("-0.25".parse::<Rational>().unwrap(), ratio(-1, 4));
        assert_eq!("7".parse::<Rational>().unwrap(), ratio(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(ratio(53, 80).to_decimal_string(6), "0.662500");
        assert_eq!(ratio(2, 3).to_decimal_string(4), "0.6666");
        assert_eq!(ratio(-1, 8).to_decimal_string(3), "-0.125");
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(ratio(7, 2).floor(), BigInt::from(3));
        assert_eq!(ratio(7, 2).ceil(), BigInt::from(4));
        assert_eq!(ratio(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(ratio(6, 2).ceil(), BigInt::from(3));
    }

    #[test]
    fn serde_as_string() {
        let json = serde_json::to_string(&ratio(15, 16)).unwrap();
        assert_eq!(json, "\"15/16\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ratio(15, 16));
    }

    proptest::proptest! {
        #[test]
        fn display_parse_lossless(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = ratio(n, d);
            let back: Rational = r.to_string().parse().unwrap();
            proptest::prop_assert_eq!(back, r);
        }
    }
}
