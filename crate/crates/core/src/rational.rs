//! Exact rationals in canonical lowest terms.
//!
//! Every value is normalized at construction (positive denominator, reduced
//! fraction, zero as `0/1`), so structural equality is numeric equality and
//! the derived `Hash` is consistent with `Eq`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `(-1)^sign · magnitude / denominator` in lowest terms.
    pub fn make(
        sign_odd: bool,
        magnitude: impl Into<BigUint>,
        denominator: impl Into<BigUint>,
    ) -> Result<Self, RationalError> {
        let den: BigUint = denominator.into();
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        let sign = if sign_odd { Sign::Minus } else { Sign::Plus };
        let num = BigInt::from_biguint(sign, magnitude.into());
        Ok(Rational(BigRational::new(num, BigInt::from(den))))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `num / den` for machine integers; fails on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
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

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as a machine integer when it is integral and fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.numer().to_u64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn compare(&self, other: &Rational) -> Ordering {
        self.cmp(other)
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, RationalError> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rational {
        let num = num_traits::pow(self.numer().clone(), exp as usize);
        let den = num_traits::pow(self.denom().clone(), exp as usize);
        Rational(BigRational::new(num, den))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }

        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<BigUint, RationalError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalError::Malformed(whole.to_string()));
    }
    BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| RationalError::Malformed(whole.into()))
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `p`, `p/q`, `-p`, `-p/q` with decimal digits only.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((p, q)) => (parse_digits(p, text)?, parse_digits(q, text)?),
            None => (parse_digits(body, text)?, BigUint::one()),
        };
        Rational::make(neg, num, den)
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

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn make_normalizes() {
        assert_eq!(Rational::make(false, 2u32, 4u32).unwrap(), r("1/2"));
        assert_eq!(Rational::make(true, 3u32, 3u32).unwrap(), r("-1"));
        let z = Rational::make(false, 0u32, 5u32).unwrap();
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
        // -0 is still 0/1
        assert_eq!(Rational::make(true, 0u32, 7u32).unwrap(), Rational::zero());
    }

    #[test]
    fn make_rejects_zero_denominator() {
        assert_eq!(
            Rational::make(false, 1u32, 0u32),
            Err(RationalError::ZeroDenominator)
        );
    }

    #[test]
    fn compare_examples() {
        assert_eq!(r("1/2").compare(&r("2/3")), Ordering::Less);
        assert_eq!(
            Rational::ratio(4, 6).unwrap().compare(&r("2/3")),
            Ordering::Equal
        );
        assert_eq!(r("-1/3").compare(&r("-1/2")), Ordering::Greater);
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&r("1/3") + &r("1/6"), r("1/2"));
        assert_eq!(&r("2/3") * &r("3/2"), Rational::one());
        assert_eq!(
            r("1/2").checked_div(&Rational::zero()),
            Err(RationalError::DivisionByZero)
        );
        assert_eq!(r("-2/3").pow(3), r("-8/27"));
        assert_eq!(r("5/7").pow(0), Rational::one());
    }

    #[test]
    fn text_form() {
        assert_eq!(r("-3").to_string(), "-3");
        assert_eq!(r("4/3").to_string(), "4/3");
        assert_eq!(r("8/6").to_string(), "4/3");
        for bad in ["", "-", "1/", "/2", "1/0", "+1", "1.5", "--1", "1/-2"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn big_values_do_not_overflow() {
        let tiny = r("1/2").pow(200);
        let tinier = r("1/2").pow(201);
        assert!(tinier < tiny);
        assert_eq!(tiny.checked_div(&tinier).unwrap(), Rational::from(2i64));
    }

    fn small() -> impl Strategy<Value = (i64, i64)> {
        (-40i64..=40, 1i64..=40)
    }

    proptest! {
        #[test]
        fn compare_is_antisymmetric((a, b) in small(), (c, d) in small()) {
            let x = Rational::ratio(a, b).unwrap();
            let y = Rational::ratio(c, d).unwrap();
            prop_assert_eq!(x.compare(&y), y.compare(&x).reverse());
            prop_assert_eq!(x.compare(&x), Ordering::Equal);
            // independent cross-multiplication check
            prop_assert_eq!(x.compare(&y), (a * d).cmp(&(c * b)));
        }

        #[test]
        fn arithmetic_matches_cross_multiplication((a, b) in small(), (c, d) in small()) {
            let x = Rational::ratio(a, b).unwrap();
            let y = Rational::ratio(c, d).unwrap();
            let same = |v: &Rational, p: i64, q: i64| {
                v.numer() * BigInt::from(q) == BigInt::from(p) * v.denom()
            };
            prop_assert!(same(&(&x + &y), a * d + c * b, b * d));
            prop_assert!(same(&(&x - &y), a * d - c * b, b * d));
            prop_assert!(same(&(&x * &y), a * c, b * d));
            if c != 0 {
                let q = x.checked_div(&y).unwrap();
                prop_assert!(same(&q, a * d, b * c));
            }
        }

        #[test]
        fn canonical_and_round_trips((a, b) in small()) {
            let x = Rational::ratio(a, b).unwrap();
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert!(num_integer::Integer::gcd(x.numer(), x.denom()).is_one());
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
