//! Numeric back-ends shared by every series computation.
//!
//! Coefficients, power sums and closed-form bounds are generic over [`Scalar`],
//! implemented for exact rationals ([`Rational`]) and for `f64`. Any finite
//! `f64` parameter is exactly representable as a rational, so rational mode is
//! always available; float mode trades exactness for speed.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub trait Scalar:
    Clone + Debug + PartialOrd + Send + Sync + Num + Neg<Output = Self> + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact rational value, when one exists.
    fn to_rational(&self) -> Option<Rational>;

    /// Sum of `terms` together with an absolute rounding-error estimate
    /// (always zero for exact types).
    fn sum_with_error(terms: &[Self]) -> (Self, f64);

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn is_positive_value(&self) -> bool {
        *self > Self::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }

    fn sum_with_error(terms: &[Self]) -> (Self, f64) {
        // Neumaier compensated summation.
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        let mut magnitude = 0.0f64;
        for &t in terms {
            let s = sum + t;
            if sum.abs() >= t.abs() {
                comp += (sum - s) + t;
            } else {
                comp += (t - s) + sum;
            }
            sum = s;
            magnitude += t.abs();
        }
        (sum + comp, f64::EPSILON * magnitude)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn sum_with_error(terms: &[Self]) -> (Self, f64) {
        let sum = terms.iter().fold(Rational::zero(), |acc, t| acc + t);
        (sum, 0.0)
    }
}

/// Arithmetic mode for power sums and closed-form comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Rational,
    Float,
}

impl Precision {
    pub const ENV_VAR: &'static str = "RADII_PRECISION";

    /// Reads `RADII_PRECISION`; unset means rational.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => v.parse(),
            Err(_) => Ok(Precision::Rational),
        }
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rational" | "exact" => Ok(Precision::Rational),
            "float" | "f64" => Ok(Precision::Float),
            other => Err(Error::Usage(format!(
                "{}={other}: expected `rational` or `float`",
                Self::ENV_VAR
            ))),
        }
    }
}

/// Parses `"3/4"`, `"-0.25"`, `"1e-3"` or `"7"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Usage(format!("cannot parse `{s}` as a number"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// `n`-th power of a rational (n may be negative).
pub fn rational_powi(q: &Rational, n: i32) -> Rational {
    if n >= 0 {
        num_traits::pow(q.clone(), n as usize)
    } else {
        num_traits::pow(q.recip(), (-n) as usize)
    }
}

pub(crate) fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders a float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_decimals_and_fractions_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational("12").unwrap(), q(12, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let (s, err) = f64::sum_with_error(&[1e16, 1.0, -1e16]);
        assert_eq!(s, 1.0);
        assert!(err > 0.0);
    }

    #[test]
    fn precision_parsing() {
        assert_eq!("float".parse::<Precision>().unwrap(), Precision::Float);
        assert_eq!(
            "Rational".parse::<Precision>().unwrap(),
            Precision::Rational
        );
        assert!("quad".parse::<Precision>().is_err());
    }

    #[test]
    fn fmt17_is_fixed_width_scientific() {
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
    }
}
