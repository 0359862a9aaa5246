//! Exact scalars: big rationals, the module ℚ + ℚ·ln 3, its polynomial ring ℚ[ln 3],
//! (2π)-graded constants, and rational-endpoint enclosures.
//!
//! Every number that reaches a verdict is either exact or carried as a
//! [`CertifiedInterval`] whose width is known. Floating point never enters here.

mod enclose;
mod graded;
mod interval;
mod json;
mod log3;
mod ratio;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use enclose::{eval, ln3_enclosure, ln_enclosure, pi_enclosure, two_pi_pow_enclosure};
pub use graded::PiGraded;
pub use interval::CertifiedInterval;
pub use json::{GradedJson, ScalarJson};
pub use log3::{Log3Linear, Log3Poly};
pub use ratio::{GradedRatio, Log3Ratio};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `10^-exp` as an exact rational.
pub fn ten_pow_neg(exp: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), exp as usize))
}

pub fn pow_i(base: &Rational, exp: i32) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Parses `p/q`, `p`, or a plain decimal such as `1e-12` / `0.01`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{whole}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    let scale = exp - frac.len() as i32;
    let mut r = Rational::from_integer(n) * pow_i(&int(10), scale);
    if neg {
        r = -r;
    }
    Some(r)
}

/// Decimal rendering with `digits` fractional digits, truncated toward zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let whole = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// A commutative ring of coefficients. Implemented by [`Rational`],
/// [`Log3Poly`] and [`CertifiedInterval`].
pub trait Ring: Clone + fmt::Debug + PartialEq {
    fn zero_elem() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero_elem(&self) -> bool;

    fn one_elem() -> Self {
        Self::from_rational(&Rational::one())
    }

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }
}

/// Coefficient rings that can hold ln 3, exactly or as an enclosure of the given width.
pub trait WithLn3: Ring {
    fn ln3(width: &Rational) -> Self;

    /// Numeric enclosure of the element.
    fn enclose(&self, width: &Rational) -> CertifiedInterval;

    fn from_log3(x: &Log3Linear, width: &Rational) -> Self {
        Self::from_rational(&x.a).plus(&Self::ln3(width).scaled(&x.b))
    }
}

impl Ring for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("5/63").unwrap(), rat(5, 63));
        assert_eq!(parse_rational("-10/4").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1e-12").unwrap(), ten_pow_neg(12));
        assert_eq!(parse_rational("0.01").unwrap(), rat(1, 100));
        assert_eq!(parse_rational("-2.5").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn decimal_rendering_truncates() {
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6666");
        assert_eq!(to_decimal(&rat(-2, 3), 2), "-0.66");
        assert_eq!(to_decimal(&int(52), 0), "52");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
