use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Ring, WithLn3};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints.
///
/// All arithmetic is exact on the endpoints, so results are true enclosures.
/// [`CertifiedInterval::round_out`] trades tightness for smaller denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CertifiedInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl CertifiedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Domain(format!("reciprocal of {self} which contains 0")));
        }
        Ok(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.times(&other.recip()?))
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let n = n as u32;
        if n % 2 == 0 && self.contains_zero() {
            let m = self.lo.abs().max(self.hi.abs());
            return Ok(Self { lo: Rational::zero(), hi: num_traits::pow(m, n as usize) });
        }
        let a = num_traits::pow(self.lo.clone(), n as usize);
        let b = num_traits::pow(self.hi.clone(), n as usize);
        Ok(if a <= b { Self { lo: a, hi: b } } else { Self { lo: b, hi: a } })
    }

    pub fn sqr(&self) -> Self {
        self.powi(2).expect("non-negative power")
    }

    /// Widens to endpoints with denominator `2^bits`.
    pub fn round_out(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let down = |x: &Rational| {
            let n = (x.numer() * &scale).div_floor(x.denom());
            Rational::new(n, scale.clone())
        };
        let up = |x: &Rational| {
            let n = (x.numer() * &scale).div_ceil(x.denom());
            Rational::new(n, scale.clone())
        };
        Self { lo: down(&self.lo), hi: up(&self.hi) }
    }

    /// Endpoints as decimals with `digits` fractional digits, rounded outward so the
    /// printed interval still contains this one.
    pub fn decimal_bounds(&self, digits: usize) -> (String, String) {
        let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        (super::to_decimal(&lo, digits), super::to_decimal(&hi, digits))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (super::to_f64(&self.lo), super::to_f64(&self.hi))
    }
}

impl fmt::Display for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal_bounds(12);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Ring for CertifiedInterval {
    fn zero_elem() -> Self {
        Self::point(Rational::zero())
    }
    fn from_rational(r: &Rational) -> Self {
        Self::point(r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
    fn minus(&self, o: &Self) -> Self {
        Self { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
    fn times(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self { lo, hi }
    }
    fn negated(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }
    fn is_zero_elem(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
    fn scaled(&self, r: &Rational) -> Self {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }
}

impl WithLn3 for CertifiedInterval {
    fn ln3(width: &Rational) -> Self {
        super::ln3_enclosure(width)
    }
    fn enclose(&self, _width: &Rational) -> CertifiedInterval {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn iv(a: i64, b: i64) -> CertifiedInterval {
        CertifiedInterval::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn products_take_extreme_corners() {
        assert_eq!(iv(-2, 3).times(&iv(-1, 4)), iv(-8, 12));
        assert_eq!(iv(-2, 3).minus(&iv(-1, 4)), iv(-6, 4));
    }

    #[test]
    fn decimals_round_outward() {
        let x = CertifiedInterval::new(rat(-1, 3), rat(2, 3)).unwrap();
        assert_eq!(x.decimal_bounds(3), ("-0.334".to_string(), "0.667".to_string()));
        assert_eq!(x.to_string(), "[-0.333333333334, 0.666666666667]");
    }

    #[test]
    fn reciprocal_rejects_zero() {
        assert!(iv(-1, 1).recip().is_err());
        assert_eq!(iv(2, 4).recip().unwrap(), CertifiedInterval::new(rat(1, 4), rat(1, 2)).unwrap());
    }

    #[test]
    fn even_powers_of_straddling_interval() {
        assert_eq!(iv(-3, 2).powi(2).unwrap(), iv(0, 9));
        assert_eq!(iv(-3, 2).powi(3).unwrap(), iv(-27, 8));
    }

    #[test]
    fn round_out_encloses() {
        let x = CertifiedInterval::new(rat(1, 3), rat(2, 3)).unwrap();
        let r = x.round_out(10);
        assert!(r.contains_interval(&x));
        assert!(r.width() - x.width() <= rat(2, 1024));
    }

    #[test]
    fn empty_interval_rejected() {
        assert!(CertifiedInterval::new(int(1), int(0)).is_err());
    }
}
