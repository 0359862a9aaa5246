use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{CertifiedInterval, Rational, Ring, WithLn3};
use crate::error::{Error, Result};

/// `a + b·ln 3` with rational `a`, `b`.
///
/// 1 and ln 3 are linearly independent over ℚ, so equality is componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Log3Linear {
    pub a: Rational,
    pub b: Rational,
}

impl Log3Linear {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero() }
    }

    pub fn ln3() -> Self {
        Self { a: Rational::zero(), b: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { a: &self.a * r, b: &self.b * r }
    }

    /// Product; defined unless both factors carry a ln 3 component.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        match (self.as_rational(), other.as_rational()) {
            (Some(r), _) => Ok(other.scale(r)),
            (_, Some(r)) => Ok(self.scale(r)),
            _ => Err(Error::Domain(format!(
                "({self})·({other}) leaves the module ℚ + ℚ·ln3"
            ))),
        }
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self.scale(&r.recip()))
    }

    pub fn enclose(&self, width: &Rational) -> CertifiedInterval {
        Log3Poly::from(self).enclose(width)
    }

    /// Strict sign, decided by enclosure refinement. `None` only for zero.
    pub fn signum(&self) -> Option<std::cmp::Ordering> {
        Log3Poly::from(self).signum()
    }
}

impl fmt::Display for Log3Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*ln3", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*ln3", self.a, -&self.b)
                } else {
                    write!(f, "{} + {}*ln3", self.a, self.b)
                }
            }
        }
    }
}

impl Add for &Log3Linear {
    type Output = Log3Linear;
    fn add(self, o: &Log3Linear) -> Log3Linear {
        Log3Linear { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &Log3Linear {
    type Output = Log3Linear;
    fn sub(self, o: &Log3Linear) -> Log3Linear {
        Log3Linear { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Neg for &Log3Linear {
    type Output = Log3Linear;
    fn neg(self) -> Log3Linear {
        Log3Linear { a: -&self.a, b: -&self.b }
    }
}

/// Polynomials in ln 3 with rational coefficients, `c₀ + c₁·ln3 + c₂·ln3² + …`.
///
/// ln 3 is transcendental, so ℚ[ln 3] is a polynomial ring and equality is
/// coefficientwise. Coefficients are stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Log3Poly(Vec<Rational>);

impl Log3Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// Degree in ln 3; zero is reported as degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn to_log3_linear(&self) -> Option<Log3Linear> {
        match self.0.len() {
            0 => Some(Log3Linear::zero()),
            1 => Some(Log3Linear::rational(self.0[0].clone())),
            2 => Some(Log3Linear::new(self.0[0].clone(), self.0[1].clone())),
            _ => None,
        }
    }

    /// Polynomial long division in ℚ[ln3]: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.0.is_empty() {
            return Err(Error::Domain("division by zero in ℚ[ln3]".into()));
        }
        let dd = d.0.len() - 1;
        let lead = d.0.last().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap() / lead;
            for (i, x) in d.0.iter().enumerate() {
                r[shift + i] -= &c * x;
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic greatest common divisor in ℚ[ln3].
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.0.is_empty() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.0.last() {
            Some(lead) => {
                let inv = lead.recip();
                Self(a.0.iter().map(|c| c * &inv).collect())
            }
            None => a,
        }
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d) {
            Ok((q, r)) if r.0.is_empty() => Some(q),
            _ => None,
        }
    }

    /// Strict sign via enclosures of shrinking width. Zero gives `None`.
    pub fn signum(&self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        if self.0.is_empty() {
            return None;
        }
        let mut exp = 16;
        loop {
            let iv = self.enclose(&super::ten_pow_neg(exp));
            if iv.lo.is_positive() {
                return Some(Ordering::Greater);
            }
            if iv.hi.is_negative() {
                return Some(Ordering::Less);
            }
            // A nonzero element of ℚ[ln3] is bounded away from zero, so this terminates.
            exp *= 2;
        }
    }
}

impl From<&Log3Linear> for Log3Poly {
    fn from(x: &Log3Linear) -> Self {
        Self::new(vec![x.a.clone(), x.b.clone()])
    }
}

impl From<Rational> for Log3Poly {
    fn from(r: Rational) -> Self {
        Self::new(vec![r])
    }
}

impl fmt::Display for Log3Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.to_log3_linear() {
            return write!(f, "{l}");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*ln3")?,
                _ => write!(f, "({c})*ln3^{i}")?,
            }
        }
        Ok(())
    }
}

impl Ring for Log3Poly {
    fn zero_elem() -> Self {
        Self(Vec::new())
    }
    fn from_rational(r: &Rational) -> Self {
        Self::new(vec![r.clone()])
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::zero_elem();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in other.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }
    fn negated(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }
    fn is_zero_elem(&self) -> bool {
        self.0.is_empty()
    }
}

impl WithLn3 for Log3Poly {
    fn ln3(_width: &Rational) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    fn enclose(&self, width: &Rational) -> CertifiedInterval {
        if let Some(r) = self.as_rational() {
            return CertifiedInterval::point(r);
        }
        // Horner in interval arithmetic; tighten ln3 until the requested width is met.
        let mut w = width / super::int(1000);
        loop {
            let l = super::ln3_enclosure(&w);
            let mut acc = CertifiedInterval::point(Rational::zero());
            for c in self.0.iter().rev() {
                acc = acc.times(&l).plus(&CertifiedInterval::point(c.clone()));
            }
            if &acc.width() <= width {
                return acc;
            }
            w = &w / super::int(1_000_000);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn exact_division() {
        // (2 + 3L)² / (2 + 3L) = 2 + 3L
        let d = Log3Poly::new(vec![int(2), int(3)]);
        let sq = d.times(&d);
        assert_eq!(sq.div_exact(&d).unwrap(), d);
        assert!(d.div_exact(&sq).is_none());
        let (q, r) = Log3Poly::new(vec![int(1), int(0), int(1)]).div_rem(&Log3Poly::new(vec![int(1), int(1)])).unwrap();
        assert_eq!(q, Log3Poly::new(vec![int(-1), int(1)]));
        assert_eq!(r, Log3Poly::new(vec![int(2)]));
    }

    #[test]
    fn equality_is_componentwise() {
        let x = Log3Linear::new(rat(1, 2), int(3));
        assert_eq!(x, Log3Linear::new(rat(2, 4), int(3)));
        assert_ne!(x, Log3Linear::new(rat(1, 2), int(2)));
    }

    #[test]
    fn product_with_two_irrational_factors_is_rejected() {
        let x = Log3Linear::new(int(1), int(1));
        assert!(x.checked_mul(&x).is_err());
        let y = Log3Linear::rational(int(2));
        assert_eq!(x.checked_mul(&y).unwrap(), Log3Linear::new(int(2), int(2)));
    }

    #[test]
    fn poly_ring_squares() {
        // (1 + L)^2 = 1 + 2L + L^2
        let p = Log3Poly::new(vec![int(1), int(1)]);
        assert_eq!(p.times(&p), Log3Poly::new(vec![int(1), int(2), int(1)]));
        assert_eq!(p.minus(&p), Log3Poly::zero_elem());
    }

    #[test]
    fn signum_of_near_cancellation() {
        // 13 ln3 - 12 ≈ 2.28 > 0, 12 - 11 ln3 ≈ -0.085 < 0
        use std::cmp::Ordering::*;
        assert_eq!(Log3Linear::new(int(-12), int(13)).signum(), Some(Greater));
        assert_eq!(Log3Linear::new(int(12), int(-11)).signum(), Some(Less));
        assert_eq!(Log3Linear::zero().signum(), None);
    }

    #[test]
    fn display() {
        assert_eq!(Log3Linear::new(int(3), int(-3)).to_string(), "3 - 3*ln3");
        assert_eq!(Log3Linear::new(int(0), int(2)).to_string(), "2*ln3");
        assert_eq!(Log3Linear::rational(rat(5, 63)).to_string(), "5/63");
    }
}
