use std::fmt;

use super::{CertifiedInterval, Log3Linear, Log3Poly, PiGraded, Rational, Ring, WithLn3};
use crate::error::{Error, Result};

/// Quotient `num / den` of two elements of ℚ[ln3], the field ℚ(ln3).
///
/// Always reduced: the common factor is removed by a polynomial gcd and the
/// denominator is monic, so a value with a polynomial form is stored as one.
#[derive(Clone, Debug)]
pub struct Log3Ratio {
    num: Log3Poly,
    den: Log3Poly,
}

impl Log3Ratio {
    pub fn new(num: Log3Poly, den: Log3Poly) -> Result<Self> {
        if den.is_zero_elem() {
            return Err(Error::Domain("zero denominator in ℚ(ln3)".into()));
        }
        if num.is_zero_elem() {
            return Ok(Self::from_poly(num));
        }
        if let Some(q) = num.div_exact(&den) {
            return Ok(Self::from_poly(q));
        }
        if let Some(d) = den.as_rational() {
            return Ok(Self::from_poly(num.scaled(&d.recip())));
        }
        let g = num.gcd(&den);
        let (num, den) = match (num.div_exact(&g), den.div_exact(&g)) {
            (Some(n), Some(d)) => (n, d),
            _ => (num, den),
        };
        if let Some(d) = den.as_rational() {
            return Ok(Self::from_poly(num.scaled(&d.recip())));
        }
        // Make the leading coefficient of the denominator 1.
        let lead = den.coeffs().last().unwrap().recip();
        Ok(Self { num: num.scaled(&lead), den: den.scaled(&lead) })
    }

    pub fn from_poly(p: Log3Poly) -> Self {
        Self { num: p, den: Log3Poly::one_elem() }
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_poly(Log3Poly::from(r))
    }

    pub fn from_linear(x: &Log3Linear) -> Self {
        Self::from_poly(Log3Poly::from(x))
    }

    pub fn num(&self) -> &Log3Poly {
        &self.num
    }

    pub fn den(&self) -> &Log3Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero_elem()
    }

    /// The element as a polynomial in ln3, when the denominator has cancelled.
    pub fn as_poly(&self) -> Option<&Log3Poly> {
        self.den.as_rational().map(|_| &self.num)
    }

    pub fn as_linear(&self) -> Option<Log3Linear> {
        self.as_poly().and_then(|p| p.to_log3_linear())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_poly().and_then(|p| p.as_rational())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.plus(&o.num), self.den.clone()).expect("nonzero denominator");
        }
        Self::new(
            self.num.times(&o.den).plus(&o.num.times(&self.den)),
            self.den.times(&o.den),
        )
        .expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.negated(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.times(&o.num), self.den.times(&o.den)).expect("nonzero denominator")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.times(&o.den), self.den.times(&o.num))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.num.scaled(r), self.den.clone()).expect("nonzero denominator")
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Exact equality by cross-multiplication in ℚ[ln3].
    pub fn equals(&self, o: &Self) -> bool {
        self.num.times(&o.den) == o.num.times(&self.den)
    }

    pub fn enclose(&self, width: &Rational) -> CertifiedInterval {
        if let Some(p) = self.as_poly() {
            return p.enclose(width);
        }
        let mut w = width / super::int(1000);
        loop {
            let n = self.num.enclose(&w);
            let d = self.den.enclose(&w);
            if !d.contains_zero() {
                let v = n.div(&d).expect("denominator enclosure excludes zero");
                if &v.width() <= width {
                    return v;
                }
            }
            w = &w / super::int(1_000_000);
        }
    }

    /// Strict sign; `None` for zero.
    pub fn signum(&self) -> Option<std::cmp::Ordering> {
        let n = self.num.signum()?;
        let d = self.den.signum().expect("nonzero denominator");
        Some(if d.is_gt() { n } else { n.reverse() })
    }

    pub fn is_positive(&self) -> bool {
        self.signum().is_some_and(|o| o.is_gt())
    }
}

impl PartialEq for Log3Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for Log3Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_rational() {
            Some(_) => write!(f, "{}", self.num),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

/// `value·(2π)^p` with `value ∈ ℚ(ln3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedRatio {
    pub value: Log3Ratio,
    pub two_pi_pow: i32,
}

impl GradedRatio {
    pub fn new(value: Log3Ratio, two_pi_pow: i32) -> Self {
        Self { value, two_pi_pow }
    }

    /// The exact `(a + b·ln3)·(2π)^p` form, when the value lies in ℚ + ℚ·ln3.
    pub fn to_pi_graded(&self) -> Option<PiGraded> {
        self.value.as_linear().map(|c| PiGraded::new(c, self.two_pi_pow))
    }

    pub fn enclose(&self, width: &Rational) -> CertifiedInterval {
        if let Some(g) = self.to_pi_graded() {
            return super::eval(&g, width);
        }
        let mut w = width / super::int(1000);
        loop {
            let v = self.value.enclose(&w).times(&super::two_pi_pow_enclosure(self.two_pi_pow, &w));
            if &v.width() <= width {
                return v;
            }
            w = &w / super::int(1_000_000);
        }
    }

    pub fn symbolic(&self) -> String {
        match self.to_pi_graded() {
            Some(g) => g.symbolic(),
            None if self.two_pi_pow == 0 => format!("{}", self.value),
            None => format!("[{}]*(2pi)^{}", self.value, self.two_pi_pow),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive()
    }
}

impl From<PiGraded> for GradedRatio {
    fn from(g: PiGraded) -> Self {
        Self { value: Log3Ratio::from_linear(&g.coeff), two_pi_pow: g.two_pi_pow }
    }
}

impl fmt::Display for GradedRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}
