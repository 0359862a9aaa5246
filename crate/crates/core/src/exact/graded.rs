use std::fmt;

use num_traits::{One, Zero};

use super::{Log3Linear, Rational};
use crate::error::{Error, Result};

/// `(a + b·ln3)·(2π)^p`.
///
/// Powers are counted in 2π rather than π so that constants such as
/// `52·(2π)³` compare equal to their printed form without factor bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiGraded {
    pub coeff: Log3Linear,
    pub two_pi_pow: i32,
}

impl PiGraded {
    pub fn new(coeff: Log3Linear, two_pi_pow: i32) -> Self {
        Self { coeff, two_pi_pow }
    }

    pub fn rational(r: Rational, two_pi_pow: i32) -> Self {
        Self { coeff: Log3Linear::rational(r), two_pi_pow }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grade(other)?;
        Ok(Self { coeff: &self.coeff + &other.coeff, two_pi_pow: self.two_pi_pow })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_grade(other)?;
        Ok(Self { coeff: &self.coeff - &other.coeff, two_pi_pow: self.two_pi_pow })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            coeff: self.coeff.checked_mul(&other.coeff)?,
            two_pi_pow: self.two_pi_pow + other.two_pi_pow,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { coeff: self.coeff.scale(r), two_pi_pow: self.two_pi_pow }
    }

    /// Division; the divisor's coefficient must be a nonzero rational.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let r = other
            .coeff
            .as_rational()
            .ok_or_else(|| Error::Domain(format!("division by irrational {other}")))?;
        Ok(Self {
            coeff: self.coeff.div_rational(r)?,
            two_pi_pow: self.two_pi_pow - other.two_pi_pow,
        })
    }

    fn check_grade(&self, other: &Self) -> Result<()> {
        // zero is homogeneous of every grade
        if self.two_pi_pow != other.two_pi_pow && !self.is_zero() && !other.is_zero() {
            return Err(Error::Domain(format!(
                "adding (2π)^{} to (2π)^{}",
                self.two_pi_pow, other.two_pi_pow
            )));
        }
        Ok(())
    }

    /// Coefficient written so that factors read naturally, e.g. `(1216/21)*(2pi)^2`.
    pub fn symbolic(&self) -> String {
        let c = &self.coeff;
        let coeff = if c.is_rational() && !c.a.is_integer() || !c.is_rational() && !c.a.is_zero() {
            format!("({c})")
        } else {
            c.to_string()
        };
        match self.two_pi_pow {
            0 => coeff,
            1 => format!("{coeff}*(2pi)"),
            p => format!("{coeff}*(2pi)^{p}"),
        }
    }

    /// Recognizes a rational multiple of π, e.g. `16·(2π)` → `Some("32*pi")`.
    pub fn as_pi_multiple(&self) -> Option<String> {
        if self.two_pi_pow != 1 {
            return None;
        }
        let r = self.coeff.as_rational()?;
        let twice = r * Rational::from_integer(2.into());
        if twice.is_integer() {
            Some(if twice.is_one() { "pi".into() } else { format!("{twice}*pi") })
        } else if !twice.is_zero() {
            Some(format!("({twice})*pi"))
        } else {
            None
        }
    }
}

impl fmt::Display for PiGraded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn grading_rules() {
        let a = PiGraded::rational(int(52), 3);
        let b = PiGraded::rational(int(2), 3);
        assert_eq!(a.add(&b).unwrap(), PiGraded::rational(int(54), 3));
        assert!(a.add(&PiGraded::rational(int(1), 2)).is_err());
        let prod = a.mul(&PiGraded::rational(rat(1, 2), -2)).unwrap();
        assert_eq!(prod, PiGraded::rational(int(26), 1));
    }

    #[test]
    fn equality_needs_equal_powers() {
        assert_ne!(PiGraded::rational(int(1), 1), PiGraded::rational(int(1), 2));
    }

    #[test]
    fn symbolic_forms() {
        assert_eq!(PiGraded::rational(rat(1216, 21), 2).symbolic(), "(1216/21)*(2pi)^2");
        assert_eq!(PiGraded::rational(int(52), 3).symbolic(), "52*(2pi)^3");
        assert_eq!(PiGraded::rational(int(16), 1).as_pi_multiple().unwrap(), "32*pi");
        assert_eq!(PiGraded::rational(int(3), -1).symbolic(), "3*(2pi)^-1");
    }
}
