use serde::{Deserialize, Serialize};

use super::{parse_rational, to_decimal, CertifiedInterval, GradedRatio, Log3Linear, Log3Poly, PiGraded, Rational};
use crate::error::{Error, Result};

/// Wire form of the exact scalar family.
///
/// `{"rat":"p/q"}` | `{"a":"p/q","b":"p/q"}` | `{"coeff":{..},"two_pi_pow":n}` | `{"lo":"p/q","hi":"p/q"}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Rat { rat: String },
    Log3 { a: String, b: String },
    Graded { coeff: Box<ScalarJson>, two_pi_pow: i32 },
    Interval { lo: String, hi: String },
}

impl From<&Rational> for ScalarJson {
    fn from(r: &Rational) -> Self {
        ScalarJson::Rat { rat: r.to_string() }
    }
}

impl From<&Log3Linear> for ScalarJson {
    fn from(x: &Log3Linear) -> Self {
        ScalarJson::Log3 { a: x.a.to_string(), b: x.b.to_string() }
    }
}

impl From<&PiGraded> for ScalarJson {
    fn from(x: &PiGraded) -> Self {
        ScalarJson::Graded { coeff: Box::new((&x.coeff).into()), two_pi_pow: x.two_pi_pow }
    }
}

impl From<&CertifiedInterval> for ScalarJson {
    fn from(x: &CertifiedInterval) -> Self {
        ScalarJson::Interval { lo: x.lo.to_string(), hi: x.hi.to_string() }
    }
}

impl TryFrom<&Log3Poly> for ScalarJson {
    type Error = Error;
    fn try_from(x: &Log3Poly) -> Result<Self> {
        if let Some(r) = x.as_rational() {
            return Ok((&r).into());
        }
        x.to_log3_linear()
            .map(|l| (&l).into())
            .ok_or_else(|| Error::Domain(format!("{x} has no wire form (degree > 1 in ln3)")))
    }
}

impl ScalarJson {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            ScalarJson::Rat { rat } => parse_rational(rat),
            other => Err(Error::Parse(format!("expected rational, got {other:?}"))),
        }
    }

    pub fn to_log3(&self) -> Result<Log3Linear> {
        match self {
            ScalarJson::Rat { rat } => Ok(Log3Linear::rational(parse_rational(rat)?)),
            ScalarJson::Log3 { a, b } => Ok(Log3Linear::new(parse_rational(a)?, parse_rational(b)?)),
            other => Err(Error::Parse(format!("expected a + b·ln3, got {other:?}"))),
        }
    }

    pub fn to_log3_poly(&self) -> Result<Log3Poly> {
        Ok(Log3Poly::from(&self.to_log3()?))
    }

    pub fn to_pi_graded(&self) -> Result<PiGraded> {
        match self {
            ScalarJson::Graded { coeff, two_pi_pow } => Ok(PiGraded::new(coeff.to_log3()?, *two_pi_pow)),
            other => Ok(PiGraded::new(other.to_log3()?, 0)),
        }
    }

    pub fn to_interval(&self) -> Result<CertifiedInterval> {
        match self {
            ScalarJson::Interval { lo, hi } => CertifiedInterval::new(parse_rational(lo)?, parse_rational(hi)?),
            ScalarJson::Rat { rat } => Ok(CertifiedInterval::point(parse_rational(rat)?)),
            other => Err(Error::Parse(format!("expected interval, got {other:?}"))),
        }
    }
}

/// A `(2π)`-graded value on the wire: its symbolic form, the exact scalar when it lies
/// in ℚ + ℚ·ln3, and always a certified enclosure with a decimal reading of its midpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedJson {
    pub symbolic: String,
    pub exact: Option<ScalarJson>,
    pub enclosure: ScalarJson,
    pub decimal: String,
}

impl GradedJson {
    pub fn new(g: &GradedRatio, width: &Rational) -> Self {
        let iv = g.enclose(width);
        Self {
            symbolic: g.symbolic(),
            exact: g.to_pi_graded().map(|p| (&p).into()),
            enclosure: (&iv).into(),
            decimal: to_decimal(&iv.mid(), 15),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn wire_shapes() {
        let g = PiGraded::new(Log3Linear::new(rat(-12, 1), int(13)), 0);
        let s = serde_json::to_string(&ScalarJson::from(&g)).unwrap();
        assert_eq!(s, r#"{"coeff":{"a":"-12","b":"13"},"two_pi_pow":0}"#);
        let i = CertifiedInterval::new(rat(1, 3), rat(1, 2)).unwrap();
        assert_eq!(
            serde_json::to_string(&ScalarJson::from(&i)).unwrap(),
            r#"{"lo":"1/3","hi":"1/2"}"#
        );
        assert_eq!(serde_json::to_string(&ScalarJson::from(&rat(5, 63))).unwrap(), r#"{"rat":"5/63"}"#);
    }

    #[test]
    fn graded_json_carries_enclosure() {
        let g = GradedRatio::from(PiGraded::rational(int(16), 1));
        let j = GradedJson::new(&g, &crate::exact::ten_pow_neg(20));
        assert_eq!(j.symbolic, "16*(2pi)");
        assert_eq!(j.exact.unwrap().to_pi_graded().unwrap(), PiGraded::rational(int(16), 1));
        let iv = j.enclosure.to_interval().unwrap();
        assert!(iv.lo > parse_rational("100.5309649148733").unwrap() && iv.hi < parse_rational("100.5309649148734").unwrap());
        assert!(j.decimal.starts_with("100.530964914873"));
    }

    proptest! {
        #[test]
        fn graded_round_trip(a in -10_000i64..10_000, ad in 1i64..500, b in -10_000i64..10_000,
                             bd in 1i64..500, p in -6i32..6) {
            let g = PiGraded::new(Log3Linear::new(rat(a, ad), rat(b, bd)), p);
            let text = serde_json::to_string(&ScalarJson::from(&g)).unwrap();
            let back: ScalarJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.to_pi_graded().unwrap(), g);
        }

        #[test]
        fn rational_arithmetic_is_exact(p in -1_000_000i64..1_000_000, q in 1i64..100_000,
                                        r in -1_000_000i64..1_000_000, s in 1i64..100_000) {
            let x = rat(p, q);
            let y = rat(r, s);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
