//! The three ansatz cases and their topological constants.

mod closed_forms;
mod constants;

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, parse_rational, Log3Ratio, Rational};

pub(crate) use constants::reduced_polynomial;
pub use closed_forms::{closed_form_c_tilde, closed_form_coupling, closed_form_volume};
pub use constants::{
    ak_bk, c_tilde, coupling_ratio, lambda_constant, pseudo_constraint, reduced_coupling, volume_constant,
    AkBk, ConstantSet,
};

/// Choice of traceless twist for the test line bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// Twist by the fiber-dependent form, with integer class data `(m1, m2)`.
    General { m1: i64, m2: i64 },
    /// Alternating sum of the base factors; `k` even.
    EvenAlternating,
    /// `(k − 1)` times the first factor minus the rest; `k` odd.
    OddWeighted,
}

impl Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Case::General { .. } => "general",
            Case::EvenAlternating => "even",
            Case::OddWeighted => "odd",
        }
    }
}

/// A coupled-equation problem on `X_k`. `α₀` is never an input; it is derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub case: Case,
    pub k: u32,
    pub alpha1: Rational,
}

impl Scenario {
    pub fn new(case: Case, k: u32, alpha1: Rational) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidScenario(m));
        if !alpha1.is_positive() {
            return bad(format!("alpha1 must be positive, got {alpha1}"));
        }
        match case {
            Case::General { m1, m2 } => {
                if k < 1 {
                    return bad("general case needs k >= 1".into());
                }
                if m1 == 0 && m2 == 0 {
                    return bad("general case needs (m1, m2) != (0, 0)".into());
                }
            }
            Case::EvenAlternating => {
                if k < 2 || k % 2 != 0 {
                    return bad(format!("even case needs even k >= 2, got {k}"));
                }
            }
            Case::OddWeighted => {
                if k < 3 || k % 2 != 1 {
                    return bad(format!("odd case needs odd k >= 3, got {k}"));
                }
            }
        }
        Ok(Self { case, k, alpha1 })
    }

    pub fn general(k: u32, m1: i64, m2: i64) -> Result<Self> {
        Self::new(Case::General { m1, m2 }, k, int(1))
    }

    pub fn even(k: u32) -> Result<Self> {
        Self::new(Case::EvenAlternating, k, int(1))
    }

    pub fn odd(k: u32) -> Result<Self> {
        Self::new(Case::OddWeighted, k, int(1))
    }

    pub fn with_alpha1(mut self, alpha1: Rational) -> Result<Self> {
        self.alpha1 = alpha1;
        Self::new(self.case, self.k, self.alpha1)
    }

    /// Coefficients `(d_top, d_low)` of the reduced Chern-character density
    /// `d_top·u^k − d_low·u^(k−2)`, up to the factor `(k+1)!·φ/(2π)²`.
    pub fn density(&self) -> (Log3Ratio, Log3Ratio) {
        let k = self.k as i64;
        match self.case {
            Case::General { .. } => {
                let ab = ak_bk(self.k, self.m1(), self.m2()).expect("validated class data");
                (ab.a.square(), ab.b.square())
            }
            Case::EvenAlternating => (Log3Ratio::rational(int(1)), Log3Ratio::rational(Rational::new(1.into(), (k + 1).into()))),
            Case::OddWeighted => (
                Log3Ratio::rational(int(1)),
                Log3Ratio::rational(Rational::new((k - 1).into(), (k + 1).into())),
            ),
        }
    }

    /// Overall positive factor pulled out of the reduced polynomial: `b_k²` in the
    /// general case, 1 otherwise. Zero signals a degenerate general scenario.
    pub fn weight(&self) -> Log3Ratio {
        match self.case {
            Case::General { .. } => self.density().1,
            _ => Log3Ratio::rational(int(1)),
        }
    }

    /// Coefficient of `u^(k−2)` in the reduced polynomial, in units of `α₁·weight/(2π)²`.
    pub fn low_coefficient(&self) -> Rational {
        let k = self.k as i64;
        match self.case {
            Case::General { .. } => int(2 * (k + 1) * k),
            Case::EvenAlternating => int(2 * k),
            Case::OddWeighted => int(2 * k * (k - 1)),
        }
    }

    pub fn m1(&self) -> i64 {
        match self.case {
            Case::General { m1, .. } => m1,
            _ => 0,
        }
    }

    pub fn m2(&self) -> i64 {
        match self.case {
            Case::General { m2, .. } => m2,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> ScenarioJson {
        ScenarioJson {
            case: self.case.tag().into(),
            k: self.k,
            m1: self.m1(),
            m2: self.m2(),
            alpha1: self.alpha1.to_string(),
        }
    }

    pub fn from_json(j: &ScenarioJson) -> Result<Self> {
        let alpha1 = parse_rational(&j.alpha1)?;
        let case = match j.case.as_str() {
            "general" => Case::General { m1: j.m1, m2: j.m2 },
            "even" => Case::EvenAlternating,
            "odd" => Case::OddWeighted,
            other => return Err(Error::Parse(format!("unknown case {other:?}"))),
        };
        Self::new(case, j.k, alpha1)
    }

    /// Sort key giving a stable order for reports and sweeps.
    pub fn sort_key(&self) -> (u8, u32, i64, i64) {
        let c = match self.case {
            Case::General { .. } => 0,
            Case::EvenAlternating => 1,
            Case::OddWeighted => 2,
        };
        (c, self.k, self.m1(), self.m2())
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.case {
            Case::General { m1, m2 } => write!(f, "general k={} (m1,m2)=({m1},{m2})", self.k)?,
            _ => write!(f, "{} k={}", self.case.tag(), self.k)?,
        }
        if self.alpha1 != int(1) {
            write!(f, " alpha1={}", self.alpha1)?;
        }
        Ok(())
    }
}

/// `{"case":"general|even|odd","k":n,"m1":n,"m2":n,"alpha1":"p/q"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioJson {
    pub case: String,
    pub k: u32,
    #[serde(default)]
    pub m1: i64,
    #[serde(default)]
    pub m2: i64,
    #[serde(default = "one_string")]
    pub alpha1: String,
}

fn one_string() -> String {
    "1".into()
}
