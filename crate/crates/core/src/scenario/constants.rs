use num_traits::One;

use super::{Case, Scenario};
use crate::error::{Error, Result};
use crate::exact::{
    factorial, int, CertifiedInterval, GradedJson, GradedRatio, Log3Linear, Log3Poly, Log3Ratio, PiGraded, Rational, Ring,
};
use crate::poly::{compute_r, moment_integral, LaurentPoly, SignOnDomain};

fn three_pow_minus_one(n: u32) -> Rational {
    Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(3), n as usize) - 1)
}

/// Total volume `C_k = k!·(3^(k+1) − 1)·(2π)^(k+1)`.
pub fn volume_constant(k: u32) -> PiGraded {
    let c = Rational::from_integer(factorial(k)) * three_pow_minus_one(k + 1);
    PiGraded::rational(c, k as i32 + 1)
}

/// Class data of the general case: `a_k = (m₁ + k·m₂·ln3)/(2 + 3k·ln3)`,
/// `b_k = (2m₂ − 3m₁)/(2 + 3k·ln3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AkBk {
    pub a: Log3Ratio,
    pub b: Log3Ratio,
}

impl AkBk {
    pub fn enclose(&self, width: &Rational) -> (CertifiedInterval, CertifiedInterval) {
        (self.a.enclose(width), self.b.enclose(width))
    }
}

pub fn ak_bk(k: u32, m1: i64, m2: i64) -> Result<AkBk> {
    if m1 == 0 && m2 == 0 {
        return Err(Error::InvalidScenario("(m1, m2) = (0, 0)".into()));
    }
    let den = Log3Poly::from(&Log3Linear::new(int(2), int(3 * k as i64)));
    let a = Log3Poly::from(&Log3Linear::new(int(m1), int(k as i64 * m2)));
    let b = Log3Poly::from(int(2 * m2 - 3 * m1));
    Ok(AkBk { a: Log3Ratio::new(a, den.clone())?, b: Log3Ratio::new(b, den)? })
}

/// HYM constant: `(k+1)/(2π)` for the alternating and weighted twists,
/// `(k+1)·a_k/(2π)` for the general one.
pub fn lambda_constant(s: &Scenario) -> GradedRatio {
    let k1 = int(s.k as i64 + 1);
    match s.case {
        Case::General { m1, m2 } => {
            let ab = ak_bk(s.k, m1, m2).expect("validated class data");
            GradedRatio::new(ab.a.scale(&k1), -1)
        }
        _ => GradedRatio::new(Log3Ratio::rational(k1), -1),
    }
}

/// `2(k+1)²k / (3^(k+1) − 1)`.
fn c_tilde_prefactor(k: u32) -> Rational {
    let k = k as i64;
    int(2 * (k + 1) * (k + 1) * k) / three_pow_minus_one(k as u32 + 1)
}

/// `C̃_k / α₁` without the `(2π)^-2` grade, by integrating the reduced density.
fn c_tilde_value(s: &Scenario) -> Log3Ratio {
    let (top, low) = s.density();
    let k = s.k as i32;
    let int_top = LaurentPoly::monomial(k, Rational::one()).expect("k >= 1").integral();
    let int_low = LaurentPoly::monomial(k - 2, Rational::one()).expect("k >= 1").integral();
    let v = top
        .mul(&Log3Ratio::from_linear(&int_top))
        .sub(&low.mul(&Log3Ratio::from_linear(&int_low)));
    v.scale(&c_tilde_prefactor(s.k))
}

/// Topological constant `C̃_k` (including the factor `α₁`), from the integral of
/// the reduced `F∧F∧ω^(k−1)` density over `[0, 2]`.
pub fn c_tilde(s: &Scenario) -> GradedRatio {
    GradedRatio::new(c_tilde_value(s).scale(&s.alpha1), -2)
}

/// `(k+1) / (2(3^(k+1) − 1))`: the `u^k` coefficient contributed per unit of
/// `α₀ / (α₁·weight·(2π)^(k−1))`.
fn coupling_slope(k: u32) -> Rational {
    int(k as i64 + 1) / (int(2) * three_pow_minus_one(k + 1))
}

/// The reduced polynomial `q` with `Q = α₁·weight·(2π)^-2·q`, as a function of the
/// reduced coupling `x = α₀ / (α₁·weight·(2π)^(k−1))`.
pub(crate) fn reduced_polynomial(s: &Scenario, x: &Log3Poly) -> Result<LaurentPoly<Log3Poly>> {
    let weight = s.weight();
    if weight.is_zero() {
        return Err(Error::Domain(format!("{s}: b_k = 0, the twist is trivial")));
    }
    let k = s.k as i64;
    let (d_top, _) = s.density();
    // α₀(k+1)!/(2C_k) − 2α₁(k+1)k·d_top/(2π)² + C̃_k, divided by α₁·weight/(2π)².
    let fixed = c_tilde_value(s)
        .sub(&d_top.scale(&int(2 * (k + 1) * k)))
        .div(&weight)?;
    let fixed = fixed
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::Domain(format!("{s}: reduced u^k coefficient is not polynomial in ln3")))?;
    let top = x.scaled(&coupling_slope(s.k)).plus(&fixed);
    let low = Log3Poly::from(s.low_coefficient());
    LaurentPoly::from_terms([(s.k as i32, top), (s.k as i32 - 2, low)])
}

/// Reduced coupling `x` making `∫₀²(1 − t)q(t)dt` vanish (the `φ(2) = 0` condition).
///
/// The obstruction is affine in `x` with slope `coupling_slope·M_k`, where
/// `M_k = ∫₀²(1 − t)(1 + t)^k dt < 0` for `k >= 1`.
pub fn reduced_coupling(s: &Scenario) -> Result<Log3Linear> {
    let q0 = reduced_polynomial(s, &Log3Poly::zero_elem())?;
    let at_zero = q0.weighted_integral_in(&Rational::one());
    let m_k = moment_integral(s.k as i32)?;
    let slope = m_k.as_rational().expect("rational for k >= 0") * coupling_slope(s.k);
    let x = at_zero.scaled(&(-slope.recip()));
    x.to_log3_linear()
        .ok_or_else(|| Error::Domain(format!("{s}: coupling leaves ℚ + ℚ·ln3")))
}

/// `α₀/α₁` forced by the obstruction, whether or not the resulting polynomial is positive.
pub fn pseudo_constraint(s: &Scenario) -> Result<GradedRatio> {
    let x = reduced_coupling(s)?;
    Ok(GradedRatio::new(
        s.weight().mul(&Log3Ratio::from_linear(&x)),
        s.k as i32 - 1,
    ))
}

/// `α₀/α₁` for a solvable scenario; `NotSolvable` when the reduced polynomial at the
/// constraint is not positive on the whole domain.
pub fn coupling_ratio(s: &Scenario) -> Result<GradedRatio> {
    let ratio = pseudo_constraint(s)?;
    let x = Log3Poly::from(&reduced_coupling(s)?);
    let cert = reduced_polynomial(s, &x)?.sign_on_domain()?;
    if !cert.is_positive() || !ratio.is_positive() {
        return Err(Error::NotSolvable(format!("{s}: reduced polynomial is not positive on [0, 2]")));
    }
    Ok(ratio)
}

/// Every constant attached to a scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantSet {
    pub c_k: PiGraded,
    pub lambda: GradedRatio,
    pub ab: Option<AkBk>,
    pub c_tilde: GradedRatio,
    pub r_k: Log3Linear,
    /// `α₀/α₁` from the obstruction; `None` for a trivial general twist (`b_k = 0`).
    pub constraint: Option<GradedRatio>,
}

impl ConstantSet {
    pub fn compute(s: &Scenario) -> Result<Self> {
        let ab = match s.case {
            Case::General { m1, m2 } => Some(ak_bk(s.k, m1, m2)?),
            _ => None,
        };
        let constraint = match pseudo_constraint(s) {
            Ok(c) => Some(c),
            Err(Error::Domain(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            c_k: volume_constant(s.k),
            lambda: lambda_constant(s),
            ab,
            c_tilde: c_tilde(s),
            r_k: compute_r(s.k)?,
            constraint,
        })
    }

    /// Scenario and constants on the wire. Recomputing from the embedded scenario
    /// reproduces this value exactly.
    pub fn to_json(&self, s: &Scenario, width: &Rational) -> serde_json::Value {
        let g = |x: &GradedRatio| GradedJson::new(x, width);
        let ab = self.ab.as_ref().map(|ab| {
            serde_json::json!({
                "a_k": g(&GradedRatio::new(ab.a.clone(), 0)),
                "b_k": g(&GradedRatio::new(ab.b.clone(), 0)),
            })
        });
        serde_json::json!({
            "scenario": s.to_json(),
            "C_k": g(&self.c_k.clone().into()),
            "lambda": g(&self.lambda),
            "C_tilde": g(&self.c_tilde),
            "R_k": g(&PiGraded::new(self.r_k.clone(), 0).into()),
            "class_data": ab,
            "alpha0_over_alpha1": self.constraint.as_ref().map(g),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rat, ten_pow_neg};

    fn approx(iv: &CertifiedInterval, lo: &str, hi: &str) -> bool {
        iv.lo > parse_rational(lo).unwrap() && iv.hi < parse_rational(hi).unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(volume_constant(1), PiGraded::rational(int(8), 2));
        assert_eq!(volume_constant(2), PiGraded::rational(int(52), 3));
        assert_eq!(volume_constant(3), PiGraded::rational(int(480), 4));
        assert_eq!(volume_constant(4), PiGraded::rational(int(5808), 5));
    }

    #[test]
    fn class_data() {
        let ab = ak_bk(1, 2, 3).unwrap();
        assert_eq!(ab.a.as_rational(), Some(int(1)));
        assert_eq!(ab.b.as_rational(), Some(int(0)));
        let w = ten_pow_neg(12);
        let (a, b) = ak_bk(1, 0, 1).unwrap().enclose(&w);
        assert!(approx(&a, "0.20744", "0.20746"));
        assert!(approx(&b, "0.37765", "0.37767"));
        let (a, b) = ak_bk(2, 1, 0).unwrap().enclose(&w);
        assert!(approx(&a, "0.11639", "0.11640"));
        assert!(approx(&b, "-0.34918", "-0.34917"));
        assert!(ak_bk(2, 0, 0).is_err());
    }

    #[test]
    fn class_data_is_linear() {
        for c in [2i64, -3, 7] {
            let base = ak_bk(3, 2, -1).unwrap();
            let scaled = ak_bk(3, 2 * c, -c).unwrap();
            assert_eq!(scaled.a, base.a.scale(&int(c)));
            assert_eq!(scaled.b, base.b.scale(&int(c)));
        }
    }

    #[test]
    fn lambdas() {
        assert_eq!(lambda_constant(&Scenario::even(2).unwrap()).to_pi_graded().unwrap(), PiGraded::rational(int(3), -1));
        assert_eq!(lambda_constant(&Scenario::odd(3).unwrap()).to_pi_graded().unwrap(), PiGraded::rational(int(4), -1));
        let l = lambda_constant(&Scenario::general(1, 0, 1).unwrap()).enclose(&ten_pow_neg(12));
        assert!(approx(&l, "0.06602", "0.06604"));
    }

    #[test]
    fn c_tilde_values() {
        let g = |s: Scenario| c_tilde(&s).to_pi_graded().unwrap();
        assert_eq!(g(Scenario::even(2).unwrap()), PiGraded::rational(rat(144, 13), -2));
        assert_eq!(g(Scenario::odd(3).unwrap()), PiGraded::rational(rat(108, 5), -2));
        assert_eq!(g(Scenario::even(4).unwrap()), PiGraded::rational(rat(14000, 363), -2));
        let s = Scenario::odd(3).unwrap().with_alpha1(rat(1, 2)).unwrap();
        assert_eq!(g(s), PiGraded::rational(rat(54, 5), -2));
    }

    #[test]
    fn constraints() {
        let g = |s: Scenario| coupling_ratio(&s).unwrap().to_pi_graded().unwrap();
        assert_eq!(g(Scenario::even(2).unwrap()), PiGraded::rational(int(16), 1));
        assert_eq!(g(Scenario::odd(3).unwrap()), PiGraded::rational(rat(1216, 21), 2));
        assert_eq!(g(Scenario::even(4).unwrap()), PiGraded::rational(rat(3760, 69), 3));
        assert_eq!(reduced_coupling(&Scenario::general(1, 0, 1).unwrap()).unwrap(), Log3Linear::new(int(-96), int(104)));
        let r = coupling_ratio(&Scenario::general(1, 0, 1).unwrap()).unwrap().enclose(&ten_pow_neg(12));
        assert!(r.contains(&parse_rational("2.60368692180699444851450911").unwrap()), "{r}");
    }

    #[test]
    fn out_of_range_is_not_solvable() {
        for s in [Scenario::even(6).unwrap(), Scenario::odd(5).unwrap(), Scenario::general(5, 0, 1).unwrap()] {
            assert!(matches!(coupling_ratio(&s), Err(Error::NotSolvable(_))));
            assert!(pseudo_constraint(&s).is_ok());
        }
        assert!(pseudo_constraint(&Scenario::general(1, 2, 3).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = ten_pow_neg(30);
        for s in [Scenario::general(1, 0, 1).unwrap(), Scenario::odd(3).unwrap().with_alpha1(rat(2, 3)).unwrap()] {
            let j = ConstantSet::compute(&s).unwrap().to_json(&s, &w);
            let text = serde_json::to_string(&j).unwrap();
            let back: serde_json::Value = serde_json::from_str(&text).unwrap();
            let sj: crate::scenario::ScenarioJson = serde_json::from_value(back["scenario"].clone()).unwrap();
            let s2 = Scenario::from_json(&sj).unwrap();
            assert_eq!(ConstantSet::compute(&s2).unwrap().to_json(&s2, &w), back);
        }
    }
}
