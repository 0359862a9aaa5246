use serde::Serialize;

use super::{build_profile, build_q, obstruction_integral, MomentumProfile, ScaledPoly};
use crate::error::{Error, Result};
use crate::exact::{int, GradedJson, GradedRatio, Log3Poly, Log3Ratio, Rational, ScalarJson};
use crate::poly::{SignCertificate, SignOnDomain};
use crate::scenario::{pseudo_constraint, Scenario};

/// Default number of interior sample points for the positivity check.
pub const DEFAULT_SAMPLES: u32 = 1000;

/// One exact boundary condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryResult {
    pub condition: &'static str,
    /// Exact value found, as text.
    pub value: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// A positive solution exists exactly at this `α₀/α₁`.
    Solvable { ratio: GradedRatio },
    /// No positive profile: the reduced polynomial at the forced ratio is not positive.
    NoSolution { reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolvabilityReport {
    pub scenario: Scenario,
    /// `α₀/α₁` forced by the obstruction (a pseudo-constraint when there is no solution).
    pub constraint: GradedRatio,
    pub q: ScaledPoly,
    pub positivity: SignCertificate,
    pub obstruction: Log3Poly,
    pub boundary: Vec<BoundaryResult>,
    pub interior_positive: Option<bool>,
    pub profile: Option<MomentumProfile>,
    pub outcome: Outcome,
}

impl SolvabilityReport {
    pub fn is_solvable(&self) -> bool {
        matches!(self.outcome, Outcome::Solvable { .. })
    }

    pub fn verdict(&self) -> &'static str {
        match self.outcome {
            Outcome::Solvable { .. } => "solvable",
            Outcome::NoSolution { .. } => "no_solution",
        }
    }

    /// Report on the wire; every irrational value carries an enclosure of `width`.
    pub fn to_json(&self, width: &Rational) -> Result<serde_json::Value> {
        let witness = self.witness().map(|(lo, hi)| {
            serde_json::json!({ "var": "u=1+tau", "lo": lo.to_string(), "hi": hi.to_string() })
        });
        let reason = match &self.outcome {
            Outcome::NoSolution { reason } => Some(reason.clone()),
            Outcome::Solvable { .. } => None,
        };
        let phi = match &self.profile {
            Some(p) => {
                let tau = p.phi_tau_coeffs().map(|c| {
                    c.iter()
                        .filter_map(|x| x.as_poly().and_then(|p| ScalarJson::try_from(p).ok()))
                        .collect::<Vec<_>>()
                });
                serde_json::json!({
                    "numerator": p.numerator.poly.to_json()?,
                    "log_coeff": ScalarJson::try_from(&p.numerator.log_coeff)?,
                    "denominator": p.denominator.to_json()?,
                    "tau_coeffs": tau,
                })
            }
            None => serde_json::Value::Null,
        };
        Ok(serde_json::json!({
            "scenario": self.scenario.to_json(),
            "verdict": self.verdict(),
            "reason": reason,
            "constraint": GradedJson::new(&self.constraint, width),
            "positivity": self.positivity,
            "witness": witness,
            "boundary": self.boundary,
            "interior_positive": self.interior_positive,
            "q": {
                "scale": GradedJson::new(&self.q.scale, width),
                "poly": self.q.poly.to_json()?,
            },
            "phi": phi,
        }))
    }

    /// Bracket around a sign change of `Q` for a no-solution verdict.
    pub fn witness(&self) -> Option<&(Rational, Rational)> {
        match self.outcome {
            Outcome::NoSolution { .. } => self.positivity.bracket(),
            Outcome::Solvable { .. } => None,
        }
    }
}

fn check(condition: &'static str, value: Option<Log3Ratio>, expected: Rational) -> BoundaryResult {
    match value {
        Some(v) => BoundaryResult {
            condition,
            pass: v == Log3Ratio::rational(expected),
            value: v.to_string(),
        },
        None => BoundaryResult { condition, value: "unavailable".into(), pass: false },
    }
}

/// The four exact endpoint conditions `φ(0) = 0`, `φ'(0) = 1`, `φ(2) = 0`, `φ'(2) = −1`.
pub fn boundary_check(p: &MomentumProfile) -> Vec<BoundaryResult> {
    let zero = Rational::from_integer(0.into());
    let two = int(2);
    vec![
        check("phi(0)=0", p.phi_exact(&zero), int(0)),
        check("phi'(0)=1", p.phi_prime_exact(&zero), int(1)),
        check("phi(2)=0", p.phi_exact(&two), int(0)),
        check("phi'(2)=-1", p.phi_prime_exact(&two), int(-1)),
    ]
}

/// Solvability with the default number of interior samples.
pub fn solvability(s: &Scenario) -> Result<SolvabilityReport> {
    solvability_with(s, DEFAULT_SAMPLES)
}

/// Computes the forced `α₀/α₁`, builds `Q` there, certifies its sign on `[0, 2]`, and
/// for a positive `Q` builds `φ` and checks the boundary and interior conditions.
pub fn solvability_with(s: &Scenario, samples: u32) -> Result<SolvabilityReport> {
    let constraint = pseudo_constraint(s)?;
    let q = build_q(s, &constraint)?;
    let positivity = q.poly.sign_on_domain()?;
    let obstruction = obstruction_integral(&q.poly);
    let mut report = SolvabilityReport {
        scenario: s.clone(),
        constraint: constraint.clone(),
        q: q.clone(),
        positivity: positivity.clone(),
        obstruction,
        boundary: Vec::new(),
        interior_positive: None,
        profile: None,
        outcome: Outcome::NoSolution { reason: String::new() },
    };
    if !positivity.is_positive() {
        report.outcome = Outcome::NoSolution {
            reason: "Q has no definite sign on [0, 2]".into(),
        };
        return Ok(report);
    }
    if !constraint.is_positive() {
        report.outcome = Outcome::NoSolution { reason: "forced alpha0/alpha1 is not positive".into() };
        return Ok(report);
    }
    let profile = build_profile(&q.poly)?;
    report.boundary = boundary_check(&profile);
    let interior = profile.interior_positive(samples);
    report.interior_positive = Some(interior);
    report.outcome = if report.boundary.iter().all(|b| b.pass) && interior {
        Outcome::Solvable { ratio: constraint }
    } else {
        Outcome::NoSolution { reason: "profile fails a boundary or interior condition".into() }
    };
    report.profile = Some(profile);
    Ok(report)
}

/// Boundary results for `Q` built at an arbitrary `α₀/α₁`.
pub fn boundary_at_ratio(s: &Scenario, ratio: &GradedRatio) -> Result<Vec<BoundaryResult>> {
    let q = build_q(s, ratio)?;
    let p = build_profile(&q.poly).map_err(|e| match e {
        Error::PoleInDomain { .. } => Error::NotSolvable(format!("{s}: Q changes sign")),
        e => e,
    })?;
    Ok(boundary_check(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Ring};
    use crate::profile::perturbed;
    use crate::scenario::coupling_ratio;

    fn solvable_family() -> Vec<Scenario> {
        let mut v: Vec<Scenario> = (1..=4).map(|k| Scenario::general(k, 0, 1).unwrap()).collect();
        v.extend([Scenario::even(2).unwrap(), Scenario::even(4).unwrap(), Scenario::odd(3).unwrap()]);
        v
    }

    #[test]
    fn solvable_scenarios_pass_everything() {
        for s in solvable_family() {
            let r = solvability_with(&s, 200).unwrap();
            assert!(r.is_solvable(), "{s}: {:?}", r.outcome);
            assert!(r.obstruction.is_zero_elem());
            assert_eq!(r.boundary.len(), 4);
            assert!(r.boundary.iter().all(|b| b.pass), "{s}: {:?}", r.boundary);
        }
    }

    #[test]
    fn no_solution_scenarios() {
        let mut v: Vec<Scenario> = (5..=8).map(|k| Scenario::general(k, 0, 1).unwrap()).collect();
        v.extend([Scenario::even(6).unwrap(), Scenario::even(8).unwrap()]);
        v.extend([Scenario::odd(5).unwrap(), Scenario::odd(7).unwrap()]);
        for s in v {
            let r = solvability(&s).unwrap();
            assert!(!r.is_solvable(), "{s}");
            let (lo, hi) = r.witness().expect("witness");
            assert!(lo > &int(1) && hi < &int(3) && lo < hi);
        }
    }

    #[test]
    fn perturbed_ratio_breaks_right_endpoint() {
        let s = Scenario::even(2).unwrap();
        let ratio = perturbed(&coupling_ratio(&s).unwrap(), &rat(11, 10));
        let b = boundary_at_ratio(&s, &ratio).unwrap();
        assert!(b[0].pass && b[1].pass);
        assert!(!b[2].pass);
    }


    #[test]
    fn json_shapes() {
        let w = crate::exact::ten_pow_neg(30);
        let j = solvability_with(&Scenario::even(2).unwrap(), 10).unwrap().to_json(&w).unwrap();
        assert_eq!(j["verdict"], "solvable");
        assert_eq!(j["constraint"]["symbolic"], "16*(2pi)");
        assert_eq!(j["phi"]["tau_coeffs"], serde_json::json!([{"rat": "0"}, {"rat": "1"}, {"rat": "-1/2"}]));
        assert_eq!(j["q"]["poly"]["var"], "u=1+tau");
        assert!(j["witness"].is_null());
        let n = solvability(&Scenario::general(5, 0, 1).unwrap()).unwrap().to_json(&w).unwrap();
        assert_eq!(n["verdict"], "no_solution");
        assert_eq!(n["positivity"]["verdict"]["kind"], "sign_change");
        assert!(n["witness"]["lo"].is_string() && n["phi"].is_null());
    }
}
