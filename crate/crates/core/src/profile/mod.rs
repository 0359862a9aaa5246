//! The reduced polynomial `Q`, the momentum profile `φ = N/Q`, boundary checks and
//! the solvability verdict.

mod report;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    int, ln_enclosure, CertifiedInterval, GradedRatio, Log3Poly, Log3Ratio, Rational, Ring, WithLn3,
};
use crate::poly::{Antiderivative, LaurentPoly, SignCertificate, SignOnDomain, Verdict};
use crate::scenario::Scenario;

pub use report::{boundary_at_ratio, boundary_check, solvability, solvability_with, BoundaryResult, Outcome, SolvabilityReport, DEFAULT_SAMPLES};

/// `Q = scale·poly`, with `scale = α₁·weight·(2π)^-2 > 0` pulled out exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPoly {
    pub scale: GradedRatio,
    pub poly: LaurentPoly<Log3Poly>,
}

/// Builds `Q` for the scenario at the given `α₀/α₁`.
///
/// `ratio` must carry the grade `(2π)^(k−1)` of the scenario's constraint.
pub fn build_q(s: &Scenario, ratio: &GradedRatio) -> Result<ScaledPoly> {
    if ratio.two_pi_pow != s.k as i32 - 1 {
        return Err(Error::Domain(format!(
            "{s}: alpha0/alpha1 must be graded by (2pi)^{}, got (2pi)^{}",
            s.k as i32 - 1,
            ratio.two_pi_pow
        )));
    }
    let weight = s.weight();
    if weight.is_zero() {
        return Err(Error::Domain(format!("{s}: b_k = 0, the twist is trivial")));
    }
    let x = ratio.value.div(&weight)?;
    let x = x
        .as_poly()
        .ok_or_else(|| Error::Domain(format!("{s}: reduced coupling {x} is not polynomial in ln3")))?;
    let poly = crate::scenario::reduced_polynomial(s, x)?;
    let scale = GradedRatio::new(weight.scale(&s.alpha1), -2);
    Ok(ScaledPoly { scale, poly })
}

/// `∫₀²(1 − t)·q(t) dt`, exact in ℚ[ln3]. Vanishes iff `φ(2) = 0`.
pub fn obstruction_integral(q: &LaurentPoly<Log3Poly>) -> Log3Poly {
    q.weighted_integral_in(&Rational::one())
}

/// `∫₀²(1 − t)·Q(t) dt` including the scale.
pub fn obstruction_integral_scaled(q: &ScaledPoly) -> GradedRatio {
    let v = obstruction_integral(&q.poly);
    GradedRatio::new(q.scale.value.mul(&Log3Ratio::from_poly(v)), q.scale.two_pi_pow)
}

/// `φ(τ) = N(τ)/Q(τ)` with `N(τ) = ∫₀^τ (1 − t)Q(t) dt`, in the variable `u = 1 + τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumProfile {
    pub numerator: Antiderivative<Log3Poly>,
    pub denominator: LaurentPoly<Log3Poly>,
    pub positivity: SignCertificate,
}

/// Builds the profile; fails with `PoleInDomain` unless `q` is sign-definite on `[0, 2]`.
pub fn build_profile(q: &LaurentPoly<Log3Poly>) -> Result<MomentumProfile> {
    let positivity = q.sign_on_domain()?;
    match &positivity.verdict {
        Verdict::PositiveOn | Verdict::NegativeOn => {}
        Verdict::SignChange { lo, hi } | Verdict::TouchesZero { lo, hi } => {
            return Err(Error::PoleInDomain { lo: lo.clone(), hi: hi.clone() })
        }
    }
    Ok(MomentumProfile { numerator: q.weighted_antiderivative(), denominator: q.clone(), positivity })
}

fn u_of(tau: &Rational) -> Rational {
    tau + Rational::one()
}

impl MomentumProfile {
    /// `N` at `u = 1` or `u = 3` exactly; elsewhere only when there is no logarithm.
    fn numerator_exact(&self, u: &Rational) -> Option<Log3Poly> {
        let n = &self.numerator;
        if u.is_one() {
            return Some(n.at_left_end());
        }
        if *u == int(3) {
            return Some(n.eval_with_ln(u, &Log3Poly::ln3(&Rational::one())));
        }
        (!n.has_log()).then(|| n.poly.eval(u))
    }

    /// Exact `φ(τ)` in ℚ(ln3) when available (always at the endpoints, everywhere when
    /// `Q` has no `u^-1` term).
    pub fn phi_exact(&self, tau: &Rational) -> Option<Log3Ratio> {
        let u = u_of(tau);
        let n = self.numerator_exact(&u)?;
        Log3Ratio::new(n, self.denominator.eval(&u)).ok()
    }

    /// Certified enclosure of `φ(τ)`.
    pub fn phi_enclose(&self, tau: &Rational, width: &Rational) -> CertifiedInterval {
        if let Some(v) = self.phi_exact(tau) {
            return v.enclose(width);
        }
        let u = u_of(tau);
        let mut w = width / int(1000);
        loop {
            let n = self.numerator.poly.eval(&u).enclose(&w);
            let log = self.numerator.log_coeff.enclose(&w).times(&ln_enclosure(&u, &w));
            let q = self.denominator.eval(&u).enclose(&w);
            if let Ok(v) = n.plus(&log).div(&q) {
                if &v.width() <= width {
                    return v;
                }
            }
            w = &w / int(1_000_000);
        }
    }

    /// `φ'(τ) = ((1 − τ)·Q² − N·Q') / Q²` exactly, at points where `N` is exact.
    pub fn phi_prime_exact(&self, tau: &Rational) -> Option<Log3Ratio> {
        let u = u_of(tau);
        let n = self.numerator_exact(&u)?;
        let q = self.denominator.eval(&u);
        let dq = self.denominator.eval_derivative(&u);
        let one_minus_tau = Log3Poly::from(Rational::one() - tau);
        let num = one_minus_tau.times(&q).times(&q).minus(&n.times(&dq));
        Log3Ratio::new(num, q.times(&q)).ok()
    }

    /// The same real function as `other` (exact comparison of `N₁Q₂` and `N₂Q₁`).
    pub fn same_function(&self, other: &Self) -> bool {
        let cross = |a: &LaurentPoly<Log3Poly>, b: &LaurentPoly<Log3Poly>| a.mul(b).ok();
        let lhs = cross(&self.numerator.poly, &other.denominator);
        let rhs = cross(&other.numerator.poly, &self.denominator);
        let log_l = other.denominator.scale(&self.numerator.log_coeff);
        let log_r = self.denominator.scale(&other.numerator.log_coeff);
        lhs.is_some() && lhs == rhs && log_l == log_r
    }

    /// Coefficients of `φ` in powers of `τ` when `Q` is a constant and `N` has no logarithm.
    pub fn phi_tau_coeffs(&self) -> Option<Vec<Log3Ratio>> {
        if self.numerator.has_log() || self.denominator.max_exp() != Some(0) || self.denominator.min_exp() != Some(0) {
            return None;
        }
        let c = self.denominator.coeff(0);
        let tau = self.numerator.poly.to_tau_coeffs()?;
        tau.into_iter().map(|x| Log3Ratio::new(x, c.clone()).ok()).collect()
    }

    /// Floating-point `φ(τ)` for plotting and quadrature.
    ///
    /// `N` is expanded exactly around `τ = 0` and `τ = 2` and each expansion is used on
    /// its half of the domain, so the cancellation as `N → 0` happens before rounding.
    pub fn phi_f64(&self) -> impl Fn(f64) -> f64 {
        let width = crate::exact::ten_pow_neg(30);
        let to_f = |c: &Log3Poly| crate::exact::to_f64(&c.enclose(&width).mid());
        let log = self.numerator.log_coeff.clone();
        let expand = |u0: i64, ln_u0: Log3Poly, sign: f64| {
            self.numerator.poly.taylor_at(&int(u0)).map(|mut c| {
                // the logarithm contributes log·ln(u₀) to the constant term
                if let Some(c0) = c.first_mut() {
                    *c0 = c0.plus(&log.times(&ln_u0));
                }
                let mut s = 1.0;
                c.iter()
                    .map(|x| {
                        let v = s * to_f(x);
                        s *= sign;
                        v
                    })
                    .collect::<Vec<f64>>()
            })
        };
        let left = expand(1, Log3Poly::zero_elem(), 1.0);
        let right = expand(3, Log3Poly::ln3(&width), -1.0);
        let raw: Vec<(i32, f64)> = self.numerator.poly.terms().map(|(e, c)| (e, to_f(c))).collect();
        let log = to_f(&log);
        let den: Vec<(i32, f64)> = self.denominator.terms().map(|(e, c)| (e, to_f(c))).collect();
        let horner = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
        move |tau: f64| {
            let u = 1.0 + tau;
            let n = match (&left, &right) {
                (Some(l), _) if tau < 1.0 => horner(l, tau) + log * tau.ln_1p(),
                (_, Some(r)) => {
                    let w = 2.0 - tau;
                    horner(r, w) + log * (-w / 3.0).ln_1p()
                }
                _ => raw.iter().map(|(e, c)| c * u.powi(*e)).sum::<f64>() + log * u.ln(),
            };
            let q: f64 = den.iter().map(|(e, c)| c * u.powi(*e)).sum();
            n / q
        }
    }

    /// `φ > 0` on all of `(0, 2)`, proved from the structure of `N`.
    ///
    /// `N' = (1 − τ)·Q` with `Q` of one sign makes `N` strictly monotone on `[0, 1]` and on
    /// `[1, 2]`; with `N(0) = N(2) = 0` exactly, `N` has the sign of `Q` in between.
    pub fn interior_certified(&self) -> bool {
        let definite = matches!(self.positivity.verdict, Verdict::PositiveOn | Verdict::NegativeOn);
        let vanishes = |u: i64| self.numerator_exact(&int(u)).is_some_and(|n| n.is_zero_elem());
        definite && vanishes(1) && vanishes(3)
    }

    /// `φ(τ) > 0` at `n` equispaced interior points `τ = 2i/(n+1)`.
    ///
    /// Exact when `N` has no logarithm. Otherwise the structural proof of
    /// [`Self::interior_certified`] carries the claim and the samples are a floating-point
    /// cross-check.
    pub fn interior_positive(&self, n: u32) -> bool {
        let points = (1..=n).map(|i| Rational::new((2 * i as i64).into(), (n as i64 + 1).into()));
        match self.denominator.clone().to_rational().filter(|_| !self.numerator.has_log()) {
            Some(q) => points.into_iter().all(|tau| {
                let u = u_of(&tau);
                let n = self.numerator.poly.eval(&u).as_rational().expect("rational numerator");
                n * q.eval(&u) > Rational::zero()
            }),
            None => {
                let phi = self.phi_f64();
                self.interior_certified() && points.into_iter().all(|t| phi(crate::exact::to_f64(&t)) > 0.0)
            }
        }
    }
}

/// `α₀/α₁` multiplied by a rational factor (used for perturbation checks).
pub fn perturbed(ratio: &GradedRatio, factor: &Rational) -> GradedRatio {
    GradedRatio::new(ratio.value.scale(factor), ratio.two_pi_pow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::scenario::{coupling_ratio, pseudo_constraint};

    fn q_at_constraint(s: &Scenario) -> ScaledPoly {
        build_q(s, &pseudo_constraint(s).unwrap()).unwrap()
    }

    fn lp(terms: &[(i32, Rational)]) -> LaurentPoly<Log3Poly> {
        LaurentPoly::from_terms(terms.iter().map(|(e, c)| (*e, Log3Poly::from(c.clone())))).unwrap()
    }

    #[test]
    fn even_two_is_constant() {
        let q = q_at_constraint(&Scenario::even(2).unwrap());
        assert_eq!(q.poly, lp(&[(0, int(4))]));
        assert_eq!(q.scale.to_pi_graded().unwrap().symbolic(), "1*(2pi)^-2");
    }

    #[test]
    fn odd_three_factored() {
        let q = q_at_constraint(&Scenario::odd(3).unwrap());
        // 12·u·(1 − (5/63)u²)
        assert_eq!(q.poly, lp(&[(1, int(12)), (3, int(-12) * rat(5, 63))]));
    }

    #[test]
    fn general_factored_form() {
        for k in 1..=6u32 {
            let s = Scenario::general(k, 0, 1).unwrap();
            let q = q_at_constraint(&s);
            let r = Log3Poly::from(&crate::poly::compute_r(k).unwrap());
            let c = Log3Poly::from(int(2 * (k as i64 + 1) * k as i64));
            let expected =
                LaurentPoly::from_terms([(k as i32 - 2, c.clone()), (k as i32, c.times(&r).negated())]).unwrap();
            assert_eq!(q.poly, expected, "k = {k}");
        }
    }

    #[test]
    fn obstruction_vanishes_only_at_constraint() {
        assert!(obstruction_integral(&lp(&[(0, int(7))])).is_zero_elem());
        let s = Scenario::even(2).unwrap();
        let ratio = coupling_ratio(&s).unwrap();
        assert!(obstruction_integral(&build_q(&s, &ratio).unwrap().poly).is_zero_elem());
        let off = build_q(&s, &perturbed(&ratio, &rat(11, 10))).unwrap();
        // the top term u^k has negative weighted integral, so a larger ratio pushes it below zero
        let v = obstruction_integral_scaled(&off);
        assert_eq!(v.value.signum(), Some(std::cmp::Ordering::Less), "{v}");
    }

    #[test]
    fn constant_q_gives_parabola() {
        let p = build_profile(&lp(&[(0, int(3))])).unwrap();
        let c = p.phi_tau_coeffs().unwrap();
        assert_eq!(c, vec![Log3Ratio::rational(int(0)), Log3Ratio::rational(int(1)), Log3Ratio::rational(rat(-1, 2))]);
    }

    #[test]
    fn scale_invariance() {
        let q = q_at_constraint(&Scenario::odd(3).unwrap()).poly;
        let a = build_profile(&q).unwrap();
        let b = build_profile(&q.scale_rational(&rat(7, 3))).unwrap();
        assert!(a.same_function(&b));
        let c = build_profile(&lp(&[(0, int(1)), (1, int(1))])).unwrap();
        assert!(!a.same_function(&c));
    }

    #[test]
    fn pole_detected() {
        let q = lp(&[(0, int(1)), (2, rat(-441, 3655))]);
        assert!(matches!(build_profile(&q), Err(Error::PoleInDomain { .. })));
    }

    #[test]
    fn odd_three_midpoint_value() {
        let q = q_at_constraint(&Scenario::odd(3).unwrap()).poly;
        let p = build_profile(&q).unwrap();
        // ∫₁² (2 − v)(12v − (20/21)v³) dv / (24 − (20/21)·8)
        assert_eq!(p.phi_exact(&int(1)).unwrap().as_rational().unwrap(), rat(71, 172));
    }

    #[test]
    fn log_profile_enclosure() {
        let s = Scenario::general(1, 0, 1).unwrap();
        let q = q_at_constraint(&s).poly;
        let p = build_profile(&q).unwrap();
        assert!(p.numerator.has_log());
        let tau = rat(1, 2);
        let iv = p.phi_enclose(&tau, &crate::exact::ten_pow_neg(20));
        let f = p.phi_f64()(0.5);
        let (lo, hi) = iv.to_f64_pair();
        assert!(lo - 1e-12 <= f && f <= hi + 1e-12);
        assert!(p.interior_positive(50));
    }

    #[test]
    fn structural_interior_certificate() {
        let s = Scenario::general(1, 0, 1).unwrap();
        let p = build_profile(&q_at_constraint(&s).poly).unwrap();
        assert!(p.numerator.has_log());
        assert!(p.interior_certified() && p.interior_positive(50));
        let off = build_q(&s, &perturbed(&coupling_ratio(&s).unwrap(), &rat(11, 10))).unwrap();
        assert!(!build_profile(&off.poly).unwrap().interior_certified());
    }
}
