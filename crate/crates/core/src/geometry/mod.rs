//! Legendre reconstruction of `s`, `F`, `f` from a profile, the pointwise residual of the
//! reduced equation, and the global identities for `α₀` and the volume.

mod quadrature;

use num_traits::{One, Zero};
use serde::Serialize;

pub use quadrature::{integrate, Quad};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, to_f64, CertifiedInterval, GradedRatio, Log3Poly, Log3Ratio, Rational, WithLn3};
use crate::poly::{power_integral, LaurentPoly};
use crate::profile::{MomentumProfile, ScaledPoly};
use crate::scenario::volume_constant;

/// Number of grid nodes used by [`reconstruct`].
pub const GRID_NODES: usize = 512;

/// `s`, `F`, `f` on a grid over `[ε, 2 − ε]`, gauge-fixed by `s(1) = F(1) = 0`.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub grid: Vec<Rational>,
    pub tau: Vec<f64>,
    pub phi: Vec<f64>,
    pub s: Vec<f64>,
    /// Accumulated quadrature error bound for `s` at each node.
    pub s_error: Vec<f64>,
    pub big_f: Vec<f64>,
    pub f: Vec<f64>,
    pub f_error: Vec<f64>,
    pub tol: f64,
    /// `φ(1)`, used for the gauge normalisation.
    pub phi_at_anchor: f64,
}

/// Builds `s(τ) = ∫₁^τ dt/φ`, `f(τ) = ∫₁^τ t/φ dt` and `F = sτ − f`.
///
/// Integration by parts turns `F = ∫₁^τ s dt` into `sτ − ∫₁^τ t/φ dt`, so both
/// quantities are single integrals of the profile.
pub fn reconstruct(p: &MomentumProfile, eps: &Rational, tol: &Rational) -> Result<Reconstruction> {
    if !(eps > &Rational::zero() && eps < &Rational::one()) {
        return Err(Error::Domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    if tol <= &Rational::zero() {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let phi = p.phi_f64();
    let n = GRID_NODES;
    let step = (int(2) - eps * int(2)) / int(n as i64 - 1);
    let grid: Vec<Rational> = (0..n).map(|i| eps + &step * int(i as i64)).collect();
    let tau: Vec<f64> = grid.iter().map(to_f64).collect();
    let tol_f = to_f64(tol);
    let panel_tol = tol_f / n as f64;

    let inv = |t: f64| 1.0 / phi(t);
    let moment = |t: f64| t / phi(t);
    // index of the first node at or above the anchor τ = 1
    let pivot = grid.iter().position(|t| t >= &Rational::one()).unwrap_or(n);

    let mut s = vec![0.0; n];
    let mut s_error = vec![0.0; n];
    let mut f = vec![0.0; n];
    let mut f_error = vec![0.0; n];
    let mut fill = |from: f64, idx: usize, prev: Option<usize>| -> Result<()> {
        let a = integrate(&inv, from, tau[idx], panel_tol)?;
        let b = integrate(&moment, from, tau[idx], panel_tol)?;
        let (s0, se0, f0, fe0) = prev.map_or((0.0, 0.0, 0.0, 0.0), |j| (s[j], s_error[j], f[j], f_error[j]));
        s[idx] = s0 + a.value;
        s_error[idx] = se0 + a.error;
        f[idx] = f0 + b.value;
        f_error[idx] = fe0 + b.error;
        Ok(())
    };
    for i in pivot..n {
        let (from, prev) = if i == pivot { (1.0, None) } else { (tau[i - 1], Some(i - 1)) };
        fill(from, i, prev)?;
    }
    for i in (0..pivot).rev() {
        let (from, prev) = if i + 1 == pivot { (1.0, None) } else { (tau[i + 1], Some(i + 1)) };
        fill(from, i, prev)?;
    }
    let big_f = (0..n).map(|i| s[i] * tau[i] - f[i]).collect();
    let phi_vals = tau.iter().map(|&t| phi(t)).collect();
    Ok(Reconstruction {
        grid,
        tau,
        phi: phi_vals,
        s,
        s_error,
        big_f,
        f,
        f_error,
        tol: tol_f,
        phi_at_anchor: phi(1.0),
    })
}

impl Reconstruction {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn s_increasing(&self) -> bool {
        self.s.windows(2).all(|w| w[0] < w[1])
    }

    /// Relative gap between `φ` and the finite-difference `d²f/ds²` at each interior node.
    ///
    /// The second difference is first order on the non-uniform `s` grid, so the gap is
    /// dominated by the spacing in `s`, which is widest near the ends.
    pub fn convexity_defects(&self) -> Vec<f64> {
        (1..self.len() - 1)
            .map(|i| {
                let (s0, s1, s2) = (self.s[i - 1], self.s[i], self.s[i + 1]);
                let (f0, f1, f2) = (self.f[i - 1], self.f[i], self.f[i + 1]);
                let d2 = 2.0 * ((f2 - f1) / (s2 - s1) - (f1 - f0) / (s1 - s0)) / (s2 - s0);
                ((d2 - self.phi[i]) / self.phi[i]).abs()
            })
            .collect()
    }
}

/// `ρ(τ) = e^(s(1−τ)+F) / (φ·Q)` on the grid, normalised by `ρ(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub rho: Vec<f64>,
    pub rel_dev: Vec<f64>,
    pub rho_at_anchor: f64,
    pub max_rel_dev: f64,
}

/// The reduced equation forces `e^(s−f) ∝ φQ`; in `τ` this is `ρ` constant.
pub fn pde_residual(r: &Reconstruction, q: &LaurentPoly<Log3Poly>) -> Residual {
    let q = q_f64(q);
    let rho_at_anchor = 1.0 / (r.phi_at_anchor * q(1.0));
    let rho: Vec<f64> = (0..r.len())
        .map(|i| {
            let t = r.tau[i];
            (r.s[i] * (1.0 - t) + r.big_f[i]).exp() / (r.phi[i] * q(t))
        })
        .collect();
    let rel_dev: Vec<f64> = rho.iter().map(|x| x / rho_at_anchor - 1.0).collect();
    let max_rel_dev = rel_dev.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    Residual { rho, rel_dev, rho_at_anchor, max_rel_dev }
}

/// Floating-point `q(τ)` in the variable `u = 1 + τ`.
pub fn q_f64(q: &LaurentPoly<Log3Poly>) -> impl Fn(f64) -> f64 {
    let width = crate::exact::ten_pow_neg(30);
    let terms: Vec<(i32, f64)> = q.terms().map(|(e, c)| (e, to_f64(&c.enclose(&width).mid()))).collect();
    move |tau: f64| {
        let u = 1.0 + tau;
        terms.iter().map(|(e, c)| c * u.powi(*e)).sum()
    }
}

/// One CSV row of a reconstruction.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub tau: f64,
    pub phi: f64,
    pub s: f64,
    #[serde(rename = "F")]
    pub big_f: f64,
    pub f: f64,
    pub rho: f64,
    pub rho_rel_dev: f64,
}

pub fn rows(r: &Reconstruction, res: &Residual) -> Vec<Row> {
    (0..r.len())
        .map(|i| Row {
            tau: r.tau[i],
            phi: r.phi[i],
            s: r.s[i],
            big_f: r.big_f[i],
            f: r.f[i],
            rho: res.rho[i],
            rho_rel_dev: res.rel_dev[i],
        })
        .collect()
}

/// Outcome of the `α₀` identity. Both sides live in ℚ(ln3)·(2π)^p, so equality is exact;
/// when they are not polynomial in ln3 their enclosures are compared as well.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub lhs: GradedRatio,
    pub rhs: GradedRatio,
    pub exact_equal: bool,
    pub enclosures: Option<(CertifiedInterval, CertifiedInterval)>,
    pub holds: bool,
}

/// Width of the enclosures used when a side has ln3 in a denominator.
pub fn identity_width() -> Rational {
    crate::exact::ten_pow_neg(20)
}

/// `α₀ = 2(2π)^(k+1)·∫₀²Q dτ`, with `α₀ = ratio·α₁`.
pub fn alpha0_identity(q: &ScaledPoly, k: u32, ratio: &GradedRatio, alpha1: &Rational) -> IdentityCheck {
    let lhs = GradedRatio::new(ratio.value.scale(alpha1), ratio.two_pi_pow);
    let integral = Log3Ratio::from_poly(q.poly.integral_in(&Rational::one()));
    let rhs = GradedRatio::new(q.scale.value.mul(&integral).scale(&int(2)), q.scale.two_pi_pow + k as i32 + 1);
    let exact_equal = lhs == rhs;
    let enclosures = (lhs.value.as_poly().is_none() || rhs.value.as_poly().is_none()).then(|| {
        let w = identity_width();
        (lhs.enclose(&w), rhs.enclose(&w))
    });
    let holds = exact_equal && enclosures.as_ref().is_none_or(|(a, b)| a.overlaps(b));
    IdentityCheck { lhs, rhs, exact_equal, enclosures, holds }
}

/// `(k+1)!·(2π)^(k+1)·∫₀²(1+τ)^k dτ` against the volume constant `C_k`.
pub fn volume_identity(k: u32) -> (GradedRatio, bool) {
    let integral = power_integral(k as i32);
    let integral = integral.as_rational().expect("nonnegative powers integrate to rationals");
    let c = Rational::from_integer(factorial(k + 1)) * integral;
    let lhs = GradedRatio::new(Log3Ratio::rational(c), k as i32 + 1);
    let holds = lhs == GradedRatio::from(volume_constant(k));
    (lhs, holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ten_pow_neg};
    use crate::profile::{build_profile, build_q, solvability};
    use crate::scenario::{coupling_ratio, Scenario};

    fn profile(s: &Scenario) -> (ScaledPoly, MomentumProfile) {
        let q = build_q(s, &coupling_ratio(s).unwrap()).unwrap();
        let p = build_profile(&q.poly).unwrap();
        (q, p)
    }

    fn solvable() -> Vec<Scenario> {
        let mut v: Vec<Scenario> = (1..=4).map(|k| Scenario::general(k, 0, 1).unwrap()).collect();
        v.extend([Scenario::even(2).unwrap(), Scenario::even(4).unwrap(), Scenario::odd(3).unwrap()]);
        v
    }

    #[test]
    fn even_two_matches_log_oracle() {
        let (_, p) = profile(&Scenario::even(2).unwrap());
        let r = reconstruct(&p, &rat(1, 100), &ten_pow_neg(12)).unwrap();
        assert_eq!(r.len(), GRID_NODES);
        for (t, s) in r.tau.iter().zip(&r.s) {
            let oracle = (t / (2.0 - t)).ln();
            assert!((s - oracle).abs() < 1e-8, "tau {t}: {s} vs {oracle}");
        }
    }

    #[test]
    fn residuals_small_for_every_solvable_scenario() {
        for s in solvable() {
            let (q, p) = profile(&s);
            let r = reconstruct(&p, &rat(1, 100), &ten_pow_neg(12)).unwrap();
            assert!(r.s_increasing(), "{s}");
            let res = pde_residual(&r, &q.poly);
            assert!(res.max_rel_dev < 1e-8, "{s}: {}", res.max_rel_dev);
        }
    }

    #[test]
    fn residual_invariant_under_scaling() {
        let (q, p) = profile(&Scenario::odd(3).unwrap());
        let r = reconstruct(&p, &rat(1, 100), &ten_pow_neg(12)).unwrap();
        let a = pde_residual(&r, &q.poly).max_rel_dev;
        let b = pde_residual(&r, &q.poly.scale_rational(&rat(7, 3))).max_rel_dev;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn legendre_convexity() {
        let (_, p) = profile(&Scenario::odd(3).unwrap());
        let r = reconstruct(&p, &rat(1, 100), &ten_pow_neg(12)).unwrap();
        let d = r.convexity_defects();
        let worst = d.iter().cloned().fold(0.0, f64::max);
        assert!(worst < 0.05, "{worst}");
        // in the middle half the s spacing is small
        let central = d[d.len() / 4..3 * d.len() / 4].iter().cloned().fold(0.0, f64::max);
        assert!(central < 1e-4, "{central}");
        let mid = r.grid.iter().position(|t| t >= &Rational::one()).unwrap();
        assert!(r.s[mid].abs() < 0.01 && r.big_f[mid].abs() < 1e-4);
    }

    #[test]
    fn bad_parameters() {
        let (_, p) = profile(&Scenario::even(2).unwrap());
        assert!(reconstruct(&p, &int(1), &ten_pow_neg(12)).is_err());
        assert!(reconstruct(&p, &rat(1, 100), &int(0)).is_err());
    }

    #[test]
    fn alpha0_identity_for_solvable_scenarios() {
        for s in solvable() {
            let r = solvability(&s).unwrap();
            let ratio = coupling_ratio(&s).unwrap();
            let c = alpha0_identity(&r.q, s.k, &ratio, &s.alpha1);
            assert!(c.holds, "{s}: {} vs {}", c.lhs, c.rhs);
            if let Some((a, b)) = &c.enclosures {
                assert!(a.width() <= identity_width() && b.width() <= identity_width());
            }
        }
        let s = Scenario::even(2).unwrap().with_alpha1(rat(3, 7)).unwrap();
        let (q, _) = profile(&s);
        let c = alpha0_identity(&q, 2, &coupling_ratio(&s).unwrap(), &s.alpha1);
        assert!(c.holds);
    }

    #[test]
    fn alpha0_identity_fails_off_constraint() {
        let s = Scenario::even(4).unwrap();
        let ratio = coupling_ratio(&s).unwrap();
        let (q, _) = profile(&s);
        let off = crate::profile::perturbed(&ratio, &rat(11, 10));
        assert!(!alpha0_identity(&q, 4, &off, &s.alpha1).holds);
    }

    #[test]
    fn volume_identities() {
        for k in 1..=10 {
            assert!(volume_identity(k).1, "k = {k}");
        }
        assert_eq!(volume_identity(2).0.symbolic(), GradedRatio::from(volume_constant(2)).symbolic());
    }
}
