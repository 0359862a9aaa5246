//! Closed-form expressions for the scenario constants, written out term by term.
//! These are compared against the integral route in tests and in `verify`.

use super::{constants::ak_bk, Case, Scenario};
use crate::exact::{factorial, int, pow_i, GradedRatio, Log3Linear, Log3Ratio, PiGraded, Rational};
use crate::poly::compute_r;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn three(n: i64) -> Rational {
    pow_i(&int(3), n as i32)
}

/// `(k+1)!·(2π)^(k+1)·(3^(k+1) − 1)/(k+1)`.
pub fn closed_form_volume(k: u32) -> PiGraded {
    let k = k as i64;
    let c = Rational::from_integer(factorial(k as u32 + 1)) * (three(k + 1) - int(1)) / int(k + 1);
    PiGraded::rational(c, k as i32 + 1)
}

/// `C̃_k` in its factored form, when one is known for the scenario.
///
/// Alternating twist: `12α₁(1 − 1/13)` for `k = 2`, `40α₁(1 − 13/363)` for `k = 4`;
/// weighted twist: `24α₁(1 − 1/10)` for `k = 3`; general twist: `α₁(4a² − b²·ln3)`
/// for `k = 1` and `2α₁(k+1)²k/(3^(k+1) − 1)·(a²(3^(k+1) − 1)/(k+1) − b²(3^(k−1) − 1)/(k−1))`
/// for `k >= 2`, all over `(2π)²`.
pub fn closed_form_c_tilde(s: &Scenario) -> Option<GradedRatio> {
    let value = match (s.case, s.k) {
        (Case::EvenAlternating, 2) => Log3Ratio::rational(int(12) * (int(1) - r(1, 13))),
        (Case::EvenAlternating, 4) => Log3Ratio::rational(int(40) * (int(1) - r(13, 363))),
        (Case::OddWeighted, 3) => Log3Ratio::rational(int(24) * (int(1) - r(1, 10))),
        (Case::General { m1, m2 }, 1) => {
            let ab = ak_bk(1, m1, m2).ok()?;
            ab.a.square()
                .scale(&int(4))
                .sub(&ab.b.square().mul(&Log3Ratio::from_linear(&Log3Linear::ln3())))
        }
        (Case::General { m1, m2 }, k) => {
            let ab = ak_bk(k, m1, m2).ok()?;
            let k = k as i64;
            let pre = int(2 * (k + 1) * (k + 1) * k) / (three(k + 1) - int(1));
            let top = (three(k + 1) - int(1)) / int(k + 1);
            let low = (three(k - 1) - int(1)) / int(k - 1);
            ab.a.square().scale(&top).sub(&ab.b.square().scale(&low)).scale(&pre)
        }
        _ => return None,
    };
    Some(GradedRatio::new(value.scale(&s.alpha1), -2))
}

/// `α₀/α₁` in closed form, when one is known for the scenario.
///
/// `32π` (alternating, `k = 2`); `32·(38/21)·(2π)²` (weighted, `k = 3`);
/// `4!·(2·235)/(3·3·23)·(2π)³` (alternating, `k = 4`); `8b²(13·ln3 − 12)` (general, `k = 1`);
/// `4k(3^(k+1) − 1)·b²·((k+1)(3^(k−1) − 1)/((k−1)(3^(k+1) − 1)) − R_k)·(2π)^(k−1)`
/// (general, `k = 2, 3, 4`).
pub fn closed_form_coupling(s: &Scenario) -> Option<GradedRatio> {
    let pi_multiple = |c: Rational, p: i32| Some(GradedRatio::from(PiGraded::rational(c, p)));
    match (s.case, s.k) {
        // 32π = 16·(2π)
        (Case::EvenAlternating, 2) => pi_multiple(int(32) / int(2), 1),
        (Case::OddWeighted, 3) => pi_multiple(int(32) * r(38, 21), 2),
        (Case::EvenAlternating, 4) => pi_multiple(int(24) * r(2 * 235, 3 * 23) / int(3), 3),
        (Case::General { m1, m2 }, 1) => {
            let b2 = ak_bk(1, m1, m2).ok()?.b.square();
            let tail = Log3Ratio::from_linear(&Log3Linear::new(int(-12), int(13)));
            Some(GradedRatio::new(b2.mul(&tail).scale(&int(8)), 0))
        }
        (Case::General { m1, m2 }, k @ 2..=4) => {
            let b2 = ak_bk(k, m1, m2).ok()?.b.square();
            let r_k = compute_r(k).ok()?.as_rational()?.clone();
            let k = k as i64;
            let big = three(k + 1) - int(1);
            let bracket = int(k + 1) * (three(k - 1) - int(1)) / (int(k - 1) * &big) - r_k;
            let c = int(4 * k) * big * bracket;
            Some(GradedRatio::new(b2.scale(&c), k as i32 - 1))
        }
        _ => None,
    }
}
