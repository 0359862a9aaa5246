//! Weighted moments `∫₀² (1 − t)(1 + t)^m dt` and the ratio family built from them.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, Log3Linear, Rational};

fn three_pow(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(3), n as usize)
}

/// `∫₀² (1 + t)^m dt = ∫₁³ u^m du`; ln 3 for `m = -1`.
pub fn power_integral(m: i32) -> Log3Linear {
    if m == -1 {
        return Log3Linear::ln3();
    }
    assert!(m >= 0, "power_integral({m}) below the Laurent floor");
    let n = m as u32 + 1;
    Log3Linear::rational(Rational::new(three_pow(n) - 1, BigInt::from(n)))
}

/// `∫₀² (1 − t)(1 + t)^m dt`, exact.
///
/// Rational for `m >= 0`; `2·ln3 − 2` for `m = -1`.
pub fn moment_integral(m: i32) -> Result<Log3Linear> {
    match m {
        i32::MIN..=-2 => Err(Error::UnsupportedExponent(m as i64)),
        // ∫₁³ (2 − u)/u du
        -1 => Ok(Log3Linear::new(int(-2), int(2))),
        _ => {
            // ∫₁³ (2 − u) u^m du = 2(3^(m+1) − 1)/(m+1) − (3^(m+2) − 1)/(m+2)
            let m = m as u32;
            let first = Rational::new((three_pow(m + 1) - 1) * 2, BigInt::from(m + 1));
            let second = Rational::new(three_pow(m + 2) - 1, BigInt::from(m + 2));
            Ok(Log3Linear::rational(first - second))
        }
    }
}

/// `A_k = (3^(k+1)(1 − k) − (k + 3)) / ((k + 1)(k + 2))`, the closed form of
/// `moment_integral(k)`.
pub fn a_closed_form(k: u32) -> Rational {
    let k_big = BigInt::from(k);
    let num = three_pow(k + 1) * (BigInt::one() - &k_big) - (&k_big + 3);
    Rational::new(num, (&k_big + 1) * (&k_big + 2))
}

/// `R_k = moment_integral(k − 2) / moment_integral(k)`.
pub fn compute_r(k: u32) -> Result<Log3Linear> {
    if k == 0 {
        return Err(Error::Domain("R_k is defined for k >= 1".into()));
    }
    let num = moment_integral(k as i32 - 2)?;
    let den = moment_integral(k as i32)?;
    let den = den.as_rational().expect("moments with m >= 0 are rational");
    num.div_rational(den)
}

/// Outcome of the exact check `1 > R_k > 1/9`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RkBounds {
    pub k: u32,
    /// `A_k < 0` and `A_{k-2} < 0`.
    pub both_negative: bool,
    /// `A_k − A_{k−2} < 0`, i.e. `R_k < 1`.
    pub upper_ok: bool,
    /// `A_k − 9·A_{k−2} > 0`, i.e. `R_k > 1/9`.
    pub lower_ok: bool,
}

impl RkBounds {
    pub fn holds(&self) -> bool {
        self.both_negative && self.upper_ok && self.lower_ok
    }
}

/// Exact big-integer verification of the bounds `1 > R_k > 1/9` for `k >= 5`.
///
/// Both moments are negative, so dividing `A_{k-2} > A_k` by `A_k` flips to `R_k < 1`,
/// and `A_k > 9·A_{k-2}` flips to `R_k > 1/9`.
pub fn rk_bounds(k: u32) -> Result<RkBounds> {
    if k < 5 {
        return Err(Error::Domain(format!("rk_bounds requires k >= 5, got {k}")));
    }
    let ak = a_closed_form(k);
    let akm2 = a_closed_form(k - 2);
    Ok(RkBounds {
        k,
        both_negative: ak.is_negative() && akm2.is_negative(),
        upper_ok: (&ak - &akm2).is_negative(),
        lower_ok: (&ak - &akm2 * int(9)).is_positive(),
    })
}

/// `R_k` for `k >= 2` as an exact rational.
pub fn compute_r_rational(k: u32) -> Result<Rational> {
    let r = compute_r(k)?;
    r.as_rational()
        .cloned()
        .ok_or_else(|| Error::Domain(format!("R_{k} is irrational")))
}
