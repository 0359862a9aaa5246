//! Rational enclosures of ln x and π from series with explicit remainder bounds.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{int, CertifiedInterval, PiGraded, Rational, Ring};

/// Smallest `b` with `2^-b <= width / 8`.
fn bits_for(width: &Rational) -> u32 {
    let target = width / int(8);
    let mut b = 0u32;
    let mut p = Rational::one();
    while p > target {
        p /= int(2);
        b += 1;
    }
    b
}

fn cache() -> &'static Mutex<HashMap<(u8, Rational, Rational), CertifiedInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, Rational, Rational), CertifiedInterval>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(
    tag: u8,
    arg: &Rational,
    width: &Rational,
    f: impl FnOnce() -> CertifiedInterval,
) -> CertifiedInterval {
    let key = (tag, arg.clone(), width.clone());
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = f();
    cache().lock().unwrap().insert(key, v.clone());
    v
}

/// Enclosure of ln x for rational x > 0, of width at most `width`.
///
/// Uses ln x = 2·atanh(z), z = (x−1)/(x+1), summing terms until the geometric
/// tail bound 2|z|^(2N+1) / ((2N+1)(1−z²)) drops below `width / 2`. The term
/// count and the output grid are both monotone in `width`, so a tighter request
/// always returns a nested interval.
pub fn ln_enclosure(x: &Rational, width: &Rational) -> CertifiedInterval {
    assert!(x.is_positive(), "ln of non-positive {x}");
    assert!(width.is_positive(), "enclosure width must be positive");
    if x.is_one() {
        return CertifiedInterval::point(Rational::zero());
    }
    if x < &Rational::one() {
        return ln_enclosure(&x.recip(), width).negated();
    }
    cached(0, x, width, || {
        let one = Rational::one();
        let z = (x - &one) / (x + &one);
        let z2 = &z * &z;
        let half_w = width / int(2);
        let tail_den = &one - &z2;
        let mut sum = Rational::zero();
        let mut power = z.clone(); // z^(2n+1)
        let mut n = 0i64;
        loop {
            let k = int(2 * n + 1);
            let tail = int(2) * &power / (&k * &tail_den);
            if tail <= half_w {
                let iv = CertifiedInterval { lo: sum.clone(), hi: &sum + tail };
                return iv.round_out(bits_for(width));
            }
            sum += int(2) * &power / &k;
            power *= &z2;
            n += 1;
        }
    })
}

pub fn ln3_enclosure(width: &Rational) -> CertifiedInterval {
    ln_enclosure(&int(3), width)
}

/// atan(1/q) via the alternating series; returns partial sum and error bound.
fn atan_recip(q: i64, bound: &Rational) -> (Rational, Rational) {
    let x = Rational::new(BigInt::one(), BigInt::from(q));
    let x2 = &x * &x;
    let mut sum = Rational::zero();
    let mut power = x.clone();
    let mut n = 0i64;
    loop {
        let term = &power / int(2 * n + 1);
        if &term <= bound {
            return (sum, term);
        }
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
        n += 1;
    }
}

/// Enclosure of π via Machin's formula π = 16·atan(1/5) − 4·atan(1/239).
pub fn pi_enclosure(width: &Rational) -> CertifiedInterval {
    assert!(width.is_positive(), "enclosure width must be positive");
    cached(1, &Rational::zero(), width, || {
        let (a, ea) = atan_recip(5, &(width / int(128)));
        let (b, eb) = atan_recip(239, &(width / int(32)));
        let center = int(16) * &a - int(4) * &b;
        let err = int(16) * ea + int(4) * eb;
        CertifiedInterval { lo: &center - &err, hi: &center + &err }.round_out(bits_for(width))
    })
}

/// Enclosure of (2π)^p with width at most `width`.
pub fn two_pi_pow_enclosure(p: i32, width: &Rational) -> CertifiedInterval {
    if p == 0 {
        return CertifiedInterval::point(Rational::one());
    }
    let mut w = width / int(1000);
    loop {
        let two_pi = pi_enclosure(&w).scaled(&int(2));
        let v = two_pi.powi(p).expect("2π is bounded away from zero");
        if &v.width() <= width {
            return v;
        }
        w /= int(1_000_000);
    }
}

/// Enclosure of the real value `(a + b·ln3)·(2π)^p`, of width at most `width`.
pub fn eval(x: &PiGraded, width: &Rational) -> CertifiedInterval {
    assert!(width.is_positive(), "enclosure width must be positive");
    if x.coeff.is_zero() {
        return CertifiedInterval::point(Rational::zero());
    }
    if x.coeff.is_rational() && x.two_pi_pow == 0 {
        return CertifiedInterval::point(x.coeff.a.clone());
    }
    let mut w = width / int(1000);
    loop {
        let c = x.coeff.enclose(&w);
        let v = c.times(&two_pi_pow_enclosure(x.two_pi_pow, &w));
        if &v.width() <= width {
            return v;
        }
        w /= int(1_000_000);
    }
}
