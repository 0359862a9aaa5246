//! Certified sign of a Laurent polynomial on `u ∈ [1, 3]`.

use serde::Serialize;

use super::laurent::LaurentPoly;
use super::sturm::{isolate_roots, refine_bracket, sign, DensePoly};
use crate::error::{Error, Result};
use crate::exact::{int, rat, ten_pow_neg, CertifiedInterval, Log3Poly, Rational, Ring, WithLn3};

/// Domain endpoints in the `u` variable.
pub fn domain() -> (Rational, Rational) {
    (int(1), int(3))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    PositiveOn,
    NegativeOn,
    /// Opposite certified signs at `lo` and `hi`, both in `[1, 3]`.
    SignChange { lo: String, hi: String },
    /// A zero in `[lo, hi]` without a sign change (even multiplicity or at an endpoint).
    TouchesZero { lo: String, hi: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sturm,
    IntervalSubdivision,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignCertificate {
    pub verdict: Verdict,
    pub method: Method,
    #[serde(skip)]
    bracket: Option<(Rational, Rational)>,
}

impl SignCertificate {
    fn definite(positive: bool, method: Method) -> Self {
        let verdict = if positive { Verdict::PositiveOn } else { Verdict::NegativeOn };
        Self { verdict, method, bracket: None }
    }

    fn change(lo: Rational, hi: Rational, method: Method) -> Self {
        Self {
            verdict: Verdict::SignChange { lo: lo.to_string(), hi: hi.to_string() },
            method,
            bracket: Some((lo, hi)),
        }
    }

    fn touch(lo: Rational, hi: Rational, method: Method) -> Self {
        Self {
            verdict: Verdict::TouchesZero { lo: lo.to_string(), hi: hi.to_string() },
            method,
            bracket: Some((lo, hi)),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::PositiveOn
    }

    pub fn is_definite(&self) -> bool {
        matches!(self.verdict, Verdict::PositiveOn | Verdict::NegativeOn)
    }

    /// Witness bracket for `SignChange` / `TouchesZero`.
    pub fn bracket(&self) -> Option<&(Rational, Rational)> {
        self.bracket.as_ref()
    }
}

/// Width to which Sturm sign-change brackets are refined.
pub fn bracket_width() -> Rational {
    ten_pow_neg(12)
}

/// Sign certification via Sturm sequences for exact rational coefficients.
///
/// Endpoint roots are divided out first; a remaining factor `(u − 3)^m` contributes
/// `(−1)^m` on the open interval.
pub fn sturm_sign(p: &LaurentPoly<Rational>) -> Result<SignCertificate> {
    if p.is_zero() {
        return Err(Error::Domain("sign of the zero polynomial".into()));
    }
    let (a, b) = domain();
    let (dense, _) = p.cleared();
    let dense = DensePoly::new(dense);
    let (reduced, at_a) = dense.strip_root(&a);
    let (reduced, at_b) = reduced.strip_root(&b);
    let roots = isolate_roots(&reduced, &a, &b);
    let flip = if at_b % 2 == 1 { -1 } else { 1 };
    for (lo, hi) in &roots {
        let s_lo = sign(&reduced.eval(lo));
        let s_hi = sign(&reduced.eval(hi));
        if s_lo != s_hi {
            let (lo, hi) = refine_bracket(&reduced, lo, hi, &bracket_width());
            return Ok(SignCertificate::change(lo, hi, Method::Sturm));
        }
    }
    if let Some((lo, hi)) = roots.into_iter().next() {
        return Ok(SignCertificate::touch(lo, hi, Method::Sturm));
    }
    if at_a > 0 {
        return Ok(SignCertificate::touch(a.clone(), a, Method::Sturm));
    }
    if at_b > 0 {
        return Ok(SignCertificate::touch(b.clone(), b, Method::Sturm));
    }
    let s = sign(&reduced.eval(&int(2))) * flip;
    Ok(SignCertificate::definite(s > 0, Method::Sturm))
}

/// Depth limit for interval subdivision at one precision level.
pub const MAX_DEPTH: u32 = 40;

/// Sign certification by adaptive bisection with interval evaluation.
///
/// `coeffs(width)` must return the dense (cleared) coefficients enclosed to `width`.
/// The precision ladder tightens the coefficient width before giving up.
pub fn interval_sign(coeffs: impl Fn(&Rational) -> Vec<CertifiedInterval>) -> Result<SignCertificate> {
    let ladder = [ten_pow_neg(10), ten_pow_neg(30), ten_pow_neg(60)];
    for w in &ladder {
        let c = coeffs(w);
        if c.iter().all(|x| x.is_zero_elem()) {
            return Err(Error::Domain("sign of the zero polynomial".into()));
        }
        if let Some(cert) = subdivide(&c) {
            return Ok(cert);
        }
    }
    Err(Error::Undecidable(MAX_DEPTH))
}

fn horner(c: &[CertifiedInterval], x: &CertifiedInterval) -> CertifiedInterval {
    c.iter()
        .rev()
        .fold(CertifiedInterval::point(int(0)), |acc, ci| acc.times(x).plus(ci))
}

fn point_sign(c: &[CertifiedInterval], x: &Rational) -> i8 {
    let v = horner(c, &CertifiedInterval::point(x.clone()));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn subdivide(c: &[CertifiedInterval]) -> Option<SignCertificate> {
    let (a, b) = domain();
    // Look for a certified sign change on a coarse grid first.
    let n = 64;
    let grid: Vec<Rational> = (0..=n).map(|i| &a + (&b - &a) * rat(i, n)).collect();
    let signs: Vec<i8> = grid.iter().map(|x| point_sign(c, x)).collect();
    let mut last: Option<(usize, i8)> = None;
    for (i, s) in signs.iter().enumerate() {
        if *s == 0 {
            continue;
        }
        if let Some((j, t)) = last {
            if t != *s {
                return Some(SignCertificate::change(
                    grid[j].clone(),
                    grid[i].clone(),
                    Method::IntervalSubdivision,
                ));
            }
        }
        last = Some((i, *s));
    }
    let target = last?.1;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let v = horner(c, &CertifiedInterval { lo: lo.clone(), hi: hi.clone() });
        let ok = if target > 0 { v.is_positive() } else { v.is_negative() };
        if ok {
            continue;
        }
        if depth >= MAX_DEPTH {
            return None;
        }
        let mid = (&lo + &hi) / int(2);
        stack.push((mid.clone(), hi, depth + 1));
        stack.push((lo, mid, depth + 1));
    }
    Some(SignCertificate::definite(target > 0, Method::IntervalSubdivision))
}

/// Types whose Laurent polynomials can be sign-certified on `[1, 3]`.
pub trait SignOnDomain {
    fn sign_on_domain(&self) -> Result<SignCertificate>;
}

impl SignOnDomain for LaurentPoly<Rational> {
    fn sign_on_domain(&self) -> Result<SignCertificate> {
        sturm_sign(self)
    }
}

impl SignOnDomain for LaurentPoly<Log3Poly> {
    fn sign_on_domain(&self) -> Result<SignCertificate> {
        if let Some(p) = self.to_rational() {
            return sturm_sign(&p);
        }
        let (dense, _) = self.cleared();
        interval_sign(|w| dense.iter().map(|c| c.enclose(w)).collect())
    }
}

impl SignOnDomain for LaurentPoly<CertifiedInterval> {
    fn sign_on_domain(&self) -> Result<SignCertificate> {
        let (dense, _) = self.cleared();
        interval_sign(|_| dense.clone())
    }
}
