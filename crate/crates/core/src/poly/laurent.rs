use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::moments::{moment_integral, power_integral};
use crate::error::{Error, Result};
use crate::exact::{int, pow_i, CertifiedInterval, Log3Linear, Log3Poly, Rational, Ring, ScalarJson, WithLn3};

/// Lowest exponent a [`LaurentPoly`] may carry.
pub const MIN_EXP: i32 = -1;

/// Polynomial in `u = 1 + τ` with exponents `>= -1`.
///
/// Zero coefficients are never stored, so structural equality is value equality
/// whenever the coefficient ring has exact equality.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Ring> Default for LaurentPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Ring> LaurentPoly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, c).expect("exponent 0 is valid")
    }

    pub fn monomial(exp: i32, c: T) -> Result<Self> {
        Self::from_terms([(exp, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, T)>) -> Result<Self> {
        let mut p = Self::zero();
        for (e, c) in terms {
            if e < MIN_EXP {
                return Err(Error::UnsupportedExponent(e as i64));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: i32, c: T) {
        let v = match self.terms.remove(&e) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !v.is_zero_elem() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero_elem)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e, c.times(s));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&T::from_rational(r))
    }

    /// Multiplies by `u^shift`; fails if an exponent would drop below the floor.
    pub fn shift(&self, shift: i32) -> Result<Self> {
        Self::from_terms(self.terms().map(|(e, c)| (e + shift, c.clone())))
    }

    /// Product of two Laurent polynomials (exponent floor still applies).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1 + e2;
                if e < MIN_EXP {
                    return Err(Error::UnsupportedExponent(e as i64));
                }
                out.add_term(e, c1.times(c2));
            }
        }
        Ok(out)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, f(c));
        }
        out
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Option<U>) -> Option<LaurentPoly<U>> {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, f(c)?);
        }
        Some(out)
    }

    /// Value at a rational point `u != 0`.
    pub fn eval(&self, u: &Rational) -> T {
        self.terms().fold(T::zero_elem(), |acc, (e, c)| {
            acc.plus(&c.scaled(&crate::exact::pow_i(u, e)))
        })
    }

    /// d/du (equivalently d/dτ) at a rational point `u != 0`.
    pub fn eval_derivative(&self, u: &Rational) -> T {
        self.terms().fold(T::zero_elem(), |acc, (e, c)| {
            if e == 0 {
                acc
            } else {
                acc.plus(&c.scaled(&(int(e as i64) * crate::exact::pow_i(u, e - 1))))
            }
        })
    }

    /// `∫₀^τ (1 − t)·p(t) dt` as a function of `u = 1 + τ`.
    ///
    /// In `u`, the integrand is `(2 − v)·p(v)` on `[1, u]`; the `v^-1` part integrates
    /// to a logarithm, every other monomial to a polynomial term.
    pub fn weighted_antiderivative(&self) -> Antiderivative<T> {
        let mut poly = Self::zero();
        let mut log_coeff = T::zero_elem();
        let mut integrate = |j: i32, c: T| {
            if j == -1 {
                log_coeff = log_coeff.plus(&c);
            } else {
                let inv = Rational::new(One::one(), (j as i64 + 1).into());
                let c = c.scaled(&inv);
                poly.add_term(j + 1, c.clone());
                poly.add_term(0, c.negated());
            }
        };
        for (e, c) in self.terms() {
            integrate(e, c.scaled(&int(2)));
            integrate(e + 1, c.negated());
        }
        Antiderivative { poly, log_coeff }
    }

    /// Dense coefficients after multiplying by `u` when a `u^-1` term is present,
    /// so that every exponent is non-negative. Returns the shift applied.
    pub fn cleared(&self) -> (Vec<T>, i32) {
        let shift = match self.min_exp() {
            Some(e) if e < 0 => -e,
            _ => 0,
        };
        let n = self.max_exp().map_or(0, |m| (m + shift + 1) as usize);
        let mut dense = vec![T::zero_elem(); n];
        for (e, c) in self.terms() {
            dense[(e + shift) as usize] = c.clone();
        }
        (dense, shift)
    }

    /// Coefficients in the `τ` basis (ascending), when no negative exponent is present.
    pub fn to_tau_coeffs(&self) -> Option<Vec<T>> {
        self.taylor_at(&Rational::one())
    }

    /// Coefficients of `p(u₀ + h)` in powers of `h` (ascending), when no negative exponent
    /// is present.
    pub fn taylor_at(&self, u0: &Rational) -> Option<Vec<T>> {
        if self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let (dense, _) = self.cleared();
        let mut out = vec![T::zero_elem(); dense.len()];
        for (e, c) in dense.iter().enumerate() {
            // (u₀ + h)^e = Σ C(e, j)·u₀^(e−j)·h^j
            let mut binom = Rational::one();
            for j in 0..=e {
                let w = &binom * pow_i(u0, (e - j) as i32);
                out[j] = out[j].plus(&c.scaled(&w));
                binom = binom * int((e - j) as i64) / int(j as i64 + 1);
            }
        }
        while out.last().is_some_and(|c| c.is_zero_elem()) {
            out.pop();
        }
        Some(out)
    }
}

impl<T: WithLn3> LaurentPoly<T> {
    /// `∫₀² (1 − t)·p(t) dt`, by linearity over the weighted moments.
    pub fn weighted_integral_in(&self, width: &Rational) -> T {
        self.terms().fold(T::zero_elem(), |acc, (e, c)| {
            let m = moment_integral(e).expect("exponent floor is enforced");
            acc.plus(&c.times(&T::from_log3(&m, width)))
        })
    }

    /// `∫₀² p(τ) dτ`.
    pub fn integral_in(&self, width: &Rational) -> T {
        self.terms().fold(T::zero_elem(), |acc, (e, c)| {
            acc.plus(&c.times(&T::from_log3(&power_integral(e), width)))
        })
    }

    pub fn enclose(&self, width: &Rational) -> LaurentPoly<CertifiedInterval> {
        self.map(|c| c.enclose(width))
    }
}

impl LaurentPoly<Rational> {
    /// `∫₀² (1 − t)·p(t) dt`, exact in ℚ + ℚ·ln3.
    pub fn weighted_integral(&self) -> Log3Linear {
        self.terms().fold(Log3Linear::zero(), |acc, (e, c)| {
            &acc + &moment_integral(e).expect("exponent floor is enforced").scale(c)
        })
    }

    /// `∫₀² p(τ) dτ`, exact in ℚ + ℚ·ln3.
    pub fn integral(&self) -> Log3Linear {
        self.terms()
            .fold(Log3Linear::zero(), |acc, (e, c)| &acc + &power_integral(e).scale(c))
    }

    pub fn to_log3_poly(&self) -> LaurentPoly<Log3Poly> {
        self.map(|c| Log3Poly::from(c.clone()))
    }
}

impl LaurentPoly<Log3Poly> {
    /// The same polynomial over ℚ if no coefficient involves ln 3.
    pub fn to_rational(&self) -> Option<LaurentPoly<Rational>> {
        self.try_map(|c| c.as_rational())
    }
}

impl<T: Ring + fmt::Display> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let e = *e;
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{e}")?,
            }
        }
        Ok(())
    }
}

/// `N(u) = poly(u) + log_coeff·ln u`, normalized so that `N(1) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Antiderivative<T> {
    pub poly: LaurentPoly<T>,
    pub log_coeff: T,
}

impl<T: Ring> Antiderivative<T> {
    /// Value at `u = 1` (τ = 0), where the logarithm vanishes.
    pub fn at_left_end(&self) -> T {
        self.poly.eval(&Rational::one())
    }

    /// Value at a rational point given ln u in the coefficient ring.
    pub fn eval_with_ln(&self, u: &Rational, ln_u: &T) -> T {
        self.poly.eval(u).plus(&self.log_coeff.times(ln_u))
    }

    pub fn has_log(&self) -> bool {
        !self.log_coeff.is_zero_elem()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { poly: self.poly.scale(s), log_coeff: self.log_coeff.times(s) }
    }
}

impl<T: WithLn3> Antiderivative<T> {
    /// Value at `u = 3` (τ = 2).
    pub fn at_right_end(&self, width: &Rational) -> T {
        self.eval_with_ln(&int(3), &T::ln3(width))
    }
}

/// Coefficient types with a JSON wire form.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Result<ScalarJson>;
    fn from_json(j: &ScalarJson) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Result<ScalarJson> {
        Ok(self.into())
    }
    fn from_json(j: &ScalarJson) -> Result<Self> {
        j.to_rational()
    }
}

impl JsonScalar for Log3Poly {
    fn to_json(&self) -> Result<ScalarJson> {
        self.try_into()
    }
    fn from_json(j: &ScalarJson) -> Result<Self> {
        j.to_log3_poly()
    }
}

impl JsonScalar for CertifiedInterval {
    fn to_json(&self) -> Result<ScalarJson> {
        Ok(self.into())
    }
    fn from_json(j: &ScalarJson) -> Result<Self> {
        j.to_interval()
    }
}

pub const VAR_TAG: &str = "u=1+tau";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: i32,
    pub coeff: ScalarJson,
}

/// `{"var":"u=1+tau","terms":[{"exp":e,"coeff":<scalar>}, ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub var: String,
    pub terms: Vec<TermJson>,
}

impl<T: Ring + JsonScalar> LaurentPoly<T> {
    pub fn to_json(&self) -> Result<LaurentJson> {
        Ok(LaurentJson {
            var: VAR_TAG.into(),
            terms: self
                .terms()
                .map(|(exp, c)| Ok(TermJson { exp, coeff: c.to_json()? }))
                .collect::<Result<_>>()?,
        })
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self> {
        if j.var != VAR_TAG {
            return Err(Error::Parse(format!("unexpected variable tag {:?}", j.var)));
        }
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exp, T::from_json(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn p(terms: &[(i32, i64, i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, n, d)| (e, rat(n, d)))).unwrap()
    }

    #[test]
    fn floor_is_enforced() {
        assert_eq!(
            LaurentPoly::monomial(-2, int(1)).unwrap_err(),
            Error::UnsupportedExponent(-2)
        );
        assert!(p(&[(-1, 1, 1)]).shift(-1).is_err());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = p(&[(2, 1, 1), (0, 3, 1)]);
        let b = p(&[(2, -1, 1)]);
        assert_eq!(a.add(&b), p(&[(0, 3, 1)]));
        assert_eq!(a.sub(&a), LaurentPoly::zero());
    }

    #[test]
    fn evaluation_with_negative_power() {
        let q = p(&[(-1, 1, 1), (1, -5, 63)]);
        assert_eq!(q.eval(&int(3)), rat(1, 3) - rat(15, 63));
        // d/du (1/u − 5u/63) = −1/u² − 5/63
        assert_eq!(q.eval_derivative(&int(3)), rat(-1, 9) - rat(5, 63));
    }

    #[test]
    fn antiderivative_of_constant_is_tau_minus_half_tau_squared() {
        let n = p(&[(0, 1, 1)]).weighted_antiderivative();
        assert!(!n.has_log());
        assert_eq!(n.poly.to_tau_coeffs().unwrap(), vec![int(0), int(1), rat(-1, 2)]);
        assert_eq!(n.at_left_end(), int(0));
    }

    #[test]
    fn antiderivative_log_term() {
        // (2 − u)/u = 2/u − 1 integrates to 2 ln u − (u − 1)
        let n = p(&[(-1, 1, 1)]).weighted_antiderivative();
        assert_eq!(n.log_coeff, int(2));
        assert_eq!(n.poly, p(&[(1, -1, 1), (0, 1, 1)]));
    }

    #[test]
    fn tau_basis_expansion() {
        // u² = 1 + 2τ + τ²
        assert_eq!(p(&[(2, 1, 1)]).to_tau_coeffs().unwrap(), vec![int(1), int(2), int(1)]);
        assert!(p(&[(-1, 1, 1)]).to_tau_coeffs().is_none());
        // u² around u = 3: 9 + 6h + h²
        assert_eq!(p(&[(2, 1, 1)]).taylor_at(&int(3)).unwrap(), vec![int(9), int(6), int(1)]);
    }

    #[test]
    fn json_shape() {
        let q = p(&[(0, 4, 1), (2, -5, 46)]);
        let j = serde_json::to_string(&q.to_json().unwrap()).unwrap();
        assert_eq!(
            j,
            r#"{"var":"u=1+tau","terms":[{"exp":0,"coeff":{"rat":"4"}},{"exp":2,"coeff":{"rat":"-5/46"}}]}"#
        );
        let back: LaurentJson = serde_json::from_str(&j).unwrap();
        assert_eq!(LaurentPoly::<Rational>::from_json(&back).unwrap(), q);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly<Rational>> {
        proptest::collection::vec((-1i32..8, -50i64..50, 1i64..20), 0..6)
            .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))).unwrap())
    }

    proptest! {
        #[test]
        fn antiderivative_end_value_matches_weighted_integral(q in arb_poly()) {
            let n = q.to_log3_poly().weighted_antiderivative();
            let at3 = n.at_right_end(&int(1));
            let direct = Log3Poly::from(&q.weighted_integral());
            prop_assert_eq!(at3, direct);
        }

        #[test]
        fn weighted_integral_is_linear(a in arb_poly(), b in arb_poly(), c in -20i64..20) {
            let lhs = a.add(&b.scale_rational(&int(c))).weighted_integral();
            let rhs = &a.weighted_integral() + &b.weighted_integral().scale(&int(c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
