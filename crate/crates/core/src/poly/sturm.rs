//! Dense rational polynomials and Sturm-sequence root counting.

use num_traits::{Signed, Zero};

use crate::exact::{int, Rational};

/// Dense polynomial with ascending rational coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly(Vec<Rational>);

impl DensePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("non-zero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    /// Remainder of `self` divided by `d`.
    pub fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().unwrap() / d.lead();
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Synthetic division by `(x − root)`; `None` if `root` is not a root.
    pub fn deflate(&self, root: &Rational) -> Option<Self> {
        if self.is_zero() || !self.eval(root).is_zero() {
            return None;
        }
        let n = self.0.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry = &self.0[i] + &carry * root;
            q[i - 1] = carry.clone();
        }
        Some(Self::new(q))
    }

    /// Strips every factor `(x − root)`, returning the reduced polynomial and the multiplicity.
    pub fn strip_root(&self, root: &Rational) -> (Self, u32) {
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.deflate(root) {
            p = q;
            m += 1;
        }
        (p, m)
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm chain `p, p', −rem(p, p'), ...`.
#[derive(Clone, Debug)]
pub struct SturmChain(Vec<DensePoly>);

impl SturmChain {
    pub fn new(p: &DensePoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut chain = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let r = chain.last().unwrap().rem(&next).negated();
            chain.push(next);
            next = r;
        }
        Self(chain)
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs = self.0.iter().map(|p| sign(&p.eval(x))).filter(|s| *s != 0);
        let mut count = 0;
        let mut prev = 0i8;
        for s in signs {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`; `a` must not be a root.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Disjoint rational intervals `(lo, hi)`, each holding exactly one distinct root of `p`
/// in the open interval `(a, b)`; neither endpoint is a root. `a` and `b` must not be roots.
pub fn isolate_roots(p: &DensePoly, a: &Rational, b: &Rational) -> Vec<(Rational, Rational)> {
    let chain = SturmChain::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_roots(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = nonroot_midpoint(p, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort();
    out
}

/// A point strictly inside `(lo, hi)` near the midpoint that is not a root of `p`.
fn nonroot_midpoint(p: &DensePoly, lo: &Rational, hi: &Rational) -> Rational {
    let span = hi - lo;
    // p has finitely many roots, so some fraction j/d of the span avoids them.
    for d in 2i64.. {
        for j in 1..d {
            let x = lo + &span * Rational::new(j.into(), d.into());
            if !p.eval(&x).is_zero() {
                return x;
            }
        }
    }
    unreachable!()
}

/// Shrinks an isolating interval with a sign change down to width `<= width`.
pub fn refine_bracket(p: &DensePoly, lo: &Rational, hi: &Rational, width: &Rational) -> (Rational, Rational) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_lo = sign(&p.eval(&lo));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / int(2);
        let s = sign(&p.eval(&mid));
        if s == 0 {
            let eps = (&hi - &lo) / int(8);
            return (&mid - &eps, &mid + eps);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(c: &[i64]) -> DensePoly {
        DensePoly::new(c.iter().map(|x| int(*x)).collect())
    }

    #[test]
    fn remainder_and_deflation() {
        // (x² − 1) mod (x − 1) = 0
        assert!(poly(&[-1, 0, 1]).rem(&poly(&[-1, 1])).is_zero());
        assert_eq!(poly(&[-1, 0, 1]).deflate(&int(1)).unwrap(), poly(&[1, 1]));
        let (r, m) = poly(&[9, -6, 1]).strip_root(&int(3));
        assert_eq!((r, m), (poly(&[1]), 2));
    }

    #[test]
    fn counts_roots_of_known_polynomials() {
        let p = poly(&[-2, 0, 1]);
        let c = SturmChain::new(&p);
        assert_eq!(c.count_roots(&int(1), &int(3)), 1);
        assert_eq!(c.count_roots(&int(-3), &int(3)), 2);
        // (x − 2)² has one distinct root
        let q = poly(&[4, -4, 1]);
        assert_eq!(SturmChain::new(&q).count_roots(&int(1), &int(3)), 1);
    }

    #[test]
    fn isolates_close_roots() {
        // (x − 3/2)(x − 8/5)(x − 5/2)
        let lin = |r: Rational| DensePoly::new(vec![-r, int(1)]);
        let prod = |a: &DensePoly, b: &DensePoly| {
            let mut c = vec![Rational::zero(); a.coeffs().len() + b.coeffs().len() - 1];
            for (i, x) in a.coeffs().iter().enumerate() {
                for (j, y) in b.coeffs().iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            DensePoly::new(c)
        };
        let q = prod(&prod(&lin(rat(3, 2)), &lin(rat(8, 5))), &lin(rat(5, 2)));
        let roots = isolate_roots(&q, &int(1), &int(3));
        assert_eq!(roots.len(), 3);
        for ((lo, hi), r) in roots.iter().zip([rat(3, 2), rat(8, 5), rat(5, 2)]) {
            assert!(lo < &r && &r < hi);
        }
    }
}
