//! Dense univariate polynomials over the Gaussian rationals.
//!
//! Negative powers never appear here; the scalar layer represents a
//! Laurent element as a quotient of two ordinary polynomials with the
//! shared power of `x` cancelled.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;

/// Polynomial in `x`, coefficient of `x^k` at index `k`. The highest
/// stored coefficient is nonzero; the zero polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// c * x^k.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(GaussianRational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the highest term; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at x = 0; None for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// Lowest nonzero coefficient, if any.
    pub fn trailing_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by x^k; requires ord >= k.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        debug_assert!(self.coeffs.iter().take(k).all(GaussianRational::is_zero));
        Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    /// Substitutes x -> x^k, spreading the coefficients out.
    pub fn stretch(&self, k: usize) -> Poly {
        debug_assert!(k >= 1);
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![GaussianRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j * k] = c.clone();
            }
        }
        Poly { coeffs }
    }

    /// Inverse of `stretch`: keeps only every k-th coefficient, which
    /// must be all of the nonzero ones.
    pub fn compress(&self, k: usize) -> Poly {
        debug_assert!(k >= 1);
        if k == 1 {
            return self.clone();
        }
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(j, c)| c.is_zero() || j % k == 0));
        Poly {
            coeffs: self.coeffs.iter().step_by(k).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Leading coefficient made 1.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor
            .leading_coeff()
            .unwrap()
            .inverse()
            .expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot_coeffs =
            vec![GaussianRational::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading_coeff().unwrap() * &lc_inv;
            let shift = rd - d;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let sub = c * &factor;
                rem.coeffs[shift + j] -= &sub;
            }
            rem.trim();
            quot_coeffs[shift] = factor;
        }
        (Poly::from_coeffs(quot_coeffs), rem)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[j + k] += &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 2, 1]); // (1+x)^2
        let b = p(&[1, 1]);
        assert_eq!(&b * &b, a);
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(a.degree(), Some(2));
        assert_eq!(p(&[0, 0, 3]).ord(), Some(2));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b.monic());
        assert_eq!(p(&[2]).gcd(&p(&[0, 3])), Poly::one());
        // gcd of coprime polys is 1
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), Poly::one());
    }

    #[test]
    fn stretch_compress() {
        let a = p(&[1, 0, 2]);
        let s = a.stretch(3);
        assert_eq!(s.degree(), Some(6));
        assert_eq!(s.compress(3), a);
    }

    #[test]
    fn eval_homomorphism() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-1, 5]);
        let x = GaussianRational::new(
            num_rational::BigRational::new(7.into(), 3.into()),
            num_rational::BigRational::new(1.into(), 2.into()),
        );
        assert_eq!((&a * &b).eval(&x), &a.eval(&x) * &b.eval(&x));
        assert_eq!((&a + &b).eval(&x), &a.eval(&x) + &b.eval(&x));
    }
}
