//! The exact scalar field: fractions of Laurent polynomials in a root
//! variable `x` with `x^r = q`, over Gaussian rational coefficients.
//!
//! Every value is kept in a canonical form, so structural equality is
//! mathematical equality:
//!
//! * numerator and denominator are coprime polynomials in `x`,
//! * at least one of them has a nonzero constant term (the shared
//!   power of `x` is cancelled, which is how negative powers of `q`
//!   are represented),
//! * the lowest nonzero coefficient of the denominator is 1,
//! * the root index `r` is minimal: the exponent support of both
//!   polynomials is not uniformly divisible by any factor of `r`.
//!
//! Minimality of `r` means a value built at root 4 and the same value
//! built at root 8 canonicalize to identical representations, so `Eq`
//! and `Hash` behave across mixed-root arithmetic.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};

use super::gaussian::GaussianRational;
use super::parse::{self, ParseError};
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar {
    root: u32,
    num: Poly,
    den: Poly,
}

impl ExactScalar {
    fn canonical(mut num: Poly, mut den: Poly, mut root: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(root >= 1);
        if num.is_zero() {
            return ExactScalar {
                root: 1,
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_exact(&g);
            den = den.div_exact(&g);
        }
        let shift = num.ord().unwrap().min(den.ord().unwrap());
        if shift > 0 {
            num = num.shift_down(shift);
            den = den.shift_down(shift);
        }
        let t = den.trailing_coeff().unwrap();
        if !t.is_one() {
            let inv = t.inverse().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        // minimize the root index
        let mut support_gcd = root as usize;
        for p in [&num, &den] {
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    support_gcd = support_gcd.gcd(&k);
                }
            }
        }
        if support_gcd > 1 {
            num = num.compress(support_gcd);
            den = den.compress(support_gcd);
            root /= support_gcd as u32;
        }
        ExactScalar { root, num, den }
    }

    pub fn zero() -> Self {
        ExactScalar {
            root: 1,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_gaussian(GaussianRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_gaussian(GaussianRational::from_rational(r))
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        ExactScalar {
            root: 1,
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// i as a scalar.
    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    /// i^k as a scalar.
    pub fn i_power(k: i64) -> Self {
        Self::from_gaussian(GaussianRational::i_power(k))
    }

    /// q itself.
    pub fn q() -> Self {
        Self::q_power(Ratio::new(1, 1))
    }

    /// q^(p/s) for any rational exponent.
    pub fn q_power(e: Ratio<i64>) -> Self {
        let p = *e.numer();
        let s = *e.denom();
        debug_assert!(s >= 1);
        let root = s as u32;
        if p >= 0 {
            Self::canonical(
                Poly::monomial(GaussianRational::one(), p as usize),
                Poly::one(),
                root,
            )
        } else {
            Self::canonical(
                Poly::one(),
                Poly::monomial(GaussianRational::one(), (-p) as usize),
                root,
            )
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Numerator and denominator restated over a larger root index.
    /// `new_root` must be a multiple of the current root.
    pub fn rebase(&self, new_root: u32) -> (Poly, Poly) {
        assert!(new_root % self.root == 0 && new_root >= 1);
        let k = (new_root / self.root) as usize;
        (self.num.stretch(k), self.den.stretch(k))
    }

    fn aligned(&self, other: &ExactScalar) -> (u32, Poly, Poly, Poly, Poly) {
        let root = self.root.lcm(&other.root);
        let (an, ad) = self.rebase(root);
        let (bn, bd) = other.rebase(root);
        (root, an, ad, bn, bd)
    }

    pub fn inverse(&self) -> Option<ExactScalar> {
        if self.is_zero() {
            return None;
        }
        Some(Self::canonical(
            self.den.clone(),
            self.num.clone(),
            self.root,
        ))
    }

    /// Division returning None when `other` is zero.
    pub fn try_div(&self, other: &ExactScalar) -> Option<ExactScalar> {
        other.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, k: i32) -> ExactScalar {
        if k < 0 {
            return self
                .inverse()
                .expect("zero to a negative power")
                .pow(-k);
        }
        let mut acc = ExactScalar::one();
        let mut base = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sums a stream of scalars.
    pub fn sum<I: IntoIterator<Item = ExactScalar>>(items: I) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for item in items {
            acc += &item;
        }
        acc
    }

    /// Multiplies a stream of scalars.
    pub fn product<I: IntoIterator<Item = ExactScalar>>(items: I) -> ExactScalar {
        let mut acc = ExactScalar::one();
        for item in items {
            if item.is_zero() {
                return ExactScalar::zero();
            }
            acc = &acc * &item;
        }
        acc
    }

    /// Evaluates at a numeric value of `x` (so q = x^root). The point
    /// must not be a pole. Used by tests as an independent check that
    /// arithmetic here is a field homomorphism.
    pub fn eval_x(&self, x: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(x);
        let inv = d.inverse()?;
        Some(&self.num.eval(x) * &inv)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (root, an, ad, bn, bd) = self.aligned(rhs);
        let g = ad.gcd(&bd);
        let (ad_red, bd_red) = if g.is_one() {
            (ad.clone(), bd.clone())
        } else {
            (ad.div_exact(&g), bd.div_exact(&g))
        };
        let num = &(&an * &bd_red) + &(&bn * &ad_red);
        let den = &ad * &bd_red;
        ExactScalar::canonical(num, den, root)
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        let (root, an, ad, bn, bd) = self.aligned(rhs);
        // cross-cancel before multiplying to keep degrees down
        let g1 = an.gcd(&bd);
        let g2 = bn.gcd(&ad);
        let (an, bd) = if g1.is_one() {
            (an.clone(), bd.clone())
        } else {
            (an.div_exact(&g1), bd.div_exact(&g1))
        };
        let (bn, ad) = if g2.is_one() {
            (bn, ad)
        } else {
            (bn.div_exact(&g2), ad.div_exact(&g2))
        };
        ExactScalar::canonical(&an * &bn, &ad * &bd, root)
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.try_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            root: self.root,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Mul<&GaussianRational> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &GaussianRational) -> ExactScalar {
        ExactScalar::canonical(self.num.scale(rhs), self.den.clone(), self.root)
    }
}

impl Mul<&BigRational> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &BigRational) -> ExactScalar {
        self * &GaussianRational::from_rational(rhs.clone())
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar::from_rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::render(self, f)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactScalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn q() -> ExactScalar {
        ExactScalar::q()
    }

    #[test]
    fn canonical_negative_power() {
        // q^-1 is 1 over q with the root reduced to 1
        let v = ExactScalar::q_power(Ratio::new(-1, 1));
        assert_eq!(v.root(), 1);
        assert_eq!(v.numerator(), &Poly::one());
        assert_eq!(v.denominator().degree(), Some(1));
        assert_eq!(&v * &q(), ExactScalar::one());
    }

    #[test]
    fn mixed_root_equality() {
        // the same value built at root 4 and root 8 compares equal
        let a = ExactScalar::q_power(Ratio::new(1, 4));
        let b = &ExactScalar::q_power(Ratio::new(1, 8)) * &ExactScalar::q_power(Ratio::new(1, 8));
        assert_eq!(a, b);
        assert_eq!(a.root(), 4);
        assert_eq!(b.root(), 4);
        let h = ExactScalar::q_power(Ratio::new(1, 2));
        assert_eq!(&h * &h, q());
        assert_eq!((&h * &h).root(), 1);
    }

    #[test]
    fn field_identities() {
        let a = &(&q() - &ExactScalar::one()).pow(2) * &q().inverse().unwrap();
        let b = &(&q() + &q().inverse().unwrap()) - &ExactScalar::from_int(2);
        assert_eq!(a, b);
        assert!(a.try_div(&ExactScalar::zero()).is_none());
        assert_eq!(&a - &a, ExactScalar::zero());
        assert_eq!(a.pow(-2), &ExactScalar::one() / &a.pow(2));
    }

    #[test]
    fn sum_and_product() {
        let vals: Vec<ExactScalar> = (1..=5)
            .map(|k| ExactScalar::q_power(Ratio::new(k, 2)))
            .collect();
        let s = ExactScalar::sum(vals.clone());
        let mut expect = ExactScalar::zero();
        for v in &vals {
            expect += v;
        }
        assert_eq!(s, expect);
        let p = ExactScalar::product(vals);
        assert_eq!(p, ExactScalar::q_power(Ratio::new(15, 2)));
    }

    #[test]
    fn eval_is_homomorphism() {
        let a = &(&q() - &ExactScalar::one()) / &(&q() + &ExactScalar::from_int(3));
        let b = &q().pow(2) + &ExactScalar::i();
        // pick a point and align roots (both are root 1 here)
        let x = GaussianRational::new(
            BigRational::new(5.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        );
        let lhs = (&a * &b).eval_x(&x).unwrap();
        let rhs = &a.eval_x(&x).unwrap() * &b.eval_x(&x).unwrap();
        assert_eq!(lhs, rhs);
    }
}
