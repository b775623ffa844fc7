//! Double Hurwitz numbers through the Burnside formula, their
//! lambda-series, and the cut-and-join operators acting on truncated
//! winding polynomials.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use crate::exact::ExactScalar;
use crate::partition::Partition;
use crate::symchar::{SizeMismatch, SymFns};

/// Truncated Taylor series in lambda with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeries {
    /// Entry k is the coefficient of lambda^k.
    pub coefficients: Vec<BigRational>,
}

impl LambdaSeries {
    pub fn zero(order: usize) -> Self {
        LambdaSeries {
            coefficients: alloc::vec![BigRational::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(BigRational::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HurwitzError {
    SizeMismatch(SizeMismatch),
    /// r = -chi + l(mu+) + l(mu-) came out negative.
    EulerCharacteristicTooLarge { r: i64 },
}

impl fmt::Display for HurwitzError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HurwitzError::SizeMismatch(e) => write!(f, "{e}"),
            HurwitzError::EulerCharacteristicTooLarge { r } => {
                write!(f, "Euler characteristic too large: branch count {r} is negative")
            }
        }
    }
}

impl From<SizeMismatch> for HurwitzError {
    fn from(e: SizeMismatch) -> Self {
        HurwitzError::SizeMismatch(e)
    }
}

fn check_sizes(mu_plus: &Partition, mu_minus: &Partition) -> Result<(), SizeMismatch> {
    if mu_plus.size() != mu_minus.size() {
        return Err(SizeMismatch {
            shape: mu_plus.size(),
            class: mu_minus.size(),
        });
    }
    Ok(())
}

/// The Burnside sum with e^(kappa lambda / 2) specialized to
/// q^(kappa n / 2): sum over nu of q^(kappa_nu n/2) chi chi / (z z).
pub fn phi_q(
    sym: &mut SymFns,
    mu_plus: &Partition,
    mu_minus: &Partition,
    n: i64,
) -> Result<ExactScalar, SizeMismatch> {
    check_sizes(mu_plus, mu_minus)?;
    let zz = BigRational::new(1.into(), (mu_plus.z() * mu_minus.z()).into());
    let mut acc = ExactScalar::zero();
    for nu in Partition::enumerate(mu_plus.size() as u32) {
        let a = sym.character(&nu, mu_plus)?;
        if a == 0 {
            continue;
        }
        let b = sym.character(&nu, mu_minus)?;
        if b == 0 {
            continue;
        }
        let coeff = BigRational::from_integer((a * b).into()) * &zz;
        let term = &ExactScalar::q_power(Ratio::new(nu.kappa() * n, 2)) * &coeff;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Taylor expansion in lambda of the Burnside generating function.
pub fn phi_series(
    sym: &mut SymFns,
    mu_plus: &Partition,
    mu_minus: &Partition,
    order: usize,
) -> Result<LambdaSeries, SizeMismatch> {
    check_sizes(mu_plus, mu_minus)?;
    let zz = BigRational::new(1.into(), (mu_plus.z() * mu_minus.z()).into());
    let mut out = LambdaSeries::zero(order);
    for nu in Partition::enumerate(mu_plus.size() as u32) {
        let a = sym.character(&nu, mu_plus)?;
        if a == 0 {
            continue;
        }
        let b = sym.character(&nu, mu_minus)?;
        if b == 0 {
            continue;
        }
        let coeff = BigRational::from_integer((a * b).into()) * &zz;
        // e^(kappa lambda / 2): term k is (kappa/2)^k / k!
        let half_kappa = BigRational::new(nu.kappa().into(), 2.into());
        let mut power = coeff;
        for k in 0..=order {
            out.coefficients[k] += &power;
            power = power * &half_kappa / BigRational::from_integer(((k + 1) as i64).into());
        }
    }
    Ok(out)
}

/// H_{chi, mu+, mu-}: the weighted count of possibly disconnected
/// covers, read off the lambda-series as r! times the lambda^r
/// coefficient with r = -chi + l(mu+) + l(mu-).
pub fn hurwitz_number(
    sym: &mut SymFns,
    chi: i64,
    mu_plus: &Partition,
    mu_minus: &Partition,
) -> Result<BigRational, HurwitzError> {
    check_sizes(mu_plus, mu_minus)?;
    let r = -chi + mu_plus.len() as i64 + mu_minus.len() as i64;
    if r < 0 {
        return Err(HurwitzError::EulerCharacteristicTooLarge { r });
    }
    let series = phi_series(sym, mu_plus, mu_minus, r as usize)?;
    let fact: BigRational =
        BigRational::from_integer((1..=r).product::<i64>().max(1).into());
    Ok(series.coefficients[r as usize].clone() * fact)
}

/// Which family of winding variables an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Polynomial in the formal winding variables p+_j, p-_j, truncated in
/// both winding degree and lambda order. A monomial is recorded as the
/// pair of partitions whose parts are the variable subscripts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindingPolynomial {
    terms: BTreeMap<(Partition, Partition), LambdaSeries>,
    lambda_order: usize,
}

impl WindingPolynomial {
    pub fn zero(lambda_order: usize) -> Self {
        WindingPolynomial {
            terms: BTreeMap::new(),
            lambda_order,
        }
    }

    pub fn lambda_order(&self) -> usize {
        self.lambda_order
    }

    pub fn add_term(&mut self, mu_plus: Partition, mu_minus: Partition, series: LambdaSeries) {
        let entry = self
            .terms
            .entry((mu_plus, mu_minus))
            .or_insert_with(|| LambdaSeries::zero(self.lambda_order));
        for (k, c) in series
            .coefficients
            .iter()
            .take(self.lambda_order + 1)
            .enumerate()
        {
            entry.coefficients[k] += c;
        }
    }

    pub fn coefficient(&self, mu_plus: &Partition, mu_minus: &Partition) -> LambdaSeries {
        self.terms
            .get(&(mu_plus.clone(), mu_minus.clone()))
            .cloned()
            .unwrap_or_else(|| LambdaSeries::zero(self.lambda_order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(LambdaSeries::is_zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &LambdaSeries)> {
        self.terms.iter()
    }

    fn map_terms<F>(&self, mut f: F) -> WindingPolynomial
    where
        F: FnMut(&Partition, &Partition, &LambdaSeries, &mut WindingPolynomial),
    {
        let mut out = WindingPolynomial::zero(self.lambda_order);
        for ((mp, mm), series) in &self.terms {
            if series.is_zero() {
                continue;
            }
            f(mp, mm, series, &mut out);
        }
        out
    }

    fn scaled(series: &LambdaSeries, factor: i64) -> LambdaSeries {
        let f = BigRational::from_integer(factor.into());
        LambdaSeries {
            coefficients: series.coefficients.iter().map(|c| c * &f).collect(),
        }
    }

    fn side<'a>(mp: &'a Partition, mm: &'a Partition, sign: Sign) -> &'a Partition {
        match sign {
            Sign::Plus => mp,
            Sign::Minus => mm,
        }
    }

    fn rebuild(
        mp: &Partition,
        mm: &Partition,
        sign: Sign,
        new_side: Partition,
    ) -> (Partition, Partition) {
        match sign {
            Sign::Plus => (new_side, mm.clone()),
            Sign::Minus => (mp.clone(), new_side),
        }
    }

    /// The cut operator C = sum over j,k of (j+k) p_j p_k d/dp_{j+k}
    /// on the chosen variable family.
    pub fn cut(&self, sign: Sign) -> WindingPolynomial {
        self.map_terms(|mp, mm, series, out| {
            let side = Self::side(mp, mm, sign);
            for (idx, &m) in side.parts().iter().enumerate() {
                if idx > 0 && side.parts()[idx - 1] == m {
                    continue; // equal parts contribute identically below
                }
                let mult = side.multiplicity(m) as i64;
                let mut removed: Vec<u32> =
                    side.parts().iter().copied().collect();
                removed.remove(idx);
                // ordered pairs (j, k) with j + k = m
                for j in 1..m {
                    let k = m - j;
                    let mut parts = removed.clone();
                    parts.push(j);
                    parts.push(k);
                    let new_side = Partition::new(parts);
                    let (a, b) = Self::rebuild(mp, mm, sign, new_side);
                    out.add_term(a, b, Self::scaled(series, m as i64 * mult));
                }
            }
        })
    }

    /// The join operator J = sum over j,k of jk p_{j+k} d^2/dp_j dp_k
    /// on the chosen variable family.
    pub fn join(&self, sign: Sign) -> WindingPolynomial {
        self.map_terms(|mp, mm, series, out| {
            let side = Self::side(mp, mm, sign);
            let distinct: Vec<u32> = {
                let mut d: Vec<u32> = side.parts().to_vec();
                d.dedup();
                d
            };
            for &j in &distinct {
                for &k in &distinct {
                    let ej = side.multiplicity(j) as i64;
                    let factor = if j == k {
                        ej * (ej - 1)
                    } else {
                        ej * side.multiplicity(k) as i64
                    };
                    if factor == 0 {
                        continue;
                    }
                    let mut parts: Vec<u32> = side.parts().to_vec();
                    let pj = parts.iter().position(|&p| p == j).unwrap();
                    parts.remove(pj);
                    let pk = parts.iter().position(|&p| p == k).unwrap();
                    parts.remove(pk);
                    parts.push(j + k);
                    let new_side = Partition::new(parts);
                    let (a, b) = Self::rebuild(mp, mm, sign, new_side);
                    out.add_term(
                        a,
                        b,
                        Self::scaled(series, j as i64 * k as i64 * factor),
                    );
                }
            }
        })
    }

    /// d/dlambda: shifts the series down one order. The top
    /// coefficient of the result is unreliable, so the caller should
    /// build one extra lambda order before differentiating.
    pub fn d_lambda(&self) -> WindingPolynomial {
        let order = self.lambda_order.saturating_sub(1);
        let mut out = WindingPolynomial::zero(order);
        for ((mp, mm), series) in &self.terms {
            let coeffs: Vec<BigRational> = (0..=order)
                .map(|k| {
                    &series.coefficients[k + 1]
                        * &BigRational::from_integer(((k + 1) as i64).into())
                })
                .collect();
            out.add_term(
                mp.clone(),
                mm.clone(),
                LambdaSeries { coefficients: coeffs },
            );
        }
        out
    }

    /// Truncates to a lower lambda order.
    pub fn truncated(&self, order: usize) -> WindingPolynomial {
        let mut out = WindingPolynomial::zero(order);
        for ((mp, mm), series) in &self.terms {
            out.add_term(
                mp.clone(),
                mm.clone(),
                LambdaSeries {
                    coefficients: series.coefficients[..=order].to_vec(),
                },
            );
        }
        out
    }
}

/// The generating function Phi(lambda; p+, p-) truncated to winding
/// degree d_cap on each side and the given lambda order.
pub fn phi_polynomial(
    sym: &mut SymFns,
    d_cap: u32,
    lambda_order: usize,
) -> WindingPolynomial {
    let mut out = WindingPolynomial::zero(lambda_order);
    let mut one = LambdaSeries::zero(lambda_order);
    one.coefficients[0] = BigRational::from_integer(1.into());
    out.add_term(Partition::empty(), Partition::empty(), one);
    for d in 1..=d_cap {
        for mp in Partition::enumerate(d) {
            for mm in Partition::enumerate(d) {
                let series = phi_series(sym, &mp, &mm, lambda_order).expect("equal sizes");
                out.add_term(mp.clone(), mm, series);
            }
        }
    }
    out
}

/// Residual of the cut-and-join equation on the truncated window:
/// dPhi/dlambda - (C + J)/2 applied to Phi. Identically zero when the
/// equation holds. Both operator families are available via `sign`.
pub fn cut_join_residual_signed(
    sym: &mut SymFns,
    d_cap: u32,
    lambda_order: usize,
    sign: Sign,
) -> WindingPolynomial {
    // one extra lambda order so d/dlambda is exact on the window
    let phi = phi_polynomial(sym, d_cap, lambda_order + 1);
    let mut residual = phi.d_lambda();
    let half = BigRational::new(1.into(), 2.into());
    for applied in [phi.cut(sign), phi.join(sign)] {
        for ((mp, mm), series) in applied.truncated(lambda_order).terms() {
            let coeffs: Vec<BigRational> =
                series.coefficients.iter().map(|c| -(c * &half)).collect();
            residual.add_term(
                mp.clone(),
                mm.clone(),
                LambdaSeries { coefficients: coeffs },
            );
        }
    }
    residual
}

/// The `+` side residual; see [`cut_join_residual_signed`].
pub fn cut_join_residual(
    sym: &mut SymFns,
    d_cap: u32,
    lambda_order: usize,
) -> WindingPolynomial {
    cut_join_residual_signed(sym, d_cap, lambda_order, Sign::Plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn phi_q_examples() {
        let mut sym = SymFns::new();
        for n in -2..=2 {
            assert_eq!(
                phi_q(&mut sym, &p(&[1]), &p(&[1]), n).unwrap(),
                ExactScalar::one()
            );
        }
        assert_eq!(
            phi_q(&mut sym, &p(&[2]), &p(&[1, 1]), 1).unwrap(),
            s("(q - q^-1)/4")
        );
        assert!(phi_q(&mut sym, &p(&[2]), &p(&[1]), 1).is_err());
        // n = 0 collapses to the initial value delta / z
        for d in 1..=4u32 {
            for a in Partition::enumerate(d) {
                for b in Partition::enumerate(d) {
                    let v = phi_q(&mut sym, &a, &b, 0).unwrap();
                    let expect = if a == b {
                        ExactScalar::from_rational(rat(1, a.z() as i64))
                    } else {
                        ExactScalar::zero()
                    };
                    assert_eq!(v, expect);
                }
            }
        }
    }

    #[test]
    fn phi_q_symmetry_and_sum_formula() {
        let mut sym = SymFns::new();
        for d in 1..=4u32 {
            for a in Partition::enumerate(d) {
                for b in Partition::enumerate(d) {
                    for n in -2..=2 {
                        assert_eq!(
                            phi_q(&mut sym, &a, &b, n).unwrap(),
                            phi_q(&mut sym, &b, &a, n).unwrap()
                        );
                    }
                    // splice at an intermediate fiber
                    for (n1, n2) in [(1, 1), (1, -1), (2, 1)] {
                        let lhs = phi_q(&mut sym, &a, &b, n1 + n2).unwrap();
                        let mut rhs = ExactScalar::zero();
                        for nu in Partition::enumerate(d) {
                            let t = &phi_q(&mut sym, &a, &nu, n1).unwrap()
                                * &phi_q(&mut sym, &nu, &b, n2).unwrap();
                            rhs = &rhs + &(&t * &rat(nu.z() as i64, 1));
                        }
                        assert_eq!(lhs, rhs, "a={a} b={b} n1={n1} n2={n2}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_series_examples() {
        let mut sym = SymFns::new();
        // (2) against (1,1): odd part of (e^lambda - e^-lambda)/4
        let s21 = phi_series(&mut sym, &p(&[2]), &p(&[1, 1]), 4).unwrap();
        assert_eq!(
            s21.coefficients,
            alloc::vec![rat(0, 1), rat(1, 2), rat(0, 1), rat(1, 12), rat(0, 1)]
        );
        let s22 = phi_series(&mut sym, &p(&[2]), &p(&[2]), 0).unwrap();
        assert_eq!(s22.coefficients, alloc::vec![rat(1, 2)]);
    }

    #[test]
    fn hurwitz_number_examples() {
        let mut sym = SymFns::new();
        assert!(hurwitz_number(&mut sym, 2, &p(&[1]), &p(&[1]))
            .unwrap()
            .is_one());
        assert_eq!(
            hurwitz_number(&mut sym, 2, &p(&[2]), &p(&[1, 1])).unwrap(),
            rat(1, 2)
        );
        assert!(matches!(
            hurwitz_number(&mut sym, 4, &p(&[1]), &p(&[1])),
            Err(HurwitzError::EulerCharacteristicTooLarge { .. })
        ));
    }

    #[test]
    fn operators_on_monomials() {
        let order = 0;
        let mut one = LambdaSeries::zero(order);
        one.coefficients[0] = BigRational::one();
        // J on p1^2 gives 2 p2
        let mut poly = WindingPolynomial::zero(order);
        poly.add_term(p(&[1, 1]), Partition::empty(), one.clone());
        let j = poly.join(Sign::Plus);
        assert_eq!(
            j.coefficient(&p(&[2]), &Partition::empty()).coefficients[0],
            rat(2, 1)
        );
        // C on p2 gives 2 p1^2
        let mut poly = WindingPolynomial::zero(order);
        poly.add_term(p(&[2]), Partition::empty(), one.clone());
        let c = poly.cut(Sign::Plus);
        assert_eq!(
            c.coefficient(&p(&[1, 1]), &Partition::empty()).coefficients[0],
            rat(2, 1)
        );
        // minus-side operators leave the plus side alone
        let mut poly = WindingPolynomial::zero(order);
        poly.add_term(p(&[2]), p(&[2]), one);
        let c = poly.cut(Sign::Minus);
        assert_eq!(
            c.coefficient(&p(&[2]), &p(&[1, 1])).coefficients[0],
            rat(2, 1)
        );
    }

    #[test]
    fn cut_and_join_residual_vanishes() {
        let mut sym = SymFns::new();
        for sign in [Sign::Plus, Sign::Minus] {
            let r = cut_join_residual_signed(&mut sym, 3, 5, sign);
            assert!(r.is_zero(), "{sign:?} residual nonzero");
        }
        assert!(cut_join_residual(&mut sym, 2, 3).is_zero());
    }
}
