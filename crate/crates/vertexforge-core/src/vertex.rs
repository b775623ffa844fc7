//! The amplitude family W_mu, W_{mu,nu}, W_{mu1,mu2,mu3} and the
//! closed expression Wt (w_tilde) built from two-partition amplitudes
//! and character sums.
//!
//! All values are exact scalars in q^(1/4) and are cached per
//! partition tuple inside [`VertexCtx`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use crate::exact::ExactScalar;
use crate::partition::{Partition, PartitionTriple};
use crate::symchar::SymFns;

/// [m] = q^(m/2) - q^(-m/2).
pub fn bracket(m: i64) -> ExactScalar {
    &ExactScalar::q_power(Ratio::new(m, 2)) - &ExactScalar::q_power(Ratio::new(-m, 2))
}

/// Truncated expansion of the generating series E_mu(q,t) in t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESeries {
    pub mu: Partition,
    /// Entry n is the coefficient of t^n; entry 0 is always 1.
    pub coefficients: Vec<ExactScalar>,
}

#[derive(Default)]
pub struct VertexCtx {
    pub sym: SymFns,
    w_one_memo: BTreeMap<Partition, ExactScalar>,
    w_two_memo: BTreeMap<(Partition, Partition), ExactScalar>,
    w_three_memo: BTreeMap<PartitionTriple, ExactScalar>,
    w_tilde_memo: BTreeMap<PartitionTriple, ExactScalar>,
    cache_limit: Option<usize>,
}

impl VertexCtx {
    pub fn new() -> Self {
        VertexCtx::default()
    }

    /// Best-effort bound on entries per memo table; also applied to
    /// the inner character caches.
    pub fn with_cache_limit(limit: usize) -> Self {
        VertexCtx {
            sym: SymFns::with_cache_limit(limit),
            cache_limit: Some(limit),
            ..VertexCtx::default()
        }
    }

    fn may_store(&self, len: usize) -> bool {
        self.cache_limit.is_none_or(|l| len < l)
    }

    /// W_mu from the explicit product formula.
    pub fn w_one(&mut self, mu: &Partition) -> ExactScalar {
        if let Some(v) = self.w_one_memo.get(mu) {
            return v.clone();
        }
        let l = mu.len();
        let mut acc = ExactScalar::q_power(Ratio::new(mu.kappa(), 4));
        for i in 0..l {
            for j in (i + 1)..l {
                let m = mu.parts()[i] as i64 - mu.parts()[j] as i64 + j as i64 - i as i64;
                acc = &acc * &bracket(m);
                acc = &acc / &bracket(j as i64 - i as i64);
            }
        }
        for i in 0..l {
            for v in 1..=mu.parts()[i] as i64 {
                acc = &acc / &bracket(v - (i as i64 + 1) + l as i64);
            }
        }
        if self.may_store(self.w_one_memo.len()) {
            self.w_one_memo.insert(mu.clone(), acc.clone());
        }
        acc
    }

    /// E_mu(q,t) expanded to the requested order in t.
    pub fn e_series(&mut self, mu: &Partition, order: usize) -> ESeries {
        // tail series 1 + sum_n t^n / prod_{i<=n} (q^i - 1)
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(ExactScalar::one());
        let mut denom = ExactScalar::one();
        for n in 1..=order {
            let factor = &ExactScalar::q_power(Ratio::new(n as i64, 1)) - &ExactScalar::one();
            denom = &denom * &factor;
            coeffs.push(denom.inverse().expect("q^n - 1 is nonzero"));
        }
        for (j, &p) in mu.parts().iter().enumerate() {
            let j1 = (j + 1) as i64;
            // multiply by 1 + q^(mu_j - j) t
            let c = ExactScalar::q_power(Ratio::new(p as i64 - j1, 1));
            for n in (1..=order).rev() {
                let add = &coeffs[n - 1] * &c;
                coeffs[n] = &coeffs[n] + &add;
            }
            // divide by 1 + q^(-j) t, i.e. multiply by its geometric inverse
            let d = ExactScalar::q_power(Ratio::new(-j1, 1));
            for n in 1..=order {
                let sub = &coeffs[n - 1] * &d;
                coeffs[n] = &coeffs[n] - &sub;
            }
        }
        ESeries {
            mu: mu.clone(),
            coefficients: coeffs,
        }
    }

    /// s_nu on the alphabet whose elementary symmetric functions are
    /// the t-coefficients of E_mu, via the dual Jacobi-Trudi
    /// determinant det(e_{nu^t_i - i + j}).
    pub fn schur_of_e(&mut self, nu: &Partition, mu: &Partition) -> ExactScalar {
        if nu.is_empty() {
            return ExactScalar::one();
        }
        let e = self.e_series(mu, nu.size() as usize);
        let nut = nu.transpose();
        let n = nut.len();
        let entry = |i: usize, j: usize| -> ExactScalar {
            let idx = nut.parts()[i] as i64 - i as i64 + j as i64;
            if idx < 0 {
                ExactScalar::zero()
            } else {
                e.coefficients
                    .get(idx as usize)
                    .cloned()
                    .unwrap_or_else(ExactScalar::zero)
            }
        };
        let mat: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| (0..n).map(|j| entry(i, j)).collect())
            .collect();
        determinant(&mat)
    }

    /// W_{mu,nu} = q^(|nu|/2) W_mu s_nu(E_mu).
    pub fn w_two(&mut self, mu: &Partition, nu: &Partition) -> ExactScalar {
        let key = (mu.clone(), nu.clone());
        if let Some(v) = self.w_two_memo.get(&key) {
            return v.clone();
        }
        let mut acc = ExactScalar::q_power(Ratio::new(nu.size() as i64, 2));
        acc = &acc * &self.w_one(mu);
        acc = &acc * &self.schur_of_e(nu, mu);
        if self.may_store(self.w_two_memo.len()) {
            self.w_two_memo.insert(key, acc.clone());
        }
        acc
    }

    /// The three-partition amplitude W_{mu1,mu2,mu3}.
    pub fn w_three(&mut self, mu: &PartitionTriple) -> ExactScalar {
        if let Some(v) = self.w_three_memo.get(mu) {
            return v.clone();
        }
        let [m1, m2, m3] = &mu.0;
        let (m1, m2, m3) = (m1.clone(), m2.clone(), m3.clone());
        let m2t = m2.transpose();
        let mut total = ExactScalar::zero();
        // rho1 shrinks mu1; rho3 shrinks mu3 by the same amount
        for a in 0..=m1.size() {
            let drop = m1.size() - a;
            let Some(b) = m3.size().checked_sub(drop) else {
                continue;
            };
            for rho1 in Partition::enumerate(a as u32) {
                for rho3 in Partition::enumerate(b as u32) {
                    let c = self.sym.lr_double(&m1, &m3, &rho1, &rho3);
                    if c == 0 {
                        continue;
                    }
                    let mut term = self.w_two(&m2t, &rho1);
                    term = &term * &self.w_two(&m2, &rho3.transpose());
                    term = &term * &BigRational::from_integer(c.into());
                    total = &total + &term;
                }
            }
        }
        total = &total / &self.w_one(&m2);
        total = &total
            * &ExactScalar::q_power(Ratio::new(m2.kappa() + m3.kappa(), 2));
        if self.may_store(self.w_three_memo.len()) {
            self.w_three_memo.insert(mu.clone(), total.clone());
        }
        total
    }

    /// sum over mu of chi_{eta1}(mu) chi_{eta3}(2mu) / z_mu, the
    /// character pairing coupling the first and third legs.
    pub fn char_double_sum(&mut self, eta1: &Partition, eta3: &Partition) -> BigRational {
        let mut acc = BigRational::zero();
        if eta3.size() != 2 * eta1.size() {
            return acc;
        }
        for mu in Partition::enumerate(eta1.size() as u32) {
            let a = self.sym.character(eta1, &mu).expect("sizes match");
            if a == 0 {
                continue;
            }
            let b = self.sym.character(eta3, &mu.double()).expect("sizes match");
            if b == 0 {
                continue;
            }
            acc += BigRational::new((a * b).into(), mu.z().into());
        }
        acc
    }

    /// The closed-form amplitude Wt_{rho1,rho2,rho3}.
    pub fn w_tilde(&mut self, rho: &PartitionTriple) -> ExactScalar {
        if let Some(v) = self.w_tilde_memo.get(rho) {
            return v.clone();
        }
        let [r1, r2, r3] = &rho.0;
        let (r1, r2, r3) = (r1.clone(), r2.clone(), r3.clone());
        let prefactor = ExactScalar::q_power(Ratio::new(
            -2 * r1.kappa() + 4 * r2.kappa() + r3.kappa(),
            4,
        ));
        let mut total = ExactScalar::zero();
        // |eta1| + |nu1| = |rho1|, |eta3| + |nu3| = |rho3|,
        // |eta3| = 2|eta1|, |nu+| = |nu1| + |rho2|
        for a in 0..=r1.size() {
            let Some(b) = r3.size().checked_sub(2 * a) else {
                break;
            };
            for eta1 in Partition::enumerate(a as u32) {
                for eta3 in Partition::enumerate(2 * a as u32) {
                    let pairing = self.char_double_sum(&eta1, &eta3);
                    if pairing.is_zero() {
                        continue;
                    }
                    let eta1t = eta1.transpose();
                    for nu1 in Partition::enumerate((r1.size() - a) as u32) {
                        let c1 = self.sym.lr_coefficient(&r1, &eta1t, &nu1);
                        if c1 == 0 {
                            continue;
                        }
                        let nu1t = nu1.transpose();
                        for nu3 in Partition::enumerate(b as u32) {
                            let c3 = self.sym.lr_coefficient(&r3, &eta3, &nu3.transpose());
                            if c3 == 0 {
                                continue;
                            }
                            let plus_size = nu1.size() + r2.size();
                            for nu_plus in Partition::enumerate(plus_size as u32) {
                                let cp = self.sym.lr_coefficient(&nu_plus, &nu1t, &r2);
                                if cp == 0 {
                                    continue;
                                }
                                let coeff = BigRational::from_integer(
                                    ((c1 * c3 * cp) as i64).into(),
                                ) * &pairing;
                                let mut term = ExactScalar::q_power(Ratio::new(
                                    -4 * nu_plus.kappa() - nu3.kappa(),
                                    4,
                                ));
                                term = &term * &self.w_two(&nu_plus, &nu3);
                                term = &term * &coeff;
                                total = &total + &term;
                            }
                        }
                    }
                }
            }
        }
        let out = &prefactor * &total;
        if self.may_store(self.w_tilde_memo.len()) {
            self.w_tilde_memo.insert(rho.clone(), out.clone());
        }
        out
    }
}

/// Determinant by Laplace expansion along the first row; fine for the
/// small matrices the dual Jacobi-Trudi formula produces.
pub fn determinant(mat: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = mat.len();
    if n == 0 {
        return ExactScalar::one();
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut total = ExactScalar::zero();
    for j in 0..n {
        if mat[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<ExactScalar>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut term = &mat[0][j] * &determinant(&minor);
        if j % 2 == 1 {
            term = -term;
        }
        total = &total + &term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    fn t(a: &[u32], b: &[u32], c: &[u32]) -> PartitionTriple {
        PartitionTriple::new(p(a), p(b), p(c))
    }

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(0), ExactScalar::zero());
        assert_eq!(bracket(1), s("q^(1/2) - q^(-1/2)"));
        for m in 1..=5 {
            assert_eq!(bracket(-m), -&bracket(m));
        }
    }

    #[test]
    fn w_one_examples() {
        let mut ctx = VertexCtx::new();
        assert_eq!(ctx.w_one(&p(&[])), ExactScalar::one());
        assert_eq!(ctx.w_one(&p(&[1])), s("q^(1/2)/(q-1)"));
        let expect = &ExactScalar::q_power(Ratio::new(1, 2))
            / &(&bracket(1) * &bracket(2));
        assert_eq!(ctx.w_one(&p(&[2])), expect);
    }

    #[test]
    fn e_series_examples() {
        let mut ctx = VertexCtx::new();
        let e = ctx.e_series(&p(&[]), 1);
        assert_eq!(e.coefficients, alloc::vec![s("1"), s("1/(q-1)")]);
        let e = ctx.e_series(&p(&[1]), 1);
        assert_eq!(
            e.coefficients,
            alloc::vec![s("1"), s("(q^2-q+1)/(q*(q-1))")]
        );
        let e = ctx.e_series(&p(&[2, 1]), 0);
        assert_eq!(e.coefficients, alloc::vec![ExactScalar::one()]);
    }

    #[test]
    fn schur_of_e_examples() {
        let mut ctx = VertexCtx::new();
        assert_eq!(ctx.schur_of_e(&p(&[]), &p(&[2])), ExactScalar::one());
        assert_eq!(
            ctx.schur_of_e(&p(&[1]), &p(&[1])),
            s("(q^2-q+1)/(q*(q-1))")
        );
        // nu = (1,1) is the 1x1 determinant e_2
        for mu in [p(&[]), p(&[1]), p(&[2, 1])] {
            let e2 = ctx.e_series(&mu, 2).coefficients[2].clone();
            assert_eq!(ctx.schur_of_e(&p(&[1, 1]), &mu), e2);
        }
    }

    #[test]
    fn w_two_examples_and_symmetry() {
        let mut ctx = VertexCtx::new();
        assert_eq!(
            ctx.w_two(&p(&[1]), &p(&[1])),
            s("(q^2-q+1)/(q-1)^2")
        );
        for n in 0..=3u32 {
            for mu in Partition::enumerate(n) {
                assert_eq!(ctx.w_two(&mu, &Partition::empty()), ctx.w_one(&mu));
                for m in 0..=3u32 {
                    for nu in Partition::enumerate(m) {
                        assert_eq!(ctx.w_two(&mu, &nu), ctx.w_two(&nu, &mu));
                    }
                }
            }
        }
    }

    #[test]
    fn w_three_examples() {
        let mut ctx = VertexCtx::new();
        assert_eq!(ctx.w_three(&t(&[], &[], &[])), ExactScalar::one());
        assert_eq!(
            ctx.w_three(&t(&[1], &[1], &[1])),
            s("(q^4-q^3+q^2-q+1)/(q^(1/2)*(q-1)^3)")
        );
    }

    #[test]
    fn w_three_two_leg_reduction() {
        // W_{mu,nu,0} = W_{0,mu,nu} = W_{nu,0,mu} = q^(kappa_nu/2) W_{mu,nu^t}
        let mut ctx = VertexCtx::new();
        for n in 0..=3u32 {
            for mu in Partition::enumerate(n) {
                for m in 0..=3u32 {
                    for nu in Partition::enumerate(m) {
                        let base = &ExactScalar::q_power(Ratio::new(nu.kappa(), 2))
                            * &ctx.w_two(&mu, &nu.transpose());
                        let e = Partition::empty();
                        let a = ctx.w_three(&PartitionTriple::new(
                            mu.clone(),
                            nu.clone(),
                            e.clone(),
                        ));
                        let b = ctx.w_three(&PartitionTriple::new(
                            e.clone(),
                            mu.clone(),
                            nu.clone(),
                        ));
                        let c = ctx.w_three(&PartitionTriple::new(nu.clone(), e, mu.clone()));
                        assert_eq!(a, base, "mu={mu} nu={nu}");
                        assert_eq!(b, base);
                        assert_eq!(c, base);
                    }
                }
            }
        }
    }

    #[test]
    fn w_tilde_examples() {
        let mut ctx = VertexCtx::new();
        assert_eq!(
            ctx.w_tilde(&t(&[1], &[1], &[1])),
            s("(q^4-q^3+q^2-q+1)/(q^(1/2)*(q-1)^3)")
        );
        assert_eq!(
            ctx.w_tilde(&t(&[2], &[2], &[2])),
            s("q*(q^10-3*q^8+3*q^7+2*q^6-5*q^5+2*q^4+3*q^3-3*q^2+1)/((q^2-1)^3*(q-1)^3)")
        );
    }

    #[test]
    fn w_tilde_empty_leg_matches_w_three() {
        let mut ctx = VertexCtx::new();
        for n in 0..=2u32 {
            for mu in Partition::enumerate(n) {
                for m in 0..=2u32 {
                    for nu in Partition::enumerate(m) {
                        let e = Partition::empty();
                        let tr =
                            PartitionTriple::new(mu.clone(), nu.clone(), e.clone());
                        assert_eq!(ctx.w_tilde(&tr), ctx.w_three(&tr), "{tr}");
                        let tr = PartitionTriple::new(mu.clone(), e.clone(), nu.clone());
                        assert_eq!(ctx.w_tilde(&tr), ctx.w_three(&tr), "{tr}");
                        let tr = PartitionTriple::new(e, mu.clone(), nu.clone());
                        assert_eq!(ctx.w_tilde(&tr), ctx.w_three(&tr), "{tr}");
                    }
                }
            }
        }
    }

    #[test]
    fn w_tilde_cyclic_small() {
        let mut ctx = VertexCtx::new();
        for tr in [t(&[1], &[2], &[1]), t(&[2], &[1], &[1, 1]), t(&[1], &[1], &[2])] {
            let a = ctx.w_tilde(&tr);
            let b = ctx.w_tilde(&tr.rotated());
            let c = ctx.w_tilde(&tr.rotated().rotated());
            assert_eq!(a, b, "{tr}");
            assert_eq!(a, c, "{tr}");
        }
    }

    #[test]
    fn determinant_small() {
        let m = alloc::vec![
            alloc::vec![s("1"), s("2")],
            alloc::vec![s("3"), s("4")],
        ];
        assert_eq!(determinant(&m), s("-2"));
        assert_eq!(determinant(&[]), ExactScalar::one());
    }

    /// The power-sum exponential identity behind the coupled sum in
    /// Wt. Every monomial in sight is p1_mu p3_{2 mu}, so a
    /// polynomial is a map from mu to its coefficient, truncated in
    /// |mu|.
    #[test]
    fn coupled_power_sum_exponential() {
        use alloc::collections::BTreeMap;
        use num_traits::One;
        const CAP: u64 = 8;
        type P = BTreeMap<Partition, BigRational>;
        let mul = |a: &P, b: &P| -> P {
            let mut out = P::new();
            for (x, cx) in a {
                for (y, cy) in b {
                    if x.size() + y.size() > CAP {
                        continue;
                    }
                    let entry = out.entry(x.union(y)).or_insert_with(BigRational::zero);
                    *entry += cx * cy;
                }
            }
            out
        };
        // the generator: sum over m of (-1)^(m-1)/m p1_m p3_{2m}
        let mut gen = P::new();
        for m in 1..=CAP {
            gen.insert(
                Partition::new([m as u32]),
                BigRational::new(if m % 2 == 1 { 1 } else { -1 }.into(), (m as i64).into()),
            );
        }
        let mut exp = P::new();
        exp.insert(Partition::empty(), BigRational::one());
        let mut power = exp.clone();
        let mut factorial = BigRational::one();
        for k in 1..=CAP {
            power = mul(&power, &gen);
            factorial = factorial * BigRational::from_integer((k as i64).into());
            for (mu, c) in &power {
                let entry = exp.entry(mu.clone()).or_insert_with(BigRational::zero);
                *entry += c / &factorial;
            }
        }
        for mu in Partition::enumerate_up_to(CAP as u32) {
            let sign = if (mu.size() - mu.len() as u64) % 2 == 0 {
                1
            } else {
                -1
            };
            let expected = BigRational::new(sign.into(), (mu.z() as i64).into());
            assert_eq!(exp.get(&mu), Some(&expected), "mu = {mu}");
        }
    }
}
