//! Symmetric group characters and Littlewood-Richardson coefficients.
//!
//! Characters come from the Murnaghan-Nakayama rule, implemented on
//! beta-numbers so border-strip removal is a single subtraction. LR
//! coefficients count lattice skew tableaux directly. Both are
//! memoized inside [`SymFns`]; keeping the caches in a context struct
//! rather than globals lets callers run independent computations on
//! separate threads.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeMismatch {
    pub shape: u64,
    pub class: u64,
}

impl fmt::Display for SizeMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "character size mismatch: shape of {} against class of {}",
            self.shape, self.class
        )
    }
}

/// Memoizing context for character and LR computations.
#[derive(Default)]
pub struct SymFns {
    char_memo: BTreeMap<(Partition, Partition), i64>,
    lr_memo: BTreeMap<(Partition, Partition, Partition), u64>,
    cache_limit: Option<usize>,
}

impl SymFns {
    pub fn new() -> Self {
        SymFns::default()
    }

    /// Best-effort bound on entries kept per memo table. When the
    /// bound is hit, further results are recomputed instead of stored.
    pub fn with_cache_limit(limit: usize) -> Self {
        SymFns {
            cache_limit: Some(limit),
            ..SymFns::default()
        }
    }

    fn may_store(&self, len: usize) -> bool {
        self.cache_limit.is_none_or(|l| len < l)
    }

    /// chi_nu(mu), the irreducible character of S_n indexed by the
    /// shape `nu` at the conjugacy class `mu`. The sizes must agree.
    pub fn character(&mut self, nu: &Partition, mu: &Partition) -> Result<i64, SizeMismatch> {
        if nu.size() != mu.size() {
            return Err(SizeMismatch {
                shape: nu.size(),
                class: mu.size(),
            });
        }
        Ok(self.character_rec(nu, mu))
    }

    fn character_rec(&mut self, nu: &Partition, mu: &Partition) -> i64 {
        if mu.is_empty() {
            return 1;
        }
        let key = (nu.clone(), mu.clone());
        if let Some(&v) = self.char_memo.get(&key) {
            return v;
        }
        let t = mu.parts()[0] as i64;
        let rest = Partition::new(mu.parts()[1..].iter().copied());
        let beta = beta_numbers(nu);
        let mut total = 0i64;
        for (i, &b) in beta.iter().enumerate() {
            let nb = b - t;
            if nb < 0 || beta.contains(&nb) {
                continue;
            }
            let height = beta.iter().filter(|&&c| nb < c && c < b).count();
            let sign = if height % 2 == 0 { 1 } else { -1 };
            let mut nbeta = beta.clone();
            nbeta[i] = nb;
            let lam = partition_from_beta(&nbeta);
            total += sign * self.character_rec(&lam, &rest);
        }
        if self.may_store(self.char_memo.len()) {
            self.char_memo.insert(key, total);
        }
        total
    }

    /// chi_nu(mu) / z_mu as an exact rational.
    pub fn character_over_z(
        &mut self,
        nu: &Partition,
        mu: &Partition,
    ) -> Result<BigRational, SizeMismatch> {
        let chi = self.character(nu, mu)?;
        Ok(BigRational::new(chi.into(), mu.z().into()))
    }

    /// The Littlewood-Richardson coefficient c^eta_{mu nu}.
    pub fn lr_coefficient(&mut self, eta: &Partition, mu: &Partition, nu: &Partition) -> u64 {
        if eta.size() != mu.size() + nu.size() || !eta.contains(mu) {
            return 0;
        }
        if nu.is_empty() {
            return u64::from(eta == mu);
        }
        let key = (eta.clone(), mu.clone(), nu.clone());
        if let Some(&v) = self.lr_memo.get(&key) {
            return v;
        }
        let v = count_lr_tableaux(eta, mu, nu);
        if self.may_store(self.lr_memo.len()) {
            self.lr_memo.insert(key, v);
        }
        v
    }

    /// sum over eta of c^{mu1}_{eta rho1} * c^{mu3^t}_{eta rho3^t},
    /// the pairing that couples the first and third legs of the
    /// three-partition vertex.
    pub fn lr_double(
        &mut self,
        mu1: &Partition,
        mu3: &Partition,
        rho1: &Partition,
        rho3: &Partition,
    ) -> u64 {
        let (s1, s3) = (
            mu1.size().checked_sub(rho1.size()),
            mu3.size().checked_sub(rho3.size()),
        );
        let (Some(s1), Some(s3)) = (s1, s3) else {
            return 0;
        };
        if s1 != s3 {
            return 0;
        }
        let mu3t = mu3.transpose();
        let rho3t = rho3.transpose();
        let mut total = 0;
        for eta in Partition::enumerate(s1 as u32) {
            let a = self.lr_coefficient(mu1, &eta, rho1);
            if a == 0 {
                continue;
            }
            total += a * self.lr_coefficient(&mu3t, &eta, &rho3t);
        }
        total
    }
}

/// Strictly decreasing beta-set nu_i + (l - i), 1-indexed i.
fn beta_numbers(nu: &Partition) -> Vec<i64> {
    let l = nu.len();
    nu.parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
        .collect()
}

fn partition_from_beta(beta: &[i64]) -> Partition {
    let mut sorted: Vec<i64> = beta.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let l = sorted.len();
    Partition::new(
        sorted
            .iter()
            .enumerate()
            .map(|(i, &b)| (b - (l - 1 - i) as i64) as u32),
    )
}

/// Counts LR skew tableaux of shape eta/mu and content nu: rows
/// weakly increase, columns strictly increase, and the reverse
/// reading word is a lattice word. Cells are filled in reverse
/// reading order so the lattice condition prunes as we go.
fn count_lr_tableaux(eta: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let rows = eta.len();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for r in 0..rows {
        let lo = if r < mu.len() { mu.parts()[r] } else { 0 } as usize;
        let hi = eta.parts()[r] as usize;
        for c in (lo..hi).rev() {
            cells.push((r, c));
        }
    }
    let values = nu.len();
    let mut counts = alloc::vec![0u32; values];
    let mut grid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        eta: &Partition,
        mu: &Partition,
        nu: &Partition,
        counts: &mut [u32],
        grid: &mut BTreeMap<(usize, usize), usize>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 0..counts.len() {
            if counts[v] >= nu.parts()[v] {
                continue;
            }
            // lattice word: never more v+1's than v's at any prefix
            if v > 0 && counts[v] >= counts[v - 1] {
                continue;
            }
            // row weakly increasing: right neighbor already placed
            if let Some(&right) = grid.get(&(r, c + 1)) {
                if v > right {
                    continue;
                }
            }
            // column strictly increasing against the cell above, when
            // that cell is part of the skew shape
            if r > 0 {
                let above_lo = if r - 1 < mu.len() {
                    mu.parts()[r - 1] as usize
                } else {
                    0
                };
                if c >= above_lo {
                    if eta.parts()[r - 1] as usize <= c {
                        continue; // no cell above inside eta: impossible shape
                    }
                    let above = grid[&(r - 1, c)];
                    if v <= above {
                        continue;
                    }
                }
            }
            counts[v] += 1;
            grid.insert((r, c), v);
            total += go(idx + 1, cells, eta, mu, nu, counts, grid);
            grid.remove(&(r, c));
            counts[v] -= 1;
        }
        total
    }
    go(0, &cells, eta, mu, nu, &mut counts, &mut grid)
}
