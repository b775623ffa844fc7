//! Integer partitions and the scalar statistics attached to them:
//! transpose, kappa, centralizer order `z`, automorphism count,
//! unions, doubling and exhaustive enumeration.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// A partition: weakly decreasing list of positive integers.
///
/// The empty list is the empty partition. Values are normalized at
/// construction, so equality and ordering are plain structural
/// comparisons and partitions can be used directly as map keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from arbitrary parts; zeros are dropped and
    /// the rest sorted into weakly decreasing order.
    pub fn new<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |mu|, the number being partitioned.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// l(mu), the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicity of the part `j` in this partition.
    pub fn multiplicity(&self, j: u32) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// The transpose (conjugate) partition.
    pub fn transpose(&self) -> Partition {
        let mut t = Vec::new();
        if let Some(&first) = self.parts.first() {
            for col in 1..=first {
                let height = self.parts.iter().filter(|&&p| p >= col).count() as u32;
                t.push(height);
            }
        }
        Partition { parts: t }
    }

    /// kappa(mu) = sum mu_i (mu_i - 2i + 1); always even, and
    /// kappa(transpose) = -kappa.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                let i = (i + 1) as i64;
                p * (p - 2 * i + 1)
            })
            .sum()
    }

    /// |Aut(mu)| = product over part values of m_j(mu)!.
    pub fn aut(&self) -> u64 {
        let mut acc: u64 = 1;
        let mut run = 0u64;
        let mut prev = 0u32;
        for &p in &self.parts {
            if p == prev {
                run += 1;
            } else {
                run = 1;
                prev = p;
            }
            acc *= run;
        }
        acc
    }

    /// a(mu) = product of the parts.
    pub fn part_product(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).product()
    }

    /// z(mu) = a(mu) * |Aut(mu)|, the order of the centralizer of a
    /// permutation of cycle type mu.
    pub fn z(&self) -> u64 {
        self.part_product() * self.aut()
    }

    /// Multiset union of the parts of two partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::new(self.parts.iter().chain(other.parts.iter()).copied())
    }

    /// The partition 2*mu: each part doubled.
    pub fn double(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| 2 * p).collect(),
        }
    }

    /// True when `inner` fits inside `self` part by part.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.parts.get(i).is_some_and(|&q| q >= p))
    }

    /// All partitions of `n`, in lexicographically decreasing order
    /// starting from `(n)`. The order is fixed so sweeps are
    /// deterministic.
    pub fn enumerate(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn go(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            let mut p = remaining.min(max_part);
            while p >= 1 {
                current.push(p);
                go(remaining - p, p, current, out);
                current.pop();
                p -= 1;
            }
        }
        go(n, n.max(1), &mut current, &mut out);
        out
    }

    /// All partitions of every size from 0 through `n`, enumeration
    /// order within each size as in [`Partition::enumerate`].
    pub fn enumerate_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::enumerate).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as comma-separated parts, `[]` for the empty partition.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "[]");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsePartitionError {
    pub input: String,
}

impl fmt::Display for ParsePartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid partition: {:?}", self.input)
    }
}

/// Parses `"2,1"`; `"[]"` and the empty string give the empty partition.
impl FromStr for Partition {
    type Err = ParsePartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "[]" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let p: u32 = piece.trim().parse().map_err(|_| ParsePartitionError {
                input: String::from(s),
            })?;
            if p == 0 {
                return Err(ParsePartitionError {
                    input: String::from(s),
                });
            }
            parts.push(p);
        }
        Ok(Partition::new(parts))
    }
}

/// An ordered triple of partitions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartitionTriple(pub [Partition; 3]);

impl PartitionTriple {
    pub fn new(a: Partition, b: Partition, c: Partition) -> Self {
        PartitionTriple([a, b, c])
    }

    /// l(mu-vec) = sum of the three lengths.
    pub fn len(&self) -> usize {
        self.0.iter().map(Partition::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Partition::is_empty)
    }

    pub fn total_size(&self) -> u64 {
        self.0.iter().map(Partition::size).sum()
    }

    /// |Aut(mu-vec)| = product of the three automorphism counts.
    pub fn aut(&self) -> u64 {
        self.0.iter().map(Partition::aut).product()
    }

    /// Cyclic rotation (mu2, mu3, mu1).
    pub fn rotated(&self) -> PartitionTriple {
        let [a, b, c] = self.0.clone();
        PartitionTriple([b, c, a])
    }
}

impl fmt::Debug for PartitionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for PartitionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|{})", self.0[0], self.0[1], self.0[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn transpose_examples() {
        assert_eq!(
            Partition::new([3]).transpose(),
            Partition::new([1, 1, 1])
        );
        assert_eq!(Partition::new([2, 1]).transpose(), Partition::new([2, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(Partition::new([1]).kappa(), 0);
        assert_eq!(Partition::new([2]).kappa(), 2);
        assert_eq!(Partition::new([2, 1]).kappa(), 0);
    }

    #[test]
    fn stats_examples() {
        let p = Partition::new([1, 1]);
        assert_eq!((p.z(), p.aut(), p.part_product()), (2, 2, 1));
        let p = Partition::new([2, 1]);
        assert_eq!((p.z(), p.aut(), p.part_product()), (2, 1, 2));
        let p = Partition::new([2, 2, 1, 1]);
        assert_eq!((p.z(), p.aut(), p.part_product()), (16, 4, 4));
    }

    #[test]
    fn union_and_double() {
        assert_eq!(
            Partition::new([2, 1]).union(&Partition::new([3, 1])),
            Partition::new([3, 2, 1, 1])
        );
        assert_eq!(Partition::new([2, 1]).double(), Partition::new([4, 2]));
        assert_eq!(
            Partition::empty().union(&Partition::new([2, 1])),
            Partition::new([2, 1])
        );
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(Partition::enumerate(0), vec![Partition::empty()]);
        assert_eq!(Partition::enumerate(4).len(), 5);
        assert_eq!(Partition::enumerate(6).len(), 11);
        // lexicographically decreasing from (n)
        let ps = Partition::enumerate(4);
        assert_eq!(ps[0], Partition::new([4]));
        assert_eq!(ps[4], Partition::new([1, 1, 1, 1]));
        for w in ps.windows(2) {
            assert!(w[0].parts() > w[1].parts());
        }
    }

    #[test]
    fn transpose_involution_and_kappa_sign() {
        for n in 0..=10u32 {
            for mu in Partition::enumerate(n) {
                let t = mu.transpose();
                assert_eq!(t.transpose(), mu);
                assert_eq!(t.kappa(), -mu.kappa());
                assert_eq!(t.size(), mu.size());
                assert_eq!(t.len() as u32, mu.parts().first().copied().unwrap_or(0));
                assert_eq!(mu.kappa() % 2, 0);
            }
        }
    }

    #[test]
    fn class_equation() {
        // sum over partitions of n of n!/z_mu = n!
        for n in 1..=10u32 {
            let fact: u64 = (1..=n as u64).product();
            let total: u64 = Partition::enumerate(n).iter().map(|mu| fact / mu.z()).sum();
            assert_eq!(total, fact);
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Partition::new([2, 1]).to_string(), "2,1");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("2,1".parse::<Partition>().unwrap(), Partition::new([2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("0".parse::<Partition>().is_err());
        assert!("a,b".parse::<Partition>().is_err());
    }

    #[test]
    fn triple_stats() {
        let t = PartitionTriple::new(
            Partition::new([2, 1]),
            Partition::new([1, 1]),
            Partition::empty(),
        );
        assert_eq!(t.len(), 4);
        assert_eq!(t.aut(), 2);
    }
}
