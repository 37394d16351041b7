//! Integer partitions: weights, conjugates, box removals, containment and the
//! graded enumeration that fixes the ordering of every Jack-basis matrix.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers. Trailing zeros are dropped
/// on construction, so structural equality is partition equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, rejecting increasing sequences. Zeros anywhere
    /// after the last positive part are removed.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self::from_sorted_unchecked(parts))
    }

    /// Sorts arbitrary nonnegative exponents into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted_unchecked(parts)
    }

    fn from_sorted_unchecked(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    /// The rectangle `(m, …, m)` with `n` rows.
    pub fn rectangle(m: usize, n: usize) -> Self {
        Self::from_sorted_unchecked(vec![m; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to exactly `n` entries. Panics if `n` is
    /// shorter than the partition.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        assert!(n >= self.len(), "cannot pad {self} to {n} entries");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (0..first).map(|j| self.0.iter().take_while(|&&p| p > j).count()).collect();
        Partition(parts)
    }

    /// `Σ_i (i−1) λ_i` with 1-based rows.
    pub fn b_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Removes one box from row `row` (0-based). `None` when the result is not
    /// a partition or the row is empty.
    pub fn lower(&self, row: usize) -> Option<Partition> {
        let current = self.part(row);
        if current == 0 || current - 1 < self.part(row + 1) {
            return None;
        }
        let mut parts = self.0.clone();
        parts[row] -= 1;
        Some(Self::from_sorted_unchecked(parts))
    }

    /// All valid single-box removals as `(row, lowered)`.
    pub fn lowerings(&self) -> impl Iterator<Item = (usize, Partition)> + '_ {
        (0..self.len()).filter_map(move |i| self.lower(i).map(|p| (i, p)))
    }

    /// `self ⊆ other` as Young diagrams.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Dominance order on partitions of the same weight: `self ≤ other`.
    pub fn is_dominated_by(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    /// `self + m·1_n`.
    pub fn add_columns(&self, m: usize, n: usize) -> Partition {
        let parts = self.padded(n).into_iter().map(|p| p + m).collect();
        Self::from_sorted_unchecked(parts)
    }

    /// Ordering used for every basis: weight first, then parts in decreasing
    /// lexicographic order. Within a weight this is a linear extension of
    /// dominance with the dominant partition first.
    pub fn graded_cmp(&self, other: &Partition) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2,1"`; the empty string (or `"()"`) is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad part `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Convenience constructor for literals in tests and examples.
#[macro_export]
macro_rules! part {
    () => { $crate::partitions::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::partitions::Partition::new(vec![$($p),+]).expect("literal partition")
    };
}

/// Partitions of `n` with at most `max_len` parts, in decreasing lexicographic
/// order.
pub fn partitions_of(n: usize, max_len: usize) -> Vec<Partition> {
    fn rec(rem: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `max_weight` with at most `max_len` parts,
/// in graded order.
pub fn partitions_up_to(max_weight: usize, max_len: usize) -> Vec<Partition> {
    (0..=max_weight).flat_map(|n| partitions_of(n, max_len)).collect()
}

/// All `μ ⊆ λ_max` with `ℓ(μ) ≤ n`, sorted by [`Partition::graded_cmp`].
pub fn enumerate_contained(lambda_max: &Partition, n: usize) -> Result<Vec<Partition>> {
    if lambda_max.len() > n {
        return Err(Error::TooManyParts { partition: lambda_max.clone(), len: lambda_max.len(), n_vars: n });
    }
    fn rec(bound: &[usize], row: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if row == bound.len() {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
            return;
        }
        for p in 0..=bound[row].min(prev) {
            cur.push(p);
            rec(bound, row + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda_max.parts(), 0, usize::MAX, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.graded_cmp(b));
    Ok(out)
}

/// Distinct permutations of `v`, starting from the lexicographically smallest.
pub fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next_permutation
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Number of distinct arrangements of the parts of `mu` padded to `n` slots,
/// i.e. `m_μ(1_n)`.
pub fn monomial_count(mu: &Partition, n: usize) -> u128 {
    if mu.len() > n {
        return 0;
    }
    let padded = mu.padded(n);
    let mut result: u128 = 1;
    // multinomial n! / ∏ mult!, built incrementally to stay exact
    let mut placed = 0u128;
    let mut i = 0;
    while i < padded.len() {
        let mut j = i;
        while j < padded.len() && padded[j] == padded[i] {
            j += 1;
        }
        for k in 1..=(j - i) as u128 {
            placed += 1;
            result = result * placed / k;
        }
        i = j;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn conjugate_examples() {
        assert_eq!(part![].conjugate(), part![]);
        assert_eq!(part![2, 1].conjugate(), part![2, 1]);
        assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
        assert_eq!(part![4, 2, 2].conjugate(), part![3, 3, 1, 1]);
    }

    #[test]
    fn b_stat_examples() {
        assert_eq!(part![5].b_stat(), 0);
        assert_eq!(part![2, 1].b_stat(), 1);
        assert_eq!(part![1, 1, 1].b_stat(), 3);
    }

    #[test]
    fn lower_examples() {
        assert_eq!(part![2, 1].lower(0), Some(part![1, 1]));
        assert_eq!(part![2, 2].lower(0), None);
        assert_eq!(part![1].lower(0), Some(part![]));
        assert_eq!(part![1].lower(3), None);
    }

    #[test]
    fn enumerate_contained_examples() {
        assert_eq!(enumerate_contained(&part![1], 1).unwrap(), vec![part![], part![1]]);
        assert_eq!(enumerate_contained(&part![2, 1], 2).unwrap(), vec![part![], part![1], part![2], part![1, 1], part![2, 1]]);
        assert!(enumerate_contained(&part![1, 1], 1).is_err());
        assert_eq!(enumerate_contained(&part![], 3).unwrap(), vec![part![]]);
    }

    #[test]
    fn enumerate_contained_respects_length_through_bound() {
        // ℓ(μ) ≤ ℓ(λ_max) ≤ N, so the N filter never removes anything once the
        // precondition holds; a longer N changes nothing.
        let a = enumerate_contained(&part![3, 2], 2).unwrap();
        let b = enumerate_contained(&part![3, 2], 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), part![2, 1]);
        assert_eq!("".parse::<Partition>().unwrap(), part![]);
        assert_eq!("3,0".parse::<Partition>().unwrap(), part![3]);
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(part![3, 1, 1].to_string(), "3,1,1");
        assert_eq!(part![].to_string(), "");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n, n.max(1)).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_of(6, 2).len(), 4);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(&part![], 3), 1);
        assert_eq!(monomial_count(&part![1], 4), 4);
        assert_eq!(monomial_count(&part![2, 1], 3), 6);
        assert_eq!(monomial_count(&part![1, 1], 4), 6);
        assert_eq!(monomial_count(&part![1, 1, 1], 2), 0);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[1, 1, 0, 0]).len(), 6);
    }

    fn arb_partition(max_weight: usize) -> impl Strategy<Value = Partition> {
        (0..=max_weight).prop_flat_map(|n| {
            let all = partitions_of(n, n.max(1));
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(l in arb_partition(10)) {
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().weight(), l.weight());
        }

        #[test]
        fn b_stat_of_conjugate_counts_column_pairs(l in arb_partition(8)) {
            let direct: usize = l.parts().iter().map(|&p| p * p.saturating_sub(1) / 2).sum();
            prop_assert_eq!(l.conjugate().b_stat(), direct);
        }

        #[test]
        fn contained_set_closed_under_lowering(l in arb_partition(7), extra in 0usize..2) {
            let n = l.len() + extra;
            let set = enumerate_contained(&l, n.max(1)).unwrap();
            for mu in &set {
                for (_, low) in mu.lowerings() {
                    prop_assert!(set.contains(&low));
                }
            }
        }

        #[test]
        fn contained_count_matches_box_lattice(l in arb_partition(8)) {
            let n = l.len().max(1);
            let set = enumerate_contained(&l, n).unwrap();
            // brute force over the box [0, λ_1]^n
            let mut count = 0;
            let bound = l.part(0);
            let mut v = vec![0usize; n];
            loop {
                let ok = v.windows(2).all(|w| w[0] >= w[1])
                    && v.iter().enumerate().all(|(i, &x)| x <= l.part(i));
                if ok { count += 1; }
                let mut k = 0;
                while k < n && v[k] == bound { v[k] = 0; k += 1; }
                if k == n { break; }
                v[k] += 1;
            }
            prop_assert_eq!(set.len(), count);
        }
    }
}
