//! Permutations of point sets, longest monotone subsequences and the exact
//! probability that a uniform permutation has a long monotone subsequence.

mod bounds;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::Execution;

pub use bounds::{
    e_interval, stirling_chain, theorem_threshold, union_bound, ChainReport, ChainStep, Threshold, UnionBound,
};

/// Largest `m` accepted by [`exact_monotone_probability`].
pub const MAX_EXACT_M: usize = 9;

/// A permutation of `1..=m`, stored one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let m = values.len();
        let mut seen = vec![false; m + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > m || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Precondition(format!(
                    "{values:?} is not a permutation of 1..={m}"
                )));
            }
        }
        Ok(Permutation(values))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((1..=m as u32).collect())
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn reversed(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// `v -> m + 1 - v`.
    pub fn complemented(&self) -> Self {
        let m = self.0.len() as u32;
        Permutation(self.0.iter().map(|&v| m + 1 - v).collect())
    }
}

/// `perm(U)`: sort by x, then replace each y by its rank (1 = lowest).
pub fn perm_of(points: &[Point]) -> Result<Permutation> {
    let mut by_x: Vec<Point> = points.to_vec();
    by_x.sort_unstable_by_key(|p| p.x);
    if let Some(w) = by_x.windows(2).find(|w| w[0].x == w[1].x) {
        return Err(Error::DuplicateCoordinate {
            axis: 'x',
            value: w[0].x,
        });
    }
    let mut order: Vec<usize> = (0..by_x.len()).collect();
    order.sort_unstable_by_key(|&i| by_x[i].y);
    if let Some(w) = order.windows(2).find(|w| by_x[w[0]].y == by_x[w[1]].y) {
        return Err(Error::DuplicateCoordinate {
            axis: 'y',
            value: by_x[w[0]].y,
        });
    }
    let mut ranks = vec![0u32; by_x.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank as u32 + 1;
    }
    Ok(Permutation::from_vec_unchecked(ranks))
}

/// Longest strictly increasing subsequence of `values` by patience sorting.
pub(crate) fn lis_of<T: Ord + Copy>(values: impl IntoIterator<Item = T>) -> usize {
    let mut tails: Vec<T> = Vec::new();
    for x in values {
        let i = tails.partition_point(|&t| t < x);
        if i == tails.len() {
            tails.push(x);
        } else {
            tails[i] = x;
        }
    }
    tails.len()
}

pub fn lis(p: &Permutation) -> usize {
    lis_of(p.0.iter().copied())
}

pub fn lds(p: &Permutation) -> usize {
    lis_of(p.0.iter().map(|&v| std::cmp::Reverse(v)))
}

/// `max(lis, lds)`.
pub fn longest_monotone(p: &Permutation) -> usize {
    lis(p).max(lds(p))
}

/// Exact `P(max(lis, lds) >= ell)` for a uniform permutation of `1..=m`, by
/// enumerating all `m!` permutations.
pub fn exact_monotone_probability(m: usize, ell: usize) -> Result<BigRational> {
    exact_monotone_probability_with(m, ell, Execution::default())
}

pub fn exact_monotone_probability_with(m: usize, ell: usize, exec: Execution) -> Result<BigRational> {
    if m > MAX_EXACT_M {
        return Err(Error::TooLarge(m));
    }
    if m == 0 || ell == 0 || ell > m {
        return Err(Error::Precondition(format!(
            "need 1 <= ell <= m, got m={m}, ell={ell}"
        )));
    }
    // Split the space by the first entry.
    let hits = exec.map_reduce(
        m as u64,
        |first| {
            let first = first as u32 + 1;
            let mut rest: Vec<u32> = (1..=m as u32).filter(|&v| v != first).collect();
            let mut buf = Vec::with_capacity(m);
            let mut count = 0u64;
            for_each_permutation(&mut rest, |tail| {
                buf.clear();
                buf.push(first);
                buf.extend_from_slice(tail);
                let longest =
                    lis_of(buf.iter().copied()).max(lis_of(buf.iter().map(|&v| std::cmp::Reverse(v))));
                if longest >= ell {
                    count += 1;
                }
            });
            count
        },
        0u64,
        |a, b| a + b,
    );
    let total: u64 = (1..=m as u64).product();
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Heap's algorithm; visits every arrangement of `items` exactly once.
pub(crate) fn for_each_permutation<T, F: FnMut(&[T])>(items: &mut [T], mut visit: F) {
    let n = items.len();
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// Oracle: check every subset.
    fn brute_force(p: &[u32]) -> (usize, usize) {
        let m = p.len();
        let (mut inc, mut dec) = (0, 0);
        for mask in 0u32..(1 << m) {
            let sub: Vec<u32> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| p[i]).collect();
            let size = sub.len();
            if sub.windows(2).all(|w| w[0] < w[1]) {
                inc = inc.max(size);
            }
            if sub.windows(2).all(|w| w[0] > w[1]) {
                dec = dec.max(size);
            }
        }
        (inc, dec)
    }

    #[test]
    fn perm_of_examples() {
        let pts = |v: &[(i64, i64)]| v.iter().map(|&p| p.into()).collect::<Vec<Point>>();
        assert_eq!(
            perm_of(&pts(&[(1, 5), (2, 1), (3, 9)])).unwrap(),
            perm(&[2, 1, 3])
        );
        let stairs: Vec<Point> = (1..=6).map(|i| Point::new(i, i)).collect();
        assert_eq!(perm_of(&stairs).unwrap(), Permutation::identity(6));
        let anti: Vec<Point> = (1..=6).map(|i| Point::new(i, 7 - i)).collect();
        assert_eq!(perm_of(&anti).unwrap(), Permutation::identity(6).reversed());
        // Input order is irrelevant.
        assert_eq!(
            perm_of(&pts(&[(3, 9), (1, 5), (2, 1)])).unwrap(),
            perm(&[2, 1, 3])
        );
        assert_eq!(
            perm_of(&pts(&[(1, 5), (2, 5)])),
            Err(Error::DuplicateCoordinate { axis: 'y', value: 5 })
        );
        assert_eq!(perm_of(&[]).unwrap(), Permutation::identity(0));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
        assert!(Permutation::new(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn lis_examples() {
        let p = perm(&[1, 2, 3, 4, 5]);
        assert_eq!((lis(&p), lds(&p)), (5, 1));
        assert_eq!(brute_force(&[2, 4, 1, 3]), (2, 2));
        let p = perm(&[2, 4, 1, 3]);
        assert_eq!((lis(&p), lds(&p)), (2, 2));
        assert_eq!(brute_force(&[5, 1, 4, 2, 3]), (3, 3));
        let p = perm(&[5, 1, 4, 2, 3]);
        assert_eq!((lis(&p), lds(&p)), (3, 3));
        assert_eq!(lis(&Permutation::identity(0)), 0);
    }

    #[test]
    fn heap_enumeration_is_complete() {
        let mut items = vec![1, 2, 3, 4, 5];
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(&mut items, |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn exact_probability_examples() {
        assert!(exact_monotone_probability(3, 2).unwrap().is_one());
        assert_eq!(
            exact_monotone_probability(4, 4).unwrap(),
            BigRational::new(1.into(), 12.into())
        );
        assert!(exact_monotone_probability(5, 1).unwrap().is_one());
        assert_eq!(exact_monotone_probability(10, 2), Err(Error::TooLarge(10)));
        assert!(exact_monotone_probability(4, 5).is_err());
        assert!(exact_monotone_probability(4, 0).is_err());
    }

    #[test]
    fn exact_probability_independent_of_execution() {
        for m in 1..=7 {
            for ell in 1..=m {
                assert_eq!(
                    exact_monotone_probability_with(m, ell, Execution::Sequential).unwrap(),
                    exact_monotone_probability_with(m, ell, Execution::Parallel { workers: Some(3) })
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn erdos_szekeres_product_all_small() {
        for m in 1..=8u32 {
            let mut items: Vec<u32> = (1..=m).collect();
            for_each_permutation(&mut items, |v| {
                let p = Permutation::from_vec_unchecked(v.to_vec());
                assert!(lis(&p) * lds(&p) >= m as usize);
                assert_eq!(lis(&p.reversed()), lds(&p));
            });
        }
    }

    fn shuffled(max: usize) -> impl Strategy<Value = Vec<u32>> {
        (1..=max).prop_flat_map(|m| Just((1..=m as u32).collect::<Vec<_>>()).prop_shuffle())
    }

    proptest! {
        #[test]
        fn product_and_duality(v in shuffled(2000)) {
            let p = Permutation::new(v).unwrap();
            let m = p.len();
            prop_assert!(lis(&p) * lds(&p) >= m);
            prop_assert!(longest_monotone(&p) * longest_monotone(&p) >= m);
            prop_assert_eq!(lis(&p.reversed()), lds(&p));
            prop_assert_eq!(lds(&p.complemented()), lis(&p));
        }

        #[test]
        fn rank_invariance(pts in proptest::collection::btree_map(-1000i64..1000, -1000i64..1000, 1..60),
                           scale in 1i64..1000) {
            let mut ys = std::collections::HashSet::new();
            let points: Vec<Point> = pts.into_iter()
                .filter(|&(_, y)| ys.insert(y))
                .map(|(x, y)| Point::new(x, y))
                .collect();
            let scaled: Vec<Point> = points.iter().map(|p| Point::new(p.x * scale, p.y * scale)).collect();
            prop_assert_eq!(perm_of(&points).unwrap(), perm_of(&scaled).unwrap());
        }
    }
}
