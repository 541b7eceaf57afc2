//! Row-permuted matrices with distinct column sums (DCS).
//!
//! A row-permuted matrix over a tuple of pairwise-distinct values has rows
//! that are distinct permutations of the tuple. Internally every row is kept
//! as a list of *ranks*: rank 0 is the largest value, rank `n - 1` the
//! smallest. The caller's original order is recovered through
//! [`RowPermutedMatrix::row_permutations`].

use std::collections::{BTreeSet, HashSet};
use std::fmt::Debug;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest tuple length for which all `n!` permutations (or all `(n-1)!`
/// cyclic blocks) are materialized.
pub const MAX_ENUMERATION_LEN: usize = 9;

/// Elements of an ordered abelian group, as far as the constructions need.
pub trait GroupValue: Clone + Ord + Zero + Debug {}

impl<T: Clone + Ord + Zero + Debug> GroupValue for T {}

/// A tuple of pairwise-distinct values together with its descending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedValues<T> {
    original: Vec<T>,
    /// `by_rank[r]` is the original index of the value of rank `r`.
    by_rank: Vec<usize>,
}

impl<T: GroupValue> OrderedValues<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::domain(format!(
                "need at least 2 values (got {})",
                values.len()
            )));
        }
        let mut by_rank: Vec<usize> = (0..values.len()).collect();
        by_rank.sort_by(|&a, &b| values[b].cmp(&values[a]));
        if by_rank.windows(2).any(|w| values[w[0]] == values[w[1]]) {
            return Err(Error::domain("values must be pairwise distinct"));
        }
        Ok(OrderedValues {
            original: values,
            by_rank,
        })
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }

    pub fn original(&self) -> &[T] {
        &self.original
    }

    /// Value of rank `r` (`a_{r+1}` when the values are written
    /// `a_1 > a_2 > ...`).
    pub fn ranked(&self, r: usize) -> &T {
        &self.original[self.by_rank[r]]
    }

    /// Values sorted in descending order.
    pub fn descending(&self) -> Vec<T> {
        (0..self.len()).map(|r| self.ranked(r).clone()).collect()
    }
}

/// A `k x n` matrix whose rows are distinct permutations of a value tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPermutedMatrix<T> {
    values: OrderedValues<T>,
    ranks: Vec<Vec<usize>>,
}

impl<T: GroupValue> RowPermutedMatrix<T> {
    /// Wraps rank rows, checking that each is a permutation and that no row
    /// repeats.
    pub fn from_rank_rows(values: OrderedValues<T>, ranks: Vec<Vec<usize>>) -> Result<Self> {
        let n = values.len();
        let mut seen = HashSet::new();
        for row in &ranks {
            let mut sorted = row.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::domain(format!(
                    "{row:?} is not a permutation of 0..{n}"
                )));
            }
            if !seen.insert(row.clone()) {
                return Err(Error::domain(format!("row {row:?} appears twice")));
            }
        }
        Ok(RowPermutedMatrix { values, ranks })
    }

    pub fn values(&self) -> &OrderedValues<T> {
        &self.values
    }

    pub fn num_rows(&self) -> usize {
        self.ranks.len()
    }

    pub fn num_cols(&self) -> usize {
        self.values.len()
    }

    /// Rows as rank indices (0 = largest value).
    pub fn rank_rows(&self) -> &[Vec<usize>] {
        &self.ranks
    }

    /// Rows as 1-based rank indices, `j` standing for `a_j`.
    pub fn one_based_rank_rows(&self) -> Vec<Vec<usize>> {
        self.ranks
            .iter()
            .map(|r| r.iter().map(|&x| x + 1).collect())
            .collect()
    }

    /// Rows as indices into the caller's original value tuple.
    pub fn row_permutations(&self) -> Vec<Vec<usize>> {
        self.ranks
            .iter()
            .map(|r| r.iter().map(|&x| self.values.by_rank[x]).collect())
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.ranks
            .iter()
            .map(|r| r.iter().map(|&x| self.values.ranked(x).clone()).collect())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<T> {
        let mut sums = vec![T::zero(); self.num_cols()];
        for row in &self.ranks {
            for (s, &x) in sums.iter_mut().zip(row) {
                *s = s.clone() + self.values.ranked(x).clone();
            }
        }
        sums
    }

    /// All permutations of the tuple that are not rows of `self`.
    pub fn complement(&self) -> Result<Self> {
        let n = self.num_cols();
        if n > MAX_ENUMERATION_LEN {
            return Err(Error::budget(
                format!("complement needs all {n}! permutations (cap n = {MAX_ENUMERATION_LEN})"),
                None,
            ));
        }
        let present: HashSet<&Vec<usize>> = self.ranks.iter().collect();
        let ranks = (0..n)
            .permutations(n)
            .filter(|p| !present.contains(p))
            .collect();
        Ok(RowPermutedMatrix {
            values: self.values.clone(),
            ranks,
        })
    }
}

/// True iff every row is a permutation of `values`, no two rows coincide and
/// the column sums are pairwise distinct.
pub fn verify_dcs<T: GroupValue>(rows: &[Vec<T>], values: &[T]) -> bool {
    let mut sorted_values = values.to_vec();
    sorted_values.sort();
    let mut seen = BTreeSet::new();
    for row in rows {
        let mut r = row.clone();
        r.sort();
        if r != sorted_values || !seen.insert(row.clone()) {
            return false;
        }
    }
    let mut sums = vec![T::zero(); values.len()];
    for row in rows {
        for (s, x) in sums.iter_mut().zip(row) {
            *s = s.clone() + x.clone();
        }
    }
    sums.sort();
    sums.windows(2).all(|w| w[0] != w[1])
}

/// Rank rows of the `s`-row pattern acting on the first `s` of `n` ranks:
/// row `i` (1-based) keeps ranks below `s - i`, moves rank `s - 1` to
/// position `s - i` and shifts the ranks in between one step right. Ranks
/// `s..n` stay in place. Column sums come out strictly decreasing.
fn shifted_rank_rows(s: usize, n: usize) -> Vec<Vec<usize>> {
    (1..=s)
        .map(|i| {
            let mut row: Vec<usize> = (0..n).collect();
            let hole = s - i;
            for (j, slot) in row.iter_mut().enumerate().take(s) {
                *slot = match j.cmp(&hole) {
                    std::cmp::Ordering::Less => j,
                    std::cmp::Ordering::Equal => s - 1,
                    std::cmp::Ordering::Greater => j - 1,
                };
            }
            row
        })
        .collect()
}

/// `k x k` matrix of `k >= 3` distinct values whose column sums are strictly
/// decreasing: the identity row followed by the cycles moving the smallest
/// value one position further left each time.
pub fn lemma_rows<T: GroupValue>(values: &OrderedValues<T>) -> Result<RowPermutedMatrix<T>> {
    let k = values.len();
    if k < 3 {
        return Err(Error::domain(format!(
            "the square construction needs at least 3 values (got {k})"
        )));
    }
    Ok(RowPermutedMatrix {
        values: values.clone(),
        ranks: shifted_rank_rows(k, k),
    })
}

/// `n!` as `u64`, or `None` on overflow.
pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, x| acc.checked_mul(x))
}

/// Lexicographically least rotation of a permutation of ranks (the one
/// starting at rank 0).
fn canonical_rotation(row: &[usize]) -> Vec<usize> {
    let start = row.iter().position(|&x| x == 0).unwrap_or(0);
    row[start..].iter().chain(&row[..start]).copied().collect()
}

/// Canonical representatives of cyclic blocks of length `n`, streamed in
/// lexicographic order: rank 0 followed by each permutation of `1..n`.
fn cyclic_block_reps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..n).permutations(n - 1).map(|tail| {
        let mut rep = Vec::with_capacity(tail.len() + 1);
        rep.push(0);
        rep.extend(tail);
        rep
    })
}

/// One representative per cyclic equivalence class of permutations of
/// `0..n`, `(n-1)!` in total, in lexicographic order.
pub fn cyclic_blocks(n: usize) -> Result<Vec<Vec<usize>>> {
    if n < 2 {
        return Err(Error::domain(format!(
            "cyclic blocks need n >= 2 (got {n})"
        )));
    }
    if n > MAX_ENUMERATION_LEN {
        return Err(Error::budget(
            format!(
                "{} cyclic blocks of length {n} (cap n = {MAX_ENUMERATION_LEN})",
                n - 1
            ),
            None,
        ));
    }
    Ok(cyclic_block_reps(n).collect())
}

/// The `n` rotations of a block. Each position sees every rank once, so all
/// column sums of the expansion are equal.
pub fn expand_block(block: &[usize]) -> Vec<Vec<usize>> {
    (0..block.len())
        .map(|r| block[r..].iter().chain(&block[..r]).copied().collect())
        .collect()
}

/// A `k x n` row-permuted matrix with distinct column sums for any
/// `1 <= k <= n! - 1`.
///
/// For `k > n!/2` the complement of the `n! - k` solution is returned. For
/// `n >= 4`, `k = nq + s` with `1 <= s <= n`: `q` full cyclic blocks (whose
/// columns sum equally) avoiding the classes of an `s`-row DCS core, then the
/// core itself.
pub fn general_dcs<T: GroupValue>(
    values: &OrderedValues<T>,
    k: u64,
) -> Result<RowPermutedMatrix<T>> {
    let n = values.len();
    let total = factorial(n);
    if k == 0 || total.is_some_and(|t| k >= t) {
        return Err(Error::domain(format!(
            "row count must lie in [1, n! - 1] for n = {n} (got {k})"
        )));
    }
    if let Some(t) = total {
        if k > t / 2 {
            let half = general_dcs(values, t - k)?;
            return half.complement();
        }
    }
    let ranks = match n {
        2 => vec![vec![0, 1]],
        3 => match k {
            1 => vec![vec![0, 1, 2]],
            2 => vec![vec![0, 1, 2], vec![1, 2, 0]],
            _ => shifted_rank_rows(3, 3),
        },
        _ => blocks_plus_core(n, k)?,
    };
    RowPermutedMatrix::from_rank_rows(values.clone(), ranks)
}

fn blocks_plus_core(n: usize, k: u64) -> Result<Vec<Vec<usize>>> {
    let q = (k - 1) / n as u64;
    let s = (k - q * n as u64) as usize;
    if let Some(blocks) = factorial(n - 1) {
        if blocks < blocks / 2 - 1 + n as u64 {
            return Err(Error::domain(format!(
                "not enough cyclic blocks to avoid the core for n = {n}"
            )));
        }
        if q > blocks / 2 - 1 {
            return Err(Error::domain(format!(
                "q = {q} exceeds (n-1)!/2 - 1 = {}",
                blocks / 2 - 1
            )));
        }
    }
    let core = match s {
        1 => vec![(0..n).collect()],
        2 => {
            let mut second: Vec<usize> = (0..n).collect();
            second[..3].copy_from_slice(&[1, 2, 0]);
            vec![(0..n).collect(), second]
        }
        _ => shifted_rank_rows(s, n),
    };
    let avoid: HashSet<Vec<usize>> = core.iter().map(|r| canonical_rotation(r)).collect();
    let mut rows = Vec::with_capacity(k as usize);
    let mut taken = 0u64;
    for rep in cyclic_block_reps(n) {
        if taken == q {
            break;
        }
        if avoid.contains(&rep) {
            continue;
        }
        rows.extend(expand_block(&rep));
        taken += 1;
    }
    if taken < q {
        return Err(Error::domain("ran out of cyclic blocks"));
    }
    rows.extend(core);
    Ok(rows)
}
