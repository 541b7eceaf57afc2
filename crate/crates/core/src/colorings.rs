//! Distinguishing colorings of perfect k-ary trees and k-podes.
//!
//! Colorings of `T_k^n` are assembled directly in the breadth-first layout:
//! grafting one `T_k^r` coloring onto each leaf of a `T_k^b` coloring gives a
//! `T_k^(b+r)` coloring whose level `b + l` is the concatenation of level `l`
//! of every grafted piece.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::dcs::{lemma_rows, OrderedValues};
use crate::error::{Error, Result};
use crate::tree::{level_offset, perfect_vertex_count, Coloring, Tree, DEFAULT_VERTEX_BUDGET};

/// The construction schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeId {
    /// `k` colors, paint cost `k^n - 1`.
    KDist,
    /// `k + 1` colors at the optimal `(k+1)`-paint cost.
    Middle,
    /// Frugal coloring: paint cost equal to the fixing number.
    Frugal,
    /// Two colors on an equal-armed k-pode.
    KPodeEquality,
}

impl SchemeId {
    /// Builds the scheme's tree and coloring. Perfect-tree schemes read
    /// `(a, b)` as `(k, n)`; [`SchemeId::KPodeEquality`] reads them as
    /// `(d, t)`.
    pub fn build(self, a: usize, b: usize) -> Result<(Tree, Coloring)> {
        let coloring = match self {
            SchemeId::KDist => k_distinguishing_coloring(a, b)?,
            SchemeId::Middle => middle_coloring(a, b)?,
            SchemeId::Frugal => frugal_coloring(a, b)?,
            SchemeId::KPodeEquality => return kpode_equality_coloring(a, b),
        };
        Ok((Tree::perfect(a, b)?, coloring))
    }
}

fn check_params(k: usize, n: usize) -> Result<()> {
    if k < 2 || n < 1 {
        return Err(Error::domain(format!(
            "perfect k-ary trees need k >= 2 and n >= 1 (got k = {k}, n = {n})"
        )));
    }
    match perfect_vertex_count(k, n) {
        Some(c) if c <= DEFAULT_VERTEX_BUDGET => Ok(()),
        _ => Err(Error::budget(
            format!("T_{k}^{n} exceeds the vertex budget of {DEFAULT_VERTEX_BUDGET}"),
            None,
        )),
    }
}

fn level(colors: &[u32], k: usize, l: usize) -> &[u32] {
    let start = level_offset(k, l);
    &colors[start..start + k.pow(l as u32)]
}

/// Grafts `pieces[p]` (a coloring of `T_k^piece_depth`) onto leaf `p` of
/// `base` (a coloring of `T_k^base_depth`). The piece roots replace the base
/// leaf colors.
fn graft(
    k: usize,
    base: &[u32],
    base_depth: usize,
    pieces: &[&[u32]],
    piece_depth: usize,
) -> Vec<u32> {
    debug_assert_eq!(pieces.len(), k.pow(base_depth as u32));
    let total = perfect_vertex_count(k, base_depth + piece_depth).expect("checked size");
    let mut out = Vec::with_capacity(total);
    out.extend_from_slice(&base[..level_offset(k, base_depth)]);
    for l in 0..=piece_depth {
        for piece in pieces {
            out.extend_from_slice(level(piece, k, l));
        }
    }
    out
}

/// Root plus one piece per child.
fn join(k: usize, root: u32, pieces: &[&[u32]], piece_depth: usize) -> Vec<u32> {
    let mut base = vec![0; k + 1];
    base[0] = root;
    graft(k, &base, 1, pieces, piece_depth)
}

/// `T_k^1` with neutral root and leaf `i` colored `(i + 1) mod k`.
fn star_colors(k: usize) -> Vec<u32> {
    std::iter::once(0)
        .chain((0..k).map(|i| ((i + 1) % k) as u32))
        .collect()
}

/// The unique efficient `(k+1)`-coloring of `T_k^2`: leafy copy `i` carries
/// the `i`-th `(k-1)`-subset of the special colors (lexicographic order) on
/// its first leaves and a neutral last leaf.
fn efficient_depth2(k: usize) -> Vec<u32> {
    let mut colors = vec![0u32; 1 + k];
    for subset in (1..=k as u32).combinations(k - 1) {
        colors.extend(subset);
        colors.push(0);
    }
    colors
}

fn leaf_counts(colors: &[u32], k: usize, n: usize, palette: usize) -> Vec<u64> {
    let mut counts = vec![0u64; palette];
    for &c in level(colors, k, n) {
        counts[c as usize] += 1;
    }
    counts
}

/// The recursive `k`-distinguishing coloring: each child subtree carries the
/// construction for depth `n - 1` with its root recolored, child `i` getting
/// color `(i + 1) mod k`. Paint cost `k^n - 1`.
pub fn k_distinguishing_coloring(k: usize, n: usize) -> Result<Coloring> {
    check_params(k, n)?;
    Coloring::new(k as u32, k_dist_colors(k, n))
}

fn k_dist_colors(k: usize, n: usize) -> Vec<u32> {
    if n == 1 {
        return star_colors(k);
    }
    let sub = k_dist_colors(k, n - 1);
    let pieces: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut p = sub.clone();
            p[0] = ((i + 1) % k) as u32;
            p
        })
        .collect();
    let refs: Vec<&[u32]> = pieces.iter().map(Vec::as_slice).collect();
    join(k, 0, &refs, n - 1)
}

/// Frugal coloring of `T_k^n`: paint cost `(k-1) k^(n-1)` with `k`, `k+1` or
/// `k+2` colors for `n = 1`, `2`, `>= 3`. For `n >= 2` only leaves are
/// painted.
pub fn frugal_coloring(k: usize, n: usize) -> Result<Coloring> {
    check_params(k, n)?;
    let palette = match n {
        1 => k,
        2 => k + 1,
        _ => k + 2,
    };
    Coloring::new(palette as u32, frugal_colors(k, n)?)
}

fn frugal_colors(k: usize, n: usize) -> Result<Vec<u32>> {
    match n {
        1 => Ok(star_colors(k)),
        2 => Ok(efficient_depth2(k)),
        3 if k == 2 => {
            let left = efficient_depth2(2);
            let right: Vec<u32> = left.iter().map(|&c| if c == 1 { 3 } else { c }).collect();
            Ok(join(2, 0, &[&left, &right], 2))
        }
        3 => {
            // Copy j (1-based) trades its first j-1 leaves of color j-1 for
            // color k+1, so the copies differ in how often k+1 appears.
            let base = efficient_depth2(k);
            let leaf_start = level_offset(k, 2);
            let new_color = (k + 1) as u32;
            let copies: Vec<Vec<u32>> = (1..=k)
                .map(|j| {
                    let mut copy = base.clone();
                    let target = (j - 1) as u32;
                    copy[leaf_start..]
                        .iter_mut()
                        .filter(|c| **c == target && target != 0)
                        .take(j - 1)
                        .for_each(|c| *c = new_color);
                    copy
                })
                .collect();
            let refs: Vec<&[u32]> = copies.iter().map(Vec::as_slice).collect();
            Ok(join(k, 0, &refs, 2))
        }
        _ if k == 2 => {
            let left = frugal_colors(2, n - 1)?;
            let counts = leaf_counts(&left, 2, n - 1, 4);
            let (a, b) = (1..=3u32)
                .tuple_combinations()
                .find(|&(a, b)| counts[a as usize] != counts[b as usize])
                .ok_or_else(|| Error::domain("no two special colors with unequal leaf counts"))?;
            let right: Vec<u32> = left
                .iter()
                .map(|&c| match c {
                    c if c == a => b,
                    c if c == b => a,
                    c => c,
                })
                .collect();
            Ok(join(2, 0, &[&left, &right], n - 1))
        }
        _ => {
            // Permute the special colors 1..=k across the k copies so the
            // per-color leaf totals stay pairwise distinct.
            let base = frugal_colors(k, n - 1)?;
            let counts = leaf_counts(&base, k, n - 1, k + 2);
            let values = OrderedValues::new(counts[1..=k].to_vec())
                .map_err(|_| Error::domain("special leaf counts are not pairwise distinct"))?;
            let matrix = lemma_rows(&values)?;
            let copies: Vec<Vec<u32>> = matrix
                .row_permutations()
                .iter()
                .map(|perm| {
                    // Column j takes the count of base color perm[j] + 1.
                    let mut relabel: Vec<u32> = (0..(k + 2) as u32).collect();
                    for (j, &src) in perm.iter().enumerate() {
                        relabel[src + 1] = (j + 1) as u32;
                    }
                    base.iter().map(|&c| relabel[c as usize]).collect()
                })
                .collect();
            let refs: Vec<&[u32]> = copies.iter().map(Vec::as_slice).collect();
            Ok(join(k, 0, &refs, n - 1))
        }
    }
}

/// Leaf counts of a frugal coloring at every recursion depth `3..=n`, for
/// checking that the special colors `1..=k` keep distinct totals.
pub fn frugal_special_leaf_counts(k: usize, n: usize) -> Result<Vec<Vec<u64>>> {
    check_params(k, n)?;
    (3..=n)
        .map(|depth| {
            let colors = frugal_colors(k, depth)?;
            Ok(leaf_counts(&colors, k, depth, k + 2)[1..=k].to_vec())
        })
        .collect()
}

/// The `k^2 + 2k` almost-efficient `(k+1)`-colorings of `T_k^2`, each one
/// special vertex more than the efficient coloring, pairwise not strongly
/// isomorphic. Order: root recolored with each special color, then each
/// depth-1 vertex with each special color, then the neutral leaf of each
/// leafy `T_k^1` with the one special color missing from it.
pub fn almost_efficient_variants(k: usize) -> Result<Vec<Coloring>> {
    if k < 2 {
        return Err(Error::domain(format!("need k >= 2 (got {k})")));
    }
    variant_colors(k)
        .into_iter()
        .map(|c| Coloring::new(k as u32 + 1, c))
        .collect()
}

fn variant_colors(k: usize) -> Vec<Vec<u32>> {
    let base = efficient_depth2(k);
    let mut out = Vec::with_capacity(k * k + 2 * k);
    for c in 1..=k as u32 {
        let mut v = base.clone();
        v[0] = c;
        out.push(v);
    }
    for i in 0..k {
        for c in 1..=k as u32 {
            let mut v = base.clone();
            v[1 + i] = c;
            out.push(v);
        }
    }
    let leaf_start = level_offset(k, 2);
    for i in 0..k {
        let copy = &base[leaf_start + i * k..leaf_start + (i + 1) * k];
        let missing = (1..=k as u32)
            .find(|c| !copy.contains(c))
            .expect("each leafy copy misses one special color");
        let mut v = base.clone();
        v[leaf_start + i * k + (k - 1)] = missing;
        out.push(v);
    }
    out
}

/// The `k + 2` efficient `(k+1)`-colorings `a_0, ..., a_{k+1}` of `T_k^3`.
/// `a_j` puts the efficient depth-2 coloring on the first leafy `T_k^2` and
/// the `j`-th block of `k - 1` consecutive almost-efficient variants on the
/// others; disjoint blocks keep the family pairwise distinct.
pub fn middle_depth3_family(k: usize) -> Result<Vec<Coloring>> {
    if k < 2 {
        return Err(Error::domain(format!("need k >= 2 (got {k})")));
    }
    depth3_family_colors(k)
        .into_iter()
        .map(|c| Coloring::new(k as u32 + 1, c))
        .collect()
}

fn depth3_family_colors(k: usize) -> Vec<Vec<u32>> {
    let efficient = efficient_depth2(k);
    let variants = variant_colors(k);
    (0..k + 2)
        .map(|j| {
            let mut pieces: Vec<&[u32]> = vec![&efficient];
            pieces.extend(
                variants[j * (k - 1)..(j + 1) * (k - 1)]
                    .iter()
                    .map(Vec::as_slice),
            );
            join(k, 0, &pieces, 2)
        })
        .collect()
}

/// Efficient `(k+1)`-distinguishing coloring of `T_k^n`. Paint cost `k - 1`,
/// `k(k-1)` and `(k-1)(k^2+1)k^(n-3)` for `n = 1`, `2`, `>= 3`.
///
/// For `n > 3` the frugal coloring of `T_k^(n-3)` is expanded: every leaf of
/// color `j` becomes a copy of `a_j` from [`middle_depth3_family`].
pub fn middle_coloring(k: usize, n: usize) -> Result<Coloring> {
    check_params(k, n)?;
    let colors = match n {
        1 => {
            // Root and last leaf neutral, the others 1..k-1.
            let mut c = star_colors(k);
            c[k] = 0;
            c
        }
        2 => efficient_depth2(k),
        3 => depth3_family_colors(k).swap_remove(0),
        _ => {
            let base_depth = n - 3;
            let base = frugal_colors(k, base_depth)?;
            let family = depth3_family_colors(k);
            let pieces: Vec<&[u32]> = level(&base, k, base_depth)
                .iter()
                .map(|&c| family[c as usize].as_slice())
                .collect();
            graft(k, &base, base_depth, &pieces, 3)
        }
    };
    Coloring::new(k as u32 + 1, colors)
}

/// The k-pode `T_{d+1}(t, ..., t)` with a 2-coloring of paint cost `d`: on
/// arm `i` (`1 <= i <= d`) the `i`-th vertex counted from the hub is
/// painted.
pub fn kpode_equality_coloring(d: usize, t: usize) -> Result<(Tree, Coloring)> {
    if d < 1 {
        return Err(Error::domain("need d >= 1"));
    }
    if t < d {
        return Err(Error::domain(format!(
            "arm length t = {t} must be at least d = {d}"
        )));
    }
    let tree = Tree::kpode(&vec![t; d + 1])?;
    let mut colors = vec![0u32; tree.vertex_count()];
    for i in 1..=d {
        colors[tree.kpode_arm_vertex(i - 1, i)?] = 1;
    }
    let coloring = Coloring::new(2, colors)?;
    Ok((tree, coloring))
}
