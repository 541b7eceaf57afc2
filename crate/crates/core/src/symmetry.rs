//! Automorphisms of (colored) trees: distinguishing test, group order,
//! explicit enumeration and fixing sets.
//!
//! Every automorphism of a tree fixes its center, which is either a vertex or
//! an edge. Rooting the tree there, an automorphism is a sequence of
//! exchanges of isomorphic sibling subtrees, plus possibly a swap of the two
//! halves when the center is an edge. All checks below work on that rooted
//! view, so they are valid for arbitrary trees and not only for the families
//! whose stored root is already fixed.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::canon::subtree_class_ids;
use crate::error::{Error, Result};
use crate::tree::{Coloring, Tree};

/// Default cap on the group order for which the explicit list of
/// automorphisms is materialized.
pub const DEFAULT_EXPLICIT_CAP: u64 = 1_000_000;

/// Default cap on the number of candidate vertices in a fixing-set search.
pub const DEFAULT_MAX_FIXING_CANDIDATES: usize = 20;

/// A vertex permutation in one-line form: `p[v]` is the image of `v`.
pub type Permutation = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Center {
    Vertex(usize),
    Edge(usize, usize),
}

/// The tree re-rooted at its center.
#[derive(Debug, Clone)]
pub struct RootedView {
    center: Center,
    children: Vec<Vec<usize>>,
    /// Breadth-first from the center root(s).
    order: Vec<usize>,
}

impl RootedView {
    pub fn new(tree: &Tree) -> Self {
        let n = tree.vertex_count();
        let center = find_center(tree);
        let roots: Vec<usize> = match center {
            Center::Vertex(c) => vec![c],
            Center::Edge(a, b) => vec![a, b],
        };
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for &r in &roots {
            seen[r] = true;
        }
        let mut order = roots.clone();
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for w in tree.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    children[u].push(w);
                    order.push(w);
                }
            }
            i += 1;
        }
        RootedView {
            center,
            children,
            order,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    fn class_ids(&self, colors: Option<&[u32]>) -> Vec<u32> {
        subtree_class_ids(&self.children, self.order.iter().rev().copied(), colors)
    }

    /// True when only the identity preserves `colors` (one entry per vertex).
    pub fn distinguishes(&self, colors: &[u32]) -> bool {
        let ids = self.class_ids(Some(colors));
        let mut scratch = Vec::new();
        for kids in &self.children {
            if kids.len() < 2 {
                continue;
            }
            scratch.clear();
            scratch.extend(kids.iter().map(|&w| ids[w]));
            scratch.sort_unstable();
            if scratch.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        match self.center {
            Center::Edge(a, b) => ids[a] != ids[b],
            Center::Vertex(_) => true,
        }
    }

    fn group_order(&self, ids: &[u32]) -> BigUint {
        let mut count = BigUint::one();
        for kids in &self.children {
            let mut classes: Vec<u32> = kids.iter().map(|&w| ids[w]).collect();
            classes.sort_unstable();
            for (_, run) in &classes.iter().chunk_by(|&&x| x) {
                let m = run.count();
                for f in 2..=m {
                    count *= f as u64;
                }
            }
        }
        if let Center::Edge(a, b) = self.center {
            if ids[a] == ids[b] {
                count *= 2u32;
            }
        }
        count
    }

    /// Children of `u` sorted by class id, ties by vertex index.
    fn sorted_children(&self, ids: &[u32], u: usize) -> Vec<usize> {
        let mut kids = self.children[u].clone();
        kids.sort_by_key(|&w| (ids[w], w));
        kids
    }

    /// Writes into `map` the canonical isomorphism sending the subtree at `u`
    /// onto the (isomorphic) subtree at `w`.
    fn canonical_iso(&self, ids: &[u32], u: usize, w: usize, map: &mut [usize]) {
        let mut stack = vec![(u, w)];
        while let Some((x, y)) = stack.pop() {
            map[x] = y;
            let xs = self.sorted_children(ids, x);
            let ys = self.sorted_children(ids, y);
            stack.extend(xs.into_iter().zip(ys));
        }
    }

    /// Transpositions of adjacent isomorphic siblings, plus the half swap for
    /// a symmetric central edge. Together they generate the group.
    fn generators(&self, ids: &[u32]) -> Vec<Permutation> {
        let n = self.vertex_count();
        let mut gens = Vec::new();
        let swap = |a: usize, b: usize| {
            let mut p: Permutation = (0..n).collect();
            self.canonical_iso(ids, a, b, &mut p);
            self.canonical_iso(ids, b, a, &mut p);
            p
        };
        for u in &self.order {
            let kids = self.sorted_children(ids, *u);
            for pair in kids.windows(2) {
                if ids[pair[0]] == ids[pair[1]] {
                    gens.push(swap(pair[0], pair[1]));
                }
            }
        }
        if let Center::Edge(a, b) = self.center {
            if ids[a] == ids[b] {
                gens.push(swap(a, b));
            }
        }
        gens
    }

    fn enumerate(&self, ids: &[u32]) -> Vec<Permutation> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; n];
        let mut pending = Vec::new();
        match self.center {
            Center::Vertex(c) => {
                pending.push((c, c));
                self.extend_maps(ids, &mut pending, &mut map, &mut out);
            }
            Center::Edge(a, b) => {
                pending.extend([(a, a), (b, b)]);
                self.extend_maps(ids, &mut pending, &mut map, &mut out);
                if ids[a] == ids[b] {
                    pending.clear();
                    pending.extend([(a, b), (b, a)]);
                    self.extend_maps(ids, &mut pending, &mut map, &mut out);
                }
            }
        }
        out.sort();
        out
    }

    fn extend_maps(
        &self,
        ids: &[u32],
        pending: &mut Vec<(usize, usize)>,
        map: &mut [usize],
        out: &mut Vec<Permutation>,
    ) {
        let Some((u, w)) = pending.pop() else {
            out.push(map.to_vec());
            return;
        };
        map[u] = w;
        let us = self.sorted_children(ids, u);
        let ws = self.sorted_children(ids, w);
        // Runs of equal class id; any bijection within a run is allowed.
        let mut runs: Vec<std::ops::Range<usize>> = Vec::new();
        let mut start = 0;
        for i in 1..=us.len() {
            if i == us.len() || ids[us[i]] != ids[us[start]] {
                runs.push(start..i);
                start = i;
            }
        }
        let choices = runs
            .iter()
            .map(|r| r.clone().permutations(r.len()).collect::<Vec<_>>())
            .multi_cartesian_product();
        let base = pending.len();
        let mut any = false;
        for choice in choices {
            any = true;
            for (run, targets) in runs.iter().zip(&choice) {
                for (src, &dst) in run.clone().zip(targets) {
                    pending.push((us[src], ws[dst]));
                }
            }
            self.extend_maps(ids, pending, map, out);
            pending.truncate(base);
        }
        if !any {
            // Leaf: no children to match.
            self.extend_maps(ids, pending, map, out);
        }
        pending.push((u, w));
    }
}

fn find_center(tree: &Tree) -> Center {
    let n = tree.vertex_count();
    if n == 1 {
        return Center::Vertex(0);
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v] = 0;
            for w in tree.neighbors(v) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    match layer.as_slice() {
        [c] => Center::Vertex(*c),
        [a, b] => Center::Edge((*a).min(*b), (*a).max(*b)),
        _ => unreachable!("a tree has one or two central vertices"),
    }
}

/// True iff the identity is the only automorphism preserving every color
/// class of `coloring`.
pub fn is_distinguishing(tree: &Tree, coloring: &Coloring) -> Result<bool> {
    coloring.check_matches(tree)?;
    Ok(RootedView::new(tree).distinguishes(coloring.colors()))
}

/// Order of the (color-preserving) automorphism group, with generators and,
/// for small groups, the full list of automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismReport {
    pub count: BigUint,
    /// Set when `generators` holds a generating set of the group. Trees
    /// always produce one; an empty set generates the trivial group.
    pub generators_available: bool,
    pub generators: Vec<Permutation>,
    /// Every automorphism in lexicographic order, present only when `count`
    /// does not exceed the explicit cap.
    pub permutations: Option<Vec<Permutation>>,
}

impl AutomorphismReport {
    pub fn is_trivial(&self) -> bool {
        self.count.is_one()
    }
}

pub fn automorphism_count(tree: &Tree, coloring: Option<&Coloring>) -> Result<AutomorphismReport> {
    automorphism_count_with_cap(tree, coloring, DEFAULT_EXPLICIT_CAP)
}

pub fn automorphism_count_with_cap(
    tree: &Tree,
    coloring: Option<&Coloring>,
    explicit_cap: u64,
) -> Result<AutomorphismReport> {
    if let Some(c) = coloring {
        c.check_matches(tree)?;
    }
    let view = RootedView::new(tree);
    let ids = view.class_ids(coloring.map(Coloring::colors));
    let count = view.group_order(&ids);
    let generators = view.generators(&ids);
    let permutations = match count.to_u64() {
        Some(c) if c <= explicit_cap => Some(view.enumerate(&ids)),
        _ => None,
    };
    Ok(AutomorphismReport {
        count,
        generators_available: true,
        generators,
        permutations,
    })
}

/// Coloring that gives each vertex of `set` its own special color.
pub fn unique_colors_on(tree: &Tree, set: &[usize]) -> Result<Coloring> {
    let mut colors = vec![0u32; tree.vertex_count()];
    let mut next = 1u32;
    for &v in set {
        if v >= colors.len() {
            return Err(Error::domain(format!("vertex {v} is not in the tree")));
        }
        if colors[v] == 0 {
            colors[v] = next;
            next += 1;
        }
    }
    Coloring::new(next, colors)
}

/// True iff the pointwise stabilizer of `set` is trivial.
pub fn is_fixing_set(tree: &Tree, set: &[usize]) -> Result<bool> {
    let coloring = unique_colors_on(tree, set)?;
    is_distinguishing(tree, &coloring)
}

/// Which vertices a fixing-set search may draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidatePool {
    /// Degree-one vertices only; some minimum fixing set always lies there.
    Leaves,
    AllVertices,
}

#[derive(Debug, Clone, Copy)]
pub struct FixingSearch {
    pub pool: CandidatePool,
    /// Largest candidate pool the exhaustive search accepts.
    pub max_candidates: usize,
}

impl Default for FixingSearch {
    fn default() -> Self {
        FixingSearch {
            pool: CandidatePool::Leaves,
            max_candidates: DEFAULT_MAX_FIXING_CANDIDATES,
        }
    }
}

/// Smallest fixing set, found by trying candidate subsets in order of
/// increasing size. Among sets of the minimum size the lexicographically
/// first is returned, independent of how many worker threads run.
pub fn minimum_fixing_set(tree: &Tree, search: &FixingSearch) -> Result<Vec<usize>> {
    let pool = match search.pool {
        CandidatePool::Leaves => tree.graph_leaves(),
        CandidatePool::AllVertices => (0..tree.vertex_count()).collect(),
    };
    if pool.len() > search.max_candidates {
        return Err(Error::budget(
            format!(
                "fixing-set search over {} candidates (cap {})",
                pool.len(),
                search.max_candidates
            ),
            None,
        ));
    }
    let view = RootedView::new(tree);
    let n = tree.vertex_count();
    for size in 0..=pool.len() {
        let subsets: Vec<Vec<usize>> = pool.iter().copied().combinations(size).collect();
        let found = subsets.into_par_iter().find_first(|set| {
            let mut colors = vec![0u32; n];
            for (i, &v) in set.iter().enumerate() {
                colors[v] = i as u32 + 1;
            }
            view.distinguishes(&colors)
        });
        if let Some(set) = found {
            return Ok(set);
        }
    }
    // The full vertex set always fixes; a leaf pool fixes every tree too.
    Err(Error::Infeasible(
        "no fixing set in the candidate pool".into(),
    ))
}

/// Fixing number by exhaustive search over leaf subsets.
pub fn fixing_number_bruteforce(tree: &Tree) -> Result<usize> {
    minimum_fixing_set(tree, &FixingSearch::default()).map(|s| s.len())
}
