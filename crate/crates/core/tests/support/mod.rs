//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symspec::{Coloring, Tree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Level sequences of all rooted trees on `n` vertices (root at level 0),
/// generated in the Beyer-Hedetniemi successor order.
pub fn rooted_level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut seq: Vec<usize> = (0..n).collect();
    let mut out = vec![seq.clone()];
    loop {
        let Some(p) = seq.iter().rposition(|&l| l > 1) else {
            return out;
        };
        let q = (0..p)
            .rev()
            .find(|&i| seq[i] == seq[p] - 1)
            .expect("parent level exists");
        for i in p..n {
            seq[i] = seq[i - (p - q)];
        }
        out.push(seq.clone());
    }
}

pub fn tree_from_levels(levels: &[usize]) -> Tree {
    let parents: Vec<Option<usize>> = (0..levels.len())
        .map(|i| (0..i).rev().find(|&j| levels[j] + 1 == levels[i]))
        .collect();
    Tree::from_parents(&parents).unwrap()
}

/// Every rooted tree with `1..=max_n` vertices.
pub fn all_rooted_trees(max_n: usize) -> Vec<Tree> {
    (1..=max_n)
        .flat_map(rooted_level_sequences)
        .map(|l| tree_from_levels(&l))
        .collect()
}

pub fn random_coloring(tree: &Tree, palette: u32, rng: &mut ChaCha8Rng) -> Coloring {
    let colors = (0..tree.vertex_count())
        .map(|_| rng.gen_range(0..palette))
        .collect();
    Coloring::new(palette, colors).unwrap()
}

fn adjacency(tree: &Tree) -> Vec<Vec<bool>> {
    let n = tree.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for (v, row) in adj.iter_mut().enumerate() {
        for w in tree.neighbors(v) {
            row[w] = true;
        }
    }
    adj
}

/// Number of color-preserving graph automorphisms, by backtracking over
/// vertex bijections.
pub fn explicit_automorphism_count(tree: &Tree, colors: Option<&[u32]>) -> u64 {
    let n = tree.vertex_count();
    let adj = adjacency(tree);
    let color = |v: usize| colors.map_or(0, |c| c[v]);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        v: usize,
        n: usize,
        adj: &[Vec<bool>],
        color: &dyn Fn(usize) -> u32,
        image: &mut [usize],
        used: &mut [bool],
    ) -> u64 {
        if v == n {
            return 1;
        }
        let mut total = 0;
        for w in 0..n {
            if used[w] || color(w) != color(v) {
                continue;
            }
            if (0..v).any(|u| adj[u][v] != adj[image[u]][w]) {
                continue;
            }
            used[w] = true;
            image[v] = w;
            total += extend(v + 1, n, adj, color, image, used);
            used[w] = false;
        }
        total
    }
    extend(0, n, &adj, &color, &mut image, &mut used)
}

fn subtree_vertices(tree: &Tree, root: usize) -> Vec<usize> {
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(tree.children(order[i]));
        i += 1;
    }
    order
}

/// Whether some color-preserving rooted isomorphism maps the subtree at `a`
/// onto the subtree at `b`.
pub fn explicit_rooted_isomorphic(tree: &Tree, colors: &[u32], a: usize, b: usize) -> bool {
    let left = subtree_vertices(tree, a);
    let right = subtree_vertices(tree, b);
    if left.len() != right.len() {
        return false;
    }
    let mut image = std::collections::HashMap::new();
    let mut used = std::collections::HashSet::new();

    fn extend(
        i: usize,
        left: &[usize],
        tree: &Tree,
        colors: &[u32],
        b: usize,
        image: &mut std::collections::HashMap<usize, usize>,
        used: &mut std::collections::HashSet<usize>,
    ) -> bool {
        if i == left.len() {
            return true;
        }
        let v = left[i];
        let candidates: Vec<usize> = if i == 0 {
            vec![b]
        } else {
            tree.children(image[&tree.parent(v).unwrap()]).to_vec()
        };
        for w in candidates {
            if used.contains(&w)
                || colors[w] != colors[v]
                || tree.children(w).len() != tree.children(v).len()
            {
                continue;
            }
            image.insert(v, w);
            used.insert(w);
            if extend(i + 1, left, tree, colors, b, image, used) {
                return true;
            }
            image.remove(&v);
            used.remove(&w);
        }
        false
    }
    extend(0, &left, tree, colors, b, &mut image, &mut used)
}

/// Relabels the tree along a random breadth-first order with shuffled
/// children. Returns the new tree and `map[old] = new`.
pub fn random_relabel(tree: &Tree, rng: &mut ChaCha8Rng) -> (Tree, Vec<usize>) {
    use rand::seq::SliceRandom;
    let n = tree.vertex_count();
    let mut order = vec![tree.root()];
    let mut i = 0;
    while i < order.len() {
        let mut kids = tree.children(order[i]).to_vec();
        kids.shuffle(rng);
        order.extend(kids);
        i += 1;
    }
    let mut map = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        map[old] = new;
    }
    let mut parents = vec![None; n];
    for old in 0..n {
        parents[map[old]] = tree.parent(old).map(|p| map[p]);
    }
    (Tree::from_parents(&parents).unwrap(), map)
}

pub fn relabel_coloring(coloring: &Coloring, map: &[usize]) -> Coloring {
    let mut colors = vec![0; map.len()];
    for (old, &new) in map.iter().enumerate() {
        colors[new] = coloring.color(old);
    }
    Coloring::new(coloring.palette_size(), colors).unwrap()
}
