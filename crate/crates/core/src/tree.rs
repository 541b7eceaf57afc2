//! Rooted trees in breadth-first layout and vertex colorings over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vertices a constructor will allocate.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

/// Paint cost spectrum `(dist; cost)` shared by every path with at least one
/// edge: one end vertex painted breaks the reflection. Paths are not built as
/// perfect trees (`k = 1` is rejected), so this is exposed as a constant only.
pub const PATH_SPECTRUM: (u32, u32) = (2, 1);

/// The family a tree was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TreeShape {
    /// Perfect `k`-ary tree of depth `n`: every internal vertex has `k`
    /// children and all `k^n` leaves sit at depth `n`.
    PerfectKAry { k: usize, n: usize },
    /// A hub with one path (arm) per entry of `arms`, arm `j` holding
    /// `arms[j]` vertices.
    KPode { arms: Vec<usize> },
    /// Any other tree, typically loaded from a parent array.
    General,
}

/// A rooted tree whose vertices are indexed so that every parent has a
/// smaller index than its children. Vertex 0 is the root.
///
/// Trees built by [`Tree::perfect`] and [`Tree::kpode`] are in breadth-first
/// order, so each depth level is a contiguous index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    shape: TreeShape,
}

/// Number of vertices of `T_k^n`, or `None` on overflow.
pub fn perfect_vertex_count(k: usize, n: usize) -> Option<usize> {
    // 1 + k + ... + k^n
    let mut total: usize = 1;
    let mut level: usize = 1;
    for _ in 0..n {
        level = level.checked_mul(k)?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// First index of depth level `level` in the breadth-first layout of a perfect
/// `k`-ary tree.
pub(crate) fn level_offset(k: usize, level: usize) -> usize {
    (0..level).map(|l| k.pow(l as u32)).sum()
}

fn check_perfect_params(k: usize, n: usize, budget: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::domain(format!(
            "perfect k-ary trees need k >= 2 (got k = {k})"
        )));
    }
    if n < 1 {
        return Err(Error::domain(format!(
            "perfect k-ary trees need depth n >= 1 (got n = {n})"
        )));
    }
    match perfect_vertex_count(k, n) {
        Some(count) if count <= budget => Ok(count),
        _ => Err(Error::budget(
            format!("T_{k}^{n} exceeds the vertex budget of {budget}"),
            None,
        )),
    }
}

impl Tree {
    /// Builds the perfect `k`-ary tree of depth `n` under the default vertex
    /// budget.
    pub fn perfect(k: usize, n: usize) -> Result<Self> {
        Self::perfect_with_budget(k, n, DEFAULT_VERTEX_BUDGET)
    }

    pub fn perfect_with_budget(k: usize, n: usize, budget: usize) -> Result<Self> {
        let count = check_perfect_params(k, n, budget)?;
        let mut parent = Vec::with_capacity(count);
        let mut children = Vec::with_capacity(count);
        let mut depth = Vec::with_capacity(count);
        let internal = count - k.pow(n as u32);
        for v in 0..count {
            parent.push(if v == 0 { None } else { Some((v - 1) / k) });
            children.push(if v < internal {
                (k * v + 1..=k * v + k).collect()
            } else {
                Vec::new()
            });
            depth.push(if v == 0 { 0 } else { depth[(v - 1) / k] + 1 });
        }
        Ok(Tree {
            parent,
            children,
            depth,
            shape: TreeShape::PerfectKAry { k, n },
        })
    }

    /// Builds the k-pode `T_k(arms[0], ..., arms[k-1])`: hub 0 plus one path
    /// per arm. Vertices are numbered level by level, arms in input order.
    pub fn kpode(arms: &[usize]) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::domain(format!(
                "a k-pode needs at least 2 arms (got {})",
                arms.len()
            )));
        }
        if let Some(j) = arms.iter().position(|&t| t == 0) {
            return Err(Error::domain(format!("arm {j} has length 0")));
        }
        let total = arms
            .iter()
            .try_fold(1usize, |acc, &t| acc.checked_add(t))
            .filter(|&c| c <= DEFAULT_VERTEX_BUDGET)
            .ok_or_else(|| Error::budget("k-pode exceeds the vertex budget", None))?;

        let mut parent = vec![None; total];
        let mut tip: Vec<usize> = vec![0; arms.len()];
        let longest = *arms.iter().max().expect("at least two arms");
        let mut next = 1;
        for step in 1..=longest {
            for (j, &len) in arms.iter().enumerate() {
                if step <= len {
                    parent[next] = Some(tip[j]);
                    tip[j] = next;
                    next += 1;
                }
            }
        }
        let mut tree = Self::from_parent_vec(parent)?;
        tree.shape = TreeShape::KPode {
            arms: arms.to_vec(),
        };
        Ok(tree)
    }

    /// Builds a tree from a parent array. The root must be vertex 0 (parent
    /// `None`) and every other vertex must have a parent with a smaller index.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        Self::from_parent_vec(parents.to_vec())
    }

    fn from_parent_vec(parent: Vec<Option<usize>>) -> Result<Self> {
        if parent.is_empty() {
            return Err(Error::domain("a tree needs at least one vertex"));
        }
        if parent[0].is_some() {
            return Err(Error::domain("vertex 0 must be the root"));
        }
        let mut children = vec![Vec::new(); parent.len()];
        let mut depth = vec![0; parent.len()];
        for (v, p) in parent.iter().enumerate().skip(1) {
            match *p {
                Some(p) if p < v => {
                    children[p].push(v);
                    depth[v] = depth[p] + 1;
                }
                Some(p) => {
                    return Err(Error::domain(format!(
                        "vertex {v} has parent {p}; parents must precede their children"
                    )))
                }
                None => return Err(Error::domain(format!("vertex {v} has no parent"))),
            }
        }
        Ok(Tree {
            parent,
            children,
            depth,
            shape: TreeShape::General,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Largest vertex depth.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Degree in the underlying undirected graph.
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent[v]
            .into_iter()
            .chain(self.children[v].iter().copied())
    }

    /// Vertices without children, in index order.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.children[v].is_empty())
            .collect()
    }

    /// Degree-one vertices of the underlying graph (the root counts when it
    /// has a single child).
    pub fn graph_leaves(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) <= 1)
            .collect()
    }

    pub fn internal_count(&self) -> usize {
        self.children.iter().filter(|c| !c.is_empty()).count()
    }

    /// Branching factor and depth when the tree is perfect k-ary.
    pub fn perfect_params(&self) -> Option<(usize, usize)> {
        match self.shape {
            TreeShape::PerfectKAry { k, n } => Some((k, n)),
            _ => None,
        }
    }

    /// Roots of the leafy subtrees of depth `i` of a perfect tree `T_k^n`:
    /// the `k^(n-i)` vertices at depth `n - i`, in index order.
    pub fn leafy_subtree_roots(&self, i: usize) -> Result<Vec<usize>> {
        let (k, n) = self
            .perfect_params()
            .ok_or_else(|| Error::domain("leafy subtrees are defined on perfect k-ary trees"))?;
        if i > n {
            return Err(Error::domain(format!(
                "leafy subtree depth {i} exceeds tree depth {n}"
            )));
        }
        let start = level_offset(k, n - i);
        Ok((start..start + k.pow((n - i) as u32)).collect())
    }

    /// Vertex number `pos` (1-based, counted outward from the hub) on arm
    /// `arm` of a k-pode.
    pub fn kpode_arm_vertex(&self, arm: usize, pos: usize) -> Result<usize> {
        let TreeShape::KPode { arms } = &self.shape else {
            return Err(Error::domain("arm lookup needs a k-pode"));
        };
        if arm >= arms.len() || pos == 0 || pos > arms[arm] {
            return Err(Error::domain(format!(
                "arm {arm} position {pos} is outside the k-pode"
            )));
        }
        let mut v = self.children[0][arm];
        for _ in 1..pos {
            v = self.children[v][0];
        }
        Ok(v)
    }

    /// Serializable form: shape tag plus parent array with `-1` at the root.
    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            shape: self.shape.clone(),
            parents: self
                .parent
                .iter()
                .map(|p| p.map_or(-1, |p| p as i64))
                .collect(),
        }
    }

    /// Rebuilds a tree from its serialized form. Perfect and k-pode shapes are
    /// reconstructed and must match the stored parent array exactly.
    pub fn from_json(json: &TreeJson) -> Result<Self> {
        let parents = json
            .parents
            .iter()
            .enumerate()
            .map(|(v, &p)| match p {
                -1 => Ok(None),
                p if p >= 0 => Ok(Some(p as usize)),
                p => Err(Error::domain(format!("vertex {v} has invalid parent {p}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let tree = match &json.shape {
            TreeShape::PerfectKAry { k, n } => Self::perfect(*k, *n)?,
            TreeShape::KPode { arms } => Self::kpode(arms)?,
            TreeShape::General => return Self::from_parent_vec(parents),
        };
        if tree.parent != parents {
            return Err(Error::domain(
                "parent array does not match the declared tree shape",
            ));
        }
        Ok(tree)
    }
}

/// JSON tree format: `{"shape": {...}, "parents": [-1, 0, 0, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub shape: TreeShape,
    pub parents: Vec<i64>,
}

/// A vertex coloring with palette `{0, ..., palette_size - 1}`. Color 0 is
/// the neutral color; every other color is special.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    palette_size: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(palette_size: u32, colors: Vec<u32>) -> Result<Self> {
        if palette_size == 0 {
            return Err(Error::domain("palette size must be at least 1"));
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= palette_size) {
            return Err(Error::domain(format!(
                "vertex {v} has color {c}, outside palette of size {palette_size}"
            )));
        }
        Ok(Coloring {
            palette_size,
            colors,
        })
    }

    /// Every vertex neutral.
    pub fn neutral(palette_size: u32, vertex_count: usize) -> Self {
        Coloring {
            palette_size: palette_size.max(1),
            colors: vec![0; vertex_count],
        }
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of non-neutral vertices.
    pub fn paint_cost(&self) -> usize {
        self.colors.iter().filter(|&&c| c != 0).count()
    }

    /// Size of each color class, indexed by color.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.palette_size as usize];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Vertices carrying a special color.
    pub fn special_vertices(&self) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] != 0)
            .collect()
    }

    pub fn check_matches(&self, tree: &Tree) -> Result<()> {
        if self.colors.len() != tree.vertex_count() {
            return Err(Error::domain(format!(
                "coloring has {} entries but the tree has {} vertices",
                self.colors.len(),
                tree.vertex_count()
            )));
        }
        Ok(())
    }
}
