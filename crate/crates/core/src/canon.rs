//! Canonical forms of colored rooted subtrees.
//!
//! A code is `color (u32 BE) ++ child count (u32 BE) ++ [len (u32 BE) ++ child code]*`
//! with child codes sorted bytewise. The length prefixes make the encoding
//! injective, and sorting makes it independent of the stored child order, so
//! two subtrees share a code exactly when a color-preserving isomorphism maps
//! one onto the other.

use std::collections::HashMap;
use std::fmt;

use crate::error::Result;
use crate::tree::{Coloring, Tree};

/// Byte-string canonical form of a colored rooted subtree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn encode(color: u32, mut kids: Vec<&CanonicalCode>) -> Self {
        kids.sort();
        let len: usize = kids.iter().map(|c| c.0.len() + 4).sum();
        let mut out = Vec::with_capacity(8 + len);
        out.extend_from_slice(&color.to_be_bytes());
        out.extend_from_slice(&(kids.len() as u32).to_be_bytes());
        for kid in kids {
            out.extend_from_slice(&(kid.0.len() as u32).to_be_bytes());
            out.extend_from_slice(&kid.0);
        }
        CanonicalCode(out)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Canonical code of the subtree rooted at `v`, using the tree's stored
/// rooting.
pub fn canonical_code(tree: &Tree, coloring: &Coloring, v: usize) -> Result<CanonicalCode> {
    coloring.check_matches(tree)?;
    let mut order = vec![v];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(tree.children(order[i]));
        i += 1;
    }
    let mut codes: HashMap<usize, CanonicalCode> = HashMap::with_capacity(order.len());
    for &u in order.iter().rev() {
        let kids = tree.children(u).iter().map(|w| &codes[w]).collect();
        let code = CanonicalCode::encode(coloring.color(u), kids);
        codes.insert(u, code);
    }
    Ok(codes.remove(&v).expect("root code computed"))
}

/// Canonical codes of every vertex's subtree.
pub fn canonical_codes(tree: &Tree, coloring: &Coloring) -> Result<Vec<CanonicalCode>> {
    coloring.check_matches(tree)?;
    let n = tree.vertex_count();
    let mut codes: Vec<Option<CanonicalCode>> = vec![None; n];
    // Children have larger indices than their parent.
    for u in (0..n).rev() {
        let kids = tree
            .children(u)
            .iter()
            .map(|&w| codes[w].as_ref().expect("child code computed"))
            .collect();
        codes[u] = Some(CanonicalCode::encode(coloring.color(u), kids));
    }
    Ok(codes
        .into_iter()
        .map(|c| c.expect("all codes computed"))
        .collect())
}

/// Assigns each vertex a small integer such that two vertices share an id
/// exactly when their colored subtrees share a canonical code.
///
/// `children` lists each vertex's children and `bottom_up` must visit every
/// vertex after all of its children.
pub(crate) fn subtree_class_ids(
    children: &[Vec<usize>],
    bottom_up: impl Iterator<Item = usize>,
    colors: Option<&[u32]>,
) -> Vec<u32> {
    let mut ids = vec![u32::MAX; children.len()];
    let mut table: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
    for u in bottom_up {
        let mut key: Vec<u32> = children[u].iter().map(|&w| ids[w]).collect();
        key.sort_unstable();
        let color = colors.map_or(0, |c| c[u]);
        let next = table.len() as u32;
        ids[u] = *table.entry((color, key)).or_insert(next);
    }
    ids
}
