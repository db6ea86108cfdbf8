//! Labeled trivalent trees, grown one leaf at a time.

use super::BoundaryIndex;

/// Leaves are nodes `0..n` (leaf `i` is label `i+1`); internal nodes follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub n: usize,
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Tree {
    /// Star on the first three leaves, with leaves `3..n` still to be added.
    fn star(n: usize) -> Tree {
        Tree { n, nodes: n + 1, edges: vec![(n, 0), (n, 1), (n, 2)] }
    }

    /// Subdivides edge `e` with a new internal node carrying `leaf`.
    fn graft(&self, e: usize, leaf: usize) -> Tree {
        let (u, v) = self.edges[e];
        let w = self.nodes;
        let mut edges = self.edges.clone();
        edges[e] = (u, w);
        edges.push((w, v));
        edges.push((w, leaf));
        Tree { n: self.n, nodes: w + 1, edges }
    }

    fn is_leaf(&self, v: usize) -> bool {
        v < self.n
    }

    /// Leaf mask on the `v` side of edge `e`.
    fn side(&self, e: usize, v: usize) -> u64 {
        let mut mask = 0u64;
        let mut stack = vec![(v, self.edges[e].0 + self.edges[e].1 - v)];
        while let Some((x, from)) = stack.pop() {
            if self.is_leaf(x) {
                mask |= 1 << x;
            }
            for &(a, b) in &self.edges {
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        mask
    }

    /// Splits of the internal edges, sorted.
    pub fn splits(&self) -> Vec<BoundaryIndex> {
        let mut out: Vec<BoundaryIndex> = (0..self.edges.len())
            .filter(|&e| !self.is_leaf(self.edges[e].0) && !self.is_leaf(self.edges[e].1))
            .map(|e| BoundaryIndex::from_mask(self.n, self.side(e, self.edges[e].0)).expect("internal edge split"))
            .collect();
        out.sort();
        out
    }
}

/// Every labeled trivalent tree on `n ≥ 4` leaves, as its set of splits.
pub fn trivalent_tree_splits(n: usize) -> Vec<Vec<BoundaryIndex>> {
    let mut trees = vec![Tree::star(n)];
    for leaf in 3..n {
        trees = trees.iter().flat_map(|t| (0..t.edges.len()).map(move |e| t.graft(e, leaf))).collect();
    }
    trees.iter().map(Tree::splits).collect()
}
