//! Simple undirected graphs with dense 0-based vertex identifiers, plus the
//! path/cycle building blocks used by every other module.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Vertex subsets are kept sorted so serialized certificates are stable.
pub type VertexSet = BTreeSet<usize>;

/// Simple undirected graph: no loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Rejects loops, duplicate edges and out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Parse(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::Parse(format!("loop at vertex {u} rejected")));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::Parse(format!("duplicate edge ({u}, {v}) rejected")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as sorted (u, v) pairs with u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in self.adj[u].range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Does `set` induce a connected non-empty subgraph?
    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        if set.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if set.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Is there an edge with one endpoint in `a` and the other in `b`?
    pub fn sets_adjacent(&self, a: &VertexSet, b: &VertexSet) -> bool {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        small
            .iter()
            .any(|&u| self.adj[u].iter().any(|v| large.contains(v)))
    }

    pub fn is_acyclic(&self) -> bool {
        // A simple graph is acyclic iff every component has |E| = |V| - 1.
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut verts = 0usize;
            let mut deg_sum = 0usize;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                verts += 1;
                deg_sum += self.degree(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            if deg_sum / 2 != verts - 1 {
                return false;
            }
        }
        true
    }

    /// Induced subgraph on `V \ x`, plus the identifier remapping in both
    /// directions so certificates can be translated back to the original
    /// coordinates.
    pub fn delete_vertices(&self, x: &VertexSet) -> DeletionMap {
        let kept: Vec<usize> = (0..self.n).filter(|v| !x.contains(v)).collect();
        self.induced(&kept)
    }

    /// Induced subgraph on the given (sorted, deduplicated) vertex list.
    pub fn induced(&self, kept: &[usize]) -> DeletionMap {
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let mut g = Graph::empty(kept.len());
        for (new_u, &old_u) in kept.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                if let Some(new_v) = old_to_new.get(old_v).copied().flatten() {
                    if new_u < new_v {
                        g.add_edge(new_u, new_v).expect("induced edges are valid");
                    }
                }
            }
        }
        DeletionMap {
            graph: g,
            kept: kept.to_vec(),
            old_to_new,
        }
    }

    /// Length (vertex count) of a longest cycle, 0 if acyclic. Exhaustive
    /// DFS, intended for small graphs only.
    pub fn circumference(&self, guard: usize) -> Result<usize> {
        if self.n > guard {
            return Err(Error::GuardExceeded {
                what: "circumference vertex count",
                actual: self.n,
                limit: guard,
            });
        }
        let mut best = 0usize;
        let mut on_path = vec![false; self.n];
        for root in 0..self.n {
            on_path[root] = true;
            self.circ_dfs(root, root, 1, &mut on_path, &mut best);
            on_path[root] = false;
        }
        Ok(best)
    }

    fn circ_dfs(&self, root: usize, u: usize, len: usize, on_path: &mut [bool], best: &mut usize) {
        for &v in &self.adj[u] {
            if v == root && len >= 3 {
                *best = (*best).max(len);
            }
            // Only roots that are cycle minima, so each cycle is tried once.
            if v > root && !on_path[v] {
                on_path[v] = true;
                self.circ_dfs(root, v, len + 1, on_path, best);
                on_path[v] = false;
            }
        }
    }
}

/// Result of an induced-subgraph operation: the new graph plus the
/// remapping table between old and new identifiers.
#[derive(Clone, Debug)]
pub struct DeletionMap {
    pub graph: Graph,
    /// new id -> old id
    pub kept: Vec<usize>,
    /// old id -> new id, None if deleted
    pub old_to_new: Vec<Option<usize>>,
}

impl DeletionMap {
    pub fn to_old(&self, new: usize) -> usize {
        self.kept[new]
    }

    pub fn set_to_old(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|&v| self.kept[v]).collect()
    }
}

/// The k-by-k grid, vertices (i, j) flattened row-major, edges between
/// orthogonal neighbors.
pub fn grid_graph(k: usize) -> Graph {
    assert!(k >= 1, "grid_graph requires k >= 1");
    let mut g = Graph::empty(k * k);
    for i in 0..k {
        for j in 0..k {
            let v = i * k + j;
            if j + 1 < k {
                g.add_edge(v, v + 1).unwrap();
            }
            if i + 1 < k {
                g.add_edge(v, v + k).unwrap();
            }
        }
    }
    g
}

/// Path in a graph: ordered, repetition-free, consecutive vertices adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::Precondition("empty path".into()));
        }
        let distinct: BTreeSet<_> = verts.iter().collect();
        if distinct.len() != verts.len() {
            return Err(Error::Precondition("path repeats a vertex".into()));
        }
        for w in verts.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::Precondition(format!(
                    "path step ({}, {}) is not an edge",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path(verts))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }
}

/// Cycle: repetition-free vertex sequence of length >= 3 whose consecutive
/// vertices (and last-first pair) are adjacent. Stored in canonical form:
/// minimum vertex first, then the smaller of its two neighbors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::Precondition("cycle needs length >= 3".into()));
        }
        let distinct: BTreeSet<_> = verts.iter().collect();
        if distinct.len() != verts.len() {
            return Err(Error::Precondition("cycle repeats a vertex".into()));
        }
        for i in 0..verts.len() {
            let u = verts[i];
            let v = verts[(i + 1) % verts.len()];
            if !g.has_edge(u, v) {
                return Err(Error::Precondition(format!(
                    "cycle step ({u}, {v}) is not an edge"
                )));
            }
        }
        Ok(Cycle(Self::canonicalize(verts)))
    }

    fn canonicalize(verts: Vec<usize>) -> Vec<usize> {
        let k = verts.len();
        let (pos, _) = verts
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .expect("non-empty");
        let mut rotated: Vec<usize> = (0..k).map(|i| verts[(pos + i) % k]).collect();
        if rotated[1] > rotated[k - 1] {
            rotated[1..].reverse();
        }
        rotated
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// Map the cycle through a vertex relabeling (e.g. back to pre-deletion
    /// identifiers). The caller promises adjacency is preserved.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Cycle {
        Cycle(Self::canonicalize(self.0.iter().map(|&v| map(v)).collect()))
    }
}

pub fn sets_pairwise_disjoint<'a>(sets: impl Iterator<Item = &'a VertexSet>) -> bool {
    let mut seen = BTreeSet::new();
    for s in sets {
        for &v in s {
            if !seen.insert(v) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        let g1 = grid_graph(1);
        assert_eq!((g1.n(), g1.m()), (1, 0));
        let g2 = grid_graph(2);
        assert_eq!((g2.n(), g2.m()), (4, 4));
        assert_eq!(g2.circumference(10).unwrap(), 4);
        let g3 = grid_graph(3);
        assert_eq!((g3.n(), g3.m()), (9, 12));
    }

    #[test]
    fn loops_and_duplicates_rejected() {
        let mut g = Graph::empty(3);
        assert!(g.add_edge(0, 0).is_err());
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(0, 7).is_err());
    }

    #[test]
    fn delete_vertices_k3_and_identity() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = k3.delete_vertices(&VertexSet::from([2]));
        assert_eq!(d.graph.n(), 2);
        assert_eq!(d.graph.m(), 1);
        assert!(d.graph.has_edge(0, 1));

        let id = k3.delete_vertices(&VertexSet::new());
        assert_eq!(id.graph, k3);
        assert_eq!(id.kept, vec![0, 1, 2]);
    }

    #[test]
    fn delete_middle_row_splits_grid() {
        // 3x3 grid minus its middle row leaves two disjoint 3-vertex paths.
        let g = grid_graph(3);
        let d = g.delete_vertices(&VertexSet::from([3, 4, 5]));
        let comps = d.graph.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));
        assert!(d.graph.is_acyclic());
        assert!(d.graph.m() <= g.m());
    }

    #[test]
    fn cycle_canonical_form() {
        let g = grid_graph(2); // 4-cycle 0-1-3-2
        let a = Cycle::new(&g, vec![3, 1, 0, 2]).unwrap();
        let b = Cycle::new(&g, vec![0, 1, 3, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices()[0], 0);
        assert!(a.vertices()[1] < *a.vertices().last().unwrap());
    }

    #[test]
    fn connected_set_checks() {
        let g = grid_graph(3);
        assert!(g.is_connected_set(&VertexSet::from([0, 1, 2])));
        assert!(!g.is_connected_set(&VertexSet::from([0, 2])));
        assert!(!g.is_connected_set(&VertexSet::new()));
    }

    proptest::proptest! {
        #[test]
        fn deletion_never_adds_edges(n in 1usize..9, seed in 0u64..300, del in 0u32..512) {
            let mut edges = Vec::new();
            let mut s = seed;
            for u in 0..n {
                for v in (u + 1)..n {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                    if s >> 63 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let x: VertexSet = (0..n).filter(|&v| del >> v & 1 == 1).collect();
            let d = g.delete_vertices(&x);
            proptest::prop_assert!(d.graph.m() <= g.m());
            proptest::prop_assert_eq!(d.graph.n(), n - x.len());
            // Identifiers remap consistently in both directions.
            for (new, &old) in d.kept.iter().enumerate() {
                proptest::prop_assert_eq!(d.old_to_new[old], Some(new));
            }
        }
    }
}
