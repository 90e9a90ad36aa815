//! Exact treewidth with tree-decomposition certificates.
//!
//! The solver is a dynamic program over vertex subsets interpreted as
//! elimination prefixes: a subset S is feasible for width w if its vertices
//! can be eliminated in some order so that each vertex, at its elimination
//! time, reaches at most w later vertices through earlier ones. The program
//! runs with an increasing width cutoff starting from a sound contraction
//! lower bound, so infeasible widths die quickly and the final pass is
//! exact. Deterministic throughout; certificates are recovered by replaying
//! the table.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bramble::{bramble_order, Bramble, OrderResult};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

pub const TREEWIDTH_GUARD: usize = 20;
const TREEWIDTH_HARD_CAP: usize = 26;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeDecomposition {
    /// Bags are indexed 0..bags.len(); `tree_edges` connect bag indices.
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: BTreeMap<usize, VertexSet>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .values()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

/// Check the three tree-decomposition invariants plus tree-ness of the
/// underlying tree.
pub fn verify_tree_decomposition(g: &Graph, t: &TreeDecomposition) -> bool {
    let k = t.bags.len();
    if k == 0 {
        return g.n() == 0;
    }
    if t.bags.keys().copied().max().unwrap() >= k {
        return false;
    }
    // Tree: connected and acyclic on bag indices.
    if t.tree_edges.len() != k - 1 {
        return false;
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &t.tree_edges {
        if a >= k || b >= k {
            return false;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut cnt = 0;
    while let Some(u) = stack.pop() {
        cnt += 1;
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    if cnt != k {
        return false;
    }

    // Every vertex in some bag.
    let mut covered = vec![false; g.n()];
    for bag in t.bags.values() {
        for &v in bag {
            if v >= g.n() {
                return false;
            }
            covered[v] = true;
        }
    }
    if covered.iter().any(|c| !c) {
        return false;
    }

    // Every edge inside some bag.
    for (u, v) in g.edges() {
        let inside = t
            .bags
            .values()
            .any(|bag| bag.contains(&u) && bag.contains(&v));
        if !inside {
            return false;
        }
    }

    // Connected trace for every vertex.
    for v in g.vertices() {
        let holding: Vec<usize> = t
            .bags
            .iter()
            .filter(|(_, bag)| bag.contains(&v))
            .map(|(&i, _)| i)
            .collect();
        if holding.is_empty() {
            return false;
        }
        let inset: Vec<bool> = (0..k).map(|i| holding.contains(&i)).collect();
        let mut seen = vec![false; k];
        let start = holding[0];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 0;
        while let Some(u) = stack.pop() {
            reached += 1;
            for &w in &adj[u] {
                if inset[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if reached != holding.len() {
            return false;
        }
    }
    true
}

pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    exact_treewidth_guarded(g, TREEWIDTH_GUARD)
}

pub fn exact_treewidth_guarded(g: &Graph, guard: usize) -> Result<(usize, TreeDecomposition)> {
    let cap = guard.min(TREEWIDTH_HARD_CAP);
    if g.n() > cap {
        return Err(Error::GuardExceeded {
            what: "treewidth vertex count",
            actual: g.n(),
            limit: cap,
        });
    }
    let n = g.n();
    if n == 0 {
        // Single-empty-bag convention: width 0.
        return Ok((
            0,
            TreeDecomposition {
                tree_edges: vec![],
                bags: BTreeMap::from([(0, VertexSet::new())]),
            },
        ));
    }

    let adj: Vec<u32> = g
        .vertices()
        .map(|u| g.neighbors(u).fold(0u32, |m, v| m | 1 << v))
        .collect();

    let lb = contraction_degeneracy(g);
    let ub = elimination_upper_bound(g);
    debug_assert!(lb <= ub);

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut dp = vec![u8::MAX; 1usize << n];
    let mut width = ub;
    for w in lb..=ub {
        if run_cutoff_dp(&adj, n, w as u8, &mut dp) {
            width = w;
            break;
        }
    }

    let order = extract_elimination_order(&adj, n, full, &dp);
    let decomposition = decomposition_from_order(g, &adj, &order);
    debug_assert_eq!(decomposition.width(), width);
    Ok((width, decomposition))
}

/// Number of vertices outside `s + v` reachable from `v` through `s`.
#[inline]
fn q_value(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut reach = adj[v];
    let mut processed = 1u32 << v;
    loop {
        let frontier = reach & s & !processed;
        if frontier == 0 {
            break;
        }
        processed |= frontier;
        let mut bits = frontier;
        let mut acc = 0u32;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc |= adj[u];
        }
        reach |= acc;
    }
    (reach & !s & !(1u32 << v)).count_ones()
}

/// One pass of the subset DP with a width cutoff. Returns true when the
/// full vertex set is eliminable within width `w`; `dp` then holds exact
/// prefix widths (for prefixes achievable within the cutoff).
fn run_cutoff_dp(adj: &[u32], n: usize, w: u8, dp: &mut [u8]) -> bool {
    dp.fill(u8::MAX);
    dp[0] = 0;
    let full = dp.len() - 1;
    for s in 0..dp.len() {
        let cur = dp[s];
        if cur == u8::MAX {
            continue;
        }
        let mut rest = full as u32 & !(s as u32);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let q = q_value(adj, s as u32, v);
            if q as u8 > w {
                continue;
            }
            let val = cur.max(q as u8);
            let next = s | (1usize << v);
            if val < dp[next] {
                dp[next] = val;
            }
        }
    }
    dp[full] != u8::MAX && n > 0
}

/// Replays the table backwards, choosing at each step the last-eliminated
/// vertex consistent with the stored value (smallest id on ties).
fn extract_elimination_order(adj: &[u32], n: usize, full: u32, dp: &[u8]) -> Vec<usize> {
    let mut order = vec![0usize; n];
    let mut s = full;
    for slot in (0..n).rev() {
        let target = dp[s as usize];
        let mut pick = None;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = s & !(1u32 << v);
            let pv = dp[prev as usize];
            if pv == u8::MAX {
                continue;
            }
            let q = q_value(adj, prev, v) as u8;
            if pv.max(q) == target {
                pick = Some(v);
                break;
            }
        }
        let v = pick.expect("dp table is consistent");
        order[slot] = v;
        s &= !(1u32 << v);
    }
    order
}

/// Standard construction: bag of v is v plus its reachability set at
/// elimination time; each bag hangs off the bag of the first later vertex
/// it reaches, isolated bags are bridged to keep the tree connected.
fn decomposition_from_order(g: &Graph, adj: &[u32], order: &[usize]) -> TreeDecomposition {
    let n = order.len();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut bags: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut tree_edges = Vec::new();
    let mut prefix = 0u32;
    for (i, &v) in order.iter().enumerate() {
        let qset = reach_set(adj, prefix, v);
        let mut bag: VertexSet = (0..n).filter(|&u| qset >> u & 1 == 1).collect();
        bag.insert(v);
        // Parent: earliest-eliminated later vertex in the bag.
        let parent = bag
            .iter()
            .filter(|&&u| u != v && position[u] > i)
            .min_by_key(|&&u| position[u])
            .copied();
        match parent {
            Some(p) => tree_edges.push((i, position[p])),
            None => {
                if i + 1 < n {
                    tree_edges.push((i, i + 1));
                }
            }
        }
        bags.insert(i, bag);
        prefix |= 1 << v;
    }
    let _ = g;
    TreeDecomposition { tree_edges, bags }
}

#[inline]
fn reach_set(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut reach = adj[v];
    let mut processed = 1u32 << v;
    loop {
        let frontier = reach & s & !processed;
        if frontier == 0 {
            break;
        }
        processed |= frontier;
        let mut bits = frontier;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            reach |= adj[u];
        }
    }
    reach & !s & !(1u32 << v)
}

/// Sound lower bound: the treewidth of any minor is at most tw(G), and any
/// graph's treewidth is at least its minimum degree; greedily contract a
/// minimum-degree vertex into its lowest-degree neighbor and track the best
/// minimum degree seen.
fn contraction_degeneracy(g: &Graph) -> usize {
    let mut adj: Vec<VertexSet> = g.vertices().map(|v| g.neighbors(v).collect()).collect();
    let mut alive: VertexSet = g.vertices().collect();
    let mut best = 0usize;
    while alive.len() > 1 {
        let &v = alive
            .iter()
            .min_by_key(|&&v| (adj[v].len(), v))
            .expect("non-empty");
        best = best.max(adj[v].len());
        if adj[v].is_empty() {
            alive.remove(&v);
            continue;
        }
        let &u = adj[v]
            .iter()
            .min_by_key(|&&u| (adj[u].len(), u))
            .expect("non-empty");
        // Contract v into u.
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for w in nbrs {
            adj[w].remove(&v);
            if w != u {
                adj[w].insert(u);
                adj[u].insert(w);
            }
        }
        adj[v].clear();
        alive.remove(&v);
    }
    best
}

/// Upper bound from greedy elimination, taking the better of min-fill and
/// min-degree orderings.
fn elimination_upper_bound(g: &Graph) -> usize {
    let fill = greedy_elimination(g, true);
    let deg = greedy_elimination(g, false);
    fill.min(deg)
}

fn greedy_elimination(g: &Graph, min_fill: bool) -> usize {
    let n = g.n();
    let mut adj: Vec<VertexSet> = g.vertices().map(|v| g.neighbors(v).collect()).collect();
    let mut alive: VertexSet = g.vertices().collect();
    let mut width = 0usize;
    while !alive.is_empty() {
        let &v = alive
            .iter()
            .min_by_key(|&&v| {
                let d = adj[v].len();
                if min_fill {
                    let mut fill = 0usize;
                    let nb: Vec<usize> = adj[v].iter().copied().collect();
                    for (i, &a) in nb.iter().enumerate() {
                        for &b in &nb[i + 1..] {
                            if !adj[a].contains(&b) {
                                fill += 1;
                            }
                        }
                    }
                    (fill, d, v)
                } else {
                    (d, 0, v)
                }
            })
            .expect("non-empty");
        width = width.max(adj[v].len());
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        alive.remove(&v);
    }
    let _ = n;
    width
}

/// One-direction duality check: any bramble's order is at most tw + 1, with
/// equality reported when it holds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub bramble_order: usize,
    pub treewidth: usize,
    /// ord <= tw + 1; false would indicate an implementation bug.
    pub sound: bool,
    /// ord == tw + 1 (must hold for maximum-order brambles).
    pub tight: bool,
    pub witness: OrderResult,
}

pub fn check_duality(g: &Graph, b: &Bramble) -> Result<DualityReport> {
    check_duality_guarded(g, b, TREEWIDTH_GUARD)
}

pub fn check_duality_guarded(g: &Graph, b: &Bramble, tw_guard: usize) -> Result<DualityReport> {
    if !crate::bramble::verify_bramble(g, b) {
        return Err(Error::InvalidBramble(
            "duality check requires a verified bramble".into(),
        ));
    }
    let witness = bramble_order(g, b)?;
    let (tw, _) = exact_treewidth_guarded(g, tw_guard)?;
    Ok(DualityReport {
        bramble_order: witness.order,
        treewidth: tw,
        sound: witness.order <= tw + 1,
        tight: witness.order == tw + 1,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bramble::grid_with_cross_bramble;
    use crate::graph::grid_graph;

    fn k(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Brute-force treewidth over all elimination orderings; the
    /// permutation route is independent of the subset DP.
    fn treewidth_all_orderings(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 8);
        let adj: Vec<u32> = g
            .vertices()
            .map(|u| g.neighbors(u).fold(0u32, |m, v| m | 1 << v))
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = usize::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut s = 0u32;
            let mut width = 0usize;
            for &v in p {
                width = width.max(q_value(&adj, s, v) as usize);
                s |= 1 << v;
            }
            best = best.min(width);
        });
        return best;

        fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
            if i == p.len() {
                f(p);
                return;
            }
            for j in i..p.len() {
                p.swap(i, j);
                permute(p, i + 1, f);
                p.swap(i, j);
            }
        }
    }

    #[test]
    fn trees_have_width_one() {
        let mut tree = Graph::empty(7);
        for v in 1..7 {
            tree.add_edge(v, (v - 1) / 2).unwrap();
        }
        let (w, d) = exact_treewidth(&tree).unwrap();
        assert_eq!(w, 1);
        assert!(verify_tree_decomposition(&tree, &d));
    }

    #[test]
    fn cliques_have_width_n_minus_1() {
        for n in 1..=6 {
            let g = k(n);
            let (w, d) = exact_treewidth(&g).unwrap();
            assert_eq!(w, n - 1);
            assert!(verify_tree_decomposition(&g, &d));
        }
    }

    #[test]
    fn grid3_width_three_cross_checked() {
        let g = grid_graph(3);
        let (w, d) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 3);
        assert!(verify_tree_decomposition(&g, &d));
        // Cross-check via the bramble: order 4 = tw + 1.
        let (_, b) = grid_with_cross_bramble(3);
        let rep = check_duality(&g, &b).unwrap();
        assert!(rep.sound && rep.tight);
    }

    #[test]
    fn dp_matches_permutation_oracle_on_small_graphs() {
        let mut graphs = vec![k(4), k(5), grid_graph(2)];
        let mut petersen_cut = Graph::empty(7);
        for (u, v) in [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (5, 6),
            (6, 2),
            (1, 6),
            (3, 5),
        ] {
            petersen_cut.add_edge(u, v).unwrap();
        }
        graphs.push(petersen_cut);
        for g in &graphs {
            let (w, d) = exact_treewidth(g).unwrap();
            assert_eq!(w, treewidth_all_orderings(g), "graph n={}", g.n());
            assert!(verify_tree_decomposition(g, &d));
        }
    }

    #[test]
    fn verifier_rejects_broken_decompositions() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let good = TreeDecomposition {
            tree_edges: vec![(0, 1), (1, 2)],
            bags: BTreeMap::from([
                (0, VertexSet::from([0, 1])),
                (1, VertexSet::from([1, 2])),
                (2, VertexSet::from([2, 3])),
            ]),
        };
        assert!(verify_tree_decomposition(&g, &good));
        // Dropping the bag covering edge (2,3) must fail.
        let bad = TreeDecomposition {
            tree_edges: vec![(0, 1)],
            bags: BTreeMap::from([(0, VertexSet::from([0, 1])), (1, VertexSet::from([1, 2]))]),
        };
        assert!(!verify_tree_decomposition(&g, &bad));
        // Single bag with everything is always valid.
        let single = TreeDecomposition {
            tree_edges: vec![],
            bags: BTreeMap::from([(0, VertexSet::from([0, 1, 2, 3]))]),
        };
        assert!(verify_tree_decomposition(&g, &single));
    }

    #[test]
    fn disconnected_graphs_take_max_component_width() {
        let mut g = Graph::empty(7); // K3 + K4 disjoint
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            g.add_edge(u, v).unwrap();
        }
        for u in 3..7 {
            for v in (u + 1)..7 {
                g.add_edge(u, v).unwrap();
            }
        }
        let (w, d) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 3);
        assert!(verify_tree_decomposition(&g, &d));
    }

    #[test]
    fn empty_and_edgeless_conventions() {
        let (w, d) = exact_treewidth(&Graph::empty(0)).unwrap();
        assert_eq!(w, 0);
        assert_eq!(d.bags.len(), 1);
        let (w1, d1) = exact_treewidth(&Graph::empty(3)).unwrap();
        assert_eq!(w1, 0);
        assert!(verify_tree_decomposition(&Graph::empty(3), &d1));
    }

    #[test]
    fn deleting_one_vertex_drops_width_by_at_most_one() {
        let g = grid_graph(3);
        let (w, _) = exact_treewidth(&g).unwrap();
        for v in g.vertices() {
            let d = g.delete_vertices(&VertexSet::from([v]));
            let (w2, _) = exact_treewidth(&d.graph).unwrap();
            assert!(w2 + 1 >= w);
        }
    }

    #[test]
    fn duality_slack_for_weak_bramble() {
        let g = grid_graph(3);
        let b = Bramble::new(vec![VertexSet::from([0]), VertexSet::from([1])]);
        let rep = check_duality(&g, &b).unwrap();
        assert!(rep.sound && !rep.tight);
        assert_eq!(rep.bramble_order, 2);
    }

    #[test]
    fn treewidth_is_minor_monotone() {
        // Spot check: when the oracle finds a pattern minor, the pattern's
        // width never exceeds the host's.
        let hosts = vec![grid_graph(3), k(5)];
        let patterns: Vec<Graph> = vec![
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
            Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(),
        ];
        for host in &hosts {
            let (host_w, _) = exact_treewidth(host).unwrap();
            for pat in &patterns {
                if crate::minor::find_minor_brute(host, pat).unwrap().is_some() {
                    let (pat_w, _) = exact_treewidth(pat).unwrap();
                    assert!(pat_w <= host_w);
                }
            }
        }
    }
}
