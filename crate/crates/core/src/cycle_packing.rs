//! Vertex-disjoint cycle packing in (near-)subcubic graphs, the
//! linkage-contraction construction that lifts packings back through
//! contracted link paths, and the packing-or-hitting-set dichotomy with
//! exact minimum feedback vertex sets.

use serde::{Deserialize, Serialize};

use crate::graph::{Cycle, Graph, VertexSet};
use crate::linkage::Linkage;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackMode {
    /// Enforce the preconditions; shortfalls below the guaranteed count are
    /// reported as calibration findings.
    Strict,
    /// Accept any input, best effort.
    Relaxed,
}

/// Pairwise vertex-disjoint cycles.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclePacking {
    pub cycles: Vec<Cycle>,
}

impl CyclePacking {
    pub fn pairwise_disjoint(&self) -> bool {
        crate::graph::sets_pairwise_disjoint(
            self.cycles
                .iter()
                .map(|c| c.vertex_set())
                .collect::<Vec<_>>()
                .iter(),
        )
    }
}

#[derive(Clone, Debug)]
pub struct PackOutcome {
    pub packing: CyclePacking,
    pub requested: usize,
    pub satisfied: bool,
    /// True when the exact search completed; false means the greedy
    /// fallback produced the packing.
    pub exact: bool,
}

/// Edge budget from the packing threshold: 3 c* k log2(k), floored at 0 so
/// k = 1 only asks for one cycle.
pub fn packing_edge_threshold(c_star: f64, k: usize) -> f64 {
    if k <= 1 {
        0.0
    } else {
        3.0 * c_star * k as f64 * (k as f64).log2()
    }
}

pub fn pack_cycles_subcubic(
    g: &Graph,
    k: usize,
    mode: PackMode,
    c_star: f64,
) -> Result<PackOutcome> {
    if mode == PackMode::Strict {
        if g.max_degree() > 3 {
            return Err(Error::Precondition(format!(
                "strict packing requires max degree <= 3, got {}",
                g.max_degree()
            )));
        }
        let need = g.n() as f64 + packing_edge_threshold(c_star, k);
        if (g.m() as f64) < need {
            return Err(Error::Precondition(format!(
                "strict packing requires |E| >= |V| + 3c*k log k = {need:.2}, got {}",
                g.m()
            )));
        }
    }
    let mg = Multigraph::from_graph(g);
    let (mg_cycles, exact) = mg.pack(k);
    let cycles: Vec<Cycle> = mg_cycles
        .iter()
        .map(|c| Cycle::new(g, c.iter().map(|&(v, _)| v).collect()))
        .collect::<Result<_>>()?;
    let packing = CyclePacking { cycles };
    debug_assert!(packing.pairwise_disjoint());
    Ok(PackOutcome {
        satisfied: packing.cycles.len() >= k,
        requested: k,
        packing,
        exact,
    })
}

// ---------------------------------------------------------------------
// Internal multigraph: contraction creates parallel edges, and a lifted
// "2-cycle" of two parallel edges is a genuine host cycle.

type MgCycle = Vec<(usize, usize)>; // (vertex, edge id to the next vertex)

pub(crate) struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge id)
}

const PACK_STEP_BUDGET: usize = 3_000_000;

impl Multigraph {
    pub(crate) fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((u, v));
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        id
    }

    fn from_graph(g: &Graph) -> Self {
        let mut mg = Multigraph::new(g.n());
        for (u, v) in g.edges() {
            mg.add_edge(u, v);
        }
        mg
    }

    fn alive_degree(&self, alive: &[bool], v: usize) -> usize {
        self.adj[v].iter().filter(|&&(u, _)| alive[u]).count()
    }

    /// Vertices on no cycle are dropped: peel degree <= 1 repeatedly.
    fn strip(&self, alive: &mut [bool]) {
        loop {
            let mut changed = false;
            for v in 0..self.n {
                if alive[v] && self.alive_degree(alive, v) <= 1 {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Upper bound on vertex-disjoint cycles in the alive subgraph:
    /// disjoint cycles are edge-disjoint, so at most m - n + c fit.
    fn cyclomatic(&self, alive: &[bool]) -> usize {
        let n_alive = alive.iter().filter(|&&a| a).count();
        let m_alive = self
            .edges
            .iter()
            .filter(|&&(u, v)| alive[u] && alive[v])
            .count();
        let mut comps = 0;
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            comps += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in &self.adj[u] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        (m_alive + comps).saturating_sub(n_alive)
    }

    /// Up to k vertex-disjoint cycles: exact branch-and-bound, descending
    /// to the true maximum when k is unachievable; greedy shortest-cycle
    /// removal if the step budget runs out. Returns the cycles and whether
    /// the result is exact.
    fn pack(&self, k: usize) -> (Vec<MgCycle>, bool) {
        let mut steps = 0usize;
        for target in (1..=k).rev() {
            let mut alive = vec![true; self.n];
            let mut out: Vec<MgCycle> = Vec::new();
            match self.search(&mut alive, target, &mut out, &mut steps) {
                Ok(true) => return (out, true),
                Ok(false) => continue,
                Err(()) => return (self.pack_greedy(k), false),
            }
        }
        (Vec::new(), true)
    }

    /// True when k more cycles were packed into `out`. Err(()) on budget
    /// exhaustion.
    fn search(
        &self,
        alive: &mut Vec<bool>,
        k: usize,
        out: &mut Vec<MgCycle>,
        steps: &mut usize,
    ) -> std::result::Result<bool, ()> {
        if k == 0 {
            return Ok(true);
        }
        let saved = alive.clone();
        self.strip(alive);
        if self.cyclomatic(alive) < k {
            *alive = saved;
            return Ok(false);
        }
        let pivot = match (0..self.n).find(|&v| alive[v]) {
            Some(v) => v,
            None => {
                *alive = saved;
                return Ok(false);
            }
        };

        // Inclusion branches: every cycle through the pivot.
        let cycles = self.cycles_through(pivot, alive, steps)?;
        for cyc in cycles {
            for &(v, _) in &cyc {
                alive[v] = false;
            }
            out.push(cyc);
            if self.search(alive, k - 1, out, steps)? {
                return Ok(true);
            }
            let cyc = out.pop().expect("pushed above");
            for &(v, _) in &cyc {
                alive[v] = true;
            }
        }
        // Exclusion branch: the pivot stays on no packed cycle.
        alive[pivot] = false;
        let found = self.search(alive, k, out, steps)?;
        if !found {
            *alive = saved;
        }
        Ok(found)
    }

    /// All simple cycles through v in the alive subgraph, each reported
    /// once (first edge id below closing edge id kills the mirror copy).
    fn cycles_through(
        &self,
        v: usize,
        alive: &[bool],
        steps: &mut usize,
    ) -> std::result::Result<Vec<MgCycle>, ()> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.n];
        on_path[v] = true;
        let mut path: MgCycle = Vec::new();
        for &(w, first_id) in &self.adj[v] {
            if !alive[w] {
                continue;
            }
            *steps += 1;
            if *steps > PACK_STEP_BUDGET {
                return Err(());
            }
            path.push((v, first_id));
            if w == v {
                path.pop();
                continue; // loops cannot occur, defensive
            }
            self.cycle_dfs(
                v,
                w,
                first_id,
                alive,
                &mut on_path,
                &mut path,
                &mut out,
                steps,
            )?;
            path.pop();
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn cycle_dfs(
        &self,
        root: usize,
        u: usize,
        first_id: usize,
        alive: &[bool],
        on_path: &mut Vec<bool>,
        path: &mut MgCycle,
        out: &mut Vec<MgCycle>,
        steps: &mut usize,
    ) -> std::result::Result<(), ()> {
        on_path[u] = true;
        for &(w, id) in &self.adj[u] {
            *steps += 1;
            if *steps > PACK_STEP_BUDGET {
                on_path[u] = false;
                return Err(());
            }
            if !alive[w] || id == first_id {
                continue;
            }
            if w == root {
                if first_id < id {
                    let mut cyc = path.clone();
                    cyc.push((u, id));
                    out.push(cyc);
                }
            } else if !on_path[w] {
                path.push((u, id));
                self.cycle_dfs(root, w, first_id, alive, on_path, path, out, steps)?;
                path.pop();
            }
        }
        on_path[u] = false;
        Ok(())
    }

    /// Greedy fallback: remove a shortest cycle (ties by lexicographic
    /// vertex sequence) until the graph is acyclic.
    fn pack_greedy(&self, want: usize) -> Vec<MgCycle> {
        let mut alive = vec![true; self.n];
        let mut out = Vec::new();
        while out.len() < want {
            match self.shortest_cycle(&alive) {
                Some(cyc) => {
                    for &(v, _) in &cyc {
                        alive[v] = false;
                    }
                    out.push(cyc);
                }
                None => break,
            }
        }
        out
    }

    /// Shortest cycle in the alive subgraph: for each edge, a BFS shortest
    /// path between its endpoints avoiding that edge.
    fn shortest_cycle(&self, alive: &[bool]) -> Option<MgCycle> {
        let mut best: Option<MgCycle> = None;
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if !alive[u] || !alive[v] {
                continue;
            }
            if let Some(path) = self.bfs_path_avoiding(u, v, id, alive) {
                let mut cyc: MgCycle = path;
                cyc.push((v, id));
                let better = match &best {
                    None => true,
                    Some(b) => {
                        cyc.len() < b.len()
                            || (cyc.len() == b.len()
                                && cyc.iter().map(|&(x, _)| x).collect::<Vec<_>>()
                                    < b.iter().map(|&(x, _)| x).collect::<Vec<_>>())
                    }
                };
                if better {
                    best = Some(cyc);
                }
            }
        }
        best
    }

    /// Shortest u-v path as (vertex, edge-to-next) pairs, not using the
    /// banned edge. Covers 2-cycles: a parallel edge is a length-1 path.
    fn bfs_path_avoiding(
        &self,
        u: usize,
        v: usize,
        banned: usize,
        alive: &[bool],
    ) -> Option<MgCycle> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[u] = true;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &(w, id) in &self.adj[x] {
                if id != banned && alive[w] && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((x, id));
                    queue.push_back(w);
                }
            }
        }
        if !seen[v] {
            return None;
        }
        let mut rev = Vec::new();
        let mut cur = v;
        while cur != u {
            let (p, id) = prev[cur].expect("bfs parents");
            rev.push((p, id));
            cur = p;
        }
        rev.reverse();
        Some(rev)
    }
}

// ---------------------------------------------------------------------
// Auxiliary graph: the linkage with each link contracted to a single edge.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuxiliaryGraph {
    /// Auxiliary node id -> host vertex.
    pub nodes: Vec<usize>,
    pub edges: Vec<AuxEdge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuxEdge {
    pub a: usize,
    pub b: usize,
    pub lift: AuxLift,
}

/// Where an auxiliary edge came from: a real path edge, or a contracted
/// link (the lift table back to its path).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AuxLift {
    PathEdge,
    Link { index: usize },
}

pub fn build_auxiliary(g: &Graph, linkage: &Linkage) -> Result<AuxiliaryGraph> {
    linkage.verify(g)?;
    let mut nodes: Vec<usize> = Vec::new();
    let mut index_of = std::collections::HashMap::new();
    for &v in linkage
        .p1
        .vertices()
        .iter()
        .chain(linkage.p2.vertices().iter())
    {
        index_of.insert(v, nodes.len());
        nodes.push(v);
    }
    let mut edges = Vec::new();
    for rail in [&linkage.p1, &linkage.p2] {
        for w in rail.vertices().windows(2) {
            edges.push(AuxEdge {
                a: index_of[&w[0]],
                b: index_of[&w[1]],
                lift: AuxLift::PathEdge,
            });
        }
    }
    for (i, q) in linkage.links.iter().enumerate() {
        edges.push(AuxEdge {
            a: index_of[&q.first()],
            b: index_of[&q.last()],
            lift: AuxLift::Link { index: i },
        });
    }
    let aux = AuxiliaryGraph { nodes, edges };
    // |E(J)| = |E(P1)| + |E(P2)| + number of links, and max degree <= 3.
    debug_assert_eq!(
        aux.edges.len(),
        linkage.p1.edge_count() + linkage.p2.edge_count() + linkage.links.len()
    );
    let mut deg = vec![0usize; aux.nodes.len()];
    for e in &aux.edges {
        deg[e.a] += 1;
        deg[e.b] += 1;
    }
    if deg.iter().any(|&d| d > 3) {
        return Err(Error::Internal("auxiliary graph exceeds degree 3".into()));
    }
    Ok(aux)
}

#[derive(Clone, Debug)]
pub struct LiftOutcome {
    pub packing: CyclePacking,
    /// Link indices traversed by each cycle; always at least two.
    pub links_used: Vec<Vec<usize>>,
    pub aux: AuxiliaryGraph,
    pub requested: usize,
    pub satisfied: bool,
    pub exact: bool,
}

/// Pack k disjoint cycles in p1 + p2 + links by packing the contracted
/// auxiliary graph and lifting contracted edges back to their link paths.
pub fn cycles_from_linkage(
    g: &Graph,
    linkage: &Linkage,
    k: usize,
    mode: PackMode,
    c_star: f64,
) -> Result<LiftOutcome> {
    let ell = linkage.links.len();
    if mode == PackMode::Strict {
        let need = 2.0 + packing_edge_threshold(c_star, k);
        if (ell as f64) < need {
            return Err(Error::Precondition(format!(
                "strict lifting requires >= 2 + 3c*k log k = {need:.2} links, got {ell}"
            )));
        }
    }
    let aux = build_auxiliary(g, linkage)?;
    let mut mg = Multigraph::new(aux.nodes.len());
    for e in &aux.edges {
        mg.add_edge(e.a, e.b);
    }
    let (mg_cycles, exact) = mg.pack(k);

    let mut cycles = Vec::new();
    let mut links_used = Vec::new();
    for cyc in &mg_cycles {
        let mut verts: Vec<usize> = Vec::new();
        let mut used = Vec::new();
        for &(node, edge_id) in cyc {
            let host = aux.nodes[node];
            verts.push(host);
            if let AuxLift::Link { index } = aux.edges[edge_id].lift {
                used.push(index);
                let q = &linkage.links[index];
                let interior = &q.vertices()[1..q.len() - 1];
                if q.first() == host {
                    verts.extend_from_slice(interior);
                } else {
                    verts.extend(interior.iter().rev().copied());
                }
            }
        }
        if used.len() < 2 {
            return Err(Error::Internal(
                "lifted cycle uses fewer than two links".into(),
            ));
        }
        used.sort_unstable();
        cycles.push(Cycle::new(g, verts)?);
        links_used.push(used);
    }
    let packing = CyclePacking { cycles };
    debug_assert!(packing.pairwise_disjoint());
    Ok(LiftOutcome {
        satisfied: packing.cycles.len() >= k,
        requested: k,
        packing,
        links_used,
        aux,
        exact,
    })
}

// ---------------------------------------------------------------------
// Packing-or-hitting-set dichotomy with exact minimum FVS.

pub const EP_GUARD: usize = 14;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum EpOutcome {
    Packing(CyclePacking),
    /// No k disjoint cycles; an exact minimum feedback vertex set is
    /// returned. `within_bound` false is a constant-calibration finding:
    /// it bounds the packing constant from below empirically.
    HittingSet {
        set: VertexSet,
        bound: f64,
        within_bound: bool,
        cycles_found: usize,
    },
}

pub fn cycle_hitting_or_packing(g: &Graph, k: usize, c_star: f64) -> Result<EpOutcome> {
    cycle_hitting_or_packing_guarded(g, k, c_star, EP_GUARD)
}

pub fn cycle_hitting_or_packing_guarded(
    g: &Graph,
    k: usize,
    c_star: f64,
    guard: usize,
) -> Result<EpOutcome> {
    if g.n() > guard.min(24) {
        return Err(Error::GuardExceeded {
            what: "packing-or-hitting vertex count",
            actual: g.n(),
            limit: guard.min(24),
        });
    }
    let mg = Multigraph::from_graph(g);
    let (mg_cycles, exact) = mg.pack(k);
    if mg_cycles.len() >= k {
        let cycles: Vec<Cycle> = mg_cycles[..k]
            .iter()
            .map(|c| Cycle::new(g, c.iter().map(|&(v, _)| v).collect()))
            .collect::<Result<_>>()?;
        return Ok(EpOutcome::Packing(CyclePacking { cycles }));
    }
    if !exact {
        return Err(Error::BudgetExhausted(
            "exact packing search ran out of budget".into(),
        ));
    }
    let set = minimum_fvs(g);
    let bound = if k <= 1 {
        0.0
    } else {
        c_star * k as f64 * (k as f64).log2()
    };
    Ok(EpOutcome::HittingSet {
        within_bound: (set.len() as f64) <= bound,
        set,
        bound,
        cycles_found: mg_cycles.len(),
    })
}

/// Exact minimum feedback vertex set by subset enumeration.
pub fn minimum_fvs(g: &Graph) -> VertexSet {
    let n = g.n();
    assert!(n <= 24);
    for size in 0..=n {
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let x: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if g.delete_vertices(&x).graph.is_acyclic() {
                return x;
            }
        }
    }
    unreachable!("deleting all vertices leaves an acyclic graph");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle_graph, disjoint_union, ladder, petersen};

    #[test]
    fn two_disjoint_triangles() {
        let g = disjoint_union(&cycle_graph(3), &cycle_graph(3));
        let out = pack_cycles_subcubic(&g, 2, PackMode::Relaxed, 1.0).unwrap();
        assert!(out.satisfied && out.exact);
        assert_eq!(out.packing.cycles.len(), 2);
        assert!(out.packing.pairwise_disjoint());
    }

    #[test]
    fn theta_graph_one_cycle() {
        // Two hubs joined by three internally disjoint 2-edge paths.
        let g = Graph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let out = pack_cycles_subcubic(&g, 1, PackMode::Strict, 1.0).unwrap();
        assert!(out.satisfied);
        assert_eq!(out.packing.cycles.len(), 1);
    }

    #[test]
    fn parallel_edges_make_a_two_cycle() {
        let mut mg = Multigraph::new(2);
        mg.add_edge(0, 1);
        mg.add_edge(0, 1);
        let (cycles, exact) = mg.pack(1);
        assert!(exact);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
    }

    #[test]
    fn strict_mode_rejects_sparse_input() {
        let g = cycle_graph(6);
        // k = 2 needs |E| >= |V| + 6.
        assert!(matches!(
            pack_cycles_subcubic(&g, 2, PackMode::Strict, 1.0),
            Err(Error::Precondition(_))
        ));
        // Relaxed mode reports the shortfall instead.
        let out = pack_cycles_subcubic(&g, 2, PackMode::Relaxed, 1.0).unwrap();
        assert!(!out.satisfied);
        assert_eq!(out.packing.cycles.len(), 1);
    }

    #[test]
    fn auxiliary_edge_identity_on_ladders() {
        for (rungs, inner) in [(4, 0), (5, 2), (8, 1)] {
            let l = ladder(rungs, inner);
            let lk = l.linkage();
            let aux = build_auxiliary(&l.graph, &lk).unwrap();
            assert_eq!(
                aux.edges.len(),
                lk.p1.edge_count() + lk.p2.edge_count() + rungs
            );
        }
    }

    #[test]
    fn lifted_cycles_use_two_rungs_each() {
        let l = ladder(4, 2);
        let lk = l.linkage();
        let out = cycles_from_linkage(&l.graph, &lk, 1, PackMode::Relaxed, 1.0).unwrap();
        assert!(out.satisfied);
        for used in &out.links_used {
            assert!(used.len() >= 2);
        }
        let all: VertexSet = lk.all_vertices();
        for c in &out.packing.cycles {
            assert!(c.vertex_set().is_subset(&all));
        }
    }

    #[test]
    fn eight_rung_ladder_packs_two() {
        let l = ladder(8, 0);
        let lk = l.linkage();
        let out = cycles_from_linkage(&l.graph, &lk, 2, PackMode::Relaxed, 1.0).unwrap();
        assert!(out.satisfied && out.exact);
        assert_eq!(out.packing.cycles.len(), 2);
        for used in &out.links_used {
            assert!(used.len() >= 2);
        }
    }

    #[test]
    fn strict_lifting_needs_enough_links() {
        let l = ladder(2, 0);
        let mut lk = l.linkage();
        lk.links.truncate(1);
        assert!(matches!(
            cycles_from_linkage(&l.graph, &lk, 1, PackMode::Strict, 1.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn forest_gets_empty_hitting_set() {
        let mut tree = Graph::empty(6);
        for v in 1..6 {
            tree.add_edge(v, (v - 1) / 2).unwrap();
        }
        for k in 1..=3 {
            match cycle_hitting_or_packing(&tree, k, 1.0).unwrap() {
                EpOutcome::HittingSet {
                    set, within_bound, ..
                } => {
                    assert!(set.is_empty());
                    assert!(within_bound);
                }
                EpOutcome::Packing(_) => panic!("forests have no cycles"),
            }
        }
    }

    #[test]
    fn k5_is_a_calibration_finding_for_k2() {
        // K5 has no two disjoint cycles (that needs six vertices) and its
        // exact minimum FVS has size 3: deleting any two vertices leaves a
        // triangle. With c* = 1 the bound is 2, so this is the documented
        // constant-calibration case.
        let g = complete(5);
        match cycle_hitting_or_packing(&g, 2, 1.0).unwrap() {
            EpOutcome::HittingSet {
                set,
                bound,
                within_bound,
                cycles_found,
            } => {
                assert_eq!(set.len(), 3);
                assert_eq!(bound, 2.0);
                assert!(!within_bound);
                assert_eq!(cycles_found, 1);
            }
            EpOutcome::Packing(_) => panic!("five vertices cannot host two disjoint cycles"),
        }
    }

    #[test]
    fn min_fvs_exhaustive_cross_check() {
        // Independent route: check every subset smaller than the answer.
        let g = complete(5);
        let fvs = minimum_fvs(&g);
        assert_eq!(fvs.len(), 3);
        for mask in 0u32..(1 << 5) {
            if (mask.count_ones() as usize) < 3 {
                let x: VertexSet = (0..5).filter(|&v| mask >> v & 1 == 1).collect();
                assert!(!g.delete_vertices(&x).graph.is_acyclic());
            }
        }
    }

    #[test]
    fn two_triangles_pack_for_k2() {
        let g = disjoint_union(&cycle_graph(3), &cycle_graph(3));
        match cycle_hitting_or_packing(&g, 2, 1.0).unwrap() {
            EpOutcome::Packing(p) => {
                assert_eq!(p.cycles.len(), 2);
                assert!(p.pairwise_disjoint());
            }
            EpOutcome::HittingSet { .. } => panic!("two triangles exist"),
        }
    }

    #[test]
    fn petersen_packs_two_five_cycles() {
        let g = petersen();
        let out = pack_cycles_subcubic(&g, 2, PackMode::Relaxed, 1.0).unwrap();
        assert!(out.satisfied);
        assert!(out.packing.cycles.iter().all(|c| c.len() >= 5));
    }

    #[test]
    fn edges_at_least_vertices_forces_a_cycle() {
        // The counting step behind the subcubic packing bound, checked on
        // the packing fixtures.
        for seed in 0..10 {
            let g = crate::generators::random_subcubic_with_excess(14, 6, seed);
            assert!(g.m() >= g.n());
            assert!(!g.is_acyclic());
        }
    }
}
