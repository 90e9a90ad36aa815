//! Bramble-hitting cycles, vertex-disjoint path extraction via flow, and
//! the two-path-plus-linkage decomposition built on both.

use serde::{Deserialize, Serialize};

use crate::bramble::{bramble_order, subbramble_touching, Bramble, HittingSet};
use crate::graph::{Cycle, Graph, Path, VertexSet};
use crate::{Error, Result};

/// Caps for the bounded cycle searches. Breaching a budget is reported,
/// never silently accepted.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudgets {
    pub cycle_emissions: usize,
    pub dfs_steps: usize,
}

impl Default for SearchBudgets {
    fn default() -> Self {
        SearchBudgets {
            cycle_emissions: 400_000,
            dfs_steps: 4_000_000,
        }
    }
}

/// Two disjoint paths with touching-subbramble order exactly `t` each,
/// joined by `t` disjoint links.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathSystem {
    pub p1: Path,
    pub p2: Path,
    pub links: Vec<Path>,
    pub t: usize,
    /// Hitting sets certifying the orders of the touching subbrambles of
    /// p1 and p2.
    pub order_witnesses: (HittingSet, HittingSet),
}

impl PathSystem {
    pub fn linkage(&self) -> Linkage {
        Linkage {
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            links: self.links.clone(),
        }
    }
}

/// The raw structural part of a path system: two disjoint paths plus
/// pairwise disjoint links between them, internally disjoint from both.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Linkage {
    pub p1: Path,
    pub p2: Path,
    pub links: Vec<Path>,
}

impl Linkage {
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let s1 = self.p1.vertex_set();
        let s2 = self.p2.vertex_set();
        if s1.intersection(&s2).next().is_some() {
            return Err(Error::Precondition("p1 and p2 intersect".into()));
        }
        let mut used = VertexSet::new();
        for q in &self.links {
            Path::new(g, q.vertices().to_vec())?;
            if !(s1.contains(&q.first()) && s2.contains(&q.last())) {
                return Err(Error::Precondition(
                    "link endpoints must lie on p1 then p2".into(),
                ));
            }
            for &v in &q.vertices()[1..q.len() - 1] {
                if s1.contains(&v) || s2.contains(&v) {
                    return Err(Error::Precondition("link interior touches p1 or p2".into()));
                }
            }
            for &v in q.vertices() {
                if !used.insert(v) {
                    return Err(Error::Precondition("links share a vertex".into()));
                }
            }
        }
        Ok(())
    }

    pub fn all_vertices(&self) -> VertexSet {
        let mut all = self.p1.vertex_set();
        all.extend(self.p2.vertex_set());
        for q in &self.links {
            all.extend(q.vertices().iter().copied());
        }
        all
    }
}

/// Find a cycle meeting every element of the bramble. Exhaustive bounded
/// enumeration first, then a long-cycle DFS heuristic; running out of
/// budget is an error: a bramble of order at least three always admits
/// such a cycle, so failure signals a guard breach, not nonexistence.
pub fn hitting_cycle(g: &Graph, b: &Bramble) -> Result<Cycle> {
    hitting_cycle_with(g, b, &SearchBudgets::default())
}

pub fn hitting_cycle_with(g: &Graph, b: &Bramble, budgets: &SearchBudgets) -> Result<Cycle> {
    let ord = bramble_order(g, b)?;
    if ord.order < 3 {
        return Err(Error::Precondition(format!(
            "hitting_cycle requires bramble order >= 3, got {}",
            ord.order
        )));
    }
    let hits_all =
        |on_cycle: &[bool]| -> bool { b.elements.iter().all(|e| e.iter().any(|&v| on_cycle[v])) };

    let mut found: Option<Cycle> = None;
    enumerate_cycles(g, budgets, false, &mut |verts, on_path| {
        if hits_all(on_path) {
            found = Some(Cycle::new(g, verts.to_vec()).expect("enumerated cycles are valid"));
            return true;
        }
        false
    });
    if let Some(c) = found {
        debug_assert!(c.len() >= ord.order, "hitting cycle covers a hitting set");
        return Ok(c);
    }

    // Heuristic pass biased toward long cycles.
    let mut found: Option<Cycle> = None;
    enumerate_cycles(g, budgets, true, &mut |verts, on_path| {
        if hits_all(on_path) {
            found = Some(Cycle::new(g, verts.to_vec()).expect("enumerated cycles are valid"));
            return true;
        }
        false
    });
    found.ok_or_else(|| {
        Error::BudgetExhausted(format!(
            "no bramble-hitting cycle found within {} emissions / {} steps",
            budgets.cycle_emissions, budgets.dfs_steps
        ))
    })
}

/// Enumerate simple cycles rooted at their minimum vertex. With
/// `long_bias`, neighbors are explored in descending order so deep cycles
/// surface early. The callback returns true to stop; it receives the cycle
/// as a vertex sequence plus the on-path indicator.
pub(crate) fn enumerate_cycles(
    g: &Graph,
    budgets: &SearchBudgets,
    long_bias: bool,
    f: &mut impl FnMut(&[usize], &[bool]) -> bool,
) {
    let n = g.n();
    let mut on_path = vec![false; n];
    let mut path: Vec<usize> = Vec::new();
    let mut steps = 0usize;
    let mut emitted = 0usize;

    for root in 0..n {
        if steps > budgets.dfs_steps || emitted > budgets.cycle_emissions {
            return;
        }
        path.clear();
        path.push(root);
        on_path[root] = true;
        let stop = dfs(
            g,
            root,
            root,
            &mut path,
            &mut on_path,
            &mut steps,
            &mut emitted,
            budgets,
            long_bias,
            f,
        );
        on_path[root] = false;
        if stop {
            return;
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &Graph,
        root: usize,
        u: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        steps: &mut usize,
        emitted: &mut usize,
        budgets: &SearchBudgets,
        long_bias: bool,
        f: &mut impl FnMut(&[usize], &[bool]) -> bool,
    ) -> bool {
        let nbrs: Vec<usize> = if long_bias {
            let mut v: Vec<usize> = g.neighbors(u).collect();
            v.reverse();
            v
        } else {
            g.neighbors(u).collect()
        };
        for v in nbrs {
            *steps += 1;
            if *steps > budgets.dfs_steps || *emitted > budgets.cycle_emissions {
                return false;
            }
            if v == root && path.len() >= 3 {
                *emitted += 1;
                if f(path, on_path) {
                    return true;
                }
            }
            if v > root && !on_path[v] {
                on_path[v] = true;
                path.push(v);
                let stop = dfs(
                    g, root, v, path, on_path, steps, emitted, budgets, long_bias, f,
                );
                path.pop();
                on_path[v] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

/// Outcome of a disjoint-paths query: both variants are successes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum LinkageOutcome {
    Paths(Vec<Path>),
    /// Menger certificate: fewer than k paths exist, and this vertex set
    /// of size equal to the maximum linkage separates s from t.
    Cut {
        vertices: VertexSet,
    },
}

/// k vertex-disjoint S-T paths if they exist, else a minimum vertex cut.
/// With `minimize_length`, the returned k-linkage minimizes total vertex
/// count (unit-vertex-capacity minimum-cost flow).
pub fn disjoint_paths(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
    k: usize,
    minimize_length: bool,
) -> Result<LinkageOutcome> {
    for &v in s.iter().chain(t.iter()) {
        if v >= g.n() {
            return Err(Error::Precondition(format!("terminal {v} outside graph")));
        }
    }
    if k == 0 {
        return Ok(LinkageOutcome::Paths(vec![]));
    }

    let mut net = FlowNetwork::for_vertex_disjoint(g, s, t);
    let mut flow = 0usize;
    while flow < k && net.augment(minimize_length) {
        flow += 1;
    }
    if flow < k {
        let cut = net.vertex_cut();
        debug_assert_eq!(cut.len(), flow);
        return Ok(LinkageOutcome::Cut { vertices: cut });
    }
    let mut paths = net.decompose_paths(g)?;
    for p in &mut paths {
        trim_path(p, s, t, g)?;
    }
    paths.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    Ok(LinkageOutcome::Paths(paths))
}

/// Drop any prefix before the last S-vertex and any suffix after the first
/// T-vertex; minimum-cost solutions are already trimmed.
fn trim_path(p: &mut Path, s: &VertexSet, t: &VertexSet, g: &Graph) -> Result<()> {
    let verts = p.vertices();
    let start = verts
        .iter()
        .rposition(|v| s.contains(v))
        .ok_or_else(|| Error::Internal("flow path misses S".into()))?;
    let end_rel = verts[start..]
        .iter()
        .position(|v| t.contains(v))
        .ok_or_else(|| Error::Internal("flow path misses T".into()))?;
    let trimmed = verts[start..=start + end_rel].to_vec();
    *p = Path::new(g, trimmed)?;
    Ok(())
}

struct FlowArc {
    to: usize,
    rev: usize,
    cap: i64,
    cost: i64,
}

struct FlowNetwork {
    arcs: Vec<Vec<FlowArc>>,
    source: usize,
    sink: usize,
    n_vertices: usize,
}

const INF_CAP: i64 = 1 << 40;

impl FlowNetwork {
    /// Vertex-splitting reduction: in(v) = 2v, out(v) = 2v + 1, unit
    /// capacity and unit cost on every in->out arc, large capacity on edge
    /// and terminal arcs so minimum cuts consist of vertex arcs only.
    fn for_vertex_disjoint(g: &Graph, s: &VertexSet, t: &VertexSet) -> Self {
        let n = g.n();
        let source = 2 * n;
        let sink = 2 * n + 1;
        let mut net = FlowNetwork {
            arcs: (0..2 * n + 2).map(|_| Vec::new()).collect(),
            source,
            sink,
            n_vertices: n,
        };
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, 1, 1);
        }
        for (u, v) in g.edges() {
            net.add_arc(2 * u + 1, 2 * v, INF_CAP, 0);
            net.add_arc(2 * v + 1, 2 * u, INF_CAP, 0);
        }
        for &v in s {
            net.add_arc(source, 2 * v, INF_CAP, 0);
        }
        for &v in t {
            net.add_arc(2 * v + 1, sink, INF_CAP, 0);
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(FlowArc {
            to,
            rev: rev_from,
            cap,
            cost,
        });
        self.arcs[to].push(FlowArc {
            to: from,
            rev: rev_to,
            cap: 0,
            cost: -cost,
        });
    }

    /// Augment one unit along a cheapest residual path (Bellman-Ford over
    /// the residual graph; residual arcs carry negative costs), or plain
    /// BFS when costs are ignored. Returns false if the sink is
    /// unreachable.
    fn augment(&mut self, min_cost: bool) -> bool {
        let n = self.arcs.len();
        let mut dist = vec![i64::MAX; n];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        dist[self.source] = 0;
        if min_cost {
            let mut queue = std::collections::VecDeque::new();
            let mut inq = vec![false; n];
            queue.push_back(self.source);
            inq[self.source] = true;
            while let Some(u) = queue.pop_front() {
                inq[u] = false;
                for (i, a) in self.arcs[u].iter().enumerate() {
                    if a.cap > 0 && dist[u] != i64::MAX && dist[u] + a.cost < dist[a.to] {
                        dist[a.to] = dist[u] + a.cost;
                        parent[a.to] = Some((u, i));
                        if !inq[a.to] {
                            inq[a.to] = true;
                            queue.push_back(a.to);
                        }
                    }
                }
            }
        } else {
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(self.source);
            while let Some(u) = queue.pop_front() {
                for (i, a) in self.arcs[u].iter().enumerate() {
                    if a.cap > 0 && dist[a.to] == i64::MAX {
                        dist[a.to] = dist[u] + 1;
                        parent[a.to] = Some((u, i));
                        queue.push_back(a.to);
                    }
                }
            }
        }
        if parent[self.sink].is_none() {
            return false;
        }
        let mut v = self.sink;
        while v != self.source {
            let (u, i) = parent[v].expect("path reaches the source");
            let rev = self.arcs[u][i].rev;
            self.arcs[u][i].cap -= 1;
            self.arcs[v][rev].cap += 1;
            v = u;
        }
        true
    }

    /// Vertices whose in->out arc crosses the residual cut.
    fn vertex_cut(&self) -> VertexSet {
        let n = self.arcs.len();
        let mut reach = vec![false; n];
        reach[self.source] = true;
        let mut stack = vec![self.source];
        while let Some(u) = stack.pop() {
            for a in &self.arcs[u] {
                if a.cap > 0 && !reach[a.to] {
                    reach[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        (0..self.n_vertices)
            .filter(|&v| reach[2 * v] && !reach[2 * v + 1])
            .collect()
    }

    /// Walk unit flows from the source into vertex-disjoint paths,
    /// consuming flow as it goes.
    fn decompose_paths(&mut self, g: &Graph) -> Result<Vec<Path>> {
        let flow_on = |arcs: &Vec<Vec<FlowArc>>, from: usize, idx: usize| -> i64 {
            let a = &arcs[from][idx];
            arcs[a.to][a.rev].cap
        };
        let mut used_vertex = vec![false; self.n_vertices];
        let mut paths = Vec::new();
        let start_count = self.arcs[self.source].len();
        for si in 0..start_count {
            if flow_on(&self.arcs, self.source, si) <= 0 {
                continue;
            }
            let start_in = self.arcs[self.source][si].to;
            let mut verts = Vec::new();
            let mut node = start_in; // always an in(v) node
            loop {
                let v = node / 2;
                if used_vertex[v] {
                    return Err(Error::Internal("flow reuses a vertex".into()));
                }
                used_vertex[v] = true;
                verts.push(v);
                let out = 2 * v + 1;
                let mut next = None;
                for i in 0..self.arcs[out].len() {
                    let to = self.arcs[out][i].to;
                    let is_forward =
                        to == self.sink || (to.is_multiple_of(2) && to < 2 * self.n_vertices);
                    if is_forward && flow_on(&self.arcs, out, i) > 0 {
                        let rev = self.arcs[out][i].rev;
                        self.arcs[out][i].cap += 1;
                        self.arcs[to][rev].cap -= 1;
                        next = Some(to);
                        break;
                    }
                }
                match next {
                    Some(x) if x == self.sink => break,
                    Some(x) => node = x,
                    None => return Err(Error::Internal("flow path stalls".into())),
                }
            }
            paths.push(Path::new(g, verts)?);
        }
        Ok(paths)
    }
}

/// The two-path decomposition: a bramble-hitting cycle is peeled into two
/// disjoint paths whose touching subbrambles have order exactly `t`, then
/// a minimum-total-length t-linkage is drawn between them, which forces
/// each link to be internally disjoint from both paths.
pub fn path_partition(g: &Graph, b: &Bramble, t: usize) -> Result<PathSystem> {
    path_partition_with(g, b, t, &SearchBudgets::default())
}

pub fn path_partition_with(
    g: &Graph,
    b: &Bramble,
    t: usize,
    budgets: &SearchBudgets,
) -> Result<PathSystem> {
    if t == 0 {
        return Err(Error::Precondition("path_partition requires t >= 1".into()));
    }
    let ord = bramble_order(g, b)?;
    if ord.order < 2 * t + 1 {
        return Err(Error::Precondition(format!(
            "path_partition requires bramble order >= 2t+1 = {}, got {}",
            2 * t + 1,
            ord.order
        )));
    }
    let cyc = hitting_cycle_with(g, b, budgets)?;
    let verts = cyc.vertices();

    // Peel the minimal prefix whose touching subbramble reaches order t.
    // Orders grow by at most one per added vertex, so the first prefix at
    // order >= t has order exactly t.
    let (p1_end, w1) = minimal_prefix_with_order(g, b, verts, t)?
        .ok_or_else(|| Error::Internal("hitting cycle exhausted before order t".into()))?;
    let p1 = Path::new(g, verts[..=p1_end].to_vec())?;

    let rest = &verts[p1_end + 1..];
    let (p2_end, w2) = minimal_prefix_with_order(g, b, rest, t)?
        .ok_or_else(|| Error::Internal("cycle remainder exhausted before order t".into()))?;
    let p2 = Path::new(g, rest[..=p2_end].to_vec())?;

    let s1 = p1.vertex_set();
    let s2 = p2.vertex_set();
    let mut links = match disjoint_paths(g, &s1, &s2, t, true)? {
        LinkageOutcome::Paths(paths) => paths,
        LinkageOutcome::Cut { vertices } => {
            return Err(Error::Internal(format!(
                "Menger guarantee violated: cut {vertices:?} of size < t"
            )));
        }
    };

    // Order links by their attachment position along p1.
    let pos1: std::collections::HashMap<usize, usize> = p1
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    links.sort_by_key(|q| pos1[&q.first()]);

    let system = PathSystem {
        p1,
        p2,
        links,
        t,
        order_witnesses: (w1, w2),
    };
    system.linkage().verify(g)?;
    Ok(system)
}

/// Smallest prefix index i such that the subbramble touching verts[0..=i]
/// has order >= t, together with its witness. Returns None if the whole
/// sequence stays below t.
fn minimal_prefix_with_order(
    g: &Graph,
    b: &Bramble,
    verts: &[usize],
    t: usize,
) -> Result<Option<(usize, HittingSet)>> {
    let mut prefix = VertexSet::new();
    for (i, &v) in verts.iter().enumerate() {
        prefix.insert(v);
        let sub = subbramble_touching(b, &prefix);
        let res = bramble_order(g, &sub)?;
        if res.order >= t {
            debug_assert_eq!(res.order, t, "orders grow by at most one per vertex");
            return Ok(Some((i, res.witness)));
        }
    }
    Ok(None)
}
