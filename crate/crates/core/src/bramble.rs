//! Brambles: families of connected, pairwise-touching vertex sets, with
//! exact order computation (minimum hitting set) and the touching-subbramble
//! restriction used by the deletion-budget arguments.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{grid_graph, Graph, VertexSet};
use crate::{Error, Result};

pub const ORDER_ELEMENT_GUARD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bramble {
    pub elements: Vec<VertexSet>,
}

impl Bramble {
    pub fn new(elements: Vec<VertexSet>) -> Self {
        Bramble { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSet {
    pub members: VertexSet,
}

impl HittingSet {
    /// Does this set intersect every element of the bramble?
    pub fn hits_all(&self, b: &Bramble) -> bool {
        b.elements
            .iter()
            .all(|e| e.iter().any(|v| self.members.contains(v)))
    }
}

/// Exact bramble order plus one optimal hitting set as the certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderResult {
    pub order: usize,
    pub witness: HittingSet,
}

/// True iff every element induces a connected subgraph and every two
/// elements intersect or are joined by an edge.
pub fn verify_bramble(g: &Graph, b: &Bramble) -> bool {
    for e in &b.elements {
        if !g.is_connected_set(e) {
            return false;
        }
    }
    for (i, a) in b.elements.iter().enumerate() {
        for c in &b.elements[i + 1..] {
            let touching = a.intersection(c).next().is_some() || g.sets_adjacent(a, c);
            if !touching {
                return false;
            }
        }
    }
    true
}

/// The subbramble of elements intersecting `x`. Any subset of a bramble is
/// a bramble, so no re-verification is needed.
pub fn subbramble_touching(b: &Bramble, x: &VertexSet) -> Bramble {
    Bramble {
        elements: b
            .elements
            .iter()
            .filter(|e| e.intersection(x).next().is_some())
            .cloned()
            .collect(),
    }
}

/// Exact order of a bramble via memoized minimum hitting set search.
/// The empty bramble has order 0 by convention.
pub fn bramble_order(g: &Graph, b: &Bramble) -> Result<OrderResult> {
    bramble_order_guarded(g, b, ORDER_ELEMENT_GUARD)
}

pub fn bramble_order_guarded(g: &Graph, b: &Bramble, guard: usize) -> Result<OrderResult> {
    if b.len() > guard.min(64) {
        return Err(Error::GuardExceeded {
            what: "bramble element count",
            actual: b.len(),
            limit: guard.min(64),
        });
    }
    if b.is_empty() {
        return Ok(OrderResult {
            order: 0,
            witness: HittingSet {
                members: VertexSet::new(),
            },
        });
    }
    let solver = HitSolver::new(g, b)?;
    let full: u64 = if b.len() == 64 {
        u64::MAX
    } else {
        (1u64 << b.len()) - 1
    };
    let mut memo = HashMap::new();
    let order = solver.solve(full, &mut memo)?;
    let witness = solver.extract(full, &memo);
    debug_assert_eq!(witness.members.len(), order);
    debug_assert!(witness.hits_all(b));
    Ok(OrderResult { order, witness })
}

struct HitSolver<'a> {
    b: &'a Bramble,
    /// Per vertex: mask of elements containing it.
    containing: HashMap<usize, u64>,
}

const HIT_MEMO_CAP: usize = 8_000_000;

impl<'a> HitSolver<'a> {
    fn new(g: &Graph, b: &'a Bramble) -> Result<Self> {
        let mut containing: HashMap<usize, u64> = HashMap::new();
        for (i, e) in b.elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidBramble("empty element".into()));
            }
            for &v in e {
                if v >= g.n() {
                    return Err(Error::InvalidBramble(format!(
                        "element vertex {v} outside graph"
                    )));
                }
                *containing.entry(v).or_insert(0) |= 1 << i;
            }
        }
        Ok(HitSolver { b, containing })
    }

    /// Minimum number of vertices hitting the `unhit` elements. Branches on
    /// the unhit element with the fewest vertices; memoized on `unhit`.
    fn solve(&self, unhit: u64, memo: &mut HashMap<u64, usize>) -> Result<usize> {
        if unhit == 0 {
            return Ok(0);
        }
        if let Some(&v) = memo.get(&unhit) {
            return Ok(v);
        }
        if memo.len() > HIT_MEMO_CAP {
            return Err(Error::BudgetExhausted(
                "hitting-set memo exceeded its cap".into(),
            ));
        }
        let e = self.branch_element(unhit);
        let mut best = usize::MAX;
        for &v in &self.b.elements[e] {
            let rest = unhit & !self.containing[&v];
            let sub = self.solve(rest, memo)?;
            best = best.min(1 + sub);
        }
        memo.insert(unhit, best);
        Ok(best)
    }

    fn branch_element(&self, unhit: u64) -> usize {
        let mut best = usize::MAX;
        let mut pick = 0;
        let mut bits = unhit;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.b.elements[i].len() < best {
                best = self.b.elements[i].len();
                pick = i;
            }
        }
        pick
    }

    fn extract(&self, full: u64, memo: &HashMap<u64, usize>) -> HittingSet {
        let mut members = VertexSet::new();
        let mut unhit = full;
        while unhit != 0 {
            let target = memo[&unhit];
            let e = self.branch_element(unhit);
            let mut chosen = None;
            for &v in &self.b.elements[e] {
                let rest = unhit & !self.containing[&v];
                let sub = if rest == 0 { 0 } else { memo[&rest] };
                if 1 + sub == target {
                    chosen = Some((v, rest));
                    break;
                }
            }
            let (v, rest) = chosen.expect("memo is consistent");
            members.insert(v);
            unhit = rest;
        }
        HittingSet { members }
    }
}

/// The standard order-(k+1) bramble of the k-by-k grid: the crosses of the
/// top-left (k-1)-by-(k-1) subgrid, the bottom row, and the right column
/// without its bottom corner.
pub fn grid_cross_bramble(k: usize) -> Bramble {
    assert!(k >= 2, "grid_cross_bramble requires k >= 2");
    let id = |i: usize, j: usize| i * k + j;
    let mut elements = Vec::with_capacity((k - 1) * (k - 1) + 2);
    for i in 0..k - 1 {
        for j in 0..k - 1 {
            let mut cross = VertexSet::new();
            for c in 0..k - 1 {
                cross.insert(id(i, c));
            }
            for r in 0..k - 1 {
                cross.insert(id(r, j));
            }
            elements.push(cross);
        }
    }
    elements.push((0..k).map(|c| id(k - 1, c)).collect());
    elements.push((0..k - 1).map(|r| id(r, k - 1)).collect());
    Bramble { elements }
}

/// Heuristic bramble construction with no optimality promise. Tries a
/// greedy-clique singleton bramble, the grid construction when the graph is
/// a canonically laid out rectangular grid, and a single-edge fallback,
/// returning the candidate with the highest certified order.
pub fn greedy_bramble(g: &Graph) -> Bramble {
    let mut candidates: Vec<Bramble> = Vec::new();

    if let Some((rows, cols)) = detect_row_major_grid(g) {
        candidates.push(rect_grid_bramble(rows, cols));
    }

    let clique = greedy_clique(g);
    if !clique.is_empty() {
        candidates.push(Bramble {
            elements: clique
                .into_iter()
                .take(ORDER_ELEMENT_GUARD)
                .map(|v| VertexSet::from([v]))
                .collect(),
        });
    }

    if let Some((u, v)) = g.edges().first().copied() {
        candidates.push(Bramble {
            elements: vec![VertexSet::from([u]), VertexSet::from([v])],
        });
    } else if g.n() > 0 {
        candidates.push(Bramble {
            elements: vec![VertexSet::from([0])],
        });
    }

    let mut best: Option<(usize, Bramble)> = None;
    for cand in candidates {
        if !verify_bramble(g, &cand) {
            continue;
        }
        let Ok(res) = bramble_order(g, &cand) else {
            continue;
        };
        if best.as_ref().is_none_or(|(o, _)| res.order > *o) {
            best = Some((res.order, cand));
        }
    }
    best.map(|(_, b)| b).unwrap_or(Bramble { elements: vec![] })
}

fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for start in g.vertices() {
        let mut clique = vec![start];
        let mut cands: VertexSet = g.neighbors(start).collect();
        while let Some(&pick) = cands.iter().max_by_key(|&&c| {
            (
                g.neighbors(c).filter(|x| cands.contains(x)).count(),
                std::cmp::Reverse(c),
            )
        }) {
            clique.push(pick);
            cands.retain(|&x| x != pick && g.has_edge(x, pick));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Recognize a rows-by-cols grid in row-major vertex layout.
fn detect_row_major_grid(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    for rows in 2..=n {
        if !n.is_multiple_of(rows) {
            continue;
        }
        let cols = n / rows;
        if cols < 2 {
            continue;
        }
        let expected = rows * (cols - 1) + cols * (rows - 1);
        if g.m() != expected {
            continue;
        }
        let ok = (0..rows).all(|i| {
            (0..cols).all(|j| {
                let v = i * cols + j;
                (j + 1 >= cols || g.has_edge(v, v + 1))
                    && (i + 1 >= rows || g.has_edge(v, v + cols))
            })
        });
        if ok {
            return Some((rows, cols));
        }
    }
    None
}

fn rect_grid_bramble(rows: usize, cols: usize) -> Bramble {
    if rows == cols {
        return grid_cross_bramble(rows);
    }
    let id = |i: usize, j: usize| i * cols + j;
    let mut elements = Vec::new();
    for i in 0..rows - 1 {
        for j in 0..cols - 1 {
            let mut cross = VertexSet::new();
            for c in 0..cols - 1 {
                cross.insert(id(i, c));
            }
            for r in 0..rows - 1 {
                cross.insert(id(r, j));
            }
            elements.push(cross);
        }
    }
    elements.push((0..cols).map(|c| id(rows - 1, c)).collect());
    elements.push((0..rows - 1).map(|r| id(r, cols - 1)).collect());
    Bramble { elements }
}

/// Convenience fixture: the grid plus its standard bramble.
pub fn grid_with_cross_bramble(k: usize) -> (Graph, Bramble) {
    (grid_graph(k), grid_cross_bramble(k))
}
