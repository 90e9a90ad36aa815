//! Minor models: the certificate type, its checker, and a brute-force
//! minor-containment oracle for small hosts used to validate everything
//! the extractor produces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

pub const MINOR_BRUTE_GUARD: usize = 12;

/// Map from pattern vertex to its branch set in the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinorModel {
    pub branch_sets: BTreeMap<usize, VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelViolation {
    /// Model keys differ from the pattern vertex set.
    KeyMismatch {
        missing: Vec<usize>,
        extra: Vec<usize>,
    },
    EmptyBranchSet {
        pattern_vertex: usize,
    },
    VertexOutsideHost {
        pattern_vertex: usize,
        vertex: usize,
    },
    Overlap {
        a: usize,
        b: usize,
        vertex: usize,
    },
    Disconnected {
        pattern_vertex: usize,
    },
    MissingEdge {
        a: usize,
        b: usize,
    },
}

impl std::fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelViolation::KeyMismatch { missing, extra } => {
                write!(
                    f,
                    "model keys mismatch pattern: missing {missing:?}, extra {extra:?}"
                )
            }
            ModelViolation::EmptyBranchSet { pattern_vertex } => {
                write!(f, "branch set of {pattern_vertex} is empty")
            }
            ModelViolation::VertexOutsideHost {
                pattern_vertex,
                vertex,
            } => {
                write!(
                    f,
                    "branch set of {pattern_vertex} contains non-host vertex {vertex}"
                )
            }
            ModelViolation::Overlap { a, b, vertex } => {
                write!(f, "branch sets of {a} and {b} share vertex {vertex}")
            }
            ModelViolation::Disconnected { pattern_vertex } => {
                write!(f, "branch set of {pattern_vertex} is not connected")
            }
            ModelViolation::MissingEdge { a, b } => {
                write!(f, "no host edge realizes pattern edge ({a}, {b})")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelReport {
    pub violations: Vec<ModelViolation>,
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check all minor-model invariants of `model` against `host` and
/// `pattern`. Violations are reported, never thrown.
pub fn verify_minor_model(host: &Graph, pattern: &Graph, model: &MinorModel) -> ModelReport {
    let mut violations = Vec::new();

    let missing: Vec<usize> = pattern
        .vertices()
        .filter(|v| !model.branch_sets.contains_key(v))
        .collect();
    let extra: Vec<usize> = model
        .branch_sets
        .keys()
        .copied()
        .filter(|&v| v >= pattern.n())
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        violations.push(ModelViolation::KeyMismatch { missing, extra });
    }

    for (&pv, set) in &model.branch_sets {
        if set.is_empty() {
            violations.push(ModelViolation::EmptyBranchSet { pattern_vertex: pv });
            continue;
        }
        if let Some(&v) = set.iter().find(|&&v| v >= host.n()) {
            violations.push(ModelViolation::VertexOutsideHost {
                pattern_vertex: pv,
                vertex: v,
            });
            continue;
        }
        if !host.is_connected_set(set) {
            violations.push(ModelViolation::Disconnected { pattern_vertex: pv });
        }
    }

    let keys: Vec<usize> = model.branch_sets.keys().copied().collect();
    for (i, &a) in keys.iter().enumerate() {
        for &b in &keys[i + 1..] {
            if let Some(&v) = model.branch_sets[&a]
                .intersection(&model.branch_sets[&b])
                .next()
            {
                violations.push(ModelViolation::Overlap { a, b, vertex: v });
            }
        }
    }

    for (a, b) in pattern.edges() {
        match (model.branch_sets.get(&a), model.branch_sets.get(&b)) {
            (Some(sa), Some(sb)) if !sa.is_empty() && !sb.is_empty() => {
                let in_host = sa.iter().all(|&v| v < host.n()) && sb.iter().all(|&v| v < host.n());
                if in_host && !host.sets_adjacent(sa, sb) {
                    violations.push(ModelViolation::MissingEdge { a, b });
                }
            }
            _ => {}
        }
    }

    ModelReport { violations }
}

/// Exhaustive minor search over branch-set assignments with pruning.
/// Returns a verified model iff the pattern is a minor of the host.
pub fn find_minor_brute(host: &Graph, pattern: &Graph) -> Result<Option<MinorModel>> {
    find_minor_brute_guarded(host, pattern, MINOR_BRUTE_GUARD)
}

pub fn find_minor_brute_guarded(
    host: &Graph,
    pattern: &Graph,
    guard: usize,
) -> Result<Option<MinorModel>> {
    if host.n() > guard {
        return Err(Error::GuardExceeded {
            what: "minor oracle host vertex count",
            actual: host.n(),
            limit: guard,
        });
    }
    assert!(host.n() <= 32, "oracle uses 32-bit vertex masks");

    if pattern.n() == 0 {
        return Ok(Some(MinorModel {
            branch_sets: BTreeMap::new(),
        }));
    }
    if !prechecks_pass(host, pattern) {
        return Ok(None);
    }

    let host_adj: Vec<u32> = host
        .vertices()
        .map(|u| host.neighbors(u).fold(0u32, |m, v| m | 1 << v))
        .collect();

    let order = pattern_order(pattern);
    let mut search = Search {
        host_adj: &host_adj,
        pattern,
        order: &order,
        assigned: vec![0u32; pattern.n()],
        free: (0..host.n()).fold(0u32, |m, v| m | 1 << v),
    };
    let found = search.place(0);
    if !found {
        return Ok(None);
    }
    let model = MinorModel {
        branch_sets: (0..pattern.n())
            .map(|pv| {
                let mask = search.assigned[pv];
                (pv, (0..host.n()).filter(|&v| mask >> v & 1 == 1).collect())
            })
            .collect(),
    };
    debug_assert!(verify_minor_model(host, pattern, &model).ok());
    Ok(Some(model))
}

/// Cheap necessary conditions checked before the search. Degree-based
/// pruning is deliberately absent: contractions can raise degrees, so no
/// pointwise degree-sequence test is sound for minors.
fn prechecks_pass(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return false;
    }
    if host.is_acyclic() && !pattern.is_acyclic() {
        return false;
    }
    // Each pattern component must fit inside a single host component.
    let host_comps = host.components();
    let pat_comps = pattern.components();
    let mut caps: Vec<(usize, usize)> = host_comps
        .iter()
        .map(|c| {
            let edges = host
                .edges()
                .iter()
                .filter(|&&(u, _)| c.binary_search(&u).is_ok())
                .count();
            (c.len(), edges)
        })
        .collect();
    let mut demands: Vec<(usize, usize)> = pat_comps
        .iter()
        .map(|c| {
            let edges = pattern
                .edges()
                .iter()
                .filter(|&&(u, _)| c.binary_search(&u).is_ok())
                .count();
            (c.len(), edges)
        })
        .collect();
    demands.sort_unstable_by(|a, b| b.cmp(a));
    fn assign(demands: &[(usize, usize)], caps: &mut Vec<(usize, usize)>) -> bool {
        let Some(&(dv, de)) = demands.first() else {
            return true;
        };
        for i in 0..caps.len() {
            if caps[i].0 >= dv && caps[i].1 >= de {
                let saved = caps[i];
                caps[i].0 -= dv;
                caps[i].1 -= de;
                if assign(&demands[1..], caps) {
                    return true;
                }
                caps[i] = saved;
            }
        }
        false
    }
    assign(&demands, &mut caps)
}

/// Placement order: start at a maximum-degree pattern vertex, then always
/// place the vertex with the most already-placed neighbors so adjacency
/// constraints bind as early as possible.
fn pattern_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let placed_nbrs = pattern.neighbors(v).filter(|&u| placed[u]).count();
                (placed_nbrs, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[pick] = true;
        order.push(pick);
    }
    order
}

struct Search<'a> {
    host_adj: &'a [u32],
    pattern: &'a Graph,
    order: &'a [usize],
    assigned: Vec<u32>,
    free: u32,
}

impl Search<'_> {
    fn place(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let pv = self.order[depth];
        let remaining_after = self.order.len() - depth - 1;
        let free_count = self.free.count_ones() as usize;
        if free_count < remaining_after + 1 {
            return false;
        }
        let max_size = free_count - remaining_after;

        // Earlier-placed pattern neighbors this branch set must attach to.
        let required: Vec<u32> = self.order[..depth]
            .iter()
            .filter(|&&q| self.pattern.has_edge(pv, q))
            .map(|&q| self.assigned[q])
            .collect();

        let free = self.free;
        let mut found = false;
        enumerate_connected_subsets(self.host_adj, free, max_size, &mut |set, nbrs| {
            if required.iter().all(|&req| nbrs & req != 0) {
                self.assigned[pv] = set;
                self.free &= !set;
                if self.place(depth + 1) {
                    found = true;
                }
                self.free |= set;
                if !found {
                    self.assigned[pv] = 0;
                }
            }
            found
        });
        found
    }
}

/// Enumerate every connected subset of `allowed` (size capped) exactly
/// once, passing the subset and the union of its neighborhoods to `f`.
/// Stops early when `f` returns true.
fn enumerate_connected_subsets(
    adj: &[u32],
    allowed: u32,
    max_size: usize,
    f: &mut impl FnMut(u32, u32) -> bool,
) {
    if max_size == 0 {
        return;
    }
    let mut rest = allowed;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // Subsets whose minimum vertex is v: grow only with higher ids.
        let permitted = allowed & !((1u32 << v) | (1u32.wrapping_shl(v as u32) - 1));
        if grow(adj, 1 << v, adj[v], permitted, max_size, f) {
            return;
        }
    }

    fn grow(
        adj: &[u32],
        set: u32,
        nbrs: u32,
        permitted: u32,
        max_size: usize,
        f: &mut impl FnMut(u32, u32) -> bool,
    ) -> bool {
        if f(set, nbrs) {
            return true;
        }
        if (set.count_ones() as usize) >= max_size {
            return false;
        }
        // Extend by frontier vertices in increasing order; once skipped, a
        // vertex stays banned in that branch so each subset appears once.
        let mut frontier = nbrs & permitted & !set;
        let mut banned = 0u32;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            if grow(
                adj,
                set | 1 << w,
                nbrs | adj[w],
                permitted & !banned,
                max_size,
                f,
            ) {
                return true;
            }
            banned |= 1 << w;
        }
        false
    }
}
