//! Seeded fixture and random-graph generators. Everything is deterministic
//! given its seed; experiment reports depend on that.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Path};
use crate::linkage::Linkage;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(v - 1, v).unwrap();
    }
    g
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let mut g = path_graph(n);
    g.add_edge(n - 1, 0).unwrap();
    g
}

pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).unwrap();
        g.add_edge(i, i + 5).unwrap();
        g.add_edge(i + 5, (i + 2) % 5 + 5).unwrap();
    }
    g
}

/// Disjoint union with the second graph's vertices shifted up.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::empty(a.n() + b.n());
    for (u, v) in a.edges() {
        g.add_edge(u, v).unwrap();
    }
    for (u, v) in b.edges() {
        g.add_edge(a.n() + u, a.n() + v).unwrap();
    }
    g
}

/// Uniform G(n, m): m edges sampled without replacement.
pub fn gnm_random(n: usize, m: usize, seed: u64) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    let m = m.min(pairs.len());
    Graph::from_edges(n, &pairs[..m]).expect("sampled pairs are simple")
}

/// Connected G(n, m) by rejection over derived seeds.
pub fn random_connected_gnm(n: usize, m: usize, seed: u64) -> Graph {
    let m = m.max(n.saturating_sub(1));
    for round in 0..10_000u64 {
        let g = gnm_random(
            n,
            m,
            seed.wrapping_add(round.wrapping_mul(0x9e3779b97f4a7c15)),
        );
        if g.is_connected() {
            return g;
        }
    }
    panic!("no connected sample for n={n}, m={m}");
}

/// Connected subcubic graph with exactly |V| + excess edges: a Hamiltonian
/// cycle plus `excess` chords between vertices that still have degree two.
pub fn random_subcubic_with_excess(n: usize, excess: usize, seed: u64) -> Graph {
    assert!(
        n >= 3 && n >= 2 * excess + 2,
        "need room for {excess} chords"
    );
    let mut g = cycle_graph(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    let mut attempts = 0;
    while added < excess {
        attempts += 1;
        assert!(attempts < 1_000_000, "chord sampling stalled");
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || g.degree(u) >= 3 || g.degree(v) >= 3 || g.has_edge(u, v) {
            continue;
        }
        g.add_edge(u, v).unwrap();
        added += 1;
    }
    debug_assert_eq!(g.m(), g.n() + excess);
    debug_assert!(g.max_degree() <= 3);
    g
}

/// All labeled graphs on n vertices (2^(n choose 2) of them; keep n tiny).
pub fn enumerate_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    assert!(
        pairs.len() <= 24,
        "enumeration is exponential in edge slots"
    );
    (0u64..(1 << pairs.len())).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Ladder fixture: two rails of `rungs` vertices each, rung i joining
/// rail1[i] to rail2[i] through `rung_inner` fresh vertices.
pub struct Ladder {
    pub graph: Graph,
    pub rail1: Vec<usize>,
    pub rail2: Vec<usize>,
    pub rungs: Vec<Vec<usize>>,
}

pub fn ladder(rungs: usize, rung_inner: usize) -> Ladder {
    assert!(rungs >= 2);
    let rail1: Vec<usize> = (0..rungs).collect();
    let rail2: Vec<usize> = (rungs..2 * rungs).collect();
    let mut n = 2 * rungs;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 1..rungs {
        edges.push((rail1[i - 1], rail1[i]));
        edges.push((rail2[i - 1], rail2[i]));
    }
    let mut rung_paths = Vec::new();
    for i in 0..rungs {
        let mut seq = vec![rail1[i]];
        for _ in 0..rung_inner {
            seq.push(n);
            n += 1;
        }
        seq.push(rail2[i]);
        for w in seq.windows(2) {
            edges.push((w[0], w[1]));
        }
        rung_paths.push(seq);
    }
    Ladder {
        graph: Graph::from_edges(n, &edges).unwrap(),
        rail1,
        rail2,
        rungs: rung_paths,
    }
}

impl Ladder {
    pub fn linkage(&self) -> Linkage {
        Linkage {
            p1: Path::new(&self.graph, self.rail1.clone()).unwrap(),
            p2: Path::new(&self.graph, self.rail2.clone()).unwrap(),
            links: self
                .rungs
                .iter()
                .map(|seq| Path::new(&self.graph, seq.clone()).unwrap())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcubic_generator_contract() {
        for seed in 0..20 {
            let g = random_subcubic_with_excess(16, 6, seed);
            assert_eq!(g.m(), g.n() + 6);
            assert!(g.max_degree() <= 3);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn gnm_is_deterministic() {
        let a = gnm_random(8, 12, 7);
        let b = gnm_random(8, 12, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn ladder_linkage_verifies() {
        let l = ladder(5, 2);
        l.linkage().verify(&l.graph).unwrap();
        assert_eq!(l.graph.n(), 10 + 10);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(3).count(), 8);
    }
}
