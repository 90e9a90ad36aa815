//! Desk-scale experiments: empirical lower bounds on the least treewidth
//! that forces a cycle-union minor, reported with re-verifiable witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::extract::{CycleUnionSpec, ExtractConfig};
use crate::format::to_edge_list;
use crate::generators::{enumerate_graphs, gnm_random};
use crate::graph::Graph;
use crate::minor::{find_minor_brute_guarded, MinorModel};
use crate::treewidth::exact_treewidth_guarded;
use crate::Result;

/// Per-instance record inside an experiment report. Success records embed
/// the model so reports re-verify on load.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub graph_id: String,
    /// The instance graph echoed in edge-list form.
    pub graph: String,
    pub treewidth: Option<usize>,
    pub bramble_order: Option<usize>,
    pub outcome: String,
    pub model: Option<MinorModel>,
    pub trace_digest: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub instances: Vec<InstanceRecord>,
    pub aggregates: BTreeMap<String, f64>,
}

/// Search graphs of up to `n_max` vertices for pattern-minor-free graphs
/// of maximum treewidth: an empirical lower bound on the forcing
/// threshold. Exhaustive for n <= 5, seeded G(n, m) sampling above.
pub fn empirical_f(
    spec: &CycleUnionSpec,
    n_max: usize,
    samples: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if n_max > crate::minor::MINOR_BRUTE_GUARD {
        return Err(crate::Error::GuardExceeded {
            what: "empirical search vertex count",
            actual: n_max,
            limit: crate::minor::MINOR_BRUTE_GUARD,
        });
    }
    let pattern = spec.pattern_graph();
    let mut examined = 0usize;
    let mut minor_free = 0usize;
    let mut best: Option<(usize, Graph)> = None;

    let mut consider = |g: Graph| -> Result<()> {
        examined += 1;
        if find_minor_brute_guarded(&g, &pattern, 12)?.is_none() {
            minor_free += 1;
            let (tw, _) = exact_treewidth_guarded(&g, 20)?;
            if best.as_ref().is_none_or(|(b, _)| tw > *b) {
                best = Some((tw, g));
            }
        }
        Ok(())
    };

    for n in 1..=n_max {
        if n <= 5 {
            for g in enumerate_graphs(n) {
                consider(g)?;
            }
        } else {
            let max_edges = n * (n - 1) / 2;
            for i in 0..samples {
                let s = seed
                    .wrapping_add(n as u64)
                    .wrapping_mul(0x9e3779b97f4a7c15)
                    .wrapping_add(i as u64);
                let m = (s % (max_edges as u64 + 1)) as usize;
                consider(gnm_random(n, m, s))?;
            }
        }
    }

    let formula = forcing_bound_formula(spec, &ExtractConfig::default());
    let max_tw = best.as_ref().map(|(tw, _)| *tw).unwrap_or(0);
    let mut aggregates = BTreeMap::new();
    aggregates.insert("examined".into(), examined as f64);
    aggregates.insert("minor_free".into(), minor_free as f64);
    aggregates.insert("max_treewidth_minor_free".into(), max_tw as f64);
    aggregates.insert("formula_bound".into(), formula);
    aggregates.insert(
        "within_formula".into(),
        if (max_tw as f64) <= formula { 1.0 } else { 0.0 },
    );
    aggregates.insert("n_max".into(), n_max as f64);
    aggregates.insert("seed".into(), seed as f64);

    let instances = best
        .map(|(tw, g)| {
            vec![InstanceRecord {
                graph_id: format!("witness-tw{tw}"),
                graph: to_edge_list(&g),
                treewidth: Some(tw),
                bramble_order: None,
                outcome: "minor-free-maximum".into(),
                model: None,
                trace_digest: None,
            }]
        })
        .unwrap_or_default();

    Ok(ExperimentReport {
        instances,
        aggregates,
    })
}

/// The forcing-threshold formula c h log2(r+1) + c r log2(r) log2(max_len)
/// with the configured constants.
pub fn forcing_bound_formula(spec: &CycleUnionSpec, cfg: &ExtractConfig) -> f64 {
    let r = spec.component_count() as f64;
    let h = spec.total_vertices() as f64;
    let ell = spec.max_len() as f64;
    cfg.c * h * (r + 1.0).log2() + cfg.c * r * r.log2() * ell.log2()
}
