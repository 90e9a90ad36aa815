//! The recursive extractor: given a host graph, a certified bramble and a
//! disjoint-cycle-union pattern, run the inductive case analysis and emit a
//! verified minor model or an honest structured failure with a full trace.
//!
//! Strict mode enforces the thresholds under which the construction is
//! guaranteed to succeed (these need bramble orders far beyond desk
//! scale); relaxed mode scales the thresholds by a caller
//! factor, clamps the path-partition parameter to what the certified order
//! supports, logs every clamp, and never reports success without a model
//! that re-verifies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bramble::{bramble_order, subbramble_touching, verify_bramble, Bramble};
use crate::cycle_packing::{cycles_from_linkage, PackMode};
use crate::graph::{Cycle, Graph, Path, VertexSet};
use crate::linkage::{enumerate_cycles, path_partition_with, Linkage, SearchBudgets};
use crate::minor::{verify_minor_model, MinorModel};
use crate::{Error, Result};

/// The pattern: a disjoint union of cycles, lengths sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleUnionSpec {
    lengths: Vec<usize>,
    max_len: usize,
}

impl CycleUnionSpec {
    /// Lengths must arrive sorted descending, each at least 3.
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidSpec("at least one cycle required".into()));
        }
        if lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec(format!(
                "lengths must be sorted descending, got {lengths:?}"
            )));
        }
        if lengths.iter().any(|&l| l < 3) {
            return Err(Error::InvalidSpec("every cycle length must be >= 3".into()));
        }
        let max_len = lengths[0];
        Ok(CycleUnionSpec { lengths, max_len })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lengths: Vec<usize> = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSpec(format!("bad length '{s}'")))
            })
            .collect::<Result<_>>()?;
        CycleUnionSpec::new(lengths)
    }

    /// Raise the declared maximum length above the largest component.
    pub fn with_max_len(mut self, max_len: usize) -> Result<Self> {
        if max_len < self.lengths[0] {
            return Err(Error::InvalidSpec(
                "declared max length below the largest component".into(),
            ));
        }
        self.max_len = max_len;
        Ok(self)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn component_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// The pattern graph: components laid out consecutively.
    pub fn pattern_graph(&self) -> Graph {
        let mut g = Graph::empty(self.total_vertices());
        let mut offset = 0;
        for &len in &self.lengths {
            for i in 0..len {
                g.add_edge(offset + i, offset + (i + 1) % len).unwrap();
            }
            offset += len;
        }
        g
    }
}

/// Constants and search knobs for the extractor.
#[derive(Clone, Debug)]
pub struct ExtractConfig {
    pub c_star: f64,
    pub c: f64,
    /// None = strict thresholds; Some(f) scales them down by f in (0, 1].
    pub relax_factor: Option<f64>,
    pub budgets: SearchBudgets,
    /// How many enumerated candidate cycles get their subbramble order
    /// certified during the Case 1 search.
    pub case1_certifications: usize,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig::strict(1.0)
    }
}

impl ExtractConfig {
    pub fn strict(c_star: f64) -> Self {
        ExtractConfig {
            c_star,
            c: 68.0 * c_star + 8.0,
            relax_factor: None,
            budgets: SearchBudgets::default(),
            case1_certifications: 64,
        }
    }

    pub fn relaxed(c_star: f64, factor: f64) -> Self {
        assert!(factor > 0.0 && factor <= 1.0, "relax factor in (0, 1]");
        ExtractConfig {
            relax_factor: Some(factor),
            ..ExtractConfig::strict(c_star)
        }
    }

    fn rho(&self) -> f64 {
        self.relax_factor.unwrap_or(1.0)
    }

    pub fn is_strict(&self) -> bool {
        self.relax_factor.is_none()
    }

    /// Minimum bramble order the guaranteed construction needs:
    /// 1 + c h log2(r+1) + c r log2(r) log2(max_len).
    pub fn required_order(&self, spec: &CycleUnionSpec) -> f64 {
        let r = spec.component_count() as f64;
        let h = spec.total_vertices() as f64;
        let ell = spec.max_len() as f64;
        1.0 + self.c * h * (r + 1.0).log2() + self.c * r * r.log2() * ell.log2()
    }

    /// Dispatch threshold between the two subcases: 1 + 3 c* r log2 r,
    /// scaled in relaxed mode.
    pub fn case_split_threshold(&self, r: usize) -> f64 {
        let r = r as f64;
        self.rho() * (1.0 + 3.0 * self.c_star * r * r.log2())
    }

    /// Order budget a committed cycle may touch: 6 * l1, never scaled (it
    /// is the certified claim, not a search knob).
    pub fn case1_order_budget(&self, l1: usize) -> usize {
        6 * l1
    }

    /// Path-partition parameter a = floor(c r log2 r / 4).
    pub fn partition_parameter(&self, r: usize) -> usize {
        let r = r as f64;
        (self.c * r * r.log2() / 4.0).floor() as usize
    }

    /// Largest component index eligible for the batch commit:
    /// ceil(2^(3/4) * 3r / (4 l1)).
    pub fn batch_cap(&self, r: usize, l1: usize) -> usize {
        ((3.0 * r as f64 * 2f64.powf(0.75)) / (4.0 * l1 as f64)).ceil() as usize
    }

    /// Batch length floor 2^(-3/4) * l1.
    pub fn batch_length_floor(&self, l1: usize) -> f64 {
        2f64.powf(-0.75) * l1 as f64
    }

    /// Links needed for a batch of size b: ceil(2 + 3 c* b log2 b).
    pub fn batch_link_requirement(&self, b: usize) -> usize {
        let b = b as f64;
        (2.0 + 3.0 * self.c_star * b * b.log2()).ceil() as usize
    }

    /// Long-link count that finishes Case 2.2 in one shot.
    pub fn long_branch_requirement(&self, r: usize) -> f64 {
        let r = r as f64;
        2.0 + 3.0 * self.c_star * r * r.log2()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalityAudit {
    pub lhs: f64,
    pub rhs: f64,
}

/// One recursion level of the extractor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelRecord {
    /// "base", "1", "2.1", "2.1-contradiction", "2.2-long" or "2.2".
    pub case: String,
    pub lengths: Vec<usize>,
    pub bramble_order: usize,
    /// Logged arithmetic: thresholds, clamps and certified orders.
    pub budgets: BTreeMap<String, f64>,
    /// Vertices removed before the next level, in original identifiers.
    pub deleted: Vec<usize>,
    /// Cycles committed at this level, in original identifiers.
    pub committed_cycles: Vec<Vec<usize>>,
    pub inequality1: Option<InequalityAudit>,
    pub notes: Vec<String>,
}

impl LevelRecord {
    fn new(case: &str, lengths: &[usize], order: usize) -> Self {
        LevelRecord {
            case: case.into(),
            lengths: lengths.to_vec(),
            bramble_order: order,
            budgets: BTreeMap::new(),
            deleted: vec![],
            committed_cycles: vec![],
            inequality1: None,
            notes: vec![],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub levels: Vec<LevelRecord>,
    pub outcome: String,
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub model: Option<MinorModel>,
    pub trace: ExtractionTrace,
}

/// Run the inductive extraction. Hard errors are contract violations
/// (invalid bramble, strict precondition, guard breaches); search
/// shortfalls come back as an honest `model: None` with the trace saying
/// why.
pub fn extract_cycle_union_minor(
    g: &Graph,
    b: &Bramble,
    spec: &CycleUnionSpec,
    cfg: &ExtractConfig,
) -> Result<Extraction> {
    if !verify_bramble(g, b) {
        return Err(Error::InvalidBramble(
            "extraction requires a verified bramble".into(),
        ));
    }
    let ord = bramble_order(g, b)?;
    if cfg.is_strict() {
        let need = cfg.required_order(spec);
        if (ord.order as f64) < need {
            return Err(Error::Precondition(format!(
                "strict extraction requires bramble order >= {need:.1}, got {}",
                ord.order
            )));
        }
    }

    let mut ex = Extractor {
        cfg,
        spec,
        assignments: vec![None; spec.component_count()],
        trace: ExtractionTrace {
            levels: vec![],
            outcome: String::new(),
        },
    };
    let identity: Vec<usize> = g.vertices().collect();
    let ok = ex.solve(g.clone(), identity, b.clone(), 0, spec.max_len())?;

    if !ok {
        ex.trace.outcome = "failure".into();
        return Ok(Extraction {
            model: None,
            trace: ex.trace,
        });
    }

    let model = ex.assemble_model()?;
    let report = verify_minor_model(g, &spec.pattern_graph(), &model);
    if !report.ok() {
        return Err(Error::Internal(format!(
            "extracted model failed verification: {:?}",
            report.violations
        )));
    }
    ex.trace.outcome = "success".into();
    Ok(Extraction {
        model: Some(model),
        trace: ex.trace,
    })
}

struct Extractor<'a> {
    cfg: &'a ExtractConfig,
    spec: &'a CycleUnionSpec,
    /// Per pattern component: the committed host cycle in original ids.
    assignments: Vec<Option<Cycle>>,
    trace: ExtractionTrace,
}

impl Extractor<'_> {
    /// Handle components `base..` against the current host graph.
    /// `to_orig` maps host ids back to original ids.
    fn solve(
        &mut self,
        host: Graph,
        to_orig: Vec<usize>,
        bramble: Bramble,
        base: usize,
        max_len: usize,
    ) -> Result<bool> {
        let lengths = &self.spec.lengths()[base..];
        if lengths.is_empty() {
            return Ok(true);
        }
        let ord = match bramble_order(&host, &bramble) {
            Ok(o) => o,
            Err(e) => {
                let mut rec = LevelRecord::new("abort", lengths, 0);
                rec.notes.push(format!("bramble order unavailable: {e}"));
                self.trace.levels.push(rec);
                return Ok(false);
            }
        };

        if lengths.len() == 1 {
            return self.base_case(&host, &to_orig, &bramble, base, ord.order);
        }

        let l1 = lengths[0];
        let r = lengths.len();

        // Case 1: a cycle of length >= l1 whose touching subbramble has
        // order within the deletion budget.
        if let Some((cycle, sub_order)) = case1_search(&host, &bramble, l1, self.cfg)? {
            let mut rec = LevelRecord::new("1", lengths, ord.order);
            rec.budgets.insert(
                "case1_order_budget".into(),
                self.cfg.case1_order_budget(l1) as f64,
            );
            rec.budgets
                .insert("certified_subbramble_order".into(), sub_order as f64);
            // The induction survives because c log r >= 6 covers the
            // deleted order.
            rec.budgets
                .insert("c_log_r".into(), self.cfg.c * (r as f64).log2());
            return self.commit_and_recurse(
                host,
                to_orig,
                bramble,
                base,
                max_len,
                vec![cycle],
                rec,
            );
        }

        let case_split = self.cfg.case_split_threshold(r);
        if (l1 as f64) >= case_split {
            self.case_2_1(host, to_orig, bramble, base, max_len, ord.order, case_split)
        } else {
            self.case_2_2(host, to_orig, bramble, base, max_len, ord.order, case_split)
        }
    }

    fn base_case(
        &mut self,
        host: &Graph,
        to_orig: &[usize],
        bramble: &Bramble,
        base: usize,
        order: usize,
    ) -> Result<bool> {
        let want = self.spec.lengths()[base];
        let mut rec = LevelRecord::new("base", &[want], order);
        rec.budgets
            .insert("needed_cycle_length".into(), want as f64);
        match crate::linkage::hitting_cycle_with(host, bramble, &self.cfg.budgets) {
            Ok(c) if c.len() >= want => {
                let orig = c.relabel(|v| to_orig[v]);
                rec.committed_cycles.push(orig.vertices().to_vec());
                self.trace.levels.push(rec);
                self.assignments[base] = Some(orig);
                Ok(true)
            }
            Ok(c) => {
                rec.notes.push(format!(
                    "hitting cycle has {} vertices, need {want}",
                    c.len()
                ));
                self.trace.levels.push(rec);
                Ok(false)
            }
            Err(e) => {
                rec.notes.push(format!("hitting cycle unavailable: {e}"));
                self.trace.levels.push(rec);
                Ok(false)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn case_2_1(
        &mut self,
        host: Graph,
        to_orig: Vec<usize>,
        bramble: Bramble,
        base: usize,
        max_len: usize,
        order: usize,
        case_split: f64,
    ) -> Result<bool> {
        let lengths = self.spec.lengths()[base..].to_vec();
        let mut rec = LevelRecord::new("2.1", &lengths, order);
        rec.budgets
            .insert("case_split_threshold".into(), case_split);
        let t = scaled_partition_parameter(self.cfg, 2 * lengths[0], order, &mut rec);
        if t == 0 {
            rec.notes
                .push("bramble order supports no path partition".into());
            self.trace.levels.push(rec);
            return Ok(false);
        }
        let ps = match path_partition_with(&host, &bramble, t, &self.cfg.budgets) {
            Ok(ps) => ps,
            Err(e) => {
                rec.notes.push(format!("path partition failed: {e}"));
                self.trace.levels.push(rec);
                return Ok(false);
            }
        };
        let outcome = case21_analyze(&host, &bramble, &ps.linkage(), &lengths, self.cfg, &mut rec)?;
        match outcome {
            Case21Outcome::Completed(cycles) => {
                for (i, c) in cycles.iter().enumerate() {
                    let orig = c.relabel(|v| to_orig[v]);
                    rec.committed_cycles.push(orig.vertices().to_vec());
                    self.assignments[base + i] = Some(orig);
                }
                self.trace.levels.push(rec);
                Ok(true)
            }
            Case21Outcome::Contradiction {
                cycle,
                certified_order,
            } => {
                rec.case = "2.1-contradiction".into();
                rec.budgets
                    .insert("certified_subbramble_order".into(), certified_order as f64);
                self.commit_and_recurse(host, to_orig, bramble, base, max_len, vec![cycle], rec)
            }
            Case21Outcome::Shortfall { reason } => {
                rec.notes.push(reason);
                self.trace.levels.push(rec);
                Ok(false)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn case_2_2(
        &mut self,
        host: Graph,
        to_orig: Vec<usize>,
        bramble: Bramble,
        base: usize,
        max_len: usize,
        order: usize,
        case_split: f64,
    ) -> Result<bool> {
        let lengths = self.spec.lengths()[base..].to_vec();
        let mut rec = LevelRecord::new("2.2", &lengths, order);
        rec.budgets
            .insert("case_split_threshold".into(), case_split);
        let a_strict = self.cfg.partition_parameter(lengths.len());
        rec.budgets.insert("a_strict".into(), a_strict as f64);
        let t = scaled_partition_parameter(self.cfg, a_strict, order, &mut rec);
        if t == 0 {
            rec.notes
                .push("bramble order supports no path partition".into());
            self.trace.levels.push(rec);
            return Ok(false);
        }
        let ps = match path_partition_with(&host, &bramble, t, &self.cfg.budgets) {
            Ok(ps) => ps,
            Err(e) => {
                rec.notes.push(format!("path partition failed: {e}"));
                self.trace.levels.push(rec);
                return Ok(false);
            }
        };
        let outcome = case22_analyze(
            &host,
            &bramble,
            &ps.linkage(),
            &lengths,
            max_len,
            self.cfg,
            &mut rec,
        )?;
        match outcome {
            Case22Outcome::CompletedLong(cycles) => {
                rec.case = "2.2-long".into();
                for (i, c) in cycles.iter().enumerate() {
                    let orig = c.relabel(|v| to_orig[v]);
                    rec.committed_cycles.push(orig.vertices().to_vec());
                    self.assignments[base + i] = Some(orig);
                }
                self.trace.levels.push(rec);
                Ok(true)
            }
            Case22Outcome::Batch {
                cycles,
                next_max_len,
                ..
            } => {
                let batch = cycles.len();
                self.commit_batch_and_recurse(
                    host,
                    to_orig,
                    bramble,
                    base,
                    batch,
                    next_max_len,
                    cycles,
                    rec,
                )
            }
            Case22Outcome::Shortfall { reason } => {
                rec.notes.push(reason);
                self.trace.levels.push(rec);
                Ok(false)
            }
        }
    }

    /// Commit one cycle for component `base` and recurse on the rest.
    #[allow(clippy::too_many_arguments)]
    fn commit_and_recurse(
        &mut self,
        host: Graph,
        to_orig: Vec<usize>,
        bramble: Bramble,
        base: usize,
        max_len: usize,
        cycles: Vec<Cycle>,
        rec: LevelRecord,
    ) -> Result<bool> {
        self.commit_batch_and_recurse(
            host,
            to_orig,
            bramble,
            base,
            cycles.len(),
            max_len,
            cycles,
            rec,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn commit_batch_and_recurse(
        &mut self,
        host: Graph,
        to_orig: Vec<usize>,
        bramble: Bramble,
        base: usize,
        batch: usize,
        next_max_len: usize,
        cycles: Vec<Cycle>,
        mut rec: LevelRecord,
    ) -> Result<bool> {
        let mut deleted = VertexSet::new();
        for (i, c) in cycles.iter().enumerate() {
            let orig = c.relabel(|v| to_orig[v]);
            rec.committed_cycles.push(orig.vertices().to_vec());
            self.assignments[base + i] = Some(orig);
            deleted.extend(c.vertex_set());
        }
        rec.deleted = deleted.iter().map(|&v| to_orig[v]).collect();
        self.trace.levels.push(rec);

        if base + batch >= self.spec.component_count() {
            return Ok(true);
        }

        let del = host.delete_vertices(&deleted);
        let new_bramble = Bramble::new(
            bramble
                .elements
                .iter()
                .filter(|e| e.intersection(&deleted).next().is_none())
                .map(|e| {
                    e.iter()
                        .map(|&v| del.old_to_new[v].expect("untouched"))
                        .collect()
                })
                .collect(),
        );
        let new_to_orig: Vec<usize> = del.kept.iter().map(|&v| to_orig[v]).collect();
        let ok = self.solve(
            del.graph,
            new_to_orig,
            new_bramble,
            base + batch,
            next_max_len,
        )?;
        if !ok {
            for i in base..base + batch {
                self.assignments[i] = None;
            }
        }
        Ok(ok)
    }

    fn assemble_model(&self) -> Result<MinorModel> {
        let mut branch_sets: BTreeMap<usize, VertexSet> = BTreeMap::new();
        let mut offset = 0usize;
        let mut all_cycles: Vec<VertexSet> = Vec::new();
        for (i, &len) in self.spec.lengths().iter().enumerate() {
            let cycle = self.assignments[i]
                .as_ref()
                .ok_or_else(|| Error::Internal(format!("component {i} unassigned")))?;
            all_cycles.push(cycle.vertex_set());
            let verts = cycle.vertices();
            let m = verts.len();
            debug_assert!(m >= len);
            for j in 0..len {
                let from = j * m / len;
                let to = (j + 1) * m / len;
                branch_sets.insert(offset + j, verts[from..to].iter().copied().collect());
            }
            offset += len;
        }
        if !crate::graph::sets_pairwise_disjoint(all_cycles.iter()) {
            return Err(Error::Internal(
                "committed cycles overlap across recursion levels".into(),
            ));
        }
        Ok(MinorModel { branch_sets })
    }
}

// ---------------------------------------------------------------------
// The case analyses as standalone operations. The extractor dispatches
// through these; they are public so each step of the construction can be
// exercised and certified on its own fixtures.

/// Outcome of the large-component subcase.
#[derive(Clone, Debug)]
pub enum Case21Outcome {
    /// All remaining components realized by disjoint long cycles.
    Completed(Vec<Cycle>),
    /// Short links built a long cycle of low certified order: the Case 2
    /// assumption fails and the cycle commits the Case 1 way. Diagnostic
    /// in strict mode (it cannot happen there), routine under relaxation.
    Contradiction {
        cycle: Cycle,
        certified_order: usize,
    },
    Shortfall {
        reason: String,
    },
}

/// Outcome of the many-components subcase.
#[derive(Clone, Debug)]
pub enum Case22Outcome {
    /// Enough long links finished every remaining component at once.
    CompletedLong(Vec<Cycle>),
    /// A batch of leading components realized through spaced short links;
    /// the caller deletes the cycles and recurses on the rest.
    Batch {
        cycles: Vec<Cycle>,
        next_max_len: usize,
        deleted_suborder: usize,
    },
    Shortfall {
        reason: String,
    },
}

/// Bounded Case 1 search: enumerate candidate cycles of length >= l1,
/// certify subbramble orders for the most promising few, and return the
/// one with the smallest certified order within the 6*l1 budget. Absence
/// within budget is not a proof of absence; the caller falls through to
/// Case 2, which stays sound regardless.
pub fn try_case1(
    g: &Graph,
    b: &Bramble,
    spec: &CycleUnionSpec,
    cfg: &ExtractConfig,
) -> Result<Option<(Cycle, usize)>> {
    if spec.component_count() < 2 {
        return Err(Error::Precondition(
            "case 1 applies to two or more components".into(),
        ));
    }
    case1_search(g, b, spec.lengths()[0], cfg)
}

fn case1_search(
    host: &Graph,
    bramble: &Bramble,
    l1: usize,
    cfg: &ExtractConfig,
) -> Result<Option<(Cycle, usize)>> {
    let budget = cfg.case1_order_budget(l1);
    let mut candidates: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    enumerate_cycles(host, &cfg.budgets, false, &mut |verts, on_path| {
        if verts.len() >= l1 {
            let touch_count = bramble
                .elements
                .iter()
                .filter(|e| e.iter().any(|&v| on_path[v]))
                .count();
            candidates.push((touch_count, verts.len(), verts.to_vec()));
            if candidates.len() > 8192 {
                candidates.sort();
                candidates.truncate(2048);
            }
        }
        false
    });
    candidates.sort();
    let mut best: Option<(usize, Cycle)> = None;
    for (touch_count, _, verts) in candidates.into_iter().take(cfg.case1_certifications) {
        if let Some((bo, _)) = &best {
            // The touch count upper-bounds nothing, but the order never
            // exceeds it, so candidates at or above the incumbent cannot
            // improve.
            if touch_count >= *bo {
                break;
            }
        }
        let cyc = Cycle::new(host, verts).expect("enumerated cycles are valid");
        let sub = subbramble_touching(bramble, &cyc.vertex_set());
        let res = bramble_order(host, &sub)?;
        if res.order <= budget {
            let better = match &best {
                None => true,
                Some((bo, bc)) => {
                    res.order < *bo
                        || (res.order == *bo
                            && (cyc.len(), cyc.vertices()) < (bc.len(), bc.vertices()))
                }
            };
            if better {
                let exact_zero = res.order == 0;
                best = Some((res.order, cyc));
                if exact_zero {
                    break;
                }
            }
        }
    }
    Ok(best.map(|(o, c)| (c, o)))
}

/// Scale the path-partition parameter in relaxed mode, floor at one, and
/// clamp to what the certified bramble order supports; clamps are logged.
fn scaled_partition_parameter(
    cfg: &ExtractConfig,
    strict_t: usize,
    order: usize,
    rec: &mut LevelRecord,
) -> usize {
    rec.budgets.insert("t_strict".into(), strict_t as f64);
    let mut t = ((strict_t as f64) * cfg.rho()).floor() as usize;
    t = t.max(1);
    let cap = order.saturating_sub(1) / 2;
    if t > cap {
        rec.notes.push(format!(
            "t clamped from {t} to {cap} by bramble order {order}"
        ));
        t = cap;
    }
    rec.budgets.insert("t_effective".into(), t as f64);
    t
}

/// Case 2.1 end to end: build the path partition (t = 2 l1, scaled) and
/// analyze it. The record carries all logged arithmetic.
pub fn run_case2_1(
    g: &Graph,
    b: &Bramble,
    spec: &CycleUnionSpec,
    cfg: &ExtractConfig,
) -> Result<(Case21Outcome, LevelRecord)> {
    let lengths = spec.lengths().to_vec();
    if lengths.len() < 2 {
        return Err(Error::Precondition(
            "case 2.1 applies to two or more components".into(),
        ));
    }
    let order = bramble_order(g, b)?.order;
    let mut rec = LevelRecord::new("2.1", &lengths, order);
    let t = scaled_partition_parameter(cfg, 2 * lengths[0], order, &mut rec);
    if t == 0 {
        return Ok((
            Case21Outcome::Shortfall {
                reason: "bramble order supports no path partition".into(),
            },
            rec,
        ));
    }
    match path_partition_with(g, b, t, &cfg.budgets) {
        Ok(ps) => {
            let outcome = case21_analyze(g, b, &ps.linkage(), &lengths, cfg, &mut rec)?;
            Ok((outcome, rec))
        }
        Err(e) => Ok((
            Case21Outcome::Shortfall {
                reason: format!("path partition failed: {e}"),
            },
            rec,
        )),
    }
}

/// Case 2.1 on a caller-supplied linkage (fixtures exercise the long and
/// contradiction branches directly through this entry point).
pub fn case2_1_with_linkage(
    g: &Graph,
    b: &Bramble,
    linkage: &Linkage,
    spec: &CycleUnionSpec,
    cfg: &ExtractConfig,
) -> Result<(Case21Outcome, LevelRecord)> {
    linkage.verify(g)?;
    let order = bramble_order(g, b)?.order;
    let lengths = spec.lengths().to_vec();
    let mut rec = LevelRecord::new("2.1", &lengths, order);
    let outcome = case21_analyze(g, b, linkage, &lengths, cfg, &mut rec)?;
    Ok((outcome, rec))
}

fn case21_analyze(
    host: &Graph,
    bramble: &Bramble,
    linkage: &Linkage,
    lengths: &[usize],
    cfg: &ExtractConfig,
    rec: &mut LevelRecord,
) -> Result<Case21Outcome> {
    let (l1, r) = (lengths[0], lengths.len());

    // Short links would have built a low-order long cycle, which Case 1
    // already searched for; if one can be constructed here, certify it
    // and commit it the Case 1 way.
    let shorts: Vec<usize> = (0..linkage.links.len())
        .filter(|&i| linkage.links[i].len() <= l1)
        .collect();
    rec.budgets
        .insert("short_links".into(), shorts.len() as f64);
    rec.budgets.insert(
        "case1_order_budget".into(),
        cfg.case1_order_budget(l1) as f64,
    );
    if let Some((cycle, certified_order)) =
        contradiction_cycle(host, bramble, linkage, &shorts, l1, cfg)?
    {
        return Ok(Case21Outcome::Contradiction {
            cycle,
            certified_order,
        });
    }

    // Long branch: enough long links lift to r disjoint long cycles.
    let longs: Vec<Path> = linkage
        .links
        .iter()
        .filter(|q| q.len() > l1)
        .cloned()
        .collect();
    rec.budgets.insert("long_links".into(), longs.len() as f64);
    rec.budgets
        .insert("long_links_strict_requirement".into(), (l1 + 1) as f64);
    if longs.len() < 2 * r {
        return Ok(Case21Outcome::Shortfall {
            reason: format!(
                "only {} long links, need at least {} for {r} cycles",
                longs.len(),
                2 * r
            ),
        });
    }
    let sub_linkage = Linkage {
        p1: linkage.p1.clone(),
        p2: linkage.p2.clone(),
        links: longs,
    };
    let lift = cycles_from_linkage(host, &sub_linkage, r, PackMode::Relaxed, cfg.c_star)?;
    if !lift.satisfied {
        return Ok(Case21Outcome::Shortfall {
            reason: format!(
                "linkage lifting packed {} of {r} cycles",
                lift.packing.cycles.len()
            ),
        });
    }
    let cycles: Vec<Cycle> = lift.packing.cycles[..r].to_vec();
    // Every lifted cycle contains a full long link, hence >= l1 + 1
    // vertices, enough for every remaining component.
    for c in &cycles {
        if c.len() < l1 {
            return Err(Error::Internal(
                "lifted cycle shorter than the link bound".into(),
            ));
        }
    }
    Ok(Case21Outcome::Completed(cycles))
}

/// Among the short links, find a pair whose attachment distance along p1
/// is at least l1 - 1 and close the long low-order cycle through both
/// paths; certify its subbramble order against 6 l1.
fn contradiction_cycle(
    host: &Graph,
    bramble: &Bramble,
    linkage: &Linkage,
    shorts: &[usize],
    l1: usize,
    cfg: &ExtractConfig,
) -> Result<Option<(Cycle, usize)>> {
    if shorts.len() < 2 || (shorts.len() < l1 && cfg.is_strict()) {
        return Ok(None);
    }
    let pos1: BTreeMap<usize, usize> = linkage
        .p1
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let pos2: BTreeMap<usize, usize> = linkage
        .p2
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut best: Option<(usize, usize, usize)> = None; // (dist, i, j)
    for (a, &i) in shorts.iter().enumerate() {
        for &j in &shorts[a + 1..] {
            let pi = pos1[&linkage.links[i].first()];
            let pj = pos1[&linkage.links[j].first()];
            let dist = pi.abs_diff(pj);
            if best.is_none_or(|(d, _, _)| dist > d) {
                best = Some((dist, i, j));
            }
        }
    }
    let Some((dist, i, j)) = best else {
        return Ok(None);
    };
    if dist + 1 < l1 {
        return Ok(None);
    }
    let (qa, qb) = {
        let (pi, pj) = (
            pos1[&linkage.links[i].first()],
            pos1[&linkage.links[j].first()],
        );
        if pi <= pj {
            (&linkage.links[i], &linkage.links[j])
        } else {
            (&linkage.links[j], &linkage.links[i])
        }
    };
    // u_a -(p1)- u_b -(qb)- v_b -(p2)- v_a -(qa reversed)- u_a
    let mut seq: Vec<usize> = Vec::new();
    let (ua, ub) = (pos1[&qa.first()], pos1[&qb.first()]);
    seq.extend_from_slice(&linkage.p1.vertices()[ua..=ub]);
    seq.extend_from_slice(&qb.vertices()[1..]);
    let (vb, va) = (pos2[&qb.last()], pos2[&qa.last()]);
    if vb <= va {
        seq.extend_from_slice(&linkage.p2.vertices()[vb + 1..=va]);
    } else {
        seq.extend(linkage.p2.vertices()[va..vb].iter().rev());
    }
    let back = qa.vertices();
    seq.extend(back[1..back.len() - 1].iter().rev());
    let cycle = Cycle::new(host, seq)?;

    let sub = subbramble_touching(bramble, &cycle.vertex_set());
    let res = bramble_order(host, &sub)?;
    if res.order > cfg.case1_order_budget(l1) {
        return Ok(None);
    }
    Ok(Some((cycle, res.order)))
}

/// Case 2.2 end to end: path partition with the a-parameter (scaled),
/// then either the one-shot long branch or a spaced short-link batch.
pub fn run_case2_2(
    g: &Graph,
    b: &Bramble,
    spec: &CycleUnionSpec,
    cfg: &ExtractConfig,
) -> Result<(Case22Outcome, LevelRecord)> {
    let lengths = spec.lengths().to_vec();
    if lengths.len() < 2 {
        return Err(Error::Precondition(
            "case 2.2 applies to two or more components".into(),
        ));
    }
    let order = bramble_order(g, b)?.order;
    let mut rec = LevelRecord::new("2.2", &lengths, order);
    let a_strict = cfg.partition_parameter(lengths.len());
    rec.budgets.insert("a_strict".into(), a_strict as f64);
    let t = scaled_partition_parameter(cfg, a_strict, order, &mut rec);
    if t == 0 {
        return Ok((
            Case22Outcome::Shortfall {
                reason: "bramble order supports no path partition".into(),
            },
            rec,
        ));
    }
    match path_partition_with(g, b, t, &cfg.budgets) {
        Ok(ps) => {
            let outcome =
                case22_analyze(g, b, &ps.linkage(), &lengths, spec.max_len(), cfg, &mut rec)?;
            Ok((outcome, rec))
        }
        Err(e) => Ok((
            Case22Outcome::Shortfall {
                reason: format!("path partition failed: {e}"),
            },
            rec,
        )),
    }
}

/// Case 2.2 on a caller-supplied linkage.
pub fn case2_2_with_linkage(
    g: &Graph,
    b: &Bramble,
    linkage: &Linkage,
    spec: &CycleUnionSpec,
    cfg: &ExtractConfig,
) -> Result<(Case22Outcome, LevelRecord)> {
    linkage.verify(g)?;
    let order = bramble_order(g, b)?.order;
    let lengths = spec.lengths().to_vec();
    let mut rec = LevelRecord::new("2.2", &lengths, order);
    let outcome = case22_analyze(g, b, linkage, &lengths, spec.max_len(), cfg, &mut rec)?;
    Ok((outcome, rec))
}

fn case22_analyze(
    host: &Graph,
    bramble: &Bramble,
    linkage: &Linkage,
    lengths: &[usize],
    max_len: usize,
    cfg: &ExtractConfig,
    rec: &mut LevelRecord,
) -> Result<Case22Outcome> {
    let (l1, r) = (lengths[0], lengths.len());

    // Long branch: enough links of >= l1 vertices finish all r components
    // at once.
    let longs: Vec<Path> = linkage
        .links
        .iter()
        .filter(|q| q.len() >= l1)
        .cloned()
        .collect();
    rec.budgets.insert("long_links".into(), longs.len() as f64);
    rec.budgets.insert(
        "long_branch_strict_requirement".into(),
        cfg.long_branch_requirement(r),
    );
    if longs.len() >= 2 * r {
        let sub_linkage = Linkage {
            p1: linkage.p1.clone(),
            p2: linkage.p2.clone(),
            links: longs,
        };
        let lift = cycles_from_linkage(host, &sub_linkage, r, PackMode::Relaxed, cfg.c_star)?;
        if lift.satisfied {
            let cycles: Vec<Cycle> = lift.packing.cycles[..r].to_vec();
            for (i, c) in cycles.iter().enumerate() {
                if c.len() < lengths[i] {
                    return Err(Error::Internal(
                        "lifted long cycle shorter than its component".into(),
                    ));
                }
            }
            return Ok(Case22Outcome::CompletedLong(cycles));
        }
        rec.notes
            .push("long branch could not pack all components, falling to batch".into());
    }

    // Batch branch: commit the leading components through widely spaced
    // short links; the caller recurses on the rest.
    let b_cap = cfg.batch_cap(r, l1).min(r);
    let floor = cfg.batch_length_floor(l1);
    let b = (1..=b_cap)
        .rfind(|&i| lengths[i - 1] as f64 >= floor)
        .unwrap_or(1);
    rec.budgets.insert("batch_cap".into(), b_cap as f64);
    rec.budgets.insert("batch_length_floor".into(), floor);
    rec.budgets.insert("batch_size".into(), b as f64);

    // Numerical audit of the induction inequality; it follows from the
    // batch definition, so a violation is an implementation bug.
    if b < r {
        let log_r = (r as f64).log2();
        let sum_batch: usize = lengths[..b].iter().sum();
        let lhs = cfg.c * sum_batch as f64 * log_r
            + cfg.c * r as f64 * log_r * (max_len as f64).log2()
            - cfg.c * r as f64 * log_r * (lengths[b] as f64).log2();
        let rhs = 3.0 * cfg.c * r as f64 * log_r / 4.0;
        rec.inequality1 = Some(InequalityAudit { lhs, rhs });
        if lhs < rhs - 1e-9 {
            return Err(Error::Internal(format!(
                "induction inequality violated: {lhs} < {rhs}"
            )));
        }
    }

    let shorts: Vec<&Path> = linkage.links.iter().filter(|q| q.len() < l1).collect();
    rec.budgets
        .insert("short_links".into(), shorts.len() as f64);
    let s_strict = cfg.batch_link_requirement(b);
    rec.budgets
        .insert("batch_links_strict".into(), s_strict as f64);
    let s_target = ((s_strict as f64 * cfg.rho()).ceil() as usize).max(2 * b);
    rec.budgets
        .insert("batch_links_target".into(), s_target as f64);

    // Greedy spacing rule along p1: take the first eligible short link,
    // then skip forward until the attachment distance reaches l1.
    let pos1: BTreeMap<usize, usize> = linkage
        .p1
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut by_pos: Vec<&Path> = shorts.clone();
    by_pos.sort_by_key(|q| pos1[&q.first()]);
    let mut selected: Vec<Path> = Vec::new();
    let mut last_pos: Option<usize> = None;
    for q in by_pos {
        let p = pos1[&q.first()];
        if last_pos.is_none_or(|lp| p >= lp + l1) {
            selected.push(q.clone());
            last_pos = Some(p);
            if selected.len() == s_target {
                break;
            }
        }
    }
    rec.budgets
        .insert("batch_links_selected".into(), selected.len() as f64);
    if selected.len() < 2 * b {
        return Ok(Case22Outcome::Shortfall {
            reason: format!("only {} spaced short links, need {}", selected.len(), 2 * b),
        });
    }

    let sub_linkage = Linkage {
        p1: linkage.p1.clone(),
        p2: linkage.p2.clone(),
        links: selected.clone(),
    };
    let lift = cycles_from_linkage(host, &sub_linkage, b, PackMode::Relaxed, cfg.c_star)?;
    if !lift.satisfied {
        return Ok(Case22Outcome::Shortfall {
            reason: format!(
                "batch lifting packed {} of {b} cycles",
                lift.packing.cycles.len()
            ),
        });
    }
    let cycles: Vec<Cycle> = lift.packing.cycles[..b].to_vec();
    // Spacing forces every committed cycle to span at least l1 consecutive
    // p1 vertices.
    for c in &cycles {
        if c.len() < l1 {
            return Err(Error::Internal(
                "batch cycle shorter than the spacing bound".into(),
            ));
        }
    }

    // Deletion budget: the committed cycles live inside p1 + p2 + selected
    // links, so their touched suborder is bounded by the certified orders
    // of the two path subbrambles plus the selected link vertices.
    let mut deleted = VertexSet::new();
    for c in &cycles {
        deleted.extend(c.vertex_set());
    }
    let sub_order = bramble_order(host, &subbramble_touching(bramble, &deleted))?.order;
    let ord1 = bramble_order(
        host,
        &subbramble_touching(bramble, &linkage.p1.vertex_set()),
    )?
    .order;
    let ord2 = bramble_order(
        host,
        &subbramble_touching(bramble, &linkage.p2.vertex_set()),
    )?
    .order;
    let link_vertices: usize = selected.iter().map(|q| q.len()).sum();
    let bound = ord1 + ord2 + link_vertices;
    rec.budgets
        .insert("deleted_suborder".into(), sub_order as f64);
    rec.budgets
        .insert("deleted_suborder_bound".into(), bound as f64);
    rec.budgets.insert(
        "deleted_suborder_strict_budget".into(),
        3.0 * cfg.partition_parameter(r) as f64,
    );
    if sub_order > bound {
        return Err(Error::Internal(
            "deleted suborder exceeds its hitting-set bound".into(),
        ));
    }

    let next_max_len = lengths[b.min(lengths.len() - 1)];
    Ok(Case22Outcome::Batch {
        cycles,
        next_max_len,
        deleted_suborder: sub_order,
    })
}
