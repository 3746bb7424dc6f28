//! Destination intervals, shards, and partition plans, with a
//! brute-force validator and a textual dump format for golden tests.

use super::{Graph, VertexId};
use crate::partition::SizingBudget;
use crate::{Error, Result};
use std::fmt::Write as _;

/// Contiguous half-open range of destination vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexInterval {
    pub index: usize,
    pub dst_begin: VertexId,
    pub dst_end: VertexId,
}

impl VertexInterval {
    pub fn len(&self) -> u32 {
        self.dst_end - self.dst_begin
    }

    pub fn is_empty(&self) -> bool {
        self.dst_begin == self.dst_end
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v >= self.dst_begin && v < self.dst_end
    }
}

/// Edges landing in one interval that fit one buffer slot, with their
/// source vertex list. Source lists may be non-contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shard {
    pub interval_index: usize,
    /// Ordered (strictly increasing) source vertex ids.
    pub sources: Vec<VertexId>,
    /// COO edges as (index into `sources`, destination vertex id).
    pub edges_coo: Vec<(u32, VertexId)>,
}

impl Shard {
    pub fn num_src(&self) -> u32 {
        self.sources.len() as u32
    }

    pub fn num_edge(&self) -> u32 {
        self.edges_coo.len() as u32
    }

    /// Resolves COO entries back to (src, dst) pairs.
    pub fn resolved_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges_coo.iter().map(|&(slot, dst)| (self.sources[slot as usize], dst))
    }
}

/// Which partitioner produced a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionOrigin {
    /// Fine-grained, edge-by-edge shard construction; source lists hold
    /// only vertices with at least one edge in the shard.
    FineGrained,
    /// Square-window partitioning with end trimming; interior zero-edge
    /// sources are retained.
    Coarse,
}

impl PartitionOrigin {
    pub fn as_str(&self) -> &'static str {
        match self {
            PartitionOrigin::FineGrained => "fggp",
            PartitionOrigin::Coarse => "coarse",
        }
    }
}

/// Ordered intervals with their ordered shard lists.
#[derive(Debug, Clone)]
pub struct PartitionPlan {
    pub origin: PartitionOrigin,
    pub num_vertices: u32,
    pub intervals: Vec<VertexInterval>,
    /// Indexed by interval; inner lists ordered by first source.
    pub shards: Vec<Vec<Shard>>,
    /// (dim_src, dim_edge) the plan was sized with.
    pub dims: (u32, u32),
}

impl PartitionPlan {
    pub fn num_shards(&self) -> usize {
        self.shards.iter().map(Vec::len).sum()
    }

    pub fn all_shards(&self) -> impl Iterator<Item = &Shard> {
        self.shards.iter().flatten()
    }

    /// Interval containing vertex `v`.
    pub fn interval_of(&self, v: VertexId) -> Option<&VertexInterval> {
        self.intervals.iter().find(|i| i.contains(v))
    }

    /// Textual dump: one header line, one line per interval, one line per
    /// shard listing sources then COO pairs. Stable across runs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "plan v1 origin={} vertices={} dim_src={} dim_edge={}",
            self.origin.as_str(),
            self.num_vertices,
            self.dims.0,
            self.dims.1
        )
        .unwrap();
        for (iv, shards) in self.intervals.iter().zip(&self.shards) {
            writeln!(
                out,
                "interval {} begin={} end={} shards={}",
                iv.index,
                iv.dst_begin,
                iv.dst_end,
                shards.len()
            )
            .unwrap();
            for (k, s) in shards.iter().enumerate() {
                write!(out, "shard {k} srcs").unwrap();
                for src in &s.sources {
                    write!(out, " {src}").unwrap();
                }
                write!(out, " |").unwrap();
                for (slot, dst) in &s.edges_coo {
                    write!(out, " {slot}:{dst}").unwrap();
                }
                writeln!(out).unwrap();
            }
        }
        out
    }
}

/// One validation finding; validation never fails hard, it reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    IntervalCoverage,
    EdgeCoverage,
    DstOutsideInterval,
    BadSourceSlot,
    UnreferencedSource,
    SourceOrder,
    BudgetExceeded,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.violations.push(Violation { kind, detail });
    }
}

/// Checks a plan against the graph by brute-force recount: interval
/// tiling, exact edge coverage, destination containment, source-slot
/// validity, zero-edge sources (fine-grained plans only), and the
/// per-shard sizing rule when a budget is supplied.
pub fn validate_plan(g: &Graph, plan: &PartitionPlan, budget: Option<&SizingBudget>) -> ValidationReport {
    let mut report = ValidationReport::default();

    // interval tiling of [0, num_vertices)
    let mut cursor = 0u32;
    for iv in &plan.intervals {
        if iv.dst_begin != cursor || iv.dst_end < iv.dst_begin {
            report.push(
                ViolationKind::IntervalCoverage,
                format!("interval {} covers [{}, {}) but expected to start at {}", iv.index, iv.dst_begin, iv.dst_end, cursor),
            );
        }
        cursor = iv.dst_end;
    }
    if cursor != g.num_vertices() || plan.num_vertices != g.num_vertices() {
        report.push(
            ViolationKind::IntervalCoverage,
            format!("intervals end at {cursor}, graph has {} vertices", g.num_vertices()),
        );
    }

    // per-shard structural checks + edge multiset recount
    let mut counted: std::collections::HashMap<(u32, u32), i64> = std::collections::HashMap::new();
    for shards in &plan.shards {
        for (k, shard) in shards.iter().enumerate() {
            let iv = match plan.intervals.get(shard.interval_index) {
                Some(iv) => *iv,
                None => {
                    report.push(
                        ViolationKind::IntervalCoverage,
                        format!("shard {k} references missing interval {}", shard.interval_index),
                    );
                    continue;
                }
            };
            if !shard.sources.windows(2).all(|w| w[0] < w[1]) {
                report.push(
                    ViolationKind::SourceOrder,
                    format!("interval {} shard {k}: sources not strictly increasing", iv.index),
                );
            }
            let mut referenced = vec![false; shard.sources.len()];
            for &(slot, dst) in &shard.edges_coo {
                if (slot as usize) < shard.sources.len() {
                    referenced[slot as usize] = true;
                    *counted.entry((shard.sources[slot as usize], dst)).or_default() += 1;
                } else {
                    report.push(
                        ViolationKind::BadSourceSlot,
                        format!("interval {} shard {k}: slot {slot} out of range", iv.index),
                    );
                }
                if !iv.contains(dst) {
                    report.push(
                        ViolationKind::DstOutsideInterval,
                        format!("interval {} shard {k}: dst {dst} outside [{}, {})", iv.index, iv.dst_begin, iv.dst_end),
                    );
                }
            }
            if plan.origin == PartitionOrigin::FineGrained {
                for (slot, used) in referenced.iter().enumerate() {
                    if !used {
                        report.push(
                            ViolationKind::UnreferencedSource,
                            format!(
                                "interval {} shard {k}: source {} has no edges",
                                iv.index, shard.sources[slot]
                            ),
                        );
                    }
                }
            }
            if let Some(b) = budget {
                let footprint = shard.num_src() as u64 * b.dim_src as u64
                    + shard.num_edge() as u64 * b.dim_edge as u64;
                if footprint > b.per_shard_budget() {
                    report.push(
                        ViolationKind::BudgetExceeded,
                        format!(
                            "interval {} shard {k}: footprint {footprint} exceeds budget {}",
                            iv.index,
                            b.per_shard_budget()
                        ),
                    );
                }
            }
        }
    }

    // exact multiset comparison against the graph's edges
    for &(s, d) in g.edges() {
        *counted.entry((s, d)).or_default() -= 1;
    }
    for ((s, d), delta) in counted {
        if delta > 0 {
            report.push(
                ViolationKind::EdgeCoverage,
                format!("edge ({s}, {d}) covered {delta} extra time(s)"),
            );
        } else if delta < 0 {
            report.push(
                ViolationKind::EdgeCoverage,
                format!("edge ({s}, {d}) missing {} time(s)", -delta),
            );
        }
    }

    report.violations.sort_by(|a, b| a.detail.cmp(&b.detail));
    report
}
