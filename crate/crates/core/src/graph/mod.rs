//! Directed multigraph storage with both destination- and source-side
//! indexes, plus text loaders.
//!
//! Vertex ids are dense `u32` in `[0, num_vertices)`. Edges are kept in
//! load order; `dst_index`/`src_index` are CSC/CSR-like views over the
//! same edge multiset. Graphs are immutable once built.

mod gen;
pub mod plan;

pub use gen::{ak2010_like, dense_bipartite, random_graph, toy6};
pub use plan::{PartitionOrigin, PartitionPlan, Shard, ValidationReport, VertexInterval, Violation};

use crate::{Error, Result};
use std::io::BufRead;

pub type VertexId = u32;
pub type EdgeId = u32;

/// Edge direction selector for degree queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// Immutable directed multigraph.
#[derive(Debug, Clone)]
pub struct Graph {
    num_vertices: u32,
    edges: Vec<(VertexId, VertexId)>,
    /// CSC-like: per destination, (src, edge id) sorted by (src, edge id).
    dst_offsets: Vec<usize>,
    dst_entries: Vec<(VertexId, EdgeId)>,
    /// CSR-like: per source, (dst, edge id) sorted by (dst, edge id).
    src_offsets: Vec<usize>,
    src_entries: Vec<(VertexId, EdgeId)>,
    in_degree: Vec<u32>,
    out_degree: Vec<u32>,
}

/// Options for the edge-list loaders.
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Densify ids in first-appearance order instead of requiring them
    /// to already be dense.
    pub remap: bool,
    /// Drop duplicate (src, dst) pairs; off by default, multigraphs are
    /// accepted as-is.
    pub dedup: bool,
    /// Add the reverse of every edge (skipping self-loops' duplicates).
    pub symmetrize: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { remap: false, dedup: false, symmetrize: false }
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list. `num_vertices` must
    /// cover every endpoint.
    pub fn from_edges(num_vertices: u32, edges: Vec<(VertexId, VertexId)>) -> Result<Graph> {
        for &(s, d) in &edges {
            if s >= num_vertices || d >= num_vertices {
                return Err(Error::Input(format!(
                    "edge ({s}, {d}) outside vertex range 0..{num_vertices}"
                )));
            }
        }
        let n = num_vertices as usize;
        let mut in_degree = vec![0u32; n];
        let mut out_degree = vec![0u32; n];
        for &(s, d) in &edges {
            out_degree[s as usize] += 1;
            in_degree[d as usize] += 1;
        }

        let build = |degrees: &[u32], key: fn(&(VertexId, VertexId)) -> usize, val: fn(&(VertexId, VertexId)) -> VertexId| {
            let mut offsets = Vec::with_capacity(n + 1);
            offsets.push(0usize);
            for &d in degrees {
                offsets.push(offsets.last().unwrap() + d as usize);
            }
            let mut entries = vec![(0u32, 0u32); edges.len()];
            let mut cursor = offsets.clone();
            for (eid, e) in edges.iter().enumerate() {
                let k = key(e);
                entries[cursor[k]] = (val(e), eid as EdgeId);
                cursor[k] += 1;
            }
            for v in 0..n {
                entries[offsets[v]..offsets[v + 1]].sort_unstable();
            }
            (offsets, entries)
        };

        let (dst_offsets, dst_entries) = build(&in_degree, |e| e.1 as usize, |e| e.0);
        let (src_offsets, src_entries) = build(&out_degree, |e| e.0 as usize, |e| e.1);

        Ok(Graph {
            num_vertices,
            edges,
            dst_offsets,
            dst_entries,
            src_offsets,
            src_entries,
            in_degree,
            out_degree,
        })
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn num_edges(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// In-edges of `dst` as (src, edge id), sorted by source.
    pub fn in_edges(&self, dst: VertexId) -> &[(VertexId, EdgeId)] {
        let d = dst as usize;
        &self.dst_entries[self.dst_offsets[d]..self.dst_offsets[d + 1]]
    }

    /// Out-edges of `src` as (dst, edge id), sorted by destination.
    pub fn out_edges(&self, src: VertexId) -> &[(VertexId, EdgeId)] {
        let s = src as usize;
        &self.src_entries[self.src_offsets[s]..self.src_offsets[s + 1]]
    }

    pub fn degree(&self, v: VertexId, dir: Direction) -> Result<u32> {
        if v >= self.num_vertices {
            return Err(Error::Range(format!(
                "vertex {v} out of range 0..{}",
                self.num_vertices
            )));
        }
        Ok(match dir {
            Direction::In => self.in_degree[v as usize],
            Direction::Out => self.out_degree[v as usize],
        })
    }

    /// Average in-degree over all vertices (0.0 on an empty graph).
    pub fn avg_in_degree(&self) -> f64 {
        if self.num_vertices == 0 {
            0.0
        } else {
            self.edges.len() as f64 / self.num_vertices as f64
        }
    }

    /// Serializes back to edge-list text, one `src dst` pair per line in
    /// load order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(s, d) in &self.edges {
            out.push_str(&format!("{s} {d}\n"));
        }
        out
    }
}

fn finish_edges(
    mut edges: Vec<(VertexId, VertexId)>,
    max_id: Option<u32>,
    opts: LoadOptions,
) -> Result<Graph> {
    if opts.symmetrize {
        let fwd = edges.clone();
        for (s, d) in fwd {
            if s != d {
                edges.push((d, s));
            }
        }
    }
    if opts.dedup {
        let mut seen = std::collections::HashSet::new();
        edges.retain(|e| seen.insert(*e));
    }
    let num_vertices = match max_id {
        Some(m) => m.checked_add(1).ok_or_else(|| Error::Input("vertex id overflow".into()))?,
        None => 0,
    };
    Graph::from_edges(num_vertices, edges)
}

/// Loads whitespace-separated `src dst` pairs, one per line. `#` starts a
/// comment. With `remap`, ids are densified in first-appearance order;
/// otherwise ids are used verbatim and define the vertex range.
pub fn load_edge_list<R: BufRead>(reader: R, opts: LoadOptions) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut remap = std::collections::HashMap::new();
    let mut max_id: Option<u32> = None;
    let mut next_dense: u32 = 0;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let mut parse_id = |tok: Option<&str>| -> Result<u32> {
            let tok = tok.ok_or_else(|| Error::parse(lineno, "expected two integer tokens"))?;
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid integer `{tok}`")))?;
            if v < 0 {
                return Err(Error::Input(format!("negative vertex id {v} at line {lineno}")));
            }
            u32::try_from(v).map_err(|_| Error::Input(format!("vertex id {v} exceeds u32 range")))
        };
        let mut s = parse_id(tokens.next())?;
        let mut d = parse_id(tokens.next())?;
        if tokens.next().is_some() {
            return Err(Error::parse(lineno, "expected exactly two tokens"));
        }
        if opts.remap {
            for v in [&mut s, &mut d] {
                let id = *remap.entry(*v).or_insert_with(|| {
                    let id = next_dense;
                    next_dense += 1;
                    id
                });
                *v = id;
            }
        }
        max_id = Some(max_id.map_or(s.max(d), |m| m.max(s).max(d)));
        edges.push((s, d));
    }
    finish_edges(edges, max_id, opts)
}

/// Loads a Matrix Market coordinate file with pattern entries. Ids are
/// 1-based in the file and converted to 0-based. A `symmetric` header
/// mirrors off-diagonal entries.
pub fn load_matrix_market<R: BufRead>(reader: R, opts: LoadOptions) -> Result<Graph> {
    let mut lines = reader.lines().enumerate();
    let (first_no, first) = loop {
        match lines.next() {
            Some((idx, line)) => {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                break (idx + 1, line);
            }
            None => return Err(Error::Input("empty matrix market file".into())),
        }
    };
    let header = first.trim().to_ascii_lowercase();
    if !header.starts_with("%%matrixmarket") {
        return Err(Error::parse(first_no, "missing %%MatrixMarket header"));
    }
    if !header.contains("coordinate") {
        return Err(Error::parse(first_no, "only coordinate format supported"));
    }
    if !header.contains("pattern") {
        return Err(Error::parse(first_no, "only pattern entries supported"));
    }
    let symmetric = header.contains("symmetric");

    let mut dims: Option<(u32, u32)> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<u32> = None;

    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('%') {
            continue;
        }
        let mut tok = body.split_whitespace();
        let mut next_int = |what: &str| -> Result<i64> {
            tok.next()
                .ok_or_else(|| Error::parse(lineno, format!("missing {what}")))?
                .parse::<i64>()
                .map_err(|_| Error::parse(lineno, format!("invalid {what}")))
        };
        if dims.is_none() {
            let rows = next_int("row count")?;
            let cols = next_int("column count")?;
            let nnz = next_int("entry count")?;
            if rows < 0 || cols < 0 || nnz < 0 {
                return Err(Error::Input(format!("negative size at line {lineno}")));
            }
            dims = Some((rows as u32, cols as u32));
            continue;
        }
        let i = next_int("row index")?;
        let j = next_int("column index")?;
        if i < 1 || j < 1 {
            return Err(Error::Input(format!("index below 1 at line {lineno}")));
        }
        let (s, d) = (i as u32 - 1, j as u32 - 1);
        edges.push((s, d));
        if symmetric && s != d {
            edges.push((d, s));
        }
        max_id = Some(max_id.map_or(s.max(d), |m| m.max(s).max(d)));
    }
    let (rows, cols) = dims.ok_or_else(|| Error::Input("missing size line".into()))?;
    let declared = rows.max(cols);
    let max_id = match max_id {
        Some(m) => Some(m.max(declared.saturating_sub(1))),
        None if declared > 0 => Some(declared - 1),
        None => None,
    };
    finish_edges(edges, max_id, opts)
}
