//! Simulation stack for a generic GNN accelerator.
//!
//! The pipeline mirrors the hardware/software flow of the modeled design:
//!
//! 1. [`model`] describes a GNN as a unified computational graph of
//!    primitive operators (element-wise, dense matmul, graph traversal).
//! 2. [`compiler`] fuses the operator graph into groups of
//!    scatter/gather/apply phase programs and emits [`isa`] instructions,
//!    along with the `(dim_src, dim_edge)` sizing record.
//! 3. [`partition`] splits the input [`graph`] into destination intervals
//!    and source/edge shards sized to the on-chip buffer budget.
//! 4. [`sim`] executes the phase programs over the partition plan on a
//!    cycle-approximate machine model (vector unit, systolic matrix unit,
//!    bandwidth-modeled DRAM, shard-level multi-threaded controller).
//! 5. [`oracle`] provides dense whole-graph reference execution for
//!    validating simulator outputs, plus an operator-by-operator traffic
//!    baseline.
//! 6. [`experiment`] drives end-to-end runs and parameter sweeps and
//!    writes stats/CSV reports.

pub mod compiler;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod inputs;
pub mod isa;
pub mod model;
pub mod oracle;
pub mod partition;
pub mod sim;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
