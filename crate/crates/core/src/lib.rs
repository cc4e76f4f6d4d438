//! Minimum path covers of cubic graphs: a lexicographic local search with
//! exact oracles, discharging ledgers and structural audits.

pub mod classify;
pub mod cover;
pub mod discharge;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod index;
pub mod nets;
pub mod objective;
pub mod optimizer;

pub use classify::{classify, Role, VertexClasses};
pub use cover::{validate_cover, CoverViolation, PathCover};
pub use error::{GenError, GraphError, OracleError};
pub use graph::Graph;
pub use objective::{objective, Objective};
pub use discharge::{audit_structure, check_weight_bound, segment_decomposition, transfer_weights, AuditReport, WeightLedger};
pub use optimizer::{improve, initial_cover, ImproveOptions, Improved, Move};
