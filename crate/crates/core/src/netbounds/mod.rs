//! Graph model of a network and certified global Lipschitz bounds over it.

mod algebra;
mod attention;
mod bounds;
mod graph;

use thiserror::Error;

use crate::matcore::MatError;

pub use algebra::{certified_radius, lip_algebra, residual_bound, seqlip_pair_factor, LipOp};
pub use attention::{attention_bound, phi_inverse, AttentionParams};
pub use bounds::{
    articulation_bound, dag_bound, node_lipschitz, path_enumeration_bound, product_bound, ArticulationBound,
    DagBound, NodeLip, Provenance, SpectralMethod, MAX_ENUMERATED_PATHS,
};
pub use graph::{NetworkGraph, Node, NodeKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("duplicate edge {0:?} -> {1:?}")]
    DuplicateEdge(String, String),
    #[error("node {node:?} refers to missing matrix {weight_ref:?}")]
    UnresolvedWeight { node: String, weight_ref: String },
    #[error("node {node:?} has invalid Lipschitz constant {value}")]
    InvalidLipschitz { node: String, value: f64 },
    #[error("graph contains a cycle")]
    CycleDetected,
    #[error("{0}")]
    InvalidEndpoints(String),
    #[error("no edge {0:?} -> {1:?} in chain")]
    NotAPath(String, String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("phi inverse has no root for input {0}")]
    NonBracketable(f64),
    #[error("Lipschitz constant is zero; radius is unbounded")]
    ZeroLipschitz,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("power iteration failed: {0}")]
    Estimation(String),
    #[error(transparent)]
    Mat(#[from] MatError),
}
