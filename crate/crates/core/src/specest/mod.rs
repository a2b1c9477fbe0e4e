//! Spectral-norm estimation, sampled local Lipschitz estimates and
//! orthogonalization maps.

mod ortho;
mod power;
mod sampling;

use thiserror::Error;

use crate::matcore::MatError;

pub use ortho::{
    bjorck_orthogonalize, cayley_orthogonal, certifies_unit_lipschitz, expmap_orthogonal,
    semi_orthogonality_defect, BjorckResult, IsometrySide,
};
pub use power::{power_iteration, PowerIteration};
pub use sampling::{local_lipschitz_sample, sample_lp_ball, GradFn};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecEstError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("defect failed to decrease for 3 consecutive iterations (stopped after {iters})")]
    NonConvergence { iters: usize },
    #[error("matrix is not skew-symmetric (defect {defect:e})")]
    NotSkew { defect: f64 },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("gradient callback failed: {0}")]
    CallbackFailure(String),
    #[error(transparent)]
    Mat(#[from] MatError),
}
