//! Driving forces of the log-Lipschitz SDE and an Euler–Maruyama simulator.

mod forces;
mod sde;

use thiserror::Error;

use crate::matcore::MatError;
use crate::svdcalc::SvdCalcError;

pub use forces::{
    aggregate, driving_forces, log_lip_increment, opnorm_jacobian, AggregateForces, DrivingForces, LayerDynamicsState,
    NetworkDynamics, COV_TOL,
};
pub use sde::{
    ensemble_log_sigma_increments, ensemble_stats, euler_maruyama, trajectory_rows, trajectory_to_csv, DriftFn,
    EnsembleStats, TrajectoryRow,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("noise covariance is not symmetric (defect {0:e})")]
    NotSymmetric(f64),
    #[error("noise covariance is not PSD (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("drift callback failed: {0}")]
    Callback(String),
    #[error(transparent)]
    Svd(#[from] SvdCalcError),
    #[error(transparent)]
    Mat(MatError),
}

impl From<MatError> for DynamicsError {
    fn from(e: MatError) -> Self {
        match e {
            MatError::NotPsd { min_eigenvalue } => DynamicsError::NotPsd(min_eigenvalue),
            other => DynamicsError::Mat(other),
        }
    }
}
