//! Lipschitz constants of activation functions, in closed form and by
//! numerical search.

mod lipschitz;
mod spec;

use thiserror::Error;

pub use lipschitz::{
    closed_form_lipschitz, numeric_scalar_lipschitz, numeric_softmax_lipschitz, softmax,
    softmax_jacobian, swish_critical_point, NumericLipschitz,
};
pub use spec::ActivationSpec;

/// Default search interval for [`numeric_scalar_lipschitz`].
pub const DEFAULT_DOMAIN: (f64, f64) = (-20.0, 20.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActivationError {
    #[error("unknown activation {0:?}")]
    UnknownActivation(String),
    #[error("{0} is not an elementwise activation")]
    NotElementwise(String),
    #[error("not a probability vector (sum {sum})")]
    NotSimplex { sum: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
