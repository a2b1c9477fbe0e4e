//! Singular-value perturbation calculus.
//!
//! All singular indices `k` in this module are 1-based, so `k = 1` is the
//! spectral norm. Derivatives are taken with respect to the column-major
//! vectorization of the matrix (see [`crate::matcore::vec`]).

mod derivs;
mod embedding;
mod expansion;

use thiserror::Error;

use crate::matcore::{MatError, SvdTriple};

pub use derivs::{fd_gradient_oracle, fd_hessian_oracle, sv_hessian, sv_jacobian};
pub use embedding::{jordan_wielandt, reduced_resolvent, JordanWielandt, ReducedResolvent};
pub use expansion::{sv_expansion_coeff, sv_expansion_coeffs, PerturbationSeries};

/// Relative gap (times σ_1) under which a singular value counts as repeated.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;
/// Largest expansion order accepted by [`sv_expansion_coeff`].
pub const DEFAULT_MAX_ORDER: usize = 6;
pub const DEFAULT_GRAD_STEP: f64 = 1e-6;
pub const DEFAULT_HESS_STEP: f64 = 1e-5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SvdCalcError {
    #[error("singular index {k} out of range 1..={max}")]
    IndexOutOfRange { k: usize, max: usize },
    #[error("singular value {k} is not simple: gap {gap:e} <= tolerance {tol:e}")]
    DegenerateSpectrum { k: usize, gap: f64, tol: f64 },
    #[error("singular value {k} is zero")]
    ZeroSingular { k: usize },
    #[error("expansion order {order} exceeds maximum {max}")]
    OrderOverflow { order: usize, max: usize },
    #[error("expansion order must be at least 1")]
    ZeroOrder,
    #[error("perturbation term {index} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        index: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Gap between σ_k and every other singular value of the matrix,
/// including structural zeros of a non-square shape.
pub fn singular_gap(svd: &SvdTriple, k: usize) -> f64 {
    let p = svd.singulars.len();
    let sk = svd.sigma(k - 1);
    let mut gap = f64::INFINITY;
    for i in 0..p {
        if i != k - 1 {
            gap = gap.min((sk - svd.singulars[i]).abs());
        }
    }
    if svd.rows() != svd.cols() {
        gap = gap.min(sk);
    }
    gap
}

/// Validates `1 <= k <= min(m, n)`, `σ_k > 0` and simplicity of σ_k.
pub(crate) fn check_simple(svd: &SvdTriple, k: usize, gap_tol: f64) -> Result<(), SvdCalcError> {
    let p = svd.singulars.len();
    if k == 0 || k > p {
        return Err(SvdCalcError::IndexOutOfRange { k, max: p });
    }
    if k > svd.rank {
        return Err(SvdCalcError::ZeroSingular { k });
    }
    let gap = singular_gap(svd, k);
    let tol = gap_tol * svd.sigma_max();
    if gap <= tol {
        return Err(SvdCalcError::DegenerateSpectrum { k, gap, tol });
    }
    Ok(())
}
