//! Dense real matrices, column-major vectorization, Kronecker products
//! and the factorizations the rest of the crate builds on.

mod dense;
mod io;
mod kron;
mod linalg;
mod random;
mod svd;

use thiserror::Error;

pub use dense::{dot, norm2, norm_p, DenseMatrix};
pub use io::{format_f64, parse_matrix_csv, read_matrix_csv, write_matrix_csv};
pub use io::matrix_to_csv;
pub use kron::{kron, kron_vec, unvec, vec};
pub use linalg::{determinant, inverse, psd_sqrt, symmetric_eigen, Lu, SymmetricEigen};
pub use random::{gaussian_matrix, seeded_rng, uniform_matrix, unit_sphere_vector};
pub use svd::{full_svd, singular_values, SvdTriple, DEFAULT_RANK_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("matrix dimensions must be positive")]
    EmptyShape,
    #[error("data length {found} does not match shape (expected {expected})")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("{routine} did not converge within {sweeps} sweeps")]
    NonConvergence { routine: &'static str, sweeps: usize },
    #[error("tolerance must be nonnegative, got {0}")]
    InvalidTolerance(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}
