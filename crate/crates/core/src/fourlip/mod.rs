//! Fourier-domain Lipschitz analysis of sampled signals.

mod analysis;
mod band;
mod esd;
mod signal;

use thiserror::Error;

pub use analysis::{directional_transform, grid_sup_gradient, spectral_contribution, spectral_lipschitz_bound};
pub use band::{
    ball_bins, ball_measure, band_bound, band_linearized_change, band_remove, mi_gap_bound, BandBound, BandRemoval,
    BAND_RADIUS_WARNING,
};
pub use esd::{radial_esd, snr};
pub use signal::{inverse_spectrum, parse_signal_csv, read_signal_csv, signal_to_csv, SpectralSignal, Taper};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("direction has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("expected {expected} components, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("signals live on different grids")]
    GridMismatch,
    #[error("no frequency bin falls inside the ball")]
    EmptyBand,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
}
