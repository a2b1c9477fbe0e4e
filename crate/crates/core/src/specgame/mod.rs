//! Shapley-value importance of spectral bands.

mod bands;
mod game;

use thiserror::Error;

pub use bands::{band_partition, coalition_filter};
pub use game::{
    importance_score, parse_game_csv, read_game_csv, shapley_exact, shapley_mc, shapley_permutation_bruteforce,
    shapley_to_csv, CoalitionFn, CoalitionGame, ShapleyEstimate, MAX_EXACT_PLAYERS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("{m} players exceed the limit of {max}")]
    PlayerCountTooLarge { m: usize, max: usize },
    #[error("coalition table has {found} entries, expected {expected}")]
    IncompleteTable { expected: usize, found: usize },
    #[error("coalition callback failed: {0}")]
    CallbackFailure(String),
    #[error("weights are all zero")]
    DegenerateWeights,
    #[error("Shapley value {index} is negative ({value})")]
    NegativeShapley { index: usize, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
}
