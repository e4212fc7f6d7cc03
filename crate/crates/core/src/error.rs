use thiserror::Error;

use crate::formula::{EvalError, ParseError};
use crate::kernel::UnitError;
use crate::rational::Rational;

/// Errors raised by the piecewise-linear, geometric and coherence layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("formula mentions v{arity} but the dimension is {n}")]
    Arity { arity: usize, n: usize },
    #[error("length mismatch: {what} has {got} entries, expected {expected}")]
    Length { what: &'static str, got: usize, expected: usize },
    #[error("max-min expansion needs {pieces} affine pieces, the cap is {cap}")]
    TooLarge { pieces: u128, cap: usize },
    #[error("vertex enumeration needs {systems} linear systems, the budget is {budget}")]
    BudgetExceeded { systems: u128, budget: u64 },
    #[error("function leaves [0, 1]: value {value} at ({})", join(point))]
    Range { point: Vec<Rational>, value: Rational },
    #[error("{0}")]
    Invalid(String),
}

fn join(point: &[Rational]) -> String {
    point.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl Error {
    /// Budget and size-cap failures, as opposed to domain errors.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Resource limits for max-min expansion and vertex enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of affine pieces a max-min expansion may produce.
    pub max_pieces: usize,
    /// Largest number of `n x n` systems vertex enumeration may solve.
    pub max_systems: u64,
}

impl Budget {
    pub const DEFAULT_PIECES: usize = 100_000;
    pub const DEFAULT_SYSTEMS: u64 = 2_000_000;

    pub fn with_systems(max_systems: u64) -> Self {
        Budget { max_systems, ..Self::default() }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pieces: Self::DEFAULT_PIECES, max_systems: Self::DEFAULT_SYSTEMS }
    }
}
