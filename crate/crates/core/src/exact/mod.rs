//! Exact arithmetic over Q and cyclotomic fields Q(zeta_n), plus dense
//! exact linear algebra used by every other module.

mod cyclo;
mod matrix;

pub use cyclo::{CycloNum, Rat};
pub use matrix::{solve_linear, ExactMatrix, LinearSolution};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
