//! Exact linear algebra over GF(p) and the rationals.

use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

mod field;
mod matrix;
mod subspace;

pub use field::{format_rational, parse_rational, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{read_field_header, Matrix};
pub use subspace::Subspace;

pub(crate) use field::is_prime;

/// Default cap on the number of entries in any matrix built by a checked
/// operation (tensor products, stacked eliminations, parsed fixtures).
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

static MAX_CELLS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_CELLS);

pub fn max_cells() -> usize {
    MAX_CELLS.load(Ordering::Relaxed)
}

pub fn set_max_cells(cells: usize) {
    MAX_CELLS.store(cells, Ordering::Relaxed);
}

pub(crate) fn check_cells(cells: usize) -> Result<(), LinalgError> {
    if cells > max_cells() {
        Err(LinalgError::TooLarge { cells })
    } else {
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("interval [{a}, {b}] is not inside [1, {ambient}]")]
    IndexOutOfRange { a: usize, b: usize, ambient: usize },
    #[error("row has {found} entries, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("matrix with {cells} entries exceeds the cell cap")]
    TooLarge { cells: usize },
    #[error("vector is not contained in the frame subspace")]
    NotContained,
    #[error("parse error: {0}")]
    Parse(String),
}
