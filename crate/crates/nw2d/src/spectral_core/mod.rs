//! Periodic grid, transforms, Fourier multipliers, Littlewood-Paley
//! projections, truncation and field checkpoints.

pub mod checkpoint;
pub mod dealias;
pub mod dyadic;
pub mod fft;
pub mod field;
pub mod grid;
pub mod multiplier;

pub use dealias::{dealias, DealiasRule};
pub use dyadic::{bump, dyadic_project, shell_weight, shells_touching};
pub use field::SpectralField;
pub use grid::Grid;
pub use multiplier::{apply_chain, apply_multiplier, chain_symbol, Axis, Multiplier};

use crate::error::Result;

/// Builds a grid, rejecting sizes that are not powers of two in `[8, 1024]`.
pub fn make_grid(n: usize, length: f64) -> Result<Grid> {
    Grid::new(n, length)
}
