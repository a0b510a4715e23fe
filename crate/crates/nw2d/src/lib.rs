//! Pseudospectral workbench for two-dimensional incompressible Hookean
//! elastodynamics written in potential and diagonalized form.

pub mod bilinear_engine;
pub mod diagnostics;
pub mod elasto_system;
pub mod error;
pub mod evolution;
pub mod initial_data;
pub mod scattering_normalform;
pub mod spectral_core;
pub mod symbol_library;

pub use error::{Error, Result};
pub use spectral_core::{Grid, SpectralField};
