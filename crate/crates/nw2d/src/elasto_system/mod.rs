//! Right-hand sides of the potential and diagonal formulations, the
//! constraint, conversions between them, and recovery of the physical
//! velocity, deformation and pressure.

mod convert;
mod physical;
mod rhs;
mod state;

pub use convert::{to_diagonal, to_potential};
pub use physical::{
    derivation_residuals, derivation_residuals_with, momentum_forcing, pressure, reconstruct_fields,
    IdentityResidual, PhysicalFields,
};
pub use rhs::{
    constraint_residual, constraint_rhs, constraint_rhs_symbolic, diagonal_from_potential,
    linear_potential, rhs_diagonal, rhs_diagonal_rule, rhs_potential, rhs_potential_reference,
    rhs_potential_rule, DiagonalRhs, PotentialRhs, RhsPath,
};
pub use state::{DiagonalState, Formulation, PotentialState};
