//! Small localized initial data and the constraint solve.

mod constraint;
mod random;
mod recipe;

pub use constraint::{
    solve_constraint, ConstraintReport, ConstraintSolution, CONTRACTION_GUARD, DEFAULT_MAX_ITER,
};
pub use random::{random_diagonal_state, random_field, random_potential_state, random_scaled};
pub use recipe::{make_phi, DataRecipe, ModeSpec, Shape, MAX_AMPLITUDE};

use crate::elasto_system::DiagonalState;
use crate::error::Result;
use crate::spectral_core::Grid;

/// Wave variable from the recipe and the curl variable solving the
/// constraint, at `t = 0`.
pub fn constrained_state(
    recipe: &DataRecipe,
    grid: Grid,
    tol: f64,
) -> Result<(DiagonalState, ConstraintSolution)> {
    let phi = make_phi(recipe, grid)?;
    let sol = solve_constraint(&phi, tol, DEFAULT_MAX_ITER)?;
    Ok((DiagonalState::new(0.0, sol.phi0.clone(), phi)?, sol))
}
