use crate::elasto_system::{constraint_rhs, DiagonalState};
use crate::error::{Error, Result};
use crate::spectral_core::SpectralField;
use serde::Serialize;

/// Iterate ratio at or above which the fixed-point iteration is declared
/// non-contracting.
pub const CONTRACTION_GUARD: f64 = 0.9;

/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 50;

/// Outcome of the constraint solve.
#[derive(Debug, Clone)]
pub struct ConstraintSolution {
    pub phi0: SpectralField,
    /// Number of evaluations of the constraint right-hand side.
    pub iterations: usize,
    /// Final residual `‖φ₀ − 𝒩₂(φ₀, Φ)‖_{L²}`.
    pub residual: f64,
    /// Residual after each iterate.
    pub history: Vec<f64>,
}

/// Summary suitable for run reports.
#[derive(Debug, Clone, Serialize)]
pub struct ConstraintReport {
    pub iterations: usize,
    pub residual: f64,
    pub history: Vec<f64>,
}

impl ConstraintSolution {
    pub fn report(&self) -> ConstraintReport {
        ConstraintReport {
            iterations: self.iterations,
            residual: self.residual,
            history: self.history.clone(),
        }
    }
}

/// Solves `φ₀ = 𝒩₂(φ₀, Φ)` by fixed-point iteration from `𝒩₂(0, Φ)`.
///
/// Fails when consecutive residuals shrink by less than
/// [`CONTRACTION_GUARD`] or when `max_iter` iterates do not reach `tol`.
pub fn solve_constraint(phi: &SpectralField, tol: f64, max_iter: usize) -> Result<ConstraintSolution> {
    let grid = *phi.grid();
    let rhs = |phi0: &SpectralField| -> Result<SpectralField> {
        let s = DiagonalState::new(0.0, phi0.clone(), phi.clone())?;
        Ok(constraint_rhs(&s)?.real_part())
    };
    let mut current = rhs(&SpectralField::zeros(grid))?;
    let mut history = Vec::new();
    for iter in 1..=max_iter.max(1) {
        let next = rhs(&current)?;
        let residual = (&current - &next).l2_norm();
        history.push(residual);
        if !residual.is_finite() {
            return Err(Error::Divergence(format!("non-finite residual at iterate {iter}")));
        }
        if residual <= tol {
            return Ok(ConstraintSolution {
                phi0: current,
                iterations: iter,
                residual,
                history,
            });
        }
        if let [.., prev, last] = history[..] {
            if last >= CONTRACTION_GUARD * prev {
                return Err(Error::Divergence(format!(
                    "constraint iteration stopped contracting at iterate {iter}: residual {last:e} after {prev:e}"
                )));
            }
        }
        current = next;
    }
    Err(Error::Divergence(format!(
        "constraint iteration did not reach {tol:e} within {max_iter} iterates (last residual {:e})",
        history.last().copied().unwrap_or(f64::NAN)
    )))
}
