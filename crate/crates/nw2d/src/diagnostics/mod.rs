//! Norms, the vector fields `S` and `Ω`, plain and corrected energies,
//! energy drift and decay-rate fits.

mod decay;
mod energy;
mod norms;
mod vector_fields;

pub use decay::{decay_fit, scaling_exponent, DecayFit, MIN_FIT_POINTS};
pub use energy::{
    correction_energies, corrections_with, dense_copy, energy, energy_on, energy_with,
    first_correction, plain_energies, second_correction, CorrectionEnergies, EnergyOptions,
    EnergyReport, PlainEnergies, Regularity, TopOrderForm, DENSE_GRID_N,
};
pub use norms::{norm, sobolev_norm, w_gamma, weighted_sup, x_norm, NormKind};
pub use vector_fields::{
    apply_vector_field, euler_field, rotation_field, time_derivative, vector_field_images,
    vector_field_images_in, vector_field_images_with, windowed_coordinate, WaveImageForm, CoordinateScheme, Target, VectorField,
    VectorFieldImages,
};

use crate::elasto_system::DiagonalState;
use crate::error::{Error, Result};

/// Norm of one unknown of an evolving state; `X` uses the state's time in
/// `S = t∂_t + x·∇`.
pub fn state_norm(s: &DiagonalState, target: Target, kind: NormKind) -> Result<f64> {
    kind.validate()?;
    let f = match target {
        Target::Curl => &s.phi0,
        Target::Wave => &s.phi,
    };
    match kind {
        NormKind::X { n0, n1 } => {
            let images = vector_field_images(s, CoordinateScheme::Windowed)?;
            Ok(x_norm(
                f,
                images.get(VectorField::Scaling, target),
                images.get(VectorField::Rotation, target),
                n0,
                n1,
            ))
        }
        _ => Ok(norm(f, kind)),
    }
}

/// Centered-difference time derivative of `E^modi` at interior samples of
/// an energy series, one-sided at the ends.
pub fn modified_energy_drift(series: &[EnergyReport]) -> Result<Vec<(f64, f64)>> {
    derivative_series(series, |r| r.e_modi)
}

/// The same derivative for the plain energy.
pub fn plain_energy_drift(series: &[EnergyReport]) -> Result<Vec<(f64, f64)>> {
    derivative_series(series, |r| r.plain())
}

fn derivative_series(series: &[EnergyReport], value: impl Fn(&EnergyReport) -> f64) -> Result<Vec<(f64, f64)>> {
    if series.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "energy drift needs at least 3 checkpoints, got {}",
            series.len()
        )));
    }
    let n = series.len();
    Ok((0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                i if i == n - 1 => (n - 2, n - 1),
                i => (i - 1, i + 1),
            };
            let dt = series[b].t - series[a].t;
            (series[i].t, (value(&series[b]) - value(&series[a])) / dt)
        })
        .collect())
}
