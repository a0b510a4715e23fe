use super::normal_form::normal_form;
use super::transform::NormalFormOps;
use crate::diagnostics::{dense_copy, norm, NormKind};
use crate::elasto_system::DiagonalState;
use crate::error::{Error, Result};
use crate::spectral_core::multiplier::half_wave;
use crate::spectral_core::SpectralField;

/// Fewest checkpoints accepted by [`scattering_sequence`].
pub const MIN_SCATTERING_POINTS: usize = 4;

/// Profiles of the wave variable and of its normal form at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePair {
    pub t: f64,
    /// `e^{it|∇|}Φ`.
    pub g: SpectralField,
    /// `e^{it|∇|}Φ̃`.
    pub g_tilde: SpectralField,
}

/// `e^{it|∇|}Φ`, undoing the free flow.
pub fn profile(s: &DiagonalState) -> SpectralField {
    half_wave(s.t, false, &s.phi)
}

/// Both profiles of a state on the tables' grid.
pub fn profile_pair(ops: &NormalFormOps, s: &DiagonalState) -> Result<ProfilePair> {
    Ok(ProfilePair {
        t: s.t,
        g: profile(s),
        g_tilde: half_wave(s.t, false, &normal_form(ops, s)?),
    })
}

/// `(t_i, ‖g̃(t_i) − g̃(t_last)‖_Z)` over the given states, each truncated
/// to the tables' grid first. The last state stands in for the limit.
pub fn scattering_sequence(ops: &NormalFormOps, states: &[DiagonalState], n1: u32) -> Result<Vec<(f64, f64)>> {
    if states.len() < MIN_SCATTERING_POINTS {
        return Err(Error::InvalidArgument(format!(
            "scattering sequence needs at least {MIN_SCATTERING_POINTS} checkpoints, got {}",
            states.len()
        )));
    }
    let n = ops.grid().n();
    let profiles = states
        .iter()
        .map(|s| Ok(profile_pair(ops, &dense_copy(s, n)?)?.g_tilde))
        .collect::<Result<Vec<_>>>()?;
    let last = profiles.last().expect("nonempty");
    Ok(states
        .iter()
        .zip(&profiles)
        .map(|(s, g)| (s.t, norm(&(g - last), NormKind::Z { n1 })))
        .collect())
}
