use crate::elasto_system::{
    linear_potential, rhs_diagonal_rule, rhs_potential_rule, DiagonalState, Formulation, PotentialState,
};
use crate::error::{Error, Result};
use crate::spectral_core::multiplier::half_wave;
use crate::spectral_core::{DealiasRule, Grid, SpectralField};
use serde::{Deserialize, Serialize};

/// Largest accepted `Δt · ξ_max` for the potential-formulation step.
pub const POTENTIAL_STABILITY_LIMIT: f64 = 2.5;

/// Time-stepping settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepperConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Steps between checkpoints.
    pub checkpoint_every: usize,
    pub rule: DealiasRule,
    pub formulation: Formulation,
    /// Allows `t_end` beyond the wraparound horizon.
    pub override_horizon: bool,
    /// When false the quadratic terms are dropped and only the linear flow
    /// is integrated.
    pub nonlinear: bool,
}

impl Default for StepperConfig {
    fn default() -> Self {
        StepperConfig {
            dt: 0.05,
            t_end: 48.0,
            checkpoint_every: 20,
            rule: DealiasRule::TwoThirds,
            formulation: Formulation::Diagonal,
            override_horizon: false,
            nonlinear: true,
        }
    }
}

impl StepperConfig {
    pub fn validate(&self, grid: &Grid) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {}", self.dt)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidArgument(format!("end time must be nonnegative, got {}", self.t_end)));
        }
        if self.checkpoint_every == 0 {
            return Err(Error::InvalidArgument("checkpoint interval must be at least one step".into()));
        }
        let horizon = grid.wraparound_horizon();
        if self.t_end > horizon && !self.override_horizon {
            return Err(Error::InvalidArgument(format!(
                "end time {} exceeds the wraparound horizon {horizon} of a side-{} torus; pass the horizon override to run anyway",
                self.t_end,
                grid.length()
            )));
        }
        if self.formulation != Formulation::Diagonal {
            let z = self.dt * grid.xi_max();
            if z > POTENTIAL_STABILITY_LIMIT {
                return Err(Error::InvalidArgument(format!(
                    "potential stepping needs dt·ξ_max ≤ {POTENTIAL_STABILITY_LIMIT}, got {z}"
                )));
            }
        }
        Ok(())
    }

    /// Number of steps reaching `t_end`; the last step is not shortened, so
    /// `t_end` should be a multiple of `dt`.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt - 1e-9).ceil().max(0.0) as usize
    }
}

fn check_finite(ok: bool, t: f64, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::BlowUp { t, what: format!("non-finite {what}") })
    }
}

fn diagonal_nonlinearity(s: &DiagonalState, rule: DealiasRule, nonlinear: bool) -> Result<(SpectralField, SpectralField)> {
    if !nonlinear {
        let z = SpectralField::zeros(*s.grid());
        return Ok((z.clone(), z));
    }
    check_finite(s.is_finite(), s.t, "diagonal state")?;
    let r = rhs_diagonal_rule(s, rule)?;
    Ok((r.curl, r.wave))
}

fn combine(base: &SpectralField, terms: &[(f64, &SpectralField)]) -> SpectralField {
    let mut out = base.clone();
    for (c, f) in terms {
        out.axpy(num_complex::Complex64::new(*c, 0.0), f);
    }
    out
}

/// One fourth-order step of the diagonal system. The half-wave part is
/// integrated exactly through the factor `e^{−ih|∇|}`; the curl variable has
/// no linear part and takes the classical stages.
pub fn step_diagonal(s: &DiagonalState, dt: f64, rule: DealiasRule, nonlinear: bool) -> Result<DiagonalState> {
    let h = dt;
    let e_half = |f: &SpectralField| half_wave(0.5 * h, true, f);
    let e_full = |f: &SpectralField| half_wave(h, true, f);
    let stage = |t: f64, phi0: SpectralField, phi: SpectralField| DiagonalState { t, phi0, phi };

    let (c1, w1) = diagonal_nonlinearity(s, rule, nonlinear)?;
    let a = stage(
        s.t + 0.5 * h,
        combine(&s.phi0, &[(0.5 * h, &c1)]),
        e_half(&combine(&s.phi, &[(0.5 * h, &w1)])),
    );
    let (c2, w2) = diagonal_nonlinearity(&a, rule, nonlinear)?;
    let phi_half = e_half(&s.phi);
    let b = stage(
        s.t + 0.5 * h,
        combine(&s.phi0, &[(0.5 * h, &c2)]),
        combine(&phi_half, &[(0.5 * h, &w2)]),
    );
    let (c3, w3) = diagonal_nonlinearity(&b, rule, nonlinear)?;
    let phi_full = e_full(&s.phi);
    let c = stage(
        s.t + h,
        combine(&s.phi0, &[(h, &c3)]),
        combine(&phi_full, &[(h, &e_half(&w3))]),
    );
    let (c4, w4) = diagonal_nonlinearity(&c, rule, nonlinear)?;

    let phi0 = combine(&s.phi0, &[(h / 6.0, &c1), (h / 3.0, &c2), (h / 3.0, &c3), (h / 6.0, &c4)]);
    let mid = e_half(&(&w2 + &w3));
    let phi = combine(&phi_full, &[(h / 6.0, &e_full(&w1)), (h / 3.0, &mid), (h / 6.0, &w4)]);
    let out = DiagonalState { t: s.t + h, phi0, phi };
    check_finite(out.is_finite(), out.t, "diagonal state")?;
    Ok(out)
}

fn potential_rate(s: &PotentialState, rule: DealiasRule, nonlinear: bool) -> Result<[SpectralField; 3]> {
    let lin = linear_potential(s);
    if !nonlinear {
        return Ok([lin.n0, lin.n1, lin.n2]);
    }
    check_finite(s.is_finite(), s.t, "potential state")?;
    let q = rhs_potential_rule(s, rule)?;
    Ok([&lin.n0 + &q.n0, &lin.n1 + &q.n1, &lin.n2 + &q.n2])
}

fn potential_shift(s: &PotentialState, t: f64, c: f64, k: &[SpectralField; 3]) -> PotentialState {
    PotentialState {
        t,
        psi: combine(&s.psi, &[(c, &k[0])]),
        g1: combine(&s.g1, &[(c, &k[1])]),
        g2: combine(&s.g2, &[(c, &k[2])]),
    }
}

/// One classical fourth-order step of the potential system, linear part
/// included in the stages.
pub fn step_potential(s: &PotentialState, dt: f64, rule: DealiasRule, nonlinear: bool) -> Result<PotentialState> {
    let z = dt * s.grid().xi_max();
    if z > POTENTIAL_STABILITY_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "potential stepping needs dt·ξ_max ≤ {POTENTIAL_STABILITY_LIMIT}, got {z}"
        )));
    }
    let h = dt;
    let k1 = potential_rate(s, rule, nonlinear)?;
    let k2 = potential_rate(&potential_shift(s, s.t + 0.5 * h, 0.5 * h, &k1), rule, nonlinear)?;
    let k3 = potential_rate(&potential_shift(s, s.t + 0.5 * h, 0.5 * h, &k2), rule, nonlinear)?;
    let k4 = potential_rate(&potential_shift(s, s.t + h, h, &k3), rule, nonlinear)?;
    let update = |base: &SpectralField, i: usize| {
        combine(base, &[(h / 6.0, &k1[i]), (h / 3.0, &k2[i]), (h / 3.0, &k3[i]), (h / 6.0, &k4[i])])
    };
    let out = PotentialState {
        t: s.t + h,
        psi: update(&s.psi, 0),
        g1: update(&s.g1, 1),
        g2: update(&s.g2, 2),
    };
    check_finite(out.is_finite(), out.t, "potential state")?;
    Ok(out)
}
