use super::transform::NormalFormOps;
use crate::elasto_system::{constraint_rhs, constraint_residual, rhs_diagonal_rule, DiagonalState};
use crate::error::Result;
use crate::spectral_core::multiplier::mod_grad;
use crate::spectral_core::{DealiasRule, SpectralField};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Constraint residual above which the quintic size of the remainder is not
/// expected.
pub const REFORMULATION_CONSTRAINT_TOL: f64 = 1e-8;

/// `Φ̃ = Φ + Σ_{(μ,ν)} A_{μν}(Φ_μ, Φ_ν)`.
pub fn normal_form(ops: &NormalFormOps, s: &DiagonalState) -> Result<SpectralField> {
    let mut out = s.phi.clone();
    out += &ops.quadratic(&s.phi, &s.phi)?;
    Ok(out)
}

/// `r = ∂_tΦ̃ + i|∇|Φ̃` with `∂_tΦ = −i|∇|Φ + 𝒩₁` substituted inside the
/// quadratic terms.
pub fn cancellation_field(ops: &NormalFormOps, s: &DiagonalState) -> Result<SpectralField> {
    let n1 = rhs_diagonal_rule(s, DealiasRule::TwoThirds)?.wave;
    let mut dt_phi = mod_grad(1, &s.phi).scale_complex(-I);
    dt_phi += &n1;
    let mut r = n1;
    r += &ops.quadratic(&dt_phi, &s.phi)?;
    r += &ops.quadratic(&s.phi, &dt_phi)?;
    r.axpy(I, &mod_grad(1, &ops.quadratic(&s.phi, &s.phi)?));
    Ok(r)
}

/// `‖∂_tΦ̃ + i|∇|Φ̃‖_{L²}`; cubic in the amplitude.
pub fn cancellation_residual(ops: &NormalFormOps, s: &DiagonalState) -> Result<f64> {
    Ok(cancellation_field(ops, s)?.l2_norm())
}

/// Splitting `𝒩₁ = Q₂ + C + Q₄ + ℛ` obtained by substituting the constraint
/// for the curl variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Reformulation {
    /// Wave-wave interactions.
    pub quadratic: SpectralField,
    /// Curl-wave interactions with the curl variable replaced by its
    /// quadratic part.
    pub cubic: SpectralField,
    /// Quartic terms from the second substitution.
    pub quartic: SpectralField,
    /// What is left of `𝒩₁`.
    pub remainder: SpectralField,
    /// Constraint residual of the input state.
    pub constraint_residual: f64,
}

impl Reformulation {
    /// Residual value when it exceeds [`REFORMULATION_CONSTRAINT_TOL`].
    pub fn constraint_warning(&self) -> Option<f64> {
        (self.constraint_residual > REFORMULATION_CONSTRAINT_TOL).then_some(self.constraint_residual)
    }

    pub fn sum(&self) -> SpectralField {
        let mut out = self.quadratic.clone();
        out += &self.cubic;
        out += &self.quartic;
        out += &self.remainder;
        out
    }
}

struct Pieces<'a> {
    phi: &'a SpectralField,
    zero: SpectralField,
    rule: DealiasRule,
}

impl Pieces<'_> {
    fn state(&self, curl: &SpectralField, wave: &SpectralField) -> Result<DiagonalState> {
        DiagonalState::new(0.0, curl.clone(), wave.clone())
    }

    /// Wave nonlinearity with curl input `curl` and wave input `wave`.
    fn wave(&self, curl: &SpectralField, wave: &SpectralField) -> Result<SpectralField> {
        Ok(rhs_diagonal_rule(&self.state(curl, wave)?, self.rule)?.wave)
    }

    /// `Σ_μ Q̃_{0,μ}(curl, Φ_μ)`.
    fn wave_mixed(&self, curl: &SpectralField) -> Result<SpectralField> {
        let mut out = self.wave(curl, self.phi)?;
        out -= &self.wave(curl, &self.zero)?;
        out -= &self.wave(&self.zero, self.phi)?;
        Ok(out)
    }

    fn constraint(&self, curl: &SpectralField, wave: &SpectralField) -> Result<SpectralField> {
        Ok(constraint_rhs(&self.state(curl, wave)?)?.real_part())
    }

    /// `Σ_ν Q̃¹_{0,ν}(curl, Φ_ν)`.
    fn constraint_mixed(&self, curl: &SpectralField) -> Result<SpectralField> {
        let mut out = self.constraint(curl, self.phi)?;
        out -= &self.constraint(curl, &self.zero)?;
        out -= &self.constraint(&self.zero, self.phi)?;
        Ok(out)
    }
}

/// Splits `𝒩₁` of a constrained state. With `P = Σ Q̃¹_{νκ}(Φ_ν, Φ_κ)` the
/// quadratic part of the curl variable and `M = Σ_ν Q̃¹_{0,ν}(P, Φ_ν)`:
/// `Q₂ = Σ Q̃_{μν}(Φ_μ, Φ_ν)`, `C = Σ_μ Q̃_{0,μ}(P, Φ_μ)`,
/// `Q₄ = Q̃_{0,0}(P, P) + Σ_μ Q̃_{0,μ}(M, Φ_μ)` and `ℛ = 𝒩₁ − Q₂ − C − Q₄`.
/// Every product uses `rule`.
pub fn reformulate_rhs_rule(s: &DiagonalState, rule: DealiasRule) -> Result<Reformulation> {
    let zero = SpectralField::zeros(*s.grid());
    let p = Pieces { phi: &s.phi, zero: zero.clone(), rule };
    let curl_quadratic = p.constraint(&zero, &s.phi)?;
    let quadratic = p.wave(&zero, &s.phi)?;
    let cubic = p.wave_mixed(&curl_quadratic)?;
    let mut quartic = p.wave(&curl_quadratic, &zero)?;
    quartic += &p.wave_mixed(&p.constraint_mixed(&curl_quadratic)?)?;
    let mut remainder = p.wave(&s.phi0, &s.phi)?;
    remainder -= &quadratic;
    remainder -= &cubic;
    remainder -= &quartic;
    Ok(Reformulation {
        quadratic,
        cubic,
        quartic,
        remainder,
        constraint_residual: constraint_residual(s)?,
    })
}

/// [`reformulate_rhs_rule`] under the 1/2 rule.
pub fn reformulate_rhs(s: &DiagonalState) -> Result<Reformulation> {
    reformulate_rhs_rule(s, DealiasRule::Half)
}
