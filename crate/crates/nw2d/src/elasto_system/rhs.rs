use super::convert::to_potential;
use super::state::{DiagonalState, PotentialState};
use crate::bilinear_engine::{null_form_q12, pseudo_product_factored, FactoredSymbol};
use crate::error::Result;
use crate::spectral_core::multiplier::{mod_grad, partial, riesz};
use crate::spectral_core::Axis::{self, X1, X2};
use crate::spectral_core::dealias::{dealias, dealias_in_place};
use crate::spectral_core::{DealiasRule, SpectralField};
use crate::symbol_library::{operator, Sign, SymbolId, ALL_PAIRS};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Quadratic right-hand sides of the potential formulation.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialRhs {
    /// Nonlinearity of the `ψ` equation.
    pub n0: SpectralField,
    /// Nonlinearity of the `G₁` equation.
    pub n1: SpectralField,
    /// Nonlinearity of the `G₂` equation.
    pub n2: SpectralField,
}

/// Quadratic right-hand sides of the diagonal formulation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalRhs {
    /// Time derivative of the curl variable.
    pub curl: SpectralField,
    /// Nonlinearity of the wave equation `∂_tΦ + i|∇|Φ = ·`.
    pub wave: SpectralField,
}

/// How the diagonal nonlinearities are assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhsPath {
    /// Convert to potentials and combine the potential nonlinearities.
    Recovery,
    /// Sum the cataloged bilinear operators over branch pairs.
    Symbolic,
}

/// `f_i = Q(∂_iψ, ψ) − Q(∂_iG₁, G₁) − Q(∂_iG₂, G₂)`.
fn stress_term(s: &PotentialState, axis: Axis) -> Result<SpectralField> {
    let mut f = null_form_q12(&partial(axis, &s.psi), &s.psi)?;
    f -= &null_form_q12(&partial(axis, &s.g1), &s.g1)?;
    f -= &null_form_q12(&partial(axis, &s.g2), &s.g2)?;
    Ok(f)
}

fn assemble_potential(f1: &SpectralField, f2: &SpectralField, n1: SpectralField, n2: SpectralField) -> PotentialRhs {
    let n0 = -&mod_grad(-1, &(&riesz(X1, f1) + &riesz(X2, f2)));
    PotentialRhs { n0, n1, n2 }
}

/// Quadratic terms of the potential system
/// `∂_tψ − ∂₁G₁ − ∂₂G₂ = Ñ₀`, `∂_tG_i − ∂_iψ = Ñ_i`, each null form
/// evaluated on its own.
pub fn rhs_potential_reference(s: &PotentialState) -> Result<PotentialRhs> {
    s.validate()?;
    let f1 = stress_term(s, X1)?;
    let f2 = stress_term(s, X2)?;
    let n1 = null_form_q12(&s.g1, &s.psi)?;
    let n2 = null_form_q12(&s.g2, &s.psi)?;
    Ok(assemble_potential(&f1, &f2, n1, n2))
}

/// Physical values of the first and second derivatives of a truncated field,
/// ordered `∂₁, ∂₂, ∂₁₁, ∂₁₂, ∂₂₂`.
fn derivative_samples(u: &SpectralField) -> [Vec<Complex64>; 5] {
    let d = |p: fn([f64; 2]) -> Complex64| u.map_symbol(p).to_physical();
    [
        d(|xi| Complex64::new(0.0, xi[0])),
        d(|xi| Complex64::new(0.0, xi[1])),
        d(|xi| Complex64::new(-xi[0] * xi[0], 0.0)),
        d(|xi| Complex64::new(-xi[0] * xi[1], 0.0)),
        d(|xi| Complex64::new(-xi[1] * xi[1], 0.0)),
    ]
}

/// The same quadratic terms with a dealiasing rule, sharing one set of
/// derivative transforms among all null forms.
pub fn rhs_potential_rule(s: &PotentialState, rule: DealiasRule) -> Result<PotentialRhs> {
    s.validate()?;
    let grid = *s.grid();
    let [p, a, b] = [&s.psi, &s.g1, &s.g2].map(|u| derivative_samples(&dealias(u, rule)));
    // Q(∂_i u, u) = ∂₁∂_i u ∂₂u − ∂₂∂_i u ∂₁u, with second-derivative slots
    // (∂₁₁, ∂₁₂) for i = 1 and (∂₁₂, ∂₂₂) for i = 2.
    let stress = |i: usize, u: &[Vec<Complex64>; 5], k: usize| {
        let (s1, s2) = if i == 0 { (2, 3) } else { (3, 4) };
        u[s1][k] * u[1][k] - u[s2][k] * u[0][k]
    };
    let q = |f: &[Vec<Complex64>; 5], g: &[Vec<Complex64>; 5], k: usize| f[0][k] * g[1][k] - f[1][k] * g[0][k];
    let len = grid.len();
    let mut bufs = [vec![Complex64::new(0.0, 0.0); len], vec![Complex64::new(0.0, 0.0); len], vec![Complex64::new(0.0, 0.0); len], vec![Complex64::new(0.0, 0.0); len]];
    for k in 0..len {
        bufs[0][k] = stress(0, &p, k) - stress(0, &a, k) - stress(0, &b, k);
        bufs[1][k] = stress(1, &p, k) - stress(1, &a, k) - stress(1, &b, k);
        bufs[2][k] = q(&a, &p, k);
        bufs[3][k] = q(&b, &p, k);
    }
    let [f1, f2, n1, n2] = bufs.map(|v| {
        let mut out = SpectralField::from_physical(grid, &v).expect("grid-sized buffer");
        dealias_in_place(&mut out, rule);
        out
    });
    Ok(assemble_potential(&f1, &f2, n1, n2))
}

/// Quadratic terms of the potential system under the 2/3 rule.
pub fn rhs_potential(s: &PotentialState) -> Result<PotentialRhs> {
    rhs_potential_rule(s, DealiasRule::TwoThirds)
}

/// Linear part of the potential system: `(∂₁G₁ + ∂₂G₂, ∂₁ψ, ∂₂ψ)`.
pub fn linear_potential(s: &PotentialState) -> PotentialRhs {
    PotentialRhs {
        n0: &partial(X1, &s.g1) + &partial(X2, &s.g2),
        n1: partial(X1, &s.psi),
        n2: partial(X2, &s.psi),
    }
}

/// Maps potential nonlinearities to the diagonal ones:
/// curl `R₁Ñ₂ − R₂Ñ₁`, wave `Ñ₀ + i(R₁Ñ₁ + R₂Ñ₂)`.
pub fn diagonal_from_potential(r: &PotentialRhs) -> DiagonalRhs {
    let curl = &riesz(X1, &r.n2) - &riesz(X2, &r.n1);
    let mut wave = r.n0.clone();
    wave.axpy(I, &(&riesz(X1, &r.n1) + &riesz(X2, &r.n2)));
    DiagonalRhs { curl, wave }
}

fn apply_op(id: SymbolId, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let op: FactoredSymbol = operator(id).expect("cataloged operator is factorable");
    pseudo_product_factored(&op, f, g, DealiasRule::TwoThirds)
}

/// Sum of `curl_curl(φ₀, φ₀) + Σ_μ mixed_μ(φ₀, Φ_μ) + Σ_{μν} waves_{μν}(Φ_μ, Φ_ν)`.
fn branch_sum(
    s: &DiagonalState,
    curl_curl: Option<SymbolId>,
    mixed: fn(Sign) -> SymbolId,
    waves: fn(Sign, Sign) -> SymbolId,
) -> Result<SpectralField> {
    let branches = [s.phi.clone(), s.phi.conj()];
    let mut out = match curl_curl {
        Some(id) => apply_op(id, &s.phi0, &s.phi0)?,
        None => SpectralField::zeros(*s.grid()),
    };
    for mu in Sign::BOTH {
        out += &apply_op(mixed(mu), &s.phi0, &branches[branch_index(mu)])?;
    }
    for (mu, nu) in ALL_PAIRS {
        out += &apply_op(waves(mu, nu), &branches[branch_index(mu)], &branches[branch_index(nu)])?;
    }
    Ok(out)
}

fn branch_index(s: Sign) -> usize {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// Recovery-path diagonal nonlinearities under a given dealiasing rule.
pub fn rhs_diagonal_rule(s: &DiagonalState, rule: DealiasRule) -> Result<DiagonalRhs> {
    s.phi0.check_same_grid(&s.phi)?;
    Ok(diagonal_from_potential(&rhs_potential_rule(&to_potential(s), rule)?))
}

/// Quadratic terms of `∂_tφ₀ = 𝒩₀`, `∂_tΦ + i|∇|Φ = 𝒩₁`.
pub fn rhs_diagonal(s: &DiagonalState, path: RhsPath) -> Result<DiagonalRhs> {
    s.phi0.check_same_grid(&s.phi)?;
    match path {
        RhsPath::Recovery => Ok(diagonal_from_potential(&rhs_potential(&to_potential(s))?)),
        RhsPath::Symbolic => Ok(DiagonalRhs {
            curl: branch_sum(s, None, SymbolId::CurlMixed, SymbolId::CurlWaves)?,
            wave: branch_sum(
                s,
                Some(SymbolId::WaveCurlCurl),
                SymbolId::WaveMixed,
                SymbolId::WaveWaves,
            )?,
        }),
    }
}

/// Right-hand side `𝒩₂(φ₀, Φ)` of the constraint `φ₀ = 𝒩₂`.
pub fn constraint_rhs(s: &DiagonalState) -> Result<SpectralField> {
    s.phi0.check_same_grid(&s.phi)?;
    let r = |a: Axis, f: &SpectralField| riesz(a, f);
    let branches = [s.phi.clone(), s.phi.conj()];
    let mut inner = null_form_q12(&r(X2, &s.phi0), &r(X1, &s.phi0))?;
    for mu in Sign::BOTH {
        let w = &branches[branch_index(mu)];
        for a in Axis::BOTH {
            inner.axpy(mu.c() * 0.5, &null_form_q12(&r(a, &s.phi0), &r(a, w))?);
        }
    }
    for (mu, nu) in ALL_PAIRS {
        let u = &branches[branch_index(mu)];
        let w = &branches[branch_index(nu)];
        inner.axpy(mu.c() * nu.c() * 0.25, &null_form_q12(&r(X2, u), &r(X1, w))?);
    }
    Ok(mod_grad(-1, &inner))
}

/// The same constraint right-hand side assembled from the cataloged
/// constraint operators.
pub fn constraint_rhs_symbolic(s: &DiagonalState) -> Result<SpectralField> {
    branch_sum(
        s,
        Some(SymbolId::ConstraintCurlCurl),
        SymbolId::ConstraintMixed,
        SymbolId::ConstraintWaves,
    )
}

/// `‖φ₀ − 𝒩₂(φ₀, Φ)‖_{L²}`.
pub fn constraint_residual(s: &DiagonalState) -> Result<f64> {
    Ok((&s.phi0 - &constraint_rhs(s)?).l2_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial_data::random_potential_state;
    use crate::spectral_core::Grid;

    #[test]
    fn shared_transforms_match_separate_null_forms() {
        let g = Grid::new(32, 17.0).unwrap();
        let s = random_potential_state(g, 11, 0.05);
        let fast = rhs_potential(&s).unwrap();
        let slow = rhs_potential_reference(&s).unwrap();
        for (a, b) in [(&fast.n0, &slow.n0), (&fast.n1, &slow.n1), (&fast.n2, &slow.n2)] {
            assert!((a - b).l2_norm() <= 1e-13 * b.l2_norm());
        }
    }
}
