use super::rhs::{linear_potential, rhs_potential, PotentialRhs};
use super::state::PotentialState;
use crate::bilinear_engine::{null_form_q12, physical_product};
use crate::error::Result;
use crate::spectral_core::multiplier::partial;
use crate::spectral_core::Axis::{self, X1, X2};
use crate::spectral_core::{DealiasRule, SpectralField};
use num_complex::Complex64;
use serde::Serialize;

/// Velocity, displacement gradient and (optionally) pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalFields {
    /// `v = (−∂₂ψ, ∂₁ψ)`.
    pub v: [SpectralField; 2],
    /// `g[i][j]` is row `i`, column `j`; column `j` is `(−∂₂G_j, ∂₁G_j)`.
    pub g: [[SpectralField; 2]; 2],
    pub p: Option<SpectralField>,
}

fn d(a: Axis, f: &SpectralField) -> SpectralField {
    partial(a, f)
}

/// `(−∂₂f, ∂₁f)`.
fn perp_grad(f: &SpectralField) -> [SpectralField; 2] {
    [-&d(X2, f), d(X1, f)]
}

/// Velocity and displacement gradient from the potentials.
pub fn reconstruct_fields(s: &PotentialState) -> PhysicalFields {
    let v = perp_grad(&s.psi);
    let [c00, c10] = perp_grad(&s.g1);
    let [c01, c11] = perp_grad(&s.g2);
    PhysicalFields {
        v,
        g: [[c00, c01], [c10, c11]],
        p: None,
    }
}

impl PhysicalFields {
    /// `L²` norms of `∇·v` and of both components of `∇·Gᵀ`.
    pub fn divergence_residuals(&self) -> [f64; 3] {
        let div_v = &d(X1, &self.v[0]) + &d(X2, &self.v[1]);
        let col = |j: usize| &d(X1, &self.g[0][j]) + &d(X2, &self.g[1][j]);
        [div_v.l2_norm(), col(0).l2_norm(), col(1).l2_norm()]
    }
}

fn product(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    physical_product(a, b, DealiasRule::TwoThirds)
}

/// Momentum forcing `∇·(GGᵀ) − v·∇v` without the pressure gradient.
pub fn momentum_forcing(f: &PhysicalFields) -> Result<[SpectralField; 2]> {
    let grid = *f.v[0].grid();
    let mut out = [SpectralField::zeros(grid), SpectralField::zeros(grid)];
    let axes = Axis::BOTH;
    for i in 0..2 {
        for j in 0..2 {
            let mut ggt = SpectralField::zeros(grid);
            for k in 0..2 {
                ggt += &product(&f.g[i][k], &f.g[j][k])?;
            }
            out[i] += &d(axes[j], &ggt);
            out[i] -= &product(&f.v[j], &d(axes[j], &f.v[i]))?;
        }
    }
    Ok(out)
}

/// Zero-mean pressure solving `Δp = div(∇·(GGᵀ) − v·∇v)`.
pub fn pressure(f: &PhysicalFields) -> Result<SpectralField> {
    let forcing = momentum_forcing(f)?;
    let div = &d(X1, &forcing[0]) + &d(X2, &forcing[1]);
    Ok(div.map_symbol(|xi| {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        if r2 == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(-1.0 / r2, 0.0)
        }
    }))
}

/// One identity of the derivation from the velocity/deformation system to
/// the potential system.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityResidual {
    pub name: String,
    /// `‖lhs − rhs‖_{L²}`.
    pub residual: f64,
    /// Residual relative to `max(‖lhs‖, ‖rhs‖)`, or 0 when both vanish.
    pub relative: f64,
}

fn identity(name: &str, lhs: &SpectralField, rhs: &SpectralField) -> IdentityResidual {
    let residual = (lhs - rhs).l2_norm();
    let scale = lhs.l2_norm().max(rhs.l2_norm());
    IdentityResidual {
        name: name.to_string(),
        residual,
        relative: if scale > 0.0 { residual / scale } else { 0.0 },
    }
}

/// Residuals of the derivation identities with `∂_t` eliminated through
/// the potential system.
pub fn derivation_residuals(s: &PotentialState) -> Result<Vec<IdentityResidual>> {
    derivation_residuals_with(s, &rhs_potential(s)?)
}

/// As [`derivation_residuals`], with the potential nonlinearities supplied by
/// the caller (used to confirm that a corrupted right-hand side is caught).
pub fn derivation_residuals_with(
    s: &PotentialState,
    nonlinear: &PotentialRhs,
) -> Result<Vec<IdentityResidual>> {
    let lin = linear_potential(s);
    let dt_psi = &lin.n0 + &nonlinear.n0;
    let dt_g = [&lin.n1 + &nonlinear.n1, &lin.n2 + &nonlinear.n2];
    let fields = reconstruct_fields(s);
    let p = pressure(&fields)?;
    let forcing = momentum_forcing(&fields)?;
    let q = null_form_q12;
    let pots = [&s.g1, &s.g2];
    let mut out = Vec::new();

    // Momentum equation, both components: ∂_t v − ∇·G = −∇p + forcing.
    let dt_v = perp_grad(&dt_psi);
    for (i, axis) in Axis::BOTH.into_iter().enumerate() {
        let div_g = &d(X1, &fields.g[i][0]) + &d(X2, &fields.g[i][1]);
        let lhs = &dt_v[i] - &div_g;
        let rhs = &forcing[i] - &d(axis, &p);
        out.push(identity(&format!("momentum_{}", i + 1), &lhs, &rhs));
    }
    // The forcing written with null forms, pointwise.
    let sign = [-1.0, 1.0];
    for (i, axis) in Axis::BOTH.into_iter().enumerate() {
        let other = axis.other();
        let mut nf = q(&d(other, &s.psi), &s.psi)?;
        nf -= &q(&d(other, &s.g1), &s.g1)?;
        nf -= &q(&d(other, &s.g2), &s.g2)?;
        out.push(identity(&format!("momentum_{}_null_form", i + 1), &forcing[i], &nf.scale(sign[i])));
    }
    // Deformation equation, all four entries: ∂_t G − ∇v = −v·∇G + ∇v G.
    let dt_gmat = {
        let [a, b] = perp_grad(&dt_g[0]);
        let [c, e] = perp_grad(&dt_g[1]);
        [[a, c], [b, e]]
    };
    for i in 0..2 {
        for j in 0..2 {
            let grad_v = d(Axis::BOTH[j], &fields.v[i]);
            let lhs = &dt_gmat[i][j] - &grad_v;
            let mut rhs = SpectralField::zeros(*s.grid());
            for k in 0..2 {
                rhs -= &product(&fields.v[k], &d(Axis::BOTH[k], &fields.g[i][j]))?;
                rhs += &product(&d(Axis::BOTH[k], &fields.v[i]), &fields.g[k][j])?;
            }
            out.push(identity(&format!("deformation_{}{}", i + 1, j + 1), &lhs, &rhs));
            // Same entry through the null form: row 1 is −∂₂ of column j's
            // potential equation, row 2 is ∂₁ of it.
            let qf = q(pots[j], &s.psi)?;
            let nf = if i == 0 { -&d(X2, &qf) } else { d(X1, &qf) };
            out.push(identity(&format!("deformation_{}{}_null_form", i + 1, j + 1), &lhs, &nf));
        }
    }
    Ok(out)
}
