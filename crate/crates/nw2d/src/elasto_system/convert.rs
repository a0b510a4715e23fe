use super::state::{DiagonalState, PotentialState};
use crate::spectral_core::multiplier::riesz;
use crate::spectral_core::Axis::{X1, X2};

/// `φ₀ = R₁G₂ − R₂G₁`, `Φ = ψ + i(R₁G₁ + R₂G₂)`.
pub fn to_diagonal(s: &PotentialState) -> DiagonalState {
    let phi0 = &riesz(X1, &s.g2) - &riesz(X2, &s.g1);
    let div = &riesz(X1, &s.g1) + &riesz(X2, &s.g2);
    let mut phi = s.psi.clone();
    phi.axpy(num_complex::Complex64::new(0.0, 1.0), &div);
    DiagonalState { t: s.t, phi0, phi }
}

/// `ψ = Re Φ`, `G₁ = R₂φ₀ − R₁ Im Φ`, `G₂ = −R₁φ₀ − R₂ Im Φ`.
pub fn to_potential(s: &DiagonalState) -> PotentialState {
    let psi = s.phi.real_part();
    let im = s.phi.imag_part();
    let g1 = &riesz(X2, &s.phi0) - &riesz(X1, &im);
    let g2 = -&(&riesz(X1, &s.phi0) + &riesz(X2, &im));
    PotentialState { t: s.t, psi, g1, g2 }
}
