use super::vector_fields::{euler_field, rotation_field, CoordinateScheme};
use crate::error::{Error, Result};
use crate::spectral_core::dyadic::{dyadic_project, shells_touching};
use crate::spectral_core::SpectralField;
use serde::{Deserialize, Serialize};

/// Norm selector. Parameters named `n1` are the desk-scale regularity used
/// in the weight exponents, `n0` the top Sobolev index of the energy space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormKind {
    L2,
    Linf,
    Sobolev { s: f64 },
    /// `‖(1+|ξ|)^{n1+6} f̂‖_∞` over lattice coefficients.
    Z { n1: u32 },
    /// `W^{n1+4}`.
    Zprime { n1: u32 },
    /// `W^{n1+2}`.
    Zprime1 { n1: u32 },
    /// `Σ_k 2^{γ max(k,0)} ‖P_k f‖_∞`.
    Wgamma { gamma: f64 },
    /// `‖f‖_{H^{n0}} + ‖Sf‖_{H^{n1}} + ‖Ωf‖_{H^{n1}}` with `n1 = ⌊n0/2⌋`.
    X { n0: u32, n1: u32 },
}

impl NormKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NormKind::Sobolev { s } if !s.is_finite() => {
                Err(Error::InvalidArgument(format!("Sobolev index {s}")))
            }
            NormKind::Wgamma { gamma } if !(gamma >= 0.0 && gamma.is_finite()) => {
                Err(Error::InvalidArgument(format!("W^γ needs γ ≥ 0, got {gamma}")))
            }
            NormKind::X { n0, n1 } if n0 < 2 * n1 => Err(Error::InvalidArgument(format!(
                "X norm needs n0 ≥ 2·n1, got n0 = {n0}, n1 = {n1}"
            ))),
            _ => Ok(()),
        }
    }

    /// Column label used in tables.
    pub fn label(&self) -> String {
        match *self {
            NormKind::L2 => "l2".into(),
            NormKind::Linf => "linf".into(),
            NormKind::Sobolev { s } => format!("h{s}"),
            NormKind::Z { n1 } => format!("z{n1}"),
            NormKind::Zprime { n1 } => format!("zprime{n1}"),
            NormKind::Zprime1 { n1 } => format!("zprime1_{n1}"),
            NormKind::Wgamma { gamma } => format!("w{gamma}"),
            NormKind::X { n0, n1 } => format!("x{n0}_{n1}"),
        }
    }
}

/// `(Σ (1+|ξ|²)^s |f̂|²)^{1/2}` in the physical `L²` normalization.
pub fn sobolev_norm(f: &SpectralField, s: f64) -> f64 {
    let g = f.grid();
    let sum: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let xi = g.frequency(idx);
            (1.0 + xi[0] * xi[0] + xi[1] * xi[1]).powf(s) * c.norm_sqr()
        })
        .sum();
    g.length() * sum.sqrt()
}

/// Largest weighted coefficient `max (1+|ξ|)^p |f̂(ξ)|`.
pub fn weighted_sup(f: &SpectralField, p: f64) -> f64 {
    let g = f.grid();
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let xi = g.frequency(idx);
            (1.0 + xi[0].hypot(xi[1])).powf(p) * c.norm()
        })
        .fold(0.0, f64::max)
}

/// Dyadic `W^γ` sum over the shells meeting the lattice.
pub fn w_gamma(f: &SpectralField, gamma: f64) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    shells_touching(f.grid())
        .map(|k| 2f64.powf(gamma * k.max(0) as f64) * dyadic_project(k, f).linf_norm())
        .sum()
}

/// Norm of a field. For `X`, the field is treated as a time-zero snapshot so
/// `S` reduces to `x·∇`; use [`super::state_norm`] for evolving states.
pub fn norm(f: &SpectralField, kind: NormKind) -> f64 {
    match kind {
        NormKind::L2 => f.l2_norm(),
        NormKind::Linf => f.linf_norm(),
        NormKind::Sobolev { s } => sobolev_norm(f, s),
        NormKind::Z { n1 } => weighted_sup(f, n1 as f64 + 6.0),
        NormKind::Zprime { n1 } => w_gamma(f, n1 as f64 + 4.0),
        NormKind::Zprime1 { n1 } => w_gamma(f, n1 as f64 + 2.0),
        NormKind::Wgamma { gamma } => w_gamma(f, gamma),
        NormKind::X { n0, n1 } => {
            let scheme = CoordinateScheme::Windowed;
            x_norm(f, &euler_field(f, scheme), &rotation_field(f, scheme), n0, n1)
        }
    }
}

/// `X` norm assembled from a field and its images under `S` and `Ω`.
pub fn x_norm(
    f: &SpectralField,
    s_image: &SpectralField,
    omega_image: &SpectralField,
    n0: u32,
    n1: u32,
) -> f64 {
    sobolev_norm(f, n0 as f64) + sobolev_norm(s_image, n1 as f64) + sobolev_norm(omega_image, n1 as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::Grid;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn single_mode_weights() {
        // Side 2π puts the lattice on integers, so (1,0) has |ξ| = 1.
        let g = Grid::new(32, 2.0 * PI).unwrap();
        let a = 0.3;
        let f = SpectralField::mode(g, 1, 0, Complex64::new(a, 0.0));
        assert!((norm(&f, NormKind::Z { n1: 3 }) - 512.0 * a).abs() < 1e-12);
        assert!((norm(&f, NormKind::Zprime { n1: 3 }) - a).abs() < 1e-12);
        assert!((norm(&f, NormKind::Linf) - a).abs() < 1e-12);
        let l2 = 2.0 * PI * a;
        assert!((norm(&f, NormKind::L2) - l2).abs() < 1e-12);
        assert!((norm(&f, NormKind::Sobolev { s: 1.0 }) - l2 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_field_has_zero_norms() {
        let g = Grid::new(16, 10.0).unwrap();
        let z = SpectralField::zeros(g);
        for kind in [
            NormKind::L2,
            NormKind::Linf,
            NormKind::Sobolev { s: 2.0 },
            NormKind::Z { n1: 3 },
            NormKind::Zprime { n1: 3 },
            NormKind::Zprime1 { n1: 3 },
            NormKind::Wgamma { gamma: 1.5 },
            NormKind::X { n0: 6, n1: 3 },
        ] {
            assert_eq!(norm(&z, kind), 0.0, "{}", kind.label());
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(NormKind::X { n0: 4, n1: 3 }.validate().is_err());
        assert!(NormKind::Wgamma { gamma: -1.0 }.validate().is_err());
        assert!(NormKind::X { n0: 6, n1: 3 }.validate().is_ok());
    }
}
