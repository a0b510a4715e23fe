use crate::error::Result;
use crate::spectral_core::{Grid, SpectralField};
use serde::{Deserialize, Serialize};

/// Velocity potential `ψ` and the potentials `G₁`, `G₂` of the two columns
/// of the displacement gradient, at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialState {
    pub t: f64,
    pub psi: SpectralField,
    pub g1: SpectralField,
    pub g2: SpectralField,
}

/// Real curl variable `φ₀` and complex wave variable `Φ`, at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalState {
    pub t: f64,
    pub phi0: SpectralField,
    pub phi: SpectralField,
}

/// Which formulation a run integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Diagonal,
    Potential,
    Both,
}

impl PotentialState {
    pub fn zeros(grid: Grid) -> Self {
        let z = SpectralField::zeros(grid);
        PotentialState {
            t: 0.0,
            psi: z.clone(),
            g1: z.clone(),
            g2: z,
        }
    }

    pub fn grid(&self) -> &Grid {
        self.psi.grid()
    }

    /// Checks that all components share a grid.
    pub fn validate(&self) -> Result<()> {
        self.psi.check_same_grid(&self.g1)?;
        self.psi.check_same_grid(&self.g2)
    }

    pub fn scale(&self, s: f64) -> Self {
        PotentialState {
            t: self.t,
            psi: self.psi.scale(s),
            g1: self.g1.scale(s),
            g2: self.g2.scale(s),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.psi.is_finite() && self.g1.is_finite() && self.g2.is_finite()
    }
}

impl DiagonalState {
    pub fn zeros(grid: Grid) -> Self {
        DiagonalState {
            t: 0.0,
            phi0: SpectralField::zeros(grid),
            phi: SpectralField::zeros(grid),
        }
    }

    pub fn new(t: f64, phi0: SpectralField, phi: SpectralField) -> Result<Self> {
        phi0.check_same_grid(&phi)?;
        Ok(DiagonalState { t, phi0, phi })
    }

    pub fn grid(&self) -> &Grid {
        self.phi.grid()
    }

    pub fn scale(&self, s: f64) -> Self {
        DiagonalState {
            t: self.t,
            phi0: self.phi0.scale(s),
            phi: self.phi.scale(s),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.phi0.is_finite() && self.phi.is_finite()
    }

    /// Copy of the state on another grid with the same side length.
    pub fn resample(&self, grid: Grid) -> Result<Self> {
        Ok(DiagonalState {
            t: self.t,
            phi0: self.phi0.resample(grid)?,
            phi: self.phi.resample(grid)?,
        })
    }

    /// `L²` distance to another state, summing both components.
    pub fn distance(&self, other: &DiagonalState) -> f64 {
        let a = (&self.phi0 - &other.phi0).l2_norm();
        let b = (&self.phi - &other.phi).l2_norm();
        a.hypot(b)
    }

    pub fn norm(&self) -> f64 {
        self.phi0.l2_norm().hypot(self.phi.l2_norm())
    }
}
