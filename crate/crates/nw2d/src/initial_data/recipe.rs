use crate::error::{Error, Result};
use crate::spectral_core::{dealias, DealiasRule, Grid, SpectralField};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Largest admissible amplitude.
pub const MAX_AMPLITUDE: f64 = 0.1;

/// One lattice mode of a mode-sum shape, with integer wavenumbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub k: [i64; 2],
    /// Real and imaginary part of the coefficient before scaling by the
    /// recipe amplitude.
    pub amplitude: [f64; 2],
}

/// Spatial profile of the wave variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    /// Real radial Gaussian `exp(−|x − c|²/w²)`.
    Gaussian { center: [f64; 2], width: f64 },
    /// Finite sum of lattice modes.
    ModeSum { modes: Vec<ModeSpec> },
    /// Gaussian envelope times a random complex cubic polynomial in
    /// `(x − c)/w`; breaks radial symmetry and reality so every interaction
    /// type of the system is excited.
    Packet { center: [f64; 2], width: f64 },
}

/// Initial data description: amplitude, shape and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataRecipe {
    pub amplitude: f64,
    pub shape: Shape,
    #[serde(default)]
    pub seed: u64,
}

impl DataRecipe {
    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        DataRecipe {
            amplitude,
            shape: Shape::Gaussian {
                center: [0.0, 0.0],
                width,
            },
            seed: 0,
        }
    }

    pub fn packet(amplitude: f64, width: f64, seed: u64) -> Self {
        DataRecipe {
            amplitude,
            shape: Shape::Packet {
                center: [0.0, 0.0],
                width,
            },
            seed,
        }
    }

    pub fn with_amplitude(&self, amplitude: f64) -> Self {
        DataRecipe {
            amplitude,
            ..self.clone()
        }
    }

    /// Checks amplitude and width bounds against a grid.
    pub fn validate(&self, grid: &Grid) -> Result<()> {
        if !(0.0..=MAX_AMPLITUDE).contains(&self.amplitude) {
            return Err(Error::InvalidArgument(format!(
                "amplitude must lie in [0, {MAX_AMPLITUDE}], got {}",
                self.amplitude
            )));
        }
        match &self.shape {
            Shape::Gaussian { width, .. } | Shape::Packet { width, .. } => {
                if !(*width >= 4.0 * grid.dx()) || !width.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "width {width} is below four grid cells ({})",
                        4.0 * grid.dx()
                    )));
                }
            }
            Shape::ModeSum { modes } => {
                let h = (grid.n() / 2) as i64;
                for m in modes {
                    if m.k.iter().any(|&k| k <= -h || k >= h) {
                        return Err(Error::InvalidArgument(format!(
                            "mode {:?} is not representable on an n = {} grid",
                            m.k,
                            grid.n()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Periodic displacement of `x` from `c`, wrapped to `[−L/2, L/2)`.
fn wrapped(x: f64, c: f64, length: f64) -> f64 {
    (x - c + 0.5 * length).rem_euclid(length) - 0.5 * length
}

fn packet_polynomial(seed: u64) -> Vec<((u32, u32), Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for total in 0..=3u32 {
        for a in 0..=total {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            terms.push(((a, total - a), Complex64::new(re, im)));
        }
    }
    terms
}

/// Builds the wave variable `Φ(0)`: zero-mean and truncated to the 2/3 band.
/// Gaussian and packet shapes are normalized so their peak modulus is the
/// recipe amplitude (before the mean is removed).
pub fn make_phi(recipe: &DataRecipe, grid: Grid) -> Result<SpectralField> {
    recipe.validate(&grid)?;
    let eps = recipe.amplitude;
    let length = grid.length();
    let field = match &recipe.shape {
        Shape::Gaussian { center, width } => SpectralField::from_function(grid, |x, y| {
            let (u, v) = (wrapped(x, center[0], length), wrapped(y, center[1], length));
            Complex64::new(eps * (-(u * u + v * v) / (width * width)).exp(), 0.0)
        })?,
        Shape::ModeSum { modes } => {
            let mut f = SpectralField::zeros(grid);
            for m in modes {
                let c = f.get(m.k[0], m.k[1]) + eps * Complex64::new(m.amplitude[0], m.amplitude[1]);
                f.set(m.k[0], m.k[1], c);
            }
            f
        }
        Shape::Packet { center, width } => {
            let poly = packet_polynomial(recipe.seed);
            let raw = SpectralField::from_function(grid, |x, y| {
                let (u, v) = (wrapped(x, center[0], length) / width, wrapped(y, center[1], length) / width);
                let p: Complex64 = poly
                    .iter()
                    .map(|&((a, b), c)| c * u.powi(a as i32) * v.powi(b as i32))
                    .sum();
                p * (-(u * u + v * v)).exp()
            })?;
            let peak = raw.linf_norm();
            if peak == 0.0 {
                raw
            } else {
                raw.scale(eps / peak)
            }
        }
    };
    Ok(dealias(&field, DealiasRule::TwoThirds).without_mean())
}
