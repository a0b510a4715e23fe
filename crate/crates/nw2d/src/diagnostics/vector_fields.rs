use crate::elasto_system::{rhs_diagonal, DiagonalRhs, DiagonalState, RhsPath};
use crate::error::Result;
use crate::spectral_core::dyadic::bump;
use crate::spectral_core::multiplier::{half_wave, mod_grad, partial};
use crate::spectral_core::{Axis, Grid, SpectralField};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Scaling `S = t∂_t + x·∇` or rotation `Ω = x₂∂₁ − x₁∂₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorField {
    Scaling,
    Rotation,
}

/// Which unknown of the diagonal state a vector field acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Curl,
    Wave,
}

/// How multiplication by the coordinate `x` is realized on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordinateScheme {
    /// Pointwise product with `x_j · bump(3|x_j|/L)`, which equals `x_j`
    /// exactly for `|x_j| ≤ 5L/12` and vanishes smoothly at the cell edge.
    Windowed,
    /// Centered differences in frequency with one-cell step; equivalent to
    /// weighting by `sin(Δk·x)/Δk`, accurate to `O(Δk²)` near the origin.
    LatticeDifference,
}

/// How `S` and `Ω` act on the wave unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveImageForm {
    /// `SΦ = x·∇Φ + t∂_tΦ` and `ΩΦ` applied to `Φ` itself.
    Direct,
    /// Through the profile `g = e^{it|∇|}Φ`: `SΦ = e^{−it|∇|}(x·∇g) + t𝒩₁`
    /// and `ΩΦ = e^{−it|∇|}(Ωg)`. Equal to the direct form on the whole
    /// plane; on the torus these images are carried exactly by the discrete
    /// linear flow, so the coordinate window adds no quadratic drift.
    Profile,
}

/// Samples of the windowed coordinate along one axis.
pub fn windowed_coordinate(grid: &Grid) -> Vec<f64> {
    let l = grid.length();
    (0..grid.n())
        .map(|j| {
            let x = grid.coordinate(j);
            x * bump(3.0 * x.abs() / l)
        })
        .collect()
}

/// `Σ_j w_j · (∂_j f)` with per-axis weights `w_j` evaluated pointwise.
fn weighted_derivatives(f: &SpectralField, weights: [(&[f64], usize); 2], signs: [f64; 2], axes: [Axis; 2]) -> Result<SpectralField> {
    let grid = *f.grid();
    let n = grid.n();
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.len()];
    for ((w, coord), (sign, axis)) in weights.iter().zip(signs.iter().zip(axes)) {
        let d = partial(axis, f).to_physical();
        for i1 in 0..n {
            for i2 in 0..n {
                let idx = grid.flat(i1, i2);
                let x = if *coord == 0 { w[i1] } else { w[i2] };
                acc[idx] += d[idx] * (sign * x);
            }
        }
    }
    SpectralField::from_physical(grid, &acc)
}

/// Coefficient at `(k1, k2)`, zero outside the resolved lattice.
fn coeff_or_zero(f: &SpectralField, k1: i64, k2: i64) -> Complex64 {
    let h = (f.grid().n() / 2) as i64;
    if k1 <= -h || k1 >= h || k2 <= -h || k2 >= h {
        Complex64::new(0.0, 0.0)
    } else {
        f.get(k1, k2)
    }
}

/// Centered difference `(c(k+e) − c(k−e)) / 2` in lattice units.
fn lattice_gradient(f: &SpectralField, k1: i64, k2: i64, axis: Axis) -> Complex64 {
    let (p, m) = match axis {
        Axis::X1 => (coeff_or_zero(f, k1 + 1, k2), coeff_or_zero(f, k1 - 1, k2)),
        Axis::X2 => (coeff_or_zero(f, k1, k2 + 1), coeff_or_zero(f, k1, k2 - 1)),
    };
    (p - m) * 0.5
}

fn lattice_map(f: &SpectralField, op: impl Fn(i64, i64) -> Complex64) -> SpectralField {
    let grid = *f.grid();
    let mut out = SpectralField::zeros(grid);
    let h = (grid.n() / 2) as i64;
    for k1 in (1 - h)..h {
        for k2 in (1 - h)..h {
            out.set(k1, k2, op(k1, k2));
        }
    }
    out
}

/// `x·∇f`.
pub fn euler_field(f: &SpectralField, scheme: CoordinateScheme) -> SpectralField {
    match scheme {
        CoordinateScheme::Windowed => {
            let w = windowed_coordinate(f.grid());
            weighted_derivatives(f, [(&w, 0), (&w, 1)], [1.0, 1.0], [Axis::X1, Axis::X2])
                .expect("grid-sized buffer")
        }
        // (−ξ·∇_ξ − 2) f̂; with ξ = Δk·k the lattice spacing cancels.
        CoordinateScheme::LatticeDifference => lattice_map(f, |k1, k2| {
            -2.0 * f.get(k1, k2)
                - lattice_gradient(f, k1, k2, Axis::X1) * k1 as f64
                - lattice_gradient(f, k1, k2, Axis::X2) * k2 as f64
        }),
    }
}

/// `Ωf = x₂∂₁f − x₁∂₂f`.
pub fn rotation_field(f: &SpectralField, scheme: CoordinateScheme) -> SpectralField {
    match scheme {
        CoordinateScheme::Windowed => {
            let w = windowed_coordinate(f.grid());
            weighted_derivatives(f, [(&w, 1), (&w, 0)], [1.0, -1.0], [Axis::X1, Axis::X2])
                .expect("grid-sized buffer")
        }
        // (ξ₂∂_{ξ₁} − ξ₁∂_{ξ₂}) f̂.
        CoordinateScheme::LatticeDifference => lattice_map(f, |k1, k2| {
            lattice_gradient(f, k1, k2, Axis::X1) * k2 as f64
                - lattice_gradient(f, k1, k2, Axis::X2) * k1 as f64
        }),
    }
}

/// Images of both unknowns under `S` and `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldImages {
    pub s_curl: SpectralField,
    pub s_wave: SpectralField,
    pub omega_curl: SpectralField,
    pub omega_wave: SpectralField,
}

impl VectorFieldImages {
    pub fn get(&self, which: VectorField, target: Target) -> &SpectralField {
        match (which, target) {
            (VectorField::Scaling, Target::Curl) => &self.s_curl,
            (VectorField::Scaling, Target::Wave) => &self.s_wave,
            (VectorField::Rotation, Target::Curl) => &self.omega_curl,
            (VectorField::Rotation, Target::Wave) => &self.omega_wave,
        }
    }
}

/// `∂_tφ₀ = 𝒩₀` and `∂_tΦ = −i|∇|Φ + 𝒩₁`.
pub fn time_derivative(s: &DiagonalState, rhs: &DiagonalRhs) -> (SpectralField, SpectralField) {
    let mut wave = rhs.wave.clone();
    wave.axpy(Complex64::new(0.0, -1.0), &mod_grad(1, &s.phi));
    (rhs.curl.clone(), wave)
}

/// `S` and `Ω` of both unknowns, with `∂_t` taken from the equations using a
/// precomputed right-hand side, in the direct form.
pub fn vector_field_images_with(
    s: &DiagonalState,
    rhs: &DiagonalRhs,
    scheme: CoordinateScheme,
) -> VectorFieldImages {
    vector_field_images_in(s, rhs, scheme, WaveImageForm::Direct)
}

/// `S` and `Ω` of both unknowns with the wave images in the given form.
pub fn vector_field_images_in(
    s: &DiagonalState,
    rhs: &DiagonalRhs,
    scheme: CoordinateScheme,
    form: WaveImageForm,
) -> VectorFieldImages {
    let (dt_curl, dt_wave) = time_derivative(s, rhs);
    let scaling = |f: &SpectralField, dt: &SpectralField| {
        let mut out = euler_field(f, scheme);
        if s.t != 0.0 {
            out.axpy(Complex64::new(s.t, 0.0), dt);
        }
        out
    };
    let (s_wave, omega_wave) = match form {
        WaveImageForm::Direct => (scaling(&s.phi, &dt_wave), rotation_field(&s.phi, scheme)),
        WaveImageForm::Profile => {
            let g = half_wave(s.t, false, &s.phi);
            let mut sw = half_wave(s.t, true, &euler_field(&g, scheme));
            if s.t != 0.0 {
                sw.axpy(Complex64::new(s.t, 0.0), &rhs.wave);
            }
            (sw, half_wave(s.t, true, &rotation_field(&g, scheme)))
        }
    };
    VectorFieldImages {
        s_curl: scaling(&s.phi0, &dt_curl),
        s_wave,
        omega_curl: rotation_field(&s.phi0, scheme),
        omega_wave,
    }
}

/// `S` and `Ω` of both unknowns.
pub fn vector_field_images(s: &DiagonalState, scheme: CoordinateScheme) -> Result<VectorFieldImages> {
    let rhs = rhs_diagonal(s, RhsPath::Recovery)?;
    Ok(vector_field_images_with(s, &rhs, scheme))
}

/// One vector field applied to one unknown, windowed coordinates.
pub fn apply_vector_field(s: &DiagonalState, which: VectorField, target: Target) -> Result<SpectralField> {
    let f = match target {
        Target::Curl => &s.phi0,
        Target::Wave => &s.phi,
    };
    let scheme = CoordinateScheme::Windowed;
    match which {
        VectorField::Rotation => Ok(rotation_field(f, scheme)),
        VectorField::Scaling => Ok(vector_field_images(s, scheme)?.get(which, target).clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(grid: Grid, shift: [f64; 2], w: f64) -> SpectralField {
        SpectralField::from_function(grid, |x, y| {
            let r2 = (x - shift[0]).powi(2) + (y - shift[1]).powi(2);
            Complex64::new((-r2 / (w * w)).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn rotation_kills_radial_fields() {
        let g = Grid::new(64, 40.0).unwrap();
        let f = gaussian(g, [0.0, 0.0], 3.0);
        assert!(rotation_field(&f, CoordinateScheme::Windowed).max_coeff() < 1e-12);
    }

    #[test]
    fn windowed_euler_matches_analytic() {
        let g = Grid::new(64, 40.0).unwrap();
        let w = 2.5;
        let f = gaussian(g, [1.0, -2.0], w);
        let exact = SpectralField::from_function(g, |x, y| {
            let (dx, dy) = (x - 1.0, y + 2.0);
            let e = (-(dx * dx + dy * dy) / (w * w)).exp();
            Complex64::new(-2.0 * (x * dx + y * dy) / (w * w) * e, 0.0)
        })
        .unwrap();
        let got = euler_field(&f, CoordinateScheme::Windowed);
        assert!((&got - &exact).l2_norm() < 1e-10 * exact.l2_norm());
    }

    fn euler_error(n: usize, l: f64, scheme: CoordinateScheme) -> f64 {
        let g = Grid::new(n, l).unwrap();
        let w = 2.0;
        let f = gaussian(g, [0.5, 1.0], w);
        let exact = SpectralField::from_function(g, |x, y| {
            let (dx, dy) = (x - 0.5, y - 1.0);
            let e = (-(dx * dx + dy * dy) / (w * w)).exp();
            Complex64::new(-2.0 * (x * dx + y * dy) / (w * w) * e, 0.0)
        })
        .unwrap();
        (&euler_field(&f, scheme) - &exact).l2_norm() / exact.l2_norm()
    }

    #[test]
    fn lattice_difference_converges_at_second_order() {
        let coarse = euler_error(32, 20.0, CoordinateScheme::LatticeDifference);
        let fine = euler_error(64, 40.0, CoordinateScheme::LatticeDifference);
        let ratio = coarse / fine;
        assert!((3.6..4.4).contains(&ratio), "ratio {ratio}, errors {coarse} {fine}");
    }
}
