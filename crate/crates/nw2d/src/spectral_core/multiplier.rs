use super::dyadic::shell_weight;
use super::field::SpectralField;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Coordinate axis of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X1,
    X2,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::X1, Axis::X2];

    pub fn index(self) -> usize {
        match self {
            Axis::X1 => 0,
            Axis::X2 => 1,
        }
    }

    pub fn other(self) -> Axis {
        match self {
            Axis::X1 => Axis::X2,
            Axis::X2 => Axis::X1,
        }
    }
}

/// Fourier multiplier acting diagonally on coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Multiplier {
    /// `∂_j`, symbol `i ξ_j`.
    Partial(Axis),
    /// Riesz transform `∂_j / |∇|`, symbol `i ξ_j / |ξ|`, zero at the origin.
    Riesz(Axis),
    /// `|∇|^s` for `s = ±1`, zero at the origin.
    ModGrad(i32),
    /// Half-wave propagator `e^{−i t |∇|}` when `forward`, else `e^{+i t |∇|}`.
    HalfWave { t: f64, forward: bool },
    /// Littlewood-Paley shell projection.
    DyadicBump(i32),
    /// Removes the zero mode.
    IdentityMinusMean,
}

impl Multiplier {
    pub fn symbol(&self, xi: [f64; 2]) -> Complex64 {
        let r = xi[0].hypot(xi[1]);
        match *self {
            Multiplier::Partial(a) => Complex64::new(0.0, xi[a.index()]),
            Multiplier::Riesz(a) => {
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, xi[a.index()] / r)
                }
            }
            Multiplier::ModGrad(s) => {
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(r.powi(s), 0.0)
                }
            }
            Multiplier::HalfWave { t, forward } => {
                let phase = if forward { -t * r } else { t * r };
                Complex64::from_polar(1.0, phase)
            }
            Multiplier::DyadicBump(k) => Complex64::new(shell_weight(k, r), 0.0),
            Multiplier::IdentityMinusMean => {
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            }
        }
    }

    pub fn apply(&self, f: &SpectralField) -> SpectralField {
        let m = *self;
        f.map_symbol(|xi| m.symbol(xi))
    }
}

/// Product of the symbols of a chain of multipliers.
pub fn chain_symbol(chain: &[Multiplier], xi: [f64; 2]) -> Complex64 {
    chain
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, m| acc * m.symbol(xi))
}

/// Applies a chain of multipliers as one diagonal operator.
pub fn apply_chain(chain: &[Multiplier], f: &SpectralField) -> SpectralField {
    if chain.is_empty() {
        return f.clone();
    }
    f.map_symbol(|xi| chain_symbol(chain, xi))
}

/// Applies one multiplier to a field.
pub fn apply_multiplier(m: Multiplier, f: &SpectralField) -> SpectralField {
    m.apply(f)
}

pub fn partial(a: Axis, f: &SpectralField) -> SpectralField {
    Multiplier::Partial(a).apply(f)
}

pub fn riesz(a: Axis, f: &SpectralField) -> SpectralField {
    Multiplier::Riesz(a).apply(f)
}

pub fn mod_grad(s: i32, f: &SpectralField) -> SpectralField {
    Multiplier::ModGrad(s).apply(f)
}

/// `∂₁^k ∂₂^j f`, symbol `(iξ₁)^k (iξ₂)^j`.
pub fn mixed_partial(k: u32, j: u32, f: &SpectralField) -> SpectralField {
    if k == 0 && j == 0 {
        return f.clone();
    }
    let i = Complex64::new(0.0, 1.0);
    f.map_symbol(|xi| (i * xi[0]).powu(k) * (i * xi[1]).powu(j))
}

/// `e^{−i t|∇|} f` (`forward`) or `e^{+i t|∇|} f`.
pub fn half_wave(t: f64, forward: bool, f: &SpectralField) -> SpectralField {
    Multiplier::HalfWave { t, forward }.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::grid::Grid;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn riesz_of_unit_mode() {
        let g = Grid::new(16, 2.0 * PI).unwrap();
        let f = SpectralField::mode(g, 1, 0, c(1.0, 0.0));
        let r = apply_multiplier(Multiplier::Riesz(Axis::X1), &f);
        assert!((r.get(1, 0) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn mod_grad_of_three_four_mode() {
        let g = Grid::new(16, 2.0 * PI).unwrap();
        let f = SpectralField::mode(g, 3, 4, c(1.0, 0.0));
        let r = apply_multiplier(Multiplier::ModGrad(1), &f);
        assert!((r.get(3, 4) - c(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let g = Grid::new(16, 2.0 * PI).unwrap();
        let f = SpectralField::mode(g, 0, 0, c(2.0, 0.0));
        assert!(apply_multiplier(Multiplier::Partial(Axis::X1), &f).is_zero());
        assert!(apply_multiplier(Multiplier::Riesz(Axis::X2), &f).is_zero());
        assert!(apply_multiplier(Multiplier::ModGrad(-1), &f).is_zero());
        assert!(apply_multiplier(Multiplier::IdentityMinusMean, &f).is_zero());
    }

    #[test]
    fn mixed_partial_composes_single_derivatives() {
        let g = Grid::new(16, 7.0).unwrap();
        let f = SpectralField::from_spectrum(g, |xi| c((-xi[0] * xi[0] - xi[1] * xi[1]).exp(), xi[1]));
        let by_hand = partial(Axis::X2, &partial(Axis::X1, &partial(Axis::X1, &f)));
        assert!((&mixed_partial(2, 1, &f) - &by_hand).max_coeff() < 1e-14 * by_hand.max_coeff());
        assert_eq!(mixed_partial(0, 0, &f), f);
    }

    #[test]
    fn half_wave_is_unitary() {
        let xi = [0.3, -1.7];
        for forward in [true, false] {
            let s = Multiplier::HalfWave { t: 2.5, forward }.symbol(xi);
            assert!((s.norm() - 1.0).abs() < 1e-15);
        }
        let s = Multiplier::HalfWave { t: 1.0, forward: true }.symbol([3.0, 4.0]);
        assert!((s - Complex64::from_polar(1.0, -5.0)).norm() < 1e-15);
    }
}
