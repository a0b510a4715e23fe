use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Square periodic grid with `n` points per axis on a torus of side `length`.
///
/// Coefficients are stored in FFT order: flat index `i1 * n + i2`, where
/// `i1` indexes the first frequency component. Index `i` along an axis
/// carries the integer wavenumber `i` for `i < n/2` and `i - n` otherwise,
/// so the physical frequency is `wavenumber * 2π / length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    length: f64,
}

pub const MIN_POINTS: usize = 8;
pub const MAX_POINTS: usize = 1024;

impl Grid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if !n.is_power_of_two() || !(MIN_POINTS..=MAX_POINTS).contains(&n) {
            return Err(Error::InvalidGrid(format!(
                "n must be a power of two in [{MIN_POINTS}, {MAX_POINTS}], got {n}"
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "side length must be positive and finite, got {length}"
            )));
        }
        Ok(Grid { n, length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Number of lattice points, `n²`.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Frequency lattice spacing `2π / L`.
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Physical grid spacing `L / n`.
    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Largest representable frequency magnitude per axis, `dk · n/2`.
    pub fn xi_max(&self) -> f64 {
        self.dk() * (self.n / 2) as f64
    }

    /// Signed integer wavenumber of axis index `i`.
    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        let h = self.n / 2;
        if i < h {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Axis index of an integer wavenumber (taken modulo `n`).
    #[inline]
    pub fn axis_index(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    #[inline]
    pub fn flat(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n + i2
    }

    /// Flat index of the integer wavenumber pair `(k1, k2)`.
    #[inline]
    pub fn flat_of(&self, k1: i64, k2: i64) -> usize {
        self.flat(self.axis_index(k1), self.axis_index(k2))
    }

    /// Integer wavenumber pair of a flat index.
    #[inline]
    pub fn integer_frequency(&self, idx: usize) -> (i64, i64) {
        (self.wavenumber(idx / self.n), self.wavenumber(idx % self.n))
    }

    /// Physical frequency vector of a flat index.
    #[inline]
    pub fn frequency(&self, idx: usize) -> [f64; 2] {
        let (k1, k2) = self.integer_frequency(idx);
        let dk = self.dk();
        [k1 as f64 * dk, k2 as f64 * dk]
    }

    /// True when either component sits on the unpaired Nyquist wavenumber `-n/2`.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let h = self.n / 2;
        idx / self.n == h || idx % self.n == h
    }

    /// Physical coordinate of axis sample `j`, with the origin at sample 0
    /// and values wrapped into `[-L/2, L/2)`.
    #[inline]
    pub fn coordinate(&self, j: usize) -> f64 {
        self.wavenumber(j) as f64 * self.dx()
    }

    /// Smallest nonzero frequency magnitude on the lattice.
    pub fn min_frequency(&self) -> f64 {
        self.dk()
    }

    /// Time after which waves of unit speed launched at the origin reach the
    /// far side of the torus, using the conservative factor 0.45.
    pub fn wraparound_horizon(&self) -> f64 {
        0.45 * self.length
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(7, 1.0).is_err());
        assert!(Grid::new(4, 1.0).is_err());
        assert!(Grid::new(2048, 1.0).is_err());
        assert!(Grid::new(96, 1.0).is_err());
        assert!(Grid::new(64, 0.0).is_err());
        assert!(Grid::new(64, f64::NAN).is_err());
    }

    #[test]
    fn min_frequency_matches_lattice_spacing() {
        let g = Grid::new(64, 128.0).unwrap();
        assert!((g.min_frequency() - 0.04908738521234052).abs() < 1e-15);
    }

    #[test]
    fn two_pi_torus_has_integer_lattice() {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let mut seen = Vec::new();
        for idx in 0..g.len() {
            let f = g.frequency(idx);
            let (k1, k2) = g.integer_frequency(idx);
            assert!((f[0] - k1 as f64).abs() < 1e-14 && (f[1] - k2 as f64).abs() < 1e-14);
            assert!((-4..=3).contains(&k1) && (-4..=3).contains(&k2));
            seen.push((k1, k2));
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn index_round_trip() {
        let g = Grid::new(16, 3.0).unwrap();
        for idx in 0..g.len() {
            let (k1, k2) = g.integer_frequency(idx);
            assert_eq!(g.flat_of(k1, k2), idx);
        }
        assert!(g.is_nyquist(g.flat_of(-8, 3)));
        assert!(!g.is_nyquist(g.flat_of(7, -7)));
    }
}
