//! Littlewood-Paley decomposition with a fixed smooth even bump.

use super::field::SpectralField;
use super::grid::Grid;
use num_complex::Complex64;

const PLATEAU: f64 = 1.25;
const SUPPORT: f64 = 1.5;

fn flat_top_kernel(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Even C^∞ bump: 1 on `|s| ≤ 5/4`, 0 for `|s| ≥ 3/2`, with a smooth
/// monotone transition built from `exp(−1/x)` blends.
pub fn bump(s: f64) -> f64 {
    let a = s.abs();
    if a <= PLATEAU {
        1.0
    } else if a >= SUPPORT {
        0.0
    } else {
        let u = (a - PLATEAU) / (SUPPORT - PLATEAU);
        let p = flat_top_kernel(1.0 - u);
        let q = flat_top_kernel(u);
        p / (p + q)
    }
}

/// Shell weight `ψ_k(r) = bump(r / 2^k) − bump(r / 2^{k−1})`.
pub fn shell_weight(k: i32, r: f64) -> f64 {
    let s = 2f64.powi(k);
    bump(r / s) - bump(2.0 * r / s)
}

/// Multiplies coefficients by `ψ_k(|ξ|)`.
pub fn dyadic_project(k: i32, f: &SpectralField) -> SpectralField {
    f.map_symbol(|xi| Complex64::new(shell_weight(k, xi[0].hypot(xi[1])), 0.0))
}

/// Inclusive range of shells whose support meets a nonzero lattice
/// frequency of the grid. A shell `k` is supported on
/// `0.625·2^k < |ξ| < 1.5·2^k`.
pub fn shells_touching(grid: &Grid) -> std::ops::RangeInclusive<i32> {
    let rmin = grid.min_frequency();
    let rmax = grid.xi_max() * std::f64::consts::SQRT_2;
    let lo = (rmin / SUPPORT).log2().floor() as i32;
    let hi = (rmax / (0.5 * PLATEAU)).log2().ceil() as i32;
    lo..=hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(1.25), 1.0);
        assert_eq!(bump(-1.2), 1.0);
        assert_eq!(bump(1.5), 0.0);
        assert_eq!(bump(-2.0), 0.0);
        let mut prev = 1.0;
        for i in 0..=100 {
            let s = 1.25 + 0.25 * i as f64 / 100.0;
            let b = bump(s);
            assert!(b <= prev + 1e-15);
            assert!((b - bump(-s)).abs() == 0.0);
            prev = b;
        }
        assert!((bump(1.375) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unit_frequency_lives_in_shell_zero() {
        assert_eq!(shell_weight(0, 1.0), 1.0);
        assert_eq!(shell_weight(1, 1.0), 0.0);
        assert_eq!(shell_weight(-1, 1.0), 0.0);
    }

    #[test]
    fn shells_telescope_to_one() {
        for i in 1..2000 {
            let r = 1e-3 * 1.01f64.powi(i);
            let total: f64 = (-20..=20).map(|k| shell_weight(k, r)).sum();
            assert!((total - 1.0).abs() < 1e-12, "r = {r}: {total}");
        }
    }
}
