//! Numerical estimate of the `S∞` norm of a frequency-localized symbol:
//! the `L¹` norm of the inverse Fourier transform in `(ξ, η) ∈ ℝ⁴`.

use crate::bilinear_engine::BilinearSymbol;
use crate::error::{Error, Result};
use crate::spectral_core::shell_weight;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

/// Largest per-axis resolution accepted by the estimator.
pub const SINFTY_MAX_RESOLUTION: usize = 48;

/// Inner and outer radius of the support of shell `k`.
fn shell_support(k: i32) -> (f64, f64) {
    let s = 2f64.powi(k);
    (0.625 * s, 1.5 * s)
}

/// Tests whether shells `k` (output), `k1` (first input) and `k2` (second
/// input) can hold frequencies with `ξ = ζ + η`.
pub fn admissible(k: i32, k1: i32, k2: i32) -> bool {
    let (a1, b1) = shell_support(k1);
    let (a2, b2) = shell_support(k2);
    let (a, b) = shell_support(k);
    let lo = (a1 - b2).max(a2 - b1).max(0.0);
    let hi = b1 + b2;
    hi > a && lo < b
}

/// In-place inverse DFT along every axis of an `N⁴` array, normalized by `N⁴`.
fn inverse_dft_4d(data: &mut [Complex64], n: usize) {
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let strides = [n * n * n, n * n, n, 1];
    for &stride in &strides {
        let lines: Vec<usize> = (0..data.len())
            .filter(|&i| (i / stride) % n == 0)
            .collect();
        let gathered: Vec<Vec<Complex64>> = lines
            .par_iter()
            .map(|&start| {
                let mut buf: Vec<Complex64> = (0..n).map(|j| data[start + j * stride]).collect();
                fft.process(&mut buf);
                buf
            })
            .collect();
        for (&start, buf) in lines.iter().zip(gathered) {
            for (j, v) in buf.into_iter().enumerate() {
                data[start + j * stride] = v;
            }
        }
    }
    let scale = 1.0 / (data.len() as f64);
    data.iter_mut().for_each(|v| *v *= scale);
}

/// Estimates `‖s(ξ−η, η) ψ_k(ξ) ψ_{k1}(ξ−η) ψ_{k2}(η)‖_{S∞}`.
///
/// The output variable `ξ` is sampled on a box of half-width `2·2^k` and the
/// input variable `η` on a box of half-width `2·2^{k2}`, each with
/// `resolution` cell-centred points per axis. Sizing each box by its own
/// shell keeps the estimate resolved when the shells differ by many octaves.
/// With cell volumes accounted for, the continuum `L¹` norm reduces to the
/// sum of absolute values of the normalized discrete inverse transform, so
/// the estimate is invariant under joint dilation of all three shells.
/// Inadmissible triples return 0.
pub fn estimate_sinfty_norm(
    s: &dyn BilinearSymbol,
    k: i32,
    k1: i32,
    k2: i32,
    resolution: usize,
) -> Result<f64> {
    if !(4..=SINFTY_MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::InvalidArgument(format!(
            "resolution must lie in [4, {SINFTY_MAX_RESOLUTION}], got {resolution}"
        )));
    }
    if !admissible(k, k1, k2) {
        return Ok(0.0);
    }
    let n = resolution;
    let hx = 2.0 * 2f64.powi(k);
    let he = 2.0 * 2f64.powi(k2);
    let axis = |h: f64| -> Vec<f64> {
        (0..n).map(|j| -h + (j as f64 + 0.5) * 2.0 * h / n as f64).collect()
    };
    let (ax, ae) = (axis(hx), axis(he));
    let mut data: Vec<Complex64> = (0..n.pow(4))
        .into_par_iter()
        .map(|idx| {
            let (i1, i2, j1, j2) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
            let xi = [ax[i1], ax[i2]];
            let eta = [ae[j1], ae[j2]];
            let zeta = [xi[0] - eta[0], xi[1] - eta[1]];
            let w = shell_weight(k, xi[0].hypot(xi[1]))
                * shell_weight(k1, zeta[0].hypot(zeta[1]))
                * shell_weight(k2, eta[0].hypot(eta[1]));
            if w == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                s.eval(zeta, eta) * w
            }
        })
        .collect();
    inverse_dft_4d(&mut data, n);
    Ok(data.iter().map(|v| v.norm()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear_engine::FnSymbol;

    #[test]
    fn inadmissible_triples_vanish() {
        let one = FnSymbol(|_: [f64; 2], _: [f64; 2]| Complex64::new(1.0, 0.0));
        assert!(!admissible(5, 0, 0));
        assert_eq!(estimate_sinfty_norm(&one, 5, 0, 0, 8).unwrap(), 0.0);
        assert!(estimate_sinfty_norm(&one, 0, 0, 0, 64).is_err());
    }

    #[test]
    fn dilation_invariant() {
        let one = FnSymbol(|_: [f64; 2], _: [f64; 2]| Complex64::new(1.0, 0.0));
        let a = estimate_sinfty_norm(&one, 0, 0, 0, 16).unwrap();
        let b = estimate_sinfty_norm(&one, 5, 5, 5, 16).unwrap();
        assert!(a > 0.0);
        assert!((a - b).abs() <= 0.02 * a, "{a} vs {b}");
    }
}
