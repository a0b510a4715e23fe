use crate::elasto_system::{DiagonalState, PotentialState};
use crate::spectral_core::{Grid, SpectralField};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Smooth random complex field: independent normal coefficients damped by a
/// Gaussian of width `n/8` lattice cells, normalized to unit peak coefficient
/// scale. Deterministic in `seed`.
pub fn random_field(grid: Grid, seed: u64, zero_mean: bool) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = grid.n() as f64 / 8.0;
    let coeffs: Vec<Complex64> = (0..grid.len())
        .map(|idx| {
            let (k1, k2) = grid.integer_frequency(idx);
            let r2 = (k1 * k1 + k2 * k2) as f64;
            let damp = (-r2 / (2.0 * sigma * sigma)).exp();
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im) * damp
        })
        .collect();
    let f = SpectralField::from_coeffs(grid, coeffs).expect("coefficients match the grid");
    if zero_mean {
        f.without_mean()
    } else {
        f
    }
}

/// Random field rescaled so its largest physical modulus equals `amplitude`.
pub fn random_scaled(grid: Grid, seed: u64, amplitude: f64) -> SpectralField {
    let f = random_field(grid, seed, true);
    let peak = f.linf_norm();
    f.scale(amplitude / peak)
}

/// Unconstrained random diagonal state: real curl variable and complex wave
/// variable, both with peak modulus `amplitude`.
pub fn random_diagonal_state(grid: Grid, seed: u64, amplitude: f64) -> DiagonalState {
    let phi0 = random_field(grid, seed.wrapping_mul(2).wrapping_add(1), true).real_part();
    let phi0 = phi0.scale(amplitude / phi0.linf_norm());
    DiagonalState {
        t: 0.0,
        phi0,
        phi: random_scaled(grid, seed.wrapping_mul(2), amplitude),
    }
}

/// Unconstrained random real potential state with peak modulus `amplitude`.
pub fn random_potential_state(grid: Grid, seed: u64, amplitude: f64) -> PotentialState {
    let real = |k: u64| {
        let f = random_field(grid, seed.wrapping_mul(3).wrapping_add(k), true).real_part();
        f.scale(amplitude / f.linf_norm())
    };
    PotentialState {
        t: 0.0,
        psi: real(0),
        g1: real(1),
        g2: real(2),
    }
}
