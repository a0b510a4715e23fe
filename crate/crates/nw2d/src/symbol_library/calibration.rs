//! Ratio between the operator symbols used by the dynamics and the
//! closed forms written in the continuum Fourier normalization.

use super::catalog::SymbolId;
use super::closed_form::closed_value;
use super::composed::composed_value;
use super::geometry::Interaction;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Expected value of `composed / closed form` for a symbol.
///
/// The wave-wave constraint closed form carries the prefactor `1/(16π)`
/// relative to the curl-curl constraint closed form, while the operators
/// differ by `1/4`; the two are consistent only with a constant of `8π²`.
pub fn calibration_constant(id: SymbolId) -> f64 {
    use SymbolId::*;
    match id {
        ConstraintMixed(_) => -2.0 * PI,
        ConstraintWaves(..) => 8.0 * PI * PI,
        PotentialQuadratic | EnergyMixed | EnergySelf | EnergyTop(..) | TopCorrection(..) => -2.0 * PI,
        _ => 2.0 * PI,
    }
}

/// Result of a proportionality sweep over random frequency pairs.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationReport {
    pub symbol: String,
    /// Median ratio `composed / closed form` over the sample.
    pub ratio: Complex64,
    /// Largest relative deviation of any sample ratio from the median.
    pub spread: f64,
    pub samples: usize,
}

/// Random nonsingular pair with components in `[-4, 4]`, bounded away from
/// parallel so neither side of the ratio is small.
pub fn random_pair(rng: &mut impl Rng) -> ([f64; 2], [f64; 2]) {
    loop {
        let z = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
        let e = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
        if let Ok(g) = Interaction::new(z, e) {
            if g.nz > 0.1 && g.ne > 0.1 && g.nx > 0.1 && (1.0 - g.cos.abs()) > 1e-2 {
                return (z, e);
            }
        }
    }
}

/// Samples `composed / closed form` at `samples` random pairs.
pub fn calibration_sweep(id: SymbolId, samples: usize, seed: u64) -> CalibrationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = Vec::with_capacity(samples);
    while ratios.len() < samples {
        let (z, e) = random_pair(&mut rng);
        let g = Interaction::new(z, e).expect("sampled pair is nonsingular");
        let p = closed_value(id, &g);
        if p.norm() < 1e-8 {
            continue;
        }
        ratios.push(composed_value(id, &g) / p);
    }
    let mut re: Vec<f64> = ratios.iter().map(|r| r.re).collect();
    let mut im: Vec<f64> = ratios.iter().map(|r| r.im).collect();
    re.sort_by(f64::total_cmp);
    im.sort_by(f64::total_cmp);
    let ratio = Complex64::new(re[re.len() / 2], im[im.len() / 2]);
    let spread = ratios
        .iter()
        .map(|r| (r - ratio).norm() / ratio.norm().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    CalibrationReport {
        symbol: id.label(),
        ratio,
        spread,
        samples,
    }
}

/// Calibration constants for every symbol that has a composed form.
pub fn calibration_table() -> Vec<(String, f64)> {
    SymbolId::all()
        .into_iter()
        .filter(|id| !matches!(id, SymbolId::NormalFormRotated(..)))
        .map(|id| (id.label(), calibration_constant(id)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_composed_family_matches_its_constant() {
        for id in SymbolId::all() {
            if matches!(id, SymbolId::NormalFormRotated(..)) {
                continue;
            }
            let r = calibration_sweep(id, 1000, 7);
            let c = calibration_constant(id);
            assert!((r.ratio - Complex64::new(c, 0.0)).norm() <= 1e-10 * c.abs(), "{}: {}", r.symbol, r.ratio);
            assert!(r.spread <= 1e-10, "{}: spread {}", r.symbol, r.spread);
        }
    }
}
