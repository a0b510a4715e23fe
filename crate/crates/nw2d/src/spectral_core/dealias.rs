use super::field::SpectralField;
use serde::{Deserialize, Serialize};

/// Fraction of the half-band retained by spectral truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DealiasRule {
    #[serde(rename = "2/3")]
    TwoThirds,
    #[serde(rename = "1/2")]
    Half,
}

impl DealiasRule {
    pub fn fraction(self) -> f64 {
        match self {
            DealiasRule::TwoThirds => 2.0 / 3.0,
            DealiasRule::Half => 0.5,
        }
    }

    /// Largest retained integer wavenumber per axis for an `n`-point grid.
    pub fn cutoff(self, n: usize) -> i64 {
        match self {
            DealiasRule::TwoThirds => (n as i64) / 3,
            DealiasRule::Half => (n as i64) / 4,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "2/3" | "two-thirds" => Some(DealiasRule::TwoThirds),
            "1/2" | "half" => Some(DealiasRule::Half),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DealiasRule::TwoThirds => "2/3",
            DealiasRule::Half => "1/2",
        }
    }
}

/// True when integer wavenumbers `(k1, k2)` survive truncation.
#[inline]
pub fn in_band(k1: i64, k2: i64, cutoff: i64) -> bool {
    k1.abs() <= cutoff && k2.abs() <= cutoff
}

/// Zeroes every coefficient with `max(|k1|, |k2|)` above the retained band.
pub fn dealias(f: &SpectralField, rule: DealiasRule) -> SpectralField {
    let mut out = f.clone();
    dealias_in_place(&mut out, rule);
    out
}

pub fn dealias_in_place(f: &mut SpectralField, rule: DealiasRule) {
    let grid = *f.grid();
    let cutoff = rule.cutoff(grid.n());
    for (idx, c) in f.coeffs_mut().iter_mut().enumerate() {
        let (k1, k2) = grid.integer_frequency(idx);
        if !in_band(k1, k2, cutoff) {
            *c = num_complex::Complex64::new(0.0, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoffs_follow_floor_of_fraction() {
        assert_eq!(DealiasRule::TwoThirds.cutoff(128), 42);
        assert_eq!(DealiasRule::Half.cutoff(128), 32);
        assert_eq!(DealiasRule::TwoThirds.cutoff(64), 21);
        for n in [8usize, 16, 32, 64, 128, 256, 512, 1024] {
            for rule in [DealiasRule::TwoThirds, DealiasRule::Half] {
                let expect = (rule.fraction() * (n / 2) as f64 + 1e-9).floor() as i64;
                assert_eq!(rule.cutoff(n), expect);
            }
        }
    }
}
