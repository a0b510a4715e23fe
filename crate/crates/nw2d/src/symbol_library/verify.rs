//! Sampled checks of the algebraic identities relating the closed forms,
//! and sweeps feeding the cancellation and `S∞` bound checks.

use super::calibration::random_pair;
use super::cancellation::{eval_cancellation_combo, CancelKind};
use super::catalog::SymbolId;
use super::closed_form::{closed_value, phase_of};
use super::geometry::{cross, neg, norm, rotate, Interaction};
use super::sign::Sign::{Minus, Plus};
use super::sign::PAIRS;
use super::sinfty::{admissible, estimate_sinfty_norm};
use super::CatalogSymbol;
use crate::error::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Relative residual accepted for every identity.
pub const IDENTITY_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Worst relative residual of one identity over the sample.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub family: String,
    pub check: String,
    pub max_residual: f64,
    pub samples: usize,
    pub tolerance: f64,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

fn value(id: SymbolId, zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
    closed_value(id, &Interaction::new(zeta, eta).expect("nonsingular sample"))
}

/// `|lhs − rhs|` relative to the larger side or to `terms`, the summed
/// magnitudes of the pieces making up the right side, so cancellation
/// among those pieces is not counted against the identity.
fn rel(lhs: Complex64, rhs: Complex64, terms: f64) -> f64 {
    let scale = lhs.norm().max(rhs.norm()).max(terms);
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    samples: usize,
}

impl Sampler {
    /// Largest value of `residual` over random nonsingular pairs.
    fn worst(&mut self, residual: impl Fn([f64; 2], [f64; 2]) -> Option<f64>) -> f64 {
        let mut worst = 0.0f64;
        let mut taken = 0;
        while taken < self.samples {
            let (z, e) = random_pair(&mut self.rng);
            if let Some(r) = residual(z, e) {
                worst = worst.max(r);
                taken += 1;
            }
        }
        worst
    }

    /// Random parallel or antiparallel pair with distinct lengths.
    fn parallel_pair(&mut self) -> ([f64; 2], [f64; 2]) {
        let theta = self.rng.gen_range(0.0..2.0 * PI);
        let d = [theta.cos(), theta.sin()];
        let a: f64 = self.rng.gen_range(0.2..3.0);
        let mut b: f64 = self.rng.gen_range(0.2..3.0) * if self.rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        if (a + b).abs() < 0.1 {
            b += 0.5;
        }
        ([a * d[0], a * d[1]], [b * d[0], b * d[1]])
    }
}

/// Runs every identity check on `samples` random pairs.
///
/// Null vanishing compares the value on a parallel pair with the value
/// after turning the second input by half a radian, so the residual is
/// relative to the symbol's size at that scale.
pub fn identity_suite(samples: usize, seed: u64) -> Vec<IdentityCheck> {
    let mut s = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
        samples,
    };
    let row = |family: &str, check: &str, max_residual: f64| IdentityCheck {
        family: family.to_string(),
        check: check.to_string(),
        max_residual,
        samples,
        tolerance: IDENTITY_TOL,
    };
    let mut out = Vec::new();

    for id in SymbolId::all().into_iter().filter(|id| id.has_null_structure()) {
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let (z, e) = s.parallel_pair();
            let on = value(id, z, e).norm();
            let off = value(id, z, rotate(e, 0.5)).norm();
            if off > 0.0 {
                worst = worst.max(on / off);
            }
        }
        out.push(row(&id.label(), "null_vanishing", worst));
    }

    let ww = |a, b| SymbolId::WaveWaves(a, b);
    let merged = |a, b| SymbolId::WaveWavesMerged(a, b);
    out.push(row(
        &merged(Plus, Plus).label(),
        "symmetrization",
        s.worst(|z, e| {
            let (a, b) = (value(ww(Plus, Plus), z, e), value(ww(Plus, Plus), e, z));
            Some(rel(value(merged(Plus, Plus), z, e), (a + b) * 0.5, 0.5 * (a.norm() + b.norm())))
        }),
    ));
    out.push(row(
        &merged(Plus, Minus).label(),
        "symmetrization",
        s.worst(|z, e| {
            let (a, b) = (value(ww(Plus, Minus), z, e), value(ww(Minus, Plus), e, z));
            Some(rel(value(merged(Plus, Minus), z, e), a + b, a.norm() + b.norm()))
        }),
    ));
    for (mu, nu) in PAIRS {
        let id = SymbolId::NormalForm(mu, nu);
        out.push(row(
            &id.label(),
            "phase_times_symbol",
            s.worst(|z, e| {
                let g = Interaction::new(z, e).ok()?;
                let phase = phase_of(mu, nu, &g);
                (phase.abs() >= 1e-2 * (g.nx + g.nz + g.ne)).then(|| {
                    rel(closed_value(id, &g) * phase, I * closed_value(SymbolId::WaveWavesMerged(mu, nu), &g), 0.0)
                })
            }),
        ));
    }

    out.push(row(
        "q1",
        "vanishes",
        s.worst(|z, e| {
            let xi = [z[0] + e[0], z[1] + e[1]];
            let q1 = 0.5 * (cross(z, e) + cross(xi, neg(e)));
            Some(q1.abs() / cross(z, e).abs())
        }),
    ));

    out.push(row(
        &SymbolId::EnergySelf.label(),
        "mirror_average",
        s.worst(|z, e| {
            let xi = [z[0] + e[0], z[1] + e[1]];
            let (a, b) = (value(SymbolId::EnergyMixed, z, e), value(SymbolId::EnergyMixed, xi, neg(e)));
            Some(rel(value(SymbolId::EnergySelf, z, e), (a + b) * -0.5, 0.5 * (a.norm() + b.norm())))
        }),
    ));

    out.push(row(
        "top_correction",
        "branch_sum",
        s.worst(|z, e| {
            let (a, b) = (
                value(SymbolId::TopCorrection(Plus, Plus), z, e),
                value(SymbolId::TopCorrection(Plus, Minus), z, e),
            );
            Some(rel(a + b, I * value(SymbolId::EnergyMixed, z, e) / norm(z), a.norm() + b.norm()))
        }),
    ));
    out
}

/// Normalized cancellation sizes for one `δ = |η|/|ξ|`.
#[derive(Debug, Clone, Serialize)]
pub struct CancellationRow {
    pub kind: String,
    pub delta: f64,
    /// Largest `|combo|/|η|` (kind A) or `|combo|·|ξ|/|η|²` (kinds A4) over
    /// the sampled directions.
    pub max_normalized: f64,
}

/// Samples a cancellation combination at `directions` random orientations
/// of `ξ` (length in `[0.5, 2]`) and of `η` for each `δ`.
pub fn cancellation_sweep(kind: CancelKind, deltas: &[f64], directions: usize, seed: u64) -> Result<Vec<CancellationRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs: Vec<(f64, f64, f64)> = (0..directions)
        .map(|_| (rng.gen_range(0.5..2.0), rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI)))
        .collect();
    deltas
        .iter()
        .map(|&delta| {
            let mut worst = 0.0f64;
            for &(r, a, b) in &configs {
                let xi = [r * a.cos(), r * a.sin()];
                let h = delta * r;
                let eta = [h * b.cos(), h * b.sin()];
                let c = eval_cancellation_combo(kind, xi, eta)?.norm();
                let normalized = match kind {
                    CancelKind::A => c / h,
                    CancelKind::A4 | CancelKind::A4SameBranch => c * r / (h * h),
                };
                worst = worst.max(normalized);
            }
            Ok(CancellationRow {
                kind: format!("{kind:?}"),
                delta,
                max_normalized: worst,
            })
        })
        .collect()
}

/// One `S∞` estimate compared with a dyadic bound.
#[derive(Debug, Clone, Serialize)]
pub struct SinftyRow {
    pub symbol: String,
    pub k: i32,
    pub k1: i32,
    pub k2: i32,
    pub estimate: f64,
    pub bound: f64,
}

impl SinftyRow {
    pub fn ratio(&self) -> f64 {
        self.estimate / self.bound
    }
}

/// Estimates the `S∞` norm of a closed-form symbol over every admissible
/// output shell for each `(k1, k2)` and divides by `bound(k1, k2)`.
pub fn sinfty_sweep(
    id: SymbolId,
    pairs: &[(i32, i32)],
    resolution: usize,
    bound: impl Fn(i32, i32) -> f64,
) -> Result<Vec<SinftyRow>> {
    let symbol = CatalogSymbol::closed_form(id);
    let mut rows = Vec::new();
    for &(k1, k2) in pairs {
        for k in (k1.min(k2) - 2)..=(k1.max(k2) + 2) {
            if !admissible(k, k1, k2) {
                continue;
            }
            rows.push(SinftyRow {
                symbol: id.label(),
                k,
                k1,
                k2,
                estimate: estimate_sinfty_norm(&symbol, k, k1, k2, resolution)?,
                bound: bound(k1, k2),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_a_small_sample() {
        for c in identity_suite(50, 3) {
            assert!(c.passed(), "{} {}: {:e}", c.family, c.check, c.max_residual);
        }
    }

    #[test]
    fn cancellation_rows_follow_the_deltas() {
        let rows = cancellation_sweep(CancelKind::A, &[1e-1, 1e-2], 5, 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.max_normalized.is_finite() && r.max_normalized > 0.0));
    }
}
