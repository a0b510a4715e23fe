//! Operator definitions built from `Q₁,₂`, Riesz transforms, derivatives
//! and `|∇|^{±1}`, together with the symbols they induce under the discrete
//! convention. No normalization constants enter here.

use super::catalog::SymbolId;
use super::closed_form::{phase_of, rotational_derivative};
use super::geometry::{neg, Interaction};
use super::sign::Sign;
use crate::bilinear_engine::{null_form_symbol, FactoredSymbol};
use crate::error::{Error, Result};
use crate::spectral_core::{Axis, Multiplier};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::OnceLock;

const D1: Multiplier = Multiplier::Partial(Axis::X1);
const D2: Multiplier = Multiplier::Partial(Axis::X2);
const R1: Multiplier = Multiplier::Riesz(Axis::X1);
const R2: Multiplier = Multiplier::Riesz(Axis::X2);
const GRAD: Multiplier = Multiplier::ModGrad(1);
const INV_GRAD: Multiplier = Multiplier::ModGrad(-1);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn partial(i: usize) -> Multiplier {
    [D1, D2][i]
}

fn riesz(i: usize) -> Multiplier {
    [R1, R2][i]
}

/// `½|∇|⁻¹[Q(|∇|φ, w) − Q(R₁φ, ∂₁w) − Q(R₂φ, ∂₂w)]`.
fn curl_mixed() -> FactoredSymbol {
    let mut s = FactoredSymbol::new();
    s.push_q12(c(0.5), &[GRAD], &[], &[INV_GRAD]);
    s.push_q12(c(-0.5), &[R1], &[D1], &[INV_GRAD]);
    s.push_q12(c(-0.5), &[R2], &[D2], &[INV_GRAD]);
    s
}

/// `(c_μ/4)|∇|⁻¹[Q(R₁u, ∂₂w) − Q(R₂u, ∂₁w)]`.
fn curl_waves(mu: Sign) -> FactoredSymbol {
    let k = mu.c() * 0.25;
    let mut s = FactoredSymbol::new();
    s.push_q12(k, &[R1], &[D2], &[INV_GRAD]);
    s.push_q12(-k, &[R2], &[D1], &[INV_GRAD]);
    s
}

/// `Σ_i R_i|∇|⁻¹[Q(∂_iR₂φ, R₂φ) + Q(∂_iR₁φ, R₁φ)]`.
fn wave_curl_curl() -> FactoredSymbol {
    let mut s = FactoredSymbol::new();
    for i in 0..2 {
        let out = [INV_GRAD, riesz(i)];
        s.push_q12(c(1.0), &[R2, partial(i)], &[R2], &out);
        s.push_q12(c(1.0), &[R1, partial(i)], &[R1], &out);
    }
    s
}

/// Curl-wave part of the wave nonlinearity; the first input is the curl
/// variable and the second the wave branch `μ`.
fn wave_mixed(mu: Sign) -> FactoredSymbol {
    let h = mu.c() * 0.5;
    let mut s = FactoredSymbol::new();
    for i in 0..2 {
        let out = [INV_GRAD, riesz(i)];
        let di = partial(i);
        s.push_q12(h, &[R1, di], &[R2], &out);
        s.push_q12(-h, &[R2, di], &[R1], &out);
        // Terms with the wave input in the first slot of Q₁,₂, rewritten by
        // antisymmetry so the curl input stays on the left.
        s.push_q12(-h, &[R1], &[R2, di], &out);
        s.push_q12(h, &[R2], &[R1, di], &out);
    }
    let ih = Complex64::new(0.0, 0.5);
    s.push_q12(ih, &[R2], &[D1], &[INV_GRAD]);
    s.push_q12(-ih, &[R1], &[D2], &[INV_GRAD]);
    s
}

/// Wave-wave part of the wave nonlinearity for branches `(μ, ν)`.
fn wave_waves(mu: Sign, nu: Sign) -> FactoredSymbol {
    let cc = mu.c() * nu.c() * 0.25;
    let mut s = FactoredSymbol::new();
    for i in 0..2 {
        let out = [INV_GRAD, riesz(i)];
        let di = partial(i);
        for j in 0..2 {
            s.push_q12(cc, &[riesz(j), di], &[riesz(j)], &out);
        }
        s.push_q12(c(-0.25), &[di], &[], &out);
    }
    let k = Complex64::new(0.0, 0.25) * mu.c();
    s.push_q12(k, &[GRAD], &[], &[INV_GRAD]);
    s.push_q12(-k, &[R1], &[D1], &[INV_GRAD]);
    s.push_q12(-k, &[R2], &[D2], &[INV_GRAD]);
    s
}

/// Wave-wave operator after merging mirrored interactions.
fn wave_waves_merged(mu: Sign, nu: Sign) -> FactoredSymbol {
    let mut s = FactoredSymbol::new();
    match (mu, nu) {
        (Sign::Plus, Sign::Plus) => {
            let base = wave_waves(Sign::Plus, Sign::Plus);
            s.extend_scaled(&base, c(0.5));
            s.extend_scaled(&base.swapped(), c(0.5));
        }
        (Sign::Plus, Sign::Minus) => {
            s.extend_scaled(&wave_waves(Sign::Plus, Sign::Minus), c(1.0));
            s.extend_scaled(&wave_waves(Sign::Minus, Sign::Plus).swapped(), c(1.0));
        }
        _ => s.extend_scaled(&wave_waves(mu, nu), c(1.0)),
    }
    s
}

/// `½|∇|⁻¹[Q(R₂φ, R₁φ) − Q(R₁φ, R₂φ)]`.
fn constraint_curl_curl() -> FactoredSymbol {
    let mut s = FactoredSymbol::new();
    s.push_q12(c(0.5), &[R2], &[R1], &[INV_GRAD]);
    s.push_q12(c(-0.5), &[R1], &[R2], &[INV_GRAD]);
    s
}

/// `(c_μ/2)|∇|⁻¹ Σ_i Q(R_iφ, R_iw)`.
fn constraint_mixed(mu: Sign) -> FactoredSymbol {
    let h = mu.c() * 0.5;
    let mut s = FactoredSymbol::new();
    for i in 0..2 {
        s.push_q12(h, &[riesz(i)], &[riesz(i)], &[INV_GRAD]);
    }
    s
}

/// `(c_μc_ν/8)|∇|⁻¹[Q(R₂u, R₁w) − Q(R₁u, R₂w)]`.
fn constraint_waves(mu: Sign, nu: Sign) -> FactoredSymbol {
    let k = mu.c() * nu.c() * 0.125;
    let mut s = FactoredSymbol::new();
    s.push_q12(k, &[R2], &[R1], &[INV_GRAD]);
    s.push_q12(-k, &[R1], &[R2], &[INV_GRAD]);
    s
}

/// `−|∇|⁻¹ Σ_i R_i Q(∂_i f, g)`: the bilinear form whose differences make up
/// the potential-formulation scalar nonlinearity.
fn potential_quadratic() -> FactoredSymbol {
    let mut s = FactoredSymbol::new();
    for i in 0..2 {
        s.push_q12(c(-1.0), &[partial(i)], &[], &[INV_GRAD, riesz(i)]);
    }
    s
}

/// `Q₁,₂(f, g) − P(f, g) − P(g, f)` with `P` the potential quadratic form.
fn energy_mixed() -> FactoredSymbol {
    let p = potential_quadratic();
    let mut s = FactoredSymbol::new();
    s.push_q12(c(1.0), &[], &[], &[]);
    s.extend_scaled(&p, c(-1.0));
    s.extend_scaled(&p.swapped(), c(-1.0));
    s
}

/// Factored operator of a symbol, when the symbol is a composition of
/// multipliers and products.
pub fn operator(id: SymbolId) -> Option<FactoredSymbol> {
    use SymbolId::*;
    let op = match id {
        CurlMixed(_) => curl_mixed(),
        CurlWaves(mu, _) => curl_waves(mu),
        WaveCurlCurl => wave_curl_curl(),
        WaveMixed(mu) => wave_mixed(mu),
        WaveWaves(mu, nu) => wave_waves(mu, nu),
        WaveWavesMerged(mu, nu) if id.is_valid() => wave_waves_merged(mu, nu),
        ConstraintCurlCurl => constraint_curl_curl(),
        ConstraintMixed(mu) => constraint_mixed(mu),
        ConstraintWaves(mu, nu) => constraint_waves(mu, nu),
        PotentialQuadratic => potential_quadratic(),
        EnergyMixed => energy_mixed(),
        _ => return None,
    };
    Some(op.with_key(format!("composed:{}", id.label())))
}

/// Factored operators built once per process, indexed by catalog label.
fn cached_operators() -> &'static HashMap<SymbolId, FactoredSymbol> {
    static OPS: OnceLock<HashMap<SymbolId, FactoredSymbol>> = OnceLock::new();
    OPS.get_or_init(|| {
        SymbolId::all()
            .into_iter()
            .filter_map(|id| operator(id).map(|op| (id, op)))
            .collect()
    })
}

fn cached(id: SymbolId) -> Option<&'static FactoredSymbol> {
    cached_operators().get(&id)
}

fn energy_mixed_value(zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
    cached(SymbolId::EnergyMixed).expect("factorable").symbol(zeta, eta)
}

fn merged_value(mu: Sign, nu: Sign, zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
    cached(SymbolId::WaveWavesMerged(mu, nu)).expect("kept pair").symbol(zeta, eta)
}

/// Composed symbol at an interaction, with the same conventions as the
/// closed forms but in the discrete normalization.
pub(crate) fn composed_value(id: SymbolId, g: &Interaction) -> Complex64 {
    use SymbolId::*;
    let zero = Complex64::new(0.0, 0.0);
    if let Some(op) = cached(id) {
        return op.symbol(g.zeta, g.eta);
    }
    match id {
        EnergySelf => {
            // −(q₂(ζ, η) + q₂(ξ, −η)) / 2: the second term places the output
            // frequency in the first input slot.
            -(energy_mixed_value(g.zeta, g.eta) + energy_mixed_value(g.xi, neg(g.eta))) * 0.5
        }
        EnergyTop(nu, ka) => {
            -energy_mixed_value(g.zeta, g.eta) * (1.0 - nu.a() * ka.a() * g.cos)
        }
        NormalForm(mu, nu) => {
            if g.is_parallel() {
                return zero;
            }
            Complex64::new(0.0, 1.0) * merged_value(mu, nu, g.zeta, g.eta) / phase_of(mu, nu, g)
        }
        NormalFormRotated(mu, nu) => {
            let phase = phase_of(mu, nu, g);
            if g.is_parallel() || phase.abs() < 1e-12 * (g.nx + g.nz + g.ne) {
                return zero;
            }
            let d = rotational_derivative(|z, e| merged_value(mu, nu, z, e), g.zeta, g.eta);
            Complex64::new(0.0, 1.0) * d / phase
        }
        TopCorrection(nu, ka) => {
            // i q⁴ / phase, with the phase zero removed algebraically:
            // phase · (|ξ| + a_ν|ζ| + a_κ|η|) = −2 a_ν a_κ |ζ||η| (1 − a_ν a_κ cos).
            let s = g.nx + nu.a() * g.nz + ka.a() * g.ne;
            Complex64::new(0.0, 1.0) * energy_mixed_value(g.zeta, g.eta) * s
                / (2.0 * nu.a() * ka.a() * g.nz * g.ne)
        }
        _ => unreachable!("factorable symbols handled above"),
    }
}

/// Symbol obtained by composing the defining operators.
pub fn eval_composed_symbol(id: SymbolId, zeta: [f64; 2], eta: [f64; 2]) -> Result<Complex64> {
    if !id.is_valid() {
        return Err(Error::InvalidArgument(format!("{id} is not a cataloged symbol")));
    }
    let g = Interaction::new(zeta, eta)?;
    Ok(composed_value(id, &g))
}

/// Symbol of `Q₁,₂` itself, re-exported for callers composing by hand.
pub fn null_form(zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
    null_form_symbol(zeta, eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_curl_curl_by_hand() {
        // At ζ = (1,0), η = (0,1): ξ = (1,1), R₂ at η is i, R₁ at ζ is i,
        // R₁ at η and R₂ at ζ vanish. Only Q(R₂·, R₁·) survives with
        // symbol (i)(i)·(−ζ×η)·... evaluated directly below.
        let v = eval_composed_symbol(SymbolId::ConstraintCurlCurl, [1.0, 0.0], [0.0, 1.0]).unwrap();
        // ½|ξ|⁻¹ [R₂(ζ)R₁(η) − R₁(ζ)R₂(η)]·(−ζ×η) = ½/√2 · [0 − (i)(i)]·(−1) = −1/(2√2).
        assert!((v - c(-1.0 / (2.0 * 2f64.sqrt()))).norm() < 1e-15);
    }

    #[test]
    fn parallel_pairs_vanish() {
        for id in SymbolId::all() {
            if !id.has_null_structure() {
                continue;
            }
            let v = eval_composed_symbol(id, [0.3, -0.6], [-0.2, 0.4]).unwrap();
            assert!(v.norm() < 1e-15, "{id}: {v}");
        }
    }
}
