//! Closed-form symbols in the continuum Fourier normalization (constants
//! `1/(2π)`, `1/(4π)`, ...). Values differ from the operator symbols used by
//! the dynamics by a per-family constant, see `calibration`.

use super::catalog::SymbolId;
use super::geometry::{dot, rotate, sub, Interaction};
use super::sign::Sign;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Phase `|ξ| − a_μ|ξ−η| − a_ν|η|` of an interaction with output `ξ` and
/// second input `η`.
pub fn eval_phase(mu: Sign, nu: Sign, xi: [f64; 2], eta: [f64; 2]) -> f64 {
    let zeta = sub(xi, eta);
    let n = |v: [f64; 2]| v[0].hypot(v[1]);
    n(xi) - mu.a() * n(zeta) - nu.a() * n(eta)
}

pub(crate) fn phase_of(mu: Sign, nu: Sign, g: &Interaction) -> f64 {
    g.nx - mu.a() * g.nz - nu.a() * g.ne
}

fn wave_waves(mu: Sign, nu: Sign, g: &Interaction) -> Complex64 {
    let xz = dot(g.xi, g.zeta);
    let zn = dot(g.zeta, g.eta) / (g.nz * g.ne);
    let cc = mu.c() * nu.c();
    (-cc / (8.0 * PI * g.nx) * (xz / g.nx) * zn - re(xz / (8.0 * PI * g.nx * g.nx))
        - I * mu.c() * xz / (8.0 * PI * g.nx * g.nz))
        * g.cross
}

fn constraint_curl_curl(g: &Interaction) -> f64 {
    -g.cross * g.cross / (4.0 * PI * g.nx * g.nz * g.ne)
}

fn energy_mixed(g: &Interaction) -> f64 {
    dot(g.xi, g.eta) / (PI * g.nx * g.nx) * g.cross
}

/// Merged wave-wave symbol, written with the angular factors exposed.
fn merged(mu: Sign, nu: Sign, g: &Interaction) -> Complex64 {
    let lead = dot(g.xi, sub(g.xi, [2.0 * g.eta[0], 2.0 * g.eta[1]])) / (g.nx * g.nx);
    match (mu, nu) {
        (Sign::Plus, Sign::Plus) => {
            let dir = dot(g.xi, sub([g.zeta[0] / g.nz, g.zeta[1] / g.nz], [g.eta[0] / g.ne, g.eta[1] / g.ne]));
            re(-lead / (16.0 * PI) * (1.0 - g.cos) * g.cross - dir / (16.0 * PI * g.nx) * g.cross)
        }
        (Sign::Plus, Sign::Minus) => {
            let dir = dot(
                g.xi,
                [g.zeta[0] / g.nz + g.eta[0] / g.ne, g.zeta[1] / g.nz + g.eta[1] / g.ne],
            );
            re(-lead / (8.0 * PI) * (1.0 + g.cos) * g.cross - dir / (8.0 * PI * g.nx) * g.cross)
        }
        _ => wave_waves(Sign::Minus, Sign::Minus, g),
    }
}

/// Normal-form symbol `i m̃′ / phase` with the phase zero cancelled
/// analytically for the two resonant pairs.
fn normal_form(mu: Sign, nu: Sign, g: &Interaction) -> Complex64 {
    let lead = dot(g.xi, sub(g.xi, [2.0 * g.eta[0], 2.0 * g.eta[1]])) / (g.nx * g.nx);
    let total = g.nx + g.nz + g.ne;
    match (mu, nu) {
        (Sign::Plus, Sign::Plus) => {
            // m̃′ = −(1−cos)·X·B and phase = −2|ζ||η|(1−cos)/(|ξ|+|ζ|+|η|).
            let b = lead / (16.0 * PI) + (g.nz - g.ne) / (16.0 * PI * g.nx);
            I * (g.cross * b * total / (2.0 * g.nz * g.ne))
        }
        (Sign::Plus, Sign::Minus) => {
            let phase = phase_of(mu, nu, g);
            if phase.abs() >= 1e-3 * total {
                return I * merged(mu, nu, g) / phase;
            }
            // m̃′ = −(1+cos)·X·B and phase = 2|ζ||η|(1+cos)/(|ξ|+|ζ|−|η|).
            let b = lead / (8.0 * PI) + (g.nz + g.ne) / (8.0 * PI * g.nx);
            let d = g.nx + g.nz - g.ne;
            -I * (g.cross * b * d / (2.0 * g.nz * g.ne))
        }
        _ => I * merged(mu, nu, g) / phase_of(mu, nu, g),
    }
}

/// Derivative of `f(R_θ ζ, R_θ η)` at `θ = 0` by a central difference.
pub fn rotational_derivative(
    f: impl Fn([f64; 2], [f64; 2]) -> Complex64,
    zeta: [f64; 2],
    eta: [f64; 2],
) -> Complex64 {
    let h = 1e-5;
    (f(rotate(zeta, h), rotate(eta, h)) - f(rotate(zeta, -h), rotate(eta, -h))) / (2.0 * h)
}

pub(crate) fn closed_value(id: SymbolId, g: &Interaction) -> Complex64 {
    use SymbolId::*;
    let x = g.cross;
    match id {
        CurlMixed(_) => re(-dot(g.xi, g.zeta) / (4.0 * PI * g.nx * g.nz) * x),
        CurlWaves(mu, _) => mu.c() / (8.0 * PI * g.nx * g.nz) * (x * x),
        WaveMixed(mu) => {
            let ang = (dot(g.xi, g.zeta) - dot(g.xi, g.eta)) / (g.nz * g.ne);
            -mu.c() / (4.0 * PI * g.nx * g.nx) * ang * (x * x)
                - I * (x * x) / (4.0 * PI * g.nx * g.nz)
        }
        WaveWaves(mu, nu) => wave_waves(mu, nu, g),
        WaveCurlCurl => re(-dot(g.xi, g.zeta) / (2.0 * PI * g.nx * g.nx) * g.cos * x),
        WaveWavesMerged(mu, nu) => merged(mu, nu, g),
        ConstraintCurlCurl => re(constraint_curl_curl(g)),
        ConstraintMixed(mu) => -mu.c() / (4.0 * PI) * (g.cos / g.nx) * x,
        ConstraintWaves(mu, nu) => mu.c() * nu.c() / (16.0 * PI) * constraint_curl_curl(g),
        PotentialQuadratic => re(dot(g.xi, g.zeta) / (2.0 * PI * g.nx * g.nx) * x),
        EnergyMixed => re(energy_mixed(g)),
        EnergySelf => re(-(dot(g.xi, g.eta) / (2.0 * PI * g.nx * g.nx)
            + dot(g.zeta, g.eta) / (2.0 * PI * g.nz * g.nz))
            * x),
        EnergyTop(nu, ka) => re(-energy_mixed(g) * (1.0 - nu.a() * ka.a() * g.cos)),
        NormalForm(mu, nu) => normal_form(mu, nu, g),
        NormalFormRotated(mu, nu) => {
            let d = rotational_derivative(
                |z, e| match Interaction::new(z, e) {
                    Ok(h) => merged(mu, nu, &h),
                    Err(_) => Complex64::new(0.0, 0.0),
                },
                g.zeta,
                g.eta,
            );
            let phase = phase_of(mu, nu, g);
            if phase.abs() < 1e-12 * (g.nx + g.nz + g.ne) {
                Complex64::new(0.0, 0.0)
            } else {
                I * d / phase
            }
        }
        TopCorrection(nu, ka) => {
            let s = g.nx + nu.a() * g.nz + ka.a() * g.ne;
            I * (s * energy_mixed(g) / (2.0 * nu.a() * ka.a() * g.nz * g.ne))
        }
    }
}

/// Closed-form symbol at first-input frequency `zeta` and second-input
/// frequency `eta` (output `zeta + eta`).
pub fn eval_closed_form(id: SymbolId, zeta: [f64; 2], eta: [f64; 2]) -> Result<Complex64> {
    if !id.is_valid() {
        return Err(Error::InvalidArgument(format!("{id} is not a cataloged symbol")));
    }
    let g = Interaction::new(zeta, eta)?;
    Ok(closed_value(id, &g))
}

/// Same symbol with the arguments given as (output, second input).
pub fn eval_closed_form_at_output(id: SymbolId, xi: [f64; 2], eta: [f64; 2]) -> Result<Complex64> {
    eval_closed_form(id, sub(xi, eta), eta)
}
