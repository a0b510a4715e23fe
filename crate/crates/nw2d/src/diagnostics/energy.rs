use super::vector_fields::{vector_field_images_in, CoordinateScheme, VectorFieldImages, WaveImageForm};
use crate::elasto_system::{constraint_residual, rhs_diagonal, DiagonalState, RhsPath};
use crate::error::{Error, Result};
use crate::scattering_normalform::NormalFormOps;
use crate::spectral_core::multiplier::mixed_partial;
use crate::spectral_core::{Grid, SpectralField};
use crate::symbol_library::Sign;
use serde::{Deserialize, Serialize};

/// Side of the truncated copy on which dense-path diagnostics run.
pub const DENSE_GRID_N: usize = 64;

/// Desk-scale regularity: `n0` derivatives in the top energy and `n1`
/// derivatives on the vector-field images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub n0: u32,
    pub n1: u32,
}

impl Default for Regularity {
    fn default() -> Self {
        Regularity { n0: 6, n1: 3 }
    }
}

impl Regularity {
    pub fn validate(&self) -> Result<()> {
        if self.n1 == 0 || self.n0 < 2 * self.n1 {
            return Err(Error::InvalidArgument(format!(
                "regularity needs n0 ≥ 2·n1 ≥ 2, got n0 = {}, n1 = {}",
                self.n0, self.n1
            )));
        }
        Ok(())
    }
}

/// Plain and corrected energies of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub t: f64,
    pub e0: f64,
    pub en0: f64,
    pub en1: f64,
    pub e_fcorr: f64,
    pub e_scorr: f64,
    pub e_modi: f64,
    pub constraint_residual: f64,
}

impl EnergyReport {
    /// `E⁰ + E^{N₀} + E^{N₁}`.
    pub fn plain(&self) -> f64 {
        self.e0 + self.en0 + self.en1
    }
}

/// The three uncorrected energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlainEnergies {
    pub e0: f64,
    pub en0: f64,
    pub en1: f64,
}

/// Representation of the top-order part of the first correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopOrderForm {
    /// `¼ Σ Re∫ conj(F) A⁴_{νκ}(F_ν, Φ_κ)`.
    Symmetrized,
    /// `Re∫ conj(F) (B(F, Φ) + B(Φ, F))` with `B` the normal-form quadratic.
    Direct,
}

/// The two correction energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionEnergies {
    pub first: f64,
    pub second: f64,
}

/// Multi-indices `(k, j)` with `k + j = order`.
fn splits(order: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=order).map(move |k| (k, order - k))
}

fn half_sq(f: &SpectralField) -> f64 {
    0.5 * f.l2_norm().powi(2)
}

/// `Re ∫ conj(f) g`.
fn pairing(f: &SpectralField, g: &SpectralField) -> f64 {
    f.inner(g).re
}

/// `E⁰`, `E^{N₀}`, `E^{N₁}` from a state and its vector-field images.
pub fn plain_energies(s: &DiagonalState, images: &VectorFieldImages, reg: Regularity) -> PlainEnergies {
    let e0 = half_sq(&s.phi0)
        + half_sq(&s.phi)
        + half_sq(&images.s_curl)
        + half_sq(&images.omega_curl)
        + half_sq(&images.s_wave)
        + half_sq(&images.omega_wave);
    let en0 = splits(reg.n0)
        .map(|(k, j)| half_sq(&mixed_partial(k, j, &s.phi0)) + half_sq(&mixed_partial(k, j, &s.phi)))
        .sum();
    let en1 = splits(reg.n1)
        .map(|(k, j)| {
            [&images.s_curl, &images.s_wave, &images.omega_curl, &images.omega_wave]
                .iter()
                .map(|f| half_sq(&mixed_partial(k, j, f)))
                .sum::<f64>()
        })
        .sum();
    PlainEnergies { e0, en0, en1 }
}

/// Top-order term of the first correction for a differentiated wave `f`.
fn top_order(ops: &NormalFormOps, f: &SpectralField, phi: &SpectralField, form: TopOrderForm) -> Result<f64> {
    Ok(match form {
        TopOrderForm::Symmetrized => pairing(f, &ops.top_quadratic(f, phi)?),
        TopOrderForm::Direct => pairing(f, &(ops.quadratic(f, phi)? + ops.quadratic(phi, f)?)),
    })
}

/// First (cubic) correction `E_FCorr`.
///
/// Writing `B(g, h) = Σ A_{μν}(g_μ, h_ν)`, every class pairs a
/// differentiated wave `F` against the Leibniz expansion of the same
/// derivatives on `B(Φ, Φ)`: top-order splits go through `top_order`, the
/// rest is the expansion minus its top splits. The scaling field carries the
/// extra `−B(Φ, Φ)` generated by its commutator with a degree-two
/// nonlinearity. The rotated symbol vanishes identically, so rotations need
/// no such term.
pub fn first_correction(
    ops: &NormalFormOps,
    s: &DiagonalState,
    images: &VectorFieldImages,
    reg: Regularity,
    form: TopOrderForm,
) -> Result<f64> {
    let phi = &s.phi;
    let base = ops.quadratic(phi, phi)?;
    let s_wave = &images.s_wave;
    let o_wave = &images.omega_wave;
    let s_pair = ops.quadratic(s_wave, phi)? + ops.quadratic(phi, s_wave)?;
    let o_pair = ops.quadratic(o_wave, phi)? + ops.quadratic(phi, o_wave)?;

    // Classes with no spatial derivatives.
    let mut total = pairing(phi, &base);
    total += pairing(s_wave, &(&s_pair - &base));
    total += pairing(o_wave, &o_pair);

    // Pure derivatives of order n0.
    for (k, j) in splits(reg.n0) {
        let f = mixed_partial(k, j, phi);
        let lower = mixed_partial(k, j, &base) - ops.quadratic(&f, phi)? - ops.quadratic(phi, &f)?;
        total += pairing(&f, &lower) + top_order(ops, &f, phi, form)?;
    }

    // Order n1 derivatives of one vector field.
    for (image, pair, scaling) in [(s_wave, &s_pair, true), (o_wave, &o_pair, false)] {
        for (k, j) in splits(reg.n1) {
            let f = mixed_partial(k, j, image);
            let mut lower = mixed_partial(k, j, pair) - ops.quadratic(&f, phi)? - ops.quadratic(phi, &f)?;
            if scaling {
                lower -= &mixed_partial(k, j, &base);
            }
            total += pairing(&f, &lower) + top_order(ops, &f, phi, form)?;
        }
    }
    Ok(total)
}

/// Second correction `E_SCorr`: for each top multi-index, the splits that
/// move one plain derivative onto the wave, paired against the curl
/// variable carrying the full multi-index, plus its `A⁴` term.
pub fn second_correction(
    ops: &NormalFormOps,
    s: &DiagonalState,
    images: &VectorFieldImages,
    reg: Regularity,
) -> Result<f64> {
    use Sign::{Minus, Plus};
    let phi = &s.phi;
    let phi_bar = phi.conj();
    let d1 = mixed_partial(1, 0, phi);
    let d2 = mixed_partial(0, 1, phi);
    let mut total = 0.0;
    let mut class = |curl: &SpectralField, order: u32| -> Result<()> {
        for (k, j) in splits(order) {
            let full = mixed_partial(k, j, curl);
            for (count, lower, wave) in [(k, k.checked_sub(1).map(|k1| (k1, j)), &d1), (j, j.checked_sub(1).map(|j1| (k, j1)), &d2)] {
                let Some((kb, jb)) = lower else { continue };
                let beta = mixed_partial(kb, jb, curl);
                let mut inner = ops.pair(Plus, Plus, &beta, wave)?;
                inner += &ops.pair(Plus, Plus, wave, &beta)?;
                inner += &ops.pair(Plus, Minus, &beta, &wave.conj())?;
                total += count as f64 * pairing(&full, &inner);
            }
            let top = ops.top(Plus, Plus, &full, phi)? + ops.top(Plus, Minus, &full, &phi_bar)?;
            total += 0.25 * pairing(&full, &top);
        }
        Ok(())
    };
    class(&s.phi0, reg.n0)?;
    class(&images.s_curl, reg.n1)?;
    class(&images.omega_curl, reg.n1)?;
    Ok(total)
}

/// Both corrections of a state on the dense-path grid.
pub fn correction_energies(s: &DiagonalState, reg: Regularity) -> Result<(f64, f64)> {
    let ops = NormalFormOps::new(*s.grid())?;
    let rhs = rhs_diagonal(s, RhsPath::Recovery)?;
    let images = vector_field_images_in(s, &rhs, CoordinateScheme::Windowed, WaveImageForm::Profile);
    let c = corrections_with(&ops, s, &images, reg, TopOrderForm::Symmetrized)?;
    Ok((c.first, c.second))
}

pub fn corrections_with(
    ops: &NormalFormOps,
    s: &DiagonalState,
    images: &VectorFieldImages,
    reg: Regularity,
    form: TopOrderForm,
) -> Result<CorrectionEnergies> {
    Ok(CorrectionEnergies {
        first: first_correction(ops, s, images, reg, form)?,
        second: second_correction(ops, s, images, reg)?,
    })
}

/// Settings for [`energy_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyOptions {
    pub regularity: Regularity,
    /// Side of the truncated copy used for every energy term.
    pub dense_n: usize,
    pub scheme: CoordinateScheme,
    pub wave_form: WaveImageForm,
    pub top_form: TopOrderForm,
}

impl Default for EnergyOptions {
    fn default() -> Self {
        EnergyOptions {
            regularity: Regularity::default(),
            dense_n: DENSE_GRID_N,
            scheme: CoordinateScheme::Windowed,
            wave_form: WaveImageForm::Profile,
            top_form: TopOrderForm::Symmetrized,
        }
    }
}

/// Spectrally truncated copy of a state on an `n`-point grid of the same
/// side, or the state itself when it is already that coarse.
pub fn dense_copy(s: &DiagonalState, n: usize) -> Result<DiagonalState> {
    if s.grid().n() <= n {
        return Ok(s.clone());
    }
    s.resample(Grid::new(n, s.grid().length())?)
}

/// Full energy report with the default options and the given regularity.
pub fn energy(s: &DiagonalState, reg: Regularity) -> Result<EnergyReport> {
    energy_with(s, &EnergyOptions { regularity: reg, ..EnergyOptions::default() })
}

/// Full energy report. All energy terms are evaluated on the truncated
/// dense-path copy; the constraint residual uses the full state.
pub fn energy_with(s: &DiagonalState, opts: &EnergyOptions) -> Result<EnergyReport> {
    opts.regularity.validate()?;
    let d = dense_copy(s, opts.dense_n)?;
    let ops = NormalFormOps::new(*d.grid())?;
    energy_on(&ops, &d, opts, constraint_residual(s)?)
}

/// Energy report of a state already on the grid of `ops`.
pub fn energy_on(ops: &NormalFormOps, d: &DiagonalState, opts: &EnergyOptions, residual: f64) -> Result<EnergyReport> {
    let rhs = rhs_diagonal(d, RhsPath::Recovery)?;
    let images = vector_field_images_in(d, &rhs, opts.scheme, opts.wave_form);
    let plain = plain_energies(d, &images, opts.regularity);
    let corr = corrections_with(ops, d, &images, opts.regularity, opts.top_form)?;
    Ok(EnergyReport {
        t: d.t,
        e0: plain.e0,
        en0: plain.en0,
        en1: plain.en1,
        e_fcorr: corr.first,
        e_scorr: corr.second,
        e_modi: plain.e0 + plain.en0 + plain.en1 + corr.first + corr.second,
        constraint_residual: residual,
    })
}
