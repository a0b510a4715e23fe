//! Dense frequency-space evaluation
//! `ĥ(ξ) = Σ_η f̂(ξ−η) ĝ(η) s(ξ−η, η)` over lattice pairs inside the band.

use crate::error::{Error, Result};
use crate::spectral_core::dealias::in_band;
use crate::spectral_core::{DealiasRule, Grid, SpectralField};
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest grid accepted by the dense path.
pub const DENSE_MAX_N: usize = 128;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A bilinear Fourier symbol `s(ζ, η)`, where `ζ` is the frequency of the
/// first input and `η` that of the second; the output frequency is `ζ + η`.
pub trait BilinearSymbol: Sync {
    fn eval(&self, zeta: [f64; 2], eta: [f64; 2]) -> Complex64;

    /// Identifier used for table caching and reporting; `None` for ad hoc
    /// symbols, which are never cached.
    fn cache_key(&self) -> Option<String> {
        None
    }
}

/// Wraps a closure as a symbol.
pub struct FnSymbol<F>(pub F);

impl<F> BilinearSymbol for FnSymbol<F>
where
    F: Fn([f64; 2], [f64; 2]) -> Complex64 + Sync,
{
    fn eval(&self, zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
        (self.0)(zeta, eta)
    }
}

fn check_dense(f: &SpectralField, g: &SpectralField) -> Result<()> {
    f.check_same_grid(g)?;
    let n = f.grid().n();
    if n > DENSE_MAX_N {
        return Err(Error::DenseTooLarge { n, max: DENSE_MAX_N });
    }
    Ok(())
}

/// Symbol value with the singular-set policy applied: zero whenever an
/// input or the output frequency vanishes.
#[inline]
fn guarded(
    s: &dyn BilinearSymbol,
    dk: f64,
    zeta: (i64, i64),
    eta: (i64, i64),
) -> Complex64 {
    let xi = (zeta.0 + eta.0, zeta.1 + eta.1);
    if zeta == (0, 0) || eta == (0, 0) || xi == (0, 0) {
        return ZERO;
    }
    let v = s.eval(
        [zeta.0 as f64 * dk, zeta.1 as f64 * dk],
        [eta.0 as f64 * dk, eta.1 as f64 * dk],
    );
    debug_assert!(v.re.is_finite() && v.im.is_finite(), "non-finite symbol value");
    v
}

/// Output band rows: each output wavenumber `p` pairs with inputs `q` such
/// that both `q` and `p − q` lie in `[-B, B]`.
#[inline]
fn input_range(p: i64, b: i64) -> (i64, i64) {
    ((p - b).max(-b), (p + b).min(b))
}

/// Dense pseudo-product with on-the-fly symbol evaluation.
pub fn pseudo_product(
    s: &dyn BilinearSymbol,
    f: &SpectralField,
    g: &SpectralField,
    rule: DealiasRule,
) -> Result<SpectralField> {
    check_dense(f, g)?;
    let grid = *f.grid();
    let b = rule.cutoff(grid.n());
    let dk = grid.dk();
    let fc = f.coeffs();
    let gc = g.coeffs();
    let nonzero_g: Vec<(i64, i64, Complex64)> = (0..grid.len())
        .filter_map(|idx| {
            let (q1, q2) = grid.integer_frequency(idx);
            let v = gc[idx];
            (v != ZERO && in_band(q1, q2, b) && (q1, q2) != (0, 0)).then_some((q1, q2, v))
        })
        .collect();
    let outputs: Vec<(i64, i64)> = (-b..=b)
        .flat_map(|p1| (-b..=b).map(move |p2| (p1, p2)))
        .collect();
    let values: Vec<Complex64> = outputs
        .par_iter()
        .map(|&(p1, p2)| {
            if (p1, p2) == (0, 0) {
                return ZERO;
            }
            let mut acc = ZERO;
            for &(q1, q2, gv) in &nonzero_g {
                let (z1, z2) = (p1 - q1, p2 - q2);
                if !in_band(z1, z2, b) {
                    continue;
                }
                let fv = fc[grid.flat_of(z1, z2)];
                if fv == ZERO {
                    continue;
                }
                acc += fv * gv * guarded(s, dk, (z1, z2), (q1, q2));
            }
            acc
        })
        .collect();
    let mut out = SpectralField::zeros(grid);
    for (&(p1, p2), v) in outputs.iter().zip(values) {
        out.set(p1, p2, v);
    }
    Ok(out)
}

/// Precomputed symbol values for every in-band lattice pair of one grid.
pub struct KernelTable {
    grid: Grid,
    rule: DealiasRule,
    cutoff: i64,
    offsets: Vec<usize>,
    values: Vec<Complex64>,
}

impl KernelTable {
    pub fn build(s: &dyn BilinearSymbol, grid: Grid, rule: DealiasRule) -> Result<Self> {
        if grid.n() > DENSE_MAX_N {
            return Err(Error::DenseTooLarge {
                n: grid.n(),
                max: DENSE_MAX_N,
            });
        }
        let b = rule.cutoff(grid.n());
        let dk = grid.dk();
        let width = (2 * b + 1) as usize;
        let mut offsets = Vec::with_capacity(width * width + 1);
        let mut total = 0usize;
        for p1 in -b..=b {
            let (lo1, hi1) = input_range(p1, b);
            for p2 in -b..=b {
                let (lo2, hi2) = input_range(p2, b);
                offsets.push(total);
                total += ((hi1 - lo1 + 1) * (hi2 - lo2 + 1)) as usize;
            }
        }
        offsets.push(total);
        let blocks: Vec<Vec<Complex64>> = (0..width * width)
            .into_par_iter()
            .map(|o| {
                let p1 = (o / width) as i64 - b;
                let p2 = (o % width) as i64 - b;
                let (lo1, hi1) = input_range(p1, b);
                let (lo2, hi2) = input_range(p2, b);
                let mut block = Vec::with_capacity(((hi1 - lo1 + 1) * (hi2 - lo2 + 1)) as usize);
                for q1 in lo1..=hi1 {
                    for q2 in lo2..=hi2 {
                        block.push(guarded(s, dk, (p1 - q1, p2 - q2), (q1, q2)));
                    }
                }
                block
            })
            .collect();
        let values: Vec<Complex64> = blocks.into_iter().flatten().collect();
        debug_assert_eq!(values.len(), total);
        Ok(KernelTable {
            grid,
            rule,
            cutoff: b,
            offsets,
            values,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn rule(&self) -> DealiasRule {
        self.rule
    }

    /// Number of stored pair values.
    pub fn pairs(&self) -> usize {
        self.values.len()
    }

    /// Applies the tabulated symbol to a pair of fields.
    pub fn apply(&self, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        f.check_same_grid(g)?;
        if *f.grid() != self.grid {
            return Err(Error::GridMismatch("kernel table built for another grid".into()));
        }
        let grid = self.grid;
        let b = self.cutoff;
        let width = (2 * b + 1) as usize;
        // Copy the in-band coefficients into dense square arrays indexed by
        // wavenumber + B, so the inner loops run over contiguous memory.
        let pack = |h: &SpectralField| -> Vec<Complex64> {
            let mut v = vec![ZERO; width * width];
            for k1 in -b..=b {
                for k2 in -b..=b {
                    v[((k1 + b) as usize) * width + (k2 + b) as usize] = h.get(k1, k2);
                }
            }
            v
        };
        let fp = pack(f);
        let gp = pack(g);
        let values: Vec<Complex64> = (0..width * width)
            .into_par_iter()
            .map(|o| {
                let p1 = (o / width) as i64 - b;
                let p2 = (o % width) as i64 - b;
                let (lo1, hi1) = input_range(p1, b);
                let (lo2, hi2) = input_range(p2, b);
                let row_len = (hi2 - lo2 + 1) as usize;
                let table = &self.values[self.offsets[o]..self.offsets[o + 1]];
                let mut acc = ZERO;
                for (r, q1) in (lo1..=hi1).enumerate() {
                    let z1 = p1 - q1;
                    let grow = ((q1 + b) as usize) * width;
                    let frow = ((z1 + b) as usize) * width;
                    let trow = &table[r * row_len..(r + 1) * row_len];
                    for (c, q2) in (lo2..=hi2).enumerate() {
                        let z2 = p2 - q2;
                        acc += fp[frow + (z2 + b) as usize]
                            * gp[grow + (q2 + b) as usize]
                            * trow[c];
                    }
                }
                acc
            })
            .collect();
        let mut out = SpectralField::zeros(grid);
        for (o, v) in values.into_iter().enumerate() {
            out.set((o / width) as i64 - b, (o % width) as i64 - b, v);
        }
        Ok(out)
    }
}

type TableKey = (String, usize, u64, DealiasRule);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<KernelTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<KernelTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Table for `s` on `grid`, shared across callers when the symbol has a
/// cache key.
pub fn kernel_table(
    s: &dyn BilinearSymbol,
    grid: Grid,
    rule: DealiasRule,
) -> Result<Arc<KernelTable>> {
    let Some(label) = s.cache_key() else {
        return Ok(Arc::new(KernelTable::build(s, grid, rule)?));
    };
    let key = (label, grid.n(), grid.length().to_bits(), rule);
    if let Some(t) = table_cache().lock().expect("table cache poisoned").get(&key) {
        return Ok(t.clone());
    }
    let table = Arc::new(KernelTable::build(s, grid, rule)?);
    let mut cache = table_cache().lock().expect("table cache poisoned");
    Ok(cache.entry(key).or_insert(table).clone())
}

/// Dense pseudo-product through a cached table.
pub fn pseudo_product_with_table(
    s: &dyn BilinearSymbol,
    f: &SpectralField,
    g: &SpectralField,
    rule: DealiasRule,
) -> Result<SpectralField> {
    check_dense(f, g)?;
    kernel_table(s, *f.grid(), rule)?.apply(f, g)
}
