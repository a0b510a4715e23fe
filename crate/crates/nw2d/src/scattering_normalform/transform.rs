use crate::bilinear_engine::{kernel_table, KernelTable};
use crate::error::{Error, Result};
use crate::spectral_core::{DealiasRule, Grid, SpectralField};
use crate::symbol_library::{CatalogSymbol, Sign, SymbolId, ALL_PAIRS, PAIRS};
use std::sync::Arc;

/// Dense tables of the normal-form operators `A_{μν}` (the three kept
/// branch pairs) and of the top-order correction operators `A⁴_{νκ}` (all
/// four pairs) on one grid.
#[derive(Clone)]
pub struct NormalFormOps {
    grid: Grid,
    pairs: Vec<((Sign, Sign), Arc<KernelTable>)>,
    top: Vec<((Sign, Sign), Arc<KernelTable>)>,
}

impl NormalFormOps {
    pub fn new(grid: Grid) -> Result<Self> {
        let rule = DealiasRule::TwoThirds;
        let table = |id: SymbolId| kernel_table(&CatalogSymbol::calibrated(id), grid, rule);
        let pairs = PAIRS
            .iter()
            .map(|&(mu, nu)| Ok(((mu, nu), table(SymbolId::NormalForm(mu, nu))?)))
            .collect::<Result<Vec<_>>>()?;
        let top = ALL_PAIRS
            .iter()
            .map(|&(nu, ka)| Ok(((nu, ka), table(SymbolId::TopCorrection(nu, ka))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(NormalFormOps { grid, pairs, top })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn check(&self, f: &SpectralField) -> Result<()> {
        if *f.grid() != self.grid {
            return Err(Error::GridMismatch("normal-form tables built for another grid".into()));
        }
        Ok(())
    }

    /// `A_{μν}` applied to explicit inputs (no branch selection).
    pub fn pair(&self, mu: Sign, nu: Sign, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        self.check(f)?;
        let (_, t) = self
            .pairs
            .iter()
            .find(|(p, _)| *p == (mu, nu))
            .ok_or_else(|| Error::InvalidArgument(format!("({mu:?}, {nu:?}) is not a kept pair")))?;
        t.apply(f, g)
    }

    /// `A⁴_{νκ}` applied to explicit inputs.
    pub fn top(&self, nu: Sign, ka: Sign, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        self.check(f)?;
        let (_, t) = self
            .top
            .iter()
            .find(|(p, _)| *p == (nu, ka))
            .expect("all four pairs tabulated");
        t.apply(f, g)
    }

    /// `Σ_{(μ,ν)} A_{μν}(f_μ, g_ν)` with `f_−` the conjugate of `f`.
    pub fn quadratic(&self, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        self.check(f)?;
        let mut out = SpectralField::zeros(self.grid);
        for ((mu, nu), t) in &self.pairs {
            out += &t.apply(&mu.branch(f), &nu.branch(g))?;
        }
        Ok(out)
    }

    /// `¼ Σ_{νκ} A⁴_{νκ}(f_ν, g_κ)`.
    pub fn top_quadratic(&self, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        self.check(f)?;
        let mut out = SpectralField::zeros(self.grid);
        for ((nu, ka), t) in &self.top {
            out += &t.apply(&nu.branch(f), &ka.branch(g))?;
        }
        Ok(out.scale(0.25))
    }
}
