//! Operators of the form `Σ_j c_j · M_out[(M_L f) · (M_R g)]` evaluated with
//! FFTs instead of a double sum.

use super::dense::BilinearSymbol;
use crate::error::Result;
use crate::spectral_core::dealias::{dealias, dealias_in_place};
use crate::spectral_core::{apply_chain, chain_symbol, Axis, DealiasRule, Multiplier, SpectralField};
use num_complex::Complex64;

/// One product term: coefficient, chains for each input, and a chain applied
/// to the product.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorTerm {
    pub coef: Complex64,
    pub left: Vec<Multiplier>,
    pub right: Vec<Multiplier>,
    pub out: Vec<Multiplier>,
}

/// A bilinear operator given as a sum of factored product terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FactoredSymbol {
    pub terms: Vec<FactorTerm>,
    key: Option<String>,
}

impl FactoredSymbol {
    pub fn new() -> Self {
        Self::default()
    }

    /// Attaches a cache key so dense tables of this symbol can be reused.
    pub fn with_key(mut self, key: impl Into<String>) -> Self {
        self.key = Some(key.into());
        self
    }

    pub fn push(&mut self, coef: Complex64, left: &[Multiplier], right: &[Multiplier], out: &[Multiplier]) {
        self.terms.push(FactorTerm {
            coef,
            left: left.to_vec(),
            right: right.to_vec(),
            out: out.to_vec(),
        });
    }

    /// Adds `coef · M_out Q₁,₂(M_L f, M_R g)` as its two product terms.
    pub fn push_q12(
        &mut self,
        coef: Complex64,
        left: &[Multiplier],
        right: &[Multiplier],
        out: &[Multiplier],
    ) {
        let with = |chain: &[Multiplier], a: Axis| {
            let mut v = chain.to_vec();
            v.push(Multiplier::Partial(a));
            v
        };
        self.push(coef, &with(left, Axis::X1), &with(right, Axis::X2), out);
        self.push(-coef, &with(left, Axis::X2), &with(right, Axis::X1), out);
    }

    /// Appends every term of `other`, scaled by `s`.
    pub fn extend_scaled(&mut self, other: &FactoredSymbol, s: Complex64) {
        for t in &other.terms {
            let mut t = t.clone();
            t.coef *= s;
            self.terms.push(t);
        }
    }

    /// Symbol obtained by composing the chain symbols term by term.
    pub fn symbol(&self, zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
        let xi = [zeta[0] + eta[0], zeta[1] + eta[1]];
        self.terms
            .iter()
            .map(|t| t.coef * chain_symbol(&t.out, xi) * chain_symbol(&t.left, zeta) * chain_symbol(&t.right, eta))
            .sum()
    }

    /// Symbol with the inputs exchanged, `s(η, ζ)`, as its own operator.
    pub fn swapped(&self) -> FactoredSymbol {
        FactoredSymbol {
            terms: self
                .terms
                .iter()
                .map(|t| FactorTerm {
                    coef: t.coef,
                    left: t.right.clone(),
                    right: t.left.clone(),
                    out: t.out.clone(),
                })
                .collect(),
            key: None,
        }
    }
}

impl BilinearSymbol for FactoredSymbol {
    fn eval(&self, zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
        self.symbol(zeta, eta)
    }

    fn cache_key(&self) -> Option<String> {
        self.key.clone()
    }
}

fn position(list: &[Vec<Multiplier>], chain: &[Multiplier]) -> Option<usize> {
    list.iter().position(|c| c.as_slice() == chain)
}

/// Evaluates a factored operator: inputs truncated to the band, each
/// distinct input chain transformed once, products accumulated per output
/// chain in physical space, and the output truncated.
pub fn pseudo_product_factored(
    s: &FactoredSymbol,
    f: &SpectralField,
    g: &SpectralField,
    rule: DealiasRule,
) -> Result<SpectralField> {
    f.check_same_grid(g)?;
    let grid = *f.grid();
    let mut out = SpectralField::zeros(grid);
    if s.terms.is_empty() {
        return Ok(out);
    }
    let f = dealias(f, rule);
    let g = dealias(g, rule);

    let mut left_chains: Vec<Vec<Multiplier>> = Vec::new();
    let mut right_chains: Vec<Vec<Multiplier>> = Vec::new();
    let mut out_chains: Vec<Vec<Multiplier>> = Vec::new();
    for t in &s.terms {
        if position(&left_chains, &t.left).is_none() {
            left_chains.push(t.left.clone());
        }
        if position(&right_chains, &t.right).is_none() {
            right_chains.push(t.right.clone());
        }
        if position(&out_chains, &t.out).is_none() {
            out_chains.push(t.out.clone());
        }
    }
    let left: Vec<Vec<Complex64>> = left_chains
        .iter()
        .map(|c| apply_chain(c, &f).to_physical())
        .collect();
    let right: Vec<Vec<Complex64>> = right_chains
        .iter()
        .map(|c| apply_chain(c, &g).to_physical())
        .collect();

    for oc in &out_chains {
        let mut acc = vec![Complex64::new(0.0, 0.0); grid.len()];
        for t in s.terms.iter().filter(|t| t.out == *oc) {
            let a = &left[position(&left_chains, &t.left).expect("left chain indexed")];
            let b = &right[position(&right_chains, &t.right).expect("right chain indexed")];
            let c = t.coef;
            for ((x, &u), &v) in acc.iter_mut().zip(a).zip(b) {
                *x += c * u * v;
            }
        }
        let mut prod = SpectralField::from_physical(grid, &acc)?;
        dealias_in_place(&mut prod, rule);
        out += &apply_chain(oc, &prod);
    }
    Ok(out)
}
