use crate::error::Result;
use crate::spectral_core::dealias::{dealias, dealias_in_place};
use crate::spectral_core::{Axis, DealiasRule, Multiplier, SpectralField};
use num_complex::Complex64;

/// Symbol of `Q₁,₂` under the discrete convention: `−(ζ₁η₂ − ζ₂η₁)`.
pub fn null_form_symbol(zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
    Complex64::new(-(zeta[0] * eta[1] - zeta[1] * eta[0]), 0.0)
}

/// Pointwise product of two fields, with inputs and output truncated to the
/// band of `rule`.
pub fn physical_product(
    f: &SpectralField,
    g: &SpectralField,
    rule: DealiasRule,
) -> Result<SpectralField> {
    f.check_same_grid(g)?;
    let a = dealias(f, rule).to_physical();
    let b = dealias(g, rule).to_physical();
    let prod: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    let mut out = SpectralField::from_physical(*f.grid(), &prod)?;
    dealias_in_place(&mut out, rule);
    Ok(out)
}

/// `Q₁,₂(f, g) = ∂₁f ∂₂g − ∂₂f ∂₁g`, evaluated in physical space with the
/// 2/3 truncation applied to inputs and output.
pub fn null_form_q12(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    null_form_q12_rule(f, g, DealiasRule::TwoThirds)
}

pub fn null_form_q12_rule(
    f: &SpectralField,
    g: &SpectralField,
    rule: DealiasRule,
) -> Result<SpectralField> {
    f.check_same_grid(g)?;
    let f = dealias(f, rule);
    let g = dealias(g, rule);
    let f1 = Multiplier::Partial(Axis::X1).apply(&f).to_physical();
    let f2 = Multiplier::Partial(Axis::X2).apply(&f).to_physical();
    let g1 = Multiplier::Partial(Axis::X1).apply(&g).to_physical();
    let g2 = Multiplier::Partial(Axis::X2).apply(&g).to_physical();
    let prod: Vec<Complex64> = (0..f1.len())
        .map(|i| f1[i] * g2[i] - f2[i] * g1[i])
        .collect();
    let mut out = SpectralField::from_physical(*f.grid(), &prod)?;
    dealias_in_place(&mut out, rule);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::Grid;
    use std::f64::consts::PI;

    #[test]
    fn sines_give_cosine_product() {
        let g = Grid::new(32, 2.0 * PI).unwrap();
        let f = SpectralField::from_function(g, |x, _| Complex64::new(x.sin(), 0.0)).unwrap();
        let h = SpectralField::from_function(g, |_, y| Complex64::new(y.sin(), 0.0)).unwrap();
        let q = null_form_q12(&f, &h).unwrap();
        let expect =
            SpectralField::from_function(g, |x, y| Complex64::new(x.cos() * y.cos(), 0.0))
                .unwrap();
        assert!((&q - &expect).max_coeff() < 1e-14);
    }

    #[test]
    fn antisymmetric_and_kills_constants() {
        let g = Grid::new(16, 7.0).unwrap();
        let f = SpectralField::from_function(g, |x, y| {
            Complex64::new((0.9 * x).sin() * (1.8 * y).cos(), 0.0)
        })
        .unwrap();
        let h = SpectralField::from_function(g, |x, y| {
            Complex64::new((0.9 * x + 0.9 * y).cos(), 0.2)
        })
        .unwrap();
        assert!(null_form_q12(&f, &f).unwrap().max_coeff() < 1e-15);
        let a = null_form_q12(&f, &h).unwrap();
        let b = null_form_q12(&h, &f).unwrap();
        assert!((&a + &b).max_coeff() < 1e-15);
        let c = SpectralField::mode(g, 0, 0, Complex64::new(3.0, 0.0));
        assert!(null_form_q12(&f, &c).unwrap().max_coeff() == 0.0);
    }
}
