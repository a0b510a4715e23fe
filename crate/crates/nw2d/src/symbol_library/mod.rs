//! Named bilinear symbols: closed forms, operator compositions, phases,
//! calibration, cancellation combinations and `S∞` estimates.

pub mod calibration;
pub mod cancellation;
pub mod catalog;
pub mod closed_form;
pub mod composed;
pub mod geometry;
pub mod sign;
pub mod sinfty;
pub mod verify;

pub use calibration::{calibration_constant, calibration_sweep, calibration_table, CalibrationReport};
pub use cancellation::{eval_cancellation_combo, CancelKind};
pub use catalog::SymbolId;
pub use closed_form::{eval_closed_form_at_output, eval_closed_form, eval_phase, rotational_derivative};
pub use composed::{eval_composed_symbol, operator};
pub use geometry::Interaction;
pub use sign::{pair_label, Sign, SignIndex, ALL_PAIRS, PAIRS};
pub use sinfty::{admissible, estimate_sinfty_norm, SINFTY_MAX_RESOLUTION};
pub use verify::{
    cancellation_sweep, identity_suite, sinfty_sweep, CancellationRow, IdentityCheck, SinftyRow, IDENTITY_TOL,
};

use crate::bilinear_engine::BilinearSymbol;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which normalization a catalog symbol is evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// Closed forms in the continuum Fourier normalization.
    ClosedForm,
    /// Symbols of the operators as composed on the discrete grid; these are
    /// the ones the dynamics use.
    Composed,
    /// Closed forms multiplied by their calibration constant: the composed
    /// values at closed-form cost, used to tabulate dense kernels.
    Calibrated,
}

/// A catalog symbol usable by the bilinear engine. Singular configurations
/// evaluate to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogSymbol {
    pub id: SymbolId,
    pub convention: Convention,
}

impl CatalogSymbol {
    pub fn composed(id: SymbolId) -> Self {
        CatalogSymbol {
            id,
            convention: Convention::Composed,
        }
    }

    pub fn closed_form(id: SymbolId) -> Self {
        CatalogSymbol {
            id,
            convention: Convention::ClosedForm,
        }
    }

    pub fn calibrated(id: SymbolId) -> Self {
        CatalogSymbol {
            id,
            convention: Convention::Calibrated,
        }
    }
}

impl BilinearSymbol for CatalogSymbol {
    fn eval(&self, zeta: [f64; 2], eta: [f64; 2]) -> Complex64 {
        match Interaction::new(zeta, eta) {
            Ok(g) => match self.convention {
                Convention::ClosedForm => closed_form::closed_value(self.id, &g),
                Convention::Composed => composed::composed_value(self.id, &g),
                Convention::Calibrated => {
                    closed_form::closed_value(self.id, &g) * calibration_constant(self.id)
                }
            },
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    fn cache_key(&self) -> Option<String> {
        let tag = match self.convention {
            Convention::ClosedForm => "closed",
            Convention::Composed => "composed",
            Convention::Calibrated => "calibrated",
        };
        Some(format!("{tag}:{}", self.id.label()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibrated_matches_composed() {
        let pairs = [([0.3, -0.7], [1.1, 0.4]), ([-2.0, 0.5], [0.25, 1.5]), ([0.9, 0.1], [0.8, 0.3])];
        for id in SymbolId::all() {
            if matches!(id, SymbolId::NormalFormRotated(..)) {
                continue;
            }
            for (z, e) in pairs {
                let a = CatalogSymbol::calibrated(id).eval(z, e);
                let b = CatalogSymbol::composed(id).eval(z, e);
                assert!((a - b).norm() <= 1e-11 * b.norm().max(1e-300), "{id}: {a} vs {b}");
            }
        }
    }
}
