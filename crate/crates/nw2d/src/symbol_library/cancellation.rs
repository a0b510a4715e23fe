//! Combinations of normal-form symbols whose leading terms cancel when one
//! input frequency is much smaller than the output.

use super::catalog::SymbolId;
use super::closed_form::eval_closed_form;
use super::geometry::{neg, sub};
use super::sign::Sign::{Minus, Plus};
use crate::error::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which cancellation combination to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CancelKind {
    /// `a₊₊(ξ−η, η) + a₊₊(η, ξ−η) + conj(a₊₋(ξ, −η))`; vanishes to first
    /// order in `|η|/|ξ|`.
    A,
    /// `a⁴₊₊(ξ−η, η) − conj(a⁴₊₋(ξ, −η))`; vanishes to second order.
    A4,
    /// `a⁴₊₊(ξ−η, η) − conj(a⁴₊₊(ξ, −η))`. Kept to show that pairing the
    /// top correction with the same-sign branch leaves a first-order term.
    A4SameBranch,
}

/// Evaluates a cancellation combination at output `xi` and small input `eta`.
pub fn eval_cancellation_combo(kind: CancelKind, xi: [f64; 2], eta: [f64; 2]) -> Result<Complex64> {
    let zeta = sub(xi, eta);
    let nf = |a, b| SymbolId::NormalForm(a, b);
    let top = |a, b| SymbolId::TopCorrection(a, b);
    Ok(match kind {
        CancelKind::A => {
            eval_closed_form(nf(Plus, Plus), zeta, eta)?
                + eval_closed_form(nf(Plus, Plus), eta, zeta)?
                + eval_closed_form(nf(Plus, Minus), xi, neg(eta))?.conj()
        }
        CancelKind::A4 => {
            eval_closed_form(top(Plus, Plus), zeta, eta)?
                - eval_closed_form(top(Plus, Minus), xi, neg(eta))?.conj()
        }
        CancelKind::A4SameBranch => {
            eval_closed_form(top(Plus, Plus), zeta, eta)?
                - eval_closed_form(top(Plus, Plus), xi, neg(eta))?.conj()
        }
    })
}
