use nw2d::symbol_library::{
    admissible, calibration_sweep, calibration_table, cancellation_sweep, estimate_sinfty_norm, identity_suite,
    CalibrationReport, CancelKind, CancellationRow, CatalogSymbol, Sign, SymbolId,
};
use std::f64::consts::PI;

#[test]
fn identity_suite_passes_on_a_fresh_seed() {
    let checks = identity_suite(200, 17);
    assert!(checks.len() > 20);
    for c in &checks {
        assert!(c.passed(), "{} {}: {:e}", c.family, c.check, c.max_residual);
    }
}

#[test]
fn calibration_table_lists_every_composed_family_once() {
    let table = calibration_table();
    let mut labels: Vec<&str> = table.iter().map(|(l, _)| l.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    assert_eq!(labels.len(), table.len());
    for (label, c) in &table {
        let expected = [2.0 * PI, -2.0 * PI, 8.0 * PI * PI];
        assert!(expected.contains(c), "{label}: {c}");
    }
    let get = |l: &str| table.iter().find(|(k, _)| k == l).map(|(_, v)| *v);
    assert_eq!(get("energy_mixed"), Some(-2.0 * PI));
    assert_eq!(get("constraint_curl_curl"), Some(2.0 * PI));
}

#[test]
fn top_correction_cancels_only_against_the_opposite_branch() {
    let deltas = [1e-1, 1e-2, 1e-3];
    let paired = cancellation_sweep(CancelKind::A4, &deltas, 40, 9).unwrap();
    let same = cancellation_sweep(CancelKind::A4SameBranch, &deltas, 40, 9).unwrap();
    let spread = |rows: &[CancellationRow]| {
        let v: Vec<f64> = rows.iter().map(|r| r.max_normalized).collect();
        v.iter().cloned().fold(0.0, f64::max) / v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    assert!(spread(&paired) < 1.5);
    // The same-branch combination leaves a first-order term, so its
    // second-order normalization grows like 1/δ.
    assert!(spread(&same) > 50.0);
}

#[test]
fn sinfty_estimate_follows_symbol_homogeneity() {
    // The normal-form symbol is homogeneous of degree one, so moving every
    // shell up by two octaves multiplies the estimate by four.
    let symbol = CatalogSymbol::calibrated(SymbolId::NormalForm(Sign::Plus, Sign::Plus));
    let base = estimate_sinfty_norm(&symbol, 0, 0, -1, 16).unwrap();
    let dilated = estimate_sinfty_norm(&symbol, 2, 2, 1, 16).unwrap();
    assert!(base > 0.0);
    assert!((4.0 * base - dilated).abs() <= 1e-10 * dilated, "{base} vs {dilated}");
}

#[test]
fn sinfty_estimate_skips_inadmissible_triples() {
    assert!(!admissible(5, 0, 0));
    let symbol = CatalogSymbol::calibrated(SymbolId::NormalForm(Sign::Plus, Sign::Plus));
    assert_eq!(estimate_sinfty_norm(&symbol, 5, 0, 0, 8).unwrap(), 0.0);
    assert!(estimate_sinfty_norm(&symbol, 0, 0, 0, 2).is_err());
}

#[test]
fn calibration_reports_serialize_their_symbol_label() {
    let r: CalibrationReport = calibration_sweep(SymbolId::EnergyMixed, 50, 4);
    assert_eq!(r.symbol, "energy_mixed");
    assert!(r.spread < 1e-10);
}
