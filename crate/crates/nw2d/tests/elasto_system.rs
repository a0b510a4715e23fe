use nw2d::elasto_system::*;
use nw2d::initial_data::{random_diagonal_state, random_potential_state};
use nw2d::spectral_core::{make_grid, SpectralField};
use num_complex::Complex64;
use std::f64::consts::PI;

#[test]
fn zero_state_gives_zero_rhs() {
    let grid = make_grid(16, 2.0 * PI).unwrap();
    let r = rhs_potential(&PotentialState::zeros(grid)).unwrap();
    assert!(r.n0.is_zero() && r.n1.is_zero() && r.n2.is_zero());
    let d = rhs_diagonal(&DiagonalState::zeros(grid), RhsPath::Symbolic).unwrap();
    assert!(d.curl.is_zero() && d.wave.is_zero());
    assert!(constraint_rhs(&DiagonalState::zeros(grid)).unwrap().is_zero());
}

#[test]
fn one_dimensional_velocity_potential_has_no_nonlinearity() {
    let grid = make_grid(16, 2.0 * PI).unwrap();
    let mut s = PotentialState::zeros(grid);
    s.psi = SpectralField::from_function(grid, |x, _| Complex64::new(x.sin(), 0.0)).unwrap();
    let r = rhs_potential(&s).unwrap();
    assert!(r.n0.l2_norm() < 1e-14 && r.n1.l2_norm() < 1e-14 && r.n2.l2_norm() < 1e-14);
}

#[test]
fn conversions_are_inverse() {
    let grid = make_grid(32, 20.0).unwrap();
    let p = random_potential_state(grid, 3, 1.0);
    let back = to_potential(&to_diagonal(&p));
    for (a, b) in [(&p.psi, &back.psi), (&p.g1, &back.g1), (&p.g2, &back.g2)] {
        assert!((a - b).l2_norm() <= 1e-12 * a.l2_norm());
    }
    let d = random_diagonal_state(grid, 4, 1.0);
    let back = to_diagonal(&to_potential(&d));
    assert!(back.distance(&d) <= 1e-12 * d.norm());
}

#[test]
fn velocity_only_state_maps_to_wave_variable() {
    let grid = make_grid(16, 2.0 * PI).unwrap();
    let mut p = PotentialState::zeros(grid);
    p.psi = random_potential_state(grid, 1, 1.0).psi;
    let d = to_diagonal(&p);
    assert!(d.phi0.is_zero());
    assert!((&d.phi - &p.psi).l2_norm() == 0.0);
}

#[test]
fn single_mode_deformation_potential() {
    // G₁ = sin x₂: the curl variable is −R₂G₁, so at (0, ±1) its coefficient
    // is −(±i)·Ĝ₁(0, ±1).
    let grid = make_grid(16, 2.0 * PI).unwrap();
    let mut p = PotentialState::zeros(grid);
    p.g1 = SpectralField::from_function(grid, |_, y| Complex64::new(y.sin(), 0.0)).unwrap();
    let d = to_diagonal(&p);
    for s in [1i64, -1] {
        let expect = -Complex64::new(0.0, s as f64) * p.g1.get(0, s);
        assert!((d.phi0.get(0, s) - expect).norm() < 1e-15);
    }
}

#[test]
fn recovery_and_symbolic_paths_agree() {
    let grid = make_grid(64, 64.0).unwrap();
    let s = random_diagonal_state(grid, 11, 1e-2);
    let a = rhs_diagonal(&s, RhsPath::Recovery).unwrap();
    let b = rhs_diagonal(&s, RhsPath::Symbolic).unwrap();
    let ec = (&a.curl - &b.curl).l2_norm() / a.curl.l2_norm();
    let ew = (&a.wave - &b.wave).l2_norm() / a.wave.l2_norm();
    assert!(ec <= 1e-10 && ew <= 1e-10, "curl {ec:e} wave {ew:e}");
    assert!(a.curl.max_imag() <= 1e-12 * a.curl.linf_norm());
}

#[test]
fn constraint_paths_agree_and_are_real() {
    let grid = make_grid(64, 64.0).unwrap();
    let s = random_diagonal_state(grid, 12, 1e-2);
    let a = constraint_rhs(&s).unwrap();
    let b = constraint_rhs_symbolic(&s).unwrap();
    assert!((&a - &b).l2_norm() <= 1e-10 * a.l2_norm());
    assert!(a.max_imag() <= 1e-12 * a.linf_norm());
}

#[test]
fn single_mode_wave_has_no_constraint_forcing() {
    let grid = make_grid(32, 2.0 * PI).unwrap();
    let s = DiagonalState::new(
        0.0,
        SpectralField::zeros(grid),
        SpectralField::mode(grid, 2, 3, Complex64::new(0.3, -0.1)),
    )
    .unwrap();
    assert!(constraint_rhs(&s).unwrap().l2_norm() < 1e-15);
}

#[test]
fn quadratic_homogeneity() {
    let grid = make_grid(32, 32.0).unwrap();
    let s = random_potential_state(grid, 5, 0.1);
    let a = rhs_potential(&s).unwrap();
    let b = rhs_potential(&s.scale(3.0)).unwrap();
    for (x, y) in [(&a.n0, &b.n0), (&a.n1, &b.n1), (&a.n2, &b.n2)] {
        assert!((&x.scale(9.0) - y).l2_norm() <= 1e-13 * y.l2_norm());
    }
}

#[test]
fn reconstructed_fields_are_divergence_free() {
    let grid = make_grid(32, 32.0).unwrap();
    let s = random_potential_state(grid, 6, 1.0);
    let f = reconstruct_fields(&s);
    for r in f.divergence_residuals() {
        assert!(r <= 1e-12);
    }
    let mut p = PotentialState::zeros(make_grid(16, 2.0 * PI).unwrap());
    p.psi = SpectralField::from_function(*p.grid(), |x, _| Complex64::new(x.sin(), 0.0)).unwrap();
    let v = reconstruct_fields(&p).v;
    assert!(v[0].l2_norm() < 1e-14);
    let cos = SpectralField::from_function(*p.grid(), |x, _| Complex64::new(x.cos(), 0.0)).unwrap();
    assert!((&v[1] - &cos).l2_norm() < 1e-13);
}

#[test]
fn shear_flow_has_zero_pressure() {
    let grid = make_grid(16, 2.0 * PI).unwrap();
    let mut s = PotentialState::zeros(grid);
    // v = (−sin x₂, 0) comes from ψ = −cos x₂.
    s.psi = SpectralField::from_function(grid, |_, y| Complex64::new(-y.cos(), 0.0)).unwrap();
    let f = reconstruct_fields(&s);
    let sin = SpectralField::from_function(grid, |_, y| Complex64::new(-y.sin(), 0.0)).unwrap();
    assert!((&f.v[0] - &sin).l2_norm() < 1e-13);
    assert!(pressure(&f).unwrap().l2_norm() < 1e-14);
}

#[test]
fn pressure_solves_poisson_equation() {
    let grid = make_grid(32, 32.0).unwrap();
    let f = reconstruct_fields(&random_potential_state(grid, 8, 1.0));
    let p = pressure(&f).unwrap();
    let forcing = momentum_forcing(&f).unwrap();
    let lap = p.map_symbol(|xi| Complex64::new(-(xi[0] * xi[0] + xi[1] * xi[1]), 0.0));
    let div = forcing[0].map_symbol(|xi| Complex64::new(0.0, xi[0]))
        + forcing[1].map_symbol(|xi| Complex64::new(0.0, xi[1]));
    assert!((&lap - &div).l2_norm() <= 1e-12 * div.l2_norm());
}

#[test]
fn derivation_identities_hold_to_roundoff() {
    let eps = 1e-2;
    let grid = make_grid(128, 128.0).unwrap();
    let s = random_potential_state(grid, 9, eps);
    for r in derivation_residuals(&s).unwrap() {
        assert!(r.residual <= 1e-10 * eps * eps, "{}: {:e}", r.name, r.residual);
    }
}

#[test]
fn corrupted_rhs_is_detected() {
    let grid = make_grid(64, 64.0).unwrap();
    let s = random_potential_state(grid, 10, 1e-2);
    let mut r = rhs_potential(&s).unwrap();
    r.n1 = -&r.n1;
    let worst = derivation_residuals_with(&s, &r)
        .unwrap()
        .into_iter()
        .map(|r| r.relative)
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst}");
}
