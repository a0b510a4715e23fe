use nw2d::initial_data::*;
use nw2d::spectral_core::{make_grid, SpectralField};
use num_complex::Complex64;

#[test]
fn zero_amplitude_gives_zero_field() {
    let grid = make_grid(64, 128.0).unwrap();
    assert!(make_phi(&DataRecipe::gaussian(0.0, 8.0), grid).unwrap().is_zero());
    let sol = solve_constraint(&SpectralField::zeros(grid), 1e-12, 50).unwrap();
    assert!(sol.phi0.is_zero());
    assert_eq!(sol.iterations, 1);
}

#[test]
fn gaussian_peak_matches_amplitude() {
    let grid = make_grid(128, 128.0).unwrap();
    let phi = make_phi(&DataRecipe::gaussian(1e-2, 8.0), grid).unwrap();
    let peak = phi.linf_norm();
    assert!((peak - 1e-2).abs() <= 1e-3, "{peak}");
    assert!(phi.zero_mode().norm() == 0.0);
}

#[test]
fn single_mode_sum_is_that_mode() {
    let grid = make_grid(32, 32.0).unwrap();
    let recipe = DataRecipe {
        amplitude: 0.05,
        shape: Shape::ModeSum {
            modes: vec![ModeSpec { k: [2, -1], amplitude: [1.0, 0.5] }],
        },
        seed: 0,
    };
    let phi = make_phi(&recipe, grid).unwrap();
    let expect = SpectralField::mode(grid, 2, -1, Complex64::new(0.05, 0.025));
    assert_eq!(phi, expect);
    let sol = solve_constraint(&phi, 1e-14, 50).unwrap();
    assert!(sol.phi0.l2_norm() < 1e-15);
}

#[test]
fn invalid_recipes_are_rejected() {
    let grid = make_grid(64, 64.0).unwrap();
    assert!(make_phi(&DataRecipe::gaussian(0.5, 8.0), grid).is_err());
    assert!(make_phi(&DataRecipe::gaussian(1e-2, 1.0), grid).is_err());
}

#[test]
fn constraint_solve_contracts_quickly() {
    let grid = make_grid(128, 128.0).unwrap();
    let phi = make_phi(&DataRecipe::packet(1e-2, 8.0, 1), grid).unwrap();
    let sol = solve_constraint(&phi, 1e-12, 50).unwrap();
    println!("iterations {} history {:?}", sol.iterations, sol.history);
    assert!(sol.iterations <= 8);
    assert!(sol.residual <= 1e-12);
    assert!(sol.phi0.max_imag() == 0.0 || sol.phi0.max_imag() <= 1e-12 * sol.phi0.linf_norm());
    for w in sol.history.windows(2) {
        assert!(w[1] <= 0.1 * w[0]);
    }
}

#[test]
fn curl_variable_is_quadratic_in_the_data() {
    let grid = make_grid(128, 128.0).unwrap();
    let ratios: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
        .iter()
        .map(|&eps| {
            let phi = make_phi(&DataRecipe::packet(eps, 8.0, 2), grid).unwrap();
            let sol = solve_constraint(&phi, 1e-14, 50).unwrap();
            sol.phi0.l2_norm() / phi.l2_norm().powi(2)
        })
        .collect();
    println!("{ratios:?}");
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!(max <= 1.2 * min);
}

#[test]
fn nonsmall_data_is_reported_as_divergent() {
    let grid = make_grid(64, 64.0).unwrap();
    let phi = random_scaled(grid, 4, 50.0);
    assert!(solve_constraint(&phi, 1e-12, 50).is_err());
}
