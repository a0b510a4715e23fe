use nw2d::elasto_system::{DiagonalState, Formulation};
use nw2d::evolution::{
    evolve, evolve_recipe, load_state, save_state, step_diagonal, DiagnosticLevel, DiagnosticsConfig,
    StepperConfig,
};
use nw2d::initial_data::{random_diagonal_state, DataRecipe};
use nw2d::spectral_core::multiplier::half_wave;
use nw2d::spectral_core::DealiasRule;
use nw2d::Grid;

fn quiet() -> DiagnosticsConfig {
    DiagnosticsConfig {
        level: DiagnosticLevel::None,
        ..DiagnosticsConfig::default()
    }
}

fn run_to(s: &DiagonalState, dt: f64, t_end: f64) -> DiagonalState {
    let cfg = StepperConfig {
        dt,
        t_end,
        checkpoint_every: 1_000_000,
        ..StepperConfig::default()
    };
    evolve(s, &cfg, &quiet(), None).unwrap().final_state().clone()
}

#[test]
fn linear_flow_is_exact_in_diagonal_form() {
    let grid = Grid::new(32, 32.0).unwrap();
    let s = random_diagonal_state(grid, 11, 0.05);
    let cfg = StepperConfig {
        dt: 0.3,
        t_end: 6.0,
        nonlinear: false,
        ..StepperConfig::default()
    };
    let end = evolve(&s, &cfg, &quiet(), None).unwrap().final_state().clone();
    let expected = half_wave(6.0, true, &s.phi);
    assert!(end.phi.rel_distance(&expected, 1e-300) < 1e-12);
    assert!(end.phi0.rel_distance(&s.phi0, 1e-300) < 1e-14);
    assert!((end.t - 6.0).abs() < 1e-12);
}

#[test]
fn linear_flow_in_potential_form_tracks_the_exact_solution() {
    let grid = Grid::new(32, 32.0).unwrap();
    let s = random_diagonal_state(grid, 12, 0.05);
    let cfg = StepperConfig {
        dt: 0.02,
        t_end: 4.0,
        nonlinear: false,
        formulation: Formulation::Potential,
        ..StepperConfig::default()
    };
    let end = evolve(&s, &cfg, &quiet(), None).unwrap().final_state().clone();
    let expected = half_wave(4.0, true, &s.phi);
    assert!(end.phi.rel_distance(&expected, 1e-300) < 1e-5);
}

#[test]
fn zero_state_stays_zero() {
    let grid = Grid::new(16, 16.0).unwrap();
    let s = DiagonalState::new(
        0.0,
        nw2d::SpectralField::zeros(grid),
        nw2d::SpectralField::zeros(grid),
    )
    .unwrap();
    let end = run_to(&s, 0.1, 2.0);
    assert!(end.phi.is_zero() && end.phi0.is_zero());
}

#[test]
fn diagonal_stepper_converges_at_fourth_order() {
    let grid = Grid::new(32, 32.0).unwrap();
    let s = random_diagonal_state(grid, 5, 0.1);
    let coarse = run_to(&s, 0.2, 2.0);
    let mid = run_to(&s, 0.1, 2.0);
    let fine = run_to(&s, 0.05, 2.0);
    let ratio = coarse.distance(&mid) / mid.distance(&fine);
    println!("richardson ratio {ratio}");
    assert!(ratio > 13.0 && ratio < 19.0, "ratio {ratio}");
}

#[test]
fn formulations_agree_on_smooth_data() {
    let grid = Grid::new(64, 64.0).unwrap();
    let recipe = DataRecipe::packet(1e-2, 8.0, 3);
    let cfg = StepperConfig {
        dt: 0.025,
        t_end: 10.0,
        checkpoint_every: 100,
        formulation: Formulation::Both,
        ..StepperConfig::default()
    };
    let traj = evolve_recipe(&recipe, grid, 1e-13, &cfg, &DiagnosticsConfig::default(), None).unwrap();
    let last = traj.diagnostics().last().copied().unwrap().clone();
    let gap = last.formulation_gap.unwrap();
    println!("formulation gap {gap:e}, wave norm {:e}", last.wave_l2);
    assert!((last.t - 10.0).abs() < 1e-9);
    assert!(gap <= 1e-8, "gap {gap:e}");
}

#[test]
fn horizon_guard_rejects_long_runs() {
    let grid = Grid::new(16, 16.0).unwrap();
    let s = random_diagonal_state(grid, 1, 0.01);
    let cfg = StepperConfig {
        t_end: 100.0,
        ..StepperConfig::default()
    };
    assert!(evolve(&s, &cfg, &quiet(), None).is_err());
    let allowed = StepperConfig {
        t_end: 100.0,
        dt: 0.5,
        override_horizon: true,
        checkpoint_every: 1000,
        nonlinear: false,
        ..StepperConfig::default()
    };
    assert!(evolve(&s, &allowed, &quiet(), None).is_ok());
}

#[test]
fn potential_stepping_rejects_unstable_steps() {
    let grid = Grid::new(64, 16.0).unwrap();
    let s = random_diagonal_state(grid, 1, 0.01);
    let cfg = StepperConfig {
        dt: 0.5,
        t_end: 1.0,
        formulation: Formulation::Potential,
        ..StepperConfig::default()
    };
    assert!(evolve(&s, &cfg, &quiet(), None).is_err());
}

#[test]
fn blow_up_is_reported() {
    let grid = Grid::new(16, 16.0).unwrap();
    let s = random_diagonal_state(grid, 2, 0.01);
    let mut bad = s.clone();
    bad.phi.coeffs_mut()[3].re = f64::NAN;
    let err = step_diagonal(&bad, 0.1, DealiasRule::TwoThirds, true).unwrap_err();
    assert!(matches!(err, nw2d::Error::BlowUp { .. }), "{err:?}");
}

#[test]
fn checkpoints_round_trip_and_are_written() {
    let grid = Grid::new(16, 16.0).unwrap();
    let s = random_diagonal_state(grid, 4, 0.01);
    let dir = tempfile::tempdir().unwrap();
    let cfg = StepperConfig {
        dt: 0.1,
        t_end: 1.0,
        checkpoint_every: 5,
        ..StepperConfig::default()
    };
    let traj = evolve(&s, &cfg, &DiagnosticsConfig::default(), Some(dir.path())).unwrap();
    assert_eq!(traj.checkpoints.len(), 3);
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 3);
    let path = dir.path().join("state.nw2d");
    save_state(&path, traj.final_state()).unwrap();
    let back = load_state(&path).unwrap();
    assert_eq!(&back, traj.final_state());
}
