use num_complex::Complex64;
use nw2d::evolution::step_diagonal;
use nw2d::initial_data::{random_diagonal_state, random_scaled};
use nw2d::scattering_normalform::{normal_form, NormalFormOps};
use nw2d::spectral_core::multiplier::half_wave;
use nw2d::spectral_core::{dealias, shell_weight, DealiasRule};
use nw2d::symbol_library::{calibration_constant, eval_closed_form, eval_composed_symbol, SymbolId};
use nw2d::{Grid, SpectralField};
use proptest::prelude::*;
use std::sync::OnceLock;

fn grid32() -> Grid {
    Grid::new(32, 32.0).unwrap()
}

fn ops32() -> &'static NormalFormOps {
    static OPS: OnceLock<NormalFormOps> = OnceLock::new();
    OPS.get_or_init(|| NormalFormOps::new(grid32()).unwrap())
}

fn rule() -> impl Strategy<Value = DealiasRule> {
    prop_oneof![Just(DealiasRule::TwoThirds), Just(DealiasRule::Half)]
}

fn frequency() -> impl Strategy<Value = [f64; 2]> {
    (0.3f64..3.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, a)| [r * a.cos(), r * a.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shell_weights_sum_to_one(r in 1e-2f64..1e2) {
        let total: f64 = (-12..=12).map(|k| shell_weight(k, r)).sum();
        prop_assert!((total - 1.0).abs() < 1e-14, "{total}");
    }

    #[test]
    fn shell_weights_lie_in_the_unit_interval(k in -6i32..6, r in 0.0f64..100.0) {
        let w = shell_weight(k, r);
        prop_assert!((0.0..=1.0).contains(&w));
    }

    #[test]
    fn dealiasing_is_idempotent(seed in 0u64..1000, rule in rule()) {
        let f = random_scaled(grid32(), seed, 1.0);
        let once = dealias(&f, rule);
        prop_assert_eq!(dealias(&once, rule), once);
    }

    #[test]
    fn fft_round_trip_is_exact_to_rounding(seed in 0u64..1000) {
        let f = random_scaled(grid32(), seed, 1.0);
        let back = SpectralField::from_physical(grid32(), &f.to_physical()).unwrap();
        prop_assert!(back.rel_distance(&f, 0.0) < 1e-14);
    }

    #[test]
    fn half_wave_is_unitary_and_invertible(seed in 0u64..1000, t in -50.0f64..50.0) {
        let f = random_scaled(grid32(), seed, 1.0);
        let u = half_wave(t, true, &f);
        prop_assert!((u.l2_norm() - f.l2_norm()).abs() <= 1e-13 * f.l2_norm());
        prop_assert!(half_wave(t, false, &u).rel_distance(&f, 0.0) < 1e-14);
    }

    #[test]
    fn step_keeps_the_curl_variable_real(seed in 0u64..1000, dt in 0.01f64..0.5) {
        let s = random_diagonal_state(grid32(), seed, 5e-2);
        let next = step_diagonal(&s, dt, DealiasRule::TwoThirds, true).unwrap();
        prop_assert!(next.phi0.max_imag() <= 1e-15 * next.phi0.linf_norm().max(1e-300));
        prop_assert!((next.t - dt).abs() < 1e-15);
    }

    #[test]
    fn linear_step_is_the_half_wave_flow(seed in 0u64..1000, dt in 0.01f64..2.0) {
        let s = random_diagonal_state(grid32(), seed, 5e-2);
        let next = step_diagonal(&s, dt, DealiasRule::TwoThirds, false).unwrap();
        prop_assert!(next.phi.rel_distance(&half_wave(dt, true, &s.phi), 0.0) < 1e-13);
        prop_assert!(next.phi0.rel_distance(&s.phi0, 0.0) < 1e-13);
    }

    #[test]
    fn normal_form_correction_is_quadratic(seed in 0u64..200, lambda in 0.1f64..4.0) {
        let s = random_diagonal_state(grid32(), seed, 1e-2);
        let base = &normal_form(ops32(), &s).unwrap() - &s.phi;
        let scaled_state = s.scale(lambda);
        let scaled = &normal_form(ops32(), &scaled_state).unwrap() - &scaled_state.phi;
        prop_assert!(scaled.rel_distance(&base.scale(lambda * lambda), 0.0) < 1e-12);
    }

    #[test]
    fn composed_symbols_match_scaled_closed_forms(zeta in frequency(), eta in frequency(), pick in 0usize..1000) {
        let sum = [zeta[0] + eta[0], zeta[1] + eta[1]];
        prop_assume!(sum[0].hypot(sum[1]) > 0.3);
        prop_assume!((zeta[0] * eta[1] - zeta[1] * eta[0]).abs() > 1e-2);
        let ids: Vec<SymbolId> = SymbolId::all()
            .into_iter()
            .filter(|id| !matches!(id, SymbolId::NormalFormRotated(..)))
            .collect();
        let id = ids[pick % ids.len()];
        let composed = eval_composed_symbol(id, zeta, eta).unwrap();
        let closed: Complex64 = eval_closed_form(id, zeta, eta).unwrap() * calibration_constant(id);
        let scale = composed.norm().max(closed.norm()).max(1e-12);
        prop_assert!((composed - closed).norm() <= 1e-9 * scale, "{id}: {composed} vs {closed}");
    }
}
