//! Subcommand implementations.

use crate::output::{content_hash, number, write_json, write_records, write_table};
use crate::{Context, DecayArgs, DerivationArgs, Failure, NormsArgs, ScatterArgs, SymbolArgs};
use nw2d::diagnostics::{decay_fit, norm, state_norm, NormKind, Target, DENSE_GRID_N};
use nw2d::elasto_system::{derivation_residuals_with, rhs_potential, DiagonalState};
use nw2d::evolution::{evolve, load_state, CheckpointDiagnostics, DiagnosticLevel, DiagnosticsConfig, Trajectory};
use nw2d::initial_data::{constrained_state, make_phi, random_potential_state};
use nw2d::scattering_normalform::{scattering_sequence, NormalFormOps};
use nw2d::spectral_core::multiplier::half_wave;
use nw2d::symbol_library::{calibration_sweep, calibration_table, identity_suite, SymbolId};
use nw2d::Grid;
use serde_json::json;
use std::path::{Path, PathBuf};

/// Largest spread of `composed / closed form` accepted per family.
const CALIBRATION_TOL: f64 = 1e-10;

/// Bound on derivation residuals, relative to `ε²`.
const DERIVATION_TOL: f64 = 1e-10;

fn create_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Config(format!("{}: {e}", dir.display())))
}

fn integrate(ctx: &Context, diag: &DiagnosticsConfig, fields: Option<&Path>) -> Result<Trajectory, Failure> {
    let grid = ctx.config.grid()?;
    let (initial, _) = constrained_state(&ctx.config.recipe(), grid, ctx.config.tolerances.constraint)?;
    Ok(evolve(&initial, &ctx.config.stepper(ctx.override_horizon), diag, fields)?)
}

pub fn run(ctx: &Context) -> Result<(), Failure> {
    create_dir(&ctx.out)?;
    let fields = ctx.out.join("fields");
    let diag = ctx.config.diagnostics_config();
    let traj = integrate(ctx, &diag, Some(&fields))?;

    let rows: Vec<Vec<f64>> = traj
        .checkpoints
        .iter()
        .filter_map(|c| c.diagnostics.as_ref().map(CheckpointDiagnostics::row))
        .collect();
    write_table(&ctx.out.join("diag.csv"), &CheckpointDiagnostics::columns(), rows)?;

    let toml = ctx.config.to_toml();
    let (eps, eps1) = ctx.config.smallness();
    let calibration: serde_json::Map<String, serde_json::Value> =
        calibration_table().into_iter().map(|(k, v)| (k, json!(v))).collect();
    let manifest = json!({
        "config": ctx.config,
        "input_hash": content_hash(toml.as_bytes()),
        "threads": ctx.threads,
        "override_horizon": ctx.override_horizon,
        "wraparound_horizon": traj.grid.wraparound_horizon(),
        "steps": ctx.config.stepper(ctx.override_horizon).steps(),
        "checkpoints": traj.checkpoints.len(),
        "smallness": { "epsilon": eps, "epsilon1": eps1 },
        "calibration": calibration,
        "version": env!("CARGO_PKG_VERSION"),
    });
    write_json(&ctx.out.join("run.json"), &manifest)?;

    let last = traj.final_state();
    println!(
        "run: {} checkpoints to t = {}, final |Phi|_L2 = {}, artifacts in {}",
        traj.checkpoints.len(),
        last.t,
        number(last.phi.l2_norm()),
        ctx.out.display()
    );
    Ok(())
}

pub fn verify_symbols(ctx: &Context, args: &SymbolArgs) -> Result<(), Failure> {
    create_dir(&ctx.out)?;
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for c in identity_suite(args.samples, args.seed) {
        if !c.passed() {
            failed.push(format!("{} {}", c.family, c.check));
        }
        rows.push(vec![c.family, c.check, number(c.max_residual), number(c.tolerance), c.samples.to_string()]);
    }
    for id in SymbolId::all().into_iter().filter(|id| !matches!(id, SymbolId::NormalFormRotated(..))) {
        let r = calibration_sweep(id, args.samples, args.seed);
        if r.spread > CALIBRATION_TOL {
            failed.push(format!("{} calibration", r.symbol));
        }
        rows.push(vec![r.symbol, "calibration_spread".into(), number(r.spread), number(CALIBRATION_TOL), r.samples.to_string()]);
    }
    let total = rows.len();
    write_records(&ctx.out.join("symbols.csv"), &["symbol", "check", "value", "tolerance", "samples"], rows)?;
    println!("verify-symbols: {} of {total} checks passed", total - failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(failed.join(", ")))
    }
}

pub fn verify_derivation(ctx: &Context, args: &DerivationArgs) -> Result<(), Failure> {
    create_dir(&ctx.out)?;
    let grid = ctx.config.grid()?;
    let eps = ctx.config.recipe.amplitude;
    let bound = DERIVATION_TOL * eps * eps;
    let mut rows = Vec::new();
    let (mut worst, mut worst_relative) = (0.0f64, 0.0f64);
    for seed in 0..args.states {
        let s = random_potential_state(grid, ctx.config.seed + seed, eps);
        let mut rhs = rhs_potential(&s)?;
        if args.perturb {
            rhs.n1 = rhs.n1.scale(-1.0);
        }
        for r in derivation_residuals_with(&s, &rhs)? {
            worst = worst.max(r.residual);
            worst_relative = worst_relative.max(r.relative);
            rows.push(vec![seed.to_string(), r.name, number(r.residual), number(r.relative)]);
        }
    }
    write_records(&ctx.out.join("derivation.csv"), &["state", "identity", "residual", "relative"], rows)?;
    println!(
        "verify-derivation: worst residual {} (bound {}), worst relative {}",
        number(worst),
        number(bound),
        number(worst_relative)
    );
    if worst <= bound {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("derivation residual {worst:e} exceeds {bound:e}")))
    }
}

pub fn decay(ctx: &Context, args: &DecayArgs) -> Result<(), Failure> {
    let grid = ctx.config.grid()?;
    let horizon = grid.wraparound_horizon();
    if args.t_max > horizon && !ctx.override_horizon {
        return Err(Failure::Config(format!(
            "decay window ends at {} beyond the wraparound horizon {horizon}; waves would re-enter the cell",
            args.t_max
        )));
    }
    if args.samples < 2 || !(args.t_min > 0.0 && args.t_max > args.t_min) {
        return Err(Failure::Config("decay window needs 0 < t_min < t_max and at least two samples".into()));
    }
    create_dir(&ctx.out)?;
    let n1 = ctx.config.regularity.n1;
    let phi = make_phi(&ctx.config.recipe(), grid)?;
    let step = args.t_max / args.samples as f64;
    let rows: Vec<Vec<f64>> = (1..=args.samples)
        .map(|i| {
            let t = step * i as f64;
            let u = half_wave(t, true, &phi);
            vec![t, norm(&u, NormKind::Zprime { n1 }), u.linf_norm()]
        })
        .collect();
    let series: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
    let fit = decay_fit(&series, [args.t_min, args.t_max])?;
    write_table(&ctx.out.join("decay.csv"), &["t", "zprime", "linf"], rows)?;
    println!(
        "decay: Z' slope {} over [{}, {}] from {} samples, max log residual {}",
        number(fit.slope),
        args.t_min,
        args.t_max,
        fit.points,
        number(fit.max_residual)
    );
    match args.expect_slope {
        Some(target) if (fit.slope - target).abs() > args.slope_tol => Err(Failure::Assertion(format!(
            "slope {:.4} is not within {} of {target}",
            fit.slope, args.slope_tol
        ))),
        _ => Ok(()),
    }
}

/// Checkpoints stored under `dir/fields`, ordered by time.
fn load_run(dir: &Path) -> Result<Vec<DiagonalState>, Failure> {
    let fields = dir.join("fields");
    let entries = std::fs::read_dir(&fields).map_err(|e| Failure::Config(format!("{}: {e}", fields.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "nw2d"))
        .collect();
    paths.sort();
    let mut states = paths.iter().map(|p| load_state(p)).collect::<nw2d::Result<Vec<_>>>()?;
    states.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(states)
}

fn on_multiple(t: f64, every: f64) -> bool {
    let k = (t / every).round();
    (t - k * every).abs() <= 1e-9 * every.max(1.0)
}

pub fn scatter(ctx: &Context, args: &ScatterArgs) -> Result<(), Failure> {
    if !(args.every > 0.0) {
        return Err(Failure::Config("--every must be positive".into()));
    }
    let states = match &args.from {
        Some(dir) => load_run(dir)?,
        None => {
            let diag = DiagnosticsConfig {
                level: DiagnosticLevel::None,
                ..ctx.config.diagnostics_config()
            };
            integrate(ctx, &diag, None)?.checkpoints.into_iter().map(|c| c.state).collect()
        }
    };
    let picked: Vec<DiagonalState> = states
        .into_iter()
        .filter(|s| s.t >= args.t_min - 1e-9 && on_multiple(s.t, args.every))
        .collect();
    let length = picked.first().map_or(ctx.config.grid.length, |s| s.grid().length());
    let ops = NormalFormOps::new(Grid::new(DENSE_GRID_N, length)?)?;
    let seq = scattering_sequence(&ops, &picked, ctx.config.regularity.n1)?;
    create_dir(&ctx.out)?;
    write_table(&ctx.out.join("scatter.csv"), &["t", "z_distance_to_last"], seq.iter().map(|&(t, z)| vec![t, z]))?;
    for (t, z) in &seq {
        println!("scatter: t = {t:8.3}  Z distance to last {}", number(*z));
    }
    if !args.check {
        return Ok(());
    }
    let body = &seq[..seq.len() - 1];
    let monotone = body.windows(2).all(|w| w[1].1 <= 1.05 * w[0].1);
    let drop = 1.0 - body[body.len() - 1].1 / body[0].1;
    if monotone && drop >= 0.3 {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("monotone {monotone}, decrease {:.0}%", 100.0 * drop)))
    }
}

pub fn norms(ctx: &Context, args: &NormsArgs) -> Result<(), Failure> {
    let state = match &args.state {
        Some(path) => load_state(path)?,
        None => constrained_state(&ctx.config.recipe(), ctx.config.grid()?, ctx.config.tolerances.constraint)?.0,
    };
    let reg = ctx.config.regularity;
    let kinds = [
        NormKind::L2,
        NormKind::Linf,
        NormKind::Sobolev { s: reg.n0 as f64 },
        NormKind::Z { n1: reg.n1 },
        NormKind::Zprime { n1: reg.n1 },
        NormKind::Zprime1 { n1: reg.n1 },
        NormKind::X { n0: reg.n0, n1: reg.n1 },
    ];
    println!("t,unknown,norm,value");
    for (target, label) in [(Target::Wave, "wave"), (Target::Curl, "curl")] {
        for kind in kinds {
            let v = state_norm(&state, target, kind)?;
            println!("{},{label},{},{}", number(state.t), kind.label(), number(v));
        }
    }
    Ok(())
}
