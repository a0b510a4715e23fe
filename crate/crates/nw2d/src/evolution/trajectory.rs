use super::stepper::{step_diagonal, step_potential, StepperConfig};
use crate::diagnostics::{
    dense_copy, energy_on, norm, EnergyOptions, EnergyReport, NormKind,
};
use crate::elasto_system::{constraint_residual, to_diagonal, to_potential, DiagonalState, Formulation, PotentialState};
use crate::error::{Error, Result};
use crate::initial_data::{constrained_state, DataRecipe};
use crate::scattering_normalform::NormalFormOps;
use crate::spectral_core::checkpoint::{read_field, write_field};
use crate::spectral_core::Grid;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

/// How much is measured at each checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagnosticLevel {
    /// Nothing beyond the stored state.
    None,
    /// Norms, constraint residual and reality defect.
    Basic,
    /// Basic plus the energy family on the dense-path copy.
    Full,
}

/// Checkpoint diagnostics settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsConfig {
    pub level: DiagnosticLevel,
    pub energy: EnergyOptions,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        DiagnosticsConfig {
            level: DiagnosticLevel::Basic,
            energy: EnergyOptions::default(),
        }
    }
}

/// Values recorded at one checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointDiagnostics {
    pub t: f64,
    pub wave_l2: f64,
    pub wave_linf: f64,
    pub wave_sobolev: f64,
    pub wave_z: f64,
    pub wave_zprime: f64,
    pub curl_l2: f64,
    pub curl_linf: f64,
    pub curl_zprime1: f64,
    pub constraint_residual: f64,
    /// Largest imaginary part of the curl variable in physical space.
    pub curl_max_imag: f64,
    /// `L²` distance between the diagonal state and the converted potential
    /// state, for runs integrating both.
    pub formulation_gap: Option<f64>,
    pub energy: Option<EnergyReport>,
}

impl CheckpointDiagnostics {
    /// Column names of [`Self::row`].
    pub fn columns() -> Vec<&'static str> {
        vec![
            "t",
            "wave_l2",
            "wave_linf",
            "wave_sobolev",
            "wave_z",
            "wave_zprime",
            "curl_l2",
            "curl_linf",
            "curl_zprime1",
            "constraint_residual",
            "curl_max_imag",
            "formulation_gap",
            "e0",
            "en0",
            "en1",
            "e_fcorr",
            "e_scorr",
            "e_modi",
        ]
    }

    /// Values in the order of [`Self::columns`]; absent entries are NaN.
    pub fn row(&self) -> Vec<f64> {
        let e = self.energy;
        let pick = |f: fn(&EnergyReport) -> f64| e.as_ref().map(f).unwrap_or(f64::NAN);
        vec![
            self.t,
            self.wave_l2,
            self.wave_linf,
            self.wave_sobolev,
            self.wave_z,
            self.wave_zprime,
            self.curl_l2,
            self.curl_linf,
            self.curl_zprime1,
            self.constraint_residual,
            self.curl_max_imag,
            self.formulation_gap.unwrap_or(f64::NAN),
            pick(|r| r.e0),
            pick(|r| r.en0),
            pick(|r| r.en1),
            pick(|r| r.e_fcorr),
            pick(|r| r.e_scorr),
            pick(|r| r.e_modi),
        ]
    }
}

/// Measures a state. `ops` must be built on the dense-path grid when the
/// level is `Full`.
pub fn diagnose(
    s: &DiagonalState,
    potential: Option<&PotentialState>,
    cfg: &DiagnosticsConfig,
    ops: Option<&NormalFormOps>,
) -> Result<CheckpointDiagnostics> {
    let n0 = cfg.energy.regularity.n0;
    let n1 = cfg.energy.regularity.n1;
    let residual = constraint_residual(s)?;
    let energy = match (cfg.level, ops) {
        (DiagnosticLevel::Full, Some(ops)) => {
            let d = dense_copy(s, ops.grid().n())?;
            Some(energy_on(ops, &d, &cfg.energy, residual)?)
        }
        (DiagnosticLevel::Full, None) => {
            return Err(Error::InvalidArgument("full diagnostics need dense-path tables".into()))
        }
        _ => None,
    };
    Ok(CheckpointDiagnostics {
        t: s.t,
        wave_l2: s.phi.l2_norm(),
        wave_linf: s.phi.linf_norm(),
        wave_sobolev: norm(&s.phi, NormKind::Sobolev { s: n0 as f64 }),
        wave_z: norm(&s.phi, NormKind::Z { n1 }),
        wave_zprime: norm(&s.phi, NormKind::Zprime { n1 }),
        curl_l2: s.phi0.l2_norm(),
        curl_linf: s.phi0.linf_norm(),
        curl_zprime1: norm(&s.phi0, NormKind::Zprime1 { n1 }),
        constraint_residual: residual,
        curl_max_imag: s.phi0.max_imag(),
        formulation_gap: potential.map(|p| to_diagonal(p).distance(s)),
        energy,
    })
}

/// One stored sample of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub step: usize,
    pub state: DiagonalState,
    pub diagnostics: Option<CheckpointDiagnostics>,
}

/// States and diagnostics at every checkpoint, the initial state included.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub grid: Grid,
    pub config: StepperConfig,
    pub checkpoints: Vec<Checkpoint>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.checkpoints.iter().map(|c| c.state.t).collect()
    }

    pub fn diagnostics(&self) -> Vec<&CheckpointDiagnostics> {
        self.checkpoints.iter().filter_map(|c| c.diagnostics.as_ref()).collect()
    }

    pub fn energies(&self) -> Vec<EnergyReport> {
        self.diagnostics().iter().filter_map(|d| d.energy).collect()
    }

    pub fn final_state(&self) -> &DiagonalState {
        &self.checkpoints.last().expect("trajectory holds the initial state").state
    }

    /// Checkpoint whose time is closest to `t`.
    pub fn nearest(&self, t: f64) -> &Checkpoint {
        self.checkpoints
            .iter()
            .min_by(|a, b| (a.state.t - t).abs().total_cmp(&(b.state.t - t).abs()))
            .expect("trajectory holds the initial state")
    }
}

/// File name of the checkpoint at time `t`.
pub fn checkpoint_name(t: f64) -> String {
    format!("t_{t:09.4}.nw2d")
}

/// Writes both unknowns to one file; the time is stored in the field names.
pub fn save_state(path: &Path, s: &DiagonalState) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_field(&mut w, &format!("curl t={:.17e}", s.t), &s.phi0)?;
    write_field(&mut w, &format!("wave t={:.17e}", s.t), &s.phi)?;
    w.flush()?;
    Ok(())
}

/// Reads a state written by [`save_state`].
pub fn load_state(path: &Path) -> Result<DiagonalState> {
    let file = std::fs::File::open(path)?;
    let mut r = std::io::BufReader::new(file);
    let (curl_name, phi0) = read_field(&mut r)?;
    let (_, phi) = read_field(&mut r)?;
    let t = curl_name
        .strip_prefix("curl t=")
        .and_then(|v| v.parse::<f64>().ok())
        .ok_or_else(|| Error::Format(format!("unexpected field name {curl_name:?}")))?;
    DiagonalState::new(t, phi0, phi)
}

/// Integrates from `initial`, sampling every `checkpoint_every` steps and at
/// the final step. When `fields_dir` is given each checkpoint is written
/// there.
pub fn evolve(
    initial: &DiagonalState,
    cfg: &StepperConfig,
    diag: &DiagnosticsConfig,
    fields_dir: Option<&Path>,
) -> Result<Trajectory> {
    let grid = *initial.grid();
    cfg.validate(&grid)?;
    if diag.level == DiagnosticLevel::Full {
        diag.energy.regularity.validate()?;
    }
    let ops = match diag.level {
        DiagnosticLevel::Full => {
            let d = dense_copy(initial, diag.energy.dense_n)?;
            Some(NormalFormOps::new(*d.grid())?)
        }
        _ => None,
    };
    if let Some(dir) = fields_dir {
        std::fs::create_dir_all(dir)?;
    }
    let mut diagonal = initial.clone();
    let mut potential = match cfg.formulation {
        Formulation::Diagonal => None,
        _ => Some(to_potential(initial)),
    };
    let sample = |step: usize, d: &DiagonalState, p: Option<&PotentialState>| -> Result<Checkpoint> {
        let (state, pair) = match cfg.formulation {
            Formulation::Potential => (to_diagonal(p.expect("potential state kept")), None),
            Formulation::Both => (d.clone(), p),
            Formulation::Diagonal => (d.clone(), None),
        };
        let diagnostics = match diag.level {
            DiagnosticLevel::None => None,
            _ => Some(diagnose(&state, pair, diag, ops.as_ref())?),
        };
        if let Some(dir) = fields_dir {
            let path: PathBuf = dir.join(checkpoint_name(state.t));
            save_state(&path, &state)?;
        }
        Ok(Checkpoint { step, state, diagnostics })
    };
    let mut checkpoints = vec![sample(0, &diagonal, potential.as_ref())?];
    let steps = cfg.steps();
    for step in 1..=steps {
        if cfg.formulation != Formulation::Potential {
            diagonal = step_diagonal(&diagonal, cfg.dt, cfg.rule, cfg.nonlinear)?;
        }
        if let Some(p) = potential.as_mut() {
            *p = step_potential(p, cfg.dt, cfg.rule, cfg.nonlinear)?;
            if cfg.formulation == Formulation::Potential {
                diagonal.t = p.t;
            }
        }
        if step % cfg.checkpoint_every == 0 || step == steps {
            checkpoints.push(sample(step, &diagonal, potential.as_ref())?);
        }
    }
    Ok(Trajectory {
        grid,
        config: *cfg,
        checkpoints,
    })
}

/// Builds constrained initial data from a recipe and integrates it.
pub fn evolve_recipe(
    recipe: &DataRecipe,
    grid: Grid,
    constraint_tol: f64,
    cfg: &StepperConfig,
    diag: &DiagnosticsConfig,
    fields_dir: Option<&Path>,
) -> Result<Trajectory> {
    let (initial, _) = constrained_state(recipe, grid, constraint_tol)?;
    evolve(&initial, cfg, diag, fields_dir)
}
