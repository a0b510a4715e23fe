//! Run configuration read from a TOML file.

use nw2d::diagnostics::{EnergyOptions, Regularity};
use nw2d::elasto_system::Formulation;
use nw2d::evolution::{DiagnosticLevel, DiagnosticsConfig, StepperConfig};
use nw2d::initial_data::{DataRecipe, Shape};
use nw2d::spectral_core::DealiasRule;
use nw2d::{Error, Grid, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepperSection {
    pub dt: f64,
    pub t_end: f64,
    pub checkpoint_every: usize,
    pub formulation: Formulation,
    pub rule: DealiasRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Target residual of the constraint solve for the initial curl variable.
    pub constraint: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub stepper: StepperSection,
    pub recipe: DataRecipe,
    pub regularity: Regularity,
    /// Growth exponent allowed for the top energy norm in reports.
    pub p0: f64,
    pub diagnostics: DiagnosticLevel,
    pub tolerances: Tolerances,
    pub out: PathBuf,
    /// Seed for randomized recipe shapes; overrides the recipe's own seed.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = StepperConfig::default();
        RunConfig {
            grid: GridConfig { n: 128, length: 128.0 },
            stepper: StepperSection {
                dt: s.dt,
                t_end: s.t_end,
                checkpoint_every: s.checkpoint_every,
                formulation: s.formulation,
                rule: s.rule,
            },
            recipe: DataRecipe::packet(1e-2, 8.0, 0),
            regularity: Regularity::default(),
            p0: 0.01,
            diagnostics: DiagnosticLevel::Basic,
            tolerances: Tolerances { constraint: 1e-12 },
            out: PathBuf::from("nw2d-run"),
            seed: 3,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidArgument(format!("config: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is serializable")
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.n, self.grid.length)
    }

    pub fn recipe(&self) -> DataRecipe {
        DataRecipe {
            seed: self.seed,
            ..self.recipe.clone()
        }
    }

    pub fn stepper(&self, override_horizon: bool) -> StepperConfig {
        StepperConfig {
            dt: self.stepper.dt,
            t_end: self.stepper.t_end,
            checkpoint_every: self.stepper.checkpoint_every,
            rule: self.stepper.rule,
            formulation: self.stepper.formulation,
            override_horizon,
            nonlinear: true,
        }
    }

    pub fn diagnostics_config(&self) -> DiagnosticsConfig {
        DiagnosticsConfig {
            level: self.diagnostics,
            energy: EnergyOptions {
                regularity: self.regularity,
                ..EnergyOptions::default()
            },
        }
    }

    /// Checks every precondition the run will rely on.
    pub fn validate(&self, override_horizon: bool) -> Result<()> {
        let grid = self.grid()?;
        self.stepper(override_horizon).validate(&grid)?;
        self.recipe().validate(&grid)?;
        self.regularity.validate()?;
        if !(self.p0 > 0.0 && self.p0 < 1.0) {
            return Err(Error::InvalidArgument(format!("p0 must lie in (0, 1), got {}", self.p0)));
        }
        if !(self.tolerances.constraint > 0.0) {
            return Err(Error::InvalidArgument("constraint tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Smallness parameter of the recipe and the derived bootstrap size
    /// `ε^{5/6}`.
    pub fn smallness(&self) -> (f64, f64) {
        let eps = self.recipe.amplitude;
        (eps, eps.powf(5.0 / 6.0))
    }
}

/// Default configuration with comments, printed by `--print-defaults`.
pub fn documented_defaults() -> String {
    let c = RunConfig::default();
    let width = match c.recipe.shape {
        Shape::Packet { width, .. } | Shape::Gaussian { width, .. } => width,
        Shape::ModeSum { .. } => unreachable!("default recipe is a packet"),
    };
    format!(
        r#"# nw2d run configuration. Every key is required.

# Output directory for run.json, diag.csv and fields/.
out = "{out}"
# Seed for randomized recipe shapes.
seed = {seed}
# Growth exponent reported alongside the top energy norm.
p0 = {p0}
# Checkpoint diagnostics: "none", "basic" (norms, constraint) or "full"
# (adds the energy family on a 64-point copy; slow).
diagnostics = "basic"

[grid]
# Points per side (even) and side length of the periodic cell.
n = {n}
length = {length:?}

[stepper]
dt = {dt}
# Must not exceed 0.45 * length unless --override-horizon is given.
t_end = {t_end:?}
checkpoint_every = {every}
# "diagonal", "potential" or "both".
formulation = "diagonal"
# Dealiasing rule: "2/3" or "1/2".
rule = "2/3"

[recipe]
# Peak modulus of the wave variable, at most 0.1.
amplitude = {amp}

[recipe.shape]
# "gaussian", "packet" or "mode_sum".
kind = "packet"
center = [0.0, 0.0]
width = {width:?}

[regularity]
# Derivatives in the top energy (n0) and on vector-field images (n1).
n0 = {n0}
n1 = {n1}

[tolerances]
constraint = {tol:e}
"#,
        out = c.out.display(),
        seed = c.seed,
        p0 = c.p0,
        n = c.grid.n,
        length = c.grid.length,
        dt = c.stepper.dt,
        t_end = c.stepper.t_end,
        every = c.stepper.checkpoint_every,
        amp = c.recipe.amplitude,
        n0 = c.regularity.n0,
        n1 = c.regularity.n1,
        tol = c.tolerances.constraint,
    )
}
