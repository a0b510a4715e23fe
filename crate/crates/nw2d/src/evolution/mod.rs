//! Time integration of both formulations, checkpointing and per-checkpoint
//! diagnostics.

mod stepper;
mod trajectory;

pub use stepper::{step_diagonal, step_potential, StepperConfig, POTENTIAL_STABILITY_LIMIT};
pub use trajectory::{
    checkpoint_name, diagnose, evolve, evolve_recipe, load_state, save_state, Checkpoint,
    CheckpointDiagnostics, DiagnosticLevel, DiagnosticsConfig, Trajectory,
};
