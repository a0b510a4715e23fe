//! Normal-form transform, profiles, the reformulated right-hand side and
//! scattering diagnostics.

mod normal_form;
mod profile;
mod transform;

pub use normal_form::{
    cancellation_field, cancellation_residual, normal_form, reformulate_rhs, reformulate_rhs_rule, Reformulation,
    REFORMULATION_CONSTRAINT_TOL,
};
pub use profile::{profile, profile_pair, scattering_sequence, ProfilePair, MIN_SCATTERING_POINTS};
pub use transform::NormalFormOps;
