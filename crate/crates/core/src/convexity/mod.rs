//! The quotient `phi = F[u/G]`, its weighted form `f_lambda`, the operators
//! `S` and `A` with their commutator identities, and discrete log-convexity
//! diagnostics.

mod operators;
mod spacetime;
mod trace;

pub use operators::{
    apply_a, apply_a_slice, apply_s, apply_s_slice, apply_st_slice, commutator_identity_residuals, slice_inner,
    slice_residuals,
};
pub use spacetime::{
    admissible_run, f_lambda, f_lambda_unchecked, gaussian_phi_admissible, phi_equation_residual, phi_from_gaussian,
    phi_from_wave, phi_oracle, SpaceTimeField,
};
pub use trace::{
    arctan_convexity_check, arctan_resample, log_convexity_defect, log_convexity_defect_profile, theorem3_sweep, theta,
    trace_to_csv, ConvexityTrace, Theorem3Report, Theorem3Row, DEFAULT_EPSILON,
};
