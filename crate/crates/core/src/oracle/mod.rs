//! Independent checks built from the rational functions `f_k`: residues at the
//! finite poles, expansions at zero and infinity, and sample-based recovery of
//! the Laurent coefficients.

mod expansion;
mod residue;
mod sampling;

pub use expansion::{
    alpha_identity_case, alpha_identity_check, alpha_identity_sides, big_p, big_q, c_minus1, c_minus1_index,
    closure_scale, contour_coefficient, large_radius, large_z_leading, p_recurrence, q_recurrence, residue_at_zero,
    small_radius, SumConstants, CONTOUR_NODES,
};
pub use residue::{fk_eval, g_k, residue_at_pole, LinearFactor, RationalFk, FACTOR_TOL};
pub use sampling::{
    recover_beta_by_sampling, recover_beta_detailed, recover_on_circle, Recovery, MAX_ATTEMPTS, MAX_CONDITION,
};
