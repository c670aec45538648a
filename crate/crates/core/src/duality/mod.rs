//! The balanced duality identity (`s = r`) and the machinery shared with the
//! confluent family.

mod coefficients;
mod family;
pub mod golden;
mod identity;
mod params;

pub use coefficients::{
    alpha_detail, alpha_phi_term, alpha_phi_term_scaled, alpha_via_gamma, beta_table_for, beta_table_literal,
    denominator_coefficients, gamma_view, AlphaValue, BetaTable, ALPHA_CROSS_CHECK_TOL,
};
pub use family::DualityFamily;
pub use identity::{
    alpha_coeff, beta_table, gamma_coeff, identity_case, lhs_eval, lhs_eval_for, lhs_terms, prop1_check,
    rhs_denominator, rhs_eval, rhs_from_table, summation_case, summation_sides, theorem1_residual, POLE_TOL,
    SERIES_TOL,
};
pub(crate) use params::check_non_integer_differences;
pub use params::{ParamView, ParameterFamily, ParamsEcho, QParams, EPS_INT};
