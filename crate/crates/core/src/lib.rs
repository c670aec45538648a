//! Duality relations for generalized basic hypergeometric series.
//!
//! The crate evaluates q-shifted factorials and `phi` series, builds the
//! Laurent-polynomial coefficients of the balanced and confluent duality
//! identities, and checks them against independent oracles.

// `!(x <= tol)` is used on purpose so that NaN fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod confluent;
pub mod duality;
pub mod error;
pub mod oracle;
pub mod qcore;
pub mod qseries;
pub mod random;
pub mod report;

pub use error::{Error, Result};
