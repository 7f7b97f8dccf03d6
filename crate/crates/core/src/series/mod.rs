//! Truncated bivariate series and the generating-function identities built
//! on them.
//!
//! All arithmetic is over `i64` with overflow checks; nothing is ever
//! allowed to wrap.

mod bivariate;
mod conjecture;
mod gf;
mod poly;
mod sary;

use thiserror::Error;

use crate::dyck::DyckError;

pub use bivariate::BivariateSeries;
pub use conjecture::{
    check_conjecture, conjecture_rhs, validate_rhs_rewriting, ConjectureReport, Mismatch,
};
pub use gf::{
    bounded_height_gf, brute_series, cf_residual, cf_series, check_first_return,
    check_quadratic_g03, check_vanishing_identity, quadratic_g03_residual, VanishingReport,
};
pub use poly::{c_poly, chebyshev_u, validate_c_poly, XPolynomial, SAMPLE_POINTS};
pub use sary::{brute_sary_series, duality_failure, sary_residual, sary_series, Which};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("divisor has no unit constant term")]
    NonUnitDivisor,
    #[error("coefficient overflow")]
    Overflow,
    #[error("fixed-point iteration did not settle after {iterations} rounds")]
    NonConvergence { iterations: usize },
    #[error("part {part} requires m >= {min}, got m = {m}")]
    InvalidM { part: u8, m: usize, min: usize },
    #[error("no such conjecture part: {0}")]
    InvalidPart(u8),
    #[error("s must be at least 1")]
    InvalidArity,
    #[error("numeric check of the Chebyshev rewriting failed for c_{k} at x = {x}")]
    ChebyshevMismatch { k: usize, x: f64 },
    #[error("rewritten right-hand side of part {part} (m = {m}) disagrees numerically at x = {x}, y = {y}")]
    RewritingMismatch { part: u8, m: usize, x: f64, y: f64 },
    #[error("malformed series JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Dyck(#[from] DyckError),
}
