//! Dyck paths and s-ary paths: parsing, exhaustive enumeration, and the
//! pyramid, exterior-pair and up-step height statistics.

mod distribution;
mod enumerate;
mod numbers;
mod path;
mod residue;
mod sary;

pub use distribution::{distribution, DistributionTable, EnumerationCap, Statistic};
pub use enumerate::{enumerate_dyck, enumerate_sary, DyckPaths, SAryPaths};
pub use numbers::{binomial, catalan, fuss_catalan, narayana};
pub(crate) use path::parse_steps;
pub use path::{DyckPath, Pyramid, Step};
pub use residue::{ResidueSet, MAX_MODULUS};
pub use sary::SAryPath;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("unexpected character {ch:?} at position {pos}")]
    BadChar { ch: char, pos: usize },
    #[error("path is not balanced ({ups} up steps, {downs} down steps)")]
    NonBalanced { ups: usize, downs: usize },
    #[error("path goes below the axis at step {pos}")]
    BelowAxis { pos: usize },
    #[error("residue set is empty")]
    EmptyResidueSet,
    #[error("modulus {0} is outside 2..=64")]
    InvalidModulus(usize),
    #[error("residue {residue} is not below modulus {modulus}")]
    ResidueOutOfRange { residue: usize, modulus: usize },
    #[error("s-ary paths need s >= 1, got {0}")]
    InvalidArity(usize),
    #[error("index (n={n}, k={k}) out of range")]
    IndexOutOfRange { n: usize, k: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("integer overflow")]
    Overflow,
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error("missing parameter {0:?}")]
    MissingParameter(&'static str),
    #[error("malformed JSON: {0}")]
    Json(String),
}
