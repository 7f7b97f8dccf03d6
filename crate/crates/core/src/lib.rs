//! Bijections and generating functions for Dyck path statistics.
//!
//! * [`dyck`]: paths, enumeration, pyramids, exterior pairs, height residues.
//! * [`tree`]: ordered and planted trees and the preorder correspondence with
//!   Dyck paths.
//! * [`bijection`]: the recursive planted-tree map carrying exterior edges to
//!   edges at levels divisible by three, and its lift to Dyck paths.
//! * [`omega`]: the cut-line decomposition and the block-reflecting
//!   involution on Dyck paths.
//! * [`series`]: truncated bivariate series, continued fractions and the
//!   identity checks built on them.
//! * [`verify`]: exhaustive verification routines with counterexample reports.

pub mod bijection;
pub mod dyck;
pub mod omega;
pub mod series;
pub mod tree;
pub mod verify;

pub use dyck::{DyckError, DyckPath, ResidueSet, SAryPath, Step};
pub use tree::{OrderedTree, PlantedTree};
