//! Finite trees spanned by marked points of a real tree, viewed as
//! electrical networks with edge conductance `1 / length`.
//!
//! On a tree the effective resistance between two vertices is their path
//! length, so every quantity here has a closed form to check against the
//! linear solves.

mod ball;
mod extract;
mod form;
mod network;
mod tree;

pub use extract::{extract_tree, uniform_marks, Extraction};
pub use form::ReducedForm;
pub use network::{Hitting, TreeSolver};
pub use tree::DiscreteTree;

#[cfg(test)]
pub(crate) mod fixtures;
