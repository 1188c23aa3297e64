//! On-disk formats for trees and excursion paths.

pub mod dump;
pub mod tree_text;
