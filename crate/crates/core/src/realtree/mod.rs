//! The real tree coded by an excursion.
//!
//! For an excursion `f`, `m(s, t) = min_{[s,t]} f` and
//! `d(s, t) = f(s) + f(t) - 2 m(s, t)` is a pseudo-metric whose quotient is
//! the tree; time 0 maps to the root and Lebesgue measure on the time axis
//! projects to the mass measure. [`RealTreeIndex`] answers `m` and `d` in
//! constant time after an `O(n log n)` build.

mod index;
mod rmq;
mod volume;

pub use index::RealTreeIndex;
pub use rmq::SparseTable;
pub use volume::{VolumeKind, VolumeProfile};
