//! Normalized Brownian excursions sampled on a uniform grid, and the path
//! functionals the volume and upcrossing laws are phrased in.
//!
//! Paths are piecewise linear between grid points. Every functional below
//! is evaluated exactly on that interpolant, so grid refinement only
//! changes the sampled path, never the arithmetic rule. Sampled excursions
//! also store cell minima at odd grid points; those shape the tree and
//! carry no measure.

mod functionals;
mod path;
mod sample;

pub(crate) use functionals::chord_measure_below;
pub use functionals::{oscillation_of, segment_band_fraction};
pub use path::{BridgePath, ExcursionPath};
pub use sample::{
    sample_bm_upcrossings, sample_bridge, sample_excursion, sample_excursion_vervaat, vervaat,
};
