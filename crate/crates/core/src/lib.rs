//! Simulation core for the continuum random tree.
//!
//! The crate is `no_std` (it needs `alloc`). It covers four layers:
//!
//! * [`excursion`]: normalized Brownian excursions on a uniform grid and
//!   the path functionals used by the volume and upcrossing laws.
//! * [`realtree`]: the real tree coded by an excursion, answered through a
//!   sparse-table range-minimum index (distances, balls, diameter, branch
//!   points).
//! * [`discretetree`]: finite trees spanned by marked points, treated as
//!   electrical networks (effective resistance, traces, Green kernels).
//! * [`walk`]: the continuous-time Markov chain on those trees (spectral heat
//!   kernels, event-driven simulation, exit times).
//!
//! IO, the experiment harness and the command line live in the `crt-lab`
//! companion crate.
#![no_std]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod discretetree;
mod error;
pub mod excursion;
pub(crate) mod math;
pub mod realtree;
mod rng;
pub mod walk;

pub use error::{Error, Result};
pub use rng::RngStream;
