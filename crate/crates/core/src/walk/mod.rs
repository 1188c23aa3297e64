//! The continuous-time walk on a [`DiscreteTree`](crate::discretetree::DiscreteTree)
//! and its heat kernel.
//!
//! The walk jumps from `u` to a neighbour `v` at rate `c(u, v) / mass(u)`,
//! which makes it reversible with respect to the vertex masses. Heat kernel
//! values are densities against those masses: the probability of sitting at
//! `v` at time `t`, divided by `mass(v)`.

mod annealed;
mod exit;
mod generator;
mod simulate;
mod spectral;

pub use annealed::{
    aggregate_curves, annealed_heat_kernel, root_heat_kernel_sample, AnnealedConfig,
};
pub use exit::{exit_time_mean, ExitTimeEstimate};
pub use generator::ChainGenerator;
pub use simulate::{
    mc_return_probability, simulate_hit_first, simulate_killed_occupation, McEstimate,
};
pub use spectral::{
    heat_kernel_upper_check, spectral_heat_kernel, HeatKernelAudit, HeatKernelCurve, SpectralKernel,
};

#[cfg(test)]
mod tests;
