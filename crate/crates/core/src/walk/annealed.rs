use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{HeatKernelCurve, SpectralKernel};
use crate::discretetree::{extract_tree, uniform_marks};
use crate::excursion::sample_excursion;
use crate::math;
use crate::realtree::RealTreeIndex;
use crate::{Error, Result, RngStream};

/// Sizes for the annealed heat-kernel average.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealedConfig {
    /// Number of independent trees.
    pub trees: usize,
    /// Uniform marks per tree.
    pub marks: usize,
    /// Grid intervals of each excursion.
    pub grid: usize,
    pub times: Vec<f64>,
}

/// `p_t(rho, rho)` on one freshly sampled tree spanned by `marks` uniform
/// points and the root.
pub fn root_heat_kernel_sample<R: Rng + ?Sized>(
    grid: usize,
    marks: usize,
    times: &[f64],
    rng: &mut R,
) -> Result<Vec<f64>> {
    let idx = RealTreeIndex::build(sample_excursion(grid, rng)?);
    let marks = uniform_marks(marks, rng);
    let e = extract_tree(&idx, &marks)?;
    let kernel = SpectralKernel::new(&e.tree)?;
    kernel.diagonal(e.tree.root(), times)
}

/// Per-time mean and standard error over per-tree curves, reduced in the
/// order given.
pub fn aggregate_curves(times: &[f64], samples: &[Vec<f64>]) -> Result<HeatKernelCurve> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::InvalidParameter("need at least two trees"));
    }
    let mut values = vec![0.0; times.len()];
    let mut stderr = vec![0.0; times.len()];
    for (j, (v, se)) in values.iter_mut().zip(stderr.iter_mut()).enumerate() {
        let mean = samples.iter().map(|s| s[j]).sum::<f64>() / m as f64;
        let var = samples
            .iter()
            .map(|s| (s[j] - mean) * (s[j] - mean))
            .sum::<f64>()
            / (m - 1) as f64;
        *v = mean;
        *se = math::sqrt(var / m as f64);
    }
    Ok(HeatKernelCurve {
        times: times.to_vec(),
        values,
        stderr,
        tree_count: m,
    })
}

/// `E p_t(rho, rho)` averaged over independent trees; tree `i` draws from
/// stream `i` of `seed`.
pub fn annealed_heat_kernel(config: &AnnealedConfig, seed: u64) -> Result<HeatKernelCurve> {
    if config.trees < 2 {
        return Err(Error::InvalidParameter("need at least two trees"));
    }
    let samples = (0..config.trees as u64)
        .map(|i| {
            let mut rng = RngStream::new(seed, i);
            root_heat_kernel_sample(config.grid, config.marks, &config.times, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    aggregate_curves(&config.times, &samples)
}
