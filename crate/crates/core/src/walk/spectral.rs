use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use super::ChainGenerator;
use crate::discretetree::DiscreteTree;
use crate::math;
use crate::{Error, Result};

/// Heat kernel estimates `p_t(sigma, sigma)` over a grid of times.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatKernelCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Zero for exact spectral values.
    pub stderr: Vec<f64>,
    /// Number of trees averaged into each value.
    pub tree_count: usize,
}

/// Full eigendecomposition of the walk's generator.
///
/// With `M` the diagonal of masses and `L` the weighted Laplacian,
/// `S = M^{-1/2} L M^{-1/2}` is symmetric; if `S psi_i = lambda_i psi_i`
/// then `phi_i = M^{-1/2} psi_i` are orthonormal in the mass inner product
/// and `p_t(u, v) = sum_i e^{-lambda_i t} phi_i(u) phi_i(v)`.
#[derive(Debug, Clone)]
pub struct SpectralKernel {
    generator: ChainGenerator,
    eigenvalues: DVector<f64>,
    /// Columns are the `psi_i`.
    eigenvectors: DMatrix<f64>,
}

impl SpectralKernel {
    pub fn new(tree: &DiscreteTree) -> Result<Self> {
        Self::from_generator(ChainGenerator::new(tree)?)
    }

    pub fn from_generator(generator: ChainGenerator) -> Result<Self> {
        let k = generator.states();
        if k < 2 {
            return Err(Error::InvalidTree("need at least two states"));
        }
        let scale: Vec<f64> = (0..k)
            .map(|s| 1.0 / math::sqrt(generator.mass(s)))
            .collect();
        let mut sym = DMatrix::<f64>::zeros(k, k);
        for a in 0..k {
            let mut deg = 0.0;
            for &(b, c) in generator.neighbors(a) {
                sym[(a, b)] -= c * scale[a] * scale[b];
                deg += c;
            }
            sym[(a, a)] = deg * scale[a] * scale[a];
        }
        let eig = sym.symmetric_eigen();
        let eigenvalues = eig.eigenvalues.map(|l| l.max(0.0));
        Ok(Self {
            generator,
            eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn generator(&self) -> &ChainGenerator {
        &self.generator
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.eigenvalues.as_slice()
    }

    /// `p_t(u, v)` between tree vertices.
    pub fn density(&self, t: f64, u: usize, v: usize) -> Result<f64> {
        let a = self.generator.state_of(u)?;
        let b = self.generator.state_of(v)?;
        Ok(self.state_density(t, a, b))
    }

    pub(crate) fn state_density(&self, t: f64, a: usize, b: usize) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.eigenvalues.len() {
            let w = math::exp(-self.eigenvalues[i] * t);
            acc += w * self.eigenvectors[(a, i)] * self.eigenvectors[(b, i)];
        }
        acc / math::sqrt(self.generator.mass(a) * self.generator.mass(b))
    }

    /// On-diagonal density at each time.
    pub fn diagonal(&self, v: usize, times: &[f64]) -> Result<Vec<f64>> {
        let a = self.generator.state_of(v)?;
        Ok(times.iter().map(|&t| self.state_density(t, a, a)).collect())
    }

    /// `sum_i e^{-lambda_i t}`.
    pub fn trace(&self, t: f64) -> f64 {
        self.eigenvalues.iter().map(|l| math::exp(-l * t)).sum()
    }

    /// Audits `p_{2 r V}(sigma, sigma) <= 2 / V` with `V` the mass of the
    /// open ball `B(sigma, r)`.
    pub fn upper_check(
        &self,
        tree: &DiscreteTree,
        sigma: usize,
        r: f64,
    ) -> Result<HeatKernelAudit> {
        tree.check_vertex(sigma)?;
        if !(r > 0.0) {
            return Err(Error::InvalidParameter("radius must be positive"));
        }
        let ball_mass = tree.ball_mass(sigma, r);
        let t = 2.0 * r * ball_mass;
        let density = self.density(t, sigma, sigma)?;
        let bound = 2.0 / ball_mass;
        Ok(HeatKernelAudit {
            vertex: sigma,
            radius: r,
            ball_mass,
            time: t,
            density,
            bound,
            holds: density <= bound,
        })
    }
}

/// One evaluation of the on-diagonal upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatKernelAudit {
    pub vertex: usize,
    pub radius: f64,
    pub ball_mass: f64,
    pub time: f64,
    pub density: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Exact `p_t(sigma, sigma)` on the times given.
pub fn spectral_heat_kernel(
    tree: &DiscreteTree,
    sigma: usize,
    times: &[f64],
) -> Result<HeatKernelCurve> {
    tree.check_vertex(sigma)?;
    if tree.mass(sigma) <= 0.0 {
        return Err(Error::ZeroMass(sigma));
    }
    let kernel = SpectralKernel::new(tree)?;
    let values = kernel.diagonal(sigma, times)?;
    Ok(HeatKernelCurve {
        times: times.to_vec(),
        stderr: alloc::vec![0.0; values.len()],
        values,
        tree_count: 1,
    })
}

/// See [`SpectralKernel::upper_check`].
pub fn heat_kernel_upper_check(tree: &DiscreteTree, sigma: usize, r: f64) -> Result<bool> {
    Ok(SpectralKernel::new(tree)?
        .upper_check(tree, sigma, r)?
        .holds)
}
