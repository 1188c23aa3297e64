use alloc::vec;
use alloc::vec::Vec;

use super::DiscreteTree;
use crate::{Error, Result};

/// Direct solver for Dirichlet problems on a tree network.
///
/// Finds `u` with prescribed values on `fixed` vertices and
/// `sum_y c(x, y) (u(x) - u(y)) = source(x)` at the free ones, where
/// `c = 1 / length`. Free vertices are eliminated leaf-first: each free
/// vertex is expressed as `u(v) = alpha_v + beta_v u(parent)`, after which
/// one top-down pass recovers the values. `O(#vertices)`.
#[derive(Debug, Clone, Copy)]
pub struct TreeSolver<'a> {
    tree: &'a DiscreteTree,
}

impl<'a> TreeSolver<'a> {
    pub fn new(tree: &'a DiscreteTree) -> Self {
        Self { tree }
    }

    pub fn solve(&self, fixed: &[Option<f64>], source: &[f64]) -> Result<Vec<f64>> {
        let t = self.tree;
        let n = t.len();
        if fixed.len() != n || source.len() != n {
            return Err(Error::InvalidParameter(
                "boundary data has the wrong length",
            ));
        }
        if fixed.iter().all(Option::is_none) {
            return Err(Error::InvalidParameter("need at least one fixed vertex"));
        }
        let mut alpha = vec![0.0; n];
        let mut beta = vec![0.0; n];
        for &v in t.order().iter().rev() {
            if let Some(value) = fixed[v] {
                alpha[v] = value;
                beta[v] = 0.0;
                continue;
            }
            let mut num = source[v];
            let mut den = 0.0;
            for &c in t.children(v) {
                let g = 1.0 / t.edge_length(c);
                num += g * alpha[c];
                den += g * (1.0 - beta[c]);
            }
            match t.parent(v) {
                Some(_) => {
                    let g = 1.0 / t.edge_length(v);
                    den += g;
                    alpha[v] = num / den;
                    beta[v] = g / den;
                }
                None => {
                    alpha[v] = num / den;
                    beta[v] = 0.0;
                }
            }
        }
        let mut u = vec![0.0; n];
        for &v in t.order() {
            u[v] = match t.parent(v) {
                Some(p) => alpha[v] + beta[v] * u[p],
                None => alpha[v],
            };
        }
        Ok(u)
    }

    /// Harmonic function equal to 1 on `a` and 0 on `b`.
    pub fn potential(&self, a: &[usize], b: &[usize]) -> Result<Vec<f64>> {
        let t = self.tree;
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidParameter("terminal sets must be non-empty"));
        }
        let mut fixed = vec![None; t.len()];
        for &v in a {
            t.check_vertex(v)?;
            fixed[v] = Some(1.0);
        }
        for &v in b {
            t.check_vertex(v)?;
            if fixed[v].is_some() {
                return Err(Error::InvalidParameter("terminal sets must be disjoint"));
            }
            fixed[v] = Some(0.0);
        }
        self.solve(&fixed, &vec![0.0; t.len()])
    }

    /// Dirichlet energy `sum_edges (u(x) - u(y))^2 / length`.
    pub fn energy(&self, u: &[f64]) -> f64 {
        self.tree
            .edges()
            .map(|(c, p, len)| {
                let du = u[c] - u[p];
                du * du / len
            })
            .sum()
    }
}

/// Hitting probability `P_sigma(T_sigma1 < T_sigma2)` by both routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hitting {
    /// `d(b(sigma, sigma1, sigma2), sigma2) / d(sigma1, sigma2)`.
    pub closed_form: f64,
    /// Value at `sigma` of the harmonic function that is 1 at `sigma1`
    /// and 0 at `sigma2`.
    pub harmonic: f64,
}

impl Hitting {
    pub fn discrepancy(&self) -> f64 {
        (self.closed_form - self.harmonic).abs()
    }
}

impl DiscreteTree {
    /// Effective resistance between disjoint vertex sets: the reciprocal of
    /// the least energy of a potential that is 1 on `a` and 0 on `b`.
    pub fn effective_resistance(&self, a: &[usize], b: &[usize]) -> Result<f64> {
        let solver = TreeSolver::new(self);
        let u = solver.potential(a, b)?;
        Ok(1.0 / solver.energy(&u))
    }

    /// Probability that the walk from `sigma` hits `sigma1` before `sigma2`.
    pub fn hitting_probability(
        &self,
        sigma: usize,
        sigma1: usize,
        sigma2: usize,
    ) -> Result<Hitting> {
        for v in [sigma, sigma1, sigma2] {
            self.check_vertex(v)?;
        }
        if sigma1 == sigma2 {
            return Err(Error::InvalidParameter("target vertices must differ"));
        }
        let b = self.branch_vertex(sigma, sigma1, sigma2);
        let closed_form = self.distance(b, sigma2) / self.distance(sigma1, sigma2);
        let u = TreeSolver::new(self).potential(&[sigma1], &[sigma2])?;
        Ok(Hitting {
            closed_form,
            harmonic: u[sigma],
        })
    }

    /// Green kernel of the walk started at `sigma1` and killed at `sigma2`:
    /// `g(sigma) = d(b(sigma, sigma1, sigma2), sigma2)` per unit mass, so the
    /// mean time spent at `sigma` is `g(sigma) * mass(sigma)`.
    pub fn green_kernel(&self, sigma1: usize, sigma2: usize) -> Result<Vec<f64>> {
        self.check_vertex(sigma1)?;
        self.check_vertex(sigma2)?;
        if sigma1 == sigma2 {
            return Err(Error::InvalidParameter("target vertices must differ"));
        }
        Ok((0..self.len())
            .map(|v| self.distance(self.branch_vertex(v, sigma1, sigma2), sigma2))
            .collect())
    }
}
