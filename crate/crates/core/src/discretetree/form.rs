use alloc::vec;
use alloc::vec::Vec;

use super::{DiscreteTree, TreeSolver};
use crate::{Error, Result};

/// A quadratic form `E(u, u) = sum_{i<j} c_ij (u_i - u_j)^2` on a vertex
/// subset, stored as its symmetric conductance matrix (zero diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedForm {
    vertices: Vec<usize>,
    conductance: Vec<f64>,
}

impl ReducedForm {
    /// Wraps a row-major conductance matrix over `vertices`.
    pub fn new(vertices: Vec<usize>, conductance: Vec<f64>) -> Result<Self> {
        let k = vertices.len();
        if conductance.len() != k * k {
            return Err(Error::InvalidParameter(
                "conductance matrix has the wrong size",
            ));
        }
        for i in 0..k {
            for j in 0..k {
                let c = conductance[i * k + j];
                if c < 0.0 || c != conductance[j * k + i] || (i == j && c != 0.0) {
                    return Err(Error::InvalidParameter(
                        "conductances must be symmetric and non-negative",
                    ));
                }
            }
        }
        Ok(Self {
            vertices,
            conductance,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Conductance between the `i`-th and `j`-th vertices of the subset.
    pub fn conductance(&self, i: usize, j: usize) -> f64 {
        self.conductance[i * self.len() + j]
    }

    /// Conductance between two original vertex ids.
    pub fn conductance_between(&self, a: usize, b: usize) -> Option<f64> {
        let i = self.position(a)?;
        let j = self.position(b)?;
        Some(self.conductance(i, j))
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// Weighted Laplacian, row-major.
    pub fn laplacian(&self) -> Vec<f64> {
        let k = self.len();
        let mut l = vec![0.0; k * k];
        for i in 0..k {
            let mut deg = 0.0;
            for j in 0..k {
                if i != j {
                    let c = self.conductance(i, j);
                    l[i * k + j] = -c;
                    deg += c;
                }
            }
            l[i * k + i] = deg;
        }
        l
    }

    /// `E(u, u)` for values listed in subset order.
    pub fn energy(&self, u: &[f64]) -> f64 {
        let k = self.len();
        let mut e = 0.0;
        for i in 0..k {
            for j in i + 1..k {
                let d = u[i] - u[j];
                e += self.conductance(i, j) * d * d;
            }
        }
        e
    }

    /// Trace onto a subset of this form's vertices (original ids), by
    /// star-mesh elimination of the others: removing `k` adds
    /// `c_ik c_kj / c_k` between every remaining pair, `c_k` being the total
    /// conductance at `k`.
    pub fn trace(&self, keep: &[usize]) -> Result<ReducedForm> {
        let k = self.len();
        let mut keep_pos = Vec::with_capacity(keep.len());
        for &v in keep {
            let p = self
                .position(v)
                .ok_or(Error::InvalidParameter("vertex not in the form"))?;
            if keep_pos.contains(&p) {
                return Err(Error::InvalidParameter("duplicate vertex"));
            }
            keep_pos.push(p);
        }
        if keep_pos.is_empty() {
            return Err(Error::InvalidParameter("trace set must be non-empty"));
        }
        let mut c = self.conductance.clone();
        let mut alive = vec![true; k];
        for e in 0..k {
            if keep_pos.contains(&e) {
                continue;
            }
            alive[e] = false;
            let total: f64 = (0..k).filter(|&j| alive[j]).map(|j| c[e * k + j]).sum();
            if total > 0.0 {
                for i in (0..k).filter(|&i| alive[i]) {
                    let cie = c[i * k + e];
                    if cie == 0.0 {
                        continue;
                    }
                    for j in (i + 1..k).filter(|&j| alive[j]) {
                        let add = cie * c[e * k + j] / total;
                        c[i * k + j] += add;
                        c[j * k + i] += add;
                    }
                }
            }
        }
        let m = keep_pos.len();
        let mut out = vec![0.0; m * m];
        for (a, &i) in keep_pos.iter().enumerate() {
            for (b, &j) in keep_pos.iter().enumerate() {
                if a != b {
                    out[a * m + b] = c[i * k + j];
                }
            }
        }
        Ok(ReducedForm {
            vertices: keep.to_vec(),
            conductance: out,
        })
    }

    /// Effective resistance between two vertices of the form.
    pub fn effective_resistance(&self, a: usize, b: usize) -> Result<f64> {
        if a == b {
            return Err(Error::InvalidParameter("terminals must differ"));
        }
        let pair = self.trace(&[a, b])?;
        Ok(1.0 / pair.conductance(0, 1))
    }
}

impl DiscreteTree {
    /// Trace of the tree's Dirichlet form on `subset`: the Schur complement
    /// of the weighted Laplacian onto those vertices.
    ///
    /// Column `v` comes from the harmonic extension `h` of the indicator of
    /// `v`: the conductance from `w` to `v` is the current `h` draws at `w`.
    pub fn trace_form(&self, subset: &[usize]) -> Result<ReducedForm> {
        if subset.is_empty() {
            return Err(Error::InvalidParameter("trace set must be non-empty"));
        }
        for (i, &v) in subset.iter().enumerate() {
            self.check_vertex(v)?;
            if subset[..i].contains(&v) {
                return Err(Error::InvalidParameter("duplicate vertex"));
            }
        }
        let k = subset.len();
        let mut c = vec![0.0; k * k];
        if k == 1 {
            return ReducedForm::new(subset.to_vec(), c);
        }
        let solver = TreeSolver::new(self);
        let zeros = vec![0.0; self.len()];
        for (col, &v) in subset.iter().enumerate() {
            let mut fixed = vec![None; self.len()];
            for &w in subset {
                fixed[w] = Some(0.0);
            }
            fixed[v] = Some(1.0);
            let h = solver.solve(&fixed, &zeros)?;
            for (row, &w) in subset.iter().enumerate() {
                if w != v {
                    let current: f64 = self.neighbors(w).map(|(y, len)| h[y] / len).sum();
                    c[row * k + col] = current.max(0.0);
                }
            }
        }
        // symmetrise round-off
        for i in 0..k {
            for j in i + 1..k {
                let s = 0.5 * (c[i * k + j] + c[j * k + i]);
                c[i * k + j] = s;
                c[j * k + i] = s;
            }
        }
        ReducedForm::new(subset.to_vec(), c)
    }
}
