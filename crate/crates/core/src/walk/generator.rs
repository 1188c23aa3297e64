use alloc::vec;
use alloc::vec::Vec;

use crate::discretetree::DiscreteTree;
use crate::{Error, Result};

/// Jump rates of the walk over the positive-mass vertices of a tree.
///
/// Massless vertices are traced out first (the walk spends no time there),
/// so the state space is the support of the mass and `state_of` maps tree
/// vertices to states.
#[derive(Debug, Clone)]
pub struct ChainGenerator {
    vertices: Vec<usize>,
    state_of: Vec<Option<usize>>,
    mass: Vec<f64>,
    /// Per state: `(neighbour state, conductance)`.
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl ChainGenerator {
    pub fn new(tree: &DiscreteTree) -> Result<Self> {
        let support: Vec<usize> = (0..tree.len()).filter(|&v| tree.mass(v) > 0.0).collect();
        if support.is_empty() {
            return Err(Error::InvalidTree("no vertex carries mass"));
        }
        let mut state_of = vec![None; tree.len()];
        for (s, &v) in support.iter().enumerate() {
            state_of[v] = Some(s);
        }
        let mut adjacency = vec![Vec::new(); support.len()];
        if support.len() == tree.len() {
            for (c, p, len) in tree.edges() {
                let (a, b) = (state_of[c].unwrap(), state_of[p].unwrap());
                adjacency[a].push((b, 1.0 / len));
                adjacency[b].push((a, 1.0 / len));
            }
        } else {
            let form = tree.trace_form(&support)?;
            for (i, adj) in adjacency.iter_mut().enumerate() {
                for j in 0..support.len() {
                    let c = form.conductance(i, j);
                    if i != j && c > 0.0 {
                        adj.push((j, c));
                    }
                }
            }
        }
        let mass = support.iter().map(|&v| tree.mass(v)).collect();
        Ok(Self {
            vertices: support,
            state_of,
            mass,
            adjacency,
        })
    }

    pub fn states(&self) -> usize {
        self.vertices.len()
    }

    /// Tree vertex of each state.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn state_of(&self, v: usize) -> Result<usize> {
        match self.state_of.get(v) {
            None => Err(Error::VertexOutOfRange(v)),
            Some(None) => Err(Error::ZeroMass(v)),
            Some(Some(s)) => Ok(*s),
        }
    }

    pub fn mass(&self, s: usize) -> f64 {
        self.mass[s]
    }

    pub fn neighbors(&self, s: usize) -> &[(usize, f64)] {
        &self.adjacency[s]
    }

    /// Jump rate `q(a, b) = c(a, b) / mass(a)` between states.
    pub fn rate(&self, a: usize, b: usize) -> f64 {
        self.adjacency[a]
            .iter()
            .filter(|(x, _)| *x == b)
            .map(|(_, c)| c / self.mass[a])
            .sum()
    }

    /// Total jump rate out of state `a`.
    pub fn exit_rate(&self, a: usize) -> f64 {
        self.adjacency[a].iter().map(|(_, c)| c).sum::<f64>() / self.mass[a]
    }

    /// Largest relative violation of `mass(a) q(a, b) = mass(b) q(b, a)`.
    pub fn detailed_balance_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.states() {
            for &(b, _) in &self.adjacency[a] {
                let lhs = self.mass[a] * self.rate(a, b);
                let rhs = self.mass[b] * self.rate(b, a);
                worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
            }
        }
        worst
    }
}
