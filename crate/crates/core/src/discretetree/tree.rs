use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Finite rooted tree with positive edge lengths and a probability mass on
/// its vertices.
///
/// `edge_length[v]` is the length of the edge from `v` to its parent (0 for
/// the root). `source_time[v]` records the excursion time coding `v`, when
/// the tree came from one.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTree {
    parent: Vec<Option<usize>>,
    edge_length: Vec<f64>,
    mass: Vec<f64>,
    source_time: Vec<f64>,
    root: usize,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
    depth: Vec<u32>,
    root_distance: Vec<f64>,
}

pub(crate) const MASS_TOLERANCE: f64 = 1e-12;

impl DiscreteTree {
    /// Builds and validates a tree. Masses must be non-negative and sum to 1.
    pub fn new(
        parent: Vec<Option<usize>>,
        edge_length: Vec<f64>,
        mass: Vec<f64>,
        source_time: Vec<f64>,
    ) -> Result<Self> {
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidTree("masses must sum to 1"));
        }
        Self::with_any_mass(parent, edge_length, mass, source_time)
    }

    /// Like [`Self::new`] without the unit-total requirement.
    pub(crate) fn with_any_mass(
        parent: Vec<Option<usize>>,
        mut edge_length: Vec<f64>,
        mass: Vec<f64>,
        source_time: Vec<f64>,
    ) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("empty tree"));
        }
        if edge_length.len() != n || mass.len() != n || source_time.len() != n {
            return Err(Error::InvalidTree("column lengths differ"));
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => return Err(Error::InvalidTree("more than one root")),
                None => root = Some(v),
                Some(p) if p >= n || p == v => {
                    return Err(Error::InvalidTree("parent index out of range"))
                }
                Some(p) => {
                    if !(edge_length[v] > 0.0) || !edge_length[v].is_finite() {
                        return Err(Error::InvalidTree("edge lengths must be positive"));
                    }
                    children[p].push(v);
                }
            }
        }
        let root = root.ok_or(Error::InvalidTree("no root"))?;
        edge_length[root] = 0.0;
        if mass.iter().any(|m| !(*m >= 0.0) || !m.is_finite()) {
            return Err(Error::InvalidTree("masses must be non-negative"));
        }
        let mut order = Vec::with_capacity(n);
        let mut depth = vec![0u32; n];
        let mut root_distance = vec![0.0; n];
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                root_distance[c] = root_distance[v] + edge_length[c];
                queue.push_back(c);
            }
        }
        if order.len() != n {
            return Err(Error::InvalidTree("parent array contains a cycle"));
        }
        Ok(Self {
            parent,
            edge_length,
            mass,
            source_time,
            root,
            children,
            order,
            depth,
            root_distance,
        })
    }

    /// A path `0 - 1 - ... - k` rooted at 0 with the given edge lengths and
    /// vertex masses.
    pub fn path(lengths: &[f64], mass: Vec<f64>) -> Result<Self> {
        let n = lengths.len() + 1;
        let parent = (0..n).map(|v| v.checked_sub(1)).collect();
        let mut edge = vec![0.0];
        edge.extend_from_slice(lengths);
        Self::new(parent, edge, mass, vec![0.0; n])
    }

    /// A star rooted at its centre 0 with arms `1..=k`.
    pub fn star(lengths: &[f64], mass: Vec<f64>) -> Result<Self> {
        let n = lengths.len() + 1;
        let parent = (0..n)
            .map(|v| if v == 0 { None } else { Some(0) })
            .collect();
        let mut edge = vec![0.0];
        edge.extend_from_slice(lengths);
        Self::new(parent, edge, mass, vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Length of the edge from `v` to its parent (0 at the root).
    pub fn edge_length(&self, v: usize) -> f64 {
        self.edge_length[v]
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_length
    }

    pub fn mass(&self, v: usize) -> f64 {
        self.mass[v]
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn source_times(&self) -> &[f64] {
        &self.source_time
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices in breadth-first order from the root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn root_distance(&self, v: usize) -> f64 {
        self.root_distance[v]
    }

    /// Neighbours of `v` with the connecting edge length.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.parent[v]
            .map(|p| (p, self.edge_length[v]))
            .into_iter()
            .chain(self.children[v].iter().map(|&c| (c, self.edge_length[c])))
    }

    /// Undirected edges as `(child, parent, length)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p, self.edge_length[v])))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.len() {
            return Err(Error::VertexOutOfRange(v));
        }
        Ok(())
    }

    /// Lowest common ancestor.
    pub fn lca(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap();
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap();
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
        }
        u
    }

    /// Path-length distance between vertices.
    pub fn distance(&self, u: usize, v: usize) -> f64 {
        let a = self.lca(u, v);
        (self.root_distance[u] - self.root_distance[a])
            + (self.root_distance[v] - self.root_distance[a])
    }

    /// Distances from `v` to every vertex.
    pub fn distances_from(&self, v: usize) -> Vec<f64> {
        let mut dist = vec![f64::NAN; self.len()];
        dist[v] = 0.0;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for (y, len) in self.neighbors(x) {
                if dist[y].is_nan() {
                    dist[y] = dist[x] + len;
                    stack.push(y);
                }
            }
        }
        dist
    }

    /// The branch point of three vertices: the unique vertex on all three
    /// pairwise paths. It is the deepest of the three pairwise LCAs.
    pub fn branch_vertex(&self, a: usize, b: usize, c: usize) -> usize {
        let cands = [self.lca(a, b), self.lca(b, c), self.lca(a, c)];
        let mut best = cands[0];
        for &x in &cands[1..] {
            if self.depth[x] > self.depth[best] {
                best = x;
            }
        }
        best
    }

    /// Total mass of vertices at distance `< r` from `v`.
    pub fn ball_mass(&self, v: usize, r: f64) -> f64 {
        self.distances_from(v)
            .iter()
            .zip(&self.mass)
            .filter(|(d, _)| **d < r)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn eccentricity(&self, v: usize) -> f64 {
        self.distances_from(v).into_iter().fold(0.0, f64::max)
    }

    /// Removes leaf `v` (not the root); its mass moves to its parent.
    /// Vertex indices above `v` shift down by one.
    pub fn remove_leaf(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        if !self.children[v].is_empty() || v == self.root {
            return Err(Error::InvalidParameter("vertex is not a removable leaf"));
        }
        let p = self.parent[v].unwrap();
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let mut parent = Vec::with_capacity(self.len() - 1);
        let mut edge = Vec::with_capacity(self.len() - 1);
        let mut mass = Vec::with_capacity(self.len() - 1);
        let mut time = Vec::with_capacity(self.len() - 1);
        for x in (0..self.len()).filter(|&x| x != v) {
            parent.push(self.parent[x].map(shift));
            edge.push(self.edge_length[x]);
            mass.push(self.mass[x] + if x == p { self.mass[v] } else { 0.0 });
            time.push(self.source_time[x]);
        }
        Self::with_any_mass(parent, edge, mass, time)
    }
}
