use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::DiscreteTree;
use crate::RngStream;

pub(crate) fn uniform_mass(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Random recursive tree with `n` vertices, lengths in (0.1, 1.1) and
/// positive random masses.
pub(crate) fn random_tree(n: usize, seed: u64) -> DiscreteTree {
    let mut rng = RngStream::new(seed, 77);
    let mut parent = vec![None];
    let mut edge = vec![0.0];
    for v in 1..n {
        parent.push(Some(rng.random_range(0..v)));
        edge.push(0.1 + rng.random::<f64>());
    }
    let raw: Vec<f64> = (0..n).map(|_| 0.05 + rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let mut mass: Vec<f64> = raw.iter().map(|m| m / total).collect();
    let err = 1.0 - mass.iter().sum::<f64>();
    mass[0] += err;
    DiscreteTree::new(parent, edge, mass, vec![0.0; n]).unwrap()
}

/// `Y` tree: root 0 -- branch 1 (length a), leaves 2 (length b) and 3
/// (length c) under the branch.
pub(crate) fn y_tree(a: f64, b: f64, c: f64) -> DiscreteTree {
    DiscreteTree::new(
        vec![None, Some(0), Some(1), Some(1)],
        vec![0.0, a, b, c],
        uniform_mass(4),
        vec![0.0; 4],
    )
    .unwrap()
}
