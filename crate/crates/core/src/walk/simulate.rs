use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::Exp1;

use super::ChainGenerator;
use crate::discretetree::DiscreteTree;
use crate::math;
use crate::{Error, Result};

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub replicas: usize,
}

fn next_state<R: Rng + ?Sized>(gen: &ChainGenerator, s: usize, rng: &mut R) -> usize {
    let nb = gen.neighbors(s);
    let total: f64 = nb.iter().map(|(_, c)| c).sum();
    let mut x = rng.random::<f64>() * total;
    for &(b, c) in nb {
        if x < c {
            return b;
        }
        x -= c;
    }
    nb.last().unwrap().0
}

/// Estimates `p_t(sigma, sigma)` by event-driven simulation: the fraction
/// of walks from `sigma` found at `sigma` at time `t`, divided by
/// `mass(sigma)`.
pub fn mc_return_probability<R: Rng + ?Sized>(
    tree: &DiscreteTree,
    sigma: usize,
    t: f64,
    replicas: usize,
    rng: &mut R,
) -> Result<McEstimate> {
    if replicas == 0 {
        return Err(Error::InvalidParameter("need at least one replica"));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("time must be non-negative"));
    }
    tree.check_vertex(sigma)?;
    let gen = ChainGenerator::new(tree)?;
    let start = gen.state_of(sigma)?;
    let mut hits = 0usize;
    for _ in 0..replicas {
        let mut s = start;
        let mut clock = 0.0;
        loop {
            let hold: f64 = rng.sample::<f64, _>(Exp1) / gen.exit_rate(s);
            if clock + hold > t {
                break;
            }
            clock += hold;
            s = next_state(&gen, s, rng);
        }
        if s == start {
            hits += 1;
        }
    }
    let p = hits as f64 / replicas as f64;
    let m = gen.mass(start);
    let se = if replicas > 1 {
        math::sqrt(p * (1.0 - p) / (replicas - 1) as f64)
    } else {
        0.0
    };
    Ok(McEstimate {
        estimate: p / m,
        stderr: se / m,
        replicas,
    })
}

/// Mean time spent at each vertex by the walk from `sigma1` killed on
/// hitting `sigma2`, with per-vertex standard errors.
pub fn simulate_killed_occupation<R: Rng + ?Sized>(
    tree: &DiscreteTree,
    sigma1: usize,
    sigma2: usize,
    replicas: usize,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if sigma1 == sigma2 {
        return Err(Error::InvalidParameter("target vertices must differ"));
    }
    if replicas < 2 {
        return Err(Error::InvalidParameter("need at least two replicas"));
    }
    let gen = ChainGenerator::new(tree)?;
    let start = gen.state_of(sigma1)?;
    let target = gen.state_of(sigma2)?;
    let k = gen.states();
    let mut sum = vec![0.0; k];
    let mut sumsq = vec![0.0; k];
    let mut this = vec![0.0; k];
    let mut touched = Vec::new();
    for _ in 0..replicas {
        let mut s = start;
        while s != target {
            let hold: f64 = rng.sample::<f64, _>(Exp1) / gen.exit_rate(s);
            if this[s] == 0.0 {
                touched.push(s);
            }
            this[s] += hold;
            s = next_state(&gen, s, rng);
        }
        for &x in &touched {
            sum[x] += this[x];
            sumsq[x] += this[x] * this[x];
            this[x] = 0.0;
        }
        touched.clear();
    }
    let r = replicas as f64;
    let mut mean = vec![0.0; tree.len()];
    let mut se = vec![0.0; tree.len()];
    for (s, &v) in gen.vertices().iter().enumerate() {
        let m = sum[s] / r;
        let var = ((sumsq[s] / r - m * m) * r / (r - 1.0)).max(0.0);
        mean[v] = m;
        se[v] = math::sqrt(var / r);
    }
    Ok((mean, se))
}

/// Whether the walk from `sigma` reaches `sigma1` before `sigma2`.
pub fn simulate_hit_first<R: Rng + ?Sized>(
    gen: &ChainGenerator,
    sigma: usize,
    sigma1: usize,
    sigma2: usize,
    rng: &mut R,
) -> Result<bool> {
    let (mut s, a, b) = (
        gen.state_of(sigma)?,
        gen.state_of(sigma1)?,
        gen.state_of(sigma2)?,
    );
    if a == b {
        return Err(Error::InvalidParameter("target vertices must differ"));
    }
    loop {
        if s == a {
            return Ok(true);
        }
        if s == b {
            return Ok(false);
        }
        s = next_state(gen, s, rng);
    }
}
