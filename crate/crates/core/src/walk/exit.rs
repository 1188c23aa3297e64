use alloc::vec;

use crate::discretetree::{DiscreteTree, TreeSolver};
use crate::{Error, Result};

/// Mean exit time from a ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExitTimeEstimate {
    pub center: usize,
    pub radius: f64,
    pub mean: f64,
    /// Zero for the exact linear solve.
    pub stderr: f64,
}

/// `E_sigma T_{B(sigma, r)}` for the open ball, by solving
/// `sum_y c(x, y) (m(x) - m(y)) = mass(x)` inside the ball with `m = 0`
/// from distance `r` on. Edges crossing distance `r` are split first.
pub fn exit_time_mean(tree: &DiscreteTree, sigma: usize, r: f64) -> Result<ExitTimeEstimate> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive"));
    }
    let (split, dist) = tree.split_at_distance(sigma, r)?;
    let mut fixed = vec![None; split.len()];
    let mut any = false;
    for (v, d) in dist.iter().enumerate() {
        if *d >= r {
            fixed[v] = Some(0.0);
            any = true;
        }
    }
    if !any {
        return Err(Error::EmptyComplement {
            vertex: sigma,
            radius: r,
        });
    }
    let m = TreeSolver::new(&split).solve(&fixed, split.masses())?;
    Ok(ExitTimeEstimate {
        center: sigma,
        radius: r,
        mean: m[sigma],
        stderr: 0.0,
    })
}
