use alloc::vec;
use alloc::vec::Vec;

use super::DiscreteTree;
use crate::{Error, Result};

impl DiscreteTree {
    /// Subdivides every edge that straddles distance `r` from `v`, adding a
    /// massless vertex at exactly distance `r`. Returns the refined tree
    /// (old indices kept, new vertices appended) and its distances from `v`.
    pub fn split_at_distance(&self, v: usize, r: f64) -> Result<(DiscreteTree, Vec<f64>)> {
        self.check_vertex(v)?;
        let dist = self.distances_from(v);
        let mut parent = self.parents().to_vec();
        let mut edge = self.edge_lengths().to_vec();
        let mut mass = self.masses().to_vec();
        let mut time = self.source_times().to_vec();
        let mut new_dist = dist.clone();
        for (c, p, len) in self.edges() {
            let (dc, dp) = (dist[c], dist[p]);
            if !(dc.min(dp) < r && r < dc.max(dp)) {
                continue;
            }
            // offset of the split point measured from the parent
            let offset = if dp < dc { r - dp } else { len - (r - dc) };
            if !(offset > 0.0 && offset < len) {
                continue;
            }
            let w = parent.len();
            parent.push(Some(p));
            edge.push(offset);
            mass.push(0.0);
            time.push(time[p] + (time[c] - time[p]) * offset / len);
            new_dist.push(r);
            parent[c] = Some(w);
            edge[c] = len - offset;
        }
        let tree = DiscreteTree::with_any_mass(parent, edge, mass, time)?;
        Ok((tree, new_dist))
    }

    /// `R({v}, B(v, r)^c)` where the ball is open, so the complement holds
    /// everything at distance `>= r`. Never exceeds `r`.
    pub fn resistance_to_ball_complement(&self, v: usize, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter("radius must be positive"));
        }
        let (tree, dist) = self.split_at_distance(v, r)?;
        let outside: Vec<usize> = (0..tree.len()).filter(|&x| dist[x] >= r).collect();
        if outside.is_empty() {
            return Err(Error::EmptyComplement {
                vertex: v,
                radius: r,
            });
        }
        tree.effective_resistance(&[v], &outside)
    }

    /// `M(v, r)`: the least number of points at distance exactly `r / 4`
    /// from `v` that separate `v` from `B(v, r)^c`.
    ///
    /// Such a point is needed exactly when the part of the tree beyond it
    /// (seen from `v`) reaches distance `r`.
    pub fn cut_count(&self, v: usize, r: f64) -> Result<usize> {
        self.check_vertex(v)?;
        if !(r > 0.0) {
            return Err(Error::InvalidParameter("radius must be positive"));
        }
        let dist = self.distances_from(v);
        if dist.iter().all(|&d| d < r) {
            return Err(Error::EmptyComplement {
                vertex: v,
                radius: r,
            });
        }
        // Farthest reach of the subtree below each vertex, with the tree
        // hung from v.
        let n = self.len();
        let mut up = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![v];
        up[v] = v;
        while let Some(x) = stack.pop() {
            order.push(x);
            for (y, _) in self.neighbors(x) {
                if up[y] == usize::MAX {
                    up[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut reach = dist.clone();
        for &x in order.iter().rev() {
            if x != v {
                let p = up[x];
                reach[p] = reach[p].max(reach[x]);
            }
        }
        let quarter = r / 4.0;
        let mut count = 0;
        for &x in &order {
            if x == v {
                continue;
            }
            let p = up[x];
            let crosses = dist[p] < quarter && quarter < dist[x];
            let lands = dist[x] == quarter;
            if (crosses || lands) && reach[x] >= r {
                count += 1;
            }
        }
        Ok(count)
    }
}
