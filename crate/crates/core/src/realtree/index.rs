use super::SparseTable;
use crate::excursion::ExcursionPath;
use crate::{Error, Result};

/// Range-minimum index over an excursion, answering tree-metric queries.
#[derive(Debug, Clone)]
pub struct RealTreeIndex {
    path: ExcursionPath,
    rmq: SparseTable,
}

impl RealTreeIndex {
    pub fn build(path: ExcursionPath) -> Self {
        let rmq = SparseTable::new(path.values());
        Self { path, rmq }
    }

    pub fn path(&self) -> &ExcursionPath {
        &self.path
    }

    pub fn into_path(self) -> ExcursionPath {
        self.path
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        self.path.values()
    }

    /// Number of grid intervals.
    #[inline]
    pub fn intervals(&self) -> usize {
        self.path.intervals()
    }

    /// Grid index of the minimum of `f` over grid points `i..=j` (either
    /// order), smallest index on ties.
    #[inline]
    pub fn argmin(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.rmq.argmin(self.values(), i, j)
    }

    #[inline]
    pub fn grid_min(&self, i: usize, j: usize) -> f64 {
        self.values()[self.argmin(i, j)]
    }

    /// Tree distance between grid points.
    #[inline]
    pub fn grid_distance(&self, i: usize, j: usize) -> f64 {
        let v = self.values();
        (v[i] + v[j] - 2.0 * self.grid_min(i, j)).max(0.0)
    }

    /// `m_f(s, t)` for the linear interpolant.
    pub fn min_between(&self, s: f64, t: f64) -> Result<f64> {
        self.path.check_time(s)?;
        self.path.check_time(t)?;
        Ok(self.min_between_unchecked(s, t))
    }

    fn min_between_unchecked(&self, s: f64, t: f64) -> f64 {
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        let (i, fi) = self.path.locate(s);
        let (j, fj) = self.path.locate(t);
        let mut m = self.path.value_at(s).min(self.path.value_at(t));
        // grid points strictly inside (s, t)
        let first = if fi == 0.0 { i } else { i + 1 };
        let last = if fj == 1.0 { j + 1 } else { j };
        if first <= last {
            m = m.min(self.grid_min(first, last));
        }
        m
    }

    /// `d_f(s, t) = f(s) + f(t) - 2 m_f(s, t)`.
    pub fn tree_distance(&self, s: f64, t: f64) -> Result<f64> {
        self.path.check_time(s)?;
        self.path.check_time(t)?;
        let m = self.min_between_unchecked(s, t);
        Ok((self.path.value_at(s) + self.path.value_at(t) - 2.0 * m).max(0.0))
    }

    /// Farthest grid point from grid point `i` and its distance, by one
    /// sweep in each direction with a running minimum.
    pub fn farthest_from(&self, i: usize) -> (usize, f64) {
        let v = self.values();
        let fi = v[i];
        let (mut best, mut best_d) = (i, 0.0);
        let mut m = fi;
        for (k, &fk) in v.iter().enumerate().skip(i + 1) {
            m = m.min(fk);
            let d = fi + fk - 2.0 * m;
            if d > best_d {
                best = k;
                best_d = d;
            }
        }
        let mut m = fi;
        for k in (0..i).rev() {
            m = m.min(v[k]);
            let d = fi + v[k] - 2.0 * m;
            if d >= best_d && (d > best_d || k < best) {
                best = k;
                best_d = d;
            }
        }
        (best, best_d)
    }

    /// Largest grid-pair distance, by the double sweep: the farthest point
    /// from any point is an end of a diameter in a tree.
    pub fn diameter(&self) -> f64 {
        let (far, _) = self.farthest_from(0);
        self.farthest_from(far).1
    }

    /// Grid index of the branch point of `sigma_s, sigma_s1, sigma_s2`.
    ///
    /// Times are snapped to the nearest grid point. With `a <= b <= c` the
    /// sorted indices, the branch point is the ancestor of `sigma_b` at
    /// height `max(m(a, b), m(b, c))`, coded by the matching arg-min. When
    /// inputs coincide as tree points the smaller grid index wins.
    pub fn branch_point(&self, s: f64, s1: f64, s2: f64) -> Result<usize> {
        for t in [s, s1, s2] {
            self.path.check_time(t)?;
        }
        Ok(self.branch_point_grid(
            self.path.nearest_index(s),
            self.path.nearest_index(s1),
            self.path.nearest_index(s2),
        ))
    }

    /// [`Self::branch_point`] on grid indices.
    pub fn branch_point_grid(&self, a: usize, b: usize, c: usize) -> usize {
        let mut idx = [a, b, c];
        idx.sort_unstable();
        let [a, b, c] = idx;
        let left = self.argmin(a, b);
        let right = self.argmin(b, c);
        let v = self.values();
        if v[left] >= v[right] {
            left
        } else {
            right
        }
    }

    pub(crate) fn check_radius(r: f64) -> Result<()> {
        if !(r > 0.0) || r.is_nan() {
            return Err(Error::InvalidParameter("radius must be positive"));
        }
        Ok(())
    }
}
