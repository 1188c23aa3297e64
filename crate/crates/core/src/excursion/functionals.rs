use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::ExcursionPath;
use crate::math;
use crate::{Error, Result};

/// Fraction of a linear segment from `y0` to `y1` on which the value lies
/// in the open band `(lo, hi)`.
#[inline]
pub fn segment_band_fraction(y0: f64, y1: f64, lo: f64, hi: f64) -> f64 {
    if y0 == y1 {
        return if lo < y0 && y0 < hi { 1.0 } else { 0.0 };
    }
    let dy = y1 - y0;
    let (mut a, mut b) = ((lo - y0) / dy, (hi - y0) / dy);
    if a > b {
        core::mem::swap(&mut a, &mut b);
    }
    let a = a.max(0.0);
    let b = b.min(1.0);
    if b > a {
        b - a
    } else {
        0.0
    }
}

/// `delta`-level oscillation of grid values over `[s, t]`: the largest
/// `|f(r) - f(r')|` over grid points `r, r'` in `[s, t]` with
/// `|r - r'| <= delta`.
pub fn oscillation_of(values: &[f64], step: f64, s: f64, t: f64, delta: f64) -> Result<f64> {
    let n = values.len().saturating_sub(1);
    let duration = step * n as f64;
    if n == 0 || !(0.0 <= s && s < t && t <= duration * (1.0 + 1e-12)) {
        return Err(Error::InvalidParameter("need 0 <= s < t <= duration"));
    }
    if !(delta > 0.0 && delta <= (t - s) * (1.0 + 1e-12)) {
        return Err(Error::InvalidParameter("need 0 < delta <= t - s"));
    }
    let first = math::ceil(s / step - 1e-9) as usize;
    let last = (math::floor(t / step + 1e-9) as usize).min(n);
    if first > last {
        return Ok(0.0);
    }
    let window = math::floor(delta / step + 1e-9) as usize;
    // Sliding max/min over windows of `window + 1` consecutive grid points.
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0f64;
    for j in first..=last {
        while maxq.back().is_some_and(|&k| values[k] <= values[j]) {
            maxq.pop_back();
        }
        maxq.push_back(j);
        while minq.back().is_some_and(|&k| values[k] >= values[j]) {
            minq.pop_back();
        }
        minq.push_back(j);
        while maxq.front().is_some_and(|&k| k + window < j) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&k| k + window < j) {
            minq.pop_front();
        }
        best = best.max(values[maxq[0]] - values[minq[0]]);
    }
    Ok(best)
}

/// Measure below each level of the piecewise-linear function through
/// `atoms`, spaced `spacing` apart. Shared by occupation times and ball
/// volumes so the ball around the root matches bit for bit.
pub(crate) fn chord_measure_below(atoms: &[f64], levels: &[f64], spacing: f64) -> Vec<f64> {
    let mut acc = vec![0.0; levels.len()];
    for w in atoms.windows(2) {
        for (a, &l) in acc.iter_mut().zip(levels) {
            *a += segment_band_fraction(w[0], w[1], f64::NEG_INFINITY, l);
        }
    }
    acc.into_iter().map(|a| a * spacing).collect()
}

impl ExcursionPath {
    /// Height `h(f) = sup f`.
    pub fn height(&self) -> f64 {
        self.values().iter().copied().fold(0.0, f64::max)
    }

    /// See [`oscillation_of`].
    pub fn oscillation(&self, s: f64, t: f64, delta: f64) -> Result<f64> {
        oscillation_of(self.values(), self.grid_step(), s, t, delta)
    }

    /// Lebesgue measure of `{t : f(t) < level}` for the linear interpolant,
    /// or for the chords between even points when the path has cell minima.
    pub fn occupation_below(&self, level: f64) -> f64 {
        if self.has_cell_minima() {
            let atoms: Vec<f64> = self.values().iter().step_by(2).copied().collect();
            return chord_measure_below(&atoms, &[level], 2.0 * self.grid_step())[0];
        }
        let v = self.values();
        let mut acc = 0.0;
        for i in 0..self.intervals() {
            acc += segment_band_fraction(v[i], v[i + 1], f64::NEG_INFINITY, level);
        }
        acc * self.grid_step()
    }

    /// Number of upcrossings of `[a, b]`: passages from `<= a` to `>= b`.
    pub fn upcrossings(&self, a: f64, b: f64) -> Result<u64> {
        if !(a > 0.0 && a < b) {
            return Err(Error::InvalidParameter("need 0 < a < b"));
        }
        let mut below = true;
        let mut count = 0;
        for &v in self.values() {
            if below && v >= b {
                count += 1;
                below = false;
            } else if !below && v <= a {
                below = true;
            }
        }
        Ok(count)
    }

    /// Re-normalisation `t -> c^{-1/2} f(c t)` on `[0, duration / c]`.
    ///
    /// The new grid point `i` sits at time `i * step / c`, which maps back
    /// onto the old grid point `i`, so only the heights change.
    pub fn rescale(&self, c: f64) -> Result<ExcursionPath> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter("scale must be positive"));
        }
        if c == 1.0 {
            return Ok(self.clone());
        }
        let k = 1.0 / math::sqrt(c);
        let values = self.values().iter().map(|v| v * k).collect();
        Ok(ExcursionPath::from_parts_unchecked(
            values,
            self.duration() / c,
            self.has_cell_minima(),
        ))
    }

    /// The excursion coding the same tree re-rooted at `sigma_s`:
    /// `W^(s)_t = d(s, s + t mod 1)`, with `d` the tree distance
    /// `f(s) + f(u) - 2 min_{[s,u]} f` and the wrapped branch using the
    /// minimum over `[s + t - 1, s]`.
    ///
    /// The output shares the input grid. Requires duration 1. With cell
    /// minima, `s` snaps to the nearest even grid point and the output
    /// carries the cell minima of `W^(s)`.
    pub fn reroot_shift(&self, s: f64) -> Result<ExcursionPath> {
        if (self.duration() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(
                "re-rooting needs a normalized excursion",
            ));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParameter("shift outside [0, 1]"));
        }
        if self.has_cell_minima() {
            return Ok(self.reroot_at_atom(self.nearest_atom(s)));
        }
        let n = self.intervals();
        let v = self.values();
        let (j, frac) = self.locate(s);
        let mut out = Vec::with_capacity(n + 1);
        if frac == 0.0 || frac == 1.0 {
            let j = j + frac as usize;
            let fs = v[j];
            // forward branch: u = j + i <= n
            let mut m = fs;
            for &fu in &v[j..=n] {
                m = m.min(fu);
                out.push((fs + fu - 2.0 * m).max(0.0));
            }
            // wrapped branch: u = j + i - n in [1, j], minimum over [u, j]
            let mut wrapped = Vec::with_capacity(j);
            let mut m = fs;
            for u in (1..=j).rev() {
                m = m.min(v[u]);
                wrapped.push((fs + v[u] - 2.0 * m).max(0.0));
            }
            out.extend(wrapped.into_iter().rev());
            out[0] = 0.0;
            out[n] = 0.0;
        } else {
            // s falls strictly inside segment j; every u = s + i*step sits at
            // the same fraction inside its own segment.
            let at = |k: usize| v[k] + frac * (v[k + 1] - v[k]);
            let fs = at(j);
            // forward: u in segment j + i, grid points j+1..=j+i lie in (s, u)
            let mut prefix = fs;
            for i in 0..n - j {
                if i > 0 {
                    prefix = prefix.min(v[j + i]);
                }
                let fu = at(j + i);
                out.push((fs + fu - 2.0 * prefix.min(fu)).max(0.0));
            }
            // wrapped: u in segment k <= j, grid points k+1..=j lie in (u, s)
            let mut wrapped = Vec::with_capacity(j + 1);
            let mut suffix = fs;
            for k in (0..=j).rev() {
                if k < j {
                    suffix = suffix.min(v[k + 1]);
                }
                let fu = at(k);
                wrapped.push((fs + fu - 2.0 * suffix.min(fu)).max(0.0));
            }
            out.extend(wrapped.into_iter().rev());
            out[0] = 0.0;
            out[n] = 0.0;
        }
        debug_assert_eq!(out.len(), n + 1);
        Ok(ExcursionPath::from_parts_unchecked(out, 1.0, false))
    }

    /// Re-rooting at the even grid point `j` of a path with cell minima.
    ///
    /// Sweeping away from `j` with running minimum `M` up to the near end
    /// of a cell whose minimum is `c`, the distance from `sigma_j` is
    /// smallest at `f(j) + max(c, M) - 2M`: at the cell minimum if `c >= M`,
    /// else where the path crosses `M`.
    fn reroot_at_atom(&self, j: usize) -> ExcursionPath {
        let n = self.intervals();
        let v = self.values();
        let fs = v[j];
        let visit = |u: usize, m: &mut f64| -> f64 {
            let d = if u % 2 == 1 {
                fs + v[u].max(*m) - 2.0 * *m
            } else {
                fs + v[u] - 2.0 * m.min(v[u])
            };
            *m = m.min(v[u]);
            d.max(0.0)
        };
        let mut out = Vec::with_capacity(n + 1);
        let mut m = fs;
        for u in j..=n {
            out.push(visit(u, &mut m));
        }
        let mut wrapped = Vec::with_capacity(j);
        let mut m = fs;
        for u in (1..=j).rev() {
            wrapped.push(visit(u, &mut m));
        }
        out.extend(wrapped.into_iter().rev());
        out[0] = 0.0;
        out[n] = 0.0;
        debug_assert_eq!(out.len(), n + 1);
        ExcursionPath::from_parts_unchecked(out, 1.0, true)
    }
}
