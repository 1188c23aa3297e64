use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// A non-negative path on a uniform grid of `[0, duration]`, zero at both
/// ends.
///
/// A path may mark its odd grid points as cell minima: the lowest value of
/// the path between the two neighbouring even points. Such points shape the
/// coded tree but carry no time. Lebesgue measure then follows the chords
/// between even points, see [`Self::stride`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExcursionPath {
    values: Vec<f64>,
    duration: f64,
    cell_minima: bool,
}

impl ExcursionPath {
    /// Validates and wraps grid values `values[i] = f(i * duration / n)`.
    pub fn new(values: Vec<f64>, duration: f64) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidPath("need at least two grid intervals"));
        }
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(Error::InvalidPath("duration must be positive"));
        }
        if values[0] != 0.0 || values[values.len() - 1] != 0.0 {
            return Err(Error::InvalidPath("endpoints must be zero"));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidPath("values must be finite and non-negative"));
        }
        Ok(Self {
            values,
            duration,
            cell_minima: false,
        })
    }

    /// Like [`Self::new`], with every odd grid point a cell minimum: at most
    /// both its neighbours.
    pub fn with_cell_minima(values: Vec<f64>, duration: f64) -> Result<Self> {
        let mut p = Self::new(values, duration)?;
        if p.intervals() % 2 != 0 {
            return Err(Error::InvalidPath(
                "cell minima need an even number of intervals",
            ));
        }
        let v = &p.values;
        if (1..v.len())
            .step_by(2)
            .any(|i| v[i] > v[i - 1] || v[i] > v[i + 1])
        {
            return Err(Error::InvalidPath(
                "odd grid values must not exceed their neighbours",
            ));
        }
        p.cell_minima = true;
        Ok(p)
    }

    /// Samples `f` at the `n + 1` grid points of `[0, duration]`.
    pub fn from_fn(n: usize, duration: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let step = duration / n as f64;
        let values = (0..=n).map(|i| f(i as f64 * step)).collect();
        Self::new(values, duration)
    }

    pub(crate) fn from_parts_unchecked(values: Vec<f64>, duration: f64, cell_minima: bool) -> Self {
        debug_assert!(values.len() >= 3);
        debug_assert!(!cell_minima || values.len() % 2 == 1);
        Self {
            values,
            duration,
            cell_minima,
        }
    }

    /// Whether odd grid points are cell minima.
    pub fn has_cell_minima(&self) -> bool {
        self.cell_minima
    }

    /// Spacing of the grid points that carry measure: 2 with cell minima,
    /// otherwise 1.
    pub fn stride(&self) -> usize {
        if self.cell_minima {
            2
        } else {
            1
        }
    }

    /// Nearest grid index to `t` among those carrying measure.
    pub fn nearest_atom(&self, t: f64) -> usize {
        let k = self.stride();
        let x = math::round(t / (k as f64 * self.grid_step()));
        if x <= 0.0 {
            0
        } else {
            (x as usize * k).min(self.intervals())
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Number of grid intervals.
    pub fn intervals(&self) -> usize {
        self.values.len() - 1
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn grid_step(&self) -> f64 {
        self.duration / self.intervals() as f64
    }

    pub fn time_of(&self, i: usize) -> f64 {
        i as f64 * self.grid_step()
    }

    /// Nearest grid index to time `t`, clamped to the grid.
    pub fn nearest_index(&self, t: f64) -> usize {
        let x = math::round(t / self.grid_step());
        if x <= 0.0 {
            0
        } else {
            (x as usize).min(self.intervals())
        }
    }

    /// Locates `t` as `(i, frac)` with `t = (i + frac) * step`, `frac` in
    /// `[0, 1)` except at the right end where `(n - 1, 1)` is returned.
    /// Times within 1e-9 grid steps of a grid point snap onto it.
    pub(crate) fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.intervals();
        let x = t / self.grid_step();
        let nearest = math::round(x);
        if (x - nearest).abs() <= 1e-9 {
            let i = if nearest <= 0.0 { 0 } else { nearest as usize };
            if i >= n {
                return (n - 1, 1.0);
            }
            return (i, 0.0);
        }
        let i = math::floor(x);
        let i = if i <= 0.0 { 0 } else { (i as usize).min(n - 1) };
        (i, (x - i as f64).clamp(0.0, 1.0))
    }

    /// Value of the linear interpolant at time `t`.
    pub fn value_at(&self, t: f64) -> f64 {
        let (i, frac) = self.locate(t);
        if frac == 0.0 {
            self.values[i]
        } else if frac == 1.0 {
            self.values[i + 1]
        } else {
            self.values[i] + frac * (self.values[i + 1] - self.values[i])
        }
    }

    pub(crate) fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0 && t <= self.duration) {
            return Err(Error::InvalidParameter("time outside [0, duration]"));
        }
        Ok(())
    }
}

/// A Brownian bridge sampled on a uniform grid of `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgePath {
    values: Vec<f64>,
}

impl BridgePath {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidPath("need at least two grid intervals"));
        }
        if values[0] != 0.0 || values[values.len() - 1] != 0.0 {
            return Err(Error::InvalidPath("bridge endpoints must be zero"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPath("values must be finite"));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn intervals(&self) -> usize {
        self.values.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_bad_paths() {
        assert!(ExcursionPath::new(vec![0.0, 0.0], 1.0).is_err());
        assert!(ExcursionPath::new(vec![0.0, 1.0, 0.5], 1.0).is_err());
        assert!(ExcursionPath::new(vec![0.0, -1.0, 0.0], 1.0).is_err());
        assert!(ExcursionPath::new(vec![0.0, 1.0, 0.0], 0.0).is_err());
        assert!(ExcursionPath::new(vec![0.0, f64::NAN, 0.0], 1.0).is_err());
        assert!(ExcursionPath::new(vec![0.0, 0.3, 0.0], 1.0).is_ok());
    }

    #[test]
    fn interpolation() {
        let f = ExcursionPath::new(vec![0.0, 1.0, 0.0], 1.0).unwrap();
        assert_eq!(f.value_at(0.5), 1.0);
        assert_eq!(f.value_at(0.25), 0.5);
        assert_eq!(f.value_at(1.0), 0.0);
        assert_eq!(f.nearest_index(0.74), 1);
        assert_eq!(f.nearest_index(0.76), 2);
        assert_eq!(f.nearest_atom(0.76), 2);
    }

    #[test]
    fn cell_minima_validation() {
        let p =
            ExcursionPath::with_cell_minima(vec![0.0, 0.0, 1.0, 0.4, 0.5, 0.0, 0.0], 1.0).unwrap();
        assert!(p.has_cell_minima());
        assert_eq!(p.stride(), 2);
        assert_eq!(p.nearest_atom(0.4), 2);
        assert_eq!(p.nearest_atom(0.6), 4);
        assert!(
            ExcursionPath::with_cell_minima(vec![0.0, 0.6, 1.0, 0.4, 0.5, 0.0, 0.0], 1.0).is_err()
        );
        assert!(ExcursionPath::with_cell_minima(vec![0.0, 0.0, 1.0, 0.0], 1.0).is_err());
        assert!(!ExcursionPath::new(vec![0.0, 1.0, 0.0], 1.0)
            .unwrap()
            .has_cell_minima());
    }
}
