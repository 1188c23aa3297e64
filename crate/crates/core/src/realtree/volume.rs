use alloc::vec;
use alloc::vec::Vec;

use super::RealTreeIndex;
use crate::excursion::{chord_measure_below, segment_band_fraction};
use crate::Result;

/// Which centre a [`VolumeProfile`] describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VolumeKind {
    AtRoot,
    AtPoint(f64),
    /// Largest ball volume over grid centres.
    Supremum,
    /// Smallest ball volume over grid centres.
    Infimum,
}

/// Ball volumes `mu(B(sigma, r))` across a grid of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeProfile {
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
    pub kind: VolumeKind,
}

impl RealTreeIndex {
    /// `mu(B(sigma_s, r))`: Lebesgue measure of `{t : d(s, t) < r}` for the
    /// linear interpolant. At `s = 0` this is bit-identical to
    /// [`crate::excursion::ExcursionPath::occupation_below`].
    ///
    /// With cell minima, `s` snaps to the nearest even grid point and
    /// `d(s, .)` is taken exactly at even points and linearly in between,
    /// matching the occupation time of the re-rooted path.
    pub fn ball_volume(&self, s: f64, r: f64) -> Result<f64> {
        Ok(self.ball_volumes(s, &[r])?[0])
    }

    /// Ball volumes around `sigma_s` for several radii in one sweep.
    ///
    /// Sweeping away from `s` with the running minimum `M` of `f` between
    /// `s` and the near end of a segment, the segment points within
    /// distance `r` are exactly those with `f` in the open band
    /// `(f(s) - r, r - f(s) + 2M)`, and the band is empty once
    /// `r <= f(s) - M`.
    pub fn ball_volumes(&self, s: f64, radii: &[f64]) -> Result<Vec<f64>> {
        self.path().check_time(s)?;
        for &r in radii {
            Self::check_radius(r)?;
        }
        if self.path().has_cell_minima() {
            return Ok(self.chord_ball_volumes(self.path().nearest_atom(s), radii));
        }
        let (j, frac) = self.path().locate(s);
        let v = self.values();
        let n = self.intervals();
        let fs = self.path().value_at(s);
        let mut acc = vec![0.0; radii.len()];

        let add = |acc: &mut [f64], y0: f64, y1: f64, m: f64, weight: f64| {
            for (a, &r) in acc.iter_mut().zip(radii) {
                if r > fs - m {
                    *a += weight * segment_band_fraction(y0, y1, fs - r, r - fs + 2.0 * m);
                }
            }
        };

        // Left of s.
        let mut m = fs;
        let mut left_start = j;
        if frac > 0.0 && frac < 1.0 {
            add(&mut acc, v[j], fs, m, frac);
        } else if frac == 1.0 {
            left_start = n;
        }
        for i in (0..left_start).rev() {
            m = m.min(v[i + 1]);
            add(&mut acc, v[i], v[i + 1], m, 1.0);
        }

        // Right of s.
        let mut m = fs;
        let right_start = if frac > 0.0 && frac < 1.0 {
            add(&mut acc, fs, v[j + 1], m, 1.0 - frac);
            j + 1
        } else if frac == 1.0 {
            n
        } else {
            j
        };
        for i in right_start..n {
            m = m.min(v[i]);
            add(&mut acc, v[i], v[i + 1], m, 1.0);
        }

        let step = self.path().grid_step();
        Ok(acc.into_iter().map(|a| a * step).collect())
    }

    /// Distances from even grid point `j` to every even grid point, read
    /// off the running minimum over all grid values between them.
    fn chord_ball_volumes(&self, j: usize, radii: &[f64]) -> Vec<f64> {
        let v = self.values();
        let n = self.intervals();
        let fs = v[j];
        let mut d = vec![0.0; n / 2 + 1];
        let mut m = fs;
        for u in j..=n {
            m = m.min(v[u]);
            if u % 2 == 0 {
                d[u / 2] = fs + v[u] - 2.0 * m;
            }
        }
        let mut m = fs;
        for u in (0..j).rev() {
            m = m.min(v[u]);
            if u % 2 == 0 {
                d[u / 2] = fs + v[u] - 2.0 * m;
            }
        }
        chord_measure_below(&d, radii, 2.0 * self.path().grid_step())
    }

    /// Ball volumes around every grid centre carrying measure (grid `n` is
    /// the root again), returned per radius as `(min, max)` over centres.
    fn extreme_ball_volumes(&self, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
        let mut out = vec![(f64::INFINITY, 0.0f64); radii.len()];
        for c in (0..self.intervals()).step_by(self.path().stride()) {
            let vols = self.ball_volumes(self.path().time_of(c), radii)?;
            for (o, vol) in out.iter_mut().zip(vols) {
                o.0 = o.0.min(vol);
                o.1 = o.1.max(vol);
            }
        }
        Ok(out)
    }

    /// `sup_sigma mu(B(sigma, r))` over grid centres. `O(n^2)`.
    pub fn sup_ball_volume(&self, r: f64) -> Result<f64> {
        Ok(self.extreme_ball_volumes(&[r])?[0].1)
    }

    /// `inf_sigma mu(B(sigma, r))` over grid centres. `O(n^2)`.
    pub fn inf_ball_volume(&self, r: f64) -> Result<f64> {
        Ok(self.extreme_ball_volumes(&[r])?[0].0)
    }

    /// Volume profile of the given kind over `radii`.
    pub fn volume_profile(&self, kind: VolumeKind, radii: &[f64]) -> Result<VolumeProfile> {
        let volumes = match kind {
            VolumeKind::AtRoot => self.ball_volumes(0.0, radii)?,
            VolumeKind::AtPoint(s) => self.ball_volumes(s, radii)?,
            VolumeKind::Supremum => self
                .extreme_ball_volumes(radii)?
                .into_iter()
                .map(|e| e.1)
                .collect(),
            VolumeKind::Infimum => self
                .extreme_ball_volumes(radii)?
                .into_iter()
                .map(|e| e.0)
                .collect(),
        };
        Ok(VolumeProfile {
            radii: radii.to_vec(),
            volumes,
            kind,
        })
    }

    /// Supremum and infimum profiles from a single pass over centres.
    pub fn extreme_profiles(&self, radii: &[f64]) -> Result<(VolumeProfile, VolumeProfile)> {
        let ext = self.extreme_ball_volumes(radii)?;
        let sup = VolumeProfile {
            radii: radii.to_vec(),
            volumes: ext.iter().map(|e| e.1).collect(),
            kind: VolumeKind::Supremum,
        };
        let inf = VolumeProfile {
            radii: radii.to_vec(),
            volumes: ext.iter().map(|e| e.0).collect(),
            kind: VolumeKind::Infimum,
        };
        Ok((sup, inf))
    }
}
