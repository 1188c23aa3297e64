use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use super::{BridgePath, ExcursionPath};
use crate::math;
use crate::{Error, Result};

/// Brownian bridge values on `m >= 1` equal intervals of `[0, 1]`.
fn bridge_values<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    let sd = math::sqrt(1.0 / m as f64);
    let mut walk = Vec::with_capacity(m + 1);
    let mut acc = 0.0;
    walk.push(0.0);
    for _ in 0..m {
        let z: f64 = rng.sample(StandardNormal);
        acc += sd * z;
        walk.push(acc);
    }
    let end = acc;
    for (i, v) in walk.iter_mut().enumerate() {
        *v -= (i as f64 / m as f64) * end;
    }
    walk[0] = 0.0;
    walk[m] = 0.0;
    walk
}

fn check_resolution(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(
            "grid resolution must be a power of two >= 2",
        ));
    }
    Ok(())
}

/// Standard Brownian bridge on `[0, 1]` at `t_i = i / n`, built as
/// `B_t - t B_1` from Gaussian increments.
pub fn sample_bridge<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BridgePath> {
    check_resolution(n)?;
    Ok(BridgePath::new(bridge_values(n, rng)).expect("bridge endpoints pinned"))
}

/// Vervaat transform: rotate the bridge cyclically so its minimum sits at
/// time 0, then subtract the minimum. Ties go to the smallest index.
pub fn vervaat(bridge: &BridgePath) -> ExcursionPath {
    let v = bridge.values();
    let n = bridge.intervals();
    let mut argmin = 0;
    for i in 1..n {
        if v[i] < v[argmin] {
            argmin = i;
        }
    }
    let floor = v[argmin];
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        out.push(v[(argmin + i) % n] - floor);
    }
    out.push(0.0);
    ExcursionPath::from_parts_unchecked(out, 1.0, false)
}

/// Minimum of a positive Brownian bridge from `a` to `b` over time `h`.
///
/// A Brownian bridge has `P(M < m) = exp(-2 (a - m)(b - m) / h)`;
/// conditioning on `M > 0` and inverting gives an exact draw.
fn cell_minimum<R: Rng + ?Sized>(a: f64, b: f64, h: f64, rng: &mut R) -> f64 {
    let floor = math::exp(-2.0 * a * b / h);
    let u: f64 = rng.random();
    let q = floor + u * (1.0 - floor);
    if !(q > 0.0) {
        return 0.0;
    }
    let c = -0.5 * h * libm::log(q);
    let m = 0.5 * (a + b - math::sqrt((a - b) * (a - b) + 4.0 * c));
    m.clamp(0.0, a.min(b))
}

/// Normalized Brownian excursion on `n` grid intervals.
///
/// The excursion is a three-dimensional Bessel bridge, sampled exactly at
/// the even grid points as the norm of three Brownian bridges. Given those
/// values the cells are independent positive Brownian bridges; each odd
/// grid point carries the exact minimum of its cell. Heights of
/// the even points and tree distances between all grid points are
/// therefore exact; only the times of the cell minima are moved to cell
/// midpoints. Without the minima, `m(s, t)` over a grid overshoots the true
/// minimum by order `n^{-1/2}` and shortens every interior distance.
///
/// The minima carry no measure (see [`ExcursionPath::stride`]): linear
/// pieces through them would sit below the path on average.
pub fn sample_excursion<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ExcursionPath> {
    check_resolution(n)?;
    let cells = n / 2;
    let mut sq = vec![0.0; cells + 1];
    for _ in 0..3 {
        for (acc, v) in sq.iter_mut().zip(bridge_values(cells, rng)) {
            *acc += v * v;
        }
    }
    let coarse: Vec<f64> = sq.into_iter().map(math::sqrt).collect();
    let h = 1.0 / cells as f64;
    let mut values = Vec::with_capacity(n + 1);
    for w in coarse.windows(2) {
        values.push(w[0]);
        values.push(cell_minimum(w[0], w[1], h, rng));
    }
    values.push(0.0);
    Ok(ExcursionPath::from_parts_unchecked(values, 1.0, true))
}

/// Excursion from the Vervaat transform of a grid bridge.
///
/// The grid minimum sits above the true bridge minimum by order `n^{-1/2}`,
/// so heights come out low by that much; [`sample_excursion`] has no such
/// bias.
pub fn sample_excursion_vervaat<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ExcursionPath> {
    Ok(vervaat(&sample_bridge(n, rng)?))
}

/// Upcrossings of `[delta, 2 delta]` by Brownian motion started at `delta`
/// and killed at 0.
///
/// From `delta` the motion reaches `2 delta` before 0 with probability 1/2;
/// from `2 delta` it must come back through `delta` before dying. The count
/// is therefore Geometric(1/2) on `{0, 1, 2, ...}` and is sampled exactly
/// with fair coins.
pub fn sample_bm_upcrossings<R: Rng + ?Sized>(delta: f64, rng: &mut R) -> Result<u64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter("level must be positive"));
    }
    let mut count = 0;
    while rng.random::<bool>() {
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RngStream;

    #[test]
    fn bridge_rejects_bad_resolution() {
        let mut rng = RngStream::new(1, 0);
        assert!(sample_bridge(1, &mut rng).is_err());
        assert!(sample_bridge(12, &mut rng).is_err());
        assert!(sample_bridge(0, &mut rng).is_err());
    }

    #[test]
    fn bridge_endpoints_pinned() {
        let mut rng = RngStream::new(1, 0);
        let b = sample_bridge(2, &mut rng).unwrap();
        assert_eq!(b.values()[0], 0.0);
        assert_eq!(b.values()[2], 0.0);
        let b = sample_bridge(1024, &mut rng).unwrap();
        assert_eq!(b.values()[1024], 0.0);
    }

    #[test]
    fn vervaat_identity_on_nonnegative_bridge() {
        let b = BridgePath::new(vec![0.0, 0.4, 0.9, 0.2, 0.0]).unwrap();
        let e = vervaat(&b);
        assert_eq!(e.values(), b.values());
        assert_eq!(e.duration(), 1.0);
    }

    #[test]
    fn vervaat_rotates_to_minimum() {
        let b = BridgePath::new(vec![0.0, 0.5, -0.25, 0.25, 0.0]).unwrap();
        let e = vervaat(&b);
        assert_eq!(e.values(), &[0.0, 0.5, 0.25, 0.75, 0.0]);
    }

    #[test]
    fn vervaat_keeps_increments_up_to_rotation() {
        let mut rng = RngStream::new(11, 2);
        let b = sample_bridge(64, &mut rng).unwrap();
        let e = vervaat(&b);
        let inc = |v: &[f64]| -> Vec<f64> { v.windows(2).map(|w| w[1] - w[0]).collect() };
        let mut a = inc(b.values());
        let mut c = inc(e.values());
        a.sort_by(f64::total_cmp);
        c.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&c) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn sampled_excursions_are_valid() {
        for seed in 0..20 {
            let mut rng = RngStream::new(seed, 0);
            let e = sample_excursion(256, &mut rng).unwrap();
            assert!(ExcursionPath::new(e.values().to_vec(), 1.0).is_ok());
            let e = sample_excursion_vervaat(256, &mut rng).unwrap();
            assert!(ExcursionPath::new(e.values().to_vec(), 1.0).is_ok());
        }
    }

    #[test]
    fn cell_minimum_law() {
        // P(M < m | M > 0) for a = b = 1, h = 1 at m = 0.5
        let mut rng = RngStream::new(3, 0);
        let reps = 200_000;
        let hits = (0..reps)
            .filter(|_| cell_minimum(1.0, 1.0, 1.0, &mut rng) < 0.5)
            .count();
        let floor = math::exp(-2.0);
        let p = (math::exp(-0.5) - floor) / (1.0 - floor);
        let se = math::sqrt(p * (1.0 - p) / reps as f64);
        assert!((hits as f64 / reps as f64 - p).abs() < 3.0 * se);
        assert_eq!(cell_minimum(0.0, 0.3, 0.01, &mut rng), 0.0);
        let m = cell_minimum(0.4, 0.2, 1e-6, &mut rng);
        assert!(m <= 0.2 && m > 0.19);
    }

    #[test]
    fn excursion_resolution_two() {
        let mut rng = RngStream::new(0, 0);
        assert_eq!(
            sample_excursion(2, &mut rng).unwrap().values(),
            &[0.0, 0.0, 0.0]
        );
        assert!(sample_excursion(6, &mut rng).is_err());
    }

    #[test]
    fn upcrossings_reject_bad_level() {
        let mut rng = RngStream::new(0, 0);
        assert!(sample_bm_upcrossings(0.0, &mut rng).is_err());
        assert!(sample_bm_upcrossings(-1.0, &mut rng).is_err());
    }
}
