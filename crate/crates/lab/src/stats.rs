//! Summary statistics and the goodness-of-fit tests used by the
//! experiments.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Sample mean and the standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

impl Summary {
    pub fn of(xs: &[f64]) -> Self {
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Summary {
            mean,
            stderr: (var / n as f64).sqrt(),
            count: n,
        }
    }
}

/// Kolmogorov limiting survival function `Q(x) = 2 sum (-1)^{k-1} e^{-2 k^2 x^2}`.
fn kolmogorov_q(x: f64) -> f64 {
    if x < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * x * x).exp();
        sum += sign * term;
        if term < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value, with the
/// usual small-sample correction to the scaled statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = (na * nb / (na + nb)).sqrt();
    (d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d))
}

/// Pearson chi-square statistic of observed counts against bin
/// probabilities, with its p-value on `bins - 1` degrees of freedom.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> (f64, f64) {
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e) * (o as f64 - e) / e
        })
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).expect("at least two bins");
    (stat, dist.sf(stat))
}

/// Least-squares slope of `ln y` against `ln x` and its standard error.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> (f64, f64) {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let resid: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| {
            let e = b - my - slope * (a - mx);
            e * e
        })
        .sum();
    let se = if n > 2.0 {
        (resid / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, se)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn summary_of_known_values() {
        let s = Summary::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.stderr - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn kolmogorov_reference_values() {
        // classical critical values of the limiting distribution
        assert!((kolmogorov_q(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_q(1.6276) - 0.01).abs() < 1e-4);
        assert_eq!(kolmogorov_q(0.0), 1.0);
    }

    #[test]
    fn ks_separates_shifted_samples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let a: Vec<f64> = (0..2000).map(|_| rng.random()).collect();
        let b: Vec<f64> = (0..2000).map(|_| rng.random()).collect();
        let c: Vec<f64> = (0..2000).map(|_| rng.random::<f64>() + 0.1).collect();
        assert!(ks_two_sample(&a, &b).1 > 0.01);
        assert!(ks_two_sample(&a, &c).1 < 1e-6);
        let (d, _) = ks_two_sample(&[0.0, 1.0], &[2.0, 3.0]);
        assert_eq!(d, 1.0);
    }

    #[test]
    fn ks_p_values_are_roughly_uniform_under_null() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        let mut small = 0;
        for _ in 0..400 {
            let a: Vec<f64> = (0..300).map(|_| rng.random()).collect();
            let b: Vec<f64> = (0..300).map(|_| rng.random()).collect();
            if ks_two_sample(&a, &b).1 < 0.1 {
                small += 1;
            }
        }
        assert!((20..=65).contains(&small), "{small}");
    }

    #[test]
    fn chi_square_reference() {
        // statistic 0 gives p = 1; a statistic of 11.07 on 5 dof gives 0.05
        assert_eq!(chi_square(&[25, 25, 50], &[0.25, 0.25, 0.5]).1, 1.0);
        let (stat, p) = chi_square(&[10, 30], &[0.5, 0.5]);
        assert!((stat - 10.0).abs() < 1e-12);
        assert!((p - 0.001565).abs() < 1e-5);
        let dist = ChiSquared::new(5.0).unwrap();
        assert!((dist.sf(11.0705) - 0.05).abs() < 1e-4);
    }

    #[test]
    fn slope_of_power_law() {
        let x: Vec<f64> = (1..20).map(|i| i as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v.powf(-2.0 / 3.0)).collect();
        let (s, se) = loglog_slope(&x, &y);
        assert!((s + 2.0 / 3.0).abs() < 1e-12);
        assert!(se < 1e-10);
    }
}
