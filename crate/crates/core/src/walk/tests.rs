#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::discretetree::fixtures::random_tree;
use crate::discretetree::{extract_tree, uniform_marks, DiscreteTree};
use crate::excursion::sample_excursion;
use crate::realtree::RealTreeIndex;
use crate::{Error, RngStream};

fn two_vertex(length: f64) -> DiscreteTree {
    DiscreteTree::path(&[length], vec![0.5, 0.5]).unwrap()
}

fn crt_tree(seed: u64, grid: usize, marks: usize) -> DiscreteTree {
    let mut rng = RngStream::new(seed, 0);
    let idx = RealTreeIndex::build(sample_excursion(grid, &mut rng).unwrap());
    let marks = uniform_marks(marks, &mut rng);
    extract_tree(&idx, &marks).unwrap().tree
}

#[test]
fn two_vertex_closed_form() {
    let l = 0.8;
    let tree = two_vertex(l);
    let times = [0.0, 0.05, 0.2, 1.0, 5.0];
    let curve = spectral_heat_kernel(&tree, 0, &times).unwrap();
    for (t, p) in times.iter().zip(&curve.values) {
        let expect = 1.0 + libm::exp(-4.0 * t / l);
        assert!((p - expect).abs() < 1e-12, "t={t}: {p} vs {expect}");
    }
    assert_eq!(curve.stderr, vec![0.0; 5]);
    assert_eq!(curve.tree_count, 1);
}

#[test]
fn long_time_limit_is_one() {
    let tree = random_tree(30, 1);
    let k = SpectralKernel::new(&tree).unwrap();
    for v in [0, 7, 29] {
        assert!((k.density(1e4, v, v).unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn trace_identity_and_symmetry() {
    let tree = random_tree(40, 2);
    let k = SpectralKernel::new(&tree).unwrap();
    for t in [0.01, 0.1, 1.0] {
        let lhs: f64 = (0..40)
            .map(|v| tree.mass(v) * k.density(t, v, v).unwrap())
            .sum();
        assert!((lhs - k.trace(t)).abs() < 1e-10 * k.trace(t));
        for (u, v) in [(0, 5), (3, 39), (12, 13)] {
            let a = k.density(t, u, v).unwrap();
            let b = k.density(t, v, u).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn chapman_kolmogorov() {
    let tree = random_tree(100, 3);
    let k = SpectralKernel::new(&tree).unwrap();
    let (t, s) = (0.03, 0.07);
    for sigma in [0, 50, 99] {
        let lhs = k.density(t + s, sigma, sigma).unwrap();
        let rhs: f64 = (0..100)
            .map(|v| {
                tree.mass(v) * k.density(t, sigma, v).unwrap() * k.density(s, v, sigma).unwrap()
            })
            .sum();
        assert!((lhs - rhs).abs() < 1e-8 * lhs.max(1.0));
    }
}

#[test]
fn diagonal_decreases_in_time() {
    let tree = crt_tree(4, 1024, 60);
    let times: Vec<f64> = (0..30).map(|i| 1e-4 * libm::pow(1.4, i as f64)).collect();
    let curve = spectral_heat_kernel(&tree, tree.root(), &times).unwrap();
    assert!(curve
        .values
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    assert!(curve.values.iter().all(|v| *v > 0.0));
}

#[test]
fn detailed_balance_on_extracted_trees() {
    for seed in 0..4 {
        let tree = crt_tree(seed, 2048, 100);
        let g = ChainGenerator::new(&tree).unwrap();
        // branch points at cell minima may carry no mass and are traced out
        assert_eq!(
            g.states(),
            tree.masses().iter().filter(|m| **m > 0.0).count()
        );
        assert!(g.detailed_balance_defect() < 1e-12);
    }
}

#[test]
fn zero_mass_vertices_are_traced_out() {
    // 0 --1-- 1 --1-- 2 with the middle vertex massless: same as one edge
    // of length 2 between two half masses.
    let tree = DiscreteTree::path(&[1.0, 1.0], vec![0.5, 0.0, 0.5]).unwrap();
    let curve = spectral_heat_kernel(&tree, 0, &[0.3]).unwrap();
    assert!((curve.values[0] - (1.0 + libm::exp(-4.0 * 0.3 / 2.0))).abs() < 1e-12);
    assert_eq!(
        spectral_heat_kernel(&tree, 1, &[0.3]),
        Err(Error::ZeroMass(1))
    );
    let g = ChainGenerator::new(&tree).unwrap();
    assert_eq!(g.states(), 2);
    assert!((g.rate(0, 1) - 1.0).abs() < 1e-15);
}

#[test]
fn mc_at_time_zero() {
    let tree = random_tree(10, 5);
    let mut rng = RngStream::new(1, 1);
    let e = mc_return_probability(&tree, 3, 0.0, 10, &mut rng).unwrap();
    assert_eq!(e.estimate, 1.0 / tree.mass(3));
    assert!(mc_return_probability(&tree, 3, 0.1, 0, &mut rng).is_err());
}

#[test]
fn mc_matches_two_vertex_closed_form() {
    let l = 0.6;
    let tree = two_vertex(l);
    let mut rng = RngStream::new(2, 0);
    let e = mc_return_probability(&tree, 0, l / 4.0, 40_000, &mut rng).unwrap();
    let expect = 1.0 + libm::exp(-1.0);
    assert!(
        (e.estimate - expect).abs() < 3.0 * e.stderr,
        "{e:?} vs {expect}"
    );
}

#[test]
fn mc_matches_spectral_on_random_tree() {
    let tree = random_tree(50, 6);
    let k = SpectralKernel::new(&tree).unwrap();
    let mut rng = RngStream::new(3, 0);
    let mut agree = 0;
    let cases = [(0, 0.05), (10, 0.1), (25, 0.3), (49, 0.02)];
    for &(v, t) in &cases {
        let e = mc_return_probability(&tree, v, t, 20_000, &mut rng).unwrap();
        let exact = k.density(t, v, v).unwrap();
        if (e.estimate - exact).abs() < 3.0 * e.stderr {
            agree += 1;
        }
    }
    assert!(agree >= 3, "only {agree} of {} agree", cases.len());
}

#[test]
fn occupation_matches_green_kernel() {
    let tree = random_tree(12, 8);
    let (s1, s2) = (4, 9);
    let g = tree.green_kernel(s1, s2).unwrap();
    let mut rng = RngStream::new(4, 0);
    let (mean, se) = simulate_killed_occupation(&tree, s1, s2, 20_000, &mut rng).unwrap();
    let mut ok = 0;
    for v in 0..tree.len() {
        let expect = g[v] * tree.mass(v);
        if (mean[v] - expect).abs() <= 3.0 * se[v] + 1e-12 {
            ok += 1;
        }
    }
    assert!(ok >= tree.len() - 1, "{ok} of {}", tree.len());
}

#[test]
fn hit_first_frequency() {
    let tree = random_tree(15, 9);
    let gen = ChainGenerator::new(&tree).unwrap();
    let h = tree.hitting_probability(6, 2, 11).unwrap();
    let mut rng = RngStream::new(5, 0);
    let reps = 20_000;
    let wins = (0..reps)
        .filter(|_| simulate_hit_first(&gen, 6, 2, 11, &mut rng).unwrap())
        .count();
    let p = wins as f64 / reps as f64;
    let se = libm::sqrt(h.closed_form * (1.0 - h.closed_form) / reps as f64);
    assert!((p - h.closed_form).abs() < 3.0 * se + 1e-12);
}

/// Dense oracle for the killed Green kernel: solve L_D G = I on the ball
/// interior D of the split tree.
fn dense_exit_time(tree: &DiscreteTree, sigma: usize, r: f64) -> f64 {
    let (split, dist) = tree.split_at_distance(sigma, r).unwrap();
    let inside: Vec<usize> = (0..split.len()).filter(|&v| dist[v] < r).collect();
    let k = inside.len();
    let pos = |v: usize| inside.iter().position(|&x| x == v);
    let mut a = vec![vec![0.0; k + 1]; k];
    for (c, p, len) in split.edges() {
        let g = 1.0 / len;
        if let Some(i) = pos(c) {
            a[i][i] += g;
            if let Some(j) = pos(p) {
                a[i][j] -= g;
            }
        }
        if let Some(j) = pos(p) {
            a[j][j] += g;
            if let Some(i) = pos(c) {
                a[j][i] -= g;
            }
        }
    }
    // right-hand side: unit source at sigma gives g(sigma, .)
    let s = pos(sigma).unwrap();
    a[s][k] = 1.0;
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        for row in 0..k {
            if row != col {
                let f = a[row][col] / a[col][col];
                for c in col..=k {
                    a[row][c] -= f * a[col][c];
                }
            }
        }
    }
    let green: Vec<f64> = (0..k).map(|i| a[i][k] / a[i][i]).collect();
    inside
        .iter()
        .zip(&green)
        .map(|(&v, g)| g * split.mass(v))
        .sum()
}

#[test]
fn exit_time_examples() {
    let r = 0.7;
    let leaf = DiscreteTree::path(&[r], vec![1.0, 0.0]).unwrap();
    let e = exit_time_mean(&leaf, 0, r).unwrap();
    assert!((e.mean - r * 1.0).abs() < 1e-14);
    assert_eq!(e.stderr, 0.0);

    let path = DiscreteTree::path(&[0.5, 0.5], vec![0.25, 0.5, 0.25]).unwrap();
    let e = exit_time_mean(&path, 1, 0.5).unwrap();
    assert!((e.mean - dense_exit_time(&path, 1, 0.5)).abs() < 1e-12);
    // g(sigma, sigma) = 0.25 with all of the ball's mass at sigma
    assert!((e.mean - 0.25 * 0.5).abs() < 1e-14);
    assert!(matches!(
        exit_time_mean(&path, 1, 0.6),
        Err(Error::EmptyComplement { .. })
    ));
}

#[test]
fn exit_time_matches_green_oracle_and_bound() {
    let tree = crt_tree(7, 2048, 80);
    for v in [0, 5, 40] {
        let ecc = tree.eccentricity(v);
        for frac in [0.05, 0.2, 0.6] {
            let r = frac * ecc;
            let e = exit_time_mean(&tree, v, r).unwrap();
            let oracle = dense_exit_time(&tree, v, r);
            assert!((e.mean - oracle).abs() < 1e-10 * oracle.max(1e-6));
            assert!(e.mean > 0.0);
            assert!(e.mean <= r * tree.ball_mass(v, r) * (1.0 + 1e-12));
        }
    }
}

#[test]
fn upper_check_examples() {
    let tree = two_vertex(0.5);
    assert!(heat_kernel_upper_check(&tree, 0, 0.3).unwrap());
    assert!(heat_kernel_upper_check(&tree, 0, 0.6).unwrap());
    let k = SpectralKernel::new(&tree).unwrap();
    let a = k.upper_check(&tree, 0, 10.0).unwrap();
    assert_eq!(a.ball_mass, 1.0);
    assert!(a.density <= 2.0);

    let crt = crt_tree(9, 2048, 100);
    let k = SpectralKernel::new(&crt).unwrap();
    for v in (0..crt.len()).step_by(17) {
        for r in [0.01, 0.05, 0.2, 1.0] {
            let a = k.upper_check(&crt, v, r).unwrap();
            assert!(a.holds, "{a:?}");
        }
    }
}

#[test]
fn annealed_average() {
    let cfg = AnnealedConfig {
        trees: 4,
        marks: 20,
        grid: 512,
        times: vec![0.01, 0.1],
    };
    let c = annealed_heat_kernel(&cfg, 11).unwrap();
    assert_eq!(c.tree_count, 4);
    assert!(c.values[0] > c.values[1]);
    assert!(c.stderr.iter().all(|s| *s > 0.0));
    let again = annealed_heat_kernel(&cfg, 11).unwrap();
    assert_eq!(c, again);
    assert!(annealed_heat_kernel(&AnnealedConfig { trees: 1, ..cfg }, 11).is_err());
}
