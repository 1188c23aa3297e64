//! Exact network identities and Monte-Carlo walk checks on extracted
//! trees.

use crt_core::discretetree::DiscreteTree;
use crt_core::walk::{
    exit_time_mean, mc_return_probability, simulate_hit_first, simulate_killed_occupation,
    ChainGenerator, SpectralKernel,
};
use crt_core::RngStream;
use rand::seq::index::sample;
use rand::Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use super::{sample_tree, stream, Outcome};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::pool::ordered_map;
use crate::report::{Basis, CsvTable, StatRow};

/// Worst deviations found on one tree.
#[derive(Debug, Default, Clone)]
struct TreeChecks {
    resistance: f64,
    tower: f64,
    trace_resistance: f64,
    hitting: f64,
    green_mismatches: usize,
    ball_violations: usize,
    cut_violations: usize,
    exit_violations: usize,
    ball_checks: usize,
    audit_failures: usize,
    audit_checks: usize,
    audit_min_slack: f64,
    exit_rows: Vec<[f64; 4]>,
}

fn distinct<R: Rng>(rng: &mut R, len: usize, amount: usize) -> Vec<usize> {
    sample(rng, len, amount.min(len)).into_vec()
}

fn check_tree(
    cfg: &ExperimentConfig,
    tree: &DiscreteTree,
    audit: bool,
    rng: &mut RngStream,
) -> Result<TreeChecks> {
    let n = tree.len();
    let mut c = TreeChecks {
        audit_min_slack: f64::INFINITY,
        ..TreeChecks::default()
    };

    for u in 0..n {
        for v in (u + 1)..n {
            let r = tree.effective_resistance(&[u], &[v])?;
            c.resistance = c.resistance.max((r - tree.distance(u, v)).abs());
        }
    }

    if n >= 3 {
        let v1 = distinct(rng, n, 24);
        let v0 = &v1[..v1.len().min(6)];
        let direct = tree.trace_form(v0)?;
        let nested = tree.trace_form(&v1)?.trace(v0)?;
        for &a in v0 {
            for &b in v0 {
                let x = direct.conductance_between(a, b).unwrap();
                let y = nested.conductance_between(a, b).unwrap();
                c.tower = c.tower.max((x - y).abs());
                if a < b {
                    let r = direct.effective_resistance(a, b)?;
                    c.trace_resistance = c.trace_resistance.max((r - tree.distance(a, b)).abs());
                }
            }
        }

        for _ in 0..50 {
            let t = distinct(rng, n, 3);
            let h = tree.hitting_probability(t[0], t[1], t[2])?;
            c.hitting = c.hitting.max(h.discrepancy());
        }
    }

    for _ in 0..20.min(n * (n - 1)) {
        let t = distinct(rng, n, 2);
        let g = tree.green_kernel(t[0], t[1])?;
        if g[t[0]] != tree.distance(t[0], t[1]) || g[t[1]] != 0.0 {
            c.green_mismatches += 1;
        }
    }

    let kernel = if audit {
        Some(SpectralKernel::new(tree)?)
    } else {
        None
    };
    for v in 0..n {
        let ecc = tree.eccentricity(v);
        for &r in &cfg.radii {
            if r < ecc {
                c.ball_checks += 1;
                let rb = tree.resistance_to_ball_complement(v, r)?;
                if rb > r * (1.0 + 1e-12) {
                    c.ball_violations += 1;
                }
                let m = tree.cut_count(v, r)?;
                if 1.0 / rb > 8.0 * m as f64 / r * (1.0 + 1e-12) {
                    c.cut_violations += 1;
                }
                let e = exit_time_mean(tree, v, r)?;
                if !(e.mean > 0.0) || e.mean > r * tree.ball_mass(v, r) * (1.0 + 1e-12) {
                    c.exit_violations += 1;
                }
                c.exit_rows.push([v as f64, r, e.mean, e.stderr]);
            }
            if let Some(k) = &kernel {
                if tree.mass(v) > 0.0 {
                    let a = k.upper_check(tree, v, r)?;
                    c.audit_checks += 1;
                    if !a.holds {
                        c.audit_failures += 1;
                    }
                    c.audit_min_slack = c.audit_min_slack.min((a.bound - a.density) / a.bound);
                }
            }
        }
    }
    Ok(c)
}

pub(crate) fn resistance_suite(cfg: &ExperimentConfig) -> Result<Outcome> {
    let checks = ordered_map(cfg.threads, cfg.replicas, |i| {
        let mut rng = stream(cfg, i as u64);
        let (_, ext) = sample_tree(cfg, &mut rng)?;
        check_tree(cfg, &ext.tree, i < cfg.audit_trees, &mut rng)
    })?;
    let mut out = Outcome::one_stream_each(cfg);
    let max = |f: fn(&TreeChecks) -> f64| checks.iter().map(f).fold(0.0, f64::max);
    let sum = |f: fn(&TreeChecks) -> usize| checks.iter().map(f).sum::<usize>() as f64;
    let trees = checks.len();

    out.rows.push(StatRow::at_most(
        format!("resistance_equals_distance max_error trees={trees}"),
        max(|c| c.resistance),
        0.0,
        0.0,
        1e-10,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::at_most(
        "trace_tower max_error",
        max(|c| c.tower),
        0.0,
        0.0,
        1e-10,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::at_most(
        "trace_keeps_resistance max_error",
        max(|c| c.trace_resistance),
        0.0,
        0.0,
        1e-10,
        Basis::Elementary,
    ));
    out.rows.push(StatRow::at_most(
        "hitting_closed_form_vs_harmonic max_error",
        max(|c| c.hitting),
        0.0,
        0.0,
        1e-10,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::at_most(
        "green_endpoint_mismatches",
        sum(|c| c.green_mismatches),
        0.0,
        0.0,
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::record(
        "ball_checks",
        sum(|c| c.ball_checks),
        0.0,
        Basis::Elementary,
    ));
    for (name, value) in [
        ("ball_resistance_above_radius", sum(|c| c.ball_violations)),
        ("cut_count_bound_violations", sum(|c| c.cut_violations)),
        ("exit_time_bound_violations", sum(|c| c.exit_violations)),
    ] {
        out.rows
            .push(StatRow::at_most(name, value, 0.0, 0.0, 0.0, Basis::Theorem));
    }

    let audit_trees = cfg.audit_trees.min(trees);
    out.rows.push(StatRow::record(
        format!("heat_kernel_audit_checks trees={audit_trees}"),
        sum(|c| c.audit_checks),
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::at_most(
        "heat_kernel_audit_failures",
        sum(|c| c.audit_failures),
        0.0,
        0.0,
        0.0,
        Basis::Theorem,
    ));
    let slack = checks[..audit_trees]
        .iter()
        .map(|c| c.audit_min_slack)
        .fold(f64::INFINITY, f64::min);
    out.rows.push(StatRow::record(
        "heat_kernel_audit_min_relative_slack",
        slack,
        0.0,
        Basis::Theorem,
    ));

    let mut exit = CsvTable::new(&["center", "radius", "mean", "stderr"]);
    for row in &checks[0].exit_rows {
        exit.push(vec![
            (row[0] as usize).to_string(),
            row[1].to_string(),
            row[2].to_string(),
            row[3].to_string(),
        ]);
    }
    out.tables.push(("exit_times.csv".into(), exit));
    Ok(out)
}

/// Two-sided level of a 3-sigma check.
const FAMILY_LEVEL: f64 = 0.0027;

/// Agreement counts for one kind of Monte-Carlo check.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Agreement {
    agree: usize,
    total: usize,
}

impl Agreement {
    fn add(&mut self, estimate: f64, exact: f64, stderr: f64) {
        self.total += 1;
        if (estimate - exact).abs() <= 3.0 * stderr + 1e-12 {
            self.agree += 1;
        }
    }

    pub(crate) fn merge(self, o: Agreement) -> Agreement {
        Agreement {
            agree: self.agree + o.agree,
            total: self.total + o.total,
        }
    }

    pub(crate) fn rate(self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.agree as f64 / self.total as f64
        }
    }
}

pub(crate) fn walk_checks(
    cfg: &ExperimentConfig,
    tree: &DiscreteTree,
    rng: &mut RngStream,
) -> Result<[Agreement; 3]> {
    let charged: Vec<usize> = (0..tree.len()).filter(|&v| tree.mass(v) > 0.0).collect();
    let mut hit = Agreement::default();
    let mut occ = Agreement::default();
    let mut ret = Agreement::default();
    if charged.len() < 3 {
        return Ok([hit, occ, ret]);
    }
    let gen = ChainGenerator::new(tree)?;
    for _ in 0..3 {
        let p = distinct(rng, charged.len(), 3);
        let (s, s1, s2) = (charged[p[0]], charged[p[1]], charged[p[2]]);
        let exact = tree.hitting_probability(s, s1, s2)?.closed_form;
        let mut wins = 0usize;
        for _ in 0..cfg.walks {
            wins += usize::from(simulate_hit_first(&gen, s, s1, s2, rng)?);
        }
        let se = (exact * (1.0 - exact) / cfg.walks as f64).sqrt();
        hit.add(wins as f64 / cfg.walks as f64, exact, se);
    }

    let p = distinct(rng, charged.len(), 2);
    let (s1, s2) = (charged[p[0]], charged[p[1]]);
    let g = tree.green_kernel(s1, s2)?;
    let (mean, se) = simulate_killed_occupation(tree, s1, s2, cfg.walks, rng)?;
    // Vertices of one subtree share the number of walk entries into it, so
    // their errors move together; the whole tree is one check at the level
    // of a single 3-sigma test, split over its vertices.
    let z = Normal::standard().inverse_cdf(1.0 - FAMILY_LEVEL / (2.0 * charged.len() as f64));
    occ.total += 1;
    if charged
        .iter()
        .all(|&v| (mean[v] - g[v] * tree.mass(v)).abs() <= z * se[v] + 1e-12)
    {
        occ.agree += 1;
    }

    let kernel = SpectralKernel::new(tree)?;
    let v = charged[rng.random_range(0..charged.len())];
    for sigma in [tree.root(), v] {
        if tree.mass(sigma) == 0.0 {
            continue;
        }
        for &t in &cfg.times {
            let e = mc_return_probability(tree, sigma, t, cfg.walks, rng)?;
            ret.add(e.estimate, kernel.density(t, sigma, sigma)?, e.stderr);
        }
    }
    Ok([hit, occ, ret])
}

pub(crate) fn hitting_green(cfg: &ExperimentConfig) -> Result<Outcome> {
    let per_tree = ordered_map(cfg.threads, cfg.replicas, |i| {
        let mut rng = stream(cfg, i as u64);
        let (_, ext) = sample_tree(cfg, &mut rng)?;
        walk_checks(cfg, &ext.tree, &mut rng)
    })?;
    let mut out = Outcome::one_stream_each(cfg);
    let names = [
        "hit_first_frequency_vs_closed_form",
        "killed_occupation_vs_green_kernel",
        "return_probability_vs_spectral",
    ];
    for (j, name) in names.iter().enumerate() {
        let a = per_tree
            .iter()
            .fold(Agreement::default(), |acc, c| acc.merge(c[j]));
        out.rows.push(StatRow::record(
            format!("{name} checks"),
            a.total as f64,
            0.0,
            Basis::Oracle,
        ));
        out.rows.push(StatRow::at_least(
            format!("{name} agreement_rate"),
            a.rate(),
            0.95,
            Basis::Oracle,
        ));
    }
    Ok(out)
}
