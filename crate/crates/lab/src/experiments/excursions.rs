//! Experiments on excursion functionals and the upcrossing ladder.

use crt_core::excursion::{sample_bm_upcrossings, sample_excursion};
use rand::Rng;

use super::{stream, Outcome};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::pool::ordered_map;
use crate::report::{Basis, StatRow};
use crate::stats::{chi_square, ks_two_sample, Summary};

/// Occupation times below each radius, one row per excursion. The
/// occupation time below `r` is the root ball volume `mu(B(rho, r))`.
fn root_occupations(cfg: &ExperimentConfig) -> Result<Vec<Vec<f64>>> {
    ordered_map(cfg.threads, cfg.replicas, |i| {
        let f = sample_excursion(cfg.n, &mut stream(cfg, i as u64))?;
        Ok(cfg.radii.iter().map(|&r| f.occupation_below(r)).collect())
    })
}

fn column(rows: &[Vec<f64>], j: usize, power: i32) -> Vec<f64> {
    rows.iter().map(|r| r[j].powi(power)).collect()
}

pub(crate) fn root_volume(cfg: &ExperimentConfig) -> Result<Outcome> {
    let samples = root_occupations(cfg)?;
    let mut out = Outcome::one_stream_each(cfg);
    let bias = 4.0 / cfg.n as f64;
    for (j, &r) in cfg.radii.iter().enumerate() {
        let s = Summary::of(&column(&samples, j, 1));
        let target = 1.0 - (-2.0 * r * r).exp();
        out.rows.push(StatRow::near(
            format!("root_ball_volume_mean r={r}"),
            s.mean,
            s.stderr,
            target,
            3.0 * s.stderr + bias,
            Basis::Theorem,
        ));
    }
    Ok(out)
}

pub(crate) fn volume_moments(cfg: &ExperimentConfig) -> Result<Outcome> {
    let samples = root_occupations(cfg)?;
    let mut out = Outcome::one_stream_each(cfg);
    for (j, &r) in cfg.radii.iter().enumerate() {
        for k in 1..=3 {
            let s = Summary::of(&column(&samples, j, k));
            let factorial: f64 = (1..=k + 1).map(f64::from).product();
            out.rows.push(StatRow::at_most(
                format!("occupation_moment k={k} r={r}"),
                s.mean,
                s.stderr,
                factorial * r.powi(2 * k),
                3.0 * s.stderr,
                Basis::Theorem,
            ));
        }
    }
    Ok(out)
}

pub(crate) fn upcrossing_law(cfg: &ExperimentConfig) -> Result<Outcome> {
    let delta = cfg.radii[0];
    let counts = ordered_map(cfg.threads, cfg.replicas, |i| {
        Ok(sample_bm_upcrossings(delta, &mut stream(cfg, i as u64))?)
    })?;
    let mut out = Outcome::one_stream_each(cfg);

    let mut bins = [0u64; 6];
    for &c in &counts {
        bins[(c as usize).min(5)] += 1;
    }
    let mut probs: Vec<f64> = (0..5).map(|k| 0.5f64.powi(k + 1)).collect();
    probs.push(0.5f64.powi(5));
    let (stat, p) = chi_square(&bins, &probs);
    out.rows.push(StatRow::record(
        "upcrossing_chi_square_statistic",
        stat,
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::above(
        "upcrossing_chi_square_p",
        p,
        0.01,
        Basis::Theorem,
    ));

    let as_f64: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let zero: Vec<f64> = counts
        .iter()
        .map(|&c| f64::from(u8::from(c == 0)))
        .collect();
    let s = Summary::of(&zero);
    out.rows.push(StatRow::near(
        "upcrossing_p_zero",
        s.mean,
        s.stderr,
        0.5,
        3.0 * s.stderr,
        Basis::Theorem,
    ));
    let s = Summary::of(&as_f64);
    out.rows.push(StatRow::near(
        "upcrossing_mean",
        s.mean,
        s.stderr,
        1.0,
        3.0 * s.stderr,
        Basis::Elementary,
    ));
    // E[1.5^N] = 2 but 1.5^N has infinite variance, so this is recorded only.
    let pgf: Vec<f64> = counts.iter().map(|&c| 1.5f64.powi(c as i32)).collect();
    let s = Summary::of(&pgf);
    out.rows.push(StatRow::record(
        "upcrossing_pgf z=1.5",
        s.mean,
        s.stderr,
        Basis::Theorem,
    ));
    Ok(out)
}

pub(crate) fn reroot_ks(cfg: &ExperimentConfig) -> Result<Outcome> {
    let level = cfg.radii[0];
    let pairs = ordered_map(cfg.threads, cfg.replicas, |i| {
        let f = sample_excursion(cfg.n, &mut stream(cfg, 2 * i as u64))?;
        let mut rng = stream(cfg, 2 * i as u64 + 1);
        let g = sample_excursion(cfg.n, &mut rng)?;
        let u: f64 = rng.random();
        let h = g.reroot_shift(u)?;
        Ok([
            f.height(),
            h.height(),
            f.occupation_below(level),
            h.occupation_below(level),
        ])
    })?;
    let mut out = Outcome::with_seeds(cfg, (0..2 * cfg.replicas).map(|s| (s / 2, s as u64)));
    let col = |j: usize| pairs.iter().map(|p| p[j]).collect::<Vec<_>>();
    let (d, p) = ks_two_sample(&col(0), &col(1));
    out.rows.push(StatRow::record(
        "reroot_height_ks_statistic",
        d,
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::above(
        "reroot_height_ks_p",
        p,
        0.01,
        Basis::Theorem,
    ));
    let (d, p) = ks_two_sample(&col(2), &col(3));
    out.rows.push(StatRow::record(
        format!("reroot_occupation_ks_statistic level={level}"),
        d,
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::above(
        format!("reroot_occupation_ks_p level={level}"),
        p,
        0.01,
        Basis::Theorem,
    ));
    Ok(out)
}
