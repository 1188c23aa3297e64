//! The annealed root heat kernel.

use crt_core::walk::{aggregate_curves, SpectralKernel};

use super::{sample_tree, stream, Outcome};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::pool::ordered_map;
use crate::report::{Basis, CsvTable, StatRow};
use crate::stats::loglog_slope;

/// Smallest time the tree resolves: smallest positive vertex mass times
/// smallest edge length.
fn resolution(tree: &crt_core::discretetree::DiscreteTree) -> f64 {
    let mass = tree
        .masses()
        .iter()
        .copied()
        .filter(|m| *m > 0.0)
        .fold(f64::INFINITY, f64::min);
    let edge = (0..tree.len())
        .filter(|&v| tree.parent(v).is_some())
        .map(|v| tree.edge_length(v))
        .fold(f64::INFINITY, f64::min);
    mass * edge
}

pub(crate) fn annealed_hk(cfg: &ExperimentConfig) -> Result<Outcome> {
    let per_tree = ordered_map(cfg.threads, cfg.replicas, |i| {
        let mut rng = stream(cfg, i as u64);
        let (_, ext) = sample_tree(cfg, &mut rng)?;
        let kernel = SpectralKernel::new(&ext.tree)?;
        let curve = kernel.diagonal(ext.tree.root(), &cfg.times)?;
        Ok((curve, resolution(&ext.tree)))
    })?;
    let samples: Vec<Vec<f64>> = per_tree.iter().map(|(c, _)| c.clone()).collect();
    let curve = aggregate_curves(&cfg.times, &samples)?;
    let mut out = Outcome::one_stream_each(cfg);

    let (slope, se) = loglog_slope(&curve.times, &curve.values);
    out.rows.push(StatRow::near(
        format!("annealed_root_heat_kernel_slope trees={}", curve.tree_count),
        slope,
        se,
        -2.0 / 3.0,
        0.07,
        Basis::Theorem,
    ));

    let finest = per_tree.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    out.rows.push(StatRow::at_most(
        "tree_resolution_time_vs_smallest_t",
        finest,
        0.0,
        cfg.times[0] / 100.0,
        0.0,
        Basis::Elementary,
    ));

    let scaled: Vec<f64> = curve
        .times
        .iter()
        .zip(&curve.values)
        .map(|(t, p)| p * t.powf(2.0 / 3.0))
        .collect();
    let lo = scaled.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scaled.iter().copied().fold(0.0, f64::max);
    out.rows.push(StatRow::record(
        "annealed_t^(2/3)_scaled_min",
        lo,
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::record(
        "annealed_t^(2/3)_scaled_max",
        hi,
        0.0,
        Basis::Theorem,
    ));
    let tree_spread = samples
        .iter()
        .flat_map(|c| c.iter().zip(&cfg.times).map(|(p, t)| p * t.powf(2.0 / 3.0)))
        .fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(x), b.max(x)));
    out.rows.push(StatRow::record(
        "per_tree_t^(2/3)_scaled_min",
        tree_spread.0,
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::record(
        "per_tree_t^(2/3)_scaled_max",
        tree_spread.1,
        0.0,
        Basis::Theorem,
    ));

    let mut table = CsvTable::new(&["t", "estimate", "stderr", "tree_count"]);
    for j in 0..curve.times.len() {
        table.push(vec![
            curve.times[j].to_string(),
            curve.values[j].to_string(),
            curve.stderr[j].to_string(),
            curve.tree_count.to_string(),
        ]);
    }
    out.tables.push(("heat_kernel.csv".into(), table));
    Ok(out)
}
