//! Ball-volume fluctuation bands plus the randomized invariant suites of
//! the tree metric and the walk.

use crt_core::realtree::RealTreeIndex;
use crt_core::walk::{ChainGenerator, SpectralKernel};
use crt_core::RngStream;
use rand::Rng;

use super::trees::{walk_checks, Agreement};
use super::{sample_tree, stream, Outcome};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::pool::ordered_map;
use crate::report::{Basis, CsvTable, StatRow};

/// Allowed ratio between the largest and smallest normalized volume over
/// the radius grid: two decades.
pub const BAND_WIDTH: f64 = 100.0;

/// Sample pairs and quadruples used for the metric checks on each tree.
const METRIC_SAMPLES: usize = 2_000;

/// Trees on which the Monte-Carlo walk checks run.
const WALK_TREES: usize = 4;

struct TreeResult {
    sup: Vec<f64>,
    inf: Vec<f64>,
    triangle: f64,
    symmetry: f64,
    four_point: f64,
    balance: f64,
    kernel_symmetry: f64,
    chapman: f64,
    walks: Option<[Agreement; 3]>,
}

fn spread(x: &[f64]) -> f64 {
    let hi = x.iter().copied().fold(0.0, f64::max);
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    hi / lo
}

fn metric_checks(idx: &RealTreeIndex, rng: &mut RngStream) -> Result<(f64, f64, f64)> {
    let d = |a: f64, b: f64| idx.tree_distance(a, b);
    let (mut tri, mut sym, mut four) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..METRIC_SAMPLES {
        let p: [f64; 4] = [rng.random(), rng.random(), rng.random(), rng.random()];
        let st = d(p[0], p[1])?;
        sym = sym.max((st - d(p[1], p[0])?).abs());
        tri = tri.max(st - d(p[0], p[2])? - d(p[2], p[1])?);
        let mut sums = [
            st + d(p[2], p[3])?,
            d(p[0], p[2])? + d(p[1], p[3])?,
            d(p[0], p[3])? + d(p[1], p[2])?,
        ];
        sums.sort_by(f64::total_cmp);
        four = four.max(sums[2] - sums[1]);
    }
    Ok((tri.max(0.0), sym, four))
}

fn one_tree(cfg: &ExperimentConfig, i: usize) -> Result<TreeResult> {
    let mut rng = stream(cfg, i as u64);
    let (idx, ext) = sample_tree(cfg, &mut rng)?;
    let (sup, inf) = idx.extreme_profiles(&cfg.radii)?;
    let (triangle, symmetry, four_point) = metric_checks(&idx, &mut rng)?;

    let tree = &ext.tree;
    let balance = ChainGenerator::new(tree)?.detailed_balance_defect();
    let kernel = SpectralKernel::new(tree)?;
    let charged: Vec<usize> = (0..tree.len()).filter(|&v| tree.mass(v) > 0.0).collect();
    let (mut kernel_symmetry, mut chapman) = (0.0f64, 0.0f64);
    if tree.len() <= 100 {
        let (t, s) = (0.02, 0.05);
        for &u in charged.iter().take(5) {
            for &v in &charged {
                let a = kernel.density(t, u, v)?;
                kernel_symmetry = kernel_symmetry.max((a - kernel.density(t, v, u)?).abs());
            }
            let lhs = kernel.density(t + s, u, u)?;
            let mut rhs = 0.0;
            for &v in &charged {
                rhs += tree.mass(v) * kernel.density(t, u, v)? * kernel.density(s, v, u)?;
            }
            chapman = chapman.max((lhs - rhs).abs() / lhs.max(1.0));
        }
    }
    let walks = if i < WALK_TREES {
        Some(walk_checks(cfg, tree, &mut rng)?)
    } else {
        None
    };
    Ok(TreeResult {
        sup: sup.volumes,
        inf: inf.volumes,
        triangle,
        symmetry,
        four_point,
        balance,
        kernel_symmetry,
        chapman,
        walks,
    })
}

pub(crate) fn fluctuation_bands(cfg: &ExperimentConfig) -> Result<Outcome> {
    let results = ordered_map(cfg.threads, cfg.replicas, |i| one_tree(cfg, i))?;
    let mut out = Outcome::one_stream_each(cfg);
    let mut table = CsvTable::new(&["tree", "radius", "sup", "inf", "sup_ratio", "inf_ratio"]);
    let (mut sup_spread, mut inf_spread) = (0.0f64, 0.0f64);
    for (i, r) in results.iter().enumerate() {
        let mut sup_ratio = Vec::new();
        let mut inf_ratio = Vec::new();
        for (j, &rad) in cfg.radii.iter().enumerate() {
            let log = (1.0 / rad).ln();
            sup_ratio.push(r.sup[j] / (rad * rad * log));
            inf_ratio.push(r.inf[j] / (rad * rad / log));
            table.push(vec![
                i.to_string(),
                rad.to_string(),
                r.sup[j].to_string(),
                r.inf[j].to_string(),
                sup_ratio[j].to_string(),
                inf_ratio[j].to_string(),
            ]);
        }
        sup_spread = sup_spread.max(spread(&sup_ratio));
        inf_spread = inf_spread.max(spread(&inf_ratio));
    }
    out.tables.push(("bands.csv".into(), table));
    out.rows.push(StatRow::at_most(
        "sup_volume_over_r2_log_band worst_spread",
        sup_spread,
        0.0,
        BAND_WIDTH,
        0.0,
        Basis::Theorem,
    ));
    out.rows.push(StatRow::at_most(
        "inf_volume_over_r2_per_log_band worst_spread",
        inf_spread,
        0.0,
        BAND_WIDTH,
        0.0,
        Basis::Theorem,
    ));

    let max = |f: fn(&TreeResult) -> f64| results.iter().map(f).fold(0.0, f64::max);
    let exact = [
        (
            "metric_symmetry max_error",
            max(|r| r.symmetry),
            Basis::Elementary,
        ),
        (
            "triangle_inequality max_excess",
            max(|r| r.triangle),
            Basis::Elementary,
        ),
        (
            "four_point_condition max_defect",
            max(|r| r.four_point),
            Basis::Elementary,
        ),
        (
            "detailed_balance max_defect",
            max(|r| r.balance),
            Basis::Elementary,
        ),
    ];
    for (name, value, basis) in exact {
        out.rows
            .push(StatRow::at_most(name, value, 0.0, 0.0, 1e-12, basis));
    }
    out.rows.push(StatRow::at_most(
        "heat_kernel_symmetry max_error",
        max(|r| r.kernel_symmetry),
        0.0,
        0.0,
        1e-10,
        Basis::Elementary,
    ));
    out.rows.push(StatRow::at_most(
        "chapman_kolmogorov max_relative_error",
        max(|r| r.chapman),
        0.0,
        0.0,
        1e-8,
        Basis::Elementary,
    ));
    let names = [
        "hit_first",
        "killed_occupation",
        "return_probability_vs_spectral",
    ];
    for (j, name) in names.iter().enumerate() {
        let a = results
            .iter()
            .filter_map(|r| r.walks)
            .fold(Agreement::default(), |acc, w| acc.merge(w[j]));
        out.rows.push(StatRow::at_least(
            format!("{name} agreement_rate"),
            a.rate(),
            0.95,
            Basis::Oracle,
        ));
    }
    Ok(out)
}
