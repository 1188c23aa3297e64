//! The experiments behind `crt-lab <experiment>`.

mod bands;
mod excursions;
mod heat;
mod trees;

use std::time::Instant;

use crt_core::discretetree::{extract_tree, uniform_marks, Extraction};
use crt_core::excursion::sample_excursion;
use crt_core::realtree::RealTreeIndex;
use crt_core::RngStream;

use crate::config::{Experiment, ExperimentConfig};
use crate::error::Result;
use crate::report::{CsvTable, ExperimentReport, ReplicaSeed, StatRow};

/// Rows, seeds and tables produced by one experiment body.
#[derive(Default)]
pub(crate) struct Outcome {
    pub rows: Vec<StatRow>,
    pub seeds: Vec<ReplicaSeed>,
    pub tables: Vec<(String, CsvTable)>,
}

impl Outcome {
    /// Replica `i` draws from stream `i`.
    fn one_stream_each(cfg: &ExperimentConfig) -> Self {
        Self::with_seeds(cfg, (0..cfg.replicas).map(|i| (i, i as u64)))
    }

    fn with_seeds(cfg: &ExperimentConfig, streams: impl IntoIterator<Item = (usize, u64)>) -> Self {
        Outcome {
            seeds: streams
                .into_iter()
                .map(|(replica, stream)| ReplicaSeed {
                    replica,
                    seed: cfg.seed,
                    stream,
                })
                .collect(),
            ..Outcome::default()
        }
    }
}

pub(crate) fn stream(cfg: &ExperimentConfig, id: u64) -> RngStream {
    RngStream::new(cfg.seed, id)
}

/// Excursion, index and the tree spanned by `cfg.marks` uniform marks, all
/// drawn from one stream.
pub(crate) fn sample_tree(
    cfg: &ExperimentConfig,
    rng: &mut RngStream,
) -> Result<(RealTreeIndex, Extraction)> {
    let idx = RealTreeIndex::build(sample_excursion(cfg.n, rng)?);
    let marks = uniform_marks(cfg.marks, rng);
    let ext = extract_tree(&idx, &marks)?;
    Ok((idx, ext))
}

/// Runs the configured experiment, writes its CSV files under `cfg.out`
/// and returns the report.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let report = run_in_memory(cfg)?;
    report.write_all(&cfg.out)?;
    Ok(report)
}

/// Like [`run_experiment`] without touching the file system.
pub fn run_in_memory(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let out = match cfg.experiment {
        Experiment::RootVolume => excursions::root_volume(cfg)?,
        Experiment::VolumeMoments => excursions::volume_moments(cfg)?,
        Experiment::UpcrossingLaw => excursions::upcrossing_law(cfg)?,
        Experiment::RerootKs => excursions::reroot_ks(cfg)?,
        Experiment::ResistanceSuite => trees::resistance_suite(cfg)?,
        Experiment::HittingGreen => trees::hitting_green(cfg)?,
        Experiment::AnnealedHk => heat::annealed_hk(cfg)?,
        Experiment::FluctuationBands => bands::fluctuation_bands(cfg)?,
    };
    Ok(ExperimentReport {
        experiment: cfg.experiment.to_string(),
        config: cfg.echo(),
        seeds: out.seeds,
        rows: out.rows,
        tables: out.tables,
        wall_clock: start.elapsed(),
    })
}
