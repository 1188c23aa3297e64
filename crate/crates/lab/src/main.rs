use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use crt_lab::{run_experiment, Experiment, ExperimentConfig, OUT_DIR_ENV};

/// Run one continuum random tree experiment and write its CSV report.
///
/// Exit status is 0 when every asserted statistic passes, 1 when any
/// fails and 2 on usage or configuration errors.
#[derive(Debug, Parser)]
#[command(name = "crt-lab", version)]
struct Cli {
    experiment: Experiment,
    /// Grid intervals per excursion (a power of two).
    #[arg(long)]
    n: Option<usize>,
    /// Excursions, samples or trees, depending on the experiment.
    #[arg(long)]
    replicas: Option<usize>,
    /// Uniform marks per extracted tree.
    #[arg(long)]
    marks: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; defaults to $CRT_LAB_OUT or results/<experiment>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Flat `key = value` config file. Flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(cli: &Cli) -> crt_lab::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::defaults(cli.experiment);
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
        cfg.out = PathBuf::from(dir);
    }
    if let Some(v) = cli.n {
        cfg.n = v;
    }
    if let Some(v) = cli.replicas {
        cfg.replicas = v;
    }
    if let Some(v) = cli.marks {
        cfg.marks = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = &cli.out {
        cfg.out = v.clone();
    }
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("crt-lab: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("crt-lab: {e}");
            return ExitCode::from(2);
        }
    };
    for row in &report.rows {
        let status = match row.pass {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "info",
        };
        println!(
            "{status:4} {:<56} {:>14.6e}  target {:.6e}  tol {:.3e}",
            row.name, row.value, row.target, row.tolerance
        );
    }
    println!(
        "{}: {} in {:.1}s, report in {}",
        report.experiment,
        if report.passed() {
            "all assertions pass"
        } else {
            "statistical failure"
        },
        report.wall_clock.as_secs_f64(),
        cfg.out.display()
    );
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
