//! Experiment configuration: defaults per experiment, a flat `key = value`
//! file format and command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{LabError, Result};

/// Environment variable that redirects the output directory.
pub const OUT_DIR_ENV: &str = "CRT_LAB_OUT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Experiment {
    RootVolume,
    UpcrossingLaw,
    VolumeMoments,
    RerootKs,
    ResistanceSuite,
    HittingGreen,
    AnnealedHk,
    FluctuationBands,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::RootVolume,
        Experiment::UpcrossingLaw,
        Experiment::VolumeMoments,
        Experiment::RerootKs,
        Experiment::ResistanceSuite,
        Experiment::HittingGreen,
        Experiment::AnnealedHk,
        Experiment::FluctuationBands,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::RootVolume => "root-volume",
            Experiment::UpcrossingLaw => "upcrossing-law",
            Experiment::VolumeMoments => "volume-moments",
            Experiment::RerootKs => "reroot-ks",
            Experiment::ResistanceSuite => "resistance-suite",
            Experiment::HittingGreen => "hitting-green",
            Experiment::AnnealedHk => "annealed-hk",
            Experiment::FluctuationBands => "fluctuation-bands",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
                LabError::Config(format!(
                    "unknown experiment `{s}`; valid: {}",
                    valid.join(", ")
                ))
            })
    }
}

/// Everything an experiment run depends on.
///
/// `replicas` counts excursions, ladder samples or trees depending on the
/// experiment; `walks` is the number of simulated walks per Monte-Carlo
/// check.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: usize,
    pub replicas: usize,
    pub marks: usize,
    pub walks: usize,
    pub audit_trees: usize,
    pub radii: Vec<f64>,
    pub times: Vec<f64>,
    pub seed: u64,
    pub out: PathBuf,
    pub threads: Option<usize>,
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..points)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (points - 1) as f64))
        .collect()
}

impl ExperimentConfig {
    /// Default sizes for `experiment`.
    pub fn defaults(experiment: Experiment) -> Self {
        let mut c = ExperimentConfig {
            experiment,
            n: 1 << 14,
            replicas: 10_000,
            marks: 64,
            walks: 20_000,
            audit_trees: 50,
            radii: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            times: Vec::new(),
            seed: 20_240_917,
            out: PathBuf::from("results").join(experiment.name()),
            threads: None,
        };
        match experiment {
            Experiment::RootVolume => {}
            Experiment::RerootKs => c.radii = vec![0.2],
            Experiment::UpcrossingLaw => {
                c.replicas = 100_000;
                c.radii = vec![0.05];
            }
            Experiment::VolumeMoments => c.radii = vec![0.1, 0.2, 0.3],
            Experiment::ResistanceSuite => {
                c.n = 1 << 12;
                c.replicas = 100;
                c.radii = vec![0.05, 0.1, 0.2, 0.4];
            }
            Experiment::HittingGreen => {
                c.n = 1 << 12;
                c.replicas = 4;
                c.marks = 16;
                c.times = vec![0.01, 0.05, 0.2];
            }
            Experiment::AnnealedHk => {
                c.n = 1 << 18;
                c.replicas = 200;
                c.marks = 512;
                c.times = log_grid(1e-3, 10f64.powf(-1.5), 13);
            }
            Experiment::FluctuationBands => {
                c.n = 1 << 12;
                c.replicas = 20;
                c.marks = 32;
                c.radii = log_grid(2f64.powi(-8), 2f64.powi(-4), 9);
                c.times = vec![0.01, 0.05];
                c.walks = 10_000;
            }
        }
        c
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| LabError::Config(format!("invalid {what} `{value}`"));
        match key {
            "experiment" => {
                let e: Experiment = value.parse()?;
                if e != self.experiment {
                    return Err(LabError::Config(format!(
                        "config is for `{e}` but `{}` was requested",
                        self.experiment
                    )));
                }
            }
            "n" => self.n = value.parse().map_err(|_| bad("n"))?,
            "replicas" => self.replicas = value.parse().map_err(|_| bad("replicas"))?,
            "marks" => self.marks = value.parse().map_err(|_| bad("marks"))?,
            "walks" => self.walks = value.parse().map_err(|_| bad("walks"))?,
            "audit_trees" => self.audit_trees = value.parse().map_err(|_| bad("audit_trees"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "out" => self.out = PathBuf::from(value),
            "threads" => self.threads = Some(value.parse().map_err(|_| bad("threads"))?),
            "radii" => self.radii = parse_list(value).ok_or_else(|| bad("radii"))?,
            "times" => self.times = parse_list(value).ok_or_else(|| bad("times"))?,
            _ => return Err(LabError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies a flat config text: one `key = value` per line, `#` starts a
    /// comment, lists are comma separated.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                LabError::Config(format!("line {}: expected `key = value`", i + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| LabError::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(LabError::Config(m.to_string()));
        if self.n < 2 || !self.n.is_power_of_two() {
            return fail("n must be a power of two >= 2");
        }
        if self.replicas == 0 {
            return fail("replicas must be at least 1");
        }
        if self.threads == Some(0) {
            return fail("threads must be at least 1");
        }
        for (name, grid) in [("radii", &self.radii), ("times", &self.times)] {
            if grid.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
                return fail(&format!("{name} must be positive"));
            }
            if grid.windows(2).any(|w| w[0] >= w[1]) {
                return fail(&format!("{name} must be strictly increasing"));
            }
        }
        let needs_trees = matches!(
            self.experiment,
            Experiment::ResistanceSuite
                | Experiment::HittingGreen
                | Experiment::AnnealedHk
                | Experiment::FluctuationBands
        );
        if needs_trees && self.marks == 0 {
            return fail("marks must be at least 1");
        }
        if self.experiment == Experiment::AnnealedHk && self.replicas < 2 {
            return fail("annealed-hk needs at least two trees");
        }
        if self.experiment == Experiment::AnnealedHk && self.times.len() < 2 {
            return fail("annealed-hk needs at least two times");
        }
        if self.radii.is_empty()
            && !matches!(
                self.experiment,
                Experiment::HittingGreen | Experiment::AnnealedHk
            )
        {
            return fail("radii must not be empty");
        }
        Ok(())
    }

    /// `key = value` lines reproducing this configuration.
    pub fn echo(&self) -> Vec<(String, String)> {
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = vec![
            ("experiment".to_string(), self.experiment.to_string()),
            ("n".to_string(), self.n.to_string()),
            ("replicas".to_string(), self.replicas.to_string()),
            ("marks".to_string(), self.marks.to_string()),
            ("walks".to_string(), self.walks.to_string()),
            ("audit_trees".to_string(), self.audit_trees.to_string()),
            ("radii".to_string(), list(&self.radii)),
            ("times".to_string(), list(&self.times)),
            ("seed".to_string(), self.seed.to_string()),
            ("out".to_string(), self.out.display().to_string()),
        ];
        if let Some(t) = self.threads {
            out.push(("threads".to_string(), t.to_string()));
        }
        out
    }
}

fn parse_list(s: &str) -> Option<Vec<f64>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        let err = "nope".parse::<Experiment>().unwrap_err().to_string();
        assert!(err.contains("root-volume") && err.contains("fluctuation-bands"));
    }

    #[test]
    fn defaults_validate() {
        for e in Experiment::ALL {
            ExperimentConfig::defaults(e).validate().unwrap();
        }
    }

    #[test]
    fn text_overrides_defaults() {
        let mut c = ExperimentConfig::defaults(Experiment::RootVolume);
        c.apply_text("# sizes\nn = 1024\nreplicas=50  # small\nradii = 0.1, 0.3\n\nseed = 9\n")
            .unwrap();
        assert_eq!(c.n, 1024);
        assert_eq!(c.replicas, 50);
        assert_eq!(c.radii, vec![0.1, 0.3]);
        assert_eq!(c.seed, 9);
        assert!(c.apply_text("bogus = 1").is_err());
        assert!(c.apply_text("n 12").is_err());
        assert!(c.apply_text("experiment = annealed-hk").is_err());
    }

    #[test]
    fn echo_round_trips() {
        let mut c = ExperimentConfig::defaults(Experiment::AnnealedHk);
        c.threads = Some(3);
        let text: String = c
            .echo()
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect();
        let mut d = ExperimentConfig::defaults(Experiment::AnnealedHk);
        d.apply_text(&text).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn validation_rejects_bad_grids() {
        let mut c = ExperimentConfig::defaults(Experiment::RootVolume);
        c.n = 1000;
        assert!(c.validate().is_err());
        c.n = 1024;
        c.radii = vec![0.2, 0.1];
        assert!(c.validate().is_err());
        c.radii = vec![-0.1];
        assert!(c.validate().is_err());
        c.radii = vec![0.1];
        c.replicas = 0;
        assert!(c.validate().is_err());
    }
}
