//! Experiment reports and their CSV form.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{LabError, Result};

/// Where an asserted target comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// A theorem about the limiting tree.
    Theorem,
    /// An elementary identity that holds by construction.
    Elementary,
    /// A value computed by an independent oracle.
    Oracle,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Theorem => "theorem",
            Basis::Elementary => "elementary",
            Basis::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "theorem" => Ok(Basis::Theorem),
            "elementary" => Ok(Basis::Elementary),
            "oracle" => Ok(Basis::Oracle),
            _ => Err(format!("unknown basis `{s}`")),
        }
    }
}

/// One statistic. `pass` is `None` for rows that are recorded but not
/// asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct StatRow {
    pub name: String,
    pub value: f64,
    pub stderr: f64,
    pub target: f64,
    pub tolerance: f64,
    pub basis: Basis,
    pub pass: Option<bool>,
}

impl StatRow {
    /// `|value - target| <= tolerance`.
    pub fn near(
        name: impl Into<String>,
        value: f64,
        stderr: f64,
        target: f64,
        tolerance: f64,
        basis: Basis,
    ) -> Self {
        let pass = (value - target).abs() <= tolerance;
        StatRow {
            name: name.into(),
            value,
            stderr,
            target,
            tolerance,
            basis,
            pass: Some(pass),
        }
    }

    /// `value <= target + tolerance`.
    pub fn at_most(
        name: impl Into<String>,
        value: f64,
        stderr: f64,
        target: f64,
        tolerance: f64,
        basis: Basis,
    ) -> Self {
        StatRow {
            pass: Some(value <= target + tolerance),
            ..StatRow::near(name, value, stderr, target, tolerance, basis)
        }
    }

    /// `value > target`, used for p-values and rates.
    pub fn above(name: impl Into<String>, value: f64, target: f64, basis: Basis) -> Self {
        StatRow {
            pass: Some(value > target),
            ..StatRow::near(name, value, 0.0, target, 0.0, basis)
        }
    }

    /// `value >= target`.
    pub fn at_least(name: impl Into<String>, value: f64, target: f64, basis: Basis) -> Self {
        StatRow {
            pass: Some(value >= target),
            ..StatRow::near(name, value, 0.0, target, 0.0, basis)
        }
    }

    /// A recorded value with no assertion.
    pub fn record(name: impl Into<String>, value: f64, stderr: f64, basis: Basis) -> Self {
        StatRow {
            name: name.into(),
            value,
            stderr,
            target: f64::NAN,
            tolerance: f64::NAN,
            basis,
            pass: None,
        }
    }
}

/// Seed and stream used by one replica.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplicaSeed {
    pub replica: usize,
    pub seed: u64,
    pub stream: u64,
}

/// A small CSV table written next to the report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = csv_writer(path)?;
        let wrap = |source| LabError::Csv {
            path: path.to_path_buf(),
            source,
        };
        w.write_record(&self.header).map_err(wrap)?;
        for r in &self.rows {
            w.write_record(r).map_err(wrap)?;
        }
        w.flush().map_err(|e| LabError::io(path, e))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: Vec<(String, String)>,
    pub seeds: Vec<ReplicaSeed>,
    pub rows: Vec<StatRow>,
    /// Extra tables keyed by file name, such as `heat_kernel.csv`.
    pub tables: Vec<(String, CsvTable)>,
    pub wall_clock: Duration,
}

impl ExperimentReport {
    /// True when every asserted row passes.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &StatRow> {
        self.rows.iter().filter(|r| r.pass == Some(false))
    }

    /// Writes `report.csv`, `seeds.csv`, `run.txt` and the extra tables
    /// into `dir`. Only `run.txt` carries the wall clock, so the CSV files
    /// are identical between runs with the same configuration.
    pub fn write_all(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
        emit_csv(self, &dir.join("report.csv"))?;
        let mut seeds = CsvTable::new(&["replica", "seed", "stream"]);
        for s in &self.seeds {
            seeds.push(vec![
                s.replica.to_string(),
                s.seed.to_string(),
                s.stream.to_string(),
            ]);
        }
        seeds.write(&dir.join("seeds.csv"))?;
        for (name, table) in &self.tables {
            table.write(&dir.join(name))?;
        }
        let mut run = String::new();
        for (k, v) in &self.config {
            run.push_str(&format!("{k} = {v}\n"));
        }
        run.push_str(&format!(
            "# wall_clock_seconds = {:.3}\n",
            self.wall_clock.as_secs_f64()
        ));
        run.push_str(&format!("# passed = {}\n", self.passed()));
        let path = dir.join("run.txt");
        fs::write(&path, run).map_err(|e| LabError::io(&path, e))
    }
}

pub const REPORT_HEADER: [&str; 7] = [
    "name",
    "value",
    "stderr",
    "target",
    "tolerance",
    "basis",
    "pass",
];

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| LabError::io(parent, e))?;
    }
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|source| LabError::Csv {
            path: path.to_path_buf(),
            source,
        })
}

fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        x.to_string()
    }
}

/// Writes the statistic rows as CSV with a header and LF line endings.
/// Missing targets and unasserted pass flags are empty fields.
pub fn emit_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut table = CsvTable::new(&REPORT_HEADER);
    for r in &report.rows {
        table.push(vec![
            r.name.clone(),
            fmt_f64(r.value),
            fmt_f64(r.stderr),
            fmt_f64(r.target),
            fmt_f64(r.tolerance),
            r.basis.to_string(),
            r.pass.map(|p| p.to_string()).unwrap_or_default(),
        ]);
    }
    table.write(path)
}

/// Parses a file written by [`emit_csv`].
pub fn read_report_rows(path: &Path) -> Result<Vec<StatRow>> {
    let wrap = |source| LabError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(wrap)?;
    let header = r.headers().map_err(wrap)?.clone();
    if header.iter().ne(REPORT_HEADER) {
        return Err(LabError::Format {
            path: path.to_path_buf(),
            line: 1,
            message: "unexpected header".into(),
        });
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(wrap)?;
        let bad = |m: String| LabError::Format {
            path: path.to_path_buf(),
            line: i + 2,
            message: m,
        };
        let num = |s: &str| -> Result<f64> {
            if s.is_empty() {
                Ok(f64::NAN)
            } else {
                s.parse().map_err(|_| bad(format!("bad number `{s}`")))
            }
        };
        rows.push(StatRow {
            name: rec[0].to_string(),
            value: num(&rec[1])?,
            stderr: num(&rec[2])?,
            target: num(&rec[3])?,
            tolerance: num(&rec[4])?,
            basis: rec[5].parse().map_err(bad)?,
            pass: match &rec[6] {
                "" => None,
                "true" => Some(true),
                "false" => Some(false),
                s => return Err(bad(format!("bad pass flag `{s}`"))),
            },
        });
    }
    Ok(rows)
}
