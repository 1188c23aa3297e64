//! Experiment harness for `crt-core`: configuration, seeded parallel
//! replicas, statistical checks, CSV reports and file formats.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod experiments;
pub mod formats;
pub mod pool;
pub mod report;
pub mod stats;

pub use config::{Experiment, ExperimentConfig, OUT_DIR_ENV};
pub use error::{LabError, Result};
pub use experiments::{run_experiment, run_in_memory};
pub use report::{emit_csv, read_report_rows, Basis, ExperimentReport, StatRow};
