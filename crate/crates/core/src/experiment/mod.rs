//! Sweep harness, configuration files, presets, galleries and the CLI.

pub mod cli;
pub mod config;
pub mod gallery;
pub mod presets;
pub mod sweep;

pub use config::{parse_config, SweepJob};
pub use sweep::{equidistant, run_sweep, Measure, SigmaAxis, SweepConfig, SweepResult, SweepRow};
