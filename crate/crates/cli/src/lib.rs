//! Configuration, figure recipes, CSV output and self-checks behind the
//! `junction` command-line tool.

pub mod checks;
pub mod config;
pub mod sweep;

pub use config::{Config, ConfigError};
pub use sweep::{run_sweep, write_csv, Recipe, ResultRow, SweepError, SweepResult};
