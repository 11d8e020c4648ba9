//! Command-line driver: parses a [`RunConfig`], runs the selected
//! experiments, writes one CSV per experiment plus `summary.txt`.
//!
//! Every acceptance check becomes a line
//! `CHECK <name> PASS|FAIL <value> <threshold>` in the summary; the exit
//! code is zero only if all selected checks pass.

mod config;
mod run;
mod table;

pub use config::{parse_config, Command, ConfigError, RunConfig, OUTPUT_DIR_ENV};
pub use run::{run, Check, Comparison, RunOutcome};
pub use table::{format_float, CsvCell, CsvTable};
