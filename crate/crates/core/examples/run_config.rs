//! Runs a JSON experiment config in memory and prints the report.
//!
//!     cargo run --release --example run_config -- crates/core/examples/two_halfspaces.json

use ssne::experiment::{execute, ExperimentConfig, RunOptions};
use std::path::PathBuf;

fn main() -> ssne::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/disjoint_balls.json")
    });
    let cfg = ExperimentConfig::load(&path)?;
    let opts = RunOptions {
        samples: Some(5_000),
        ..RunOptions::default()
    };
    let exec = execute(&cfg, &opts)?;
    println!("{}", exec.report.to_json()?);
    std::process::exit(exec.report.outcome.exit_code());
}
