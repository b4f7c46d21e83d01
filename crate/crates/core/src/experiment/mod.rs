//! JSON experiment configs, the batch runner and report writers.

mod config;
mod run;

pub use config::*;
pub use run::*;
