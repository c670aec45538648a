//! Configuration, sweep execution and report output behind the `qduality` binary.

mod config;
mod run;

use std::path::PathBuf;

pub use config::{parse_config, Mode, RunConfig, SweepConfig};
pub use run::{
    alpha_report, beta_for_config, run, run_case, write_report, ConfigFamily, ALPHA_P_INDICES, ALPHA_T_VALUES,
    EXAMPLE_POINTS, PROP1_MAX_W, WORKERS_ENV,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Library(#[from] crate::Error),
}
