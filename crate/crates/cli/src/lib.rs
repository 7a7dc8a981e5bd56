//! Experiment runner behind the `supint` binary.

pub mod config;
pub mod error;
pub mod record;
pub mod runs;

pub use config::ExperimentConfig;
pub use error::CliError;
pub use record::ResultRecord;
pub use runs::execute;
