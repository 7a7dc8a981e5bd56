use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    /// Process exit status.
    pub fn exit_code(&self) -> u8 {
        2
    }
}
