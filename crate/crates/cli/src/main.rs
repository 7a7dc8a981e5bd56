use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use supint_cli::config::Format;
use supint_cli::{execute, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "supint", version, about = "Curvature tables, trajectories, audits and potential scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sectional and scalar curvature over a coordinate grid.
    Curvature(Common),
    /// Integrate one trajectory and log its invariants.
    Geodesic(Common),
    /// Randomized property suites.
    Audit(Common),
    /// Green function and intrinsic potentials over a radial grid.
    Potential(Common),
}

#[derive(Args)]
struct Common {
    /// TOML config, or the JSON `config_echo` of an earlier record.
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when absent from both flag and config.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl Command {
    fn parts(&self) -> (&'static str, &Common) {
        match self {
            Command::Curvature(c) => ("curvature-grid", c),
            Command::Geodesic(c) => ("geodesic", c),
            Command::Audit(c) => ("audit", c),
            Command::Potential(c) => ("potential-scan", c),
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (kind, args) = cli.command.parts();
    let mut config = ExperimentConfig::load(&args.config)?;
    if config.kind() != kind {
        return Err(CliError::Config(format!("config describes a `{}` run, not `{kind}`", config.kind())));
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(tol) = args.tol {
        config.override_tol(tol);
    }
    let format = match args.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => config.output.format,
    };
    let out = args.out.clone().or_else(|| config.output.path.clone());
    let record = execute(&config)?;
    let written = record.write(out.as_deref(), format)?;
    let failed: Vec<&str> = record.summary.properties.iter().filter(|p| !p.passed).map(|p| p.name.as_str()).collect();
    for path in &written {
        eprintln!("wrote {}", path.display());
    }
    if failed.is_empty() {
        eprintln!("{kind}: all {} properties pass", record.summary.properties.len());
    } else {
        eprintln!("{kind}: failed {}", failed.join(", "));
    }
    Ok(record.summary.passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
