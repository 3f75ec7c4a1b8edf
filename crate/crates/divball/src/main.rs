use clap::Parser;
use divball::{run, RunOptions};
use std::path::PathBuf;
use std::process::ExitCode;

/// Worst-case expectations over divergence balls around heavy-tailed models.
#[derive(Debug, Parser)]
#[command(name = "divball", version)]
struct Cli {
    /// JSON job config.
    #[arg(long)]
    config: PathBuf,
    /// Output path, overriding the one in the config.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for tables, sweeps and matrices.
    #[arg(long, env = "DIVBALL_THREADS")]
    threads: Option<usize>,
    /// Log progress to standard error.
    #[arg(long)]
    verbose: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let opts = RunOptions { output: cli.output, threads: cli.threads };
    match run(&cli.config, &opts) {
        Ok(path) => {
            log::info!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
