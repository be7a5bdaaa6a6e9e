use std::process::ExitCode;

use clap::{Parser, Subcommand};
use genepu::cli::{self, ConfigArgs, PipelineConfig};

#[derive(Parser)]
#[command(name = "genepu", version, about = "Disease-gene prioritization by network features and positive-unlabeled labeling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the four network features for every gene.
    Features(ConfigArgs),
    /// Compute features and assign the five pseudo-labels.
    Label(ConfigArgs),
    /// Masked-seed recovery over k folds.
    Validate(ConfigArgs),
    /// Rank non-seed genes and score them against an extended seed list.
    Discover(ConfigArgs),
    /// Train and evaluate the softmax classifier on the pseudo-labels.
    Classify(ConfigArgs),
}

type Runner = fn(&PipelineConfig) -> genepu::Result<Vec<std::path::PathBuf>>;

fn run(args: &ConfigArgs, runner: Runner) -> genepu::Result<()> {
    let cfg = args.resolve()?;
    if let Some(n) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not configure thread pool: {e}");
        }
    }
    log::info!("using {} worker threads", rayon::current_num_threads());
    runner(&cfg)?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let (args, runner): (&ConfigArgs, Runner) = match &cli.command {
        Command::Features(a) => (a, cli::cmd_features),
        Command::Label(a) => (a, cli::cmd_label),
        Command::Validate(a) => (a, cli::cmd_validate),
        Command::Discover(a) => (a, cli::cmd_discover),
        Command::Classify(a) => (a, cli::cmd_classify),
    };
    match run(args, runner) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let report = serde_json::json!({ "error": e.to_string(), "kind": e.kind() });
            eprintln!("{report}");
            ExitCode::FAILURE
        }
    }
}
