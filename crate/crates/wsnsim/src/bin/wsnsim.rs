use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use wsnsim::config::{load_settings, Settings};
use wsnsim::experiment::{parse_seeds, ExperimentSpec};
use wsnsim::{run_experiment, Error};
use wsnsim_core::Protocol;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProtocolArg {
    Leach,
    Eleach,
    Proposed,
}

impl From<ProtocolArg> for Protocol {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Leach => Protocol::Leach,
            ProtocolArg::Eleach => Protocol::ELeach,
            ProtocolArg::Proposed => Protocol::Proposed,
        }
    }
}

/// Discrete-round simulator for clustered wireless sensor networks.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// Built-in experiment: 1 static/homogeneous, 2 static/half-doubled,
    /// 3 orbit/homogeneous, 4 orbit/half-doubled.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    experiment: Option<u8>,

    /// Protocol to run (repeatable); defaults to all three.
    #[arg(long = "protocol", value_enum)]
    protocols: Vec<ProtocolArg>,

    /// Seeds as `a..b` (inclusive), `a,b,c` or a single value [default: 1..10].
    #[arg(long, conflicts_with = "seed")]
    seeds: Option<String>,

    /// Single seed (repeatable).
    #[arg(long)]
    seed: Vec<u64>,

    /// Configuration file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, env = "WSNSIM_OUT", default_value = "wsnsim-out")]
    out: PathBuf,

    /// Round budget per run.
    #[arg(long)]
    max_rounds: Option<u64>,

    /// Configuration override `key=value` (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn build_spec(args: Args) -> Result<ExperimentSpec, Error> {
    let seeds = match (&args.seeds, args.seed.is_empty()) {
        (Some(text), _) => parse_seeds(text)?,
        (None, false) => args.seed.clone(),
        (None, true) => (1..=10).collect(),
    };

    let mut spec = match args.experiment {
        Some(n) => ExperimentSpec::builtin(n, seeds, args.out.clone())?,
        None => ExperimentSpec {
            label: "custom".into(),
            protocols: Protocol::ALL.to_vec(),
            seeds,
            settings: Settings::default(),
            output_dir: args.out.clone(),
        },
    };

    if let Some(path) = &args.config {
        let mut settings = load_settings(path)?;
        // The experiment preset wins over the file for its two settings.
        if args.experiment.is_some() {
            settings.bs_mode = spec.settings.bs_mode;
            settings.base.heterogeneity = spec.settings.base.heterogeneity;
        }
        spec.settings = settings;
    }
    for assignment in &args.overrides {
        spec.settings.apply_assignment(assignment)?;
    }
    if let Some(max_rounds) = args.max_rounds {
        spec.settings.base.max_rounds = max_rounds;
    }
    if !args.protocols.is_empty() {
        spec.protocols = args.protocols.iter().map(|&p| p.into()).collect();
    }
    spec.settings.to_config()?;
    Ok(spec)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = build_spec(args).and_then(|spec| {
        let output = run_experiment(&spec)?;
        print!("{}", output.comparison_table(&spec.protocols));
        println!("summary: {}", output.summary_path.display());
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
