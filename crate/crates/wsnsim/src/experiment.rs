//! Multi-seed experiment runner.
//!
//! An experiment is the cross product of protocols and seeds over one base
//! configuration. Each run writes `<label>_<protocol>_seed<seed>.csv` and the
//! experiment writes `<label>_summary.csv`; runs execute in parallel but the
//! summary is always ordered by protocol, then seed.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;
use wsnsim_core::{
    aggregate, run_simulation, summarize, Heterogeneity, LifetimeReport, NetworkConfig, Protocol,
};

use crate::config::{BsMode, Settings};
use crate::csv::{write_summary_csv, write_trace_csv, SummaryRow};
use crate::Error;

/// Base station mode and energy distribution of built-in experiment `n`:
/// 1 static/homogeneous, 2 static/half doubled, 3 orbit/homogeneous,
/// 4 orbit/half doubled.
pub fn preset(n: u8) -> Option<(BsMode, Heterogeneity)> {
    match n {
        1 => Some((BsMode::Static, Heterogeneity::Homogeneous)),
        2 => Some((BsMode::Static, Heterogeneity::HalfDoubled)),
        3 => Some((BsMode::Orbit, Heterogeneity::Homogeneous)),
        4 => Some((BsMode::Orbit, Heterogeneity::HalfDoubled)),
        _ => None,
    }
}

/// Parses `3`, `1,4,9`, `1..10` (inclusive) or `1..=10`.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>, Error> {
    let bad = || Error::InvalidValue {
        key: "seeds".into(),
        value: text.into(),
        expected: "a seed, a comma separated list or an inclusive range a..b",
    };
    let mut seeds = Vec::new();
    for part in text.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            seeds.extend(lo..=hi);
        } else {
            seeds.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(seeds)
}

/// What to run and where to put the results.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    /// Prefix of every output file.
    pub label: String,
    pub protocols: Vec<Protocol>,
    pub seeds: Vec<u64>,
    /// Base configuration; protocol and seed are set per run.
    pub settings: Settings,
    pub output_dir: PathBuf,
}

impl ExperimentSpec {
    /// Spec for built-in experiment `n` over all protocols.
    pub fn builtin(n: u8, seeds: Vec<u64>, output_dir: PathBuf) -> Result<Self, Error> {
        let (bs_mode, heterogeneity) =
            preset(n).ok_or_else(|| Error::Experiment(format!("no built-in experiment {n}")))?;
        let defaults = Settings::default();
        let settings = Settings {
            bs_mode,
            base: NetworkConfig {
                heterogeneity,
                ..defaults.base.clone()
            },
            ..defaults
        };
        Ok(Self {
            label: format!("exp{n}"),
            protocols: Protocol::ALL.to_vec(),
            seeds,
            settings,
            output_dir,
        })
    }

    /// Configuration of one run.
    pub fn run_config(&self, protocol: Protocol, seed: u64) -> Result<NetworkConfig, Error> {
        let mut cfg = self.settings.to_config()?;
        cfg.protocol = protocol;
        cfg.seed = seed;
        Ok(cfg)
    }

    fn trace_path(&self, protocol: Protocol, seed: u64) -> PathBuf {
        self.output_dir
            .join(format!("{}_{}_seed{}.csv", self.label, protocol, seed))
    }

    fn summary_path(&self) -> PathBuf {
        self.output_dir.join(format!("{}_summary.csv", self.label))
    }
}

/// Result of one (protocol, seed) run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub protocol: Protocol,
    pub seed: u64,
    pub report: LifetimeReport,
    pub trace_path: PathBuf,
}

/// Everything an experiment produced.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    /// Ordered by protocol (as listed in the spec), then seed.
    pub runs: Vec<RunRecord>,
    pub summary_path: PathBuf,
}

impl ExperimentOutput {
    /// Reports of the runs of `protocol`, in seed order.
    pub fn reports(&self, protocol: Protocol) -> Vec<LifetimeReport> {
        self.runs
            .iter()
            .filter(|r| r.protocol == protocol)
            .map(|r| r.report.clone())
            .collect()
    }

    /// Median milestones per protocol as a printable table.
    pub fn comparison_table(&self, protocols: &[Protocol]) -> String {
        let cell = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |v| format!("{v:.1}"));
        let mut out = format!(
            "{:<10} {:>5} {:>12} {:>12} {:>12}\n",
            "protocol", "runs", "first_death", "half_dead", "pct70_dead"
        );
        for &protocol in protocols {
            let s = aggregate(&self.reports(protocol));
            let [a, b, c] = s.milestones().map(|m| cell(m.median));
            let _ = writeln!(
                out,
                "{:<10} {:>5} {a:>12} {b:>12} {c:>12}",
                protocol.name(),
                s.runs
            );
        }
        out
    }
}

/// Runs every (protocol, seed) pair and writes traces and the summary.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutput, Error> {
    if spec.protocols.is_empty() {
        return Err(Error::Experiment(
            "at least one protocol is required".into(),
        ));
    }
    if spec.seeds.is_empty() {
        return Err(Error::Experiment("at least one seed is required".into()));
    }
    fs::create_dir_all(&spec.output_dir).map_err(|source| Error::Write {
        path: spec.output_dir.clone(),
        source,
    })?;

    let jobs: Vec<(Protocol, u64)> = spec
        .protocols
        .iter()
        .flat_map(|&p| spec.seeds.iter().map(move |&s| (p, s)))
        .collect();

    let results: Vec<(RunRecord, SummaryRow)> = jobs
        .par_iter()
        .map(|&(protocol, seed)| {
            let cfg = spec.run_config(protocol, seed)?;
            let trace = run_simulation(&cfg)?;
            let trace_path = spec.trace_path(protocol, seed);
            write_trace_csv(&trace, &trace_path)?;
            let report = summarize(&trace);
            let row = SummaryRow::new(&trace, report.clone());
            Ok((
                RunRecord {
                    protocol,
                    seed,
                    report,
                    trace_path,
                },
                row,
            ))
        })
        .collect::<Result<_, Error>>()?;

    let (runs, rows): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let summary_path = spec.summary_path();
    write_summary_csv(&rows, &summary_path)?;
    Ok(ExperimentOutput { runs, summary_path })
}
