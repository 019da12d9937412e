//! CSV output: per-round traces and per-run summaries.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use wsnsim_core::{LifetimeReport, Protocol, SimulationTrace};

use crate::Error;

/// Header line of a trace file.
pub const TRACE_HEADER: &str = "round,alive,total_energy_j,heads,deaths,bs_x,bs_y";

/// Header line of a summary file.
pub const SUMMARY_HEADER: &str =
    "protocol,bs_mode,energy_mode,seed,first_death,half_dead,pct70_dead,rounds";

/// Formats a float with at least nine significant digits and never in
/// exponent notation: nine decimals for magnitudes of at least one, more
/// for smaller values.
pub fn format_float(value: f64) -> String {
    let magnitude = value.abs();
    if magnitude == 0.0 || magnitude >= 1.0 || !magnitude.is_finite() {
        return format!("{value:.9}");
    }
    let leading_zeros = (-magnitude.log10().floor()) as usize - 1;
    format!("{value:.prec$}", prec = 9 + leading_zeros)
}

struct Counting<W> {
    inner: W,
    bytes: usize,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Writes the per-round trace and returns the number of bytes written.
pub fn write_trace<W: Write>(trace: &SimulationTrace, out: W) -> Result<usize, io::Error> {
    let mut out = Counting {
        inner: out,
        bytes: 0,
    };
    writeln!(out, "{TRACE_HEADER}")?;
    let mut line = String::new();
    for round in &trace.rounds {
        line.clear();
        let _ = writeln!(
            line,
            "{},{},{},{},{},{},{}",
            round.round_index,
            round.alive_after,
            format_float(round.total_energy_after),
            round.heads.len(),
            round.deaths.len(),
            format_float(round.bs_pos.x),
            format_float(round.bs_pos.y),
        );
        out.write_all(line.as_bytes())?;
    }
    out.flush()?;
    Ok(out.bytes)
}

/// Writes the trace of a non-empty run to `path`.
pub fn write_trace_csv(trace: &SimulationTrace, path: &Path) -> Result<usize, Error> {
    if trace.rounds.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let write_err = |source| Error::Write {
        path: path.to_owned(),
        source,
    };
    let file = File::create(path).map_err(write_err)?;
    write_trace(trace, BufWriter::new(file)).map_err(write_err)
}

/// One line of a summary file.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub protocol: Protocol,
    pub bs_mode: &'static str,
    pub energy_mode: &'static str,
    pub seed: u64,
    pub report: LifetimeReport,
}

impl SummaryRow {
    /// Row for a finished run.
    pub fn new(trace: &SimulationTrace, report: LifetimeReport) -> Self {
        Self {
            protocol: trace.config.protocol,
            bs_mode: trace.config.bs_motion.mode_name(),
            energy_mode: trace.config.heterogeneity.name(),
            seed: trace.config.seed,
            report,
        }
    }
}

fn optional(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes summary rows; unreached milestones are left empty.
pub fn write_summary<W: Write>(rows: &[SummaryRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for row in rows {
        let [first, half, pct70] = row.report.milestones().map(optional);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.protocol,
            row.bs_mode,
            row.energy_mode,
            row.seed,
            first,
            half,
            pct70,
            row.report.rounds_simulated
        )?;
    }
    out.flush()
}

/// Writes summary rows to `path`.
pub fn write_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<(), Error> {
    let write_err = |source| Error::Write {
        path: path.to_owned(),
        source,
    };
    let file = File::create(path).map_err(write_err)?;
    write_summary(rows, BufWriter::new(file)).map_err(write_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(format_float(50.0), "50.000000000");
        assert_eq!(format_float(0.0), "0.000000000");
        assert_eq!(format_float(0.5), "0.500000000");
        assert_eq!(format_float(0.00123), "0.00123000000");
        assert_eq!(format_float(-100.0), "-100.000000000");
    }
}
