//! Network lifetime milestones and multi-run summaries.

use alloc::vec::Vec;

use crate::engine::SimulationTrace;

/// Lifetime milestones and per-round curves of one run.
///
/// Milestones are rounds at which the cumulative number of dead nodes first
/// reaches 1, `ceil(0.5 N)` and `ceil(0.7 N)`, with `N` the deployed node
/// count. A milestone the run never reached is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct LifetimeReport {
    /// First node death.
    pub first_node_death_round: Option<u64>,
    /// At least half of the nodes dead.
    pub half_dead_round: Option<u64>,
    /// At least 70% of the nodes dead.
    pub pct70_dead_round: Option<u64>,
    /// Number of simulated rounds.
    pub rounds_simulated: u64,
    /// `(round, alive at end of round)`.
    pub alive_curve: Vec<(u64, u32)>,
    /// `(round, total residual energy at end of round)`.
    pub energy_curve: Vec<(u64, f64)>,
}

/// Smallest dead count that counts as `percent`% of `n` nodes.
pub fn dead_threshold(n: u32, percent: u32) -> u32 {
    (u64::from(n) * u64::from(percent)).div_ceil(100) as u32
}

impl LifetimeReport {
    /// Builds a report from per-round curves for a network of `node_count`
    /// nodes.
    pub fn from_curves(
        node_count: u32,
        alive_curve: Vec<(u64, u32)>,
        energy_curve: Vec<(u64, f64)>,
    ) -> Self {
        let reached = |percent: u32| {
            let needed = dead_threshold(node_count, percent).max(1);
            alive_curve
                .iter()
                .find(|&&(_, alive)| node_count.saturating_sub(alive) >= needed)
                .map(|&(round, _)| round)
        };
        Self {
            first_node_death_round: alive_curve
                .iter()
                .find(|&&(_, alive)| alive < node_count)
                .map(|&(round, _)| round),
            half_dead_round: reached(50),
            pct70_dead_round: reached(70),
            rounds_simulated: alive_curve.len() as u64,
            alive_curve,
            energy_curve,
        }
    }

    /// The three milestones in order: first death, 50% and 70% dead.
    pub fn milestones(&self) -> [Option<u64>; 3] {
        [
            self.first_node_death_round,
            self.half_dead_round,
            self.pct70_dead_round,
        ]
    }
}

/// Lifetime report of a finished run.
pub fn summarize(trace: &SimulationTrace) -> LifetimeReport {
    LifetimeReport::from_curves(
        trace.config.node_count,
        trace
            .rounds
            .iter()
            .map(|r| (r.round_index, r.alive_after))
            .collect(),
        trace
            .rounds
            .iter()
            .map(|r| (r.round_index, r.total_energy_after))
            .collect(),
    )
}

/// Moments of one milestone across runs. Runs that never reached the
/// milestone are left out of the moments and counted in `none_count`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MilestoneStats {
    /// Arithmetic mean of the reached values.
    pub mean: Option<f64>,
    /// Median; the mean of the middle pair for even counts.
    pub median: Option<f64>,
    /// Smallest reached value.
    pub min: Option<u64>,
    /// Largest reached value.
    pub max: Option<u64>,
    /// Runs that never reached the milestone.
    pub none_count: usize,
}

impl MilestoneStats {
    /// Statistics over a list of optional rounds.
    pub fn from_values(values: impl IntoIterator<Item = Option<u64>>) -> Self {
        let mut none_count = 0;
        let mut present: Vec<u64> = Vec::new();
        for v in values {
            match v {
                Some(v) => present.push(v),
                None => none_count += 1,
            }
        }
        present.sort_unstable();
        let n = present.len();
        if n == 0 {
            return Self {
                none_count,
                ..Self::default()
            };
        }
        let median = if n % 2 == 1 {
            present[n / 2] as f64
        } else {
            (present[n / 2 - 1] as f64 + present[n / 2] as f64) / 2.0
        };
        Self {
            mean: Some(present.iter().map(|&v| v as f64).sum::<f64>() / n as f64),
            median: Some(median),
            min: present.first().copied(),
            max: present.last().copied(),
            none_count,
        }
    }
}

/// Per-milestone statistics over several runs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Summary {
    /// Number of aggregated reports.
    pub runs: usize,
    /// First node death.
    pub first_death: MilestoneStats,
    /// Half of the nodes dead.
    pub half_dead: MilestoneStats,
    /// 70% of the nodes dead.
    pub pct70_dead: MilestoneStats,
}

impl Summary {
    /// The three milestone statistics in report order.
    pub fn milestones(&self) -> [MilestoneStats; 3] {
        [self.first_death, self.half_dead, self.pct70_dead]
    }
}

/// Aggregates lifetime reports from several runs.
pub fn aggregate(reports: &[LifetimeReport]) -> Summary {
    let stats = |pick: fn(&LifetimeReport) -> Option<u64>| {
        MilestoneStats::from_values(reports.iter().map(pick))
    };
    Summary {
        runs: reports.len(),
        first_death: stats(|r| r.first_node_death_round),
        half_dead: stats(|r| r.half_dead_round),
        pct70_dead: stats(|r| r.pct70_dead_round),
    }
}
