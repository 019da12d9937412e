//! Round loop: election, cluster formation, steady-state transfer and death
//! processing.
//!
//! Traffic per round is one `k`-bit packet per alive node. Members send to
//! their head, heads fuse everything they received plus their own reading
//! into one packet for the base station, and overflow nodes send straight to
//! the base station. Debits are computed for the whole schedule first and
//! applied at the end of the round, clamping at zero.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::num::NonZeroU32;

use rand_chacha::ChaCha8Rng;

use crate::energy::{aggregation_cost, cpu_cost, rx_cost, tx_cost, EnergyDebit};
use crate::model::{build_network, distance, NetworkConfig, NodeId, Position, SensorNode};
use crate::protocols::{self, ClusterAssignment, ElectionContext};
use crate::rng::{self, Stream};
use crate::Error;

/// Everything that happened in one round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    /// Zero-based round index.
    pub round_index: u64,
    /// Elected heads in ascending id order.
    pub heads: Vec<NodeId>,
    /// Cluster membership for the round.
    pub assignment: ClusterAssignment,
    /// Energy requested from each active node, before clamping.
    pub debits: BTreeMap<NodeId, EnergyDebit>,
    /// Nodes that died during this round.
    pub deaths: Vec<NodeId>,
    /// Alive nodes at the end of the round.
    pub alive_after: u32,
    /// Residual energy summed over all nodes at the end of the round.
    pub total_energy_after: f64,
    /// Energy actually removed this round (debits clamped at each node's
    /// residual energy).
    pub energy_spent: f64,
    /// Base station position during the round.
    pub bs_pos: Position,
}

/// Why a simulation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Every node died.
    AllDead,
    /// The round budget ran out first.
    MaxRounds,
}

/// Full per-round record of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace {
    /// Configuration the run used.
    pub config: NetworkConfig,
    /// Total energy at deployment.
    pub initial_total_energy: f64,
    /// One entry per simulated round, in order.
    pub rounds: Vec<RoundOutcome>,
    /// Stop reason.
    pub termination: Termination,
}

/// Mutable simulation state for one configuration.
#[derive(Debug, Clone)]
pub struct Simulator {
    cfg: NetworkConfig,
    nodes: Vec<SensorNode>,
    election_rng: ChaCha8Rng,
}

impl Simulator {
    /// Deploys the network described by `cfg`.
    pub fn new(cfg: NetworkConfig) -> Result<Self, Error> {
        let nodes = build_network(&cfg)?;
        let election_rng = rng::stream(cfg.seed, Stream::Election);
        Ok(Self {
            cfg,
            nodes,
            election_rng,
        })
    }

    /// Current node states.
    pub fn nodes(&self) -> &[SensorNode] {
        &self.nodes
    }

    /// Configuration in use.
    pub fn config(&self) -> &NetworkConfig {
        &self.cfg
    }

    /// Number of alive nodes.
    pub fn alive_count(&self) -> u32 {
        self.nodes.iter().filter(|n| n.alive).count() as u32
    }

    /// Residual energy summed over all nodes.
    pub fn total_energy(&self) -> f64 {
        self.nodes.iter().map(|n| n.energy).sum()
    }

    /// Runs round `round_index`.
    pub fn run_round(&mut self, round_index: u64) -> Result<RoundOutcome, Error> {
        let protocol = self.cfg.protocol;
        let bs_pos = self.cfg.bs_motion.position(round_index);
        let ctx = ElectionContext::new(&self.nodes, round_index, self.cfg.p, bs_pos)?;

        protocols::reset_eligibility(protocol, &mut self.nodes, &ctx);
        let heads =
            protocols::elect_heads(protocol, &ctx, &mut self.nodes, &mut self.election_rng)?;
        let assignment = protocols::form_clusters(protocol, &heads, &self.nodes);
        let debits = self.schedule_debits(&assignment, bs_pos);

        let mut deaths = Vec::new();
        let mut energy_spent = 0.0;
        for (id, debit) in &debits {
            let node = &mut self.nodes[id.index()];
            energy_spent += node.debit(debit.total());
            if !node.alive {
                deaths.push(*id);
            }
        }

        Ok(RoundOutcome {
            round_index,
            heads: assignment.heads.clone(),
            assignment,
            debits,
            deaths,
            alive_after: self.alive_count(),
            total_energy_after: self.total_energy(),
            energy_spent,
            bs_pos,
        })
    }

    fn schedule_debits(
        &self,
        assignment: &ClusterAssignment,
        bs_pos: Position,
    ) -> BTreeMap<NodeId, EnergyDebit> {
        let params = &self.cfg.energy;
        let k = params.packet_bits;
        let pos = |id: NodeId| self.nodes[id.index()].pos;
        let mut debits = BTreeMap::new();

        for (&member, &head) in &assignment.membership {
            debits.insert(
                member,
                EnergyDebit {
                    tx: tx_cost(k, distance(pos(member), pos(head)), params),
                    cpu: cpu_cost(k, params),
                    ..EnergyDebit::default()
                },
            );
        }
        for (head, members) in assignment.member_counts() {
            let signals = NonZeroU32::new(members as u32 + 1).expect("members + 1 > 0");
            debits.insert(
                head,
                EnergyDebit {
                    tx: tx_cost(k, distance(pos(head), bs_pos), params),
                    rx: rx_cost(k, params) * members as f64,
                    cpu: cpu_cost(k, params),
                    aggregation: aggregation_cost(k, signals, params),
                },
            );
        }
        for &id in &assignment.direct_to_bs {
            debits.insert(
                id,
                EnergyDebit {
                    tx: tx_cost(k, distance(pos(id), bs_pos), params),
                    cpu: cpu_cost(k, params),
                    ..EnergyDebit::default()
                },
            );
        }
        debits
    }
}

/// Runs `cfg` until every node is dead or `cfg.max_rounds` rounds have
/// elapsed.
pub fn run_simulation(cfg: &NetworkConfig) -> Result<SimulationTrace, Error> {
    let mut sim = Simulator::new(cfg.clone())?;
    let initial_total_energy = sim.total_energy();
    let mut rounds = Vec::new();
    let mut termination = Termination::MaxRounds;
    for round in 0..cfg.max_rounds {
        let outcome = sim.run_round(round)?;
        let extinct = outcome.alive_after == 0;
        rounds.push(outcome);
        if extinct {
            termination = Termination::AllDead;
            break;
        }
    }
    Ok(SimulationTrace {
        config: cfg.clone(),
        initial_total_energy,
        rounds,
        termination,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BsMotion, EnergyParams, Protocol};

    fn single_node(initial_energy: f64) -> NetworkConfig {
        NetworkConfig {
            node_count: 1,
            initial_energy,
            // One node anywhere in a 1x1 field sits ~100 m from (0.5, 100.5).
            field_width: 1e-9,
            field_height: 1e-9,
            bs_motion: BsMotion::Static(Position::new(0.0, 100.0)),
            ..NetworkConfig::default()
        }
    }

    #[test]
    fn lone_node_heads_itself() {
        let cfg = single_node(1000.0);
        let mut sim = Simulator::new(cfg).unwrap();
        let out = sim.run_round(0).unwrap();
        assert_eq!(out.heads, [NodeId(0)]);
        let debit = out.debits[&NodeId(0)];
        assert_eq!(debit.rx, 0.0);
        assert!((debit.aggregation - 2.0e-5).abs() < 1e-18);
        assert!((debit.cpu - 2.8e-5).abs() < 1e-18);
        assert_eq!(out.deaths, []);
    }

    #[test]
    fn lone_node_uplink_in_square_regime() {
        // With the crossover beyond 100 m the uplink is 4000*(50 + 0.659e4) nJ.
        let cfg = NetworkConfig {
            energy: EnergyParams {
                d0: 250.0,
                ..EnergyParams::default()
            },
            ..single_node(10.0)
        };
        let mut sim = Simulator::new(cfg).unwrap();
        let debit = sim.run_round(0).unwrap().debits[&NodeId(0)];
        // 2.656e-2 uplink + 2.0e-5 fusion + 2.8e-5 processing.
        let expected: f64 = 4000.0 * (50.0 + 0.659e4) * 1e-9 + 2.0e-5 + 2.8e-5;
        assert!((expected - 2.6608e-2).abs() < 1e-15);
        assert!((debit.total() - expected).abs() < 1e-12);
    }

    #[test]
    fn exhausted_node_dies_clamped() {
        let cfg = single_node(1e-9);
        let trace = run_simulation(&cfg).unwrap();
        assert_eq!(trace.rounds.len(), 1);
        assert_eq!(trace.termination, Termination::AllDead);
        let out = &trace.rounds[0];
        assert_eq!(out.deaths, [NodeId(0)]);
        assert_eq!(out.total_energy_after, 0.0);
        assert_eq!(out.energy_spent, 1e-9);
    }

    #[test]
    fn round_budget_stops_run() {
        let cfg = NetworkConfig {
            initial_energy: 1e9,
            max_rounds: 5,
            ..NetworkConfig::default()
        };
        let trace = run_simulation(&cfg).unwrap();
        assert_eq!(trace.rounds.len(), 5);
        assert_eq!(trace.termination, Termination::MaxRounds);
        let zero = NetworkConfig {
            max_rounds: 0,
            ..cfg
        };
        assert!(run_simulation(&zero).is_err());
    }

    #[test]
    fn no_deaths_conserves_energy() {
        let cfg = NetworkConfig {
            initial_energy: 1e6,
            max_rounds: 30,
            protocol: Protocol::Proposed,
            ..NetworkConfig::default()
        };
        let mut sim = Simulator::new(cfg).unwrap();
        let mut before = sim.total_energy();
        for r in 0..30 {
            let out = sim.run_round(r).unwrap();
            let requested: f64 = out.debits.values().map(EnergyDebit::total).sum();
            assert!(out.deaths.is_empty());
            assert!((before - out.total_energy_after - requested).abs() < 1e-6);
            before = out.total_energy_after;
        }
    }

    #[test]
    fn empty_network_is_an_error() {
        let mut sim = Simulator::new(single_node(1e-9)).unwrap();
        sim.run_round(0).unwrap();
        assert_eq!(sim.run_round(1), Err(Error::NoAliveNodes));
    }

    #[test]
    fn runs_are_deterministic() {
        for protocol in Protocol::ALL {
            let cfg = NetworkConfig {
                protocol,
                bs_motion: BsMotion::DEFAULT_ORBIT,
                max_rounds: 200,
                seed: 3,
                ..NetworkConfig::default()
            };
            assert_eq!(run_simulation(&cfg).unwrap(), run_simulation(&cfg).unwrap());
        }
    }
}
