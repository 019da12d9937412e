//! Domain types shared by the rest of the crate: nodes, field geometry, base
//! station motion and the network configuration.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;
use core::num::NonZeroU32;

use rand::seq::index;
use rand::Rng;

use crate::rng::{self, Stream};
use crate::Error;

/// Point in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Position {
    /// Horizontal coordinate.
    pub x: f64,
    /// Vertical coordinate.
    pub y: f64,
}

impl Position {
    /// Creates a position from its coordinates.
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Euclidean distance between two points.
pub fn distance(a: Position, b: Position) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    libm::sqrt(dx * dx + dy * dy)
}

/// Stable identifier of a sensor node; also its index in the node list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    /// Index of the node in the network's node list.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A static sensor with a finite battery.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorNode {
    /// Unique identifier.
    pub id: NodeId,
    /// Location inside the field.
    pub pos: Position,
    /// Residual energy in joules.
    pub energy: f64,
    /// Energy at deployment in joules.
    pub initial_energy: f64,
    /// False once the battery is exhausted.
    pub alive: bool,
    /// Still allowed to become cluster head in the current epoch.
    pub eligible: bool,
}

impl SensorNode {
    /// Residual energy as a fraction of the initial energy.
    pub fn energy_ratio(&self) -> f64 {
        self.energy / self.initial_energy
    }

    /// Removes up to `amount` joules and returns how much was actually taken.
    /// The node dies when the debit reaches or exceeds its residual energy.
    pub fn debit(&mut self, amount: f64) -> f64 {
        if amount >= self.energy {
            let taken = self.energy;
            self.energy = 0.0;
            self.alive = false;
            self.eligible = false;
            taken
        } else {
            self.energy -= amount;
            amount
        }
    }
}

/// Radio and processing constants of the first-order energy model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    /// Electronics energy per bit, for both transmit and receive (J/bit).
    pub e_elec: f64,
    /// Amplifier energy per bit per m^y (J/bit/m^y).
    pub e_amp: f64,
    /// Processing energy per bit (J/bit).
    pub e_cpu: f64,
    /// Aggregation energy per bit per fused signal (J/bit).
    pub e_da: f64,
    /// Distance at which the path-loss exponent switches from 2 to 4 (m).
    pub d0: f64,
    /// Size of one data packet.
    pub packet_bits: NonZeroU32,
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self {
            e_elec: 50e-9,
            e_amp: 0.659e-9,
            e_cpu: 7e-9,
            e_da: 5e-9,
            d0: 87.7,
            packet_bits: NonZeroU32::new(4000).unwrap(),
        }
    }
}

impl EnergyParams {
    /// Checks that every constant is strictly positive and finite.
    pub fn validate(&self) -> Result<(), Error> {
        let fields = [
            ("e_elec", self.e_elec),
            ("e_amp", self.e_amp),
            ("e_cpu", self.e_cpu),
            ("e_da", self.e_da),
            ("d0", self.d0),
        ];
        for (field, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig {
                    field,
                    constraint: "a finite value > 0",
                });
            }
        }
        Ok(())
    }
}

/// Cluster-head election strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Protocol {
    /// Classic LEACH threshold.
    Leach,
    /// LEACH with a square-root head count and residual-energy weighting.
    ELeach,
    /// Two virtual layers with energy and distance weighted thresholds and
    /// capacity-balanced clusters.
    Proposed,
}

impl Protocol {
    /// All protocols in canonical order.
    pub const ALL: [Protocol; 3] = [Protocol::Leach, Protocol::ELeach, Protocol::Proposed];

    /// Lower-case name used in file names and configuration.
    pub fn name(self) -> &'static str {
        match self {
            Protocol::Leach => "leach",
            Protocol::ELeach => "eleach",
            Protocol::Proposed => "proposed",
        }
    }

    /// Parses a lower-case protocol name.
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Trajectory of the base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BsMotion {
    /// Fixed position for the whole run.
    Static(Position),
    /// Circular orbit; the position at angle θ is
    /// `center + radius * (sin θ, cos θ)`.
    Orbit {
        /// Center of the circle.
        center: Position,
        /// Radius in meters.
        radius: f64,
        /// Fraction of a revolution completed per round.
        revolutions_per_round: f64,
        /// Angle at round 0, in radians.
        start_angle: f64,
    },
}

impl BsMotion {
    /// Orbit around the field center that passes through (50, 200) at round
    /// 0 and advances a tenth of a revolution per round.
    pub const DEFAULT_ORBIT: BsMotion = BsMotion::Orbit {
        center: Position::new(50.0, 50.0),
        radius: 150.0,
        revolutions_per_round: 0.1,
        start_angle: 0.0,
    };

    /// Short label used in summaries.
    pub fn mode_name(&self) -> &'static str {
        match self {
            BsMotion::Static(_) => "static",
            BsMotion::Orbit { .. } => "orbit",
        }
    }

    /// Base station position during `round`.
    pub fn position(&self, round: u64) -> Position {
        match *self {
            BsMotion::Static(pos) => pos,
            BsMotion::Orbit {
                center,
                radius,
                revolutions_per_round,
                start_angle,
            } => {
                // Reduce to a fraction of a turn first so whole revolutions
                // land exactly on the start angle.
                let turns = revolutions_per_round * round as f64;
                let theta = start_angle + TAU * (turns - libm::floor(turns));
                Position::new(
                    center.x + radius * libm::sin(theta),
                    center.y + radius * libm::cos(theta),
                )
            }
        }
    }
}

/// Initial energy distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heterogeneity {
    /// Every node starts with the same energy.
    Homogeneous,
    /// A random half of the nodes start with twice the energy.
    HalfDoubled,
}

impl Heterogeneity {
    /// Short label used in summaries.
    pub fn name(self) -> &'static str {
        match self {
            Heterogeneity::Homogeneous => "homogeneous",
            Heterogeneity::HalfDoubled => "half_doubled",
        }
    }
}

/// Everything needed to run one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    /// Field extent along x, meters.
    pub field_width: f64,
    /// Field extent along y, meters.
    pub field_height: f64,
    /// Number of sensors.
    pub node_count: u32,
    /// Baseline initial energy per node, joules.
    pub initial_energy: f64,
    /// Desired fraction of cluster heads per round.
    pub p: f64,
    /// Energy model constants.
    pub energy: EnergyParams,
    /// Election strategy.
    pub protocol: Protocol,
    /// Base station trajectory.
    pub bs_motion: BsMotion,
    /// Initial energy distribution.
    pub heterogeneity: Heterogeneity,
    /// Master seed for every random stream.
    pub seed: u64,
    /// Upper bound on simulated rounds.
    pub max_rounds: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            field_width: 100.0,
            field_height: 100.0,
            node_count: 100,
            initial_energy: 0.5,
            p: 0.05,
            energy: EnergyParams::default(),
            protocol: Protocol::Leach,
            bs_motion: BsMotion::Static(Position::new(50.0, 200.0)),
            heterogeneity: Heterogeneity::Homogeneous,
            seed: 1,
            max_rounds: 5000,
        }
    }
}

impl NetworkConfig {
    /// Checks every field constraint.
    pub fn validate(&self) -> Result<(), Error> {
        fn check(ok: bool, field: &'static str, constraint: &'static str) -> Result<(), Error> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidConfig { field, constraint })
            }
        }
        check(
            self.field_width.is_finite() && self.field_width > 0.0,
            "field_width",
            "a finite value > 0",
        )?;
        check(
            self.field_height.is_finite() && self.field_height > 0.0,
            "field_height",
            "a finite value > 0",
        )?;
        check(self.node_count >= 1, "node_count", "node_count >= 1")?;
        check(
            self.initial_energy.is_finite() && self.initial_energy > 0.0,
            "initial_energy",
            "a finite value > 0",
        )?;
        check(self.p > 0.0 && self.p < 1.0, "p", "0 < p < 1")?;
        check(self.max_rounds >= 1, "max_rounds", "max_rounds >= 1")?;
        if let BsMotion::Orbit {
            radius,
            revolutions_per_round,
            start_angle,
            ..
        } = self.bs_motion
        {
            check(
                radius.is_finite() && radius >= 0.0,
                "orbit_radius",
                "a finite value >= 0",
            )?;
            check(
                revolutions_per_round.is_finite(),
                "orbit_revolutions_per_round",
                "a finite value",
            )?;
            check(
                start_angle.is_finite(),
                "orbit_start_angle",
                "a finite value",
            )?;
        }
        self.energy.validate()
    }
}

/// Deploys `cfg.node_count` sensors uniformly over the field.
///
/// Positions come from the placement stream and the doubled-energy subset
/// from the heterogeneity stream, so neither depends on the protocol.
pub fn build_network(cfg: &NetworkConfig) -> Result<Vec<SensorNode>, Error> {
    cfg.validate()?;
    let n = cfg.node_count as usize;

    let mut placement = rng::stream(cfg.seed, Stream::Placement);
    let mut nodes: Vec<SensorNode> = (0..cfg.node_count)
        .map(|i| {
            let x = placement.gen::<f64>() * cfg.field_width;
            let y = placement.gen::<f64>() * cfg.field_height;
            SensorNode {
                id: NodeId(i),
                pos: Position::new(x, y),
                energy: cfg.initial_energy,
                initial_energy: cfg.initial_energy,
                alive: true,
                eligible: true,
            }
        })
        .collect();

    if cfg.heterogeneity == Heterogeneity::HalfDoubled {
        let mut pick = rng::stream(cfg.seed, Stream::Heterogeneity);
        for i in index::sample(&mut pick, n, n / 2) {
            let node = &mut nodes[i];
            node.initial_energy = 2.0 * cfg.initial_energy;
            node.energy = node.initial_energy;
        }
    }
    Ok(nodes)
}
