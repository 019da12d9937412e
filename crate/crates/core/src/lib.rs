//! Discrete-round simulation of clustered wireless sensor networks.
//!
//! The crate is `no_std` (it needs `alloc`) and carries everything that is
//! pure computation: the network model, the first-order radio energy model,
//! the cluster-head election protocols (LEACH, E-LEACH and the two-layer
//! energy/distance weighted scheme), the round engine and lifetime metrics.
//! File formats, configuration parsing and the experiment runner live in the
//! `wsnsim` crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod energy;
pub mod engine;
mod error;
pub mod metrics;
pub mod model;
pub mod protocols;
pub mod rng;

pub use error::Error;

pub use energy::EnergyDebit;
pub use engine::{run_simulation, RoundOutcome, SimulationTrace, Simulator, Termination};
pub use metrics::{aggregate, summarize, LifetimeReport, MilestoneStats, Summary};
pub use model::{
    build_network, distance, BsMotion, EnergyParams, Heterogeneity, NetworkConfig, NodeId,
    Position, Protocol, SensorNode,
};
pub use protocols::{ClusterAssignment, ElectionContext, Layer, Layering};
