//! Cluster-head election and cluster formation.
//!
//! Three election rules share the rotating LEACH base term
//! `p / (1 - p * (r mod ceil(1/p)))`:
//!
//! * LEACH uses it as is.
//! * E-LEACH swaps `p` for `sqrt(N_alive) / N_alive` and scales by the
//!   residual-energy ratio.
//! * The proposed rule splits the field into two virtual layers around the
//!   base station at `L = (d1 + d2) / 2` and scales the base term by the
//!   energy ratio and by `(d2 / D)^2` in the near layer or `(d2 / D)^4` in the
//!   far layer. Its clusters are also capped at `floor((N - h) / h)` members.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::model::{distance, NodeId, Position, Protocol, SensorNode};
use crate::Error;

/// Virtual layering around the base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layering {
    /// Largest node to base station distance among alive nodes.
    pub d1: f64,
    /// Smallest node to base station distance among alive nodes.
    pub d2: f64,
    /// Boundary between the two layers, `(d1 + d2) / 2`.
    pub boundary: f64,
}

/// Virtual layer of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    /// Closer half, up to and including the boundary.
    Near,
    /// Farther half.
    Far,
}

/// Computes the layering over the alive nodes for the given base station
/// position.
pub fn compute_layering(nodes: &[SensorNode], bs_pos: Position) -> Result<Layering, Error> {
    let mut alive = nodes
        .iter()
        .filter(|n| n.alive)
        .map(|n| distance(n.pos, bs_pos));
    let first = alive.next().ok_or(Error::NoAliveNodes)?;
    let (d2, d1) = alive.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
    Ok(Layering {
        d1,
        d2,
        boundary: (d1 + d2) / 2.0,
    })
}

/// Layer containing `node`; a node exactly on the boundary is in the near
/// layer.
pub fn layer_of(node: &SensorNode, layering: &Layering, bs_pos: Position) -> Layer {
    if distance(node.pos, bs_pos) <= layering.boundary {
        Layer::Near
    } else {
        Layer::Far
    }
}

/// Per-round inputs shared by every threshold evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectionContext {
    /// Round index `r`.
    pub round_index: u64,
    /// Desired cluster-head fraction.
    pub p: f64,
    /// Number of alive nodes.
    pub n_alive: usize,
    /// Base station position this round.
    pub bs_pos: Position,
    /// Layering over the alive nodes for `bs_pos`.
    pub layering: Layering,
}

impl ElectionContext {
    /// Snapshots the alive population for round `round_index`.
    pub fn new(
        nodes: &[SensorNode],
        round_index: u64,
        p: f64,
        bs_pos: Position,
    ) -> Result<Self, Error> {
        let layering = compute_layering(nodes, bs_pos)?;
        Ok(Self {
            round_index,
            p,
            n_alive: nodes.iter().filter(|n| n.alive).count(),
            bs_pos,
            layering,
        })
    }

    /// Head fraction actually used by `protocol`.
    pub fn effective_p(&self, protocol: Protocol) -> f64 {
        match protocol {
            Protocol::Leach | Protocol::Proposed => self.p,
            Protocol::ELeach => {
                let n = self.n_alive.max(1) as f64;
                libm::sqrt(n) / n
            }
        }
    }
}

/// Rounds per eligibility epoch, `ceil(1/p)`.
///
/// Quotients within 1e-9 of an integer are snapped to it so that, e.g.,
/// `p = 0.05` gives exactly 20 rather than 21 from representation error.
pub fn epoch_length(p: f64) -> u64 {
    let inv = 1.0 / p;
    let nearest = libm::round(inv);
    let len = if (inv - nearest).abs() < 1e-9 {
        nearest
    } else {
        libm::ceil(inv)
    };
    (len as u64).max(1)
}

fn rotating_threshold(p: f64, round_index: u64) -> f64 {
    let phase = (round_index % epoch_length(p)) as f64;
    let denom = 1.0 - p * phase;
    if denom <= 0.0 {
        1.0
    } else {
        (p / denom).clamp(0.0, 1.0)
    }
}

/// LEACH threshold; 0 for nodes that already served this epoch.
pub fn leach_threshold(node: &SensorNode, ctx: &ElectionContext) -> f64 {
    if !node.eligible {
        return 0.0;
    }
    rotating_threshold(ctx.p, ctx.round_index)
}

/// E-LEACH threshold: square-root head fraction weighted by residual energy.
pub fn eleach_threshold(node: &SensorNode, ctx: &ElectionContext) -> f64 {
    if !node.eligible {
        return 0.0;
    }
    let base = rotating_threshold(ctx.effective_p(Protocol::ELeach), ctx.round_index);
    (base * node.energy_ratio()).clamp(0.0, 1.0)
}

/// Two-layer threshold weighted by residual energy and by the node's
/// distance to the base station relative to the closest alive node.
pub fn proposed_threshold(node: &SensorNode, ctx: &ElectionContext) -> f64 {
    if !node.eligible {
        return 0.0;
    }
    let base = rotating_threshold(ctx.p, ctx.round_index);
    let d = distance(node.pos, ctx.bs_pos);
    let ratio = if d > 0.0 { ctx.layering.d2 / d } else { 1.0 };
    let sq = ratio * ratio;
    let distance_factor = match layer_of(node, &ctx.layering, ctx.bs_pos) {
        Layer::Near => sq,
        Layer::Far => sq * sq,
    };
    (base * node.energy_ratio() * distance_factor).clamp(0.0, 1.0)
}

/// Threshold of `node` under `protocol`.
pub fn threshold(protocol: Protocol, node: &SensorNode, ctx: &ElectionContext) -> f64 {
    match protocol {
        Protocol::Leach => leach_threshold(node, ctx),
        Protocol::ELeach => eleach_threshold(node, ctx),
        Protocol::Proposed => proposed_threshold(node, ctx),
    }
}

/// Makes every alive node eligible again at the start of an epoch. Returns
/// whether a reset happened.
pub fn reset_eligibility(
    protocol: Protocol,
    nodes: &mut [SensorNode],
    ctx: &ElectionContext,
) -> bool {
    if !ctx
        .round_index
        .is_multiple_of(epoch_length(ctx.effective_p(protocol)))
    {
        return false;
    }
    for node in nodes.iter_mut().filter(|n| n.alive) {
        node.eligible = true;
    }
    true
}

/// Elects this round's cluster heads.
///
/// Every alive eligible node, in ascending id order, draws `u` uniform in
/// `[0, 1)` and becomes head when `u` is below its threshold. If nobody is
/// elected, the eligible node with the largest threshold (lowest id on ties)
/// is appointed, resetting eligibility first when no node is eligible.
/// Elected heads lose eligibility until the next epoch.
pub fn elect_heads<R: RngCore + ?Sized>(
    protocol: Protocol,
    ctx: &ElectionContext,
    nodes: &mut [SensorNode],
    rng: &mut R,
) -> Result<Vec<NodeId>, Error> {
    if !nodes.iter().any(|n| n.alive) {
        return Err(Error::NoAliveNodes);
    }

    let mut heads: Vec<NodeId> = Vec::new();
    for node in nodes.iter().filter(|n| n.alive && n.eligible) {
        let u: f64 = rng.gen();
        if u < threshold(protocol, node, ctx) {
            heads.push(node.id);
        }
    }

    if heads.is_empty() {
        if !nodes.iter().any(|n| n.alive && n.eligible) {
            for node in nodes.iter_mut().filter(|n| n.alive) {
                node.eligible = true;
            }
        }
        let mut best: Option<(NodeId, f64)> = None;
        for node in nodes.iter().filter(|n| n.alive && n.eligible) {
            let t = threshold(protocol, node, ctx);
            if best.is_none_or(|(_, b)| t > b) {
                best = Some((node.id, t));
            }
        }
        // At least one alive node exists and all alive nodes are eligible
        // if none were before.
        heads.extend(best.map(|(id, _)| id));
    }

    for id in &heads {
        nodes[id.index()].eligible = false;
    }
    Ok(heads)
}

/// Maximum members per cluster, `floor((n_alive - n_heads) / n_heads)`.
pub fn cluster_capacity(n_alive: usize, n_heads: usize) -> Result<usize, Error> {
    if n_heads == 0 {
        return Err(Error::NoHeads);
    }
    Ok(n_alive.saturating_sub(n_heads) / n_heads)
}

/// Partition of the alive nodes into heads, members and direct senders.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClusterAssignment {
    /// Cluster heads in ascending id order.
    pub heads: Vec<NodeId>,
    /// Member to head.
    pub membership: BTreeMap<NodeId, NodeId>,
    /// Nodes that found every cluster full and send straight to the base
    /// station.
    pub direct_to_bs: Vec<NodeId>,
}

impl ClusterAssignment {
    /// Number of members per head; heads without members map to 0.
    pub fn member_counts(&self) -> BTreeMap<NodeId, usize> {
        let mut counts: BTreeMap<NodeId, usize> = self.heads.iter().map(|&h| (h, 0)).collect();
        for head in self.membership.values() {
            *counts.entry(*head).or_default() += 1;
        }
        counts
    }
}

/// Assigns every alive non-head to a cluster.
///
/// LEACH and E-LEACH join the nearest head without a size limit. The proposed
/// protocol handles nodes in ascending distance to their nearest head and
/// lets each join the nearest head that still has room under
/// [`cluster_capacity`]; nodes that find every cluster full go direct.
pub fn form_clusters(
    protocol: Protocol,
    heads: &[NodeId],
    nodes: &[SensorNode],
) -> ClusterAssignment {
    let mut assignment = ClusterAssignment {
        heads: heads.to_vec(),
        ..ClusterAssignment::default()
    };
    assignment.heads.sort_unstable();
    assignment.heads.dedup();

    let others: Vec<&SensorNode> = nodes
        .iter()
        .filter(|n| n.alive && assignment.heads.binary_search(&n.id).is_err())
        .collect();
    if assignment.heads.is_empty() {
        assignment.direct_to_bs = others.iter().map(|n| n.id).collect();
        return assignment;
    }

    // Heads sorted by (distance, id) for each candidate.
    let ranked = |node: &SensorNode| -> Vec<(f64, NodeId)> {
        let mut r: Vec<(f64, NodeId)> = assignment
            .heads
            .iter()
            .map(|&h| (distance(node.pos, nodes[h.index()].pos), h))
            .collect();
        r.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        r
    };

    match protocol {
        Protocol::Leach | Protocol::ELeach => {
            for node in others {
                let (_, head) = ranked(node)[0];
                assignment.membership.insert(node.id, head);
            }
        }
        Protocol::Proposed => {
            let n_alive = nodes.iter().filter(|n| n.alive).count();
            let capacity = n_alive.saturating_sub(assignment.heads.len()) / assignment.heads.len();
            let mut queue: Vec<(Vec<(f64, NodeId)>, NodeId)> =
                others.iter().map(|n| (ranked(n), n.id)).collect();
            queue.sort_by(|a, b| a.0[0].0.total_cmp(&b.0[0].0).then(a.1.cmp(&b.1)));

            let mut load: BTreeMap<NodeId, usize> = BTreeMap::new();
            for (choices, id) in queue {
                let slot = choices
                    .iter()
                    .map(|&(_, h)| h)
                    .find(|h| load.get(h).copied().unwrap_or(0) < capacity);
                match slot {
                    Some(head) => {
                        *load.entry(head).or_default() += 1;
                        assignment.membership.insert(id, head);
                    }
                    None => assignment.direct_to_bs.push(id),
                }
            }
            assignment.direct_to_bs.sort_unstable();
        }
    }
    assignment
}
