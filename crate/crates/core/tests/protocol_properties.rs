use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wsnsim_core::protocols::{
    cluster_capacity, elect_heads, form_clusters, leach_threshold, proposed_threshold, threshold,
};
use wsnsim_core::rng::{self, Stream};
use wsnsim_core::{
    build_network, distance, ElectionContext, NetworkConfig, NodeId, Position, Protocol, SensorNode,
};

fn random_nodes(rng: &mut ChaCha8Rng, n: usize) -> Vec<SensorNode> {
    (0..n)
        .map(|i| {
            let initial_energy = if rng.gen_bool(0.5) { 0.5 } else { 1.0 };
            let alive = rng.gen_bool(0.85);
            SensorNode {
                id: NodeId(i as u32),
                pos: Position::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)),
                energy: if alive {
                    rng.gen_range(1e-6..=initial_energy)
                } else {
                    0.0
                },
                initial_energy,
                alive,
                eligible: alive && rng.gen_bool(0.7),
            }
        })
        .collect()
}

fn random_bs(rng: &mut ChaCha8Rng) -> Position {
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Position::new(50.0 + 150.0 * theta.sin(), 50.0 + 150.0 * theta.cos())
}

/// Independent recount of an assignment against the alive population.
fn check_partition(protocol: Protocol, nodes: &[SensorNode], heads: &[NodeId]) {
    let a = form_clusters(protocol, heads, nodes);
    let alive: BTreeSet<NodeId> = nodes.iter().filter(|n| n.alive).map(|n| n.id).collect();

    let mut seen = BTreeSet::new();
    for id in a
        .heads
        .iter()
        .chain(a.membership.keys())
        .chain(&a.direct_to_bs)
    {
        assert!(seen.insert(*id), "{id} assigned twice");
    }
    assert_eq!(seen, alive);
    for head in a.membership.values() {
        assert!(a.heads.contains(head));
    }

    if protocol == Protocol::Proposed {
        let cap = cluster_capacity(alive.len(), a.heads.len()).unwrap();
        let mut load: BTreeMap<NodeId, usize> = BTreeMap::new();
        for head in a.membership.values() {
            *load.entry(*head).or_default() += 1;
        }
        assert!(load.values().all(|&c| c <= cap), "{load:?} over {cap}");
        // Overflow only happens when every cluster is full.
        if !a.direct_to_bs.is_empty() {
            assert!(a
                .heads
                .iter()
                .all(|h| load.get(h).copied().unwrap_or(0) == cap));
        }
    } else {
        // Every member sits with a nearest head.
        for (m, h) in &a.membership {
            let pos = nodes[m.index()].pos;
            let best = a
                .heads
                .iter()
                .map(|x| distance(pos, nodes[x.index()].pos))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(distance(pos, nodes[h.index()].pos), best);
        }
        assert!(a.direct_to_bs.is_empty());
    }
}

#[test]
fn election_and_formation_partition_alive_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1A5);
    for instance in 0..1000u64 {
        let n = rng.gen_range(1..=150);
        let mut nodes = random_nodes(&mut rng, n);
        if !nodes.iter().any(|n| n.alive) {
            continue;
        }
        let protocol = Protocol::ALL[rng.gen_range(0..3)];
        let bs = random_bs(&mut rng);
        let ctx = ElectionContext::new(&nodes, rng.gen_range(0..100), 0.05, bs).unwrap();
        let mut stream = rng::stream(instance, Stream::Election);
        let heads = elect_heads(protocol, &ctx, &mut nodes, &mut stream).unwrap();
        assert!(!heads.is_empty());
        for h in &heads {
            assert!(nodes[h.index()].alive && !nodes[h.index()].eligible);
        }
        check_partition(protocol, &nodes, &heads);
    }
}

#[test]
fn leach_elects_five_percent_on_average() {
    let cfg = NetworkConfig::default();
    let fresh = build_network(&cfg).unwrap();
    let ctx = ElectionContext::new(&fresh, 0, 0.05, Position::new(50.0, 200.0)).unwrap();
    let mut stream = rng::stream(11, Stream::Election);
    let total: usize = (0..10_000)
        .map(|_| {
            let mut nodes = fresh.clone();
            elect_heads(Protocol::Leach, &ctx, &mut nodes, &mut stream)
                .unwrap()
                .len()
        })
        .sum();
    let mean = total as f64 / 10_000.0;
    assert!((mean - 5.0).abs() <= 0.3, "mean {mean}");
}

proptest! {
    #[test]
    fn thresholds_stay_in_unit_interval(seed in any::<u64>(), r in 0u64..500, p in 0.001..0.999f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = random_nodes(&mut rng, 40);
        prop_assume!(nodes.iter().any(|n| n.alive));
        let ctx = ElectionContext::new(&nodes, r, p, random_bs(&mut rng)).unwrap();
        for node in nodes.iter().filter(|n| n.alive) {
            for protocol in Protocol::ALL {
                let t = threshold(protocol, node, &ctx);
                prop_assert!((0.0..=1.0).contains(&t), "{protocol} {t}");
            }
        }
    }

    #[test]
    fn closest_full_node_reduces_to_leach(seed in any::<u64>(), r in 0u64..100) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nodes = random_nodes(&mut rng, 30);
        for n in &mut nodes {
            n.alive = true;
            n.eligible = true;
            n.energy = n.initial_energy;
        }
        let bs = random_bs(&mut rng);
        let ctx = ElectionContext::new(&nodes, r, 0.05, bs).unwrap();
        let closest = nodes
            .iter()
            .min_by(|a, b| distance(a.pos, bs).total_cmp(&distance(b.pos, bs)))
            .unwrap();
        prop_assert_eq!(proposed_threshold(closest, &ctx), leach_threshold(closest, &ctx));
    }

    #[test]
    fn closer_nodes_are_never_penalised_more(seed in any::<u64>(), r in 0u64..19) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nodes = random_nodes(&mut rng, 30);
        for n in &mut nodes {
            n.alive = true;
            n.eligible = true;
            n.energy = n.initial_energy;
        }
        let bs = random_bs(&mut rng);
        let ctx = ElectionContext::new(&nodes, r, 0.05, bs).unwrap();
        for a in &nodes {
            for b in &nodes {
                if distance(a.pos, bs) <= distance(b.pos, bs) {
                    prop_assert!(proposed_threshold(a, &ctx) >= proposed_threshold(b, &ctx));
                }
            }
        }
    }

    #[test]
    fn elections_are_reproducible(seed in any::<u64>(), protocol in 0usize..3) {
        let protocol = Protocol::ALL[protocol];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = random_nodes(&mut rng, 60);
        prop_assume!(nodes.iter().any(|n| n.alive));
        let ctx = ElectionContext::new(&nodes, 3, 0.05, random_bs(&mut rng)).unwrap();
        let elect = || {
            let mut n = nodes.clone();
            elect_heads(protocol, &ctx, &mut n, &mut rng::stream(seed, Stream::Election)).unwrap()
        };
        prop_assert_eq!(elect(), elect());
    }
}
