#![allow(dead_code)]

use codinggap::instance::InstanceBuilder;
use codinggap::UnicastInstance;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// Random connected multigraph instance: a random spanning tree plus extra
/// edges, capacities and demands in `1..=max_weight`, distinct endpoints
/// per session.
pub fn random_instance(seed: u64, max_nodes: usize, max_edges: usize, max_sessions: usize, max_weight: u64) -> UnicastInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_nodes);
    let extra = rng.gen_range(0..=max_edges.saturating_sub(n - 1));
    let mut b = InstanceBuilder::new();
    for v in 0..n {
        b.node(&format!("v{v}"));
    }
    for v in 1..n {
        let u = rng.gen_range(0..v);
        b.edge(&format!("v{u}"), &format!("v{v}"), rng.gen_range(1..=max_weight));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        b.edge(&format!("v{u}"), &format!("v{v}"), rng.gen_range(1..=max_weight));
    }
    let k = rng.gen_range(1..=max_sessions);
    for _ in 0..k {
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        b.session(&format!("v{s}"), &format!("v{t}"), rng.gen_range(1..=max_weight));
    }
    b.build()
}

pub fn single_edge() -> UnicastInstance {
    let mut b = InstanceBuilder::new();
    b.edge("s", "t", 1);
    b.session("s", "t", 1);
    b.build()
}

/// Shortest-path metric of a random connected graph with integer weights.
pub fn random_graph_metric(seed: u64, n: usize, max_weight: u64) -> codinggap::certificate::Metric {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = InstanceBuilder::new();
    for v in 0..n {
        b.node(&format!("v{v}"));
    }
    let mut weights = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        b.edge(&format!("v{u}"), &format!("v{v}"), 1);
        weights.push(rng.gen_range(1..=max_weight));
    }
    for _ in 0..n {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            b.edge(&format!("v{u}"), &format!("v{v}"), 1);
            weights.push(rng.gen_range(1..=max_weight));
        }
    }
    b.session("v0", "v0", 1);
    let g = b.build();
    let mut dist = vec![0.0; n * n];
    for x in 0..n {
        let d = g.weighted_distances_from(&weights, x).unwrap();
        for y in 0..n {
            dist[x * n + y] = d[y].unwrap() as f64;
        }
    }
    codinggap::certificate::Metric::new(n, dist).unwrap()
}

/// `k` disjoint paths of `len` hops whose sources hang off a common hub.
pub fn disjoint_paths(k: usize, len: usize) -> UnicastInstance {
    let mut b = InstanceBuilder::new();
    for i in 0..k {
        let mut prev = format!("s{i}");
        for h in 1..len {
            let next = format!("x{i}_{h}");
            b.edge(&prev, &next, 1);
            prev = next;
        }
        b.edge(&prev, &format!("t{i}"), 1);
        b.edge("hub", &format!("s{i}"), 1);
        b.session(&format!("s{i}"), &format!("t{i}"), 1);
    }
    b.build()
}
