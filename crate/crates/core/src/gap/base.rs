//! The base gap instance on `k` sessions.

use super::GapError;
use crate::instance::{GapInstance, GapParams, InstanceBuilder};
use crate::ratio::Ratio;

/// Edge count of the base instance: `2k + 1 + 3k(k-1)`.
pub fn base_edge_count(k: u64) -> u64 {
    2 * k + 1 + 3 * k * (k - 1)
}

/// Sources `s1..sk` hang off a hub `S`, sinks `t1..tk` off a hub `T`, and
/// `S - T` is the single cut edge. For every ordered pair `i != j` a private
/// three-hop path `s_i - p{i}_{j}a - p{i}_{j}b - t_j` is added.
///
/// Edge ids: `s_i - S` are `0..k`, `T - t_i` are `k..2k`, `S - T` is `2k`,
/// then the cross paths in order of `(i, j)`, three edges each.
pub fn base_instance(k: usize) -> Result<GapInstance, GapError> {
    if k < 2 {
        return Err(GapError::BaseTooSmall(k));
    }
    let mut b = InstanceBuilder::new();
    for i in 1..=k {
        b.node(&format!("s{i}"));
    }
    for i in 1..=k {
        b.node(&format!("t{i}"));
    }
    b.node("S");
    b.node("T");
    for i in 1..=k {
        b.edge(&format!("s{i}"), "S", 1);
    }
    for i in 1..=k {
        b.edge("T", &format!("t{i}"), 1);
    }
    let cut = b.edge("S", "T", 1);
    for i in 1..=k {
        for j in 1..=k {
            if i == j {
                continue;
            }
            let (x, y) = (format!("p{i}_{j}a"), format!("p{i}_{j}b"));
            b.edge(&format!("s{i}"), &x, 1);
            b.edge(&x, &y, 1);
            b.edge(&y, &format!("t{j}"), 1);
        }
    }
    for i in 1..=k {
        b.session(&format!("s{i}"), &format!("t{i}"), 1);
    }
    let m = base_edge_count(k as u64);
    Ok(GapInstance {
        instance: b.build(),
        cut_edges: vec![cut],
        params: GapParams { a: 3, b: 5, f: 1, k: k as u64, m, r: Ratio::from_integer(k.into()), u: Ratio::from_integer(m.into()) },
    })
}

/// Edge id of the first edge of the private path `s_i -> t_j` (1-based `i != j`).
pub fn cross_path_start(k: usize, i: usize, j: usize) -> usize {
    assert!(i != j && (1..=k).contains(&i) && (1..=k).contains(&j));
    let slot = (i - 1) * (k - 1) + if j < i { j - 1 } else { j - 2 };
    2 * k + 1 + 3 * slot
}

/// Paths `s_i -> t_{sigma(i)} -> T -> t_i` for the cyclic shift
/// `sigma(i) = i + 1 (mod k)`: each session takes its private path to the
/// next sink and comes back through the sink hub. Needs `k >= 2`.
pub fn permutation_paths(g: &GapInstance) -> Vec<Vec<crate::instance::Path>> {
    let inst = &g.instance;
    let k = inst.session_count();
    assert!(k >= 2, "a fixed-point-free permutation needs two sessions");
    (1..=k)
        .map(|i| {
            let j = i % k + 1;
            let start = cross_path_start(k, i, j);
            let edges = [start, start + 1, start + 2, k + j - 1, k + i - 1];
            vec![crate::instance::Path::from_edges(inst, inst.sessions[i - 1].source, &edges).expect("consistent ids")]
        })
        .collect()
}
