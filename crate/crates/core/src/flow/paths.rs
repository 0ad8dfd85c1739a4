//! Hop-bounded shortest paths and explicit path enumeration.

use std::ops::Add;

use num_traits::Zero;

use crate::instance::{EdgeId, NodeId, Path, UnicastInstance};

/// Weights for the hop-layered DP. Floats are allowed here, unlike in
/// [`crate::instance::Length`].
pub trait PathWeight: Clone + PartialOrd + Zero + Add<Output = Self> {}
impl<T: Clone + PartialOrd + Zero + Add<Output = T>> PathWeight for T {}

#[derive(Clone, Copy)]
enum Step {
    Carry,
    From(NodeId, EdgeId),
}

/// Minimum-length `source -> sink` path with at most `hop_bound` edges.
///
/// Walks are computed layer by layer and only replaced on strict
/// improvement while scanning nodes and neighbours in increasing index
/// order, so ties go to the lexicographically first predecessor. The walk is
/// reduced to a simple path, which never lengthens it for nonnegative
/// lengths. Returns `None` when no path with at most `hop_bound` hops exists.
pub fn hop_bounded_shortest_path<W: PathWeight>(
    inst: &UnicastInstance,
    lengths: &[W],
    source: NodeId,
    sink: NodeId,
    hop_bound: usize,
) -> Option<(Path, W)> {
    assert_eq!(lengths.len(), inst.edge_count());
    if source == sink {
        return Some((Path::trivial(source), W::zero()));
    }
    let n = inst.node_count();
    let mut dist: Vec<Vec<Option<W>>> = Vec::with_capacity(hop_bound + 1);
    let mut step: Vec<Vec<Step>> = Vec::with_capacity(hop_bound + 1);
    let mut first = vec![None; n];
    first[source] = Some(W::zero());
    dist.push(first);
    step.push(vec![Step::Carry; n]);
    for h in 1..=hop_bound {
        let prev = &dist[h - 1];
        let mut cur = prev.clone();
        let mut st = vec![Step::Carry; n];
        let mut changed = false;
        for u in 0..n {
            let Some(du) = &prev[u] else { continue };
            for &(v, e) in inst.neighbors(u) {
                let cand = du.clone() + lengths[e].clone();
                let better = match &cur[v] {
                    None => true,
                    Some(dv) => cand < *dv,
                };
                if better {
                    cur[v] = Some(cand);
                    st[v] = Step::From(u, e);
                    changed = true;
                }
            }
        }
        dist.push(cur);
        step.push(st);
        if !changed {
            break;
        }
    }
    let top = dist.len() - 1;
    dist[top][sink].as_ref()?;
    let mut nodes = vec![sink];
    let mut edges = Vec::new();
    let (mut h, mut v) = (top, sink);
    while h > 0 {
        match step[h][v] {
            Step::Carry => h -= 1,
            Step::From(u, e) => {
                nodes.push(u);
                edges.push(e);
                v = u;
                h -= 1;
            }
        }
    }
    debug_assert_eq!(v, source);
    nodes.reverse();
    edges.reverse();
    let path = Path { nodes, edges }.simplify();
    let len = path.edges.iter().fold(W::zero(), |acc, &e| acc + lengths[e].clone());
    Some((path, len))
}

/// Every simple `source -> sink` path with at most `hop_bound` edges, as
/// distinct edge sequences. Fails with the running count once `limit` is
/// exceeded.
pub fn enumerate_paths(
    inst: &UnicastInstance,
    source: NodeId,
    sink: NodeId,
    hop_bound: usize,
    limit: usize,
) -> Result<Vec<Path>, usize> {
    if source == sink {
        return Ok(vec![Path::trivial(source)]);
    }
    let to_sink = inst.hop_distances_from(sink, &[]);
    let mut out = Vec::new();
    let mut on_path = vec![false; inst.node_count()];
    let mut nodes = vec![source];
    let mut edges = Vec::new();
    on_path[source] = true;

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        inst: &UnicastInstance,
        sink: NodeId,
        hop_bound: usize,
        limit: usize,
        to_sink: &[Option<u64>],
        on_path: &mut [bool],
        nodes: &mut Vec<NodeId>,
        edges: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
    ) -> Result<(), usize> {
        let at = *nodes.last().unwrap();
        for &(v, e) in inst.neighbors(at) {
            if on_path[v] {
                continue;
            }
            let Some(rest) = to_sink[v] else { continue };
            if edges.len() + 1 + rest as usize > hop_bound {
                continue;
            }
            nodes.push(v);
            edges.push(e);
            if v == sink {
                out.push(Path { nodes: nodes.clone(), edges: edges.clone() });
                if out.len() > limit {
                    return Err(out.len());
                }
            } else {
                on_path[v] = true;
                dfs(inst, sink, hop_bound, limit, to_sink, on_path, nodes, edges, out)?;
                on_path[v] = false;
            }
            nodes.pop();
            edges.pop();
        }
        Ok(())
    }

    dfs(inst, sink, hop_bound, limit, &to_sink, &mut on_path, &mut nodes, &mut edges, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceBuilder;

    fn square_with_chord() -> UnicastInstance {
        let mut b = InstanceBuilder::new();
        b.edge("a", "b", 1);
        b.edge("b", "d", 1);
        b.edge("a", "c", 1);
        b.edge("c", "d", 1);
        b.edge("a", "d", 1);
        b.session("a", "d", 1);
        b.build()
    }

    #[test]
    fn hop_bound_forces_expensive_chord() {
        let g = square_with_chord();
        let l = [1.0, 1.0, 1.0, 1.0, 10.0];
        let (a, d) = (g.node_id("a").unwrap(), g.node_id("d").unwrap());
        let (p, w) = hop_bounded_shortest_path(&g, &l, a, d, 2).unwrap();
        assert_eq!(w, 2.0);
        assert_eq!(p.edges, vec![0, 1]);
        let (p, w) = hop_bounded_shortest_path(&g, &l, a, d, 1).unwrap();
        assert_eq!(w, 10.0);
        assert_eq!(p.edges, vec![4]);
        assert!(hop_bounded_shortest_path(&g, &l, a, d, 0).is_none());
    }

    #[test]
    fn zero_lengths_still_give_simple_paths() {
        let g = square_with_chord();
        let l = [0u64; 5];
        let (a, d) = (g.node_id("a").unwrap(), g.node_id("d").unwrap());
        let (p, w) = hop_bounded_shortest_path(&g, &l, a, d, 4).unwrap();
        assert_eq!(w, 0);
        assert!(p.is_simple());
        assert!(p.is_walk_in(&g));
    }

    #[test]
    fn enumeration_counts() {
        let g = square_with_chord();
        let (a, d) = (g.node_id("a").unwrap(), g.node_id("d").unwrap());
        assert_eq!(enumerate_paths(&g, a, d, 1, 100).unwrap().len(), 1);
        assert_eq!(enumerate_paths(&g, a, d, 2, 100).unwrap().len(), 3);
        assert_eq!(enumerate_paths(&g, a, d, 2, 2), Err(3));
    }
}
