//! Edge-colored biregular bipartite graphs of large girth.

use std::collections::VecDeque;

use rand::seq::SliceRandom;

use super::GapError;
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoredEdge {
    pub left: usize,
    pub right: usize,
    /// Outer-arc color in `0..m`.
    pub chi1: usize,
    /// Inner-session color in `0..k`.
    pub chi2: usize,
}

/// Left nodes have degree `m` and see every `chi1` color once with a single
/// `chi2` color; right nodes have degree `k` and see every `chi2` color once
/// with a single `chi1` color.
///
/// The graph is built as an `N`-fold lift of the complete bipartite graph
/// between the `k` session colors and the `m` arc colors: left node
/// `sigma * N + x` carries session color `sigma`, right node `c * N + y`
/// carries arc color `c`, and each color pair contributes a perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredBipartite {
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub k: usize,
    pub edges: Vec<ColoredEdge>,
}

#[derive(Clone, Copy, Debug)]
pub struct BipartiteLimits {
    pub max_nodes: usize,
    pub attempts_per_size: usize,
}

impl Default for BipartiteLimits {
    fn default() -> Self {
        BipartiteLimits { max_nodes: 50_000, attempts_per_size: 4 }
    }
}

impl ColoredBipartite {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n1 + self.n2];
        for e in &self.edges {
            adj[e.left].push(self.n1 + e.right);
            adj[self.n1 + e.right].push(e.left);
        }
        adj
    }

    /// Length of a shortest cycle, `None` for a forest. Parallel edges count
    /// as cycles of length 2.
    pub fn girth(&self) -> Option<usize> {
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.left, e.right)).collect();
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return Some(2);
        }
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        for root in 0..adj.len() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut q = VecDeque::from([root]);
            while let Some(x) = q.pop_front() {
                if best.is_some_and(|b| 2 * dist[x] + 1 >= b) {
                    break;
                }
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        q.push_back(y);
                    } else if parent[x] != y {
                        let c = dist[x] + dist[y] + 1;
                        if best.is_none_or(|b| c < b) {
                            best = Some(c);
                        }
                    }
                }
            }
        }
        best
    }

    /// Checks the four color constraints and the degree counts.
    pub fn check_colors(&self) -> Result<(), String> {
        let mut left: Vec<Vec<&ColoredEdge>> = vec![Vec::new(); self.n1];
        let mut right: Vec<Vec<&ColoredEdge>> = vec![Vec::new(); self.n2];
        for e in &self.edges {
            left[e.left].push(e);
            right[e.right].push(e);
        }
        for (v, es) in left.iter().enumerate() {
            let mut c1: Vec<usize> = es.iter().map(|e| e.chi1).collect();
            c1.sort_unstable();
            if c1 != (0..self.m).collect::<Vec<_>>() {
                return Err(format!("left node {v} does not see every arc color exactly once"));
            }
            if es.iter().any(|e| e.chi2 != es[0].chi2) {
                return Err(format!("left node {v} sees several session colors"));
            }
        }
        for (w, es) in right.iter().enumerate() {
            let mut c2: Vec<usize> = es.iter().map(|e| e.chi2).collect();
            c2.sort_unstable();
            if c2 != (0..self.k).collect::<Vec<_>>() {
                return Err(format!("right node {w} does not see every session color exactly once"));
            }
            if es.iter().any(|e| e.chi1 != es[0].chi1) {
                return Err(format!("right node {w} sees several arc colors"));
            }
        }
        Ok(())
    }
}

/// Nodes within distance `(girth - 1) / 2` of a node, which must be distinct
/// in any biregular graph of that girth; the larger of the two roots.
pub fn moore_bound(m: usize, k: usize, girth: usize) -> u128 {
    let radius = girth.saturating_sub(1) / 2;
    let count = |first: usize, second: usize| -> u128 {
        let mut total: u128 = 1;
        let mut level: u128 = 1;
        for step in 0..radius {
            let deg = if step % 2 == 0 { first } else { second } as u128;
            let branch = if step == 0 { deg } else { deg.saturating_sub(1) };
            level = level.saturating_mul(branch);
            total = total.saturating_add(level);
        }
        total
    };
    count(m, k).max(count(k, m))
}

/// One attempt at an `N`-lift avoiding cycles shorter than `girth`.
fn attempt(m: usize, k: usize, n: usize, girth: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Option<ColoredBipartite> {
    let n1 = k * n;
    let n2 = m * n;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n1 + n2];
    let mut edges = Vec::with_capacity(n1 * m);
    let mut pairs: Vec<(usize, usize)> = (0..k).flat_map(|s| (0..m).map(move |c| (s, c))).collect();
    pairs.shuffle(rng);
    let depth = girth.saturating_sub(2);
    let mut mark = vec![usize::MAX; n1 + n2];
    let mut stamp = 0usize;
    for (sigma, c) in pairs {
        let mut taken = vec![false; n];
        let mut xs: Vec<usize> = (0..n).collect();
        xs.shuffle(rng);
        for x in xs {
            let l = sigma * n + x;
            // nodes within `depth` of l would close a cycle shorter than girth
            stamp += 1;
            mark[l] = stamp;
            let mut frontier = vec![l];
            for _ in 0..depth {
                let mut next = Vec::new();
                for &v in &frontier {
                    for &w in &adj[v] {
                        if mark[w] != stamp {
                            mark[w] = stamp;
                            next.push(w);
                        }
                    }
                }
                frontier = next;
            }
            let mut ys: Vec<usize> = (0..n).filter(|&y| !taken[y] && mark[n1 + c * n + y] != stamp).collect();
            ys.shuffle(rng);
            let y = *ys.first()?;
            taken[y] = true;
            let r = c * n + y;
            adj[l].push(n1 + r);
            adj[n1 + r].push(l);
            edges.push(ColoredEdge { left: l, right: r, chi1: c, chi2: sigma });
        }
    }
    edges.sort_by_key(|e| (e.left, e.chi1));
    Some(ColoredBipartite { n1, n2, m, k, edges })
}

/// Randomized incremental construction: matchings are added edge by edge,
/// rejecting any edge that would close a cycle shorter than `girth`; the
/// lift size doubles after `attempts_per_size` failures. Fails early when
/// the Moore bound already exceeds the node limit.
pub fn build_colored_bipartite(m: usize, k: usize, girth: usize, limits: BipartiteLimits, seed: u64) -> Result<ColoredBipartite, GapError> {
    if m == 0 || k == 0 {
        return Err(GapError::Degree);
    }
    let needed = moore_bound(m, k, girth);
    if needed > limits.max_nodes as u128 {
        return Err(GapError::GirthNotReached {
            girth,
            achieved: None,
            n1: 0,
            n2: 0,
            max_nodes: limits.max_nodes,
            detail: format!("any girth-{girth} graph with degrees ({m}, {k}) needs at least {needed} nodes"),
        });
    }
    let mut n = 1usize;
    let mut counter = 0u64;
    let mut last = (0, 0);
    while (m + k) * n <= limits.max_nodes {
        for _ in 0..limits.attempts_per_size {
            let mut rng = seed::rng(seed, "bipartite", counter);
            counter += 1;
            if let Some(b) = attempt(m, k, n, girth, &mut rng) {
                return Ok(b);
            }
        }
        last = (k * n, m * n);
        n *= 2;
    }
    // report what an unconstrained lift of the last size achieves
    let achieved = if last.0 > 0 {
        let mut rng = seed::rng(seed, "bipartite", counter);
        attempt(m, k, last.0 / k, 0, &mut rng).and_then(|b| b.girth())
    } else {
        None
    };
    Err(GapError::GirthNotReached {
        girth,
        achieved,
        n1: last.0,
        n2: last.1,
        max_nodes: limits.max_nodes,
        detail: "randomized construction did not reach the girth within the node limit".into(),
    })
}
