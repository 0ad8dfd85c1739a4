//! The graph product of two gap instances along a colored bipartite graph.

use serde::{Deserialize, Serialize};

use super::bipartite::{build_colored_bipartite, BipartiteLimits, ColoredBipartite};
use super::{base_edge_count, base_instance, GapError};
use crate::instance::{Edge, EdgeId, GapInstance, GapParams, NodeId, Session, UnicastInstance};
use crate::ratio::Ratio;

/// The replacement path of one outer cut edge `{u, v}` in one outer copy,
/// listed from `u` to `v`. Its first edge is the designated cut edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutPath {
    pub outer_copy: usize,
    pub outer_edge: EdgeId,
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
}

/// One merge: arc `color` of outer copy `outer_copy` was replaced by inner
/// session `inner_session` of inner copy `inner_copy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcLink {
    pub outer_copy: usize,
    pub color: usize,
    pub inner_copy: usize,
    pub inner_session: usize,
}

/// How the product was assembled from the copies of both factors.
///
/// Arc colors number the non-cut outer edges in id order: color `2q` is the
/// arc `u -> v` of the `q`-th such edge and `2q + 1` is `v -> u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWiring {
    pub outer_copies: usize,
    pub inner_copies: usize,
    pub outer_sessions: usize,
    pub inner_sessions: usize,
    /// Hop length of every cut replacement path.
    pub path_length: usize,
    /// Outer edge and direction behind each arc color.
    pub arcs: Vec<(EdgeId, u8)>,
    /// `outer_nodes[i][x]`: product node of node `x` in outer copy `i`.
    pub outer_nodes: Vec<Vec<NodeId>>,
    /// `inner_nodes[j][x]`: product node of node `x` in inner copy `j`.
    pub inner_nodes: Vec<Vec<NodeId>>,
    /// `inner_edges[j][e]`: product edge of edge `e` in inner copy `j`,
    /// oriented like the inner edge.
    pub inner_edges: Vec<Vec<EdgeId>>,
    pub links: Vec<ArcLink>,
    pub cut_paths: Vec<CutPath>,
}

impl ProductWiring {
    /// Link of arc `color` in outer copy `i`.
    pub fn link(&self, i: usize, color: usize) -> Option<&ArcLink> {
        self.links.iter().find(|l| l.outer_copy == i && l.color == color)
    }

    /// Replacement path of outer cut edge `e` in outer copy `i`.
    pub fn cut_path(&self, i: usize, e: EdgeId) -> Option<&CutPath> {
        self.cut_paths.iter().find(|p| p.outer_copy == i && p.outer_edge == e)
    }

    /// Arc color of outer edge `e` traversed in direction `dir`, if `e` is not cut.
    pub fn color_of(&self, e: EdgeId, dir: u8) -> Option<usize> {
        self.arcs.iter().position(|&a| a == (e, dir))
    }
}

#[derive(Clone, Debug)]
pub struct ProductInstance {
    pub gap: GapInstance,
    pub wiring: ProductWiring,
    /// Girth of the bipartite graph used, `None` for a forest.
    pub girth: Option<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so outer names win
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

fn sorted_cut(g: &GapInstance) -> Vec<EdgeId> {
    let mut cut = g.cut_edges.clone();
    cut.sort_unstable();
    cut.dedup();
    cut
}

/// Product `T(I1, I2, B)`: each non-cut outer edge becomes two arcs, the
/// left nodes of `B` index outer copies and the right nodes inner copies,
/// and every edge of `B` merges the endpoints of one outer arc with the
/// terminals of one inner session. Outer cut edges become paths of `a2` hops.
pub fn product(outer: &GapInstance, inner: &GapInstance, b: &ColoredBipartite) -> Result<ProductInstance, GapError> {
    let g1 = &outer.instance;
    let g2 = &inner.instance;
    let cut1 = sorted_cut(outer);
    let noncut: Vec<EdgeId> = (0..g1.edge_count()).filter(|e| cut1.binary_search(e).is_err()).collect();
    let colors = 2 * noncut.len();
    let k2 = g2.session_count();
    if b.m != colors || b.k != k2 {
        return Err(GapError::Dimensions(format!(
            "degrees ({}, {}) but the outer instance has {colors} arcs and the inner one {k2} sessions",
            b.m, b.k
        )));
    }
    if b.n1 * b.m != b.n2 * b.k || b.edges.len() != b.n1 * b.m {
        return Err(GapError::Dimensions("edge count does not match n1 * m = n2 * k".into()));
    }
    b.check_colors().map_err(GapError::Coloring)?;
    let a2 = usize::try_from(inner.params.a).map_err(|_| GapError::Dimensions("inner a too large".into()))?;
    if a2 == 0 && !cut1.is_empty() {
        return Err(GapError::Dimensions("inner a must be positive to replace cut edges".into()));
    }

    let (n1, n2) = (b.n1, b.n2);
    let (v1, v2) = (g1.node_count(), g2.node_count());
    let outer_base = 0;
    let inner_base = n1 * v1;
    let universe = inner_base + n2 * v2;
    let mut uf = UnionFind((0..universe).collect());
    let arcs: Vec<(EdgeId, u8)> = noncut.iter().flat_map(|&e| [(e, 0u8), (e, 1u8)]).collect();
    let mut links = Vec::with_capacity(b.edges.len());
    for be in &b.edges {
        let (e, dir) = arcs[be.chi1];
        let edge = &g1.edges[e];
        let (x, y) = if dir == 0 { (edge.u, edge.v) } else { (edge.v, edge.u) };
        let sess = &g2.sessions[be.chi2];
        uf.union(outer_base + be.left * v1 + x, inner_base + be.right * v2 + sess.source);
        uf.union(outer_base + be.left * v1 + y, inner_base + be.right * v2 + sess.sink);
        links.push(ArcLink { outer_copy: be.left, color: be.chi1, inner_copy: be.right, inner_session: be.chi2 });
    }
    links.sort_by_key(|l| (l.outer_copy, l.color));

    let mut id_of = vec![usize::MAX; universe];
    let mut names = Vec::new();
    for x in 0..universe {
        let r = uf.find(x);
        if id_of[r] == usize::MAX {
            id_of[r] = names.len();
            names.push(if r < inner_base {
                format!("o{}.{}", r / v1, g1.name(r % v1))
            } else {
                format!("i{}.{}", (r - inner_base) / v2, g2.name((r - inner_base) % v2))
            });
        }
        id_of[x] = id_of[r];
    }
    let outer_nodes: Vec<Vec<NodeId>> = (0..n1).map(|i| (0..v1).map(|x| id_of[outer_base + i * v1 + x]).collect()).collect();
    let inner_nodes: Vec<Vec<NodeId>> = (0..n2).map(|j| (0..v2).map(|x| id_of[inner_base + j * v2 + x]).collect()).collect();

    let mut edges = Vec::new();
    let mut cut_plus = Vec::new();
    let cut2 = sorted_cut(inner);
    let mut inner_edges = Vec::with_capacity(n2);
    for map in &inner_nodes {
        let mut ids = Vec::with_capacity(g2.edge_count());
        for (e, edge) in g2.edges.iter().enumerate() {
            if cut2.binary_search(&e).is_ok() {
                cut_plus.push(edges.len());
            }
            ids.push(edges.len());
            edges.push(Edge { u: map[edge.u], v: map[edge.v], capacity: edge.capacity });
        }
        inner_edges.push(ids);
    }
    let mut cut_paths = Vec::new();
    for (i, map) in outer_nodes.iter().enumerate() {
        for &e in &cut1 {
            let edge = &g1.edges[e];
            let mut nodes = vec![map[edge.u]];
            for h in 1..a2 {
                nodes.push(names.len());
                names.push(format!("c{i}.{e}.{h}"));
            }
            nodes.push(map[edge.v]);
            let mut ids = Vec::with_capacity(a2);
            for w in nodes.windows(2) {
                ids.push(edges.len());
                edges.push(Edge { u: w[0], v: w[1], capacity: edge.capacity });
            }
            cut_plus.push(ids[0]);
            cut_paths.push(CutPath { outer_copy: i, outer_edge: e, nodes, edges: ids });
        }
    }
    cut_plus.sort_unstable();
    let sessions: Vec<Session> = outer_nodes
        .iter()
        .flat_map(|map| g1.sessions.iter().map(move |s| Session { source: map[s.source], sink: map[s.sink], demand: s.demand }))
        .collect();
    let instance = UnicastInstance::new(names, edges, sessions)?;

    let girth = b.girth();
    let p1 = &outer.params;
    let p2 = &inner.params;
    let n1u = n1 as u64;
    let n2u = n2 as u64;
    let b_prod = p1.b * p2.b;
    let b_plus = match girth {
        Some(gg) => b_prod.min(gg as u64 / 2),
        None => b_prod,
    };
    let two = Ratio::from_integer(2.into());
    let one = Ratio::from_integer(1.into());
    let a2r = Ratio::from_integer(p2.a.into());
    let params = GapParams {
        a: p1.a * p2.a,
        b: b_plus,
        f: n1u * p1.f + n2u * p2.f,
        k: n1u * p1.k,
        m: p2.a * n1u * p1.f + n2u * p2.m,
        r: p1.r.clone() / (one.clone() + two.clone() * p1.u.clone() / p2.r.clone()),
        u: p2.u.clone() * (one.clone() + a2r / two.clone()) / (one + p2.r.clone() / (two * p1.u.clone())),
    };
    let wiring = ProductWiring {
        outer_copies: n1,
        inner_copies: n2,
        outer_sessions: g1.session_count(),
        inner_sessions: k2,
        path_length: a2,
        arcs,
        outer_nodes,
        inner_nodes,
        inner_edges,
        links,
        cut_paths,
    };
    Ok(ProductInstance { gap: GapInstance { instance, cut_edges: cut_plus, params }, wiring, girth })
}

/// Level-`level` member of the recursive family on ratio `r`: level 0 is the
/// base instance on `r` sessions, level 1 is the product of the base
/// instances on `3r` and `u_{0,3r}` sessions. `girth` defaults to
/// `2 * b1 * b2`. Sizes are checked against `limits.max_nodes` before any
/// large allocation.
pub fn level_instance(
    level: usize,
    r: usize,
    girth: Option<usize>,
    limits: BipartiteLimits,
    seed: u64,
) -> Result<ProductInstance, GapError> {
    match level {
        0 => {
            let gap = base_instance(r)?;
            check_nodes(gap.instance.node_count() as u128, limits)?;
            let wiring = ProductWiring {
                outer_copies: 1,
                inner_copies: 0,
                outer_sessions: r,
                inner_sessions: 0,
                path_length: 1,
                arcs: Vec::new(),
                outer_nodes: vec![(0..gap.instance.node_count()).collect()],
                inner_nodes: Vec::new(),
                inner_edges: Vec::new(),
                links: Vec::new(),
                cut_paths: Vec::new(),
            };
            Ok(ProductInstance { gap, wiring, girth: None })
        }
        1 => {
            let k1 = 3 * r;
            let k2 = usize::try_from(base_edge_count(k1 as u64)).map_err(|_| GapError::Level(level))?;
            let g = girth.unwrap_or(2 * 25);
            // nodes of one factor copy and the smallest possible lift
            let v1 = (2 * k1 + 2 + 2 * k1 * (k1 - 1)) as u128;
            let v2 = (2 * k2 + 2 + 2 * k2 * (k2 - 1)) as u128;
            let colors = 2 * (base_edge_count(k1 as u64) as u128 - 1);
            check_nodes(k2 as u128 * v1 + colors * v2, limits)?;
            let outer = base_instance(k1)?;
            let inner = base_instance(k2)?;
            let b = build_colored_bipartite(colors as usize, k2, g, limits, seed)?;
            check_nodes((b.n1 as u128) * v1 + (b.n2 as u128) * v2, limits)?;
            product(&outer, &inner, &b)
        }
        _ => Err(GapError::Level(level)),
    }
}

fn check_nodes(nodes: u128, limits: BipartiteLimits) -> Result<(), GapError> {
    if nodes > limits.max_nodes as u128 {
        Err(GapError::TooLarge { nodes, max_nodes: limits.max_nodes })
    } else {
        Ok(())
    }
}
