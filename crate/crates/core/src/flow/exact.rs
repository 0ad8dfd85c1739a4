//! Exact hop-bounded concurrent flow by explicit path enumeration.

use num_traits::{Signed, Zero};

use super::simplex::{self, Lp};
use super::{degenerate_solution, enumerate_paths, normalize_dual, require_valid, FlowError, FlowSolution, FlowStatus, PathFlow};
use crate::instance::{Path, UnicastInstance};
use crate::ratio::Ratio;

pub const DEFAULT_PATH_LIMIT: usize = 100_000;

/// Solves the LP exactly over every simple path with at most `hop_bound`
/// hops. Fails with [`FlowError::PathLimit`] when more than `path_limit`
/// paths exist in total.
pub fn solve_exact(inst: &UnicastInstance, hop_bound: usize, path_limit: usize) -> Result<FlowSolution, FlowError> {
    require_valid(inst)?;
    if let Some(s) = degenerate_solution(inst, hop_bound, None) {
        return Ok(s);
    }
    let k = inst.session_count();
    let nontrivial: Vec<usize> = (0..k).filter(|&i| inst.sessions[i].source != inst.sessions[i].sink).collect();
    let mut columns: Vec<(usize, Path)> = Vec::new();
    for &i in &nontrivial {
        let s = &inst.sessions[i];
        let left = path_limit - columns.len();
        let paths = enumerate_paths(inst, s.source, s.sink, hop_bound, left).map_err(|_| FlowError::PathLimit { limit: path_limit })?;
        columns.extend(paths.into_iter().map(|p| (i, p)));
    }

    // rows: one per nontrivial session, then one per edge used by some path
    let mut demand_row = vec![usize::MAX; k];
    for (r, &i) in nontrivial.iter().enumerate() {
        demand_row[i] = r;
    }
    let mut edge_row = vec![usize::MAX; inst.edge_count()];
    let mut rows = nontrivial.len();
    let mut row_edge = Vec::new();
    for (_, p) in &columns {
        for &e in &p.edges {
            if edge_row[e] == usize::MAX {
                edge_row[e] = rows;
                row_edge.push(e);
                rows += 1;
            }
        }
    }
    let mut rhs = vec![0i64; rows];
    for (j, &e) in row_edge.iter().enumerate() {
        rhs[nontrivial.len() + j] = hop_bound as i64 * inst.edges[e].capacity as i64;
    }
    let mut cols = Vec::with_capacity(columns.len() + 1);
    cols.push(nontrivial.iter().map(|&i| (demand_row[i], inst.sessions[i].demand as i64)).collect::<Vec<_>>());
    for (i, p) in &columns {
        let mut c = vec![(demand_row[*i], -1)];
        c.extend(p.edges.iter().map(|&e| (edge_row[e], 1)));
        cols.push(c);
    }
    let mut obj = vec![0i64; cols.len()];
    obj[0] = 1;
    let lp = Lp { rows, cols, obj, rhs };
    let sol = simplex::solve_exact(&lp).map_err(|e| FlowError::Simplex(format!("{e:?}")))?;

    let z = sol.x[0].clone();
    let mut flows: Vec<PathFlow> = columns
        .into_iter()
        .zip(sol.x.iter().skip(1))
        .filter(|(_, v)| v.is_positive())
        .map(|((i, path), v)| PathFlow { session: i, path, value: v.clone() })
        .collect();
    for (i, s) in inst.sessions.iter().enumerate() {
        if s.source == s.sink {
            flows.push(PathFlow { session: i, path: Path::trivial(s.source), value: &z * Ratio::from_integer(s.demand.into()) });
        }
    }
    flows.sort_by(|a, b| (a.session, &a.path).cmp(&(b.session, &b.path)));

    let mut lengths = vec![Ratio::zero(); inst.edge_count()];
    for (j, &e) in row_edge.iter().enumerate() {
        lengths[e] = sol.y[nontrivial.len() + j].clone();
    }
    let dual = normalize_dual(inst, hop_bound, lengths);
    Ok(FlowSolution { z, hop_bound, epsilon: None, status: FlowStatus::Feasible, flows, dual })
}
