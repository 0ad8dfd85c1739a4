mod common;

use codinggap::flow::{check_dual_feasible, enumerate_paths, hop_bounded_shortest_path, solve_exact, solve_mwu, FlowSolution, FlowStatus, DEFAULT_PATH_LIMIT};
use codinggap::gap::base_instance;
use codinggap::ratio::{frac, int, Ratio};
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{random_instance, single_edge};

/// Congestion-limited value when every session has exactly one allowed path.
fn single_path_oracle(inst: &codinggap::UnicastInstance, t: usize) -> Ratio {
    let mut load = vec![0u64; inst.edge_count()];
    for s in &inst.sessions {
        let paths = enumerate_paths(inst, s.source, s.sink, t, 10).unwrap();
        assert_eq!(paths.len(), 1);
        for &e in &paths[0].edges {
            load[e] += s.demand;
        }
    }
    (0..inst.edge_count())
        .filter(|&e| load[e] > 0)
        .map(|e| frac((t as u64 * inst.edges[e].capacity) as i64, load[e] as i64))
        .min()
        .unwrap()
}

#[test]
fn base_instance_values_at_small_hop_bounds() {
    let g = base_instance(5).unwrap();
    let inst = &g.instance;
    let s = solve_exact(inst, 4, DEFAULT_PATH_LIMIT).unwrap();
    assert_eq!(s.z, single_path_oracle(inst, 4));
    assert_eq!(s.z, frac(4, 5));
    assert_eq!(s.dual.objective(inst, 4), frac(4, 5));
    assert!(s.flows.iter().all(|f| f.path.edges.contains(&10)));

    let s5 = solve_exact(inst, 5, DEFAULT_PATH_LIMIT).unwrap();
    assert!(s5.z >= Ratio::one());

    for t in [0, 1, 2] {
        let s = solve_exact(inst, t, DEFAULT_PATH_LIMIT).unwrap();
        assert_eq!(s.status, FlowStatus::HopInfeasible);
        assert!(s.z.is_zero());
        let check = check_dual_feasible(inst, t, &s.dual);
        assert!(check.feasible);
        assert!(check.objective.is_zero());
        let m = solve_mwu(inst, t, 0.1).unwrap();
        assert_eq!(m.status, FlowStatus::HopInfeasible);
    }
}

#[test]
fn single_edge_solution() {
    let inst = single_edge();
    let s = solve_exact(&inst, 1, DEFAULT_PATH_LIMIT).unwrap();
    assert_eq!(s.z, int(1));
    assert_eq!(s.dual.lengths, vec![int(1)]);
    assert_eq!(s.dual.h, vec![int(1)]);
    assert_eq!(s.dual.objective(&inst, 1), int(1));
    let m = solve_mwu(&inst, 1, 0.1).unwrap();
    assert_eq!(m.z, int(1));
    assert_eq!(m.dual.objective(&inst, 1), int(1));
}

#[test]
fn mwu_on_base_instance_is_close() {
    let g = base_instance(5).unwrap();
    let m = solve_mwu(&g.instance, 4, 0.1).unwrap();
    assert!(m.z <= frac(4, 5));
    assert!(m.z >= frac(4, 5) * frac(7, 10));
    assert!(m.primal_feasible(&g.instance));
    assert!(check_dual_feasible(&g.instance, 4, &m.dual).feasible);
}

#[test]
fn invalid_inputs_are_rejected() {
    let inst = single_edge();
    assert!(solve_mwu(&inst, 1, 0.0).is_err());
    assert!(solve_mwu(&inst, 1, 1.5).is_err());
    let g = base_instance(3).unwrap();
    assert!(solve_exact(&g.instance, 8, 5).is_err());
}

#[test]
fn flow_json_roundtrip() {
    let g = base_instance(3).unwrap();
    let s = solve_mwu(&g.instance, 4, 0.2).unwrap();
    let back = FlowSolution::from_json(&g.instance, &s.to_json(&g.instance)).unwrap();
    assert_eq!(back, s);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_solution_is_certified_optimal(seed in any::<u64>(), t in 1usize..6) {
        let inst = random_instance(seed, 8, 14, 3, 3);
        let s = solve_exact(&inst, t, DEFAULT_PATH_LIMIT).unwrap();
        prop_assert!(s.primal_feasible(&inst));
        let check = check_dual_feasible(&inst, t, &s.dual);
        prop_assert!(check.feasible, "{:?}", check.violation);
        prop_assert_eq!(check.objective, s.z.clone());
        prop_assert_eq!(check.demand_weighted_h, int(1));
    }

    #[test]
    fn mwu_is_sandwiched(seed in any::<u64>(), t in 1usize..6) {
        let inst = random_instance(seed, 8, 14, 3, 3);
        let eps = 0.1;
        let exact = solve_exact(&inst, t, DEFAULT_PATH_LIMIT).unwrap();
        let m = solve_mwu(&inst, t, eps).unwrap();
        prop_assert!(m.primal_feasible(&inst));
        prop_assert!(m.z <= exact.z);
        let slack = &exact.z * codinggap::ratio::from_f64(3.0 * eps);
        prop_assert!(&exact.z - &m.z <= slack);
        let check = check_dual_feasible(&inst, t, &m.dual);
        prop_assert!(check.feasible);
        prop_assert!(check.objective >= exact.z);
    }

    #[test]
    fn value_is_monotone_in_hop_bound(seed in any::<u64>()) {
        let inst = random_instance(seed, 7, 12, 3, 2);
        let mut prev = Ratio::zero();
        for t in 1..6 {
            let z = solve_exact(&inst, t, DEFAULT_PATH_LIMIT).unwrap().z;
            prop_assert!(z >= prev);
            prev = z;
        }
    }

    #[test]
    fn layered_dp_matches_enumeration(seed in any::<u64>(), t in 0usize..6, lens in proptest::collection::vec(0u64..9, 18)) {
        let inst = random_instance(seed, 8, 18, 2, 2);
        let lengths: Vec<u64> = lens.iter().take(inst.edge_count()).copied().chain(std::iter::repeat(1)).take(inst.edge_count()).collect();
        let s = &inst.sessions[0];
        let brute = enumerate_paths(&inst, s.source, s.sink, t, 1_000_000).unwrap()
            .iter()
            .map(|p| p.edges.iter().map(|&e| lengths[e]).sum::<u64>())
            .min();
        let dp = hop_bounded_shortest_path(&inst, &lengths, s.source, s.sink, t);
        prop_assert_eq!(dp.as_ref().map(|(_, w)| *w), brute);
        if let Some((p, _)) = dp {
            prop_assert!(p.is_simple() && p.is_walk_in(&inst) && p.hops() <= t);
        }
    }
}
