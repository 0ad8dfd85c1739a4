mod common;

use codinggap::gap::{base_instance, build_colored_bipartite, permutation_paths, product, BipartiteLimits};
use codinggap::gf2::BitVector;
use codinggap::instance::{GapInstance, GapParams, InstanceBuilder, Path};
use codinggap::protocol::*;
use codinggap::ratio::Ratio;
use codinggap::route::{route, schedule, PathAssignment, RouteConfig, Schedule, ScheduledPacket};
use codinggap::UnicastInstance;
use proptest::prelude::*;

use common::{random_instance, single_edge};

fn int(n: i64) -> Ratio {
    Ratio::from_integer(n.into())
}

fn permutation_schedule(g: &GapInstance) -> Schedule {
    let a = PathAssignment::from_paths(&g.instance, permutation_paths(g));
    schedule(&g.instance, &a, 0)
}

fn line(len: usize) -> UnicastInstance {
    let mut b = InstanceBuilder::new();
    for i in 0..len {
        b.edge(&format!("v{i}"), &format!("v{}", i + 1), 1);
    }
    b.session("v0", &format!("v{len}"), 1);
    b.build()
}

#[test]
fn routing_replay_examples() {
    let inst = line(4);
    let path = Path::from_edges(&inst, 0, &[0, 1, 2, 3]).unwrap();
    let s = Schedule::new(vec![ScheduledPacket { session: 0, copy: 0, path: path.clone(), departures: vec![1, 2, 3, 4] }]);
    assert_eq!(replay_routing(&inst, &s).unwrap(), CompletionTimes(vec![4]));

    let early = Schedule::new(vec![ScheduledPacket { session: 0, copy: 0, path, departures: vec![1, 2, 2, 4] }]);
    assert!(matches!(replay_routing(&inst, &early), Err(ProtocolError::Causality { round: 2, edge: 2, .. })));

    let mut b = InstanceBuilder::new();
    let e = b.edge("s", "t", 1);
    b.session("s", "t", 1);
    b.session("s", "t", 1);
    let two = b.build();
    let p = Path::from_edges(&two, 0, &[e]).unwrap();
    let pk = |session, round| ScheduledPacket { session, copy: 0, path: p.clone(), departures: vec![round] };
    assert_eq!(replay_routing(&two, &Schedule::new(vec![pk(0, 1), pk(1, 2)])).unwrap(), CompletionTimes(vec![1, 2]));
    assert!(matches!(
        replay_routing(&two, &Schedule::new(vec![pk(0, 1), pk(1, 1)])),
        Err(ProtocolError::Capacity { round: 1, edge: 0, .. })
    ));
    assert!(matches!(replay_routing(&two, &Schedule::new(vec![pk(0, 1)])), Err(ProtocolError::MissingCopy { session: 1, .. })));

    let g = base_instance(5).unwrap();
    let s = permutation_schedule(&g);
    assert_eq!(replay_routing(&g.instance, &s).unwrap(), CompletionTimes(vec![5; 5]));
    assert_eq!(replay_coding(&g.instance, &schedule_to_trace(&g.instance, &s)).unwrap(), CompletionTimes(vec![5; 5]));
}

#[test]
fn opposite_directions_have_separate_budgets() {
    let mut b = InstanceBuilder::new();
    let e = b.edge("a", "b", 1);
    b.session("a", "b", 1);
    b.session("b", "a", 1);
    let inst = b.build();
    let ab = Path::from_edges(&inst, 0, &[e]).unwrap();
    let ba = Path::from_edges(&inst, 1, &[e]).unwrap();
    let s = Schedule::new(vec![
        ScheduledPacket { session: 0, copy: 0, path: ab, departures: vec![1] },
        ScheduledPacket { session: 1, copy: 0, path: ba, departures: vec![1] },
    ]);
    assert_eq!(replay_routing(&inst, &s).unwrap().makespan(), 1);
}

#[test]
fn xor_protocol_finishes_in_three_rounds() {
    for k in [2, 5, 8, 9, 16] {
        let g = base_instance(k).unwrap();
        let trace = xor_star_protocol(k).unwrap();
        assert_eq!(replay_coding(&g.instance, &trace).unwrap(), CompletionTimes(vec![3; k]));
    }
    assert!(matches!(xor_star_protocol(1), Err(ProtocolError::TooFewSessions(1))));
}

#[test]
fn coding_replay_errors() {
    let inst = line(3);
    let unit = || Payload::Coded(BitVector::unit(1, 0));
    let tx = |edge, payload| Transmission { edge, dir: 0, payload };
    let half = ProtocolTrace { bits: 1, rounds: vec![vec![tx(0, unit())], vec![tx(1, unit())]] };
    assert!(matches!(replay_coding(&inst, &half), Err(ProtocolError::Undelivered(ref v)) if v == &vec![0]));

    let jump = ProtocolTrace { bits: 1, rounds: vec![vec![tx(0, unit()), tx(1, unit())]] };
    assert!(matches!(replay_coding(&inst, &jump), Err(ProtocolError::Causality { round: 1, edge: 1, .. })));

    let wide = ProtocolTrace { bits: 2, rounds: vec![] };
    assert!(matches!(replay_coding(&inst, &wide), Err(ProtocolError::BitCount { .. })));

    let full = ProtocolTrace { bits: 1, rounds: vec![vec![tx(0, unit())], vec![tx(1, unit())], vec![tx(2, unit())]] };
    assert_eq!(replay_coding(&inst, &full).unwrap(), CompletionTimes(vec![3]));
}

#[test]
fn trace_json_roundtrip() {
    let t = xor_star_protocol(5).unwrap();
    assert_eq!(ProtocolTrace::from_json(&t.to_json()).unwrap(), t);
    let g = base_instance(3).unwrap();
    let r = schedule_to_trace(&g.instance, &permutation_schedule(&g));
    assert_eq!(ProtocolTrace::from_json(&r.to_json()).unwrap(), r);
    assert!(ProtocolTrace::from_json(r#"{"bits":1,"rounds":[[{"edge":0,"dir":0}]]}"#).is_err());
}

/// Single-edge gap instance whose one-round protocol forwards the bit.
fn single_edge_gap() -> (GapInstance, ProtocolTrace) {
    let g = GapInstance {
        instance: single_edge(),
        cut_edges: vec![],
        params: GapParams { a: 1, b: 1, f: 0, k: 1, m: 1, r: int(1), u: int(1) },
    };
    let t = ProtocolTrace { bits: 1, rounds: vec![vec![Transmission { edge: 0, dir: 0, payload: Payload::Coded(BitVector::unit(1, 0)) }]] };
    (g, t)
}

#[test]
fn composed_protocols_replay_within_product_of_lengths() {
    let g5 = base_instance(5).unwrap();
    let x5 = xor_star_protocol(5).unwrap();
    let b = build_colored_bipartite(140, 5, 4, BipartiteLimits::default(), 0).unwrap();
    let p = product(&g5, &g5, &b).unwrap();
    let t = compose_product_protocol(&x5, &x5, &p.gap, Some(&p.wiring)).unwrap();
    assert!(replay_coding(&p.gap.instance, &t).unwrap().makespan() <= 9);
    assert!(matches!(compose_product_protocol(&x5, &x5, &p.gap, None), Err(ProtocolError::Wiring(_))));

    let (one, fwd) = single_edge_gap();
    let b = build_colored_bipartite(140, 1, 4, BipartiteLimits::default(), 0).unwrap();
    let q = product(&g5, &one, &b).unwrap();
    let t = compose_product_protocol(&x5, &fwd, &q.gap, Some(&q.wiring)).unwrap();
    assert_eq!(replay_coding(&q.gap.instance, &t).unwrap().makespan(), 3);

    // two levels: base(2) around (base(2) x base(2))
    let g2 = base_instance(2).unwrap();
    let x2 = xor_star_protocol(2).unwrap();
    let b = build_colored_bipartite(20, 2, 4, BipartiteLimits::default(), 0).unwrap();
    let p1 = product(&g2, &g2, &b).unwrap();
    let t1 = compose_product_protocol(&x2, &x2, &p1.gap, Some(&p1.wiring)).unwrap();
    assert!(replay_coding(&p1.gap.instance, &t1).unwrap().makespan() <= 9);
    let b = build_colored_bipartite(20, p1.gap.instance.session_count(), 4, BipartiteLimits::default(), 0).unwrap();
    let p2 = product(&g2, &p1.gap, &b).unwrap();
    let t2 = compose_product_protocol(&x2, &t1, &p2.gap, Some(&p2.wiring)).unwrap();
    assert!(replay_coding(&p2.gap.instance, &t2).unwrap().makespan() <= 27);
}

#[test]
fn lp_aggregate_examples() {
    let ones = |n: usize| vec![int(1); n];
    assert_eq!(lp_aggregate(&[3, 3, 3], &ones(3), Norm::Infinity).unwrap().exact, Some(int(3)));
    let third = vec![Ratio::new(1.into(), 3.into()); 3];
    assert_eq!(lp_aggregate(&[1, 2, 3], &third, Norm::P(1)).unwrap().exact, Some(int(2)));
    assert_eq!(lp_aggregate(&[3, 4], &ones(2), Norm::P(2)).unwrap().exact, Some(int(5)));
    let v = lp_aggregate(&[1, 1], &ones(2), Norm::P(2)).unwrap();
    assert_eq!(v.exact, None);
    assert!((v.approx - 2f64.sqrt()).abs() < 1e-12);
    assert!(matches!(lp_aggregate(&[1], &[int(-1)], Norm::P(1)), Err(ProtocolError::NegativeWeight(0))));
    assert!(lp_aggregate(&[1], &ones(2), Norm::P(1)).is_err());
}

#[test]
fn bucketed_schedules() {
    let g = base_instance(5).unwrap();
    let perm = |inst: &UnicastInstance| -> Result<Schedule, String> {
        let gg = GapInstance { instance: inst.clone(), cut_edges: vec![], params: g.params.clone() };
        Ok(permutation_schedule(&gg))
    };
    let out = bucketed_schedule(&g.instance, &[3; 5], &perm).unwrap();
    assert_eq!(out.classes.len(), 1);
    assert_eq!(out.alpha, Ratio::new(5.into(), 3.into()));
    assert_eq!(out.times, CompletionTimes(vec![5; 5]));

    let cfg = RouteConfig::new(8, 0);
    let out = bucketed_schedule(&g.instance, &[3; 5], &cfg).unwrap();
    let plain = route(&g.instance, &cfg).unwrap().schedule;
    assert_eq!(out.schedule.makespan, plain.makespan);
    for &t in &out.times.0 {
        assert!(int(t as i64) <= int(12) * out.alpha.clone());
    }

    let mut b = InstanceBuilder::new();
    b.edge("a", "b", 1);
    b.edge("c", "d", 1);
    b.edge("b", "c", 1);
    b.session("a", "b", 1);
    b.session("c", "d", 1);
    let two = b.build();
    let out = bucketed_schedule(&two, &[1, 1024], &cfg).unwrap();
    assert_eq!(out.classes.len(), 2);
    assert_eq!(out.times, CompletionTimes(vec![1, 2]));
    assert!(matches!(bucketed_schedule(&two, &[0, 1], &cfg), Err(ProtocolError::ZeroCodingTime(0))));
}

#[test]
fn pipelined_copies() {
    let inst = single_edge();
    let s = route(&inst, &RouteConfig::new(4, 0)).unwrap().schedule;
    let p = pipeline(&inst, &s, 8).unwrap();
    assert_eq!((p.rounds_used, p.amortized_cost), (8, 1));
    assert_eq!(p.rate, int(1));

    let g = base_instance(5).unwrap();
    let s = permutation_schedule(&g);
    let p = pipeline(&g.instance, &s, 50).unwrap();
    assert!(p.rounds_used <= 55);
    assert_eq!(p.times.makespan(), p.rounds_used);
    let one = pipeline(&g.instance, &s, 1).unwrap();
    assert_eq!(one.schedule, s);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn forwarding_traces_replay_like_schedules(seed in any::<u64>()) {
        let inst = random_instance(seed, 8, 14, 3, 2);
        let s = route(&inst, &RouteConfig::new(8, seed)).unwrap().schedule;
        let routed = replay_routing(&inst, &s).unwrap();
        prop_assert_eq!(replay_coding(&inst, &schedule_to_trace(&inst, &s)).unwrap(), routed.clone());
        prop_assert_eq!(routed.makespan(), s.makespan);
    }

    #[test]
    fn lp_aggregate_is_monotone_and_homogeneous(
        times in prop::collection::vec(0u64..50, 1..6),
        ws in prop::collection::vec(0i64..5, 6),
        bump in 0usize..6,
        c in 0u64..7,
        p in 1u32..4,
    ) {
        let w: Vec<Ratio> = ws[..times.len()].iter().map(|&x| int(x)).collect();
        for norm in [Norm::P(p), Norm::Infinity] {
            let base = lp_aggregate(&times, &w, norm).unwrap();
            let mut up = times.clone();
            up[bump % times.len()] += 1;
            prop_assert!(lp_aggregate(&up, &w, norm).unwrap().approx >= base.approx - 1e-9);
            let scaled: Vec<u64> = times.iter().map(|t| t * c).collect();
            let sv = lp_aggregate(&scaled, &w, norm).unwrap();
            match (&base.exact, &sv.exact) {
                (Some(x), Some(y)) => prop_assert_eq!(y.clone(), x.clone() * int(c as i64)),
                _ => prop_assert!((sv.approx - base.approx * c as f64).abs() <= 1e-9 * (1.0 + sv.approx)),
            }
        }
    }

    #[test]
    fn pipelining_stays_within_budget(seed in any::<u64>(), w in 1u64..12) {
        let inst = random_instance(seed, 7, 12, 3, 2);
        let s = route(&inst, &RouteConfig::new(8, seed)).unwrap().schedule;
        let p = pipeline(&inst, &s, w).unwrap();
        prop_assert!(p.rounds_used >= s.makespan);
        prop_assert!(p.rounds_used <= s.makespan + (w - 1) * p.amortized_cost.max(1) * s.makespan.max(1));
    }
}
