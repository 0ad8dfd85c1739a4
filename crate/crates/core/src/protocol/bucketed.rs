use super::{replay_routing, CompletionTimes, ProtocolError};
use crate::instance::UnicastInstance;
use crate::ratio::Ratio;
use crate::route::{route, RouteConfig, Schedule};

/// Anything that produces a routing schedule for a sub-instance.
pub trait Router {
    fn schedule(&self, inst: &UnicastInstance) -> Result<Schedule, String>;
}

impl Router for RouteConfig {
    fn schedule(&self, inst: &UnicastInstance) -> Result<Schedule, String> {
        route(inst, self).map(|r| r.schedule).map_err(|e| e.to_string())
    }
}

impl<F: Fn(&UnicastInstance) -> Result<Schedule, String>> Router for F {
    fn schedule(&self, inst: &UnicastInstance) -> Result<Schedule, String> {
        self(inst)
    }
}

/// Sessions with coding time in `[2^level, 2^(level+1))`, or coding time 0
/// for `level = None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicClass {
    pub level: Option<u32>,
    pub sessions: Vec<usize>,
    /// Rounds used by earlier classes.
    pub offset: u64,
    pub makespan: u64,
    pub max_coding_time: u64,
}

#[derive(Clone, Debug)]
pub struct Bucketed {
    pub schedule: Schedule,
    pub times: CompletionTimes,
    /// Largest ratio of a class's routing makespan to its largest coding time.
    pub alpha: Ratio,
    pub classes: Vec<DyadicClass>,
}

/// Routes the dyadic classes of coding times one after another in
/// increasing order and checks `T'_i <= 4 alpha T_i` for every session.
pub fn bucketed_schedule(inst: &UnicastInstance, coding_times: &[u64], router: &dyn Router) -> Result<Bucketed, ProtocolError> {
    if coding_times.len() != inst.session_count() {
        return Err(ProtocolError::WeightCount { times: coding_times.len(), weights: inst.session_count() });
    }
    let mut levels: Vec<Option<u32>> = Vec::new();
    for (i, &t) in coding_times.iter().enumerate() {
        let s = &inst.sessions[i];
        if t == 0 && s.source != s.sink {
            return Err(ProtocolError::ZeroCodingTime(i));
        }
        let level = (t > 0).then(|| t.ilog2());
        if !levels.contains(&level) {
            levels.push(level);
        }
    }
    levels.sort_unstable();

    let mut packets = Vec::new();
    let mut classes = Vec::new();
    let mut offset = 0u64;
    let mut alpha = Ratio::from_integer(0.into());
    for level in levels {
        let sessions: Vec<usize> = (0..inst.session_count()).filter(|&i| (coding_times[i] > 0).then(|| coding_times[i].ilog2()) == level).collect();
        let sub = inst.subinstance(&sessions)?;
        let sched = router.schedule(&sub).map_err(ProtocolError::Routing)?;
        replay_routing(&sub, &sched)?;
        let max_coding_time = sessions.iter().map(|&i| coding_times[i]).max().unwrap_or(0);
        if max_coding_time > 0 {
            let ratio = Ratio::new(sched.makespan.into(), max_coding_time.into());
            if ratio > alpha {
                alpha = ratio;
            }
        }
        for mut p in sched.packets {
            p.session = sessions[p.session];
            for d in &mut p.departures {
                *d += offset;
            }
            packets.push(p);
        }
        classes.push(DyadicClass { level, sessions, offset, makespan: sched.makespan, max_coding_time });
        offset += classes.last().unwrap().makespan;
    }
    let schedule = Schedule::new(packets);
    let times = replay_routing(inst, &schedule)?;
    let four = Ratio::from_integer(4.into());
    for (i, (&routed, &coding)) in times.0.iter().zip(coding_times).enumerate() {
        if Ratio::from_integer(routed.into()) > four.clone() * alpha.clone() * Ratio::from_integer(coding.into()) {
            return Err(ProtocolError::BucketBound { session: i, routed, coding, alpha: alpha.to_string() });
        }
    }
    Ok(Bucketed { schedule, times, alpha, classes })
}
