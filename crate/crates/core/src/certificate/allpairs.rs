//! From pairwise to all-pairs separation.

use rand::Rng;

use super::metric::{ckr, padding_beta, Metric};
use super::CertError;
use crate::seed;

pub const MAX_ALLPAIRS_ATTEMPTS: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct AllPairs {
    /// Indices into the input pairs.
    pub kept: Vec<usize>,
    /// `ceil(8 ln k)` for `k` distinct terminals.
    pub beta: u64,
    /// Guaranteed lower bound on every kept cross distance (strict).
    pub bound: f64,
    pub attempts: usize,
}

/// Keeps a weighted ninth of the pairs so that every kept source is far from
/// every kept sink.
///
/// `pairs[i] = (source, sink, weight)` over points of `metric`, each with
/// `d(source, sink) >= separation`. The metric is restricted to the distinct
/// terminals; each attempt draws a CKR decomposition with diameter
/// `separation - 1`, flips a fair coin per part, and keeps pair `i` when its
/// source's ball of radius `(separation - 1) / (2 beta)` stays inside one
/// part, the source's part came up heads and the sink's part tails. Every
/// kept cross distance then exceeds `(separation - 1) / (2 beta)`, which is
/// re-checked before returning.
pub fn pairwise_to_allpairs(
    metric: &Metric,
    pairs: &[(usize, usize, u64)],
    separation: u64,
    seed: u64,
) -> Result<AllPairs, CertError> {
    if separation == 0 {
        return Err(CertError::ZeroSeparation);
    }
    for (i, &(s, t, _)) in pairs.iter().enumerate() {
        let d = metric.d(s, t);
        if d < separation as f64 {
            return Err(CertError::PairNotSeparated { pair: i, distance: d, required: separation });
        }
    }
    let mut points: Vec<usize> = pairs.iter().flat_map(|&(s, t, _)| [s, t]).collect();
    points.sort_unstable();
    points.dedup();
    let k = points.len();
    let local = |p: usize| points.binary_search(&p).unwrap();
    let mut sub = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            sub[a * k + b] = metric.d(points[a], points[b]);
        }
    }
    let sub = Metric::from_shortest_paths(k, sub);

    let beta = padding_beta(k).max(1);
    let diameter = (separation - 1) as f64;
    let radius = diameter / (2.0 * beta as f64);
    let total: u64 = pairs.iter().map(|p| p.2).sum();

    for attempt in 0..MAX_ALLPAIRS_ATTEMPTS {
        let mut rng = seed::rng(seed, "allpairs", attempt as u64);
        let part = ckr(&sub, diameter, &mut rng);
        let heads: Vec<bool> = (0..part.parts.len()).map(|_| rng.gen_bool(0.5)).collect();
        let kept: Vec<usize> = (0..pairs.len())
            .filter(|&i| {
                let (s, t) = (local(pairs[i].0), local(pairs[i].1));
                heads[part.part_of[s]] && !heads[part.part_of[t]] && part.is_padded(&sub, s, radius)
            })
            .collect();
        let weight: u64 = kept.iter().map(|&i| pairs[i].2).sum();
        if 9 * weight < total {
            continue;
        }
        for &i in &kept {
            for &j in &kept {
                let d = metric.d(pairs[i].0, pairs[j].1);
                if !(d > radius) {
                    return Err(CertError::CrossDistance { distance: d, bound: radius });
                }
            }
        }
        return Ok(AllPairs { kept, beta, bound: radius, attempts: attempt + 1 });
    }
    Err(CertError::AllPairsExhausted(MAX_ALLPAIRS_ATTEMPTS))
}
