//! Choosing a session subset with uniformly large thresholds.

use num_traits::One;

use super::CertError;
use crate::ratio::{self, Ratio};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bucket {
    /// Chosen sessions, in their original order.
    pub indices: Vec<usize>,
    /// Rational upper approximation of `1 + ln(sum d / min d)`.
    pub alpha: Ratio,
}

fn sorted_order(h: &[Ratio]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.len()).collect();
    order.sort_by(|&a, &b| h[b].cmp(&h[a]).then(a.cmp(&b)));
    order
}

/// Whether the `len` sessions with largest `h` (ties by index) all satisfy
/// `h_i >= 1 / (alpha * sum of their d)`.
pub fn prefix_condition_holds(h: &[Ratio], d: &[u64], len: usize, alpha: &Ratio) -> bool {
    let order = sorted_order(h);
    if len == 0 || len > order.len() {
        return false;
    }
    let total: u64 = order[..len].iter().map(|&i| d[i]).sum();
    let smallest = &h[order[len - 1]];
    smallest * alpha * Ratio::from_integer(total.into()) >= Ratio::one()
}

/// Sorts sessions by `h` descending and returns the first prefix whose
/// smallest threshold is at least `1 / (alpha * demand of the prefix)`, with
/// `alpha = 1 + ln(sum d / min d)`. Requires `sum_i d_i h_i >= 1`.
pub fn bucket(h: &[Ratio], d: &[u64]) -> Result<Bucket, CertError> {
    if h.len() != d.len() || h.is_empty() {
        return Err(CertError::Mismatch);
    }
    let weighted = h.iter().zip(d).fold(Ratio::from_integer(0.into()), |acc, (x, &w)| acc + x * Ratio::from_integer(w.into()));
    if weighted < Ratio::one() {
        return Err(CertError::DualTooSmall(ratio::format(&weighted)));
    }
    let sum: u64 = d.iter().sum();
    let min = *d.iter().min().unwrap();
    let exact = 1.0 + (sum as f64 / min as f64).ln();
    // a few ulps upward so the rational never undercuts the real constant
    let alpha = ratio::from_f64(exact * (1.0 + 8.0 * f64::EPSILON));
    let order = sorted_order(h);
    let mut total = 0u64;
    for (j, &i) in order.iter().enumerate() {
        total += d[i];
        if &h[i] * &alpha * Ratio::from_integer(total.into()) >= Ratio::one() {
            let mut indices = order[..=j].to_vec();
            indices.sort_unstable();
            return Ok(Bucket { indices, alpha });
        }
    }
    Err(CertError::NoBucket)
}
