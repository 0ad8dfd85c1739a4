use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ProtocolError;
use crate::ratio::{self, Ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    P(u32),
    Infinity,
}

/// A weighted norm of completion times: exact whenever the `p`-th root is
/// rational, always as a float.
#[derive(Clone, Debug, PartialEq)]
pub struct LpValue {
    pub exact: Option<Ratio>,
    pub approx: f64,
}

/// Exact `p`-th root of a nonnegative rational, if rational.
fn rational_root(x: &Ratio, p: u32) -> Option<Ratio> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(p);
        (num_traits::pow(r.clone(), p as usize) == *n).then_some(r)
    };
    Some(Ratio::new(root(x.numer())?, root(x.denom())?))
}

/// `(sum_i w_i T_i^p)^(1/p)`, or `max_i T_i` over positive weights for
/// `p = infinity`.
pub fn lp_aggregate(times: &[u64], weights: &[Ratio], p: Norm) -> Result<LpValue, ProtocolError> {
    if times.len() != weights.len() {
        return Err(ProtocolError::WeightCount { times: times.len(), weights: weights.len() });
    }
    if let Some(i) = weights.iter().position(|w| w.is_negative()) {
        return Err(ProtocolError::NegativeWeight(i));
    }
    match p {
        Norm::Infinity => {
            let m = times.iter().zip(weights).filter(|(_, w)| !w.is_zero()).map(|(t, _)| *t).max().unwrap_or(0);
            Ok(LpValue { exact: Some(Ratio::from_integer(m.into())), approx: m as f64 })
        }
        Norm::P(0) => Err(ProtocolError::Exponent),
        Norm::P(p) => {
            let mut sum = Ratio::zero();
            for (t, w) in times.iter().zip(weights) {
                sum += w * Ratio::from_integer(BigInt::from(*t).pow(p));
            }
            let exact = if p == 1 { Some(sum.clone()) } else { rational_root(&sum, p) };
            let approx = match &exact {
                Some(x) => ratio::to_f64(x),
                None => ratio::to_f64(&sum).powf(1.0 / p as f64),
            };
            Ok(LpValue { exact, approx })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        let r = |n: i64, d: i64| Ratio::new(n.into(), d.into());
        assert_eq!(rational_root(&r(27, 8), 3), Some(r(3, 2)));
        assert_eq!(rational_root(&r(2, 1), 2), None);
        assert_eq!(rational_root(&Ratio::zero(), 2), Some(Ratio::zero()));
    }
}
