//! Analytic parameter recurrences of the recursive gap family.
//!
//! `a` and `b` square at every level, so the gap `b / a` is tracked exactly.
//! The sizes are tracked in the log domain: `LU(i, x)` is `ln u_{i, e^x}` and
//! `LLM(i, x)` is `ln ln m_{i, e^x}`.
//!
//! `u_{i+1, r} <= 3^{2^i} u_{i, u_{i, 3r}}`. For `m`, the product built from a
//! bipartite graph of girth `g = 2 b^2` on at most `(9 M K)^{g+3}` nodes per
//! side (with `M <= 2 m_1`, `K <= m_2`) has
//! `m_+ <= 2 (9 M K)^{g+3} (a_2 f_1 + m_2)`, hence
//! `ln m_+ <= (g + 3)(ln 18 + L_1 + L_2) + 2 ln 2 + L_1 + L_2` where `L_1`,
//! `L_2` are the log sizes of the two factors. The ratio of that bound to
//! `5^{2^{i+1}} (L_1 + L_2)` is reported as the constant.

use std::fmt::Write as _;

use num_bigint::BigUint;

use super::GapError;
use crate::ratio::Ratio;

/// Beyond this level the log sizes overflow double precision.
pub const MAX_TRACKED_LEVEL: usize = 9;

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceRecord {
    pub level: usize,
    pub r: u64,
    pub a: BigUint,
    pub b: BigUint,
    pub gap: Ratio,
    /// `ln u_{i,r}` upper bound.
    pub log_u: f64,
    /// `ln m_{i,r}` upper bound (may be infinite in double precision).
    pub log_m: f64,
    /// `ln ln m_{i,r}`, always finite.
    pub log_log_m: f64,
    /// Constant multiplying `5^{2^i} (L_1 + L_2)` at the last product step;
    /// zero at level 0.
    pub constant: f64,
}

fn log_add_exp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(3 r^2 - r + 1)` for `r = e^x`: the base-instance edge count.
fn base_log_size(x: f64) -> f64 {
    let inv = (-x).exp();
    2.0 * x + 3f64.ln() + (-inv / 3.0 + inv * inv / 3.0).ln_1p()
}

fn log_u(i: usize, x: f64) -> f64 {
    if i == 0 {
        return base_log_size(x);
    }
    let inner = log_u(i - 1, x + 3f64.ln());
    (1u64 << (i - 1)) as f64 * 3f64.ln() + log_u(i - 1, inner)
}

/// Returns `(ln ln m, constant of the last step)`.
fn log_log_m(i: usize, x: f64) -> (f64, f64) {
    if i == 0 {
        return (base_log_size(x).ln(), 0.0);
    }
    let x3 = x + 3f64.ln();
    let (l1, _) = log_log_m(i - 1, x3);
    let (l2, _) = log_log_m(i - 1, log_u(i - 1, x3));
    let ln_s = log_add_exp(l1, l2);
    // g = 2 * 5^{2^i}
    let ln_g = 2f64.ln() + (1u64 << i) as f64 * 5f64.ln();
    let ln_g4 = ln_g + (4.0 * (-ln_g).exp()).ln_1p();
    let inv_g4 = (-ln_g4).exp();
    let rest = 18f64.ln() * (1.0 - inv_g4) + 2.0 * 2f64.ln() * inv_g4;
    let ratio = if ln_s > 700.0 { 0.0 } else { rest / ln_s.exp() };
    let llm = ln_g4 + ln_s + ratio.ln_1p();
    let constant = (llm - ln_s - (1u64 << i) as f64 * 5f64.ln()).exp();
    (llm, constant)
}

/// Exact `a = 3^{2^i}`, `b = 5^{2^i}`, their ratio, and the log-size bounds.
pub fn recurrence_tracker(level: usize, r: u64) -> Result<RecurrenceRecord, GapError> {
    if level > MAX_TRACKED_LEVEL {
        return Err(GapError::Level(level));
    }
    if r < 2 {
        return Err(GapError::BaseTooSmall(r as usize));
    }
    let mut a = BigUint::from(3u32);
    let mut b = BigUint::from(5u32);
    for _ in 0..level {
        a = &a * &a;
        b = &b * &b;
    }
    let gap = Ratio::new(b.clone().into(), a.clone().into());
    let x = (r as f64).ln();
    let (llm, constant) = log_log_m(level, x);
    let log_u = log_u(level, x);
    Ok(RecurrenceRecord { level, r, a, b, gap, log_u, log_m: llm.exp(), log_log_m: llm, constant })
}

/// CSV table with header `i,r,a,b,gap,log_u_bound,log_m_bound,log_log_m_bound,constant`.
pub fn recurrence_csv(max_level: usize, r: u64) -> Result<String, GapError> {
    let mut out = String::from("i,r,a,b,gap,log_u_bound,log_m_bound,log_log_m_bound,constant\n");
    for i in 0..=max_level {
        let rec = recurrence_tracker(i, r)?;
        writeln!(
            out,
            "{},{},{},{},{},{:e},{:e},{:.6},{:.6}",
            rec.level, rec.r, rec.a, rec.b, rec.gap, rec.log_u, rec.log_m, rec.log_log_m, rec.constant
        )
        .unwrap();
    }
    Ok(out)
}
