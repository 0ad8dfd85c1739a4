//! Revised simplex for `max c.x  s.t.  A x <= b, x >= 0` with `b >= 0`.
//!
//! The same code runs over `f64` (with a tolerance) and over exact
//! rationals. A basis is stored as the set of basic structural columns plus
//! the rows whose slack is basic; each iteration re-solves the square system
//! on the remaining rows, which stays small because most slacks are basic.
//! [`solve_exact`] first runs the float version to find a candidate basis
//! and then continues exactly from it, so the reported optimum and duals are
//! exact regardless of rounding in the float pass.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::ratio::Ratio;

pub trait Scalar:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn positive(&self) -> bool;
    fn negative(&self) -> bool;
    fn nonzero(&self) -> bool {
        self.positive() || self.negative()
    }
    fn magnitude(&self) -> f64;
    fn less(&self, other: &Self) -> bool;
}

const TOL: f64 = 1e-9;

impl Scalar for f64 {
    fn from_i64(v: i64) -> f64 {
        v as f64
    }
    fn positive(&self) -> bool {
        *self > TOL
    }
    fn negative(&self) -> bool {
        *self < -TOL
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn less(&self, other: &f64) -> bool {
        *self < *other - TOL
    }
}

impl Scalar for Ratio {
    fn from_i64(v: i64) -> Ratio {
        Ratio::from_integer(v.into())
    }
    fn positive(&self) -> bool {
        self.is_positive()
    }
    fn negative(&self) -> bool {
        self.is_negative()
    }
    fn magnitude(&self) -> f64 {
        crate::ratio::to_f64(&self.abs())
    }
    fn less(&self, other: &Ratio) -> bool {
        self < other
    }
}

/// Integer LP data; columns are sparse `(row, coefficient)` lists.
#[derive(Clone, Debug)]
pub struct Lp {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
    pub obj: Vec<i64>,
    pub rhs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub x: Vec<T>,
    /// Row duals, nonnegative at optimality.
    pub y: Vec<T>,
    pub objective: T,
}

#[derive(Clone, Debug)]
struct Basis {
    structural: Vec<usize>,
    slack_basic: Vec<bool>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum SimplexError {
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Var {
    Col(usize),
    Slack(usize),
}

enum Rule {
    Dantzig,
    Bland,
}

/// Dense Gaussian elimination; `None` when singular.
fn solve_dense<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for c in 0..n {
        let mut piv = None;
        let mut best = 0.0;
        for (r, row) in a.iter().enumerate().skip(c) {
            if row[c].nonzero() {
                let m = row[c].magnitude();
                if piv.is_none() || m > best {
                    piv = Some(r);
                    best = m;
                }
            }
        }
        let p = piv?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = T::one() / a[c][c].clone();
        for r in 0..n {
            if r != c && a[r][c].nonzero() {
                let f = a[r][c].clone() * inv.clone();
                for k in c..n {
                    if a[c][k].nonzero() {
                        let t = a[c][k].clone() * f.clone();
                        a[r][k] = a[r][k].clone() - t;
                    }
                }
                b[r] = b[r].clone() - b[c].clone() * f;
            }
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

struct State<'a, T> {
    lp: &'a Lp,
    basis: Basis,
    /// rows whose slack is nonbasic, in the order used for the square system
    tight: Vec<usize>,
    /// inverse of `tight`
    pos: Vec<Option<usize>>,
    x_s: Vec<T>,
    slack: Vec<T>,
    y: Vec<T>,
}

impl<'a, T: Scalar> State<'a, T> {
    fn build(lp: &'a Lp, basis: Basis) -> Option<State<'a, T>> {
        let tight: Vec<usize> = (0..lp.rows).filter(|&r| !basis.slack_basic[r]).collect();
        if tight.len() != basis.structural.len() {
            return None;
        }
        let mut pos = vec![None; lp.rows];
        for (i, &r) in tight.iter().enumerate() {
            pos[r] = Some(i);
        }
        let s = tight.len();
        let mut m = vec![vec![T::zero(); s]; s];
        for (c, &j) in basis.structural.iter().enumerate() {
            for &(r, a) in &lp.cols[j] {
                if let Some(i) = pos[r] {
                    m[i][c] = T::from_i64(a);
                }
            }
        }
        let b: Vec<T> = tight.iter().map(|&r| T::from_i64(lp.rhs[r])).collect();
        let x_s = solve_dense(m.clone(), b)?;
        let mt: Vec<Vec<T>> = (0..s).map(|i| (0..s).map(|k| m[k][i].clone()).collect()).collect();
        let c_s: Vec<T> = basis.structural.iter().map(|&j| T::from_i64(lp.obj[j])).collect();
        let y_t = solve_dense(mt, c_s)?;
        let mut y = vec![T::zero(); lp.rows];
        for (i, &r) in tight.iter().enumerate() {
            y[r] = y_t[i].clone();
        }
        let mut slack: Vec<T> = lp.rhs.iter().map(|&v| T::from_i64(v)).collect();
        for (c, &j) in basis.structural.iter().enumerate() {
            for &(r, a) in &lp.cols[j] {
                slack[r] = slack[r].clone() - T::from_i64(a) * x_s[c].clone();
            }
        }
        Some(State { lp, basis, tight, pos, x_s, slack, y })
    }

    fn primal_feasible(&self) -> bool {
        self.x_s.iter().all(|v| !v.negative())
            && (0..self.lp.rows).all(|r| !self.basis.slack_basic[r] || !self.slack[r].negative())
    }

    fn reduced_cost(&self, v: Var) -> T {
        match v {
            Var::Col(j) => {
                let mut rc = T::from_i64(self.lp.obj[j]);
                for &(r, a) in &self.lp.cols[j] {
                    if self.y[r].nonzero() {
                        rc = rc - self.y[r].clone() * T::from_i64(a);
                    }
                }
                rc
            }
            Var::Slack(r) => -self.y[r].clone(),
        }
    }

    fn entering(&self, rule: &Rule) -> Option<Var> {
        let mut in_basis = vec![false; self.lp.cols.len()];
        for &j in &self.basis.structural {
            in_basis[j] = true;
        }
        let candidates = (0..self.lp.cols.len())
            .filter(|&j| !in_basis[j])
            .map(Var::Col)
            .chain(self.tight.iter().map(|&r| Var::Slack(r)));
        let mut best: Option<(Var, T)> = None;
        for v in candidates {
            let rc = self.reduced_cost(v);
            if !rc.positive() {
                continue;
            }
            match rule {
                Rule::Bland => return Some(v),
                Rule::Dantzig => {
                    if best.as_ref().is_none_or(|(_, b)| b.less(&rc)) {
                        best = Some((v, rc));
                    }
                }
            }
        }
        best.map(|(v, _)| v)
    }

    /// Coordinates of the entering column in the current basis.
    fn direction(&self, v: Var) -> (Vec<T>, Vec<T>) {
        let s = self.tight.len();
        let mut rhs = vec![T::zero(); s];
        let mut full = vec![T::zero(); self.lp.rows];
        match v {
            Var::Col(j) => {
                for &(r, a) in &self.lp.cols[j] {
                    full[r] = T::from_i64(a);
                    if let Some(i) = self.pos[r] {
                        rhs[i] = T::from_i64(a);
                    }
                }
            }
            Var::Slack(r) => {
                full[r] = T::one();
                rhs[self.pos[r].unwrap()] = T::one();
            }
        }
        let mut m = vec![vec![T::zero(); s]; s];
        for (c, &j) in self.basis.structural.iter().enumerate() {
            for &(r, a) in &self.lp.cols[j] {
                if let Some(i) = self.pos[r] {
                    m[i][c] = T::from_i64(a);
                }
            }
        }
        let w_s = solve_dense(m, rhs).expect("basis matrix is nonsingular");
        let mut w_q = full;
        for (c, &j) in self.basis.structural.iter().enumerate() {
            if !w_s[c].nonzero() {
                continue;
            }
            for &(r, a) in &self.lp.cols[j] {
                if self.pos[r].is_none() {
                    w_q[r] = w_q[r].clone() - T::from_i64(a) * w_s[c].clone();
                }
            }
        }
        (w_s, w_q)
    }

    fn key(&self, v: Var) -> usize {
        match v {
            Var::Col(j) => j,
            Var::Slack(r) => self.lp.cols.len() + r,
        }
    }

    /// One pivot; `Ok(false)` at optimality.
    fn pivot(mut self, rule: &Rule) -> Result<(State<'a, T>, bool, bool), SimplexError> {
        let Some(enter) = self.entering(rule) else { return Ok((self, false, false)) };
        let (w_s, w_q) = self.direction(enter);
        let mut best: Option<(Var, T)> = None;
        let mut consider = |v: Var, val: &T, w: &T, this: &Self| {
            if !w.positive() {
                return;
            }
            let ratio = val.clone() / w.clone();
            let replace = match &best {
                None => true,
                Some((bv, br)) => ratio.less(br) || (!br.less(&ratio) && this.key(v) < this.key(*bv)),
            };
            if replace {
                best = Some((v, ratio));
            }
        };
        for (c, &j) in self.basis.structural.iter().enumerate() {
            consider(Var::Col(j), &self.x_s[c], &w_s[c], &self);
        }
        for r in 0..self.lp.rows {
            if self.basis.slack_basic[r] {
                let val = if self.slack[r].negative() { T::zero() } else { self.slack[r].clone() };
                consider(Var::Slack(r), &val, &w_q[r], &self);
            }
        }
        let (leave, step) = best.ok_or(SimplexError::Unbounded)?;
        let degenerate = !step.positive();
        let mut basis = self.basis.clone();
        match leave {
            Var::Col(j) => basis.structural.retain(|&x| x != j),
            Var::Slack(r) => basis.slack_basic[r] = false,
        }
        match enter {
            Var::Col(j) => basis.structural.push(j),
            Var::Slack(r) => basis.slack_basic[r] = true,
        }
        let lp = self.lp;
        self = State::build(lp, basis).expect("pivot keeps the basis nonsingular");
        Ok((self, true, degenerate))
    }

    fn solution(&self) -> LpSolution<T> {
        let mut x = vec![T::zero(); self.lp.cols.len()];
        for (c, &j) in self.basis.structural.iter().enumerate() {
            x[j] = self.x_s[c].clone();
        }
        let mut objective = T::zero();
        for (j, v) in x.iter().enumerate() {
            if self.lp.obj[j] != 0 {
                objective = objective + T::from_i64(self.lp.obj[j]) * v.clone();
            }
        }
        LpSolution { x, y: self.y.clone(), objective }
    }
}

fn slack_basis(lp: &Lp) -> Basis {
    Basis { structural: Vec::new(), slack_basic: vec![true; lp.rows] }
}

fn run<'a, T: Scalar>(
    mut st: State<'a, T>,
    bland_only: bool,
    max_iter: usize,
) -> Result<State<'a, T>, SimplexError> {
    let mut degenerate_run = 0usize;
    for _ in 0..max_iter {
        let rule = if bland_only || degenerate_run > 2 * st.lp.rows + 10 { Rule::Bland } else { Rule::Dantzig };
        let (next, moved, degenerate) = st.pivot(&rule)?;
        st = next;
        if !moved {
            return Ok(st);
        }
        degenerate_run = if degenerate { degenerate_run + 1 } else { 0 };
    }
    Err(SimplexError::IterationLimit)
}

pub fn solve_float(lp: &Lp) -> Result<LpSolution<f64>, SimplexError> {
    let st = State::<f64>::build(lp, slack_basis(lp)).unwrap();
    let limit = 50 * (lp.rows + lp.cols.len()) + 1000;
    Ok(run(st, false, limit)?.solution())
}

/// Exact optimum and row duals.
pub fn solve_exact(lp: &Lp) -> Result<LpSolution<Ratio>, SimplexError> {
    assert!(lp.rhs.iter().all(|&b| b >= 0), "right-hand side must be nonnegative");
    let limit = 50 * (lp.rows + lp.cols.len()) + 1000;
    let warm = State::<f64>::build(lp, slack_basis(lp))
        .ok_or(SimplexError::IterationLimit)
        .and_then(|st| run(st, false, limit))
        .ok()
        .map(|st| st.basis);
    let start = warm
        .and_then(|b| State::<Ratio>::build(lp, b))
        .filter(|st| st.primal_feasible())
        .unwrap_or_else(|| State::<Ratio>::build(lp, slack_basis(lp)).unwrap());
    // Bland's rule guarantees termination in exact arithmetic
    Ok(run(start, true, usize::MAX)?.solution())
}
