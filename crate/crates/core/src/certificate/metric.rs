//! Finite metrics and CKR padded decompositions.

use rand::seq::SliceRandom;
use rand::Rng;

use super::CertError;
use crate::seed;

/// Upper limit on the number of points a decomposition accepts.
pub const MAX_METRIC_POINTS: usize = 2000;

/// Symmetric distance matrix satisfying the triangle inequality. Distances
/// may be `f64::INFINITY` for points in different components.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    n: usize,
    dist: Vec<f64>,
}

impl Metric {
    /// Checks symmetry, zero diagonal, nonnegativity and every triangle.
    pub fn new(n: usize, dist: Vec<f64>) -> Result<Metric, CertError> {
        if dist.len() != n * n {
            return Err(CertError::NotMetric(format!("{} entries for {n} points", dist.len())));
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(CertError::NotMetric(format!("d({i},{i}) != 0")));
            }
            for j in 0..n {
                let d = dist[i * n + j];
                if d.is_nan() || d < 0.0 || d != dist[j * n + i] {
                    return Err(CertError::NotMetric(format!("d({i},{j}) is negative or asymmetric")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i * n + k] > dist[i * n + j] + dist[j * n + k] {
                        return Err(CertError::NotMetric(format!("triangle ({i},{j},{k}) violated")));
                    }
                }
            }
        }
        Ok(Metric { n, dist })
    }

    /// Shortest-path distances, which satisfy the triangle inequality by
    /// construction.
    pub(crate) fn from_shortest_paths(n: usize, dist: Vec<f64>) -> Metric {
        debug_assert_eq!(dist.len(), n * n);
        Metric { n, dist }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }
}

/// A partition of the points with the randomness that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    pub part_of: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub radius: f64,
    /// `ceil(8 ln n)`, the padding constant at `delta = 1/8`.
    pub beta: u64,
}

impl Partition {
    /// Largest distance between two points of one part.
    pub fn max_diameter(&self, metric: &Metric) -> f64 {
        self.parts
            .iter()
            .map(|p| {
                p.iter().flat_map(|&a| p.iter().map(move |&b| (a, b))).map(|(a, b)| metric.d(a, b)).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Whether the closed ball of radius `r` around `x` lies in one part.
    pub fn is_padded(&self, metric: &Metric, x: usize, r: f64) -> bool {
        (0..metric.len()).all(|y| metric.d(x, y) > r || self.part_of[y] == self.part_of[x])
    }
}

pub fn padding_beta(n: usize) -> u64 {
    (8.0 * (n.max(1) as f64).ln()).ceil() as u64
}

/// CKR decomposition with `diameter >= 0`: one radius uniform in
/// `[diameter/4, diameter/2]`, one uniformly random order of the points as
/// centres, every point joins the first centre within the radius.
pub(crate) fn ckr<R: Rng>(metric: &Metric, diameter: f64, rng: &mut R) -> Partition {
    let n = metric.len();
    let radius = if diameter > 0.0 { rng.gen_range(diameter / 4.0..=diameter / 2.0) } else { 0.0 };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &c in &order {
        let mut members = Vec::new();
        for x in 0..n {
            if part_of[x] == usize::MAX && metric.d(c, x) <= radius {
                part_of[x] = parts.len();
                members.push(x);
            }
        }
        if !members.is_empty() {
            parts.push(members);
        }
    }
    Partition { part_of, parts, radius, beta: padding_beta(n) }
}

/// Every part has diameter at most `diameter`, and each ball of radius
/// `gamma * diameter` is split with probability at most about
/// `8 ln(n) gamma`.
pub fn padded_decomposition(metric: &Metric, diameter: f64, seed: u64) -> Result<Partition, CertError> {
    if !(diameter > 0.0) {
        return Err(CertError::NonPositiveDiameter);
    }
    if metric.len() > MAX_METRIC_POINTS {
        return Err(CertError::TooManyPoints(metric.len()));
    }
    let mut rng = seed::rng(seed, "padded", 0);
    Ok(ckr(metric, diameter, &mut rng))
}
