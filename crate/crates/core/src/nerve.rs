//! Separated nets and the 2-skeleton of the nerve of a ball cover.

use alloc::vec;
use alloc::vec::Vec;

use crate::hyperbolic::MetricPoint;

/// Greedy maximal `sep`-separated subset, scanning `points` in order: a point
/// is kept iff it is at distance `≥ sep` from everything kept so far.
/// Returns indices into `points`.
pub fn greedy_net<P: MetricPoint>(points: &[P], sep: f64) -> Vec<usize> {
    let threshold = P::proximity_at(sep);
    let mut kept: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if kept.iter().all(|&j| points[j].proximity(p) >= threshold) {
            kept.push(i);
        }
    }
    kept
}

/// Every pair of net points is at distance `≥ sep`.
pub fn is_separated<P: MetricPoint>(points: &[P], net: &[usize], sep: f64) -> bool {
    let threshold = P::proximity_at(sep);
    net.iter().enumerate().all(|(a, &i)| {
        net[a + 1..]
            .iter()
            .all(|&j| points[i].proximity(&points[j]) >= threshold)
    })
}

/// Every input point is at distance `< sep` from some net point.
pub fn is_maximal<P: MetricPoint>(points: &[P], net: &[usize], sep: f64) -> bool {
    let threshold = P::proximity_at(sep);
    points
        .iter()
        .all(|p| net.iter().any(|&j| points[j].proximity(p) < threshold))
}

/// Vertices, edges and triangles of the nerve of the balls of radius
/// `radius/2` around a net: an edge joins centres closer than `radius`
/// (open balls meet), a triangle is a 3-clique of edges.
#[derive(Debug, Clone, PartialEq)]
pub struct NerveComplex<P> {
    pub vertices: Vec<P>,
    /// `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(u32, u32)>,
    /// `(u, v, w)` with `u < v < w`, sorted.
    pub triangles: Vec<(u32, u32, u32)>,
    pub radius: f64,
}

impl<P> NerveComplex<P> {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// `s·Δ²` with `Δ` the measured max degree: the triangle cap of the
    /// counting argument.
    pub fn triangle_cap(&self) -> u64 {
        let d = self.max_degree() as u64;
        self.vertices.len() as u64 * d * d
    }
}

/// Builds the nerve 2-skeleton. The net is assumed separated; not re-checked.
pub fn build_nerve<P: MetricPoint + Clone>(net: &[P], radius: f64) -> NerveComplex<P> {
    let threshold = P::proximity_at(radius);
    let n = net.len();
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if net[u].proximity(&net[v]) < threshold {
                edges.push((u as u32, v as u32));
                adjacency[u].push(v as u32);
                adjacency[v].push(u as u32);
            }
        }
    }
    // adjacency lists are sorted by construction: u's list receives smaller
    // neighbors first (from earlier rows), then larger ones in order.
    let mut triangles = Vec::new();
    for &(u, v) in &edges {
        let (nu, nv) = (&adjacency[u as usize], &adjacency[v as usize]);
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    if nu[i] > v {
                        triangles.push((u, v, nu[i]));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    NerveComplex {
        vertices: net.to_vec(),
        edges,
        triangles,
        radius,
    }
}
