//! Schreier coset graphs and their diameters.
//!
//! A graph here is `k` labeled permutations of `{0, …, n-1}`: the label-`ℓ`
//! edge leaves `v` towards `σ_ℓ(v)`. Distances ignore orientation, so every
//! vertex has exactly `2k` neighbor slots (`σ_ℓ(v)` and `σ_ℓ⁻¹(v)` per label)
//! and a fixed point contributes a self-loop counted twice. With two labels
//! this is the coset graph of the subgroup a pair encodes; with `k` random
//! labels it is a random cover of a bouquet of `k` circles.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::pair::PermutationPair;
use crate::perm::Permutation;
use crate::rng::stream_rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGraph {
    labels: Vec<Permutation>,
    // neighbor slots, 2k per vertex
    adjacency: Vec<u32>,
}

impl SchreierGraph {
    pub fn from_labels(labels: Vec<Permutation>) -> Result<Self> {
        let Some(first) = labels.first() else {
            return Err(domain("a graph needs at least one label"));
        };
        let n = first.degree();
        if n == 0 {
            return Err(domain("a graph needs at least one vertex"));
        }
        if let Some(bad) = labels.iter().find(|p| p.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: n,
                right: bad.degree(),
            });
        }
        let stride = 2 * labels.len();
        let mut adjacency = vec![0u32; n * stride];
        for (l, sigma) in labels.iter().enumerate() {
            for (v, &w) in sigma.images().iter().enumerate() {
                adjacency[v * stride + 2 * l] = w;
                adjacency[w as usize * stride + 2 * l + 1] = v as u32;
            }
        }
        Ok(SchreierGraph { labels, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels[0].degree()
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    /// Successor map of one label.
    pub fn successors(&self, label: usize) -> &[u32] {
        self.labels[label].images()
    }

    pub fn labels(&self) -> &[Permutation] {
        &self.labels
    }

    /// The two labels as a pair, when there are exactly two.
    pub fn to_pair(&self) -> Option<PermutationPair> {
        match self.labels.as_slice() {
            [a, b] => PermutationPair::new(a.clone(), b.clone()).ok(),
            _ => None,
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        let stride = 2 * self.labels.len();
        &self.adjacency[v * stride..(v + 1) * stride]
    }

    /// Edge endpoints incident to each vertex, counted from the labeled edge
    /// list `v → σ_ℓ(v)`; a self-loop counts twice.
    pub fn endpoint_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count()];
        for sigma in &self.labels {
            for (v, &w) in sigma.images().iter().enumerate() {
                deg[v] += 1;
                deg[w as usize] += 1;
            }
        }
        deg
    }

    /// Breadth-first distances from `source`; `u32::MAX` marks unreachable.
    pub fn bfs_distances(&self, source: usize) -> Vec<u32> {
        self.bfs_with_parents(source).0
    }

    fn bfs_with_parents(&self, source: usize) -> (Vec<u32>, Vec<u32>) {
        let n = self.vertex_count();
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut queue = VecDeque::with_capacity(n);
        dist[source] = 0;
        queue.push_back(source as u32);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize];
            for &w in self.neighbors(v as usize) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dv + 1;
                    parent[w as usize] = v;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != u32::MAX)
    }

    pub fn eccentricity(&self, v: usize) -> Result<u32> {
        let dist = self.bfs_distances(v);
        if dist.contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(dist.into_iter().max().unwrap_or(0))
    }
}

/// The coset graph of a transitive pair: label `a` follows `σ₁`, label `b`
/// follows `σ₂`.
pub fn build_schreier(pair: &PermutationPair) -> Result<SchreierGraph> {
    if !pair.is_transitive() {
        return Err(Error::NotTransitive);
    }
    SchreierGraph::from_labels(vec![pair.sigma1().clone(), pair.sigma2().clone()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diameter {
    pub value: u32,
    /// `false` when `value` is only a certified lower bound.
    pub exact: bool,
}

/// Graphs up to this many vertices get an all-sources sweep.
pub const ALL_SOURCES_LIMIT: usize = 1 << 13;

/// BFS budget for the bounded-refinement path on larger graphs.
pub const REFINEMENT_BFS_BUDGET: usize = 2048;

/// Undirected diameter. All sources for `n ≤ ALL_SOURCES_LIMIT`, otherwise
/// [`diameter_ifub`] with [`REFINEMENT_BFS_BUDGET`].
pub fn graph_diameter(g: &SchreierGraph) -> Result<Diameter> {
    if g.vertex_count() <= ALL_SOURCES_LIMIT {
        Ok(Diameter {
            value: diameter_all_sources(g)?,
            exact: true,
        })
    } else {
        diameter_ifub(g, REFINEMENT_BFS_BUDGET)
    }
}

/// Exact diameter from every source, 64 sources per pass: bit `j` of a
/// vertex's word says whether source `j` has reached it.
pub fn diameter_all_sources(g: &SchreierGraph) -> Result<u32> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut visited = vec![0u64; n];
    let mut frontier = vec![0u64; n];
    let mut next = vec![0u64; n];
    let mut diameter = 0;
    for start in (0..n).step_by(64) {
        let width = (n - start).min(64);
        visited.fill(0);
        frontier.fill(0);
        for j in 0..width {
            visited[start + j] = 1 << j;
            frontier[start + j] = 1 << j;
        }
        let mut rounds = 0;
        loop {
            let mut any = 0u64;
            for v in 0..n {
                let mut reach = 0u64;
                for &w in g.neighbors(v) {
                    reach |= frontier[w as usize];
                }
                reach &= !visited[v];
                next[v] = reach;
                any |= reach;
            }
            if any == 0 {
                break;
            }
            rounds += 1;
            for v in 0..n {
                visited[v] |= next[v];
            }
            core::mem::swap(&mut frontier, &mut next);
        }
        diameter = diameter.max(rounds);
    }
    Ok(diameter)
}

/// Double sweep to a central vertex, then fringe refinement (iFUB): the
/// vertices on each BFS level from the far end inward are swept until the
/// best eccentricity found exceeds twice the next level. Exact when it
/// finishes within `bfs_budget` sweeps; otherwise a flagged lower bound.
pub fn diameter_ifub(g: &SchreierGraph, bfs_budget: usize) -> Result<Diameter> {
    let (from_zero, _) = g.bfs_with_parents(0);
    if from_zero.contains(&u32::MAX) {
        return Err(Error::Disconnected);
    }
    let far = argmax(&from_zero);
    let (from_far, parent) = g.bfs_with_parents(far);
    let other = argmax(&from_far);
    let mut lower = from_far[other];
    // middle of the far–other path
    let mut centre = other;
    for _ in 0..from_far[other] / 2 {
        centre = parent[centre] as usize;
    }
    let from_centre = g.bfs_distances(centre);
    let ecc_centre = from_centre.iter().copied().max().unwrap_or(0);
    lower = lower.max(ecc_centre);
    let mut used = 3;

    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); ecc_centre as usize + 1];
    for (v, &d) in from_centre.iter().enumerate() {
        levels[d as usize].push(v);
    }
    let mut level = ecc_centre as usize;
    while level > 0 && lower < 2 * (level as u32) {
        let mut level_max = 0;
        for &v in &levels[level] {
            if used >= bfs_budget {
                return Ok(Diameter {
                    value: lower.max(level_max),
                    exact: false,
                });
            }
            used += 1;
            level_max = level_max.max(g.eccentricity(v)?);
        }
        lower = lower.max(level_max);
        if lower > 2 * (level as u32 - 1) {
            break;
        }
        level -= 1;
    }
    Ok(Diameter {
        value: lower,
        exact: true,
    })
}

fn argmax(values: &[u32]) -> usize {
    values
        .iter()
        .enumerate()
        .max_by_key(|&(i, &d)| (d, core::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// `c₁`, `c₂` of the covering diameter estimate `diam ≤ c₁ + c₂·max w(gᵢ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaConstants {
    c1: f64,
    c2: f64,
}

impl LemmaConstants {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1 >= 0.0 && c1.is_finite()) {
            return Err(domain(format!(
                "c1 must be finite and nonnegative, got {c1}"
            )));
        }
        if !(c2 > 0.0 && c2.is_finite()) {
            return Err(domain(format!("c2 must be finite and positive, got {c2}")));
        }
        Ok(LemmaConstants { c1, c2 })
    }

    /// `c₁ = 2·diam M`, `c₂ = 2·max length(aᵢ)`.
    pub fn from_manifold(diameter: f64, max_loop_length: f64) -> Result<Self> {
        Self::new(2.0 * diameter, 2.0 * max_loop_length)
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }
}

pub fn lemma_diameter_bound(consts: &LemmaConstants, max_word_length: f64) -> f64 {
    consts.c1 + consts.c2 * max_word_length
}

/// Random `2k`-regular multigraph from `k` uniform permutations, drawn from
/// stream `0` of `seed`.
pub fn random_regular_graph(n: usize, k: usize, seed: u64) -> Result<SchreierGraph> {
    random_regular_graph_with(n, k, &mut stream_rng(seed, 0))
}

pub fn random_regular_graph_with<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<SchreierGraph> {
    if n == 0 || k == 0 {
        return Err(domain(format!(
            "need n >= 1 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    let labels = (0..k)
        .map(|_| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            images.shuffle(rng);
            Permutation::from_images_unchecked(images)
        })
        .collect();
    SchreierGraph::from_labels(labels)
}

/// Least `D` with `1 + Δ·Σ_{i<D} (Δ−1)^i ≥ n`: no graph of maximum degree
/// `Δ` on `n` vertices has smaller diameter.
pub fn moore_bound(n: usize, max_degree: usize) -> u32 {
    if n <= 1 {
        return 0;
    }
    if max_degree == 0 {
        return u32::MAX;
    }
    let n = n as u128;
    let mut reach: u128 = 1;
    let mut layer: u128 = max_degree as u128;
    let mut d = 0;
    while reach < n {
        if layer == 0 {
            return u32::MAX;
        }
        reach = reach.saturating_add(layer);
        layer = layer.saturating_mul(max_degree as u128 - 1);
        d += 1;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cycle_graph(r: usize) -> SchreierGraph {
        build_schreier(
            &PermutationPair::new(Permutation::cyclic_shift(r), Permutation::identity(r)).unwrap(),
        )
        .unwrap()
    }

    // Independent oracle: one plain BFS per vertex.
    fn naive_diameter(g: &SchreierGraph) -> u32 {
        (0..g.vertex_count())
            .map(|v| g.eccentricity(v).unwrap())
            .max()
            .unwrap()
    }

    #[test]
    fn cycle_and_single_vertex() {
        let g = cycle_graph(8);
        assert_eq!(
            graph_diameter(&g).unwrap(),
            Diameter {
                value: 4,
                exact: true
            }
        );
        assert!(g.endpoint_degrees().iter().all(|&d| d == 4));
        let one = cycle_graph(1);
        assert_eq!(graph_diameter(&one).unwrap().value, 0);
        assert_eq!(one.neighbors(0), &[0, 0, 0, 0]);
    }

    #[test]
    fn cycle_diameters_up_to_64() {
        for r in 1..=64 {
            assert_eq!(
                diameter_all_sources(&cycle_graph(r)).unwrap(),
                (r / 2) as u32
            );
            assert_eq!(
                diameter_ifub(&cycle_graph(r), usize::MAX).unwrap().value,
                (r / 2) as u32
            );
        }
    }

    #[test]
    fn non_transitive_rejected() {
        let pair =
            PermutationPair::new(Permutation::identity(3), Permutation::identity(3)).unwrap();
        assert_eq!(build_schreier(&pair), Err(Error::NotTransitive));
        let g = SchreierGraph::from_labels(vec![Permutation::identity(3)]).unwrap();
        assert_eq!(diameter_all_sources(&g), Err(Error::Disconnected));
        assert_eq!(diameter_ifub(&g, 10), Err(Error::Disconnected));
    }

    #[test]
    fn round_trip_to_pair() {
        let pair = PermutationPair::new(
            Permutation::cyclic_shift(5),
            Permutation::from_images(vec![0, 2, 4, 1, 3]).unwrap(),
        )
        .unwrap();
        assert_eq!(build_schreier(&pair).unwrap().to_pair().unwrap(), pair);
    }

    #[test]
    fn lemma_examples() {
        let c = LemmaConstants::new(2.0, 3.0).unwrap();
        assert_eq!(lemma_diameter_bound(&c, 6.0), 20.0);
        let c = LemmaConstants::new(0.0, 0.5).unwrap();
        assert_eq!(lemma_diameter_bound(&c, 0.0), 0.0);
        let c = LemmaConstants::from_manifold(1.0, 1.0).unwrap();
        let bound = lemma_diameter_bound(&c, crate::family::length_bound(5));
        assert!((bound - (2.0 + 6.0 * (1.0 + libm::log2(5.0)))).abs() < 1e-12);
        assert!((bound - 21.93).abs() < 0.01);
        assert!(LemmaConstants::new(-1.0, 1.0).is_err());
        assert!(LemmaConstants::new(1.0, 0.0).is_err());
    }

    #[test]
    fn random_regular_degrees_and_determinism() {
        let g = random_regular_graph(100, 5, 9).unwrap();
        assert!(g.endpoint_degrees().iter().all(|&d| d == 10));
        assert!((0..100).all(|v| g.neighbors(v).len() == 10));
        assert_eq!(g, random_regular_graph(100, 5, 9).unwrap());
        assert_ne!(g, random_regular_graph(100, 5, 10).unwrap());
        assert!(random_regular_graph(0, 5, 1).is_err());
    }

    #[test]
    fn diameter_algorithms_agree_with_naive() {
        for seed in 0..20 {
            for &(n, k) in &[(50usize, 1usize), (70, 2), (130, 3), (300, 2)] {
                let g = random_regular_graph(n, k, seed).unwrap();
                if !g.is_connected() {
                    continue;
                }
                let naive = naive_diameter(&g);
                assert_eq!(diameter_all_sources(&g).unwrap(), naive);
                let ifub = diameter_ifub(&g, usize::MAX).unwrap();
                assert_eq!(
                    ifub,
                    Diameter {
                        value: naive,
                        exact: true
                    }
                );
                let capped = diameter_ifub(&g, 4).unwrap();
                assert!(capped.value <= naive);
                assert!(capped.exact || capped.value <= naive);
            }
        }
    }

    #[test]
    fn moore_bound_values() {
        assert_eq!(moore_bound(1, 10), 0);
        assert_eq!(moore_bound(11, 10), 1);
        assert_eq!(moore_bound(12, 10), 2);
        // 1 + 10 + 90 = 101
        assert_eq!(moore_bound(101, 10), 2);
        assert_eq!(moore_bound(102, 10), 3);
        // cycles: 1 + 2D >= n
        assert_eq!(moore_bound(8, 2), 4);
        assert_eq!(moore_bound(9, 2), 4);
    }
}
