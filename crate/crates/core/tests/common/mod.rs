//! Shared test oracles, independent of the library's own algorithms.
#![allow(dead_code)]

use evocut_core::graph::{Graph, NodeId};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// All-pairs shortest path oracle (Floyd-Warshall); `None` = unreachable.
pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut dist = vec![vec![None; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for (u, v) in g.edges() {
        dist[u.index()][v.index()] = Some(1);
        dist[v.index()][u.index()] = Some(1);
    }
    for mid in 0..n {
        for i in 0..n {
            let Some(a) = dist[i][mid] else { continue };
            let via_mid: Vec<Option<usize>> = dist[mid].iter().map(|b| b.map(|b| a + b)).collect();
            for (j, through) in via_mid.into_iter().enumerate() {
                let Some(through) = through else { continue };
                if dist[i][j].is_none_or(|d| through < d) {
                    dist[i][j] = Some(through);
                }
            }
        }
    }
    dist
}

/// Erdos-Renyi-style random simple graph on `n` nodes.
pub fn random_graph(rng: &mut ChaCha12Rng, n: usize, edge_prob: f64) -> Graph {
    let mut g = Graph::with_nodes(n);
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if rng.random::<f64>() < edge_prob {
                g.add_edge(NodeId(i), NodeId(j)).unwrap();
            }
        }
    }
    g
}

/// Exact Zipf sampler over `1..=max_value` with `p(k) ∝ k^(-gamma)`,
/// drawn by inverse CDF over a precomputed cumulative table.
pub struct ZipfSampler {
    cumulative: Vec<f64>,
}

impl ZipfSampler {
    pub fn new(gamma: f64, max_value: usize) -> Self {
        let mut cumulative = Vec::with_capacity(max_value);
        let mut acc = 0.0;
        for k in 1..=max_value {
            acc += (k as f64).powf(-gamma);
            cumulative.push(acc);
        }
        let total = acc;
        for c in &mut cumulative {
            *c /= total;
        }
        ZipfSampler { cumulative }
    }

    pub fn sample(&self, rng: &mut ChaCha12Rng) -> usize {
        let u: f64 = rng.random();
        self.cumulative.partition_point(|&c| c < u) + 1
    }
}

/// Inverse-CDF sampler for a discrete stretched-exponential tail:
/// `P(K >= k) = exp(-(k/kappa)^beta)` at every integer `k >= 0`.
pub fn sample_stretched(rng: &mut ChaCha12Rng, beta: f64, kappa: f64) -> usize {
    let u: f64 = rng.random();
    let x = kappa * (-(1.0 - u).ln()).powf(1.0 / beta);
    x.floor() as usize
}

/// Geometric-tail sampler: `P(K >= k) = exp(-k/kappa)`, i.e. the
/// stretched form at `beta = 1`.
pub fn sample_geometric_tail(rng: &mut ChaCha12Rng, kappa: f64) -> usize {
    sample_stretched(rng, 1.0, kappa)
}
