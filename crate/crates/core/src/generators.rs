//! Named graphs, the extremal family `G_d`, and seeded random regular graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Partition, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("G_d requires d >= 3, got {0}")]
    DegreeTooSmall(usize),
    #[error("n*d must be even (n = {n}, d = {d})")]
    OddDegreeSum { n: usize, d: usize },
    #[error("degree {d} must satisfy 1 <= d < n = {n}")]
    DegreeOutOfRange { n: usize, d: usize },
    #[error("no simple connected {d}-regular graph on {n} vertices after {attempts} attempts")]
    RetriesExhausted { n: usize, d: usize, attempts: usize },
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).unwrap().with_label(format!("K{n}"))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        .unwrap()
        .with_label(format!("C{n}"))
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        .unwrap()
        .with_label(format!("P{n}"))
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
        .unwrap()
        .with_label(format!("K1,{leaves}"))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, edges)
        .unwrap()
        .with_label(format!("K{a},{b}"))
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i – i+5.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes))
        .unwrap()
        .with_label("Petersen")
}

/// Cocktail-party graph: `K_{2k}` minus a perfect matching `{2i, 2i+1}`.
pub fn cocktail_party(k: usize) -> Graph {
    let n = 2 * k;
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1));
    Graph::from_edges(n, edges)
        .unwrap()
        .with_label(format!("CP({k})"))
}

/// The three construction parts of `G_d`, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GdParts {
    /// Independent set of size `d`: vertices `0..d`.
    pub hub: VertexSet,
    /// Independent set of size `d − 1` joined to every hub vertex: `d..2d−1`.
    pub satellites: VertexSet,
    /// Clique of size `d`, matched to the hub: `2d−1..3d−1`.
    pub clique: VertexSet,
}

impl GdParts {
    pub fn new(d: usize) -> Self {
        Self {
            hub: VertexSet::new(0..d),
            satellites: VertexSet::new(d..2 * d - 1),
            clique: VertexSet::new(2 * d - 1..3 * d - 1),
        }
    }

    pub fn partition(&self) -> Partition {
        Partition::new(
            self.hub.len() + self.satellites.len() + self.clique.len(),
            vec![self.hub.clone(), self.satellites.clone(), self.clique.clone()],
        )
        .expect("G_d parts partition the vertex set")
    }
}

/// The extremal graph `G_d` of order `3d − 1`: an independent `d`-set fully
/// joined to an independent `(d−1)`-set and perfectly matched into a `d`-clique.
pub fn gen_gd(d: usize) -> Result<Graph, GenerateError> {
    if d < 3 {
        return Err(GenerateError::DegreeTooSmall(d));
    }
    let mut edges = Vec::new();
    for i in 0..d {
        edges.extend((d..2 * d - 1).map(|j| (i, j)));
        edges.push((i, 2 * d - 1 + i));
    }
    for a in 2 * d - 1..3 * d - 1 {
        edges.extend((a + 1..3 * d - 1).map(|b| (a, b)));
    }
    Ok(Graph::from_edges(3 * d - 1, edges)
        .unwrap()
        .with_label(format!("G_{d}")))
}

pub const DEFAULT_PAIRING_ATTEMPTS: usize = 10_000_000;

/// Uniform simple connected `d`-regular graph by the pairing model with
/// rejection, deterministic for a fixed seed. Dense degrees are sampled as
/// complements of `(n − 1 − d)`-regular graphs, which keeps the acceptance
/// rate of the pairing model usable.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    gen_random_regular_with_limit(n, d, seed, DEFAULT_PAIRING_ATTEMPTS)
}

pub fn gen_random_regular_with_limit(
    n: usize,
    d: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<Graph, GenerateError> {
    if (n * d) % 2 == 1 {
        return Err(GenerateError::OddDegreeSum { n, d });
    }
    if d == 0 || d >= n {
        return Err(GenerateError::DegreeOutOfRange { n, d });
    }
    let label = format!("rr({n},{d},{seed})");
    if d == n - 1 {
        return Ok(complete(n).with_label(label));
    }
    let dense = 2 * d > n - 1;
    let sample_d = if dense { n - 1 - d } else { d };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, sample_d))
        .collect();
    let mut seen = vec![false; n * n];
    let mut edges = Vec::with_capacity(points.len() / 2);
    for _ in 0..max_attempts {
        points.shuffle(&mut rng);
        for &(u, v) in &edges {
            seen[u * n + v] = false;
        }
        edges.clear();
        let mut simple = true;
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || seen[u * n + v] {
                simple = false;
                break;
            }
            seen[u * n + v] = true;
            edges.push((u, v));
        }
        if !simple {
            continue;
        }
        let mut g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        if dense {
            g = g.complement();
        }
        if g.is_connected() {
            return Ok(g.with_label(label));
        }
    }
    Err(GenerateError::RetriesExhausted {
        n,
        d,
        attempts: max_attempts,
    })
}

/// Erdős–Rényi `G(n, p)`, deterministic for a fixed seed.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
        .expect("generated edges are simple")
        .with_label(format!("gnp({n},{p},{seed})"))
}
