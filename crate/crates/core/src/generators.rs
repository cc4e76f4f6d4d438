//! Named graphs, the extremal constructions, and seeded random cubic graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{GenError, GraphError};
use crate::graph::Graph;

pub const RANDOM_RETRY_CAP: usize = 10_000;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges, true).expect("fixed construction is cubic")
}

pub fn k4() -> Graph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// K_{3,3} with parts {0,1,2} and {3,4,5}.
pub fn k33() -> Graph {
    let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    build(6, &edges)
}

/// Triangular prism: triangles {0,1,2}, {3,4,5} and rungs i–(i+3).
pub fn prism() -> Graph {
    build(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
}

fn petersen_edges() -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(15);
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    e
}

/// Outer 5-cycle 0..4, spokes i–(i+5), inner pentagram on 5..9.
pub fn petersen() -> Graph {
    build(10, &petersen_edges())
}

/// One edge of a cubic graph replaced by a K4⁻ gadget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gadget {
    /// The original edge `(u, v)`, `u < v`.
    pub edge: (usize, usize),
    /// `[p, q, r, s]`: `p`, `q` are the degree-2 vertices of K4⁻ (the
    /// endpoints of its missing edge), attached to `u` and `v`.
    pub vertices: [usize; 4],
    pub attachments: [(usize, usize); 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetMap {
    pub base_n: usize,
    pub gadgets: Vec<Gadget>,
}

/// Replaces every edge of a 2-connected cubic graph by a K4⁻. Base vertices
/// keep their ids; gadget vertices follow in lexicographic edge order.
pub fn k4minus_blowup(g: &Graph) -> Result<(Graph, GadgetMap), GraphError> {
    g.check_cubic()?;
    if !g.is_biconnected() {
        return Err(GraphError::NotBiconnected);
    }
    let n = g.n();
    let mut edges = Vec::new();
    let mut gadgets = Vec::new();
    for (i, (u, v)) in g.edges().into_iter().enumerate() {
        let base = n + 4 * i;
        let [p, q, r, s] = [base, base + 1, base + 2, base + 3];
        edges.extend([(p, r), (p, s), (q, r), (q, s), (r, s), (u, p), (v, q)]);
        gadgets.push(Gadget { edge: (u, v), vertices: [p, q, r, s], attachments: [(u, p), (v, q)] });
    }
    let h = Graph::new(n + 4 * gadgets.len(), &edges, true)?;
    Ok((h, GadgetMap { base_n: n, gadgets }))
}

/// Ring of `k` copies of the Petersen graph minus the spoke 0–5. Copy `i`
/// occupies ids `10i..10i+9`; its degree-2 vertices `10i` and `10i+5` play
/// `u_i` and `v_i`, and `v_i` is joined to `u_{i+1}`.
pub fn petersen_ring(k: usize) -> Result<Graph, GenError> {
    if k < 2 {
        return Err(GenError::KTooSmall(k));
    }
    let gadget: Vec<(usize, usize)> = petersen_edges().into_iter().filter(|&e| e != (0, 5)).collect();
    let mut edges = Vec::with_capacity(15 * k);
    for i in 0..k {
        let off = 10 * i;
        edges.extend(gadget.iter().map(|&(a, b)| (a + off, b + off)));
        edges.push((off + 5, 10 * ((i + 1) % k)));
    }
    Ok(Graph::new(10 * k, &edges, true)?)
}

/// Random 2-connected cubic graph from the pairing model, rejecting loops,
/// repeated edges and graphs with a cut vertex. Deterministic in
/// `(n, seed)`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph, GenError> {
    random_pairing(n, seed, true)
}

/// Like [`random_cubic`] without the 2-connectivity filter.
pub fn random_simple_cubic(n: usize, seed: u64) -> Result<Graph, GenError> {
    random_pairing(n, seed, false)
}

fn random_pairing(n: usize, seed: u64, biconnected: bool) -> Result<Graph, GenError> {
    if n % 2 == 1 {
        return Err(GenError::OddOrder(n));
    }
    if n < 4 {
        return Err(GenError::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..RANDOM_RETRY_CAP {
        points.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(3 * n / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = Graph::new(n, &edges, true)?;
        if !biconnected || g.is_biconnected() {
            return Ok(g);
        }
    }
    Err(GenError::RetryExhausted(RANDOM_RETRY_CAP))
}
