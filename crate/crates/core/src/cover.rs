//! Path covers: vertex-disjoint paths whose union is the whole vertex set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{self, SearchBudget};
use crate::graph::Graph;

/// An ordered list of paths. Serializes as a bare list of vertex arrays.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathCover {
    paths: Vec<Vec<usize>>,
}

impl PathCover {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        PathCover { paths }
    }

    /// Every vertex on its own path.
    pub fn singletons(n: usize) -> Self {
        PathCover { paths: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn into_paths(self) -> Vec<Vec<usize>> {
        self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Order-independent form: each path oriented so its first vertex is the
    /// smaller endpoint, paths sorted.
    pub fn canonical(&self) -> PathCover {
        let mut paths: Vec<Vec<usize>> = self
            .paths
            .iter()
            .map(|p| {
                let mut p = p.clone();
                if p.first() > p.last() {
                    p.reverse();
                }
                p
            })
            .collect();
        paths.sort();
        PathCover { paths }
    }
}

/// First problem found by [`validate_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverViolation {
    EmptyPath { path: usize },
    OutOfRange { path: usize, position: usize, vertex: usize },
    Repeated { vertex: usize, first_path: usize, second_path: usize },
    NotAnEdge { path: usize, position: usize, u: usize, v: usize },
    Uncovered { vertex: usize },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoverViolation::EmptyPath { path } => write!(f, "path {path} is empty"),
            CoverViolation::OutOfRange { path, position, vertex } => {
                write!(f, "path {path} position {position}: vertex {vertex} out of range")
            }
            CoverViolation::Repeated { vertex, first_path, second_path } => {
                write!(f, "vertex {vertex} repeated (paths {first_path} and {second_path})")
            }
            CoverViolation::NotAnEdge { path, position, u, v } => {
                write!(f, "path {path} position {position}: {u}-{v} is not an edge")
            }
            CoverViolation::Uncovered { vertex } => write!(f, "vertex {vertex} uncovered"),
        }
    }
}

impl std::error::Error for CoverViolation {}

/// Checks disjointness, coverage and edge validity; reports the first
/// violation in path order.
pub fn validate_cover(g: &Graph, cover: &PathCover) -> Result<(), CoverViolation> {
    let mut owner = vec![usize::MAX; g.n()];
    for (pi, path) in cover.paths.iter().enumerate() {
        if path.is_empty() {
            return Err(CoverViolation::EmptyPath { path: pi });
        }
        for (pos, &v) in path.iter().enumerate() {
            if v >= g.n() {
                return Err(CoverViolation::OutOfRange { path: pi, position: pos, vertex: v });
            }
            if owner[v] != usize::MAX {
                return Err(CoverViolation::Repeated { vertex: v, first_path: owner[v], second_path: pi });
            }
            owner[v] = pi;
            if pos > 0 && !g.has_edge(path[pos - 1], v) {
                return Err(CoverViolation::NotAnEdge { path: pi, position: pos, u: path[pos - 1], v });
            }
        }
    }
    match owner.iter().position(|&o| o == usize::MAX) {
        Some(v) => Err(CoverViolation::Uncovered { vertex: v }),
        None => Ok(()),
    }
}

/// True iff the subgraph induced by the path's vertices has a spanning
/// cycle. Paths on fewer than 3 vertices are never cyclic.
pub fn is_cyclic_path(g: &Graph, path: &[usize]) -> bool {
    match cyclic_witness(g, path, SearchBudget::unlimited()) {
        Ok(w) => w.is_some(),
        Err(_) => unreachable!("unlimited budget"),
    }
}

/// Spanning cycle of `G[V(path)]` in original vertex ids, if one exists.
pub fn cyclic_witness(
    g: &Graph,
    path: &[usize],
    budget: SearchBudget,
) -> Result<Option<Vec<usize>>, crate::OracleError> {
    let k = path.len();
    if k < 3 {
        return Ok(None);
    }
    let (x, y) = (path[0], path[k - 1]);
    if g.has_edge(x, y) {
        return Ok(Some(path.to_vec()));
    }
    let h = g.induced(path);
    // Interior vertices have degree >= 2 through path edges alone; only the
    // endpoints can fail the degree test.
    if h.degree(0) < 2 || h.degree(k - 1) < 2 {
        return Ok(None);
    }
    Ok(exact::ham_cycle(&h, budget)?.map(|c| c.into_iter().map(|i| path[i]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn k4() -> Graph {
        crate::graph6::decode("C~").unwrap()
    }

    #[test]
    fn validate_examples() {
        let g = k4();
        assert_eq!(validate_cover(&g, &PathCover::new(vec![vec![0, 1, 2, 3]])), Ok(()));
        assert_eq!(
            validate_cover(&g, &PathCover::new(vec![vec![0, 1, 2], vec![2, 3]])),
            Err(CoverViolation::Repeated { vertex: 2, first_path: 0, second_path: 1 })
        );
        assert_eq!(
            validate_cover(&g, &PathCover::new(vec![vec![0, 1, 2]])),
            Err(CoverViolation::Uncovered { vertex: 3 })
        );
    }

    #[test]
    fn validate_rejects_non_edges() {
        let g = generators::k33();
        let err = validate_cover(&g, &PathCover::new(vec![vec![0, 1, 2, 3, 4, 5]])).unwrap_err();
        assert!(matches!(err, CoverViolation::NotAnEdge { path: 0, position: 1, .. }));
    }

    #[test]
    fn cyclic_examples() {
        let g = k4();
        assert!(is_cyclic_path(&g, &[0, 1, 2, 3]));
        assert!(!is_cyclic_path(&g, &[0, 1]));
        assert!(!is_cyclic_path(&g, &[2]));
        let k33 = generators::k33();
        // 0,1,2 | 3,4,5 bipartition
        assert!(!is_cyclic_path(&k33, &[0, 3, 1]));
        assert!(is_cyclic_path(&k33, &[0, 3, 1, 4, 2, 5]));
    }

    #[test]
    fn petersen_hamilton_path_is_not_cyclic() {
        let g = generators::petersen();
        let path = exact::ham_path(&g, SearchBudget::unlimited()).unwrap().unwrap();
        assert!(!is_cyclic_path(&g, &path));
    }

    #[test]
    fn canonical_ignores_order_and_direction() {
        let a = PathCover::new(vec![vec![3, 2], vec![1, 0]]);
        let b = PathCover::new(vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(a.canonical(), b.canonical());
    }
}
