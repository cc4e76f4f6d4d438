//! Undirected simple graphs on dense vertex ids, plus connectivity checks.

use std::fmt;

use crate::error::GraphError;

/// Immutable undirected simple graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric. Construction goes through
/// [`Graph::new`], which rejects self-loops and repeated edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. With `require_cubic`, every vertex
    /// must end up with degree exactly 3.
    pub fn new(n: usize, edges: &[(usize, usize)], require_cubic: bool) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let g = Graph { adj, edge_count: edges.len() };
        if require_cubic {
            g.check_cubic()?;
        }
        Ok(g)
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    /// Errors unless every vertex has degree 3.
    pub fn check_cubic(&self) -> Result<(), GraphError> {
        if let Some(v) = (0..self.n()).find(|&v| self.degree(v) != 3) {
            return Err(GraphError::NotCubic { vertex: v, degree: self.degree(v) });
        }
        // Unreachable once all degrees are 3 (handshake lemma); kept for the
        // error contract.
        if self.n() % 2 == 1 {
            return Err(GraphError::OddOrderCubic(self.n()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_cubic(&self) -> bool {
        self.n() > 0 && self.adj.iter().all(|l| l.len() == 3)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// True iff the graph is connected, has at least 3 vertices and no cut
    /// vertex. Single DFS pass with low-points.
    pub fn is_biconnected(&self) -> bool {
        self.n() >= 3 && self.is_connected() && self.cut_vertices().is_empty()
    }

    /// Articulation points of the whole graph (every component), ascending.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let w = self.adj[v][*idx];
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> =
                    self.adj[v].iter().filter(|&&w| index[w] != usize::MAX).map(|&w| index[w]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    /// Disjoint union, `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&w| w + off).collect()));
        Graph::from_sorted_adjacency(adj)
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::from([s]);
            dist[s] = 0;
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {})", self.n(), self.edge_count, crate::graph6::encode(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], true).unwrap()
    }

    #[test]
    fn k4_is_cubic() {
        let g = k4();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_cubic());
        assert!(g.is_biconnected());
    }

    #[test]
    fn triangle_is_not_cubic() {
        let err = Graph::new(3, &[(0, 1), (1, 2), (0, 2)], true).unwrap_err();
        assert!(matches!(err, GraphError::NotCubic { .. }));
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::new(3, &[(1, 1)], false).unwrap_err(), GraphError::SelfLoop(1));
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)], false).unwrap_err(), GraphError::DuplicateEdge(0, 1));
        assert!(matches!(Graph::new(3, &[(0, 3)], false), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn bowtie_and_path_have_cut_vertices() {
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)], false).unwrap();
        assert!(!bowtie.is_biconnected());
        assert_eq!(bowtie.cut_vertices(), vec![2]);
        let path = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], false).unwrap();
        assert!(!path.is_biconnected());
        assert_eq!(path.cut_vertices(), vec![1, 2, 3]);
    }

    #[test]
    fn two_vertices_are_not_biconnected() {
        let g = Graph::new(2, &[(0, 1)], false).unwrap();
        assert!(!g.is_biconnected());
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = k4().disjoint_union(&k4());
        let sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
        assert!(!g.is_connected());
        assert!(g.cut_vertices().is_empty());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = k4();
        let h = g.induced(&[3, 1, 2]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);
        assert!(h.has_edge(0, 1));
    }
}
