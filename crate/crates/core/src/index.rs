//! Position lookups for a cover: which path a vertex is on and where.

use crate::cover::PathCover;
use crate::graph::Graph;

pub struct CoverIndex<'a> {
    pub g: &'a Graph,
    pub cover: &'a PathCover,
    path_of: Vec<usize>,
    pos_of: Vec<usize>,
}

impl<'a> CoverIndex<'a> {
    /// Assumes `cover` is valid for `g`.
    pub fn new(g: &'a Graph, cover: &'a PathCover) -> Self {
        let mut path_of = vec![usize::MAX; g.n()];
        let mut pos_of = vec![usize::MAX; g.n()];
        for (pi, p) in cover.paths().iter().enumerate() {
            for (i, &v) in p.iter().enumerate() {
                path_of[v] = pi;
                pos_of[v] = i;
            }
        }
        CoverIndex { g, cover, path_of, pos_of }
    }

    pub fn path_of(&self, v: usize) -> usize {
        self.path_of[v]
    }

    pub fn pos_of(&self, v: usize) -> usize {
        self.pos_of[v]
    }

    pub fn path(&self, pi: usize) -> &'a [usize] {
        &self.cover.paths()[pi]
    }

    pub fn path_len(&self, pi: usize) -> usize {
        self.cover.paths()[pi].len()
    }

    pub fn is_endpoint(&self, v: usize) -> bool {
        let pos = self.pos_of[v];
        pos == 0 || pos + 1 == self.path_len(self.path_of[v])
    }

    /// `u` and `v` are consecutive on one path.
    pub fn is_path_edge(&self, u: usize, v: usize) -> bool {
        self.path_of[u] == self.path_of[v] && self.pos_of[u].abs_diff(self.pos_of[v]) == 1
    }

    /// Neighbours of `v` joined to it by edges not on any path.
    pub fn off_path_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v).iter().copied().filter(move |&w| !self.is_path_edge(v, w))
    }

    /// Position of `v` counted from the chosen end of its path.
    pub fn pos_from(&self, v: usize, from_start: bool) -> usize {
        if from_start {
            self.pos_of[v]
        } else {
            self.path_len(self.path_of[v]) - 1 - self.pos_of[v]
        }
    }

    /// Vertex at `offset` from the chosen end of path `pi`.
    pub fn at(&self, pi: usize, from_start: bool, offset: usize) -> Option<usize> {
        let p = self.path(pi);
        if offset >= p.len() {
            return None;
        }
        Some(if from_start { p[offset] } else { p[p.len() - 1 - offset] })
    }

    /// The ends of each path as `(vertex, from_start)`; a 1-path yields one
    /// entry.
    pub fn ends(&self, pi: usize) -> Vec<(usize, bool)> {
        let p = self.path(pi);
        if p.len() == 1 {
            vec![(p[0], true)]
        } else {
            vec![(p[0], true), (p[p.len() - 1], false)]
        }
    }
}
