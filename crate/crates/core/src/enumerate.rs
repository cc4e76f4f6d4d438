//! Exhaustive generation of small cubic graphs.

use crate::error::GenError;
use crate::graph::Graph;

pub const MAX_ENUMERATE_N: usize = 12;
pub const MAX_LABELED_N: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EnumMode {
    /// Every connected cubic graph whose labels are a breadth-first order
    /// from vertex 0 with each vertex's new neighbours numbered
    /// consecutively. Every isomorphism class of connected cubic graphs
    /// occurs, usually several times.
    #[default]
    BreadthFirst,
    /// Every labeled cubic graph on `0..n`, connected or not.
    Labeled,
}

struct State<'s> {
    n: usize,
    mode: EnumMode,
    adj: Vec<Vec<usize>>,
    /// Next unused label (breadth-first mode).
    next: usize,
    biconnected_only: bool,
    sink: &'s mut dyn FnMut(Graph),
    emitted: usize,
}

impl State<'_> {
    fn free(&self, v: usize) -> usize {
        3 - self.adj[v].len()
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn unlink(&mut self, u: usize, v: usize) {
        self.adj[u].pop();
        self.adj[v].pop();
    }

    fn emit(&mut self) {
        let mut adj = self.adj.clone();
        for l in &mut adj {
            l.sort_unstable();
        }
        let g = Graph::from_sorted_adjacency(adj);
        if !self.biconnected_only || g.is_biconnected() {
            self.emitted += 1;
            (self.sink)(g);
        }
    }

    /// Completes vertex `v`, then moves on.
    fn fill(&mut self, v: usize) {
        if v == self.n {
            self.emit();
            return;
        }
        if self.mode == EnumMode::BreadthFirst && v >= self.next {
            return;
        }
        let need = self.free(v);
        let pool: Vec<usize> = match self.mode {
            EnumMode::Labeled => (v + 1..self.n).filter(|&u| self.free(u) > 0).collect(),
            EnumMode::BreadthFirst => (v + 1..self.next).filter(|&u| self.free(u) > 0 && !self.adj[v].contains(&u)).collect(),
        };
        let mut chosen = Vec::with_capacity(need);
        self.choose(v, need, &pool, 0, &mut chosen);
    }

    /// Picks `need` more neighbours of `v` from `pool[from..]`; in
    /// breadth-first mode any shortfall goes to fresh labels.
    fn choose(&mut self, v: usize, need: usize, pool: &[usize], from: usize, chosen: &mut Vec<usize>) {
        if need == 0 || (self.mode == EnumMode::BreadthFirst && from == pool.len()) {
            let fresh = need;
            if self.next + fresh > self.n || (self.mode == EnumMode::Labeled && fresh > 0) {
                return;
            }
            let first = self.next;
            for u in first..first + fresh {
                self.link(v, u);
            }
            self.next += fresh;
            self.fill(v + 1);
            self.next -= fresh;
            for u in (first..first + fresh).rev() {
                self.unlink(v, u);
            }
            return;
        }
        if from == pool.len() {
            return;
        }
        let u = pool[from];
        self.link(v, u);
        chosen.push(u);
        self.choose(v, need - 1, pool, from + 1, chosen);
        chosen.pop();
        self.unlink(v, u);
        self.choose(v, need, pool, from + 1, chosen);
    }
}

/// Streams cubic graphs on `n` vertices to `sink` in a deterministic order
/// and returns how many were emitted.
pub fn enumerate_cubic(n: usize, mode: EnumMode, biconnected_only: bool, sink: &mut dyn FnMut(Graph)) -> Result<usize, GenError> {
    if n % 2 == 1 {
        return Err(GenError::OddOrder(n));
    }
    let max = match mode {
        EnumMode::BreadthFirst => MAX_ENUMERATE_N,
        EnumMode::Labeled => MAX_LABELED_N,
    };
    if n > max {
        return Err(GenError::TooLarge { n, max });
    }
    if n < 4 {
        return Ok(0);
    }
    let mut st = State { n, mode, adj: vec![Vec::with_capacity(3); n], next: 1, biconnected_only, sink, emitted: 0 };
    if mode == EnumMode::Labeled {
        st.next = n;
    }
    st.fill(0);
    Ok(st.emitted)
}

/// Collects [`enumerate_cubic`] output, dropping repeated edge sets.
pub fn enumerate_cubic_vec(n: usize, mode: EnumMode, biconnected_only: bool) -> Result<Vec<Graph>, GenError> {
    let mut out = Vec::new();
    enumerate_cubic(n, mode, biconnected_only, &mut |g| out.push(g))?;
    let mut seen = std::collections::HashSet::new();
    out.retain(|g| seen.insert(g.edges()));
    Ok(out)
}
