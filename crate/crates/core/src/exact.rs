//! Exact oracles: minimum path cover by subset DP, Hamiltonian path/cycle
//! backtracking, and the parity lower bound for edge-gadget blow-ups.

use std::time::{Duration, Instant};

use crate::cover::PathCover;
use crate::error::OracleError;
use crate::generators::GadgetMap;
use crate::graph::Graph;

pub const DEFAULT_EXACT_CAP: usize = 22;

/// Work limit for the backtracking searches. Exhausting it yields
/// [`OracleError::Timeout`], never a guessed answer.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: None, time_limit: None }
    }

    pub fn nodes(n: u64) -> Self {
        SearchBudget { max_nodes: Some(n), time_limit: None }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::nodes(50_000_000)
    }
}

struct Meter {
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Meter {
    fn new(b: SearchBudget) -> Self {
        Meter {
            nodes: 0,
            max_nodes: b.max_nodes.unwrap_or(u64::MAX),
            deadline: b.time_limit.map(|d| Instant::now() + d),
        }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OracleError::Timeout);
        }
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(OracleError::Timeout);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Path,
    Cycle,
}

struct HamSearch<'g> {
    g: &'g Graph,
    goal: Goal,
    start: usize,
    visited: Vec<bool>,
    /// Unvisited neighbours of each vertex.
    free: Vec<usize>,
    route: Vec<usize>,
    meter: Meter,
}

impl<'g> HamSearch<'g> {
    fn new(g: &'g Graph, goal: Goal, meter: Meter) -> Self {
        let n = g.n();
        HamSearch {
            g,
            goal,
            start: 0,
            visited: vec![false; n],
            free: (0..n).map(|v| g.degree(v)).collect(),
            route: Vec::with_capacity(n),
            meter,
        }
    }

    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        self.route.push(v);
        for &w in self.g.neighbors(v) {
            self.free[w] -= 1;
        }
    }

    fn unvisit(&mut self) {
        let v = self.route.pop().expect("nonempty route");
        self.visited[v] = false;
        for &w in self.g.neighbors(v) {
            self.free[w] += 1;
        }
    }

    /// Degree-based feasibility of completing the current route.
    fn feasible(&self) -> bool {
        match self.goal {
            Goal::Cycle => self.cycle_feasible(),
            Goal::Path => self.path_feasible(),
        }
    }

    /// Moving the end from `prev` to `end` leaves every availability unchanged
    /// except at the unvisited neighbours of `prev`, so only those are checked.
    fn cycle_feasible(&self) -> bool {
        let k = self.route.len();
        if k < 2 {
            return true;
        }
        let (prev, end) = (self.route[k - 2], self.route[k - 1]);
        // The closing vertex is still unvisited and must neighbour the start.
        if self.free[self.start] == 0 {
            return false;
        }
        self.g.neighbors(prev).iter().all(|&w| {
            self.visited[w]
                || self.free[w] + self.g.has_edge(w, end) as usize + self.g.has_edge(w, self.start) as usize >= 2
        })
    }

    fn path_feasible(&self) -> bool {
        let end = *self.route.last().expect("nonempty route");
        let mut forced_ends = 0;
        for w in 0..self.g.n() {
            if self.visited[w] {
                continue;
            }
            let avail = self.free[w] + self.g.has_edge(w, end) as usize;
            if avail == 0 {
                return false;
            }
            if avail == 1 {
                forced_ends += 1;
                if forced_ends > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Unvisited vertices must all be reachable from the route's end.
    fn connected(&self) -> bool {
        let end = *self.route.last().expect("nonempty route");
        let remaining = self.g.n() - self.route.len();
        let mut seen = vec![false; self.g.n()];
        let mut stack = vec![end];
        seen[end] = true;
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            for &w in self.g.neighbors(v) {
                if !seen[w] && !self.visited[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == remaining
    }

    fn extend(&mut self) -> Result<bool, OracleError> {
        self.meter.tick()?;
        let n = self.g.n();
        let end = *self.route.last().expect("nonempty route");
        if self.route.len() == n {
            return Ok(match self.goal {
                Goal::Path => true,
                Goal::Cycle => n >= 3 && self.g.has_edge(end, self.start),
            });
        }
        if !self.feasible() {
            return Ok(false);
        }
        if self.meter.nodes.is_multiple_of(64) && !self.connected() {
            return Ok(false);
        }
        let mut next: Vec<usize> = self.g.neighbors(end).iter().copied().filter(|&w| !self.visited[w]).collect();
        next.sort_by_key(|&w| (self.free[w], w));
        for w in next {
            self.visit(w);
            if self.extend()? {
                return Ok(true);
            }
            self.unvisit();
        }
        Ok(false)
    }
}

/// Hamiltonian path search; returns a witness when one exists.
pub fn ham_path(g: &Graph, budget: SearchBudget) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.n();
    if n == 0 {
        return Ok(None);
    }
    if !g.is_connected() {
        return Ok(None);
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (g.degree(v), v));
    let mut search = HamSearch::new(g, Goal::Path, Meter::new(budget));
    for s in starts {
        search.start = s;
        search.visit(s);
        if search.extend()? {
            return Ok(Some(search.route));
        }
        search.unvisit();
    }
    Ok(None)
}

/// Hamiltonian cycle search; the witness lists each vertex once, with the
/// closing edge from last back to first implied.
pub fn ham_cycle(g: &Graph, budget: SearchBudget) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.n();
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) < 2) || !g.cut_vertices().is_empty() {
        return Ok(None);
    }
    let Some(pruned) = force_cycle_edges(g) else { return Ok(None) };
    let g = &pruned;
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 3");
    let mut search = HamSearch::new(g, Goal::Cycle, Meter::new(budget));
    search.start = start;
    search.visit(start);
    Ok(if search.extend()? { Some(search.route) } else { None })
}

/// Propagates edges every Hamiltonian cycle must use: both edges at a
/// degree-2 vertex are forced, and a vertex with two forced edges loses the
/// rest. `None` when this already rules a cycle out.
fn force_cycle_edges(g: &Graph) -> Option<Graph> {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut forced: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if adj[v].len() < 2 {
                return None;
            }
            if adj[v].len() == 2 {
                for w in adj[v].clone() {
                    if !forced[v].contains(&w) {
                        forced[v].push(w);
                        forced[w].push(v);
                        changed = true;
                    }
                }
            }
        }
        for v in 0..n {
            if forced[v].len() > 2 {
                return None;
            }
            if forced[v].len() == 2 && adj[v].len() > 2 {
                for w in adj[v].clone() {
                    if !forced[v].contains(&w) {
                        adj[v].retain(|&u| u != w);
                        adj[w].retain(|&u| u != v);
                    }
                }
                changed = true;
            }
        }
    }
    // Forced edges must not close a cycle on fewer than all vertices.
    let mut seen = vec![false; n];
    for v in 0..n {
        if seen[v] || forced[v].len() != 2 {
            continue;
        }
        let (mut prev, mut cur, mut len) = (v, forced[v][0], 1);
        seen[v] = true;
        while cur != v && forced[cur].len() == 2 {
            seen[cur] = true;
            let next = if forced[cur][0] == prev { forced[cur][1] } else { forced[cur][0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        if cur == v && len < n {
            return None;
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let h = Graph::from_sorted_adjacency(adj);
    (h.is_connected() && h.cut_vertices().is_empty()).then_some(h)
}

pub fn ham_path_exists(g: &Graph, budget: SearchBudget) -> Result<bool, OracleError> {
    ham_path(g, budget).map(|w| w.is_some())
}

pub fn ham_cycle_exists(g: &Graph, budget: SearchBudget) -> Result<bool, OracleError> {
    ham_cycle(g, budget).map(|w| w.is_some())
}

const UNSET: u8 = u8::MAX;

/// Exact path cover number with a witness cover.
///
/// DP over `(visited set, end of the open path | none)`. From a closed state
/// a new path may start at any unvisited vertex; from an open state the path
/// is either extended to an unvisited neighbour of its end or closed.
/// Memory is `2^n * (n + 1)` bytes.
pub fn min_path_cover_exact(g: &Graph, cap: usize) -> Result<(usize, PathCover), OracleError> {
    let n = g.n();
    if n > cap || n > 30 {
        return Err(OracleError::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok((0, PathCover::default()));
    }
    let stride = n + 1;
    let none = n;
    let full = (1usize << n) - 1;
    let mut f = vec![UNSET; (full + 1) * stride];
    f[none] = 0;
    let nbr_masks: Vec<usize> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    for mask in 0..=full {
        let row = mask * stride;
        let mut closed = f[row + none];
        for e in 0..n {
            if f[row + e] < closed {
                closed = f[row + e];
            }
        }
        f[row + none] = closed;
        if mask == full {
            break;
        }
        if closed != UNSET {
            let c = closed + 1;
            let mut free = !mask & full;
            while free != 0 {
                let v = free.trailing_zeros() as usize;
                free &= free - 1;
                let idx = (mask | 1 << v) * stride + v;
                if c < f[idx] {
                    f[idx] = c;
                }
            }
        }
        let mut ends = mask;
        while ends != 0 {
            let e = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let c = f[row + e];
            if c == UNSET {
                continue;
            }
            let mut ext = nbr_masks[e] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                let idx = (mask | 1 << w) * stride + w;
                if c < f[idx] {
                    f[idx] = c;
                }
            }
        }
    }
    let best = f[full * stride + none];
    debug_assert_ne!(best, UNSET);

    // Walk back from the full closed state.
    let mut paths = Vec::new();
    let mut mask = full;
    let mut cost = best;
    while mask != 0 {
        let row = mask * stride;
        let mut e = (0..n).find(|&e| mask >> e & 1 == 1 && f[row + e] == cost).expect("closing predecessor");
        let mut path = vec![e];
        loop {
            let prev = mask & !(1 << e);
            let prow = prev * stride;
            if let Some(&p) =
                g.neighbors(e).iter().find(|&&p| prev >> p & 1 == 1 && f[prow + p] == cost)
            {
                path.push(p);
                mask = prev;
                e = p;
            } else {
                debug_assert_eq!(f[prow + none], cost - 1);
                mask = prev;
                cost -= 1;
                break;
            }
        }
        paths.push(path);
    }
    paths.reverse();
    Ok((best as usize, PathCover::new(paths)))
}

/// Lower bound `n(G)/2` on the path cover number of a K4⁻ blow-up of a
/// cubic graph `G`, after checking that `map` describes `h`.
///
/// Every path of a cover of `h` induces a trail in `G` with the same count;
/// a trail changes degree parity at two vertices at most, and all `n(G)`
/// vertices of `G` have odd degree.
pub fn parity_lower_bound(h: &Graph, map: &GadgetMap) -> Result<usize, OracleError> {
    let base_n = map.base_n;
    let mismatch = |msg: String| Err(OracleError::MapMismatch(msg));
    if h.n() != base_n + 4 * map.gadgets.len() {
        return mismatch(format!("order {} vs {} base + {} gadgets", h.n(), base_n, map.gadgets.len()));
    }
    if 2 * map.gadgets.len() != 3 * base_n {
        return mismatch("base graph is not cubic".into());
    }
    let mut seen = vec![false; h.n()];
    for gadget in &map.gadgets {
        let [p, q, r, s] = gadget.vertices;
        let (u, v) = gadget.edge;
        let inner = [(p, r), (p, s), (q, r), (q, s), (r, s)];
        if inner.iter().any(|&(a, b)| !h.has_edge(a, b)) || h.has_edge(p, q) {
            return mismatch(format!("gadget for {u}-{v} is not a K4 minus an edge"));
        }
        if !h.has_edge(u, p) || !h.has_edge(v, q) || h.has_edge(u, v) {
            return mismatch(format!("gadget for {u}-{v} is not attached as recorded"));
        }
        for x in gadget.vertices {
            if x < base_n || std::mem::replace(&mut seen[x], true) {
                return mismatch(format!("gadget vertex {x} reused or out of place"));
            }
        }
    }
    if (0..base_n).any(|v| h.degree(v) != 3) {
        return mismatch("base vertex without degree 3".into());
    }
    Ok(base_n / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::validate_cover;
    use crate::generators;

    #[test]
    fn k4_and_petersen_have_path_cover_one() {
        let k4 = crate::graph6::decode("C~").unwrap();
        let (p, cover) = min_path_cover_exact(&k4, 22).unwrap();
        assert_eq!(p, 1);
        validate_cover(&k4, &cover).unwrap();
        let pet = generators::petersen();
        let (p, cover) = min_path_cover_exact(&pet, 22).unwrap();
        assert_eq!(p, 1);
        validate_cover(&pet, &cover).unwrap();
    }

    #[test]
    fn star_needs_two_paths() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)], false).unwrap();
        let (p, cover) = min_path_cover_exact(&star, 22).unwrap();
        assert_eq!(p, 2);
        assert_eq!(cover.len(), 2);
        validate_cover(&star, &cover).unwrap();
    }

    #[test]
    fn edgeless_and_too_large() {
        let g = Graph::new(3, &[], false).unwrap();
        assert_eq!(min_path_cover_exact(&g, 22).unwrap().0, 3);
        let big = generators::petersen_ring(3).unwrap();
        assert_eq!(min_path_cover_exact(&big, 22), Err(OracleError::TooLarge { n: 30, cap: 22 }));
    }

    #[test]
    fn petersen_path_but_no_cycle() {
        let g = generators::petersen();
        let path = ham_path(&g, SearchBudget::unlimited()).unwrap().unwrap();
        validate_cover(&g, &PathCover::new(vec![path])).unwrap();
        assert!(!ham_cycle_exists(&g, SearchBudget::unlimited()).unwrap());
    }

    #[test]
    fn k33_path_and_cycle() {
        let g = generators::k33();
        assert!(ham_path_exists(&g, SearchBudget::unlimited()).unwrap());
        let c = ham_cycle(&g, SearchBudget::unlimited()).unwrap().unwrap();
        assert_eq!(c.len(), 6);
        assert!(g.has_edge(c[0], c[5]));
        validate_cover(&g, &PathCover::new(vec![c])).unwrap();
    }

    #[test]
    fn petersen_ring_two_has_hamilton_path() {
        let g = generators::petersen_ring(2).unwrap();
        let path = ham_path(&g, SearchBudget::unlimited()).unwrap().unwrap();
        validate_cover(&g, &PathCover::new(vec![path])).unwrap();
    }

    #[test]
    fn tiny_budget_times_out() {
        let g = generators::petersen();
        assert_eq!(ham_cycle(&g, SearchBudget::nodes(3)), Err(OracleError::Timeout));
    }

    #[test]
    fn disconnected_has_no_hamilton_path() {
        let k4 = crate::graph6::decode("C~").unwrap();
        let g = k4.disjoint_union(&k4);
        assert!(!ham_path_exists(&g, SearchBudget::unlimited()).unwrap());
        assert_eq!(min_path_cover_exact(&g, 22).unwrap().0, 2);
    }

    #[test]
    fn parity_bound_values() {
        for (g, expected) in [
            (crate::graph6::decode("C~").unwrap(), 2),
            (generators::k33(), 3),
            (generators::petersen(), 5),
        ] {
            let (h, map) = generators::k4minus_blowup(&g).unwrap();
            assert_eq!(parity_lower_bound(&h, &map).unwrap(), expected);
            assert_eq!(expected * 14, h.n());
        }
    }

    #[test]
    fn parity_bound_rejects_foreign_map() {
        let (_, map) = generators::k4minus_blowup(&generators::k33()).unwrap();
        let (h, _) = generators::k4minus_blowup(&crate::graph6::decode("C~").unwrap()).unwrap();
        assert!(matches!(parity_lower_bound(&h, &map), Err(OracleError::MapMismatch(_))));
    }
}
