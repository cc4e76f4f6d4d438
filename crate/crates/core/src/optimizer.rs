//! Local search over path covers: rearrangement moves, first-improvement
//! descent on the lexicographic objective, random kicks, and an exact
//! fallback for small graphs.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cover::{validate_cover, PathCover};
use crate::exact::{min_path_cover_exact, SearchBudget, DEFAULT_EXACT_CAP};
use crate::graph::Graph;
use crate::index::CoverIndex;
use crate::nets::{expand_all, reduce_nets};
use crate::objective::{objective_cached, Cyclicity, CyclicCache, Objective, CYCLIC_NODE_BUDGET};

/// One end of a path in the cover the move applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct End {
    pub path: usize,
    pub at_start: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Move {
    /// Join two paths through adjacent endpoints.
    MergeEndpoints { a: End, b: End },
    /// Attach `end` to the interior vertex at position `at` of `target`,
    /// keeping the part of `target` toward its last vertex (`toward_end`)
    /// or toward its first; the other part becomes its own path.
    AbsorbAtInterior { end: End, target: usize, at: usize, toward_end: bool },
    /// Pósa rotation: the end `x` has a chord to the vertex `pivot` places
    /// along the path; reverse the stretch before it.
    RerouteEndpoint { end: End, pivot: usize },
    /// Reopen a cyclic path as `order` (ending at the vertex used next),
    /// then apply `attach` to its last end.
    RotateCyclic { path: usize, order: Vec<usize>, attach: Box<Move> },
    /// A count-preserving move followed by a move touching one of the
    /// paths it changed.
    SplitRecombine { first: Box<Move>, second: Box<Move> },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::MergeEndpoints { .. } => "MergeEndpoints",
            Move::AbsorbAtInterior { .. } => "AbsorbAtInterior",
            Move::RerouteEndpoint { .. } => "RerouteEndpoint",
            Move::RotateCyclic { .. } => "RotateCyclic",
            Move::SplitRecombine { .. } => "SplitRecombine",
        }
    }

    /// Paths (indices before the move) whose vertex sequence changes.
    pub fn touched(&self) -> Vec<usize> {
        match self {
            Move::MergeEndpoints { a, b } => vec![a.path, b.path],
            Move::AbsorbAtInterior { end, target, .. } => vec![end.path, *target],
            Move::RerouteEndpoint { end, .. } => vec![end.path],
            Move::RotateCyclic { attach, .. } => attach.touched(),
            Move::SplitRecombine { first, .. } => first.touched(),
        }
    }

    /// Keeps the number of paths.
    pub fn preserves_count(&self) -> bool {
        match self {
            Move::MergeEndpoints { .. } => false,
            Move::AbsorbAtInterior { .. } | Move::RerouteEndpoint { .. } => true,
            Move::RotateCyclic { attach, .. } => attach.preserves_count(),
            Move::SplitRecombine { first, second } => first.preserves_count() && second.preserves_count(),
        }
    }
}

/// `p` with the chosen end last.
fn end_last(p: &[usize], at_start: bool) -> Vec<usize> {
    let mut v = p.to_vec();
    if at_start {
        v.reverse();
    }
    v
}

/// Applies a move produced by [`enumerate_moves`] for `cover`. Returns the
/// new cover and the indices of the paths it created or changed.
pub fn apply(cover: &PathCover, mv: &Move) -> (PathCover, Vec<usize>) {
    let mut paths = cover.paths().to_vec();
    let touched = apply_in(&mut paths, mv);
    (PathCover::new(paths), touched)
}

fn apply_in(paths: &mut Vec<Vec<usize>>, mv: &Move) -> Vec<usize> {
    match mv {
        Move::MergeEndpoints { a, b } => {
            let mut joined = end_last(&paths[a.path], a.at_start);
            joined.extend(end_last(&paths[b.path], b.at_start).into_iter().rev());
            let (keep, drop) = (a.path.min(b.path), a.path.max(b.path));
            paths[keep] = joined;
            paths.remove(drop);
            vec![keep]
        }
        Move::AbsorbAtInterior { end, target, at, toward_end } => {
            let mut joined = end_last(&paths[end.path], end.at_start);
            let q = std::mem::take(&mut paths[*target]);
            let rest = if *toward_end {
                joined.extend_from_slice(&q[*at..]);
                q[..*at].to_vec()
            } else {
                joined.extend(q[..=*at].iter().rev());
                q[*at + 1..].to_vec()
            };
            paths[end.path] = joined;
            paths[*target] = rest;
            vec![end.path, *target]
        }
        Move::RerouteEndpoint { end, pivot } => {
            let mut p = end_last(&paths[end.path], !end.at_start);
            p[..*pivot].reverse();
            paths[end.path] = p;
            vec![end.path]
        }
        Move::RotateCyclic { path, order, attach } => {
            paths[*path] = order.clone();
            apply_in(paths, attach)
        }
        Move::SplitRecombine { first, second } => {
            apply_in(paths, first);
            apply_in(paths, second)
        }
    }
}

/// Ways to attach the last vertex of path `pi` to its neighbour `z` on
/// another path.
fn attachments(idx: &CoverIndex, end: End, z: usize, out: &mut Vec<Move>) {
    let q = idx.path_of(z);
    let len = idx.path_len(q);
    let pos = idx.pos_of(z);
    if pos == 0 || pos + 1 == len {
        out.push(Move::MergeEndpoints { a: end, b: End { path: q, at_start: pos == 0 } });
    } else {
        for toward_end in [true, false] {
            out.push(Move::AbsorbAtInterior { end, target: q, at: pos, toward_end });
        }
    }
}

/// Every primitive move available on `cover`, in a fixed order: merges,
/// absorptions, cyclic rotations, reroutes.
pub fn enumerate_moves(g: &Graph, cover: &PathCover, cache: &mut CyclicCache) -> Vec<Move> {
    let idx = CoverIndex::new(g, cover);
    let mut merges = Vec::new();
    let mut absorbs = Vec::new();
    let mut reroutes = Vec::new();
    for pi in 0..cover.len() {
        for (x, at_start) in idx.ends(pi) {
            let end = End { path: pi, at_start };
            for z in idx.off_path_neighbors(x) {
                let q = idx.path_of(z);
                if q == pi {
                    let pivot = idx.pos_from(z, at_start);
                    if pivot >= 2 {
                        reroutes.push(Move::RerouteEndpoint { end, pivot });
                    }
                    continue;
                }
                if idx.is_endpoint(z) {
                    if pi < q {
                        attachments(&idx, end, z, &mut merges);
                    }
                } else {
                    attachments(&idx, end, z, &mut absorbs);
                }
            }
        }
    }
    let mut rotations = Vec::new();
    for (pi, p) in cover.paths().iter().enumerate() {
        if p.len() < 3 {
            continue;
        }
        let Cyclicity::Cyclic(cycle) = cache.get(g, p) else { continue };
        let m = cycle.len();
        for t in 0..m {
            let v = cycle[t];
            for z in g.neighbors(v).iter().copied().filter(|&z| idx.path_of(z) != pi) {
                for forward in [true, false] {
                    let order: Vec<usize> = (1..=m)
                        .map(|s| if forward { cycle[(t + s) % m] } else { cycle[(t + m - s) % m] })
                        .collect();
                    let mut attach = Vec::new();
                    attachments(&idx, End { path: pi, at_start: false }, z, &mut attach);
                    for a in attach {
                        rotations.push(Move::RotateCyclic { path: pi, order: order.clone(), attach: Box::new(a) });
                    }
                }
            }
        }
    }
    merges.extend(absorbs);
    merges.extend(rotations);
    merges.extend(reroutes);
    merges
}

/// Greedy path peeling: grow a path from the lowest unused vertex, always
/// stepping to the unused neighbour with the fewest unused neighbours, first
/// from its tail and then from its head.
pub fn initial_cover(g: &Graph) -> PathCover {
    peel(g, None)
}

/// [`initial_cover`] with random start order and tie-breaking.
pub fn random_cover(g: &Graph, seed: u64) -> PathCover {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    peel(g, Some(&mut rng))
}

fn peel(g: &Graph, mut rng: Option<&mut ChaCha8Rng>) -> PathCover {
    let n = g.n();
    let mut used = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    if let Some(r) = rng.as_deref_mut() {
        order.shuffle(r);
    }
    let mut paths = Vec::new();
    for s in order {
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut path = vec![s];
        for _side in 0..2 {
            loop {
                let tail = *path.last().expect("nonempty");
                let free = |w: usize, used: &[bool]| g.neighbors(w).iter().filter(|&&u| !used[u]).count();
                let cands: Vec<usize> = g.neighbors(tail).iter().copied().filter(|&w| !used[w]).collect();
                let Some(best) = cands.iter().map(|&w| free(w, &used)).min() else { break };
                let ties: Vec<usize> = cands.into_iter().filter(|&w| free(w, &used) == best).collect();
                let next = match rng.as_deref_mut() {
                    Some(r) => ties[r.gen_range(0..ties.len())],
                    None => ties[0],
                };
                used[next] = true;
                path.push(next);
            }
            path.reverse();
        }
        paths.push(path);
    }
    PathCover::new(paths)
}

/// `⌈n/10⌉` for `n >= 10`, else 1.
pub fn path_bound(n: usize) -> usize {
    if n >= 10 {
        n.div_ceil(10)
    } else {
        1
    }
}

#[derive(Clone, Debug)]
pub struct ImproveOptions {
    pub seed: u64,
    pub max_restarts: usize,
    pub kick_count: usize,
    pub exact_cap: usize,
    pub exact_fallback: bool,
    pub reduce_nets: bool,
    /// Stop restarting once the cover has at most this many paths; the
    /// default is `⌈n/10⌉`.
    pub target: Option<usize>,
    pub composite_moves: bool,
    pub time_budget: Option<Duration>,
    pub cyclic_budget: SearchBudget,
}

impl Default for ImproveOptions {
    fn default() -> Self {
        ImproveOptions {
            seed: 0,
            max_restarts: 20,
            kick_count: 3,
            exact_cap: DEFAULT_EXACT_CAP,
            exact_fallback: true,
            reduce_nets: true,
            target: None,
            composite_moves: true,
            time_budget: None,
            cyclic_budget: SearchBudget::nodes(CYCLIC_NODE_BUDGET),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TraceEvent {
    pub phase: &'static str,
    pub restart: usize,
    pub paths: usize,
    pub objective: [i64; 7],
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Trace {
    pub initial_paths: usize,
    pub contractions: usize,
    pub restarts: usize,
    pub kicks: usize,
    pub accepted: BTreeMap<&'static str, usize>,
    pub exact_used: bool,
    pub exact_optimum: Option<usize>,
    pub unknown_cyclicity: usize,
    pub above_bound: bool,
    pub events: Vec<TraceEvent>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Improved {
    pub cover: PathCover,
    pub objective: Objective,
    pub trace: Trace,
}

struct Search<'g, 'o> {
    g: &'g Graph,
    cache: CyclicCache,
    composite: bool,
    trace: Trace,
    observer: &'o mut dyn FnMut(&Graph, &PathCover),
}

impl Search<'_, '_> {
    fn eval(&mut self, c: &PathCover) -> Objective {
        objective_cached(self.g, c, &mut self.cache)
    }

    fn accept(&mut self, mv: &Move, c: &PathCover) {
        *self.trace.accepted.entry(mv.name()).or_default() += 1;
        (self.observer)(self.g, c);
    }

    /// First-improvement descent. With `keep_count`, moves that change the
    /// number of paths are refused.
    fn descend(&mut self, mut cover: PathCover, keep_count: bool) -> (PathCover, Objective) {
        let mut cur = self.eval(&cover);
        'outer: loop {
            let moves = enumerate_moves(self.g, &cover, &mut self.cache);
            for mv in &moves {
                let (c, _) = apply(&cover, mv);
                let o = self.eval(&c);
                if o < cur && (!keep_count || o.paths == cur.paths) {
                    self.accept(mv, &c);
                    cover = c;
                    cur = o;
                    continue 'outer;
                }
            }
            if !self.composite {
                break;
            }
            for first in moves.iter().filter(|m| m.preserves_count()) {
                let (mid, touched) = apply(&cover, first);
                for second in enumerate_moves(self.g, &mid, &mut self.cache) {
                    if !second.touched().iter().any(|t| touched.contains(t)) {
                        continue;
                    }
                    let (c, _) = apply(&mid, &second);
                    let o = self.eval(&c);
                    if o < cur && (!keep_count || o.paths == cur.paths) {
                        let mv = Move::SplitRecombine { first: Box::new(first.clone()), second: Box::new(second) };
                        self.accept(&mv, &c);
                        cover = c;
                        cur = o;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        (cover, cur)
    }

    fn kick(&mut self, mut cover: PathCover, count: usize, rng: &mut ChaCha8Rng) -> PathCover {
        for _ in 0..count {
            let moves: Vec<Move> =
                enumerate_moves(self.g, &cover, &mut self.cache).into_iter().filter(Move::preserves_count).collect();
            let Some(mv) = moves.choose(rng) else { break };
            cover = apply(&cover, mv).0;
            (self.observer)(self.g, &cover);
            self.trace.kicks += 1;
        }
        cover
    }

    fn event(&mut self, phase: &'static str, restart: usize, o: &Objective) {
        self.trace.events.push(TraceEvent { phase, restart, paths: o.paths, objective: o.as_array() });
    }
}

/// Improves a path cover of `g` (any simple graph; the move set and the
/// objective are designed for cubic graphs).
pub fn improve(g: &Graph, opts: &ImproveOptions) -> Improved {
    improve_observed(g, opts, &mut |_, _| {})
}

/// [`improve`], calling `observer` on every intermediate cover together
/// with the graph it covers (the net-reduced graph during the main search).
pub fn improve_observed(g: &Graph, opts: &ImproveOptions, observer: &mut dyn FnMut(&Graph, &PathCover)) -> Improved {
    let deadline = opts.time_budget.map(|d| Instant::now() + d);
    let out_of_time = || deadline.is_some_and(|d| Instant::now() > d);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let target = opts.target.unwrap_or_else(|| path_bound(g.n()));

    let (reduced, stack) = if opts.reduce_nets { reduce_nets(g) } else { (g.clone(), Vec::new()) };
    let mut trace = Trace { contractions: stack.len(), ..Trace::default() };

    let (mut best, mut best_obj) = {
        let mut s = Search {
            g: &reduced,
            cache: CyclicCache::new(opts.cyclic_budget),
            composite: opts.composite_moves,
            trace: std::mem::take(&mut trace),
            observer: &mut *observer,
        };
        let start = initial_cover(&reduced);
        s.trace.initial_paths = start.len();
        (s.observer)(&reduced, &start);
        let (mut best, mut best_obj) = s.descend(start, false);
        s.event("descent", 0, &best_obj);
        let mut current = best.clone();
        for r in 1..=opts.max_restarts {
            if best_obj.paths <= target || out_of_time() {
                break;
            }
            s.trace.restarts = r;
            let base = if r % 4 == 0 { random_cover(&reduced, rng.gen()) } else { current.clone() };
            let kicked = s.kick(base, opts.kick_count, &mut rng);
            let (c, o) = s.descend(kicked, false);
            s.event("restart", r, &o);
            if o.paths <= best_obj.paths {
                current = c.clone();
            } else {
                current = best.clone();
            }
            if o < best_obj {
                best = c;
                best_obj = o;
            }
        }
        s.trace.unknown_cyclicity = s.cache.unknown;
        trace = s.trace;
        (best, best_obj)
    };

    let mut search = Search {
        g,
        cache: CyclicCache::new(opts.cyclic_budget),
        composite: opts.composite_moves,
        trace,
        observer: &mut *observer,
    };
    if !stack.is_empty() {
        let expanded = expand_all(&best, &stack).expect("search keeps covers valid");
        let (c, o) = search.descend(expanded, true);
        search.event("expand", 0, &o);
        best = c;
        best_obj = o;
        let plain = initial_cover(g);
        if plain.len() < best.len() {
            let (c, o) = search.descend(plain, false);
            if o < best_obj {
                best = c;
                best_obj = o;
            }
        }
    }
    if opts.exact_fallback && g.n() <= opts.exact_cap && best.len() > 1 {
        if let Ok((p, witness)) = min_path_cover_exact(g, opts.exact_cap) {
            search.trace.exact_optimum = Some(p);
            if p < best.len() {
                search.trace.exact_used = true;
                let (c, o) = search.descend(witness, false);
                search.event("exact", 0, &o);
                best = c;
                best_obj = o;
            }
        }
    }
    debug_assert_eq!(validate_cover(g, &best), Ok(()));
    search.trace.unknown_cyclicity += search.cache.unknown;
    search.trace.above_bound = g.n() >= 10 && best.len() > path_bound(g.n());
    Improved { cover: best, objective: best_obj, trace: search.trace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn k4() -> Graph {
        crate::graph6::decode("C~").unwrap()
    }

    #[test]
    fn merge_adjacent_endpoints() {
        let g = k4();
        let cover = PathCover::new(vec![vec![0, 1], vec![2, 3]]);
        let moves = enumerate_moves(&g, &cover, &mut CyclicCache::default());
        let merges: Vec<_> = moves.iter().filter(|m| matches!(m, Move::MergeEndpoints { .. })).collect();
        assert!(!merges.is_empty());
        for m in merges {
            let (c, _) = apply(&cover, m);
            assert_eq!(c.len(), 1);
            validate_cover(&g, &c).unwrap();
        }
    }

    #[test]
    fn singleton_next_to_long_interior_can_be_absorbed() {
        // Petersen: 1-path {5} next to 8, interior of a 9-path.
        let g = generators::petersen();
        let path = vec![4, 0, 1, 2, 3, 8, 6, 9, 7];
        let cover = PathCover::new(vec![vec![5], path]);
        validate_cover(&g, &cover).unwrap();
        let moves = enumerate_moves(&g, &cover, &mut CyclicCache::default());
        let absorbs: Vec<_> = moves
            .iter()
            .filter(|m| matches!(m, Move::AbsorbAtInterior { end: End { path: 0, .. }, target: 1, at: 5, .. }))
            .collect();
        assert_eq!(absorbs.len(), 2);
        for m in absorbs {
            let (c, _) = apply(&cover, m);
            validate_cover(&g, &c).unwrap();
            assert_eq!(c.len(), 2);
            assert!(c.paths().iter().all(|p| p.len() > 1));
        }
    }

    #[test]
    fn reroute_is_a_rotation() {
        let g = k4();
        let cover = PathCover::new(vec![vec![0, 1, 2, 3]]);
        let moves = enumerate_moves(&g, &cover, &mut CyclicCache::default());
        let m = moves.iter().find(|m| matches!(m, Move::RerouteEndpoint { end: End { at_start: true, .. }, pivot: 2 })).unwrap();
        let (c, _) = apply(&cover, m);
        assert_eq!(c.paths()[0], vec![1, 0, 2, 3]);
        validate_cover(&g, &c).unwrap();
    }

    #[test]
    fn every_enumerated_move_keeps_cover_valid() {
        for seed in 0..20 {
            let g = generators::random_cubic(20, seed).unwrap();
            let cover = random_cover(&g, seed);
            for mv in enumerate_moves(&g, &cover, &mut CyclicCache::default()) {
                let (c, touched) = apply(&cover, &mv);
                validate_cover(&g, &c).unwrap_or_else(|e| panic!("{mv:?}: {e}"));
                assert!(touched.iter().all(|&t| t < c.len()));
                let delta = cover.len() as isize - c.len() as isize;
                assert_eq!(delta == 0, mv.preserves_count(), "{mv:?}");
            }
        }
    }

    #[test]
    fn initial_cover_examples() {
        assert_eq!(initial_cover(&k4()).len(), 1);
        assert!(initial_cover(&generators::petersen()).len() <= 2);
        let two = k4().disjoint_union(&k4());
        assert_eq!(initial_cover(&two).len(), 2);
    }

    #[test]
    fn improve_small_named_graphs() {
        for g in [k4(), generators::k33(), generators::prism(), generators::petersen()] {
            let r = improve(&g, &ImproveOptions::default());
            validate_cover(&g, &r.cover).unwrap();
            assert_eq!(r.cover.len(), 1);
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(path_bound(4), 1);
        assert_eq!(path_bound(10), 1);
        assert_eq!(path_bound(12), 2);
        assert_eq!(path_bound(200), 20);
    }
}
