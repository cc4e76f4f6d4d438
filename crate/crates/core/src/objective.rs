//! The lexicographic cover objective and the local patterns it penalises.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::cover::{cyclic_witness, PathCover};
use crate::exact::SearchBudget;
use crate::graph::Graph;
use crate::index::CoverIndex;

/// Node budget for one cyclicity check inside the optimizer.
pub const CYCLIC_NODE_BUDGET: u64 = 30_000;

/// Compared lexicographically; smaller is better.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Objective {
    pub paths: usize,
    pub one_paths: usize,
    pub short_or_cyclic: usize,
    pub bad_endpoints: usize,
    pub annoying_endpoints: usize,
    pub weighty: usize,
    /// Negated total spread; more spread is better.
    pub neg_spread: i64,
}

impl Objective {
    pub fn as_array(&self) -> [i64; 7] {
        [
            self.paths as i64,
            self.one_paths as i64,
            self.short_or_cyclic as i64,
            self.bad_endpoints as i64,
            self.annoying_endpoints as i64,
            self.weighty as i64,
            self.neg_spread,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cyclicity {
    Cyclic(Vec<usize>),
    Acyclic,
    /// The search ran out of budget.
    Unknown,
}

impl Cyclicity {
    /// Unknown counts as cyclic, the pessimistic choice for the objective.
    pub fn counts_as_cyclic(&self) -> bool {
        !matches!(self, Cyclicity::Acyclic)
    }
}

/// Memoised cyclicity by vertex set.
pub struct CyclicCache {
    budget: SearchBudget,
    map: HashMap<(usize, u64, u64), Cyclicity>,
    pub unknown: usize,
    pub searches: usize,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Default for CyclicCache {
    fn default() -> Self {
        CyclicCache::new(SearchBudget::nodes(CYCLIC_NODE_BUDGET))
    }
}

impl CyclicCache {
    pub fn new(budget: SearchBudget) -> Self {
        CyclicCache { budget, map: HashMap::new(), unknown: 0, searches: 0 }
    }

    /// Cyclicity of `path`, with a spanning-cycle witness when cyclic.
    pub fn get(&mut self, g: &Graph, path: &[usize]) -> Cyclicity {
        let k = path.len();
        if k < 3 {
            return Cyclicity::Acyclic;
        }
        let (x, y) = (path[0], path[k - 1]);
        if g.has_edge(x, y) {
            return Cyclicity::Cyclic(path.to_vec());
        }
        // An endpoint with no chord into the path has induced degree 1.
        let chords = |e: usize| g.neighbors(e).iter().filter(|w| path.contains(w)).count();
        if chords(x) < 2 || chords(y) < 2 {
            return Cyclicity::Acyclic;
        }
        let key = path.iter().fold((k, 0u64, 0u64), |(k, a, b), &v| {
            (k, a.wrapping_add(mix(v as u64)), b ^ mix(v as u64 ^ 0x5555_5555_5555_5555))
        });
        if let Some(c) = self.map.get(&key) {
            return c.clone();
        }
        self.searches += 1;
        let c = match cyclic_witness(g, path, self.budget) {
            Ok(Some(w)) => Cyclicity::Cyclic(w),
            Ok(None) => Cyclicity::Acyclic,
            Err(_) => {
                self.unknown += 1;
                Cyclicity::Unknown
            }
        };
        self.map.insert(key, c.clone());
        c
    }

    pub fn flags(&mut self, g: &Graph, cover: &PathCover) -> Vec<bool> {
        cover.paths().iter().map(|p| self.get(g, p).counts_as_cyclic()).collect()
    }
}

/// Endpoint `x'` whose two off-path neighbours sit at `u_1` and `u_4` (or
/// `u_1` and `u_5`) of another path `P = x u_1 .. u_k y` read from `x`,
/// while `x` is adjacent to `u_3` (or `u_4`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadEndpoint {
    pub endpoint: usize,
    pub path: usize,
    /// The end `x` of `P` the pattern is read from.
    pub from: usize,
    /// 4 or 5: position of the far neighbour.
    pub reach: usize,
}

/// Endpoint `x'` of `P' = x' u'_1 .. u'_l y'` with `x' ~ u'_{s+1}`,
/// `x' ~ u_i` on another path `P = x u_1 .. u_k y`, `x ~ u'_{s-1}` and
/// `u'_s ~ u_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnoyingEndpoint {
    pub endpoint: usize,
    pub s: usize,
    pub other_path: usize,
    pub from: usize,
    pub i: usize,
}

pub fn bad_endpoints(idx: &CoverIndex) -> Vec<BadEndpoint> {
    let g = idx.g;
    let mut out = Vec::new();
    for pi in 0..idx.cover.len() {
        for (xp, _) in idx.ends(pi) {
            if let Some(b) = bad_at(idx, g, xp) {
                out.push(b);
            }
        }
    }
    out
}

fn bad_at(idx: &CoverIndex, g: &Graph, xp: usize) -> Option<BadEndpoint> {
    let own = idx.path_of(xp);
    let nbrs: Vec<usize> = idx.off_path_neighbors(xp).filter(|&w| idx.path_of(w) != own).collect();
    for (ai, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[ai + 1..] {
            let q = idx.path_of(a);
            if idx.path_of(b) != q {
                continue;
            }
            let len = idx.path_len(q);
            for from_start in [true, false] {
                let (pa, pb) = (idx.pos_from(a, from_start), idx.pos_from(b, from_start));
                let (lo, hi) = (pa.min(pb), pa.max(pb));
                if lo != 1 || !(hi == 4 || hi == 5) || hi > len - 2 {
                    continue;
                }
                let x = idx.at(q, from_start, 0).expect("nonempty");
                let mid = idx.at(q, from_start, hi - 1).expect("in range");
                if g.has_edge(x, mid) {
                    return Some(BadEndpoint { endpoint: xp, path: q, from: x, reach: hi });
                }
            }
        }
    }
    None
}

pub fn annoying_endpoints(idx: &CoverIndex) -> Vec<AnnoyingEndpoint> {
    let g = idx.g;
    let mut out = Vec::new();
    for pi in 0..idx.cover.len() {
        let len = idx.path_len(pi);
        // l = len - 2 interior vertices; s ranges over 2..=l-1.
        if len < 5 {
            continue;
        }
        for (xp, xp_start) in idx.ends(pi) {
            if let Some(a) = annoying_at(idx, g, pi, xp, xp_start) {
                out.push(a);
            }
        }
    }
    out
}

fn annoying_at(idx: &CoverIndex, g: &Graph, pi: usize, xp: usize, xp_start: bool) -> Option<AnnoyingEndpoint> {
    let l = idx.path_len(pi) - 2;
    let nbrs: Vec<usize> = idx.off_path_neighbors(xp).collect();
    for &t in nbrs.iter().filter(|&&t| idx.path_of(t) == pi) {
        let s1 = idx.pos_from(t, xp_start);
        if !(3..=l).contains(&s1) {
            continue;
        }
        let s = s1 - 1;
        let u_s = idx.at(pi, xp_start, s).expect("in range");
        let u_sm1 = idx.at(pi, xp_start, s - 1).expect("in range");
        for &ui in nbrs.iter().filter(|&&w| idx.path_of(w) != pi) {
            let q = idx.path_of(ui);
            let k = idx.path_len(q).saturating_sub(2);
            for from_start in [true, false] {
                let i = idx.pos_from(ui, from_start);
                if i < 1 || i + 1 > k {
                    continue;
                }
                let x = idx.at(q, from_start, 0).expect("nonempty");
                let next = idx.at(q, from_start, i + 1).expect("in range");
                if g.has_edge(x, u_sm1) && g.has_edge(u_s, next) {
                    return Some(AnnoyingEndpoint { endpoint: xp, s, other_path: q, from: x, i });
                }
            }
        }
    }
    None
}

/// Weighty vertices of path `pi`: interior, adjacent off-path to an end.
fn weighty_on(idx: &CoverIndex, pi: usize) -> usize {
    let p = idx.path(pi);
    if p.len() < 3 {
        return 0;
    }
    p[1..p.len() - 1]
        .iter()
        .filter(|&&v| idx.off_path_neighbors(v).any(|w| idx.path_of(w) == pi && idx.is_endpoint(w)))
        .count()
}

/// Interior vertices strictly between each end and its furthest neighbour
/// on the same path, summed over both ends.
pub fn spread(idx: &CoverIndex, pi: usize) -> usize {
    let len = idx.path_len(pi);
    if len < 3 {
        return 0;
    }
    idx.ends(pi)
        .into_iter()
        .map(|(x, from_start)| {
            let far = idx.g.neighbors(x).iter().filter(|&&w| idx.path_of(w) == pi).map(|&w| idx.pos_from(w, from_start)).max();
            far.unwrap_or(1).saturating_sub(1)
        })
        .sum()
}

/// Objective of a valid cover, given per-path cyclicity flags.
pub fn objective_with(g: &Graph, cover: &PathCover, cyclic: &[bool]) -> Objective {
    let idx = CoverIndex::new(g, cover);
    let mut o = Objective { paths: cover.len(), ..Objective::default() };
    let mut spread_total = 0;
    for (pi, p) in cover.paths().iter().enumerate() {
        if p.len() == 1 {
            o.one_paths += 1;
        }
        if p.len() == 3 || cyclic[pi] {
            o.short_or_cyclic += 1;
        }
        if !cyclic[pi] {
            o.weighty += weighty_on(&idx, pi);
            spread_total += spread(&idx, pi);
        }
    }
    o.bad_endpoints = bad_endpoints(&idx).len();
    o.annoying_endpoints = annoying_endpoints(&idx).len();
    o.neg_spread = -(spread_total as i64);
    o
}

pub fn objective_cached(g: &Graph, cover: &PathCover, cache: &mut CyclicCache) -> Objective {
    let flags = cache.flags(g, cover);
    objective_with(g, cover, &flags)
}

pub fn objective(g: &Graph, cover: &PathCover) -> Objective {
    objective_cached(g, cover, &mut CyclicCache::default())
}

/// `Less` when `a` is the better cover.
pub fn compare(g: &Graph, a: &PathCover, b: &PathCover) -> Ordering {
    objective(g, a).cmp(&objective(g, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn k4() -> Graph {
        crate::graph6::decode("C~").unwrap()
    }

    #[test]
    fn k4_objectives() {
        let g = k4();
        let ham = objective(&g, &PathCover::new(vec![vec![0, 1, 2, 3]]));
        assert_eq!(ham.paths, 1);
        assert_eq!(ham.one_paths, 0);
        assert_eq!(ham.short_or_cyclic, 1);
        let split = objective(&g, &PathCover::new(vec![vec![0, 1], vec![2, 3]]));
        assert_eq!(split.paths, 2);
        assert!(ham < split);
        let singles = objective(&g, &PathCover::singletons(4));
        assert_eq!((singles.paths, singles.one_paths), (4, 4));
    }

    #[test]
    fn fewer_paths_always_wins() {
        let a = Objective { paths: 2, neg_spread: 0, ..Default::default() };
        let b = Objective { paths: 3, weighty: 0, neg_spread: -100, ..Default::default() };
        assert!(a < b);
    }

    #[test]
    fn petersen_hamilton_path_is_acyclic() {
        let g = generators::petersen();
        let p = crate::exact::ham_path(&g, SearchBudget::unlimited()).unwrap().unwrap();
        let o = objective(&g, &PathCover::new(vec![p]));
        assert_eq!((o.paths, o.short_or_cyclic), (1, 0));
        assert!(o.neg_spread < 0);
    }

    #[test]
    fn three_path_counts_once() {
        // K4: 0-1-2 is a triangle path (cyclic and a 3-path), plus {3}.
        let o = objective(&k4(), &PathCover::new(vec![vec![0, 1, 2], vec![3]]));
        assert_eq!(o.short_or_cyclic, 1);
        assert_eq!(o.one_paths, 1);
    }

    #[test]
    fn cache_reuses_by_vertex_set() {
        let g = generators::k33();
        let mut cache = CyclicCache::default();
        let a = cache.get(&g, &[0, 3, 1, 4, 2, 5]);
        assert!(matches!(a, Cyclicity::Cyclic(_)));
        let before = cache.searches;
        let b = cache.get(&g, &[5, 2, 4, 1, 3, 0]);
        assert!(b.counts_as_cyclic());
        assert!(cache.searches <= before + 1);
    }
}
