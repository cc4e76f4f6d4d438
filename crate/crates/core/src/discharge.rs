//! Weight transfers between paths, segment bookkeeping, and structural
//! audits of a cover.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify, Role, VertexClasses};
use crate::cover::PathCover;
use crate::graph::Graph;
use crate::index::CoverIndex;
use crate::objective::{annoying_endpoints, bad_endpoints, CyclicCache};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("path {path}: simulated weight {simulated} but closed form gives {closed_form}")]
    IdentityMismatch { path: usize, simulated: i64, closed_form: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub amount: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Segments {
    /// Position ranges `(first, last)` on the path, inclusive.
    pub heavy: Vec<(usize, usize)>,
    pub neutral: Vec<(usize, usize)>,
    pub n_h: usize,
    pub n_q: usize,
    pub n_r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathLedger {
    pub path: usize,
    pub len: usize,
    /// Weighty plus heavy.
    pub s1: usize,
    pub s2: usize,
    /// Neutral interior vertices, path-exceptional ones included.
    pub s3: usize,
    pub n_o: usize,
    /// Endpoint edge-ends leaving the path (4, or 3 for a 1-path).
    pub end_out: usize,
    /// Transfers landing on this path's endpoints from endpoints.
    pub end_in: usize,
    pub weight: i64,
    pub closed_form: i64,
    /// `2 + 2 s1 + s2 - n_o`, evaluated only when the path has at least two
    /// vertices and no endpoint-to-endpoint edge touches it.
    pub short_form: Option<i64>,
    pub segments: Segments,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLedger {
    pub paths: Vec<PathLedger>,
    pub transfers: Vec<Transfer>,
    pub vertex_weight: Vec<i64>,
    pub total: i64,
}

impl PathLedger {
    /// `s1 = n_h + a` and `s3 = n_q + (a - 1) + n_r` with `a` heavy
    /// segments; `None` when the path has no heavy segment.
    pub fn segment_identity(&self) -> Option<bool> {
        let a = self.segments.heavy.len();
        if a == 0 {
            return None;
        }
        let seg = &self.segments;
        Some(self.s1 == seg.n_h + a && self.s3 == seg.n_q + a - 1 + seg.n_r)
    }

    pub fn good_number(&self) -> usize {
        self.n_o + self.segments.n_q + self.segments.n_r
    }
}

/// Maximal heavy and neutral segments over the interior of `path`.
pub fn segment_decomposition(path: &[usize], classes: &VertexClasses) -> Segments {
    let mut seg = Segments::default();
    if path.len() < 3 {
        return seg;
    }
    let interior = 1..path.len() - 1;
    let role = |i: usize| classes.roles[path[i]];
    let charged: Vec<usize> = interior.clone().filter(|&i| role(i).is_charged()).collect();
    let neutral = |i: usize| matches!(role(i), Role::Neutral | Role::PathExceptional);
    let (Some(&first), Some(&last)) = (charged.first(), charged.last()) else {
        seg.n_r = interior.filter(|&i| neutral(i)).count();
        return seg;
    };
    seg.n_r = interior.filter(|&i| neutral(i) && (i < first || i > last)).count();

    let mut i = first;
    while i <= last {
        if role(i).is_charged() {
            // Heavy segment: charged vertices, possibly with lights between.
            let start = i;
            let mut end = i;
            let mut j = i + 1;
            while j <= last && !neutral(j) {
                if role(j).is_charged() {
                    end = j;
                }
                j += 1;
            }
            let h = (start..=end).filter(|&t| role(t).is_charged()).count();
            seg.n_h += h - 1;
            seg.heavy.push((start, end));
            i = end + 1;
        } else if neutral(i) {
            let start = i;
            let mut end = i;
            let mut j = i + 1;
            while j < last && !role(j).is_charged() {
                if neutral(j) {
                    end = j;
                }
                j += 1;
            }
            let s = (start..=end).filter(|&t| neutral(t)).count();
            seg.n_q += s - 1;
            seg.neutral.push((start, end));
            i = end + 1;
        } else {
            i += 1;
        }
    }
    seg
}

/// Runs the transfer rule on a valid cover of a cubic graph and checks the
/// per-path closed form.
pub fn transfer_weights(g: &Graph, cover: &PathCover, classes: &VertexClasses) -> Result<WeightLedger, LedgerError> {
    let idx = CoverIndex::new(g, cover);
    let mut weight = vec![0i64; g.n()];
    let mut transfers = Vec::new();
    for pi in 0..cover.len() {
        let ends = idx.ends(pi);
        let each = 10 / ends.len() as i64;
        for &(x, _) in &ends {
            weight[x] += each;
        }
        for &(x, _) in &ends {
            for w in idx.off_path_neighbors(x) {
                transfers.push(Transfer { from: x, to: w, amount: 2 });
            }
        }
    }
    for v in 0..g.n() {
        if classes.roles[v] == Role::PathExceptional {
            if let Some(&light) = idx.off_path_neighbors(v).collect::<Vec<_>>().first() {
                transfers.push(Transfer { from: v, to: light, amount: 1 });
            }
        }
    }
    for t in &transfers {
        weight[t.from] -= t.amount;
        weight[t.to] += t.amount;
    }

    let mut paths = Vec::with_capacity(cover.len());
    for (pi, p) in cover.paths().iter().enumerate() {
        let ends = idx.ends(pi);
        let interior = if p.len() > 2 { &p[1..p.len() - 1] } else { &[][..] };
        let count = |f: &dyn Fn(Role) -> bool| interior.iter().filter(|&&v| f(classes.roles[v])).count();
        let s1 = count(&|r| r.is_charged());
        let s2 = count(&|r| r == Role::Light);
        let s3 = count(&|r| matches!(r, Role::Neutral | Role::PathExceptional));
        let n_o = count(&|r| r == Role::PathExceptional);
        let end_out: usize = ends.iter().map(|&(x, _)| idx.off_path_neighbors(x).count()).sum();
        let end_in: usize = ends
            .iter()
            .map(|&(x, _)| idx.off_path_neighbors(x).filter(|&w| idx.is_endpoint(w)).count())
            .sum();
        let w: i64 = p.iter().map(|&v| weight[v]).sum();
        let closed_form = 10 - 2 * end_out as i64 + 2 * s1 as i64 + 2 * end_in as i64 + s2 as i64 - n_o as i64;
        let short_form = (p.len() >= 2 && end_in == 0).then(|| 2 + 2 * s1 as i64 + s2 as i64 - n_o as i64);
        if w != closed_form || short_form.is_some_and(|s| s != w) {
            return Err(LedgerError::IdentityMismatch { path: pi, simulated: w, closed_form: short_form.unwrap_or(closed_form) });
        }
        paths.push(PathLedger {
            path: pi,
            len: p.len(),
            s1,
            s2,
            s3,
            n_o,
            end_out,
            end_in,
            weight: w,
            closed_form,
            short_form,
            segments: segment_decomposition(p, classes),
        });
    }
    let total = weight.iter().sum();
    Ok(WeightLedger { paths, transfers, vertex_weight: weight, total })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathBound {
    pub path: usize,
    pub weight: i64,
    pub len: usize,
    pub holds: bool,
    /// When the bound fails: whether `n_h >= n_o + n_q + n_r`, with the
    /// counts `(n_h, n_o, n_q, n_r)`.
    pub excess_witness: Option<(bool, [usize; 4])>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub paths: Vec<PathBound>,
    pub total_weight: i64,
    pub n: usize,
    pub all_hold: bool,
}

/// Checks `w(P) <= |V(P)|` for every path and the resulting total.
pub fn check_weight_bound(cover: &PathCover, ledger: &WeightLedger) -> BoundReport {
    let paths: Vec<PathBound> = ledger
        .paths
        .iter()
        .map(|pl| {
            let holds = pl.weight <= pl.len as i64;
            let seg = &pl.segments;
            let excess_witness =
                (!holds).then(|| (seg.n_h >= pl.good_number(), [seg.n_h, pl.n_o, seg.n_q, seg.n_r]));
            PathBound { path: pl.path, weight: pl.weight, len: pl.len, holds, excess_witness }
        })
        .collect();
    let all_hold = paths.iter().all(|p| p.holds);
    BoundReport { paths, total_weight: ledger.total, n: cover.vertex_count(), all_hold }
}

/// Structural properties a locally optimal cover must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    AdjacentEnds,
    BadPath,
    BadEndpoint,
    AnnoyingEndpoint,
    EndChords,
    ExceptionalEdge,
    ChargedEdge,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Check::AdjacentEnds => "adjacent_ends",
            Check::BadPath => "bad_path",
            Check::BadEndpoint => "bad_endpoint",
            Check::AnnoyingEndpoint => "annoying_endpoint",
            Check::EndChords => "end_chords",
            Check::ExceptionalEdge => "exceptional_edge",
            Check::ChargedEdge => "charged_edge",
        };
        f.write_str(tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub path: usize,
    pub detail: String,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub violations: Vec<Violation>,
    pub passed: bool,
}

impl AuditReport {
    pub fn has(&self, check: Check) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    /// A pass only means no local improvement pattern was found.
    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "consistent with optimality"
        } else {
            "not optimal"
        }
    }
}

/// Audits a valid cover of a cubic graph.
pub fn audit_structure(g: &Graph, cover: &PathCover) -> AuditReport {
    let mut cache = CyclicCache::default();
    let cyclic = cache.flags(g, cover);
    let classes = classify(g, cover);
    audit_with(g, cover, &cyclic, &classes)
}

pub fn audit_with(g: &Graph, cover: &PathCover, cyclic: &[bool], classes: &VertexClasses) -> AuditReport {
    let idx = CoverIndex::new(g, cover);
    let mut out = Vec::new();
    let mut push = |check, path, detail: String, witness: Vec<usize>| out.push(Violation { check, path, detail, witness });

    for (u, v) in g.edges() {
        let (pu, pv) = (idx.path_of(u), idx.path_of(v));
        if pu == pv {
            continue;
        }
        let (eu, ev) = (idx.is_endpoint(u), idx.is_endpoint(v));
        if eu && ev {
            push(Check::AdjacentEnds, pu, format!("endpoints {u} and {v} of different paths are adjacent"), vec![u, v]);
        } else if cyclic[pu] && cyclic[pv] {
            push(Check::AdjacentEnds, pu, format!("edge {u}-{v} joins two cyclic paths"), vec![u, v]);
        } else if (cyclic[pu] && ev && !cyclic[pv]) || (cyclic[pv] && eu && !cyclic[pu]) {
            push(Check::AdjacentEnds, pu, format!("edge {u}-{v} joins a cyclic path to an endpoint"), vec![u, v]);
        }
    }
    if cover.len() > 1 {
        for (pi, p) in cover.paths().iter().enumerate().filter(|&(pi, _)| cyclic[pi]) {
            let mut outside: Vec<usize> =
                p.iter().flat_map(|&v| g.neighbors(v).iter().copied().filter(|&w| idx.path_of(w) != pi)).collect();
            outside.sort_unstable();
            outside.dedup();
            if outside.len() < 2 {
                push(Check::AdjacentEnds, pi, "cyclic path with fewer than two outside neighbours".into(), outside);
            }
        }
    }

    for (pi, p) in cover.paths().iter().enumerate() {
        let what = match p.len() {
            1 => Some("1-path"),
            3 => Some("3-path"),
            _ if cyclic[pi] => Some("cyclic path"),
            _ => None,
        };
        if let Some(what) = what {
            push(Check::BadPath, pi, format!("{what} present"), p.clone());
        }
    }

    for b in bad_endpoints(&idx) {
        let detail = format!("endpoint {} reaches positions 1 and {} of a path read from {}", b.endpoint, b.reach, b.from);
        push(Check::BadEndpoint, idx.path_of(b.endpoint), detail, vec![b.endpoint, b.from]);
    }
    for a in annoying_endpoints(&idx) {
        let detail = format!("endpoint {} annoying with s = {}, i = {} from {}", a.endpoint, a.s, a.i, a.from);
        push(Check::AnnoyingEndpoint, idx.path_of(a.endpoint), detail, vec![a.endpoint, a.from]);
    }

    for pi in (0..cover.len()).filter(|&pi| !cyclic[pi]) {
        end_chords(&idx, pi, &mut push);
    }

    let raw = &classes.raw_exceptional;
    for &u in raw {
        for &v in g.neighbors(u) {
            if u < v && raw.binary_search(&v).is_ok() {
                push(Check::ExceptionalEdge, idx.path_of(u), format!("exceptional vertices {u} and {v} adjacent"), vec![u, v]);
            }
        }
    }

    let hl = |r: Role| matches!(r, Role::Heavy | Role::Light);
    for (u, v) in g.edges() {
        if hl(classes.roles[u]) && hl(classes.roles[v]) {
            push(Check::ChargedEdge, idx.path_of(u), format!("heavy/light vertices {u} and {v} adjacent"), vec![u, v]);
        }
    }

    let passed = out.is_empty();
    AuditReport { violations: out, passed }
}

/// Two chords `x u_i`, `x u_j` (`1 < i < j <= k`) from one end of a
/// non-cyclic path constrain the vertices just before them.
fn end_chords(idx: &CoverIndex, pi: usize, push: &mut impl FnMut(Check, usize, String, Vec<usize>)) {
    let g = idx.g;
    let len = idx.path_len(pi);
    if len < 4 {
        return;
    }
    let k = len - 2;
    for (x, from_start) in idx.ends(pi) {
        let y = idx.at(pi, from_start, len - 1).expect("nonempty");
        let mut chords: Vec<usize> = g
            .neighbors(x)
            .iter()
            .filter(|&&w| idx.path_of(w) == pi)
            .map(|&w| idx.pos_from(w, from_start))
            .filter(|&i| i > 1 && i <= k)
            .collect();
        chords.sort_unstable();
        for (a, &i) in chords.iter().enumerate() {
            for &j in &chords[a + 1..] {
                let ui = idx.at(pi, from_start, i).expect("in range");
                let uj = idx.at(pi, from_start, j).expect("in range");
                if j == i + 1 {
                    push(Check::EndChords, pi, format!("end {x} has consecutive chords to {ui} and {uj}"), vec![x, ui, uj]);
                    continue;
                }
                let y_reaches = g.neighbors(y).iter().any(|&w| idx.path_of(w) == pi && idx.pos_from(w, from_start) <= j && w != y);
                for before in [i - 1, j - 1] {
                    let b = idx.at(pi, from_start, before).expect("in range");
                    for &w in g.neighbors(b) {
                        let off = idx.path_of(w) != pi;
                        let beyond = !y_reaches && !off && idx.pos_from(w, from_start) > j;
                        if off || beyond {
                            let detail = format!("end {x} with chords to {ui}, {uj}: {b} has neighbour {w} beyond reach");
                            push(Check::EndChords, pi, detail, vec![x, b, w]);
                        }
                    }
                }
            }
        }
    }
}

/// Everything the harness reports about one cover.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub classes: VertexClasses,
    pub ledger: WeightLedger,
    pub bounds: BoundReport,
    pub audit: AuditReport,
}

pub fn report(g: &Graph, cover: &PathCover) -> Result<CoverReport, LedgerError> {
    let mut cache = CyclicCache::default();
    let cyclic = cache.flags(g, cover);
    let classes = classify(g, cover);
    let ledger = transfer_weights(g, cover, &classes)?;
    let bounds = check_weight_bound(cover, &ledger);
    let audit = audit_with(g, cover, &cyclic, &classes);
    Ok(CoverReport { classes, ledger, bounds, audit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn k4() -> Graph {
        crate::graph6::decode("C~").unwrap()
    }

    fn ledger(g: &Graph, c: &PathCover) -> WeightLedger {
        transfer_weights(g, c, &classify(g, c)).unwrap()
    }

    #[test]
    fn conservation_on_singletons() {
        let g = k4();
        let c = PathCover::singletons(4);
        let l = ledger(&g, &c);
        assert_eq!(l.total, 40);
        assert!(l.paths.iter().all(|p| p.weight == 10 && p.short_form.is_none()));
    }

    #[test]
    fn weight_examples_from_random_covers() {
        // A path with nothing charged weighs 2; one weighty vertex and
        // nothing else makes it 4.
        let (mut quiet, mut one) = (0, 0);
        for seed in 0..200 {
            let g = generators::random_cubic(24, seed).unwrap();
            let c = crate::optimizer::random_cover(&g, seed);
            let classes = classify(&g, &c);
            let l = transfer_weights(&g, &c, &classes).unwrap();
            assert_eq!(l.total, 10 * c.len() as i64);
            for p in l.paths.iter().filter(|p| p.short_form.is_some()) {
                let weighty = c.paths()[p.path].iter().filter(|&&v| classes.roles[v] == Role::Weighty).count();
                if p.s1 == 0 && p.s2 == 0 && p.n_o == 0 {
                    assert_eq!(p.weight, 2);
                    quiet += 1;
                }
                if p.s1 == 1 && weighty == 1 && p.s2 == 0 && p.n_o == 0 {
                    assert_eq!(p.weight, 4);
                    one += 1;
                }
            }
        }
        assert!(quiet > 0 && one > 0, "quiet={quiet} one={one}");
    }

    #[test]
    fn k33_hamilton_path_with_closing_chord() {
        let g = generators::k33();
        let c = PathCover::new(vec![vec![0, 3, 1, 4, 2, 5]]);
        let l = ledger(&g, &c);
        assert_eq!(l.total, 10);
        assert_eq!(l.paths[0].end_in, 2);
        assert_eq!(l.paths[0].short_form, None);
    }

    #[test]
    fn segments_all_neutral() {
        let classes = VertexClasses { roles: vec![Role::Neutral; 6], witnesses: vec![vec![]; 6], raw_exceptional: vec![] };
        let s = segment_decomposition(&[0, 1, 2, 3, 4, 5], &classes);
        assert_eq!((s.heavy.len(), s.n_r, s.n_h, s.n_q), (0, 4, 0, 0));
    }

    #[test]
    fn segments_heavy_pair_and_neutral_pairs() {
        use Role::*;
        let roles = vec![Endpoint, Neutral, Weighty, Heavy, Neutral, Neutral, Light, Neutral, Heavy, Neutral, Endpoint];
        let n = roles.len();
        let classes = VertexClasses { roles, witnesses: vec![vec![]; n], raw_exceptional: vec![] };
        let s = segment_decomposition(&(0..n).collect::<Vec<_>>(), &classes);
        assert_eq!(s.heavy, vec![(2, 3), (8, 8)]);
        assert_eq!(s.neutral, vec![(4, 7)]);
        assert_eq!((s.n_h, s.n_q, s.n_r), (1, 2, 2));
    }

    #[test]
    fn audit_flags_adjacent_endpoints_and_one_paths() {
        let g = k4();
        let r = audit_structure(&g, &PathCover::new(vec![vec![0, 1], vec![2, 3]]));
        assert!(r.has(Check::AdjacentEnds));
        assert!(!r.passed);
        let r = audit_structure(&g, &PathCover::new(vec![vec![0, 1, 2], vec![3]]));
        assert!(r.has(Check::BadPath));
    }

    #[test]
    fn check_tags_match_display() {
        for c in [Check::AdjacentEnds, Check::EndChords, Check::ChargedEdge] {
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{c}\""));
        }
    }
}
