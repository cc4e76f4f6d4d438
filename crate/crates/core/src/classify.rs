//! Vertex roles relative to a path cover: endpoints, weighty, heavy, light,
//! path-exceptional and neutral vertices.

use serde::Serialize;

use crate::cover::PathCover;
use crate::graph::Graph;
use crate::index::CoverIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Endpoint,
    /// Interior vertex joined off-path to an endpoint of its own path.
    Weighty,
    /// Interior vertex joined to an endpoint of another path.
    Heavy,
    /// Off-path neighbour of a path-exceptional vertex.
    Light,
    PathExceptional,
    Neutral,
}

impl Role {
    /// Weighty and heavy vertices each receive charge from an endpoint.
    pub fn is_charged(self) -> bool {
        matches!(self, Role::Weighty | Role::Heavy)
    }
}

/// Which pattern made an interior vertex path-exceptional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeRule {
    /// `x ~ u_{i+1}` and `y ~ u_{i-1}`.
    CrossedEnds,
    /// One end reaches past `u_i`, and the vertex on the other side is heavy.
    EndAndHeavy,
    /// Both path neighbours are heavy.
    HeavyBothSides,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Charged from endpoint `endpoint`.
    FromEndpoint { endpoint: usize },
    /// An endpoint adjacent off-path to another endpoint.
    EndpointReceipt { from: usize },
    Exceptional { rule: PeRule, light: usize },
    LitBy { exceptional: usize },
    /// Both ends of an edge qualified as path-exceptional, so neither is.
    MutualExceptional { partner: usize, rule: PeRule },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClasses {
    pub roles: Vec<Role>,
    pub witnesses: Vec<Vec<Witness>>,
    /// Vertices matching a path-exceptional pattern before mutual pairs were
    /// demoted; sorted.
    pub raw_exceptional: Vec<usize>,
}

impl VertexClasses {
    pub fn count(&self, role: Role) -> usize {
        self.roles.iter().filter(|&&r| r == role).count()
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }
}

/// The unique off-path neighbour of an interior vertex of a cubic graph.
fn lone_off_path(idx: &CoverIndex, v: usize) -> Option<usize> {
    let mut it = idx.off_path_neighbors(v);
    let w = it.next()?;
    it.next().is_none().then_some(w)
}

/// Classifies every vertex of a cubic graph with respect to a valid cover.
///
/// Endpoint status takes precedence over every other role. A vertex matching
/// a path-exceptional pattern is promoted only if its off-path neighbour is
/// interior on another path and not itself charged.
pub fn classify(g: &Graph, cover: &PathCover) -> VertexClasses {
    let idx = CoverIndex::new(g, cover);
    let n = g.n();
    let mut roles = vec![Role::Neutral; n];
    let mut witnesses: Vec<Vec<Witness>> = vec![Vec::new(); n];

    for pi in 0..cover.len() {
        for (x, _) in idx.ends(pi) {
            roles[x] = Role::Endpoint;
        }
    }
    for pi in 0..cover.len() {
        for (x, _) in idx.ends(pi) {
            for w in idx.off_path_neighbors(x) {
                if roles[w] == Role::Endpoint {
                    witnesses[w].push(Witness::EndpointReceipt { from: x });
                    continue;
                }
                roles[w] = if idx.path_of(w) == pi { Role::Weighty } else { Role::Heavy };
                witnesses[w].push(Witness::FromEndpoint { endpoint: x });
            }
        }
    }

    let mut raw: Vec<(usize, PeRule, usize)> = Vec::new();
    for (pi, p) in cover.paths().iter().enumerate() {
        let len = p.len();
        // Interior u_i sits at position i; the pattern needs 2 <= i <= len - 3.
        if len < 5 {
            continue;
        }
        let (x, y) = (p[0], p[len - 1]);
        for i in 2..=len - 3 {
            let u = p[i];
            if roles[u] != Role::Neutral {
                continue;
            }
            let Some(v) = lone_off_path(&idx, u) else { continue };
            if idx.path_of(v) == pi || idx.is_endpoint(v) || roles[v].is_charged() {
                continue;
            }
            let (before, after) = (p[i - 1], p[i + 1]);
            let x_past = g.has_edge(x, after);
            let y_past = g.has_edge(y, before);
            let heavy_before = roles[before] == Role::Heavy;
            let heavy_after = roles[after] == Role::Heavy;
            let rule = if x_past && y_past {
                Some(PeRule::CrossedEnds)
            } else if (x_past && heavy_before) || (y_past && heavy_after) {
                Some(PeRule::EndAndHeavy)
            } else if heavy_before && heavy_after {
                Some(PeRule::HeavyBothSides)
            } else {
                None
            };
            if let Some(rule) = rule {
                raw.push((u, rule, v));
            }
        }
    }

    let mut raw_rule = vec![None; n];
    for &(u, rule, _) in &raw {
        raw_rule[u] = Some(rule);
    }
    for &(u, rule, v) in &raw {
        if raw_rule[v].is_some() {
            witnesses[u].push(Witness::MutualExceptional { partner: v, rule });
            continue;
        }
        roles[u] = Role::PathExceptional;
        witnesses[u].push(Witness::Exceptional { rule, light: v });
        roles[v] = Role::Light;
        witnesses[v].push(Witness::LitBy { exceptional: u });
    }

    let mut raw_exceptional: Vec<usize> = raw.iter().map(|r| r.0).collect();
    raw_exceptional.sort_unstable();
    VertexClasses { roles, witnesses, raw_exceptional }
}
