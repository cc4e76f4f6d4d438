//! Nets (triangles with three distinct outside neighbours) and their
//! contraction to a single vertex.

use serde::Serialize;

use crate::cover::{validate_cover, CoverViolation, PathCover};
use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Net {
    /// Sorted triangle vertices.
    pub triangle: [usize; 3],
    /// `outside[i]` is the neighbour of `triangle[i]` off the triangle.
    pub outside: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionRecord {
    pub contracted_vertex: usize,
    pub net: Net,
    /// Reduced id -> original id. The contracted vertex maps to
    /// `net.triangle[0]`.
    pub vertex_map: Vec<usize>,
}

fn third_neighbor(g: &Graph, v: usize, a: usize, b: usize) -> Option<usize> {
    let mut others = g.neighbors(v).iter().filter(|&&w| w != a && w != b);
    let w = others.next().copied();
    if others.next().is_some() {
        return None;
    }
    w
}

fn as_net(g: &Graph, tri: [usize; 3]) -> Option<Net> {
    let [a, b, c] = tri;
    if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
        return None;
    }
    if tri.iter().any(|&v| g.degree(v) != 3) {
        return None;
    }
    let outside = [third_neighbor(g, a, b, c)?, third_neighbor(g, b, a, c)?, third_neighbor(g, c, a, b)?];
    let [x, y, z] = outside;
    (x != y && y != z && x != z).then_some(Net { triangle: tri, outside })
}

/// All nets, each triangle once, in lexicographic order of the sorted
/// triangle.
pub fn find_nets(g: &Graph) -> Vec<Net> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) {
                    out.extend(as_net(g, [a, b, c]));
                }
            }
        }
    }
    out
}

/// Replaces the net's triangle by one vertex adjacent to the three outside
/// vertices. Surviving vertices keep their relative order; the new vertex
/// gets the last id.
pub fn contract_net(g: &Graph, net: &Net) -> Result<(Graph, ContractionRecord), GraphError> {
    let mut tri = net.triangle;
    tri.sort_unstable();
    let checked = as_net(g, tri).ok_or(GraphError::NotANet(tri))?;
    let n = g.n();
    let mut new_id = vec![usize::MAX; n];
    let mut vertex_map = Vec::with_capacity(n - 2);
    for v in (0..n).filter(|v| !tri.contains(v)) {
        new_id[v] = vertex_map.len();
        vertex_map.push(v);
    }
    let u = vertex_map.len();
    vertex_map.push(tri[0]);
    for &t in &tri {
        new_id[t] = u;
    }
    let mut adj: Vec<Vec<usize>> = vertex_map[..u]
        .iter()
        .map(|&v| {
            let mut l: Vec<usize> = g.neighbors(v).iter().map(|&w| new_id[w]).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let mut hub: Vec<usize> = checked.outside.iter().map(|&o| new_id[o]).collect();
    hub.sort_unstable();
    adj.push(hub);
    let record = ContractionRecord { contracted_vertex: u, net: checked, vertex_map };
    Ok((Graph::from_sorted_adjacency(adj), record))
}

/// Lifts a cover of the reduced graph back through one contraction. The
/// contracted vertex is replaced by a walk through the triangle that enters
/// and leaves at the triangle vertices facing its path neighbours.
pub fn expand_cover(reduced: &Graph, cover: &PathCover, rec: &ContractionRecord) -> Result<PathCover, CoverViolation> {
    validate_cover(reduced, cover)?;
    let net = &rec.net;
    let facing = |reduced_nbr: usize| {
        let orig = rec.vertex_map[reduced_nbr];
        net.outside.iter().position(|&o| o == orig).expect("path neighbour of contracted vertex is outside the net")
    };
    let paths = cover
        .paths()
        .iter()
        .map(|path| {
            let mut out = Vec::with_capacity(path.len() + 2);
            for (i, &v) in path.iter().enumerate() {
                if v != rec.contracted_vertex {
                    out.push(rec.vertex_map[v]);
                    continue;
                }
                let enter = (i > 0).then(|| facing(path[i - 1]));
                let leave = (i + 1 < path.len()).then(|| facing(path[i + 1]));
                out.extend(triangle_walk(enter, leave).map(|t| net.triangle[t]));
            }
            out
        })
        .collect();
    Ok(PathCover::new(paths))
}

/// Order of the three triangle positions, starting at `enter` and ending at
/// `leave` when given.
fn triangle_walk(enter: Option<usize>, leave: Option<usize>) -> [usize; 3] {
    let mid = |a: usize, b: usize| 3 - a - b;
    match (enter, leave) {
        (Some(a), Some(b)) => [a, mid(a, b), b],
        (Some(a), None) => {
            let rest: Vec<usize> = (0..3).filter(|&t| t != a).collect();
            [a, rest[0], rest[1]]
        }
        (None, Some(b)) => {
            let rest: Vec<usize> = (0..3).filter(|&t| t != b).collect();
            [rest[0], rest[1], b]
        }
        (None, None) => [0, 1, 2],
    }
}

/// Contracts nets until none remain. Records are in contraction order;
/// expand in reverse.
pub fn reduce_nets(g: &Graph) -> (Graph, Vec<(Graph, ContractionRecord)>) {
    let mut current = g.clone();
    let mut stack = Vec::new();
    while let Some(net) = find_nets(&current).first().copied() {
        let (next, rec) = contract_net(&current, &net).expect("found net is valid");
        // The reduced graph is kept alongside its record for expansion.
        stack.push((next.clone(), rec));
        current = next;
    }
    (current, stack)
}

/// Undoes [`reduce_nets`] on a cover of the fully reduced graph.
pub fn expand_all(cover: &PathCover, stack: &[(Graph, ContractionRecord)]) -> Result<PathCover, CoverViolation> {
    let mut cover = cover.clone();
    for (reduced, rec) in stack.iter().rev() {
        cover = expand_cover(reduced, &cover, rec)?;
    }
    Ok(cover)
}
