//! Browser bindings: generate a graph, search for a cover, audit a cover.
//! Every export takes and returns JSON text.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cubic_cover::classify::Role;
use cubic_cover::discharge::report;
use cubic_cover::generators;
use cubic_cover::optimizer::{improve, path_bound, ImproveOptions};
use cubic_cover::{graph6, validate_cover, Graph, PathCover};

#[derive(Serialize)]
struct GraphView {
    graph6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct CoverView {
    paths: Vec<Vec<usize>>,
    count: usize,
    bound: usize,
    roles: Vec<Role>,
    weights: Vec<i64>,
    path_weights: Vec<i64>,
    weight_bound_holds: bool,
    verdict: &'static str,
    failed_checks: Vec<String>,
}

fn graph_view(g: &Graph) -> GraphView {
    GraphView { graph6: graph6::encode(g), n: g.n(), edges: g.edges() }
}

fn parse(text: &str) -> Result<Graph, String> {
    let g = graph6::decode(text.trim()).map_err(|e| e.to_string())?;
    g.check_cubic().map_err(|e| e.to_string())?;
    Ok(g)
}

fn cover_view(g: &Graph, cover: PathCover) -> Result<String, String> {
    validate_cover(g, &cover).map_err(|e| e.to_string())?;
    let r = report(g, &cover).map_err(|e| e.to_string())?;
    let view = CoverView {
        count: cover.len(),
        bound: path_bound(g.n()),
        roles: r.classes.roles.clone(),
        weights: r.ledger.vertex_weight.clone(),
        path_weights: r.ledger.paths.iter().map(|p| p.weight).collect(),
        weight_bound_holds: r.bounds.all_hold,
        verdict: r.audit.verdict(),
        failed_checks: r.audit.violations.iter().map(|v| format!("{}: {}", v.check, v.detail)).collect(),
        paths: cover.into_paths(),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn generate_json(kind: &str, size: usize, seed: u64) -> Result<String, String> {
    let g = match kind {
        "petersen" => generators::petersen(),
        "k4" => generators::k4(),
        "k33" => generators::k33(),
        "prism" => generators::prism(),
        "ring" => generators::petersen_ring(size).map_err(|e| e.to_string())?,
        "random" => generators::random_cubic(size, seed).map_err(|e| e.to_string())?,
        "gadget" => generators::k4minus_blowup(&generators::petersen()).map_err(|e| e.to_string())?.0,
        other => return Err(format!("unknown generator {other:?}")),
    };
    serde_json::to_string(&graph_view(&g)).map_err(|e| e.to_string())
}

pub fn improve_json(graph6_text: &str, seed: u64) -> Result<String, String> {
    let g = parse(graph6_text)?;
    let found = improve(&g, &ImproveOptions { seed, ..Default::default() });
    cover_view(&g, found.cover)
}

pub fn audit_json(graph6_text: &str, paths_json: &str) -> Result<String, String> {
    let g = parse(graph6_text)?;
    let paths: Vec<Vec<usize>> = serde_json::from_str(paths_json).map_err(|e| e.to_string())?;
    cover_view(&g, PathCover::new(paths))
}

/// `kind` is one of petersen, k4, k33, prism, ring (size = copies),
/// random (size = order) or gadget.
#[wasm_bindgen]
pub fn generate(kind: &str, size: usize, seed: u64) -> Result<String, String> {
    generate_json(kind, size, seed)
}

#[wasm_bindgen]
pub fn find_cover(graph6_text: &str, seed: u64) -> Result<String, String> {
    improve_json(graph6_text, seed)
}

#[wasm_bindgen]
pub fn audit(graph6_text: &str, paths_json: &str) -> Result<String, String> {
    audit_json(graph6_text, paths_json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn generate_then_search_then_audit() {
        let g: Value = serde_json::from_str(&generate("random", 30, 4).unwrap()).unwrap();
        assert_eq!(g["n"], 30);
        assert_eq!(g["edges"].as_array().unwrap().len(), 45);
        let code = g["graph6"].as_str().unwrap();
        let c: Value = serde_json::from_str(&find_cover(code, 1).unwrap()).unwrap();
        assert!(c["count"].as_u64().unwrap() <= 3);
        let paths = serde_json::to_string(&c["paths"]).unwrap();
        let again: Value = serde_json::from_str(&audit(code, &paths).unwrap()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn audit_of_singletons() {
        let v: Value = serde_json::from_str(&audit("C~", "[[0],[1],[2],[3]]").unwrap()).unwrap();
        assert_eq!(v["count"], 4);
        assert_eq!(v["path_weights"], serde_json::json!([10, 10, 10, 10]));
        assert_eq!(v["verdict"], "not optimal");
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(generate("cube", 0, 0).is_err());
        assert!(generate("ring", 1, 0).is_err());
        assert!(find_cover("nonsense!", 0).is_err());
        assert!(audit("C~", "[[0,1]]").unwrap_err().contains("vertex"));
        assert!(audit("C~", "[[0,1],[2,3]").is_err());
    }
}
