use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cubic_cover::classify::Role;
use cubic_cover::discharge::{report, CoverReport};
use cubic_cover::exact::{min_path_cover_exact, parity_lower_bound};
use cubic_cover::optimizer::{improve, path_bound, ImproveOptions, Improved};
use cubic_cover::{graph6, validate_cover, Graph, PathCover};

use crate::args::Mode;
use crate::input::Input;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Settings {
    pub exact_cap: usize,
    pub time_budget: Option<f64>,
    pub restarts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub graph6: String,
    pub n: usize,
    pub mode: String,
    pub result: Value,
    pub cover: Option<Vec<Vec<usize>>>,
    pub ledger: Option<Value>,
    pub audit: Option<Value>,
    pub wall_time: f64,
    pub seed: u64,
    pub bound_violation: bool,
    pub invariant_failure: Option<String>,
}

/// Per-graph seed from the master seed and the graph's position.
pub fn derive_seed(master: u64, index: usize) -> u64 {
    let mut z = master ^ (index as u64).wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Outcome {
    result: Value,
    cover: Option<PathCover>,
    report: Option<CoverReport>,
    failure: Option<String>,
    checks_bound: bool,
}

fn search(g: &Graph, seed: u64, s: &Settings) -> Improved {
    let opts = ImproveOptions {
        seed,
        max_restarts: s.restarts,
        exact_cap: s.exact_cap,
        time_budget: s.time_budget.map(Duration::from_secs_f64),
        ..Default::default()
    };
    improve(g, &opts)
}

fn trace_summary(found: &Improved) -> Value {
    let t = &found.trace;
    json!({
        "initial_paths": t.initial_paths,
        "contractions": t.contractions,
        "restarts": t.restarts,
        "kicks": t.kicks,
        "accepted": t.accepted,
        "exact_used": t.exact_used,
        "unknown_cyclicity": t.unknown_cyclicity,
    })
}

fn role_counts(r: &CoverReport) -> Value {
    let c = |role| r.classes.count(role);
    json!({
        "endpoint": c(Role::Endpoint),
        "weighty": c(Role::Weighty),
        "heavy": c(Role::Heavy),
        "light": c(Role::Light),
        "path_exceptional": c(Role::PathExceptional),
        "neutral": c(Role::Neutral),
    })
}

/// Ledger and audit of a cover, with any broken accounting reported.
fn ledgered(g: &Graph, cover: &PathCover) -> (Option<CoverReport>, Option<String>) {
    if let Err(v) = validate_cover(g, cover) {
        return (None, Some(format!("invalid cover: {v}")));
    }
    if !g.is_cubic() {
        return (None, None);
    }
    match report(g, cover) {
        Ok(r) if r.ledger.total != 10 * cover.len() as i64 => {
            let msg = format!("ledger total {} is not 10 x {}", r.ledger.total, cover.len());
            (Some(r), Some(msg))
        }
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

fn run_mode(input: &Input, mode: Mode, seed: u64, s: &Settings) -> Outcome {
    let g = &input.graph;
    let blank = |result| Outcome { result, cover: None, report: None, failure: None, checks_bound: false };
    let needs_cubic = matches!(mode, Mode::Search | Mode::Audit | Mode::Certify);
    if needs_cubic && !g.is_cubic() {
        return blank(json!({ "error": "graph is not cubic" }));
    }
    match mode {
        Mode::Generate => blank(json!({
            "edges": g.edge_count(),
            "cubic": g.is_cubic(),
            "biconnected": g.is_biconnected(),
        })),
        Mode::Exact => match min_path_cover_exact(g, s.exact_cap) {
            Err(e) => blank(json!({ "error": e.to_string() })),
            Ok((p, witness)) => {
                let (report, mut failure) = ledgered(g, &witness);
                if witness.len() != p {
                    failure = Some(format!("witness has {} paths, optimum {p}", witness.len()));
                }
                Outcome {
                    result: json!({ "p": p, "hamiltonian_path": p == 1 }),
                    cover: Some(witness),
                    report,
                    failure,
                    checks_bound: false,
                }
            }
        },
        Mode::Search | Mode::Audit => {
            let found = search(g, seed, s);
            let (report, failure) = ledgered(g, &found.cover);
            let bound = path_bound(g.n());
            let mut result = json!({
                "paths": found.cover.len(),
                "bound": bound,
                "within_bound": found.cover.len() <= bound,
                "objective": found.objective.as_array(),
                "trace": trace_summary(&found),
            });
            if let (Mode::Audit, Some(r)) = (mode, &report) {
                result["verdict"] = json!(r.audit.verdict());
                result["weight_bound_holds"] = json!(r.bounds.all_hold);
                result["roles"] = role_counts(r);
                result["failed_checks"] = json!(r.audit.violations.iter().map(|v| v.check.to_string()).collect::<Vec<_>>());
            }
            Outcome { result, cover: Some(found.cover), report, failure, checks_bound: true }
        }
        Mode::Certify => {
            let found = search(g, seed, s);
            let (report, mut failure) = ledgered(g, &found.cover);
            let upper = found.cover.len();
            let exact = min_path_cover_exact(g, s.exact_cap).ok().map(|(p, _)| p);
            let parity = input.gadget.as_ref().map(|m| parity_lower_bound(g, m));
            let (lower, source) = match (&parity, exact) {
                (_, Some(p)) => (p, "exact"),
                (Some(Ok(b)), None) => (*b, "parity"),
                (Some(Err(e)), None) => {
                    failure = Some(e.to_string());
                    (0, "none")
                }
                (None, None) => (0, "none"),
            };
            let parity_value = parity.as_ref().and_then(|p| p.as_ref().ok().copied());
            let mut consistent = lower <= upper && exact.is_none_or(|p| p == upper);
            if let Some(b) = parity_value {
                consistent &= b <= upper && exact.is_none_or(|p| b <= p);
            }
            if !consistent && failure.is_none() {
                failure = Some(format!("lower bound {lower} ({source}) against search result {upper}"));
            }
            Outcome {
                result: json!({
                    "lower_bound": lower,
                    "lower_bound_source": source,
                    "parity_bound": parity_value,
                    "exact": exact,
                    "upper_bound": upper,
                    "bound": path_bound(g.n()),
                    "consistent": consistent,
                }),
                cover: Some(found.cover),
                report,
                failure,
                checks_bound: true,
            }
        }
    }
}

/// More than `⌈n/10⌉` paths on a 2-connected cubic graph with `n >= 10`.
pub fn bound_violation(g: &Graph, paths: usize) -> bool {
    g.n() >= 10 && g.is_cubic() && g.is_biconnected() && paths > path_bound(g.n())
}

pub fn run(input: &Input, mode: Mode, seed: u64, s: &Settings) -> Record {
    let start = Instant::now();
    let out = run_mode(input, mode, seed, s);
    let g = &input.graph;
    let n = g.n();
    let paths = out.cover.as_ref().map(PathCover::len);
    let bound_violation = out.checks_bound && paths.is_some_and(|p| bound_violation(g, p));
    let ledger = out.report.as_ref().map(|r| {
        json!({
            "total": r.ledger.total,
            "paths": r.ledger.paths,
            "bounds": r.bounds,
        })
    });
    let audit = out.report.as_ref().map(|r| {
        json!({
            "passed": r.audit.passed,
            "verdict": r.audit.verdict(),
            "violations": r.audit.violations,
        })
    });
    Record {
        graph6: graph6::encode(g),
        n,
        mode: mode.name().to_string(),
        result: out.result,
        cover: out.cover.map(PathCover::into_paths),
        ledger,
        audit,
        wall_time: start.elapsed().as_secs_f64(),
        seed,
        bound_violation,
        invariant_failure: out.failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubic_cover::generators;

    fn settings() -> Settings {
        Settings { exact_cap: 22, time_budget: None, restarts: 20 }
    }

    #[test]
    fn violation_needs_order_ten_and_two_connectivity() {
        let p = generators::petersen();
        assert!(!bound_violation(&p, 1));
        assert!(bound_violation(&p, 2));
        assert!(!bound_violation(&generators::k33(), 5));
        let two_k4 = generators::k4().disjoint_union(&generators::k4()).disjoint_union(&generators::k4());
        assert!(!bound_violation(&two_k4, 3));
    }

    #[test]
    fn seeds_differ_per_index() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn invalid_cover_is_an_invariant_failure() {
        let g = generators::k4();
        let (_, failure) = ledgered(&g, &PathCover::new(vec![vec![0, 1], vec![2]]));
        assert!(failure.unwrap().starts_with("invalid cover"));
        let (report, failure) = ledgered(&g, &PathCover::new(vec![vec![0, 1, 2, 3]]));
        assert!(failure.is_none());
        assert_eq!(report.unwrap().ledger.total, 10);
    }

    #[test]
    fn non_cubic_input_is_refused_by_search() {
        let g = Graph::new(3, &[(0, 1), (1, 2)], false).unwrap();
        let input = Input { source: "t".into(), graph: g, gadget: None };
        let rec = run(&input, Mode::Search, 0, &settings());
        assert_eq!(rec.result["error"], "graph is not cubic");
        let rec = run(&input, Mode::Exact, 0, &settings());
        assert_eq!(rec.result["p"], 1);
    }
}
