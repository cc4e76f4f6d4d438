use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cubic-cover-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn cli(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-cover")).args(args).arg("--out").arg(out).output().unwrap()
}

fn records(out: &Path) -> Vec<Value> {
    std::fs::read_to_string(out.join("results.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn exact_petersen_has_a_hamilton_path() {
    let out = scratch("exact");
    let o = cli(&["exact", "--builtin", "petersen"], &out);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["result"]["p"], 1);
    let path: Vec<u64> = r["cover"][0].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    let mut sorted = path.clone();
    sorted.sort();
    assert_eq!(sorted, (0..10).collect::<Vec<_>>());
    for key in ["graph6", "n", "mode", "result", "cover", "ledger", "audit", "wall_time", "seed"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn certify_k4_gadget() {
    let out = scratch("certify");
    let o = cli(&["certify", "--gadget", "k4"], &out);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["n"], 28);
    assert_eq!(r["result"]["parity_bound"], 2);
    assert_eq!(r["result"]["lower_bound_source"], "parity");
    assert!(r["result"]["upper_bound"].as_u64().unwrap() >= 2);
    assert_eq!(r["result"]["consistent"], true);
}

#[test]
fn search_random_within_bound_and_summary_written() {
    let out = scratch("search");
    let o = cli(&["--mode", "search", "--random", "20", "4", "--seed", "7", "--jobs", "2"], &out);
    assert_eq!(o.status.code(), Some(0));
    let rs = records(&out);
    assert_eq!(rs.len(), 4);
    assert!(rs.iter().all(|r| r["result"]["within_bound"] == true && r["bound_violation"] == false));
    let csv = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.starts_with("source,graph6,n,mode"));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), csv);
}

#[test]
fn reruns_hit_the_cache_with_identical_records() {
    let out = scratch("cache");
    let args = ["audit", "--random", "30", "3", "--ring", "2"];
    assert_eq!(cli(&args, &out).status.code(), Some(0));
    assert_eq!(cli(&args, &out).status.code(), Some(0));
    let text = std::fs::read_to_string(out.join("results.jsonl")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[..4], lines[4..]);
    let csv = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn malformed_lines_are_skipped_with_line_numbers() {
    let out = scratch("malformed");
    let input = out.join("in.g6");
    std::fs::write(&input, "C~\nnot graph6!\nEFz_\n").unwrap();
    let o = cli(&["search", input.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("in.g6:2:"), "{err}");
    assert_eq!(records(&out).len(), 2);

    let o = cli(&["search", input.to_str().unwrap(), "--strict"], &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("in.g6:2:"));
}

#[test]
fn generate_writes_decodable_graph6() {
    let out = scratch("generate");
    let o = cli(&["generate", "--enumerate", "8", "--biconnected"], &out);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out.join("graphs.g6")).unwrap();
    assert!(!text.is_empty());
    for line in text.lines() {
        let g = cubic_cover::graph6::decode(line).unwrap();
        assert!(g.is_cubic() && g.is_biconnected() && g.n() == 8);
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = scratch("usage");
    assert_eq!(cli(&[], &out).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate", "--builtin", "k4"], &out).status.code(), Some(2));
    assert_eq!(cli(&["generate", "--enumerate", "7"], &out).status.code(), Some(2));
    assert_eq!(cli(&["search"], &out).status.code(), Some(2));
    assert_eq!(cli(&["search", "/nonexistent/file.g6"], &out).status.code(), Some(2));
}
