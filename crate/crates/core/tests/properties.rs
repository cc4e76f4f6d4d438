use proptest::prelude::*;

use cubic_cover::classify::{classify, Role};
use cubic_cover::cover::{validate_cover, PathCover};
use cubic_cover::discharge::{check_weight_bound, transfer_weights};
use cubic_cover::exact::min_path_cover_exact;
use cubic_cover::generators::{random_cubic, random_simple_cubic};
use cubic_cover::graph6;
use cubic_cover::nets::reduce_nets;
use cubic_cover::objective::{objective, objective_cached, CyclicCache};
use cubic_cover::optimizer::{apply, enumerate_moves, improve, initial_cover, random_cover, ImproveOptions};
use cubic_cover::Graph;

fn cubic() -> impl Strategy<Value = (Graph, u64)> {
    (2usize..=20, any::<u64>()).prop_map(|(h, seed)| (random_cubic(2 * h, seed).unwrap(), seed))
}

fn shuffled(cover: &PathCover, seed: u64) -> PathCover {
    let mut paths: Vec<Vec<usize>> = cover.paths().to_vec();
    let k = paths.len();
    for (i, p) in paths.iter_mut().enumerate() {
        if (seed >> (i % 64)) & 1 == 1 {
            p.reverse();
        }
    }
    paths.rotate_left((seed as usize) % k.max(1));
    PathCover::new(paths)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip((g, _) in cubic()) {
        let s = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&s).unwrap(), g.clone());
        prop_assert_eq!(graph6::encode(&graph6::decode(&s).unwrap()), s);
    }

    #[test]
    fn random_cubic_is_cubic_and_biconnected(h in 2usize..=60, seed in any::<u64>()) {
        let g = random_cubic(2 * h, seed).unwrap();
        prop_assert!(g.is_cubic());
        prop_assert!(g.is_biconnected());
        prop_assert_eq!(g, random_cubic(2 * h, seed).unwrap());
    }

    #[test]
    fn roles_partition_every_path((g, seed) in cubic()) {
        let cover = random_cover(&g, seed);
        let classes = classify(&g, &cover);
        for p in cover.paths() {
            let ends = p.iter().filter(|&&v| classes.roles[v] == Role::Endpoint).count();
            prop_assert_eq!(ends, p.len().min(2));
        }
        let ledger = transfer_weights(&g, &cover, &classes).unwrap();
        for pl in ledger.paths.iter().filter(|pl| pl.len >= 2) {
            prop_assert_eq!(pl.s1 + pl.s2 + pl.s3 + 2, pl.len);
        }
        for &u in &classes.raw_exceptional {
            prop_assert!(!classes.roles[u].is_charged());
        }
    }

    #[test]
    fn classification_ignores_path_order_and_direction((g, seed) in cubic()) {
        let cover = random_cover(&g, seed);
        let other = shuffled(&cover, seed.rotate_left(17));
        prop_assert_eq!(classify(&g, &cover).roles, classify(&g, &other).roles);
        prop_assert_eq!(objective(&g, &cover), objective(&g, &other));
    }

    #[test]
    fn ledger_identity_and_conservation((g, seed) in cubic()) {
        let cover = random_cover(&g, seed);
        let classes = classify(&g, &cover);
        let ledger = transfer_weights(&g, &cover, &classes).unwrap();
        prop_assert_eq!(ledger.total, 10 * cover.len() as i64);
        prop_assert_eq!(ledger.paths.iter().map(|p| p.weight).sum::<i64>(), ledger.total);
        for pl in &ledger.paths {
            prop_assert_eq!(pl.weight, pl.closed_form);
            if let Some(s) = pl.short_form {
                prop_assert_eq!(pl.weight, s);
            }
            if let Some(ok) = pl.segment_identity() {
                prop_assert!(ok, "{:?}", pl);
            }
        }
        let bounds = check_weight_bound(&cover, &ledger);
        prop_assert_eq!(bounds.all_hold, bounds.paths.iter().all(|b| b.weight <= b.len as i64));
    }

    #[test]
    fn moves_keep_covers_valid((g, seed) in cubic()) {
        let cover = random_cover(&g, seed);
        let mut cache = CyclicCache::default();
        for mv in enumerate_moves(&g, &cover, &mut cache) {
            let (c, _) = apply(&cover, &mv);
            prop_assert!(validate_cover(&g, &c).is_ok(), "{:?}", mv);
        }
    }

    #[test]
    fn improve_is_valid_monotone_and_deterministic((g, seed) in cubic()) {
        let opts = ImproveOptions { seed, ..Default::default() };
        let a = improve(&g, &opts);
        prop_assert!(validate_cover(&g, &a.cover).is_ok());
        prop_assert!(a.cover.len() <= initial_cover(&g).len());
        let start = initial_cover(&g);
        prop_assert!(a.objective.paths <= objective_cached(&g, &start, &mut CyclicCache::default()).paths);
        let b = improve(&g, &opts);
        prop_assert_eq!(a.cover, b.cover);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_never_beats_by_improve_and_matches_with_fallback(h in 2usize..=8, seed in any::<u64>()) {
        let g = random_cubic(2 * h, seed).unwrap();
        let (p, witness) = min_path_cover_exact(&g, 22).unwrap();
        prop_assert!(validate_cover(&g, &witness).is_ok());
        prop_assert_eq!(witness.len(), p);
        let searched = improve(&g, &ImproveOptions { seed, exact_fallback: false, ..Default::default() });
        prop_assert!(searched.cover.len() >= p);
        let with_fallback = improve(&g, &ImproveOptions { seed, ..Default::default() });
        prop_assert_eq!(with_fallback.cover.len(), p);
    }

    #[test]
    fn net_reduction_preserves_search_result(h in 3usize..=15, seed in any::<u64>()) {
        let g = random_simple_cubic(2 * h, seed).unwrap();
        let (reduced, stack) = reduce_nets(&g);
        let opts = ImproveOptions { seed, exact_fallback: false, ..Default::default() };
        let full = improve(&g, &opts);
        prop_assert!(validate_cover(&g, &full.cover).is_ok());
        if !stack.is_empty() {
            let small = improve(&reduced, &opts);
            prop_assert!(full.cover.len() <= small.cover.len());
        }
    }
}
