mod common;

use common::{outer_neighbors, random_graph};
use hamres::certify::*;
use hamres::graph::families::*;
use hamres::{Graph, VertexSet};
use proptest::prelude::*;

/// Re-verifies a witness with plain loops, independent of the library's own check.
fn independently_valid(g: &Graph, w: &Witness) -> bool {
    let edges_between = |a: &[usize], b: &[usize]| a.iter().map(|&x| b.iter().filter(|&&y| g.has_edge(x, y)).count()).sum::<usize>();
    match w {
        Witness::Expansion { set, neighborhood, required, within } => {
            let nb = match within {
                None => outer_neighbors(g, set),
                Some(core) => core.iter().filter(|v| !set.contains(v) && set.iter().any(|&u| g.has_edge(u, **v))).count(),
            };
            nb == *neighborhood && (nb as f64) < *required
        }
        Witness::MinDegree { vertex, degree, required } => g.degree(*vertex) == *degree && (*degree as f64) < *required,
        Witness::DenseSet { set, edges, bound } => edges_between(set, set) / 2 == *edges && *edges as f64 > *bound,
        Witness::SparsePair { u, z, edges, threshold } => {
            u.iter().all(|x| !z.contains(x)) && edges_between(u, z) == *edges && (*edges as f64) < *threshold
        }
        Witness::FewNeighbors { vertex, into_core, within } => {
            within.iter().filter(|&&w| g.has_edge(*vertex, w)).count() == *into_core && *into_core < 2
        }
        Witness::ShortPath { path, maxlen, ends_in } => {
            path.len() >= 2
                && path.len() - 1 <= *maxlen
                && ends_in.contains(&path[0])
                && ends_in.contains(path.last().unwrap())
                && path.windows(2).all(|p| g.has_edge(p[0], p[1]))
        }
        Witness::LargeSet { size, bound } => *size as f64 > *bound,
        Witness::EdgeCount { edges, bound } => g.edge_count() == *edges && *edges as f64 > *bound,
    }
}

fn assert_failures_valid(g: &Graph, r: &CertReport) {
    r.recheck(g).unwrap();
    for f in r.failures() {
        let w = f.witness.as_ref().expect("a failure carries a witness");
        assert!(independently_valid(g, w), "{}: {w:?}", f.property);
    }
}

fn arb_profile() -> impl Strategy<Value = ExpanderProfile> {
    (1usize..5, prop::sample::select(vec![0.5, 1.0, 1.5, 2.0, 3.0])).prop_map(|(r, f)| ExpanderProfile::constant(r, f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_and_sampled_agree(n in 4usize..=20, p in 0.1f64..0.9, seed in any::<u64>(), prof in arb_profile()) {
        let g = random_graph(n, p, seed);
        let exact = check_expander(&g, &prof, &CheckMode::Exact).unwrap();
        let sampled = check_expander(&g, &prof, &CheckMode::sampled(20, seed)).unwrap();
        assert_failures_valid(&g, &exact);
        assert_failures_valid(&g, &sampled);
        if !sampled.passed() {
            prop_assert!(!exact.passed());
        }
        if exact.passed() {
            prop_assert!(sampled.passed());
        }
    }

    #[test]
    fn quasirandom_witnesses_recheck(n in 10usize..60, p in 0.05f64..0.8, seed in any::<u64>(), beta in 0.005f64..0.03) {
        let g = random_graph(n, p, seed);
        let d = (n as f64 - 1.0) * p;
        let r = check_quasirandom(&g, d, beta, &CheckMode::sampled(10, seed)).unwrap();
        assert_failures_valid(&g, &r);
    }

    #[test]
    fn l_family_witnesses_recheck(n in 6usize..50, p in 0.03f64..0.5, seed in any::<u64>(), t in 0.0f64..6.0) {
        let g = random_graph(n, p, seed);
        let part = LPartition::from_low_degree(&g, t, 0.05);
        let r = check_l_membership(&g, &part, 0.05, &CheckMode::sampled(10, seed)).unwrap();
        assert_failures_valid(&g, &r);
        let (ok, path) = no_short_double_path(&g, &part.low, short_path_bound(n));
        prop_assert_eq!(ok, path.is_none());
        prop_assert_eq!(ok, r.verdict("L3") != Some(Verdict::Fail));
    }
}

#[test]
fn expansion_is_monotone_under_edge_addition() {
    let mut trials = 0;
    let mut passing = 0;
    let mut seed = 0u64;
    while trials < 1000 {
        seed += 1;
        let n = 5 + (seed % 10) as usize;
        let g = random_graph(n, 0.25 + (seed % 5) as f64 * 0.1, seed);
        let non_edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        if non_edges.is_empty() {
            continue;
        }
        let e = non_edges[(seed as usize * 7919) % non_edges.len()];
        let prof = ExpanderProfile::constant(1 + (seed % 3) as usize, [0.5, 1.0, 1.5][(seed / 3 % 3) as usize]);
        let before = check_expander(&g, &prof, &CheckMode::Exact).unwrap();
        let after = check_expander(&g.with_edges([e]), &prof, &CheckMode::Exact).unwrap();
        if before.passed() {
            passing += 1;
            assert!(after.passed(), "seed {seed}: adding {e:?} broke expansion");
        }
        trials += 1;
    }
    assert!(passing > 100, "too few passing instances ({passing}) to exercise the property");
}

#[test]
fn brute_force_expansion_agrees() {
    // exact mode against a direct subset scan on small graphs
    for seed in 0..150u64 {
        let n = 5 + (seed % 8) as usize;
        let g = random_graph(n, 0.4, seed);
        let prof = ExpanderProfile::constant(3, 1.0);
        let mut ok = true;
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if set.len() <= 3 && (outer_neighbors(&g, &set) as f64) < set.len() as f64 {
                ok = false;
            }
        }
        assert_eq!(check_expander(&g, &prof, &CheckMode::Exact).unwrap().passed(), ok, "seed {seed}");
    }
}

#[test]
fn l_family_examples() {
    let g = path(3);
    let part = LPartition::new(VertexSet::from_vertices(3, [0, 2]), 2.0, 0.1);
    let r = check_l_membership(&g, &part, 0.1, &CheckMode::Exact).unwrap();
    assert_eq!(r.verdict("L3"), Some(Verdict::Fail));
    assert_failures_valid(&g, &r);

    let tri = complete(3);
    let (ok, w) = no_short_double_path(&tri, &VertexSet::from_vertices(3, [0]), 3);
    assert!(!ok);
    assert_eq!(w.unwrap(), vec![0, 1, 2, 0]);
}

#[test]
fn quasirandom_examples() {
    let r = check_quasirandom(&complete(20), 19.0, 0.01, &CheckMode::Exact).unwrap();
    assert_eq!(r.verdict("P0"), Some(Verdict::Pass));
    let r = check_quasirandom(&Graph::empty(20), 19.0, 0.01, &CheckMode::Exact).unwrap();
    assert_eq!(r.verdict("P0"), Some(Verdict::Fail));
    assert_failures_valid(&Graph::empty(20), &r);
}
