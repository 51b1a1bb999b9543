mod common;

use std::collections::VecDeque;

use common::{partial_ktree, random_forest, random_tree, subset_min_widths, with_redundant_nodes};
use ksection::bounds::{td_bound, tree_bound_improved, LogBound};
use ksection::graph::{link_components, longest_path, relative_diameter, Graph, Rational};
use ksection::instances::{generate, GeneratorSpec};
use ksection::io::{parse_gr, parse_td, write_gr, write_td};
use ksection::ksection::{cut_prescribed_sizes, ksection_tree, part_sizes};
use ksection::labeling::{d_p, decompose_along_path, p_labeling};
use ksection::oracle::{dp_min_size_cut_td, dp_min_size_cut_tree};
use ksection::report::{read_csv, write_csv, RunRecord};
use ksection::td_cuts::{approximate_cut_td, d_r, td_p_labeling};
use ksection::tree_cuts::approximate_cut;
use ksection::treedec::{
    cluster_incident_edges, heaviest_path, make_nonredundant, path_weight, remove_cluster_parts, validate,
    TreeDecomposition,
};
use ksection::{Error, TdViolation};
use proptest::prelude::*;

fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Longest shortest-path distance within a component.
fn all_pairs_diameter(g: &Graph) -> usize {
    (0..g.n()).flat_map(|s| bfs(g, s).into_iter().filter(|&d| d != usize::MAX)).max().unwrap_or(0)
}

/// The T1/T2/T3 checks done the slow way: T3 by a search restricted to the
/// nodes containing the vertex.
fn naive_violation(td: &TreeDecomposition, g: &Graph) -> Option<&'static str> {
    let holds = |i: usize, v: usize| td.bag(i).contains(&v);
    if (0..g.n()).any(|v| !(0..td.len()).any(|i| holds(i, v))) {
        return Some("T1");
    }
    if g.edges().iter().any(|&(u, v)| !(0..td.len()).any(|i| holds(i, u) && holds(i, v))) {
        return Some("T2");
    }
    for v in 0..g.n() {
        let nodes: Vec<usize> = (0..td.len()).filter(|&i| holds(i, v)).collect();
        let mut reached = vec![false; td.len()];
        reached[nodes[0]] = true;
        let mut stack = vec![nodes[0]];
        while let Some(u) = stack.pop() {
            for &w in td.neighbors(u) {
                if holds(w, v) && !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if nodes.iter().any(|&i| !reached[i]) {
            return Some("T3");
        }
    }
    None
}

fn violation_tag(r: Result<(), Error>) -> Option<&'static str> {
    match r {
        Ok(()) => None,
        Err(Error::InvalidDecomposition(TdViolation::T1 { .. })) => Some("T1"),
        Err(Error::InvalidDecomposition(TdViolation::T2 { .. })) => Some("T2"),
        Err(Error::InvalidDecomposition(TdViolation::T3 { .. })) => Some("T3"),
        Err(e) => panic!("unexpected {e}"),
    }
}

/// Random tree-shaped decomposition with arbitrary bags, plus a random graph.
fn arbitrary_td() -> impl Strategy<Value = (TreeDecomposition, Graph)> {
    (2usize..8, 1usize..7, any::<u64>()).prop_map(|(n, nodes, seed)| {
        let mut s = common::Params::new(seed);
        let edges: Vec<(usize, usize)> = (1..nodes).map(|i| (s.range(0, i - 1), i)).collect();
        let bags: Vec<Vec<usize>> =
            (0..nodes).map(|_| (0..n).filter(|_| s.next().is_multiple_of(3)).collect()).collect();
        let mut g_edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if s.next().is_multiple_of(4) {
                    g_edges.push((u, v));
                }
            }
        }
        (TreeDecomposition::new(bags, &edges).unwrap(), Graph::new(n, g_edges).unwrap())
    })
}

/// Decomposition of a forest with bags `{v, parent(v)}` under a root bag.
fn forest_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut bags = vec![Vec::new()];
    let mut edges = Vec::new();
    let mut node_of = vec![usize::MAX; n];
    for root in 0..n {
        if node_of[root] != usize::MAX {
            continue;
        }
        bags.push(vec![root]);
        node_of[root] = bags.len() - 1;
        edges.push((0, node_of[root]));
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if node_of[w] == usize::MAX {
                    bags.push(vec![u.min(w), u.max(w)]);
                    node_of[w] = bags.len() - 1;
                    edges.push((node_of[u], node_of[w]));
                    stack.push(w);
                }
            }
        }
    }
    TreeDecomposition::new(bags, &edges).unwrap()
}

fn tree_params() -> impl Strategy<Value = (usize, usize, u64)> {
    (2usize..120, 2usize..7, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn longest_path_matches_all_pairs_bfs((n, cap, seed) in tree_params()) {
        let tree = random_tree(n, cap, seed);
        let path = longest_path(&tree).unwrap();
        prop_assert_eq!(path.len() - 1, all_pairs_diameter(&tree));
        prop_assert!(path.windows(2).all(|w| tree.has_edge(w[0], w[1])));
    }

    #[test]
    fn linking_keeps_relative_diameter_and_degree((n, cap, seed) in tree_params(), cuts in 0usize..6) {
        let forest = random_forest(n, cap, cuts, seed);
        let tree = link_components(&forest).unwrap();
        prop_assert!(tree.is_tree());
        prop_assert_eq!(relative_diameter(&tree).unwrap(), relative_diameter(&forest).unwrap());
        prop_assert_eq!(tree.max_degree(), forest.max_degree().max(2.min(n - 1)));
    }

    #[test]
    fn d_p_prefix_matches_cyclic_scan((n, cap, seed) in tree_params(), queries in prop::collection::vec((any::<usize>(), any::<usize>()), 20)) {
        let tree = random_tree(n, cap, seed);
        let path = longest_path(&tree).unwrap();
        let dec = decompose_along_path(&tree, &path).unwrap();
        let lab = p_labeling(&dec);
        let mut labels: Vec<usize> = lab.label_of.clone();
        labels.sort_unstable();
        prop_assert_eq!(labels, (1..=n).collect::<Vec<_>>());
        for (a, b) in queries {
            let (x, y) = (a % n + 1, b % n + 1);
            let mut count = 0;
            let mut l = x;
            while l != y {
                count += usize::from(lab.is_path_label(l));
                l = lab.shift(l, 1);
            }
            prop_assert_eq!(d_p(&lab, x, y), count);
        }
    }

    #[test]
    fn p_labeling_gives_subtrees_consecutive_labels((n, cap, seed) in tree_params()) {
        let tree = random_tree(n, cap, seed);
        let path = longest_path(&tree).unwrap();
        let dec = decompose_along_path(&tree, &path).unwrap();
        let lab = p_labeling(&dec);
        let mut prev_max = 0;
        for &p in &path {
            let labels: Vec<usize> = dec.subtree(p).iter().map(|&v| lab.label(v)).collect();
            let (lo, hi) = (*labels.iter().min().unwrap(), *labels.iter().max().unwrap());
            prop_assert_eq!(hi - lo + 1, labels.len());
            prop_assert_eq!(lab.label(p), hi);
            prop_assert_eq!(lo, prev_max + 1);
            prev_max = hi;
        }
    }

    #[test]
    fn approximate_cut_contract((n, cap, seed) in tree_params(), vi in any::<usize>(), mi in any::<usize>()) {
        let tree = random_tree(n, cap, seed);
        let v = vi % n;
        let m = 1 + mi % (2 * n - 2);
        let cut = approximate_cut(&tree, v, m).unwrap();
        let b = cut.black.len();
        prop_assert!(m <= 2 * b && b <= m);
        prop_assert!(cut.width <= tree.max_degree());
        prop_assert!(cut.white.contains(&v));
    }

    #[test]
    fn ksection_balanced_and_within_bounds((n, cap, seed) in tree_params(), k in 2usize..10) {
        let tree = random_tree(n, cap, seed);
        let (section, report) = ksection_tree(&tree, k).unwrap();
        prop_assert!(section.is_balanced(n));
        prop_assert!(report.within_bounds);
        let sizes: Vec<usize> = section.parts.iter().map(Vec::len).collect();
        prop_assert_eq!(sizes, part_sizes(n, k).into_iter().chain(std::iter::repeat(0)).take(k).collect::<Vec<_>>());
    }

    #[test]
    fn prescribed_sizes_are_met((n, cap, seed) in tree_params(), cuts in prop::collection::vec(1usize..40, 1..5)) {
        let tree = random_tree(n, cap, seed);
        let mut sizes = Vec::new();
        let mut left = n;
        for c in cuts {
            if c < left {
                sizes.push(c);
                left -= c;
            }
        }
        sizes.push(left);
        let (section, _) = cut_prescribed_sizes(&tree, &sizes).unwrap();
        let got: Vec<usize> = section.parts.iter().map(Vec::len).collect();
        prop_assert_eq!(got, sizes);
    }

    #[test]
    fn validate_agrees_with_naive_check((td, g) in arbitrary_td()) {
        prop_assert_eq!(violation_tag(validate(&td, &g)), naive_violation(&td, &g));
    }

    #[test]
    fn graph_and_td_files_round_trip(n in 2usize..60, t in 2usize..5, seed in any::<u64>()) {
        let (g, td) = partial_ktree(n, t, seed);
        prop_assert_eq!(parse_gr(&write_gr(&g)).unwrap(), g);
        let (back, n2) = parse_td(&write_td(&td, n)).unwrap();
        prop_assert_eq!(n2, n);
        prop_assert_eq!(back, td);
    }

    #[test]
    fn generators_are_deterministic(n in 2usize..200, t in 2usize..5, seed in any::<u64>()) {
        let spec = GeneratorSpec::RandomPartialKtree { n, t, edge_prob: 0.5, seed };
        let (a, b) = (generate(&spec).unwrap(), generate(&spec).unwrap());
        prop_assert_eq!(write_gr(&a.graph), write_gr(&b.graph));
        prop_assert_eq!(a.td.as_ref().map(|td| write_td(td, n)), b.td.as_ref().map(|td| write_td(td, n)));
        validate(a.td.as_ref().unwrap(), &a.graph).unwrap();
        prop_assert!(a.td.unwrap().width() < t);
    }

    #[test]
    fn run_records_round_trip(n in 1usize..5000, k in 2usize..9, width in 0usize..100, ms in 0.0f64..1e4, oracle in prop::option::of(0usize..50)) {
        let report = ksection::bounds::BoundReport::for_tree(n.max(2), k, 1, 3, width);
        let mut record = RunRecord::from_report("x,\"y\"", "family", &report, ms);
        record.oracle_width = oracle;
        let mut buf = Vec::new();
        write_csv(&mut buf, std::slice::from_ref(&record)).unwrap();
        prop_assert_eq!(read_csv(buf.as_slice()).unwrap(), vec![record]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heaviest_path_matches_all_pairs(n in 2usize..80, t in 2usize..5, seed in any::<u64>(), redundant in any::<bool>()) {
        let (_, td) = partial_ktree(n, t, seed);
        let td = if redundant { with_redundant_nodes(&td) } else { td };
        let result = heaviest_path(&td, n);
        let best = (0..td.len())
            .flat_map(|a| (a..td.len()).map(move |b| (a, b)))
            .map(|(a, b)| path_weight(&td, &td.tree_path(a, b)))
            .max()
            .unwrap();
        prop_assert_eq!(result.weight, best);
        prop_assert_eq!(path_weight(&td, &result.path), best);
        prop_assert_eq!(result.relative_weight, Rational::new(best as u64, n as u64));
    }

    #[test]
    fn nonredundant_form_is_valid(n in 2usize..80, t in 2usize..5, seed in any::<u64>()) {
        let (g, td) = partial_ktree(n, t, seed);
        let padded = with_redundant_nodes(&td);
        let norm = make_nonredundant(&padded);
        validate(&norm, &g).unwrap();
        prop_assert!(norm.is_nonredundant());
        prop_assert_eq!(norm.width(), padded.width());
        prop_assert!(heaviest_path(&norm, n).weight >= heaviest_path(&padded, n).weight);
    }

    #[test]
    fn cluster_removal_separates_parts(n in 2usize..60, t in 2usize..5, seed in any::<u64>(), pick in any::<usize>()) {
        let (g, td) = partial_ktree(n, t, seed);
        let i = pick % td.len();
        let parts = remove_cluster_parts(&td, i);
        let mut part_of = vec![usize::MAX; n];
        for (p, vs) in parts.iter().enumerate() {
            for &v in vs {
                prop_assert_eq!(part_of[v], usize::MAX);
                part_of[v] = p;
            }
        }
        prop_assert!(part_of.iter().all(|&p| p != usize::MAX));
        prop_assert_eq!(parts.len(), td.bag(i).len() + td.neighbors(i).len());
        let removed = cluster_incident_edges(&td, &g, i);
        let rest = g.without_edges(&removed);
        prop_assert!(rest.edges().iter().all(|&(u, v)| part_of[u] == part_of[v]));
        let naive: Vec<(usize, usize)> = g.edges().iter().copied()
            .filter(|&(u, v)| td.bag(i).contains(&u) || td.bag(i).contains(&v))
            .collect();
        prop_assert_eq!(removed, naive);
    }

    #[test]
    fn d_r_prefix_matches_cyclic_scan(n in 2usize..80, t in 2usize..5, seed in any::<u64>(), queries in prop::collection::vec((any::<usize>(), any::<usize>()), 20)) {
        let (_, td) = partial_ktree(n, t, seed);
        let td = make_nonredundant(&td);
        let path = heaviest_path(&td, n).path;
        let lab = td_p_labeling(&td, n, &path).unwrap();
        for (a, b) in queries {
            let (x, y) = (a % n + 1, b % n + 1);
            let mut count = 0;
            let mut l = x;
            while l != y {
                count += usize::from(lab.is_r_label(l));
                l = lab.shift(l, 1);
            }
            prop_assert_eq!(d_r(&lab, x, y), count);
        }
    }

    #[test]
    fn approximate_cut_td_contract(n in 2usize..100, t in 2usize..5, seed in any::<u64>(), mi in any::<usize>()) {
        let (g, td) = partial_ktree(n, t, seed);
        let m = 1 + mi % (n - 1);
        let cut = approximate_cut_td(&g, &td, m).unwrap();
        let b = cut.black.len();
        prop_assert!(m <= 2 * b && b <= m);
        prop_assert!(cut.width <= (td.width() + 1) * g.max_degree());
    }

    #[test]
    fn td_dp_matches_subset_enumeration(n in 2usize..15, seed in any::<u64>()) {
        let (g, td) = partial_ktree(n, 3, seed);
        let want = subset_min_widths(&g);
        for (m, &best) in want.iter().enumerate() {
            let (cut, width) = dp_min_size_cut_td(&g, &td, m).unwrap();
            prop_assert_eq!(width, best);
            prop_assert_eq!(cut.black.len(), m);
            prop_assert_eq!(cut.width, width);
        }
    }

    #[test]
    fn td_dp_matches_tree_dp(n in 2usize..60, cap in 2usize..6, cuts in 0usize..4, seed in any::<u64>()) {
        let forest = random_forest(n, cap, cuts, seed);
        let td = forest_td(&forest);
        validate(&td, &forest).unwrap();
        for m in 0..=n {
            let (_, a) = dp_min_size_cut_td(&forest, &td, m).unwrap();
            let (_, b) = dp_min_size_cut_tree(&forest, m).unwrap();
            prop_assert_eq!(a, b, "m = {}", m);
        }
    }

    #[test]
    fn log_bound_agrees_with_floats(num in 1u64..1_000_000, den in 1u64..1000, c in 1u64..50, w in 0usize..20_000) {
        prop_assume!(num >= den);
        let bound = LogBound::new(Rational::new(c, 2), 11, 24, Rational::new(num, den));
        let value = bound.approx();
        prop_assume!((value - w as f64).abs() > 1e-6 * value.max(1.0));
        prop_assert_eq!(bound.admits(w), (w as f64) < value);
    }
}

#[test]
fn log_bounds_exact_at_powers_of_two() {
    // L = 3 exactly: (9 + 33 + 24) / 2 = 33
    let b = td_bound(2, 1, 1, Rational::new(1, 8));
    assert!(b.admits(33));
    assert!(!b.admits(34));
    // n/diam = 4: (k-1) Δ (4 + 18 + 18) / 2 = 20 for k = 2, Δ = 1
    let b = tree_bound_improved(8, 2, 2, 1).unwrap();
    assert!(b.admits(20));
    assert!(!b.admits(21));
}
