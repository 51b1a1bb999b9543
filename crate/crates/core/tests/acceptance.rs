//! Acceptance criteria 1 to 7. Each criterion prints one PASS/FAIL line.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{all_free_trees, partial_ktree, path, random_forest, random_tree, restricted_ratio, subset_min_widths, with_redundant_nodes, Params};
use ksection::bounds::{diameter_cut_bound, r_cut_bound, tree_bound};
use ksection::graph::{relative_diameter, Graph, Rational};
use ksection::instances::{generate, GeneratorSpec};
use ksection::ksection::{ksection_td, ksection_tree, recursive_bisection_baseline};
use ksection::oracle::{brute_min_ksection, dp_min_size_cut_tree};
use ksection::td_cuts::r_preserving_cut;
use ksection::tree_cuts::{approximate_cut, diameter_preserving_cut};
use ksection::treedec::{heaviest_path_ratio, make_nonredundant, validate};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut p = Params::new(1);
    let mut runs = 0;
    let mut slowest = Duration::ZERO;
    for i in 0..200 {
        let n = p.range(50, 2000);
        let cap = p.range(3, 6);
        let tree = random_tree(n, cap, i);
        for k in [2, 3, 4, 8] {
            let start = Instant::now();
            let (section, report) = ksection_tree(&tree, k).map_err(|e| format!("tree {i}, k = {k}: {e}"))?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            check(section.is_balanced(n), || format!("tree {i}, k = {k}: unbalanced"))?;
            check(report.within_bounds, || format!("tree {i} (n = {n}), k = {k}: width {} over a bound", section.width))?;
            check(took < Duration::from_secs(5), || format!("tree {i}, k = {k}: took {took:?}"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs within both bounds, slowest {slowest:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut trees = 0;
    // unlabeled trees on n vertices
    let counts = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    for n in 1..=10 {
        let all = all_free_trees(n);
        check(all.len() == counts[n - 1], || format!("{} trees on {n} vertices", all.len()))?;
        for tree in all {
            trees += 1;
            for k in [2, 3] {
                let (section, report) = ksection_tree(&tree, k).map_err(|e| e.to_string())?;
                let (_, opt) = brute_min_ksection(&tree, k).map_err(|e| e.to_string())?;
                check(opt <= section.width && report.within_bounds, || {
                    format!("n = {n}, k = {k}: MinSec {opt}, width {}, edges {:?}", section.width, tree.edges())
                })?;
            }
            let widths = subset_min_widths(&tree);
            for (m, &want) in widths.iter().enumerate() {
                let (_, got) = dp_min_size_cut_tree(&tree, m).map_err(|e| e.to_string())?;
                check(got == want, || format!("DP {got} vs enumeration {want} at m = {m}, edges {:?}", tree.edges()))?;
            }
        }
    }
    Ok(format!("{trees} trees on up to 10 vertices"))
}

fn criterion_3() -> Outcome {
    let mut p = Params::new(3);
    let mut tree_cases = BTreeMap::new();
    let mut td_cases = BTreeMap::new();
    for i in 0..1000u64 {
        let n = p.range(2, 200);
        let tree = random_tree(n, p.range(2, 6), i);
        let v = p.range(0, n - 1);
        let m = p.range(1, 2 * n - 2);
        let cut = approximate_cut(&tree, v, m).map_err(|e| e.to_string())?;
        let b = cut.black.len();
        check(m <= 2 * b && b <= m && cut.width <= tree.max_degree() && cut.white.contains(&v), || {
            format!("approximate cut {i}: n = {n}, m = {m}, |B| = {b}, width {}", cut.width)
        })?;
    }
    for i in 0..1000u64 {
        let n = p.range(2, 300);
        let forest = random_forest(n, p.range(2, 6), p.range(0, 4), i);
        let m = p.range(1, n - 1);
        let before = relative_diameter(&forest).unwrap();
        let (cut, trace) = diameter_preserving_cut(&forest, m).map_err(|e| e.to_string())?;
        let after = relative_diameter(&forest.induced(&cut.white)).unwrap();
        let bound = diameter_cut_bound(before, forest.max_degree());
        check(
            cut.black.len() == m && after >= before && Rational::from_integer(cut.width as u64) <= bound,
            || format!("diameter cut {i}: n = {n}, m = {m}, {:?}, width {}, {before} -> {after}", trace.case, cut.width),
        )?;
        *tree_cases.entry(format!("{:?}", trace.case)).or_insert(0) += 1;
    }
    for i in 0..1000u64 {
        let n = p.range(2, 150);
        let (g, td) = partial_ktree(n, p.range(2, 4), i);
        let m = p.range(1, n - 1);
        let r = heaviest_path_ratio(&td, n);
        let t = td.width() + 1;
        let (cut, trace) = r_preserving_cut(&g, &td, m).map_err(|e| e.to_string())?;
        let after = restricted_ratio(&td, &cut.white, n);
        check(
            cut.black.len() == m && after >= r && r_cut_bound(t, g.max_degree(), r).admits(cut.width),
            || format!("r cut {i}: n = {n}, m = {m}, {:?}, width {}, {r} -> {after}", trace.case, cut.width),
        )?;
        *td_cases.entry(format!("{:?}", trace.case)).or_insert(0) += 1;
    }
    Ok(format!("3000 instances, tree cases {tree_cases:?}, decomposition cases {td_cases:?}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut direct = Vec::new();
    let mut baseline = Vec::new();
    for h in 4..=7 {
        let tree = generate(&GeneratorSpec::AdversarialTernaryPath { height: h }).unwrap().graph;
        let n = tree.n();
        let (section, report) = ksection_tree(&tree, 4).map_err(|e| e.to_string())?;
        let constant = tree_bound(n, 4, n / 2, 4).unwrap();
        check(constant == Rational::from_integer(408), || format!("constant bound {constant}"))?;
        check(report.within_bounds && section.width <= 60, || format!("h = {h}: direct width {}", section.width))?;
        let (first, _) = dp_min_size_cut_tree(&tree, n / 2).map_err(|e| e.to_string())?;
        let path_side: Vec<usize> = (n / 2..n).collect();
        check(first.width == 1 && (first.black == path_side || first.white == path_side), || {
            format!("h = {h}: first bisection is not the path")
        })?;
        let base = recursive_bisection_baseline(&tree, 4).map_err(|e| e.to_string())?;
        direct.push(section.width);
        baseline.push(base.width);
    }
    let took = start.elapsed();
    let increasing = baseline.windows(2).all(|w| w[0] < w[1]);
    let summary = format!("direct {direct:?}, baseline {baseline:?}, {took:.2?}");
    check(increasing, || format!("baseline not strictly increasing: {summary}"))?;
    check(took < Duration::from_secs(30), || format!("too slow: {summary}"))?;
    Ok(summary)
}

fn criterion_5() -> Outcome {
    let mut p = Params::new(5);
    for i in 0..100u64 {
        let n = p.range(10, 1000);
        let t = p.range(3, 4);
        let (g, td) = partial_ktree(n, t, 1000 + i);
        let td = if i % 2 == 0 { with_redundant_nodes(&td) } else { td };
        let norm = make_nonredundant(&td);
        validate(&norm, &g).map_err(|e| format!("instance {i}: normalized td invalid: {e}"))?;
        check(
            norm.is_nonredundant()
                && norm.width() == td.width()
                && norm.size() <= td.size()
                && heaviest_path_ratio(&norm, n) >= heaviest_path_ratio(&td, n),
            || format!("instance {i}: normalization changed width, size or r"),
        )?;
        for k in [2, 3, 4] {
            let (section, report) = ksection_td(&g, &td, k).map_err(|e| format!("instance {i}, k = {k}: {e}"))?;
            check(section.is_balanced(n) && report.within_bounds, || {
                format!("instance {i} (n = {n}), k = {k}: width {} over {:?}", section.width, report.bound_td)
            })?;
        }
    }
    Ok("100 decompositions, k in {2, 3, 4}".into())
}

fn criterion_6() -> Outcome {
    let mut runs = 0;
    for n in 6..=60 {
        let g = path(n);
        for k in (2..=n).filter(|k| n % k == 0) {
            let (section, _) = ksection_tree(&g, k).map_err(|e| e.to_string())?;
            check(section.width == k - 1, || format!("P_{n}, k = {k}: width {}", section.width))?;
            if n <= 14 {
                let (_, opt) = brute_min_ksection(&g, k).map_err(|e| e.to_string())?;
                check(opt == k - 1, || format!("P_{n}, k = {k}: MinSec {opt}"))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} (n, k) pairs"))
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn criterion_7() -> Outcome {
    let sizes = [500, 1000, 2000, 4000];
    let mut medians = Vec::new();
    for (idx, &n) in sizes.iter().enumerate() {
        let trees: Vec<Graph> = (0..9).map(|s| random_tree(n, 3 + s as usize % 4, 7000 + 100 * idx as u64 + s)).collect();
        let times: Vec<Duration> = trees
            .iter()
            .map(|tree| {
                let start = Instant::now();
                for k in [2, 3, 4, 8] {
                    ksection_tree(tree, k).expect("k-section");
                }
                start.elapsed()
            })
            .collect();
        medians.push(median(times));
    }
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9)).collect();
    let summary = format!("medians {medians:.2?}, doubling ratios {ratios:.2?}");
    check(ratios.iter().all(|&r| r < 4.5), || summary.clone())?;
    Ok(summary)
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 7] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
    ];
    let mut failed = Vec::new();
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {id}: PASS ({detail})"),
            Err(detail) => {
                println!("criterion {id}: FAIL ({detail})");
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
