//! k-sections and prescribed-size cuts, built by cutting off one part at a
//! time with the preserving cuts, plus a recursive-bisection baseline.

use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::graph::{diameter, relative_diameter, Graph, KSection};
use crate::oracle;
use crate::td_cuts::{r_preserving_cut, TdCutTrace};
use crate::tree_cuts::{diameter_preserving_cut, DiamCutTrace};
use crate::treedec::{self, heaviest_path_ratio, make_nonredundant, TreeDecomposition};

/// Part sizes of a k-section of `n` vertices: `n mod k` parts of size
/// `ceil(n/k)` first, then parts of size `floor(n/k)`.
pub fn part_sizes(n: usize, k: usize) -> Vec<usize> {
    let (q, r) = (n / k, n % k);
    (0..k).map(|i| if i < r { q + 1 } else { q }).collect()
}

fn map_all(map: &[usize], xs: &mut [usize]) {
    for x in xs {
        *x = map[*x];
    }
}

impl DiamCutTrace {
    /// Rewrites vertex ids through `map` (local to global).
    pub fn relabel(&mut self, map: &[usize]) {
        self.anchor = self.anchor.map(|v| map[v]);
        self.z = self.z.map(|v| map[v]);
        map_all(map, &mut self.block);
        map_all(map, &mut self.b_z);
        map_all(map, &mut self.w_z);
        map_all(map, &mut self.v_tilde);
        self.v_tilde.sort_unstable();
    }
}

impl TdCutTrace {
    /// Rewrites vertex ids through `map` (local to global); node ids are left
    /// alone.
    pub fn relabel(&mut self, map: &[usize]) {
        self.anchor = map[self.anchor];
        map_all(map, &mut self.block);
        map_all(map, &mut self.b_split);
        map_all(map, &mut self.v_tilde);
        self.v_tilde.sort_unstable();
    }
}

/// Cuts parts of the given sizes off a forest one after another, keeping the
/// relative diameter of the rest. The last size is the remainder.
fn peel_forest(forest: &Graph, sizes: &[usize]) -> Result<(Vec<Vec<usize>>, Vec<DiamCutTrace>)> {
    let target = relative_diameter(forest)?;
    let mut alive: Vec<usize> = (0..forest.n()).collect();
    let mut parts = Vec::with_capacity(sizes.len());
    let mut traces = Vec::new();
    for &m in &sizes[..sizes.len() - 1] {
        let current = forest.induced(&alive);
        let (cut, mut trace) = diameter_preserving_cut(&current, m)?;
        trace.relabel(&alive);
        traces.push(trace);
        parts.push(cut.black.iter().map(|&i| alive[i]).collect());
        alive = cut.white.iter().map(|&i| alive[i]).collect();
        if relative_diameter(&forest.induced(&alive))? < target {
            return Err(Error::Internal("relative diameter dropped after a cut".into()));
        }
    }
    parts.push(alive);
    Ok((parts, traces))
}

fn trivial_parts(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|i| if i < n { vec![i] } else { Vec::new() }).collect()
}

/// k-section of a tree of width at most `(k-1)(2 + 16 n/diam) Δ` and at most
/// `(k-1)(log²(n/diam) + 9 log(n/diam) + 18) Δ / 2`.
pub fn ksection_tree(tree: &Graph, k: usize) -> Result<(KSection, BoundReport)> {
    ksection_tree_traced(tree, k).map(|(s, r, _)| (s, r))
}

/// Like [`ksection_tree`], also returning what every cut did.
pub fn ksection_tree_traced(tree: &Graph, k: usize) -> Result<(KSection, BoundReport, Vec<DiamCutTrace>)> {
    if k < 2 {
        return Err(Error::KOutOfRange(k));
    }
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let n = tree.n();
    let (parts, traces) = if k >= n { (trivial_parts(n, k), Vec::new()) } else { peel_forest(tree, &part_sizes(n, k))? };
    let section = KSection::new(tree, parts)?;
    if !section.is_balanced(n) {
        return Err(Error::Internal("unbalanced k-section".into()));
    }
    let report = BoundReport::for_tree(n, k, diameter(tree)?, tree.max_degree(), section.width);
    Ok((section, report, traces))
}

/// Parts with exactly the prescribed sizes, in order, of width at most
/// `(len - 1)(2 + 16/diam*) Δ`.
pub fn cut_prescribed_sizes(tree: &Graph, sizes: &[usize]) -> Result<(KSection, BoundReport)> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let n = tree.n();
    let total: usize = sizes.iter().sum();
    if total != n {
        return Err(Error::SizesDontSum { got: total, expected: n });
    }
    if sizes.contains(&0) {
        return Err(Error::BadParameters("part sizes must be positive".into()));
    }
    let (parts, _) = peel_forest(tree, sizes)?;
    let width = crate::graph::cut_width(tree, &parts)?;
    let section = KSection { parts, width };
    let k = sizes.len().max(2);
    let report = BoundReport::for_tree(n, k, diameter(tree)?, tree.max_degree(), width);
    Ok((section, report))
}

/// k-section of a graph with a tree decomposition, of width at most
/// `(k-1) t Δ (log²(1/r) + 11 log(1/r) + 24) / 2`, where `t` is the largest
/// bag size and `r` the relative heaviest-path weight of the normalized
/// decomposition.
pub fn ksection_td(g: &Graph, td: &TreeDecomposition, k: usize) -> Result<(KSection, BoundReport)> {
    ksection_td_traced(g, td, k).map(|(s, r, _)| (s, r))
}

pub fn ksection_td_traced(
    g: &Graph,
    td: &TreeDecomposition,
    k: usize,
) -> Result<(KSection, BoundReport, Vec<TdCutTrace>)> {
    if k < 2 {
        return Err(Error::KOutOfRange(k));
    }
    treedec::validate(td, g)?;
    let n = g.n();
    let td = make_nonredundant(td);
    let r = heaviest_path_ratio(&td, n);
    let t = td.width() + 1;

    let mut traces = Vec::new();
    let parts = if k >= n {
        trivial_parts(n, k)
    } else {
        let sizes = part_sizes(n, k);
        let mut alive: Vec<usize> = (0..n).collect();
        let mut parts = Vec::with_capacity(k);
        for &m in &sizes[..k - 1] {
            let current = g.induced(&alive);
            let current_td = td.induced_on(&alive);
            let (cut, mut trace) = r_preserving_cut(&current, &current_td, m)?;
            let white_td = current_td.induced_on(&cut.white);
            if heaviest_path_ratio(&white_td, cut.white.len()) < r {
                return Err(Error::Internal("heaviest-path ratio dropped after a cut".into()));
            }
            trace.relabel(&alive);
            traces.push(trace);
            parts.push(cut.black.iter().map(|&i| alive[i]).collect());
            alive = cut.white.iter().map(|&i| alive[i]).collect();
        }
        parts.push(alive);
        parts
    };
    let section = KSection::new(g, parts)?;
    if !section.is_balanced(n) {
        return Err(Error::Internal("unbalanced k-section".into()));
    }
    let report = BoundReport::for_td(n, k, t, g.max_degree(), r, section.width);
    Ok((section, report, traces))
}

/// k-section by exact minimum bisection applied recursively to both halves.
/// Only meant as a point of comparison.
pub fn recursive_bisection_baseline(tree: &Graph, k: usize) -> Result<KSection> {
    if k == 0 || !k.is_power_of_two() {
        return Err(Error::KNotPowerOfTwo(k));
    }
    if k > tree.n() {
        return Err(Error::KOutOfRange(k));
    }
    if !tree.is_forest() {
        return Err(Error::NotAForest);
    }
    let mut parts = Vec::with_capacity(k);
    let mut stack = vec![((0..tree.n()).collect::<Vec<usize>>(), k)];
    while let Some((vertices, k)) = stack.pop() {
        if k == 1 {
            parts.push(vertices);
            continue;
        }
        let sub = tree.induced(&vertices);
        let (cut, _) = oracle::dp_min_size_cut_tree(&sub, vertices.len() / 2)?;
        stack.push((cut.white.iter().map(|&i| vertices[i]).collect(), k / 2));
        stack.push((cut.black.iter().map(|&i| vertices[i]).collect(), k / 2));
    }
    KSection::new(tree, parts)
}
