//! Seeded instance generators.
//!
//! Randomness comes from xoshiro256** seeded through SplitMix64
//! (`Xoshiro256StarStar::seed_from_u64`). A uniform choice among `b` options
//! is `next_u64() % b`, a Bernoulli(p) draw is `next_u64() < p * 2^64`. Both
//! are easy to replicate in other languages, so instances can be rebuilt
//! byte for byte anywhere.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;

/// Instance family and parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Path { n: usize },
    /// `n - 1` leaves around vertex 0.
    Star { n: usize },
    /// Spine `0..spine`, each spine vertex with `legs` pendant leaves.
    Caterpillar { spine: usize, legs: usize },
    /// Center 0 with `legs` paths of `length` vertices each.
    Spider { legs: usize, length: usize },
    /// Perfect `arity`-ary tree of the given height, numbered level by level.
    PerfectDary { arity: usize, height: usize },
    /// Perfect ternary tree of the given height (root 0) and a path on as
    /// many vertices, joined by an edge from the root to one end of the path.
    AdversarialTernaryPath { height: usize },
    /// Vertex `i` attaches to a uniform vertex among `0..i` of degree below
    /// the cap.
    RandomTreeMaxdeg { n: usize, max_degree: usize, seed: u64 },
    /// Uniform labeled tree from a random Prüfer sequence.
    Prufer { n: usize, seed: u64 },
    /// Random `(t-1)`-tree with each edge kept with probability `edge_prob`,
    /// together with its decomposition of width at most `t - 1`.
    RandomPartialKtree { n: usize, t: usize, edge_prob: f64, seed: u64 },
}

/// A generated graph with an optional tree decomposition.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub td: Option<TreeDecomposition>,
}

impl GeneratorSpec {
    /// Short name for reports, e.g. `random_tree_maxdeg`.
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Path { .. } => "path",
            GeneratorSpec::Star { .. } => "star",
            GeneratorSpec::Caterpillar { .. } => "caterpillar",
            GeneratorSpec::Spider { .. } => "spider",
            GeneratorSpec::PerfectDary { .. } => "perfect_dary",
            GeneratorSpec::AdversarialTernaryPath { .. } => "adversarial_ternary_path",
            GeneratorSpec::RandomTreeMaxdeg { .. } => "random_tree_maxdeg",
            GeneratorSpec::Prufer { .. } => "prufer",
            GeneratorSpec::RandomPartialKtree { .. } => "random_partial_ktree",
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

fn tree(n: usize, edges: Vec<(usize, usize)>) -> Result<Instance> {
    Ok(Instance { graph: Graph::new(n, edges)?, td: None })
}

fn dary_edges(arity: usize, height: usize, offset: usize) -> (usize, Vec<(usize, usize)>) {
    let mut n = 1;
    let mut level = 1;
    for _ in 0..height {
        level *= arity;
        n += level;
    }
    let edges = (1..n).map(|i| (offset + (i - 1) / arity, offset + i)).collect();
    (n, edges)
}

/// Builds the instance described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    match *spec {
        GeneratorSpec::Path { n } => {
            if n == 0 {
                return Err(bad("path needs n >= 1"));
            }
            tree(n, (1..n).map(|i| (i - 1, i)).collect())
        }
        GeneratorSpec::Star { n } => {
            if n == 0 {
                return Err(bad("star needs n >= 1"));
            }
            tree(n, (1..n).map(|i| (0, i)).collect())
        }
        GeneratorSpec::Caterpillar { spine, legs } => {
            if spine == 0 {
                return Err(bad("caterpillar needs a spine"));
            }
            let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
            for s in 0..spine {
                for l in 0..legs {
                    edges.push((s, spine + s * legs + l));
                }
            }
            tree(spine * (legs + 1), edges)
        }
        GeneratorSpec::Spider { legs, length } => {
            let mut edges = Vec::new();
            for l in 0..legs {
                let base = 1 + l * length;
                for j in 0..length {
                    edges.push((if j == 0 { 0 } else { base + j - 1 }, base + j));
                }
            }
            tree(1 + legs * length, edges)
        }
        GeneratorSpec::PerfectDary { arity, height } => {
            if arity == 0 {
                return Err(bad("arity must be positive"));
            }
            let (n, edges) = dary_edges(arity, height, 0);
            tree(n, edges)
        }
        GeneratorSpec::AdversarialTernaryPath { height } => {
            let (half, mut edges) = dary_edges(3, height, 0);
            edges.extend((half + 1..2 * half).map(|i| (i - 1, i)));
            edges.push((0, half));
            tree(2 * half, edges)
        }
        GeneratorSpec::RandomTreeMaxdeg { n, max_degree, seed } => random_tree_maxdeg(n, max_degree, seed),
        GeneratorSpec::Prufer { n, seed } => prufer(n, seed),
        GeneratorSpec::RandomPartialKtree { n, t, edge_prob, seed } => random_partial_ktree(n, t, edge_prob, seed),
    }
}

fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

fn below(rng: &mut Xoshiro256StarStar, b: usize) -> usize {
    (rng.next_u64() % b as u64) as usize
}

fn random_tree_maxdeg(n: usize, cap: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(bad("random tree needs n >= 1"));
    }
    if cap < 2 && n > 2 || cap == 0 && n > 1 {
        return Err(bad(format!("degree cap {cap} cannot hold a tree on {n} vertices")));
    }
    let mut rng = rng(seed);
    let mut degree = vec![0; n];
    let mut eligible = vec![0usize];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let idx = below(&mut rng, eligible.len());
        let p = eligible[idx];
        edges.push((p, v));
        degree[p] += 1;
        degree[v] = 1;
        if degree[p] >= cap {
            eligible.swap_remove(idx);
        }
        if cap > 1 {
            eligible.push(v);
        }
    }
    tree(n, edges)
}

fn prufer(n: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(bad("Prüfer tree needs n >= 1"));
    }
    if n <= 2 {
        return tree(n, (1..n).map(|i| (0, i)).collect());
    }
    let mut rng = rng(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| below(&mut rng, n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf remains");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    tree(n, edges)
}

fn random_partial_ktree(n: usize, t: usize, edge_prob: f64, seed: u64) -> Result<Instance> {
    if n == 0 || t == 0 {
        return Err(bad("partial k-tree needs n >= 1 and t >= 1"));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(bad("edge probability outside [0, 1]"));
    }
    let threshold = if edge_prob >= 1.0 { u64::MAX } else { (edge_prob * 2f64.powi(64)) as u64 };
    let mut rng = rng(seed);
    let first = t.min(n);
    let mut bags: Vec<Vec<usize>> = vec![(0..first).collect()];
    let mut tree_edges = Vec::new();
    let mut edges = Vec::new();
    let keep = |rng: &mut Xoshiro256StarStar| edge_prob >= 1.0 || rng.next_u64() < threshold;
    for v in 1..first {
        for u in 0..v {
            if keep(&mut rng) {
                edges.push((u, v));
            }
        }
    }
    for v in first..n {
        let parent = below(&mut rng, bags.len());
        let mut bag = bags[parent].clone();
        if !bag.is_empty() {
            bag.remove(below(&mut rng, bag.len()));
        }
        for &u in &bag {
            if keep(&mut rng) {
                edges.push((u, v));
            }
        }
        bag.push(v);
        tree_edges.push((parent, bags.len()));
        bags.push(bag);
    }
    let graph = Graph::new(n, edges)?;
    let td = TreeDecomposition::new(bags, &tree_edges)?;
    Ok(Instance { graph, td: Some(td) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::diameter;
    use crate::treedec::validate;

    #[test]
    fn simple_families() {
        let p = generate(&GeneratorSpec::Path { n: 5 }).unwrap().graph;
        assert_eq!(p.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let s = generate(&GeneratorSpec::Star { n: 6 }).unwrap().graph;
        assert_eq!(s.max_degree(), 5);
        let c = generate(&GeneratorSpec::Caterpillar { spine: 4, legs: 2 }).unwrap().graph;
        assert!(c.is_tree());
        assert_eq!(c.n(), 12);
        assert_eq!(diameter(&c).unwrap(), 5);
        let sp = generate(&GeneratorSpec::Spider { legs: 3, length: 4 }).unwrap().graph;
        assert!(sp.is_tree());
        assert_eq!(diameter(&sp).unwrap(), 8);
        let d = generate(&GeneratorSpec::PerfectDary { arity: 2, height: 3 }).unwrap().graph;
        assert_eq!(d.n(), 15);
        assert_eq!(diameter(&d).unwrap(), 6);
    }

    #[test]
    fn adversarial_height_three() {
        let g = generate(&GeneratorSpec::AdversarialTernaryPath { height: 3 }).unwrap().graph;
        assert_eq!(g.n(), 80);
        assert!(g.is_tree());
        assert_eq!(g.max_degree(), 4);
        // path end to a deepest ternary leaf: 39 + 1 + 3
        assert_eq!(diameter(&g).unwrap(), 43);
    }

    #[test]
    fn random_trees_respect_cap_and_seed() {
        for seed in 0..20 {
            let spec = GeneratorSpec::RandomTreeMaxdeg { n: 200, max_degree: 3, seed };
            let g = generate(&spec).unwrap().graph;
            assert!(g.is_tree());
            assert!(g.max_degree() <= 3);
            assert_eq!(g, generate(&spec).unwrap().graph);
        }
        assert!(generate(&GeneratorSpec::RandomTreeMaxdeg { n: 5, max_degree: 1, seed: 0 }).is_err());
    }

    #[test]
    fn prufer_trees() {
        for n in 1..30 {
            let g = generate(&GeneratorSpec::Prufer { n, seed: n as u64 }).unwrap().graph;
            assert!(g.is_tree());
        }
    }

    #[test]
    fn partial_ktrees_validate() {
        for seed in 0..10 {
            let inst = generate(&GeneratorSpec::RandomPartialKtree { n: 50, t: 3, edge_prob: 0.8, seed }).unwrap();
            let td = inst.td.unwrap();
            validate(&td, &inst.graph).unwrap();
            assert!(td.width() <= 2);
        }
        let small = generate(&GeneratorSpec::RandomPartialKtree { n: 2, t: 4, edge_prob: 1.0, seed: 1 }).unwrap();
        assert_eq!(small.graph.m(), 1);
    }
}
