#![allow(dead_code)]

use ksection::graph::{Graph, Rational};
use ksection::instances::{generate, GeneratorSpec};
use ksection::treedec::{heaviest_path_ratio, TreeDecomposition};

/// AHU encoding of the tree rooted at `root`.
fn encode(g: &Graph, root: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g.neighbors(root).iter().filter(|&&w| w != parent).map(|&w| encode(g, w, root)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in g.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Canonical form of a free tree.
pub fn canonical(g: &Graph) -> String {
    centers(g).into_iter().map(|c| encode(g, c, usize::MAX)).min().unwrap_or_default()
}

/// All trees on `n` vertices up to isomorphism, grown leaf by leaf.
pub fn all_free_trees(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = std::collections::BTreeMap::new();
        for t in &level {
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let g = Graph::new(size, edges).unwrap();
                seen.entry(canonical(&g)).or_insert(g);
            }
        }
        level = seen.into_values().collect();
    }
    if n == 0 {
        Vec::new()
    } else {
        level
    }
}

/// Minimum cut width for every black-set size, by trying all subsets.
pub fn subset_min_widths(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best = vec![usize::MAX; n + 1];
    for mask in 0u32..(1 << n) {
        let width = g.edges().iter().filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count();
        let c = mask.count_ones() as usize;
        best[c] = best[c].min(width);
    }
    best
}

/// Small deterministic generator for test parameters (SplitMix64).
pub struct Params(u64);

impl Params {
    pub fn new(seed: u64) -> Self {
        Params(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next() % (hi - lo + 1) as u64) as usize
    }
}

pub fn random_tree(n: usize, max_degree: usize, seed: u64) -> Graph {
    generate(&GeneratorSpec::RandomTreeMaxdeg { n, max_degree, seed }).unwrap().graph
}

/// Random tree with `cuts` of its edges deleted.
pub fn random_forest(n: usize, max_degree: usize, cuts: usize, seed: u64) -> Graph {
    let t = random_tree(n, max_degree, seed);
    let mut p = Params::new(seed ^ 0xF0F0);
    let mut edges = t.edges().to_vec();
    for _ in 0..cuts.min(edges.len()) {
        let i = p.range(0, edges.len() - 1);
        edges.swap_remove(i);
    }
    Graph::new(n, edges).unwrap()
}

pub fn partial_ktree(n: usize, t: usize, seed: u64) -> (Graph, TreeDecomposition) {
    let inst = generate(&GeneratorSpec::RandomPartialKtree { n, t, edge_prob: 0.7, seed }).unwrap();
    (inst.graph, inst.td.unwrap())
}

/// Relative heaviest-path weight of `td` restricted to `keep`.
pub fn restricted_ratio(td: &TreeDecomposition, keep: &[usize], n: usize) -> Rational {
    let mut mask = vec![false; n];
    for &v in keep {
        mask[v] = true;
    }
    heaviest_path_ratio(&td.induced(&mask), keep.len())
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Same decomposition with redundant nodes added: every tree edge is
/// subdivided by a node holding the intersection of its ends, and every node
/// gets a pendant copy of the first half of its bag.
pub fn with_redundant_nodes(td: &TreeDecomposition) -> TreeDecomposition {
    let mut bags: Vec<Vec<usize>> = td.bags().to_vec();
    let mut edges = Vec::new();
    for (i, j) in td.tree_edges() {
        let mid: Vec<usize> = td.bag(i).iter().copied().filter(|v| td.bag(j).contains(v)).collect();
        bags.push(mid);
        edges.push((i, bags.len() - 1));
        edges.push((bags.len() - 1, j));
    }
    for i in 0..td.len() {
        let bag = td.bag(i);
        bags.push(bag[..bag.len() / 2].to_vec());
        edges.push((i, bags.len() - 1));
    }
    TreeDecomposition::new(bags, &edges).unwrap()
}
