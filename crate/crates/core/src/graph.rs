//! Undirected simple graphs, cuts and k-sections.
//!
//! Vertices are dense indices `0..n`. File formats and JSON output shift them
//! to `1..=n`.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact rational used for relative diameters and heaviest-path weights.
pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Rejects self-loops, parallel edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{},{}}} has an endpoint outside 1..{n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", u + 1)));
            }
            adj[u].push(v);
            adj[v].push(u);
            list.push((u.min(v), u.max(v)));
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge {{{},{}}}",
                    v + 1,
                    w[0] + 1
                )));
            }
        }
        list.sort_unstable();
        Ok(Graph { adj, edges: list })
    }

    /// Same as [`Graph::new`] but with 1-based endpoints.
    pub fn from_one_based(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut shifted = Vec::new();
        for (u, v) in edges {
            if u == 0 || v == 0 {
                return Err(Error::InvalidGraph("vertex id 0 (ids start at 1)".into()));
            }
            shifted.push((u - 1, v - 1));
        }
        Graph::new(n, shifted)
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff every component is a tree.
    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m() + 1 == self.n() && self.components().len() == 1
    }

    /// Connected components, each sorted, in ascending order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        edges.sort_unstable();
        Graph { adj, edges }
    }

    /// Copy of the graph with the given edges removed (missing edges are ignored).
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut drop: Vec<(usize, usize)> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        drop.sort_unstable();
        let kept = self.edges.iter().copied().filter(|e| drop.binary_search(e).is_err());
        Graph::new(self.n(), kept).expect("subgraph of a simple graph is simple")
    }

    fn with_added_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        Graph::new(self.n(), self.edges.iter().copied().chain(extra.iter().copied()))
    }
}

/// A two-sided cut `(B, W)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub width: usize,
}

impl Cut {
    /// Builds the cut with the given black set; the white set is the rest.
    pub fn from_black(g: &Graph, black: impl IntoIterator<Item = usize>) -> Cut {
        let mut is_black = vec![false; g.n()];
        for v in black {
            is_black[v] = true;
        }
        Cut::from_mask(g, &is_black)
    }

    pub fn from_mask(g: &Graph, is_black: &[bool]) -> Cut {
        let (black, white): (Vec<usize>, Vec<usize>) = (0..g.n()).partition(|&v| is_black[v]);
        let width = g.edges().iter().filter(|&&(u, v)| is_black[u] != is_black[v]).count();
        Cut { black, white, width }
    }

    pub fn black_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.black {
            mask[v] = true;
        }
        mask
    }
}

/// A cut into `k` parts; for a k-section the part sizes are balanced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KSection {
    pub parts: Vec<Vec<usize>>,
    pub width: usize,
}

impl KSection {
    pub fn new(g: &Graph, mut parts: Vec<Vec<usize>>) -> Result<KSection> {
        for p in &mut parts {
            p.sort_unstable();
        }
        let width = cut_width(g, &parts)?;
        Ok(KSection { parts, width })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// True iff every part has between floor(n/k) and ceil(n/k) vertices.
    pub fn is_balanced(&self, n: usize) -> bool {
        let k = self.k();
        if k == 0 {
            return n == 0;
        }
        let lo = n / k;
        let hi = n.div_ceil(k);
        self.parts.iter().all(|p| (lo..=hi).contains(&p.len()))
    }
}

pub fn validate_forest(g: &Graph) -> bool {
    g.is_forest()
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    g.components()
}

/// BFS from `s` restricted to the component of `s`. Returns the visit order
/// plus distance and parent arrays; neighbors are scanned ascending so each
/// vertex's parent is its smallest-id discoverer.
fn bfs(g: &Graph, s: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (order, dist, parent)
}

fn farthest(order: &[usize], dist: &[usize]) -> usize {
    let mut best = order[0];
    for &v in order {
        if dist[v] > dist[best] || (dist[v] == dist[best] && v < best) {
            best = v;
        }
    }
    best
}

/// Double sweep inside the component containing `start`.
fn component_longest_path(g: &Graph, start: usize) -> Vec<usize> {
    let (order, dist, _) = bfs(g, start);
    let a = farthest(&order, &dist);
    let (order, dist, parent) = bfs(g, a);
    let b = farthest(&order, &dist);
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// A longest path of a tree, found by two BFS sweeps. The first sweep starts
/// at vertex 0; ties go to the smaller vertex id.
pub fn longest_path(tree: &Graph) -> Result<Vec<usize>> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(component_longest_path(tree, 0))
}

/// Number of edges on a longest path of a tree.
pub fn diameter(tree: &Graph) -> Result<usize> {
    Ok(longest_path(tree)?.len() - 1)
}

/// Longest path of every component.
fn component_diameters(g: &Graph) -> Vec<(Vec<usize>, Vec<usize>)> {
    g.components()
        .into_iter()
        .map(|comp| {
            let path = component_longest_path(g, comp[0]);
            (comp, path)
        })
        .collect()
}

/// Sum over components of the number of vertices on a longest path, divided
/// by n. An empty graph has relative diameter 1.
pub fn relative_diameter(g: &Graph) -> Result<Rational> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    if g.n() == 0 {
        return Ok(Rational::from_integer(1));
    }
    Ok(Rational::new(longest_path_vertex_total(g) as u64, g.n() as u64))
}

/// Numerator of the relative diameter: total number of vertices on longest
/// paths of all components. Caller guarantees `g` is a forest.
pub(crate) fn longest_path_vertex_total(g: &Graph) -> usize {
    component_diameters(g).iter().map(|(_, p)| p.len()).sum()
}

/// Number of edges whose endpoints lie in different parts.
pub fn cut_width(g: &Graph, parts: &[Vec<usize>]) -> Result<usize> {
    let assignment = part_assignment(g.n(), parts)?;
    Ok(g.edges().iter().filter(|&&(u, v)| assignment[u] != assignment[v]).count())
}

/// Maps each vertex to the index of its part, checking that `parts` is a
/// partition of `0..n`.
pub fn part_assignment(n: usize, parts: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut assignment = vec![usize::MAX; n];
    for (idx, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= n {
                return Err(Error::NotAPartition(format!("vertex {} out of range", v + 1)));
            }
            if assignment[v] != usize::MAX {
                return Err(Error::NotAPartition(format!("vertex {} appears twice", v + 1)));
            }
            assignment[v] = idx;
        }
    }
    if let Some(v) = assignment.iter().position(|&a| a == usize::MAX) {
        return Err(Error::NotAPartition(format!("vertex {} is in no part", v + 1)));
    }
    Ok(assignment)
}

/// Joins the components of a forest into one tree by linking the end of a
/// longest path of each component to the start of a longest path of the
/// next. Relative diameter is unchanged, and so is the maximum degree when it
/// is at least 2.
pub fn link_components(g: &Graph) -> Result<Graph> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let paths = component_diameters(g);
    let extra: Vec<(usize, usize)> = paths
        .windows(2)
        .map(|w| (*w[0].1.last().expect("nonempty path"), w[1].1[0]))
        .collect();
    g.with_added_edges(&extra)
}
