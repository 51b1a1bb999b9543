//! Tree decompositions: validation, induced decompositions, nonredundant
//! normalization, heaviest paths and cluster-removal splits.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result, TdViolation};
use crate::graph::{Graph, Rational};

/// A tree `T` on nodes `0..len` with one cluster (bag) of graph vertices per
/// node. Bags are kept sorted; empty bags are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Builds a decomposition from bags and tree edges. Only checks that the
    /// node graph is a tree; use [`validate`] against a graph for T1-T3.
    pub fn new(bags: Vec<Vec<usize>>, tree_edges: &[(usize, usize)]) -> Result<Self> {
        let len = bags.len();
        if len == 0 {
            return Err(Error::InvalidDecomposition(TdViolation::Empty));
        }
        let mut adj = vec![Vec::new(); len];
        for &(i, j) in tree_edges {
            if i >= len || j >= len || i == j {
                return Err(Error::InvalidDecomposition(TdViolation::NotATree));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut bags = bags;
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let td = TreeDecomposition { bags, adj };
        if tree_edges.len() + 1 != len || td.bfs_order(0).len() != len {
            return Err(Error::InvalidDecomposition(TdViolation::NotATree));
        }
        Ok(td)
    }

    /// The single-bag decomposition `({0}, {V})`.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition { bags: vec![(0..n).collect()], adj: vec![Vec::new()] }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&j| i < j).map(|&j| (i, j)));
        }
        out
    }

    /// Maximum bag size minus one (`-1` is reported as 0 for all-empty bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Number of nodes plus the total bag size.
    pub fn size(&self) -> usize {
        self.len() + self.bags.iter().map(Vec::len).sum::<usize>()
    }

    /// Largest vertex id mentioned plus one.
    pub fn vertex_bound(&self) -> usize {
        self.bags.iter().filter_map(|b| b.last()).map(|&v| v + 1).max().unwrap_or(0)
    }

    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// BFS order from `root` together with each node's parent (`usize::MAX`
    /// for the root).
    pub(crate) fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let order = self.bfs_order(root);
        let mut parent = vec![usize::MAX; self.len()];
        for &u in &order {
            for &w in &self.adj[u] {
                if w != parent[u] {
                    parent[w] = u;
                }
            }
        }
        (order, parent)
    }

    /// Node sequence of the unique path from `a` to `b` in the tree.
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        let (_, parent) = self.rooted(a);
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Same tree, every bag intersected with `keep` (vertex ids unchanged).
    pub fn induced(&self, keep: &[bool]) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().copied().filter(|&v| v < keep.len() && keep[v]).collect())
            .collect();
        TreeDecomposition { bags, adj: self.adj.clone() }
    }

    /// Decomposition of the subgraph induced by `vertices`, renumbered so that
    /// local vertex `i` is `vertices[i]` (matches [`Graph::induced`]).
    pub fn induced_on(&self, vertices: &[usize]) -> TreeDecomposition {
        let bound = self.vertex_bound().max(vertices.iter().map(|&v| v + 1).max().unwrap_or(0));
        let mut local = vec![usize::MAX; bound];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let bags = self
            .bags
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&v| local[v]).filter(|&l| l != usize::MAX).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        TreeDecomposition { bags, adj: self.adj.clone() }
    }

    fn is_nonredundant_edge(&self, i: usize, j: usize) -> bool {
        !is_subset(&self.bags[i], &self.bags[j]) && !is_subset(&self.bags[j], &self.bags[i])
    }

    /// True iff no bag is contained in a neighboring bag.
    pub fn is_nonredundant(&self) -> bool {
        self.tree_edges().into_iter().all(|(i, j)| self.is_nonredundant_edge(i, j))
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Nodes whose bag contains `v`, per vertex.
fn occurrences(td: &TreeDecomposition, n: usize) -> Vec<Vec<usize>> {
    let mut occ = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v < n {
                occ[v].push(i);
            }
        }
    }
    occ
}

/// Checks T1 (vertex coverage), T2 (edge coverage) and T3 (each vertex's
/// nodes induce a subtree). The error carries a 1-based witness.
pub fn validate(td: &TreeDecomposition, g: &Graph) -> Result<()> {
    let n = g.n();
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidDecomposition(TdViolation::VertexOutOfRange { node: i + 1, vertex: v + 1 }));
        }
    }
    let occ = occurrences(td, n);
    if let Some(v) = occ.iter().position(Vec::is_empty) {
        return Err(Error::InvalidDecomposition(TdViolation::T1 { vertex: v + 1 }));
    }
    for &(u, v) in g.edges() {
        if !occ[u].iter().any(|&i| td.bags[i].binary_search(&v).is_ok()) {
            return Err(Error::InvalidDecomposition(TdViolation::T2 { u: u + 1, v: v + 1 }));
        }
    }
    let mut member = vec![false; td.len()];
    for (v, nodes) in occ.iter().enumerate() {
        for &i in nodes {
            member[i] = true;
        }
        let internal_edges: usize =
            nodes.iter().map(|&i| td.adj[i].iter().filter(|&&j| member[j]).count()).sum::<usize>() / 2;
        if internal_edges + 1 != nodes.len() {
            let witness = t3_witness(td, nodes, &member);
            for &i in nodes {
                member[i] = false;
            }
            let (i, j, h) = witness;
            return Err(Error::InvalidDecomposition(TdViolation::T3 { vertex: v + 1, i: i + 1, j: j + 1, h: h + 1 }));
        }
        for &i in nodes {
            member[i] = false;
        }
    }
    Ok(())
}

/// Two nodes containing the vertex in different pieces and a node between
/// them that does not.
fn t3_witness(td: &TreeDecomposition, nodes: &[usize], member: &[bool]) -> (usize, usize, usize) {
    let start = nodes[0];
    let mut reached = vec![false; td.len()];
    reached[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &td.adj[u] {
            if member[w] && !reached[w] {
                reached[w] = true;
                queue.push_back(w);
            }
        }
    }
    let other = *nodes.iter().find(|&&j| !reached[j]).expect("disconnected occurrence set");
    let path = td.tree_path(start, other);
    let h = *path.iter().find(|&&h| !member[h]).expect("gap on path");
    (start, other, h)
}

/// Same tree with each bag intersected with `keep`.
pub fn induced(td: &TreeDecomposition, keep: &[bool]) -> TreeDecomposition {
    td.induced(keep)
}

/// Contracts every tree edge whose bags are nested, absorbing the smaller
/// bag into the larger (for equal bags the higher node id is absorbed).
/// Surviving nodes are renumbered in order of their original ids.
pub fn make_nonredundant(td: &TreeDecomposition) -> TreeDecomposition {
    let len = td.len();
    let mut adj: Vec<BTreeSet<usize>> = td.adj.iter().map(|nb| nb.iter().copied().collect()).collect();
    let mut alive = vec![true; len];
    let mut queue: VecDeque<(usize, usize)> = td.tree_edges().into_iter().collect();
    while let Some((i, j)) = queue.pop_front() {
        if !alive[i] || !alive[j] || !adj[i].contains(&j) {
            continue;
        }
        let (bi, bj) = (&td.bags[i], &td.bags[j]);
        let (gone, keep) = if is_subset(bi, bj) && (bi.len() < bj.len() || i > j) {
            (i, j)
        } else if is_subset(bj, bi) {
            (j, i)
        } else {
            continue;
        };
        alive[gone] = false;
        let moved: Vec<usize> = adj[gone].iter().copied().filter(|&w| w != keep).collect();
        adj[gone].clear();
        adj[keep].remove(&gone);
        for w in moved {
            adj[w].remove(&gone);
            adj[w].insert(keep);
            adj[keep].insert(w);
            queue.push_back((keep.min(w), keep.max(w)));
        }
    }
    let mut new_id = vec![usize::MAX; len];
    let mut bags = Vec::new();
    for i in (0..len).filter(|&i| alive[i]) {
        new_id[i] = bags.len();
        bags.push(td.bags[i].clone());
    }
    let adj = (0..len)
        .filter(|&i| alive[i])
        .map(|i| adj[i].iter().map(|&w| new_id[w]).collect())
        .collect();
    TreeDecomposition { bags, adj }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeaviestPathResult {
    /// Node sequence of the path.
    pub path: Vec<usize>,
    /// Number of distinct vertices in the bags along the path.
    pub weight: usize,
    /// `weight / n`.
    pub relative_weight: Rational,
}

/// Number of distinct vertices in the bags of `nodes`.
pub fn path_weight(td: &TreeDecomposition, nodes: &[usize]) -> usize {
    let mut all: Vec<usize> = nodes.iter().flat_map(|&i| td.bags[i].iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// A path of the decomposition tree covering the most vertices.
///
/// Along any tree path the nodes containing a fixed vertex form a subpath, so
/// the path weight equals the sum of bag sizes minus the sum of
/// intersections of consecutive bags. That turns the problem into a maximum
/// node/edge-weighted path, solved by a rerooting DP. Among optimal paths the
/// lexicographically smallest (start, end) node pair is returned.
pub fn heaviest_path(td: &TreeDecomposition, n: usize) -> HeaviestPathResult {
    let len = td.len();
    let node_w: Vec<i64> = td.bags.iter().map(|b| b.len() as i64).collect();
    let (order, parent) = td.rooted(0);
    let edge_w = |a: usize, b: usize| intersection_size(&td.bags[a], &td.bags[b]) as i64;
    let up_edge: Vec<i64> = (0..len).map(|u| if parent[u] == usize::MAX { 0 } else { edge_w(u, parent[u]) }).collect();

    // best path starting at u and staying in u's subtree
    let mut down = node_w.clone();
    for &u in order.iter().rev() {
        for &c in &td.adj[u] {
            if c != parent[u] {
                down[u] = down[u].max(node_w[u] + down[c] - up_edge[c]);
            }
        }
    }
    // best path starting at u whose first step goes to the parent
    let mut up = vec![i64::MIN; len];
    for &u in &order {
        let children: Vec<usize> = td.adj[u].iter().copied().filter(|&c| c != parent[u]).collect();
        let via_parent = if parent[u] == usize::MAX { 0 } else { (up[u] - node_w[u]).max(0) };
        let gains: Vec<i64> = children.iter().map(|&c| down[c] - up_edge[c]).collect();
        let (mut first, mut second) = (i64::MIN, i64::MIN);
        for &gain in &gains {
            if gain > first {
                second = first;
                first = gain;
            } else if gain > second {
                second = gain;
            }
        }
        for (idx, &c) in children.iter().enumerate() {
            let sibling = if gains[idx] == first { second } else { first };
            let best_from_u = node_w[u] + via_parent.max(sibling.max(0));
            up[c] = node_w[c] - up_edge[c] + best_from_u;
        }
    }
    let best_from: Vec<i64> = (0..len).map(|u| down[u].max(up[u])).collect();
    let best = *best_from.iter().max().expect("nonempty tree");
    let start = (0..len).find(|&u| best_from[u] == best).expect("max exists");

    let (ord, par) = td.rooted(start);
    let mut acc = vec![0i64; len];
    for &u in &ord {
        acc[u] = if par[u] == usize::MAX { node_w[u] } else { acc[par[u]] + node_w[u] - edge_w(u, par[u]) };
    }
    let end = (0..len).find(|&u| acc[u] == best).expect("optimal end");
    let path = td.tree_path(start, end);
    let weight = path_weight(td, &path);
    debug_assert_eq!(weight as i64, best);
    HeaviestPathResult { path, weight, relative_weight: relative(weight, n) }
}

pub(crate) fn relative(weight: usize, n: usize) -> Rational {
    if n == 0 {
        Rational::from_integer(1)
    } else {
        Rational::new(weight as u64, n as u64)
    }
}

/// Relative weight of a heaviest path.
pub fn heaviest_path_ratio(td: &TreeDecomposition, n: usize) -> Rational {
    heaviest_path(td, n).relative_weight
}

/// Edges of `g` with at least one endpoint in the bag of node `i`.
pub fn cluster_incident_edges(td: &TreeDecomposition, g: &Graph, i: usize) -> Vec<(usize, usize)> {
    let bag = &td.bags[i];
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| bag.binary_search(&u).is_ok() || bag.binary_search(&v).is_ok())
        .collect()
}

/// The parts left after deleting the edges touching bag `i`: one singleton per
/// bag vertex (ascending), then for each tree neighbor of `i` (ascending) the
/// vertices of that branch outside the bag. Branch parts may be empty.
pub fn remove_cluster_parts(td: &TreeDecomposition, i: usize) -> Vec<Vec<usize>> {
    let bag = &td.bags[i];
    let mut parts: Vec<Vec<usize>> = bag.iter().map(|&v| vec![v]).collect();
    for &start in &td.adj[i] {
        let mut seen = BTreeSet::new();
        let mut stack = vec![(start, i)];
        while let Some((u, from)) = stack.pop() {
            seen.extend(td.bags[u].iter().copied().filter(|v| bag.binary_search(v).is_err()));
            stack.extend(td.adj[u].iter().filter(|&&w| w != from).map(|&w| (w, u)));
        }
        parts.push(seen.into_iter().collect());
    }
    parts
}
