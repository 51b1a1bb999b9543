//! Exact reference computations: minimum-width cuts with a prescribed black
//! set size (dynamic programs over forests and over tree decompositions) and
//! exhaustive minimum k-section search.
//!
//! Both dynamic programs merge children with a knapsack-style convolution
//! over black counts, capped at the requested size `m`. Only the final table
//! of every tree node is kept; the witness is rebuilt top-down by redoing the
//! merges of one node at a time.

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, KSection};
use crate::treedec::TreeDecomposition;

const INF: u32 = u32::MAX / 4;

/// Resource limits for the exact searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph accepted by [`brute_min_ksection`].
    pub brute_max_n: usize,
    /// Largest decomposition width accepted by [`dp_min_size_cut_td`].
    pub td_max_width: usize,
    /// Rough cap on dynamic-programming table memory.
    pub max_mem_mb: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { brute_max_n: 14, td_max_width: 12, max_mem_mb: 2048 }
    }
}

impl Limits {
    /// Defaults, with the memory cap taken from `KSEC_MAX_MEM_MB` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(mb) = std::env::var("KSEC_MAX_MEM_MB").ok().and_then(|s| s.parse().ok()) {
            limits.max_mem_mb = mb;
        }
        limits
    }

    fn check_memory(&self, entries: usize) -> Result<()> {
        let needed_mb = entries.saturating_mul(std::mem::size_of::<u32>()) >> 20;
        if needed_mb > self.max_mem_mb {
            return Err(Error::MemoryLimit { needed_mb, limit_mb: self.max_mem_mb });
        }
        Ok(())
    }
}

/// `out[a + b] = min(left[a] + right[b])`, truncated to `cap + 1` entries.
fn convolve(left: &[u32], right: &[u32], cap: usize) -> Vec<u32> {
    let len = (left.len() + right.len() - 1).min(cap + 1);
    let mut out = vec![INF; len];
    for (a, &x) in left.iter().enumerate() {
        if x >= INF {
            continue;
        }
        for (b, &y) in right.iter().enumerate().take(len - a) {
            let s = x + y;
            if s < out[a + b] {
                out[a + b] = s;
            }
        }
    }
    out
}

/// Finds `(a, b)` with `a + b = total` and `left[a] + right[b] = target`,
/// smallest `b` first.
fn split(left: &[u32], right: &[u32], total: usize, target: u32) -> (usize, usize) {
    (0..right.len())
        .filter(|&b| b <= total && total - b < left.len())
        .find(|&b| left[total - b] < INF && right[b] < INF && left[total - b] + right[b] == target)
        .map(|b| (total - b, b))
        .expect("table entry has a witness")
}

/// Per-vertex tables for the forest DP: `tables[v][color][c]` is the fewest
/// cut edges inside the subtree of `v` with `c` black vertices and `v`
/// colored `color` (1 = black).
struct ForestDp<'a> {
    g: &'a Graph,
    m: usize,
    children: Vec<Vec<usize>>,
    tables: Vec<[Vec<u32>; 2]>,
}

impl<'a> ForestDp<'a> {
    fn leaf_table(&self, color: usize) -> Vec<u32> {
        if color == 1 {
            if self.m == 0 {
                vec![INF]
            } else {
                vec![INF, 0]
            }
        } else {
            vec![0]
        }
    }

    /// Best contribution of child `c` when its parent has `color`.
    fn child_gain(&self, c: usize, color: usize) -> Vec<u32> {
        let [w, b] = &self.tables[c];
        let len = w.len().max(b.len());
        (0..len)
            .map(|i| {
                let same = if color == 0 { w.get(i) } else { b.get(i) }.copied().unwrap_or(INF);
                let other = if color == 0 { b.get(i) } else { w.get(i) }.copied().unwrap_or(INF);
                same.min(other.saturating_add(1))
            })
            .collect()
    }

    fn build(&mut self, order: &[usize]) {
        for &v in order.iter().rev() {
            let mut pair = [Vec::new(), Vec::new()];
            for (color, slot) in pair.iter_mut().enumerate() {
                let mut acc = self.leaf_table(color);
                for &c in &self.children[v] {
                    acc = convolve(&acc, &self.child_gain(c, color), self.m);
                }
                *slot = acc;
            }
            self.tables[v] = pair;
        }
    }

    fn reconstruct(&self, v: usize, color: usize, count: usize, is_black: &mut [bool]) {
        let mut stack = vec![(v, color, count)];
        while let Some((v, color, count)) = stack.pop() {
            is_black[v] = color == 1;
            let gains: Vec<Vec<u32>> = self.children[v].iter().map(|&c| self.child_gain(c, color)).collect();
            let mut prefixes = vec![self.leaf_table(color)];
            for gain in &gains {
                let next = convolve(prefixes.last().expect("nonempty"), gain, self.m);
                prefixes.push(next);
            }
            let mut remaining = count;
            let mut target = prefixes.last().expect("nonempty")[remaining];
            for (idx, &c) in self.children[v].iter().enumerate().rev() {
                let (rest, mine) = split(&prefixes[idx], &gains[idx], remaining, target);
                let child_cost = gains[idx][mine];
                let [w, b] = &self.tables[c];
                let same = if color == 0 { w } else { b };
                let child_color = if same.get(mine).copied().unwrap_or(INF) == child_cost { color } else { 1 - color };
                stack.push((c, child_color, mine));
                target -= child_cost;
                remaining = rest;
            }
        }
    }
}

/// Minimum-width cut `(B, W)` of a forest with `|B| = m`, by dynamic
/// programming in `O(n m)` time.
pub fn dp_min_size_cut_tree(forest: &Graph, m: usize) -> Result<(Cut, usize)> {
    dp_min_size_cut_tree_with(forest, m, &Limits::from_env())
}

pub fn dp_min_size_cut_tree_with(forest: &Graph, m: usize, limits: &Limits) -> Result<(Cut, usize)> {
    let n = forest.n();
    if m > n {
        return Err(Error::MOutOfRange { m, lo: 0, hi: n });
    }
    if !forest.is_forest() {
        return Err(Error::NotAForest);
    }
    limits.check_memory(2 * n * (m + 1))?;

    let comps = forest.components();
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for comp in &comps {
        let root = comp[0];
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in forest.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    children[u].push(w);
                    order.push(w);
                }
            }
        }
    }
    let mut dp = ForestDp { g: forest, m, children, tables: vec![[Vec::new(), Vec::new()]; n] };
    dp.build(&order);

    // knapsack across components
    let root_best: Vec<Vec<u32>> = comps
        .iter()
        .map(|c| {
            let [w, b] = &dp.tables[c[0]];
            (0..w.len().max(b.len()))
                .map(|i| w.get(i).copied().unwrap_or(INF).min(b.get(i).copied().unwrap_or(INF)))
                .collect()
        })
        .collect();
    let mut prefixes = vec![vec![0u32]];
    for best in &root_best {
        let next = convolve(prefixes.last().expect("nonempty"), best, m);
        prefixes.push(next);
    }
    let total = prefixes.last().expect("nonempty").get(m).copied().unwrap_or(INF);
    if total >= INF {
        return Err(Error::Internal(format!("no cut with {m} black vertices")));
    }
    let mut is_black = vec![false; n];
    let mut remaining = m;
    let mut target = total;
    for (idx, comp) in comps.iter().enumerate().rev() {
        let (rest, mine) = split(&prefixes[idx], &root_best[idx], remaining, target);
        let cost = root_best[idx][mine];
        let root = comp[0];
        let white = dp.tables[root][0].get(mine).copied().unwrap_or(INF);
        let color = if white == cost { 0 } else { 1 };
        dp.reconstruct(root, color, mine, &mut is_black);
        target -= cost;
        remaining = rest;
    }
    let cut = Cut::from_mask(dp.g, &is_black);
    if cut.width != total as usize || cut.black.len() != m {
        return Err(Error::Internal("forest DP witness does not match its value".into()));
    }
    Ok((cut, total as usize))
}

/// Rooted view of a decomposition prepared for the cut DP.
struct TdDp<'a> {
    td: &'a TreeDecomposition,
    m: usize,
    children: Vec<Vec<usize>>,
    /// Per node: (edges whose highest bag is this node as local bit pairs,
    /// bitmask of bag vertices whose highest bag is this node).
    local_edges: Vec<Vec<(usize, usize)>>,
    own_mask: Vec<u32>,
    /// Per child: bits of the parent bag shared with the child, and for each
    /// child bit the matching parent bit (or `None`).
    shared: Vec<u32>,
    child_to_parent_bit: Vec<Vec<Option<usize>>>,
    /// `tables[u][mask]` over black counts of vertices topped in u's subtree.
    tables: Vec<Vec<Vec<u32>>>,
}

impl<'a> TdDp<'a> {
    fn base(&self, u: usize, mask: u32) -> Vec<u32> {
        let cut = self.local_edges[u]
            .iter()
            .filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1))
            .count() as u32;
        let count = (mask & self.own_mask[u]).count_ones() as usize;
        if count > self.m {
            return vec![INF];
        }
        let mut out = vec![INF; count + 1];
        out[count] = cut;
        out
    }

    fn restrict(&self, child: usize, child_mask: u32) -> u32 {
        let mut key = 0u32;
        for (bit, p) in self.child_to_parent_bit[child].iter().enumerate() {
            if let Some(pb) = p {
                if child_mask >> bit & 1 == 1 {
                    key |= 1 << pb;
                }
            }
        }
        key
    }

    /// Best child table compatible with parent assignment `key`.
    fn projection(&self, child: usize, key: u32) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for (mask, row) in self.tables[child].iter().enumerate() {
            if self.restrict(child, mask as u32) != key {
                continue;
            }
            if out.len() < row.len() {
                out.resize(row.len(), INF);
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o = (*o).min(x);
            }
        }
        if out.is_empty() {
            out.push(INF);
        }
        out
    }

    fn build(&mut self, order: &[usize]) {
        for &u in order.iter().rev() {
            let bits = self.td.bag(u).len();
            let projections: Vec<std::collections::HashMap<u32, Vec<u32>>> = self.children[u]
                .iter()
                .map(|&c| {
                    let mut map = std::collections::HashMap::new();
                    for mask in 0..(1u32 << self.td.bag(c).len()) {
                        let key = self.restrict(c, mask);
                        map.entry(key).or_insert_with(|| self.projection(c, key));
                    }
                    map
                })
                .collect();
            let table: Vec<Vec<u32>> = (0..(1u32 << bits))
                .map(|mask| {
                    let mut acc = self.base(u, mask);
                    for (idx, &c) in self.children[u].iter().enumerate() {
                        let key = mask & self.shared[c];
                        acc = convolve(&acc, &projections[idx][&key], self.m);
                    }
                    acc
                })
                .collect();
            self.tables[u] = table;
        }
    }

    fn reconstruct(&self, root: usize, mask: u32, count: usize, is_black: &mut [bool]) {
        let mut stack = vec![(root, mask, count)];
        while let Some((u, mask, count)) = stack.pop() {
            for (bit, &v) in self.td.bag(u).iter().enumerate() {
                is_black[v] = mask >> bit & 1 == 1;
            }
            let projections: Vec<Vec<u32>> =
                self.children[u].iter().map(|&c| self.projection(c, mask & self.shared[c])).collect();
            let mut prefixes = vec![self.base(u, mask)];
            for p in &projections {
                let next = convolve(prefixes.last().expect("nonempty"), p, self.m);
                prefixes.push(next);
            }
            let mut remaining = count;
            let mut target = prefixes.last().expect("nonempty")[remaining];
            for (idx, &c) in self.children[u].iter().enumerate().rev() {
                let (rest, mine) = split(&prefixes[idx], &projections[idx], remaining, target);
                let cost = projections[idx][mine];
                let key = mask & self.shared[c];
                let child_mask = (0..self.tables[c].len() as u32)
                    .find(|&cm| {
                        self.restrict(c, cm) == key && self.tables[c][cm as usize].get(mine).copied() == Some(cost)
                    })
                    .expect("child witness");
                stack.push((c, child_mask, mine));
                target -= cost;
                remaining = rest;
            }
        }
    }
}

/// Minimum-width cut `(B, W)` with `|B| = m`, by dynamic programming over a
/// tree decomposition of `g`. Time and memory grow as `2^(width+1) n m`.
pub fn dp_min_size_cut_td(g: &Graph, td: &TreeDecomposition, m: usize) -> Result<(Cut, usize)> {
    dp_min_size_cut_td_with(g, td, m, &Limits::from_env())
}

pub fn dp_min_size_cut_td_with(g: &Graph, td: &TreeDecomposition, m: usize, limits: &Limits) -> Result<(Cut, usize)> {
    let n = g.n();
    if m > n {
        return Err(Error::MOutOfRange { m, lo: 0, hi: n });
    }
    let width = td.width();
    if width > limits.td_max_width {
        return Err(Error::WidthTooLarge { width, limit: limits.td_max_width });
    }
    crate::treedec::validate(td, g)?;

    let (order, parent) = td.rooted(0);
    let mut depth = vec![0usize; td.len()];
    for &u in &order {
        if parent[u] != usize::MAX {
            depth[u] = depth[parent[u]] + 1;
        }
    }
    let mut top = vec![usize::MAX; n];
    for &u in &order {
        for &v in td.bag(u) {
            if top[v] == usize::MAX {
                top[v] = u;
            }
        }
    }
    let bit_of = |u: usize, v: usize| td.bag(u).binary_search(&v).expect("vertex in bag");
    let mut local_edges = vec![Vec::new(); td.len()];
    for &(a, b) in g.edges() {
        let u = if depth[top[a]] >= depth[top[b]] { top[a] } else { top[b] };
        local_edges[u].push((bit_of(u, a), bit_of(u, b)));
    }
    let own_mask: Vec<u32> = (0..td.len())
        .map(|u| {
            td.bag(u).iter().enumerate().filter(|&(_, &v)| top[v] == u).fold(0u32, |acc, (bit, _)| acc | 1 << bit)
        })
        .collect();
    let mut children = vec![Vec::new(); td.len()];
    let mut shared = vec![0u32; td.len()];
    let mut child_to_parent_bit = vec![Vec::new(); td.len()];
    for &u in &order {
        if parent[u] == usize::MAX {
            continue;
        }
        let p = parent[u];
        children[p].push(u);
        let map: Vec<Option<usize>> = td.bag(u).iter().map(|&v| td.bag(p).binary_search(&v).ok()).collect();
        shared[u] = map.iter().flatten().fold(0u32, |acc, &b| acc | 1 << b);
        child_to_parent_bit[u] = map;
    }
    let entries: usize = (0..td.len()).map(|u| (1usize << td.bag(u).len()) * (m + 1)).sum();
    limits.check_memory(entries)?;

    let mut dp = TdDp {
        td,
        m,
        children,
        local_edges,
        own_mask,
        shared,
        child_to_parent_bit,
        tables: vec![Vec::new(); td.len()],
    };
    dp.build(&order);
    let root = order[0];
    let (best_mask, total) = dp.tables[root]
        .iter()
        .enumerate()
        .map(|(mask, row)| (mask as u32, row.get(m).copied().unwrap_or(INF)))
        .min_by_key(|&(mask, cost)| (cost, mask))
        .expect("root table");
    if total >= INF {
        return Err(Error::Internal(format!("no cut with {m} black vertices")));
    }
    let mut is_black = vec![false; n];
    dp.reconstruct(root, best_mask, m, &mut is_black);
    let cut = Cut::from_mask(g, &is_black);
    if cut.width != total as usize || cut.black.len() != m {
        return Err(Error::Internal("decomposition DP witness does not match its value".into()));
    }
    Ok((cut, total as usize))
}

/// Minimum k-section by exhaustive search with branch-and-bound. Parts are
/// filled in first-use order so each unordered partition is visited once.
pub fn brute_min_ksection(g: &Graph, k: usize) -> Result<(KSection, usize)> {
    brute_min_ksection_with(g, k, &Limits::default())
}

pub fn brute_min_ksection_with(g: &Graph, k: usize, limits: &Limits) -> Result<(KSection, usize)> {
    let n = g.n();
    if k == 0 {
        return Err(Error::KOutOfRange(k));
    }
    if n > limits.brute_max_n {
        return Err(Error::TooLarge { n, limit: limits.brute_max_n });
    }
    let lo = n / k;
    let hi = n.div_ceil(k);
    let big_parts = n % k;

    struct Search<'a> {
        g: &'a Graph,
        k: usize,
        lo: usize,
        hi: usize,
        big_allowed: usize,
        assign: Vec<usize>,
        sizes: Vec<usize>,
        best: usize,
        best_assign: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, v: usize, used: usize, big: usize, width: usize) {
            if width >= self.best {
                return;
            }
            let n = self.g.n();
            if v == n {
                if used == self.k || (self.lo == 0 && used <= self.k) {
                    self.best = width;
                    self.best_assign = self.assign.clone();
                }
                return;
            }
            // enough vertices left to fill the remaining parts to the lower size
            let deficit: usize = self.sizes[..used].iter().map(|&s| self.lo.saturating_sub(s)).sum::<usize>()
                + (self.k - used) * self.lo;
            if n - v < deficit {
                return;
            }
            for p in 0..(used + 1).min(self.k) {
                let size = self.sizes[p];
                if size == self.hi {
                    continue;
                }
                let grows_big = self.hi > self.lo && size + 1 == self.hi;
                if grows_big && big == self.big_allowed {
                    continue;
                }
                let extra = self.g.neighbors(v).iter().filter(|&&w| w < v && self.assign[w] != p).count();
                self.assign[v] = p;
                self.sizes[p] += 1;
                self.go(v + 1, used.max(p + 1), big + grows_big as usize, width + extra);
                self.sizes[p] -= 1;
            }
            self.assign[v] = usize::MAX;
        }
    }

    let mut s = Search {
        g,
        k,
        lo,
        hi,
        big_allowed: big_parts,
        assign: vec![usize::MAX; n],
        sizes: vec![0; k],
        best: usize::MAX,
        best_assign: Vec::new(),
    };
    s.go(0, 0, 0, 0);
    if s.best == usize::MAX {
        return Err(Error::Internal("no balanced partition found".into()));
    }
    let mut parts = vec![Vec::new(); k];
    for (v, &p) in s.best_assign.iter().enumerate() {
        parts[p].push(v);
    }
    let ks = KSection::new(g, parts)?;
    Ok((ks, s.best))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn tree_dp_on_paths() {
        let g = path(7);
        for m in 0..=7 {
            let (cut, w) = dp_min_size_cut_tree(&g, m).unwrap();
            assert_eq!(cut.black.len(), m);
            assert_eq!(w, usize::from(m != 0 && m != 7));
        }
        assert!(dp_min_size_cut_tree(&g, 8).is_err());
    }

    #[test]
    fn tree_dp_on_star() {
        let (cut, w) = dp_min_size_cut_tree(&star(6), 3).unwrap();
        assert_eq!(w, 3);
        assert_eq!(cut.width, 3);
    }

    #[test]
    fn tree_dp_on_forest() {
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert_eq!(dp_min_size_cut_tree(&g, 3).unwrap().1, 0);
        assert_eq!(dp_min_size_cut_tree(&g, 2).unwrap().1, 1);
    }

    #[test]
    fn td_dp_on_path_decomposition() {
        let g = path(6);
        let td = TreeDecomposition::new((0..5).map(|i| vec![i, i + 1]).collect(), &[(0, 1), (1, 2), (2, 3), (3, 4)])
            .unwrap();
        for m in 1..6 {
            assert_eq!(dp_min_size_cut_td(&g, &td, m).unwrap().1, 1);
        }
        let wide = TreeDecomposition::trivial(6);
        let tight = Limits { td_max_width: 3, ..Limits::default() };
        assert!(matches!(dp_min_size_cut_td_with(&g, &wide, 2, &tight), Err(Error::WidthTooLarge { .. })));
        assert_eq!(dp_min_size_cut_td(&g, &wide, 3).unwrap().1, 1);
    }

    #[test]
    fn brute_force_values() {
        assert_eq!(brute_min_ksection(&path(9), 3).unwrap().1, 2);
        assert_eq!(brute_min_ksection(&star(5), 2).unwrap().1, 3);
        let (ks, w) = brute_min_ksection(&path(10), 4).unwrap();
        assert!(ks.is_balanced(10));
        assert_eq!(w, 3);
        assert!(matches!(brute_min_ksection(&path(15), 2), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn memory_guard() {
        let tiny = Limits { max_mem_mb: 0, ..Limits::default() };
        assert!(matches!(dp_min_size_cut_tree_with(&path(2000), 1000, &tiny), Err(Error::MemoryLimit { .. })));
    }
}
