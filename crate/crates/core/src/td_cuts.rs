//! Cuts in graphs with a tree decomposition: approximate m-cuts, exact-size
//! cuts, and exact-size cuts that keep the relative heaviest-path weight of
//! the induced decomposition of the white side.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph};
use crate::oracle;
use crate::treedec::{self, cluster_incident_edges, heaviest_path, make_nonredundant, TreeDecomposition};

/// Approximate m-cut of `g`: `m/2 <= |B| <= m`, every cut edge touches one
/// bag. For `m >= n` the black side is all of `V`.
pub fn approximate_cut_td(g: &Graph, td: &TreeDecomposition, m: usize) -> Result<Cut> {
    let n = g.n();
    if m == 0 {
        return Err(Error::MOutOfRange { m, lo: 1, hi: usize::MAX });
    }
    if m >= n {
        return Ok(Cut::from_black(g, 0..n));
    }
    let (order, parent) = td.rooted(0);
    let mut own: Vec<Vec<usize>> = vec![Vec::new(); td.len()];
    let mut seen = vec![false; n];
    for &u in &order {
        for &v in td.bag(u) {
            if v < n && !seen[v] {
                seen[v] = true;
                own[u].push(v);
            }
        }
    }
    let mut count: Vec<usize> = own.iter().map(Vec::len).collect();
    for &u in order.iter().rev() {
        if parent[u] != usize::MAX {
            count[parent[u]] += count[u];
        }
    }
    let parent = &parent;
    let children = |u: usize| td.neighbors(u).iter().copied().filter(move |&c| c != parent[u]);

    let mut x = order[0];
    while let Some(next) = children(x).find(|&c| count[c] > m) {
        x = next;
    }
    let mut picked_nodes = Vec::new();
    let mut picked_vertices = Vec::new();
    if let Some(c) = children(x).find(|&c| 2 * count[c] >= m) {
        picked_nodes.push(c);
    } else {
        let mut total = 0;
        for c in children(x).filter(|&c| count[c] > 0) {
            if 2 * total >= m {
                break;
            }
            total += count[c];
            picked_nodes.push(c);
        }
        for &v in &own[x] {
            if 2 * total >= m {
                break;
            }
            total += 1;
            picked_vertices.push(v);
        }
    }
    let mut is_black = vec![false; n];
    let mut in_branch = vec![false; td.len()];
    for &u in &order {
        if picked_nodes.contains(&u) || (parent[u] != usize::MAX && in_branch[parent[u]] && u != x) {
            in_branch[u] = true;
            for &v in &own[u] {
                is_black[v] = true;
            }
        }
    }
    for v in picked_vertices {
        is_black[v] = true;
    }
    Ok(Cut::from_mask(g, &is_black))
}

/// Minimum-width cut with exactly `m` black vertices, by dynamic programming
/// over the decomposition.
pub fn exact_cut_bounded_td(g: &Graph, td: &TreeDecomposition, m: usize) -> Result<Cut> {
    let n = g.n();
    if m == 0 || m > n {
        return Err(Error::MOutOfRange { m, lo: 1, hi: n });
    }
    oracle::dp_min_size_cut_td(g, td, m).map(|(cut, _)| cut)
}

/// Labeling of the vertices along a path `P` of the decomposition tree.
///
/// `R` is the set of vertices in bags on `P`; each is assigned to the first
/// path node containing it. Removing the path edges leaves one subtree per
/// path node; `S_i` collects the vertices outside `R` seen in the subtree of
/// path node `i`. Labels run through the path nodes in order, each block
/// being `S_i` then `R_i` (both ascending).
#[derive(Debug, Clone, Serialize)]
pub struct TdPLabeling {
    /// Decomposition nodes of the path.
    pub path: Vec<usize>,
    /// Vertex to label (1-based).
    pub label_of: Vec<usize>,
    /// `vertex_of[l - 1]` is the vertex with label `l`.
    pub vertex_of: Vec<usize>,
    /// `prefix[l - 1]` counts `R`-vertices with label `< l`.
    pub prefix: Vec<usize>,
    pub in_r: Vec<bool>,
    /// Vertex to the position on the path of the block it belongs to.
    pub block_of: Vec<usize>,
    /// Per path position, `S_i` and `R_i`.
    pub s: Vec<Vec<usize>>,
    pub r: Vec<Vec<usize>>,
}

impl TdPLabeling {
    pub fn n(&self) -> usize {
        self.label_of.len()
    }

    pub fn r_size(&self) -> usize {
        self.prefix[self.n()]
    }

    pub fn shift(&self, label: usize, offset: usize) -> usize {
        (label - 1 + offset) % self.n() + 1
    }

    pub fn vertex(&self, label: usize) -> usize {
        self.vertex_of[label - 1]
    }

    pub fn is_r_label(&self, label: usize) -> bool {
        self.in_r[self.vertex(label)]
    }

    pub fn run(&self, from: usize, len: usize) -> Vec<usize> {
        (0..len).map(|i| self.vertex(self.shift(from, i))).collect()
    }
}

/// Builds the labeling of the `n` vertices of a decomposition along `path`.
pub fn td_p_labeling(td: &TreeDecomposition, n: usize, path: &[usize]) -> Result<TdPLabeling> {
    let len = td.len();
    let mut position = vec![usize::MAX; len];
    for (i, &node) in path.iter().enumerate() {
        if node >= len || position[node] != usize::MAX {
            return Err(Error::BadParameters("path repeats or leaves the decomposition".into()));
        }
        position[node] = i;
    }
    if path.is_empty() || path.windows(2).any(|w| !td.neighbors(w[0]).contains(&w[1])) {
        return Err(Error::BadParameters("not a path of the decomposition tree".into()));
    }

    let mut block_of = vec![usize::MAX; n];
    let mut in_r = vec![false; n];
    let mut r = vec![Vec::new(); path.len()];
    for (i, &node) in path.iter().enumerate() {
        for &v in td.bag(node) {
            if !in_r[v] {
                in_r[v] = true;
                block_of[v] = i;
                r[i].push(v);
            }
        }
        if r[i].is_empty() {
            return Err(Error::RedundantDecomposition(i + 1));
        }
    }
    let mut s = vec![Vec::new(); path.len()];
    for (i, &node) in path.iter().enumerate() {
        let mut stack: Vec<(usize, usize)> =
            td.neighbors(node).iter().filter(|&&w| position[w] == usize::MAX).map(|&w| (w, node)).collect();
        while let Some((u, from)) = stack.pop() {
            for &v in td.bag(u) {
                if !in_r[v] && block_of[v] == usize::MAX {
                    block_of[v] = i;
                    s[i].push(v);
                }
            }
            stack.extend(td.neighbors(u).iter().filter(|&&w| w != from).map(|&w| (w, u)));
        }
        s[i].sort_unstable();
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::InvalidDecomposition(crate::error::TdViolation::T1 { vertex: v + 1 }));
    }

    let mut vertex_of = Vec::with_capacity(n);
    let mut prefix = Vec::with_capacity(n + 1);
    let mut seen_r = 0;
    for i in 0..path.len() {
        for &v in &s[i] {
            prefix.push(seen_r);
            vertex_of.push(v);
        }
        for &v in &r[i] {
            prefix.push(seen_r);
            vertex_of.push(v);
            seen_r += 1;
        }
    }
    prefix.push(seen_r);
    let mut label_of = vec![0; n];
    for (idx, &v) in vertex_of.iter().enumerate() {
        label_of[v] = idx + 1;
    }
    Ok(TdPLabeling { path: path.to_vec(), label_of, vertex_of, prefix, in_r, block_of, s, r })
}

/// Number of `R`-vertices met walking cyclically from label `x` up to, but
/// excluding, label `y`.
pub fn d_r(lab: &TdPLabeling, x: usize, y: usize) -> usize {
    let (px, py) = (lab.prefix[x - 1], lab.prefix[y - 1]);
    if x <= y {
        py - px
    } else {
        lab.r_size() - px + py
    }
}

/// Smallest label `v` with `d_R(v, v+m) = floor(|R| m / n)` such that `v` or
/// `v+m` carries an `R`-vertex.
pub fn find_td_anchor(lab: &TdPLabeling, m: usize) -> Result<usize> {
    let n = lab.n();
    if m == 0 || m >= n {
        return Err(Error::MOutOfRange { m, lo: 1, hi: n.saturating_sub(1) });
    }
    let target = lab.r_size() * m / n;
    (1..=n)
        .find(|&v| {
            let w = lab.shift(v, m);
            d_r(lab, v, w) == target && (lab.is_r_label(v) || lab.is_r_label(w))
        })
        .ok_or_else(|| Error::Internal(format!("no anchor label for m = {m}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TdCaseTag {
    Case1,
    Case2a,
    Case2b,
    Case3,
}

/// What [`r_preserving_cut`] did. Nodes refer to the normalized decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdCutTrace {
    pub case: TdCaseTag,
    pub m: usize,
    pub anchor_label: usize,
    pub anchor: usize,
    pub path: Vec<usize>,
    pub r_size: usize,
    /// `floor(r m)`.
    pub floor_rm: usize,
    pub block: Vec<usize>,
    /// Path node whose `S` set was split.
    pub split_node: Option<usize>,
    pub m_tilde: Option<usize>,
    pub b_split: Vec<usize>,
    pub v_tilde: Vec<usize>,
    /// Edges touching the split node's bag, dropped from `G[v_tilde]`.
    pub removed_edges: usize,
    pub inner_width: Option<usize>,
    pub outer_width: Option<usize>,
}

/// Decomposition of the disjoint union `G[first] + G[second]` (local ids:
/// `first` then `second`), made by joining the two induced decompositions
/// with one tree edge from `join` to the first node of the second copy whose
/// bag is nonempty.
fn glued_decomposition(td: &TreeDecomposition, first: &[usize], second: &[usize], join: usize) -> TreeDecomposition {
    let a = td.induced_on(first);
    let b = td.induced_on(second);
    let offset = first.len();
    let h0 = (0..b.len()).find(|&h| !b.bag(h).is_empty()).unwrap_or(0);
    let mut bags: Vec<Vec<usize>> = a.bags().to_vec();
    bags.extend(b.bags().iter().map(|bag| bag.iter().map(|&v| v + offset).collect::<Vec<_>>()));
    let mut edges = a.tree_edges();
    edges.extend(b.tree_edges().into_iter().map(|(i, j)| (i + a.len(), j + a.len())));
    edges.push((join, a.len() + h0));
    TreeDecomposition::new(bags, &edges).expect("joining two trees by an edge gives a tree")
}

/// Cut with `|B| = m` such that the decomposition induced on the white side
/// has relative heaviest-path weight at least that of `td`, with at most
/// `(t/2)(log²(1/r) + 11 log(1/r) + 24) Δ` cut edges.
pub fn r_preserving_cut(g: &Graph, td: &TreeDecomposition, m: usize) -> Result<(Cut, TdCutTrace)> {
    let n = g.n();
    if m == 0 || m >= n {
        return Err(Error::MOutOfRange { m, lo: 1, hi: n.saturating_sub(1) });
    }
    treedec::validate(td, g)?;
    let td = make_nonredundant(td);
    let hp = heaviest_path(&td, n);
    let lab = td_p_labeling(&td, n, &hp.path)?;
    let v_label = find_td_anchor(&lab, m)?;
    let w_label = lab.shift(v_label, m);
    let last_label = lab.shift(v_label, m - 1);
    let block = lab.run(v_label, m);

    let mut trace = TdCutTrace {
        case: TdCaseTag::Case1,
        m,
        anchor_label: v_label,
        anchor: lab.vertex(v_label),
        path: hp.path.clone(),
        r_size: lab.r_size(),
        floor_rm: lab.r_size() * m / n,
        block: block.clone(),
        split_node: None,
        m_tilde: None,
        b_split: Vec::new(),
        v_tilde: block.clone(),
        removed_edges: 0,
        inner_width: None,
        outer_width: None,
    };
    let v_in_r = lab.is_r_label(v_label);
    let w_in_r = lab.is_r_label(w_label);
    if v_in_r && (w_in_r || lab.is_r_label(last_label)) {
        let cut = Cut::from_black(g, block.iter().copied());
        trace.case = if w_in_r { TdCaseTag::Case1 } else { TdCaseTag::Case2a };
        trace.inner_width = Some(0);
        trace.outer_width = Some(cut.width);
        return Ok((cut, trace));
    }
    let (pos, case) = match (v_in_r, w_in_r) {
        (true, false) => (lab.block_of[lab.vertex(w_label)], TdCaseTag::Case2b),
        (false, true) => (lab.block_of[lab.vertex(v_label)], TdCaseTag::Case3),
        _ => return Err(Error::Internal("anchor has neither end in R".into())),
    };
    let node = hp.path[pos];
    let s_set = &lab.s[pos];
    let mut in_s = vec![false; n];
    for &v in s_set {
        in_s[v] = true;
    }
    let m_tilde = 2 * block.iter().filter(|&&v| in_s[v]).count();
    let local = approximate_cut_td(&g.induced(s_set), &td.induced_on(s_set), m_tilde)?;
    let b_split: Vec<usize> = local.black.iter().map(|&i| s_set[i]).collect();

    let mut rest: Vec<usize> = block.iter().copied().filter(|&v| !in_s[v]).collect();
    rest.sort_unstable();
    let mut order = rest.clone();
    order.extend(b_split.iter().copied());

    let incident = cluster_incident_edges(&td, g, node);
    let mut local_of = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        local_of[v] = i;
    }
    let removed: Vec<(usize, usize)> = incident
        .iter()
        .filter(|&&(a, b)| local_of[a] != usize::MAX && local_of[b] != usize::MAX)
        .map(|&(a, b)| (local_of[a], local_of[b]))
        .collect();
    let g_tilde = g.induced(&order).without_edges(&removed);
    let join = *hp.path.last().expect("nonempty path");
    let td_tilde = glued_decomposition(&td, &rest, &b_split, join);
    debug_assert!(treedec::validate(&td_tilde, &g_tilde).is_ok(), "glued decomposition is invalid");
    let inner = exact_cut_bounded_td(&g_tilde, &td_tilde, m)?;
    let black: Vec<usize> = inner.black.iter().map(|&i| order[i]).collect();
    let cut = Cut::from_black(g, black);
    let outer = Cut::from_black(g, order.iter().copied());

    let mut v_tilde = order;
    v_tilde.sort_unstable();
    trace.case = case;
    trace.split_node = Some(node);
    trace.m_tilde = Some(m_tilde);
    trace.b_split = b_split;
    trace.v_tilde = v_tilde;
    trace.removed_edges = removed.len();
    trace.inner_width = Some(inner.width);
    trace.outer_width = Some(outer.width);
    Ok((cut, trace))
}
