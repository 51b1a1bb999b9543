//! Cuts in trees and forests: approximate m-cuts, exact-size cuts of small
//! width, and exact-size cuts that do not lower the relative diameter of the
//! white side.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{link_components, longest_path, Cut, Graph};
use crate::labeling::{decompose_along_path, d_p, find_anchor, p_labeling};
use crate::oracle;

/// Approximate m-cut: `m/2 <= |B| <= m`, at most `Δ` cut edges, `v` white.
///
/// For `m >= n - 1` the black side is everything but `v`. Otherwise the tree
/// is rooted at `v` and we descend to the deepest vertex `x` whose subtree
/// still has more than `m` vertices; `B` is one child subtree of size at
/// least `m/2`, or a greedy union of smaller child subtrees.
pub fn approximate_cut(tree: &Graph, v: usize, m: usize) -> Result<Cut> {
    let n = tree.n();
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let hi = (2 * n).saturating_sub(2);
    if m == 0 || m > hi || v >= n {
        return Err(Error::MOutOfRange { m, lo: 1, hi });
    }
    if m + 1 >= n {
        return Ok(Cut::from_black(tree, (0..n).filter(|&u| u != v)));
    }

    let mut parent = vec![usize::MAX; n];
    let mut order = vec![v];
    parent[v] = v;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in tree.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev().take(n - 1) {
        size[parent[u]] += size[u];
    }
    let parent = &parent;
    let children = |u: usize| tree.neighbors(u).iter().copied().filter(move |&w| parent[w] == u && w != u);

    let mut x = v;
    while let Some(next) = children(x).find(|&y| size[y] > m) {
        x = next;
    }
    let roots: Vec<usize> = match children(x).find(|&y| 2 * size[y] >= m) {
        Some(y) => vec![y],
        None => {
            let mut picked = Vec::new();
            let mut total = 0;
            for y in children(x) {
                if 2 * total >= m {
                    break;
                }
                total += size[y];
                picked.push(y);
            }
            picked
        }
    };
    let mut is_black = vec![false; n];
    for &u in &order {
        if roots.contains(&u) || (u != v && is_black[parent[u]]) {
            is_black[u] = true;
        }
    }
    Ok(Cut::from_mask(tree, &is_black))
}

/// Cut with exactly `m` black vertices and minimum width.
///
/// The returned width is optimal, so it also satisfies the existence bounds
/// `8 Δ / diam*` and `(log²(1/diam*) + 7 log(1/diam*) + 6) Δ / 2`.
pub fn exact_cut_bounded(forest: &Graph, m: usize) -> Result<Cut> {
    let n = forest.n();
    if m == 0 || m > n {
        return Err(Error::MOutOfRange { m, lo: 1, hi: n });
    }
    oracle::dp_min_size_cut_tree(forest, m).map(|(cut, _)| cut)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// Maximum degree at most two: the forest is a union of paths.
    Deg2,
    Case1,
    Case2a,
    Case2b,
    Case3a,
    Case3b,
}

/// What [`diameter_preserving_cut`] did. Vertex ids are those of the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiamCutTrace {
    pub case: CaseTag,
    pub m: usize,
    /// Label of the anchor and the vertex carrying it.
    pub anchor_label: Option<usize>,
    pub anchor: Option<usize>,
    /// Number of vertices on the longest path of the linked tree.
    pub path_len: usize,
    /// `floor(diam* m)`.
    pub floor_dm: usize,
    /// The run of `m` consecutive labels starting at the anchor.
    pub block: Vec<usize>,
    pub z: Option<usize>,
    pub m_tilde: Option<usize>,
    pub b_z: Vec<usize>,
    pub w_z: Vec<usize>,
    /// Candidate set the final black side is cut from.
    pub v_tilde: Vec<usize>,
    /// Cut edges inside `G[v_tilde]` and between `v_tilde` and the rest.
    pub inner_width: Option<usize>,
    pub outer_width: Option<usize>,
}

impl DiamCutTrace {
    fn new(case: CaseTag, m: usize) -> Self {
        DiamCutTrace {
            case,
            m,
            anchor_label: None,
            anchor: None,
            path_len: 0,
            floor_dm: 0,
            block: Vec::new(),
            z: None,
            m_tilde: None,
            b_z: Vec::new(),
            w_z: Vec::new(),
            v_tilde: Vec::new(),
            inner_width: None,
            outer_width: None,
        }
    }
}

/// Vertices of a forest of paths listed path by path, each path from its
/// smaller end.
fn path_forest_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        let start = *comp.iter().find(|&&v| g.degree(v) <= 1).expect("path component has an end");
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(cur);
            match g.neighbors(cur).iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
    }
    order
}

/// Cut with `|B| = m` such that the white side has relative diameter at least
/// that of the forest, and at most `(2 + 16/diam*) Δ` cut edges.
pub fn diameter_preserving_cut(forest: &Graph, m: usize) -> Result<(Cut, DiamCutTrace)> {
    let n = forest.n();
    if m == 0 || m >= n {
        return Err(Error::MOutOfRange { m, lo: 1, hi: n.saturating_sub(1) });
    }
    if !forest.is_forest() {
        return Err(Error::NotAForest);
    }
    if forest.max_degree() <= 2 {
        let order = path_forest_order(forest);
        let cut = Cut::from_black(forest, order[..m].iter().copied());
        let mut trace = DiamCutTrace::new(CaseTag::Deg2, m);
        trace.block = order[..m].to_vec();
        trace.outer_width = Some(cut.width);
        return Ok((cut, trace));
    }

    let tree = link_components(forest)?;
    let path = longest_path(&tree)?;
    let dec = decompose_along_path(&tree, &path)?;
    let lab = p_labeling(&dec);
    let v_label = find_anchor(&lab, m)?;
    let w_label = lab.shift(v_label, m);
    let last_label = lab.shift(v_label, m - 1);
    let block = lab.run(v_label, m);

    let mut trace = DiamCutTrace::new(CaseTag::Case1, m);
    trace.anchor_label = Some(v_label);
    trace.anchor = Some(lab.vertex(v_label));
    trace.path_len = path.len();
    trace.floor_dm = path.len() * m / n;
    trace.block = block.clone();
    debug_assert_eq!(d_p(&lab, v_label, w_label), trace.floor_dm);

    let v_on_path = lab.is_path_label(v_label);
    let w_on_path = lab.is_path_label(w_label);
    let finish_block = |mut trace: DiamCutTrace, case| {
        let cut = Cut::from_black(forest, block.iter().copied());
        trace.case = case;
        trace.v_tilde = block.clone();
        trace.outer_width = Some(cut.width);
        trace.inner_width = Some(0);
        Ok((cut, trace))
    };
    if v_on_path && w_on_path {
        return finish_block(trace, CaseTag::Case1);
    }
    if v_on_path && lab.is_path_label(last_label) {
        return finish_block(trace, CaseTag::Case2a);
    }

    let (z, case) = if v_on_path {
        (dec.path_vertex_of[lab.vertex(w_label)], CaseTag::Case2b)
    } else if w_on_path {
        let z = dec.path_vertex_of[lab.vertex(v_label)];
        (z, if z == lab.vertex(w_label) { CaseTag::Case3a } else { CaseTag::Case3b })
    } else {
        return Err(Error::Internal("anchor has neither end on the path".into()));
    };
    let subtree = dec.subtree(z).to_vec();
    let mut in_block = vec![false; n];
    for &u in &block {
        in_block[u] = true;
    }
    let mut in_subtree = vec![false; n];
    for &u in &subtree {
        in_subtree[u] = u != z;
    }
    let m_tilde = 2 * subtree.iter().filter(|&&u| u != z && in_block[u]).count();
    let z_local = subtree.binary_search(&z).expect("z in its subtree");
    let local = approximate_cut(&tree.induced(&subtree), z_local, m_tilde)?;
    let b_z: Vec<usize> = local.black.iter().map(|&i| subtree[i]).collect();
    let w_z: Vec<usize> = local.white.iter().map(|&i| subtree[i]).collect();

    let mut v_tilde: Vec<usize> = match case {
        CaseTag::Case2b => block.iter().copied().filter(|&u| !in_subtree[u]).chain(b_z.iter().copied()).collect(),
        CaseTag::Case3a => b_z.clone(),
        _ => block
            .iter()
            .copied()
            .filter(|&u| !in_subtree[u] && u != z)
            .chain(b_z.iter().copied())
            .chain(std::iter::once(lab.vertex(w_label)))
            .collect(),
    };
    v_tilde.sort_unstable();

    let sub = forest.induced(&v_tilde);
    let inner = exact_cut_bounded(&sub, m)?;
    let black: Vec<usize> = inner.black.iter().map(|&i| v_tilde[i]).collect();
    let cut = Cut::from_black(forest, black);
    let outer = Cut::from_black(forest, v_tilde.iter().copied());

    trace.case = case;
    trace.z = Some(z);
    trace.m_tilde = Some(m_tilde);
    trace.b_z = b_z;
    trace.w_z = w_z;
    trace.v_tilde = v_tilde;
    trace.inner_width = Some(inner.width);
    trace.outer_width = Some(outer.width);
    Ok((cut, trace))
}
