//! Labelings of a tree along a fixed longest path.
//!
//! Removing the path edges splits the tree into one subtree per path vertex.
//! A path labeling numbers the vertices `1..=n` so that every such subtree
//! gets a consecutive block ending with its path vertex, and blocks appear in
//! path order starting from the first path vertex. Labels are read cyclically
//! modulo `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A tree split along a path into the subtrees hanging off each path vertex.
#[derive(Debug, Clone)]
pub struct PathDecomposition {
    tree: Graph,
    /// Path vertices, starting at the end called `x_0`.
    pub path: Vec<usize>,
    /// Vertex to the path vertex whose subtree contains it.
    pub path_vertex_of: Vec<usize>,
    /// Vertex to its position on the path, if it is a path vertex.
    pub position: Vec<Option<usize>>,
    /// For each path position, the vertices of the hanging subtree (sorted,
    /// including the path vertex itself).
    pub members: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn is_path_vertex(&self, v: usize) -> bool {
        self.position[v].is_some()
    }

    /// Vertices of the subtree hanging off path vertex `p`.
    pub fn subtree(&self, p: usize) -> &[usize] {
        &self.members[self.position[p].expect("not a path vertex")]
    }
}

/// Splits `tree` along `path` (a vertex sequence of adjacent, distinct vertices).
pub fn decompose_along_path(tree: &Graph, path: &[usize]) -> Result<PathDecomposition> {
    if !tree.is_tree() || path.is_empty() {
        return Err(Error::PathNotInTree);
    }
    let n = tree.n();
    let mut position = vec![None; n];
    for (i, &v) in path.iter().enumerate() {
        if v >= n || position[v].is_some() {
            return Err(Error::PathNotInTree);
        }
        position[v] = Some(i);
    }
    if path.windows(2).any(|w| !tree.has_edge(w[0], w[1])) {
        return Err(Error::PathNotInTree);
    }

    let mut path_vertex_of = vec![usize::MAX; n];
    let mut members = Vec::with_capacity(path.len());
    for &p in path {
        path_vertex_of[p] = p;
        let mut block = vec![p];
        let mut i = 0;
        while i < block.len() {
            let u = block[i];
            i += 1;
            for &w in tree.neighbors(u) {
                if position[w].is_none() && path_vertex_of[w] == usize::MAX {
                    path_vertex_of[w] = p;
                    block.push(w);
                }
            }
        }
        block.sort_unstable();
        members.push(block);
    }
    Ok(PathDecomposition { tree: tree.clone(), path: path.to_vec(), path_vertex_of, position, members })
}

/// A bijection between vertices and labels `1..=n` with prefix counts of path
/// vertices, so that path distances are answered in constant time.
#[derive(Debug, Clone, Serialize)]
pub struct PLabeling {
    #[serde(skip)]
    dec: PathDecomposition,
    /// Vertex to label (1-based).
    pub label_of: Vec<usize>,
    /// `vertex_of[l - 1]` is the vertex with label `l`.
    pub vertex_of: Vec<usize>,
    /// `prefix[l - 1]` counts path vertices with label `< l`; `prefix[n]` is
    /// the path length.
    pub prefix: Vec<usize>,
}

impl PLabeling {
    pub fn n(&self) -> usize {
        self.label_of.len()
    }

    pub fn decomposition(&self) -> &PathDecomposition {
        &self.dec
    }

    pub fn path_len(&self) -> usize {
        self.prefix[self.n()]
    }

    /// Reduces any integer label to its representative in `1..=n`.
    pub fn wrap(&self, label: i64) -> usize {
        let n = self.n() as i64;
        ((label - 1).rem_euclid(n) + 1) as usize
    }

    /// `label + offset`, cyclically.
    pub fn shift(&self, label: usize, offset: usize) -> usize {
        (label - 1 + offset) % self.n() + 1
    }

    pub fn vertex(&self, label: usize) -> usize {
        self.vertex_of[label - 1]
    }

    pub fn label(&self, v: usize) -> usize {
        self.label_of[v]
    }

    pub fn is_path_label(&self, label: usize) -> bool {
        self.dec.is_path_vertex(self.vertex(label))
    }

    /// Labels `from, from+1, ..., from+len-1` (cyclic) as vertices.
    pub fn run(&self, from: usize, len: usize) -> Vec<usize> {
        (0..len).map(|i| self.vertex(self.shift(from, i))).collect()
    }
}

/// Labels the tree by a depth-first search from the last path vertex that
/// always descends towards the first path vertex before visiting other
/// neighbors (ascending by id); a vertex is labeled when it is finished.
pub fn p_labeling(dec: &PathDecomposition) -> PLabeling {
    let tree = &dec.tree;
    let n = tree.n();
    let path = &dec.path;
    let root = *path.last().expect("nonempty path");

    let child_order = |u: usize, parent: usize| -> Vec<usize> {
        let mut order = Vec::with_capacity(tree.degree(u));
        let forced = dec.position[u].filter(|&i| i > 0).map(|i| path[i - 1]);
        if let Some(f) = forced {
            order.push(f);
        }
        order.extend(tree.neighbors(u).iter().copied().filter(|&w| w != parent && Some(w) != forced));
        order
    };

    let mut label_of = vec![0; n];
    let mut vertex_of = Vec::with_capacity(n);
    let mut prefix = Vec::with_capacity(n + 1);
    let mut on_path_so_far = 0;
    // (vertex, parent, children, next child index)
    let mut stack = vec![(root, usize::MAX, child_order(root, usize::MAX), 0usize)];
    while let Some(top) = stack.last_mut() {
        if top.3 < top.2.len() {
            let child = top.2[top.3];
            top.3 += 1;
            let parent = top.0;
            let order = child_order(child, parent);
            stack.push((child, parent, order, 0));
        } else {
            let (v, ..) = stack.pop().expect("nonempty stack");
            prefix.push(on_path_so_far);
            vertex_of.push(v);
            label_of[v] = vertex_of.len();
            if dec.is_path_vertex(v) {
                on_path_so_far += 1;
            }
        }
    }
    prefix.push(on_path_so_far);
    PLabeling { dec: dec.clone(), label_of, vertex_of, prefix }
}

/// Number of path vertices met when walking cyclically from label `x` up to,
/// but excluding, label `y`.
pub fn d_p(lab: &PLabeling, x: usize, y: usize) -> usize {
    let (px, py) = (lab.prefix[x - 1], lab.prefix[y - 1]);
    if x <= y {
        py - px
    } else {
        lab.path_len() - px + py
    }
}

/// Smallest label `v` with `d_P(v, v+m) = floor(d m)` where `d` is the
/// fraction of vertices on the path, such that `v` or `v+m` is a path vertex.
pub fn find_anchor(lab: &PLabeling, m: usize) -> Result<usize> {
    let n = lab.n();
    if m == 0 || m >= n {
        return Err(Error::MOutOfRange { m, lo: 1, hi: n.saturating_sub(1) });
    }
    let target = lab.path_len() * m / n;
    (1..=n)
        .find(|&v| {
            let w = lab.shift(v, m);
            d_p(lab, v, w) == target && (lab.is_path_label(v) || lab.is_path_label(w))
        })
        .ok_or_else(|| Error::Internal(format!("no anchor label for m = {m}")))
}
