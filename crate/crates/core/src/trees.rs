//! Labelled plane trees: Catalan shapes with per-edge label increments in
//! {-1, 0, +1}, the root labelled 0.

use crate::error::{MapError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Plane tree shape in preorder: `children[v]` lists the ordered children of
/// vertex v; vertex 0 is the root. Vertices are numbered in depth-first
/// discovery order, so non-root vertex v has parent edge v-1... no: parents
/// are tracked explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabelledTree {
    /// parent of vertex v (>= 1); vertices in preorder, parent[v] < v
    parents: Vec<usize>,
    /// label increment of the edge joining v to its parent, in {-1,0,1}
    increments: Vec<i8>,
}

impl LabelledTree {
    /// The single-vertex tree (zero edges).
    pub fn point() -> LabelledTree {
        LabelledTree {
            parents: Vec::new(),
            increments: Vec::new(),
        }
    }

    pub fn new(parents: Vec<usize>, increments: Vec<i8>) -> Result<LabelledTree> {
        if parents.len() != increments.len() {
            return Err(MapError::ValidationError(
                "one increment per non-root vertex".into(),
            ));
        }
        for (v, &p) in parents.iter().enumerate() {
            if p > v {
                return Err(MapError::ValidationError(
                    "vertices must be listed in preorder".into(),
                ));
            }
        }
        if increments.iter().any(|&i| !(-1..=1).contains(&i)) {
            return Err(MapError::ValidationError(
                "increments must lie in {-1,0,1}".into(),
            ));
        }
        Ok(LabelledTree {
            parents,
            increments,
        })
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.parents.len()
    }

    /// Number of vertices.
    pub fn n_vertices(&self) -> usize {
        self.parents.len() + 1
    }

    /// Parent of non-root vertex v (vertex ids: 0 = root, then preorder).
    pub fn parent(&self, v: usize) -> usize {
        self.parents[v - 1]
    }

    pub fn increment(&self, v: usize) -> i8 {
        self.increments[v - 1]
    }

    /// Vertex labels: prefix sums of increments from the root.
    pub fn labels(&self) -> Vec<i64> {
        let mut l = vec![0i64; self.n_vertices()];
        for v in 1..self.n_vertices() {
            l[v] = l[self.parent(v)] + self.increment(v) as i64;
        }
        l
    }

    /// Ordered children of each vertex.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.n_vertices()];
        for v in 1..self.n_vertices() {
            ch[self.parent(v)].push(v);
        }
        // preorder numbering lists children of one vertex left to right
        ch
    }

    /// Degree-1 non-root vertices.
    pub fn leaves(&self) -> Vec<usize> {
        let ch = self.children();
        (1..self.n_vertices()).filter(|&v| ch[v].is_empty()).collect()
    }

    /// The tree after deleting leaf v and its parent edge.
    pub fn erase_leaf(&self, v: usize) -> LabelledTree {
        assert!(v >= 1 && self.children()[v].is_empty());
        let mut parents = Vec::with_capacity(self.parents.len() - 1);
        let mut increments = Vec::with_capacity(self.increments.len() - 1);
        let renum = |u: usize| if u > v { u - 1 } else { u };
        for w in 1..self.n_vertices() {
            if w == v {
                continue;
            }
            parents.push(renum(self.parent(w)));
            increments.push(self.increment(w));
        }
        LabelledTree {
            parents,
            increments,
        }
    }

    /// All pairs (leaf, erased tree).
    pub fn leaf_erasures(&self) -> Vec<(usize, LabelledTree)> {
        self.leaves()
            .into_iter()
            .map(|v| (v, self.erase_leaf(v)))
            .collect()
    }

    /// Subtree rooted at vertex v, with increments kept relative so the new
    /// root behaves as label 0.
    pub fn subtree(&self, v: usize) -> LabelledTree {
        let mut verts = vec![v];
        let ch = self.children();
        let mut i = 0;
        while i < verts.len() {
            // preorder ids guarantee children come after parents; collect DFS
            let u = verts[i];
            i += 1;
            for &c in &ch[u] {
                verts.push(c);
            }
        }
        verts.sort_unstable(); // preorder of the subtree = sorted ids
        let index_of = |u: usize| verts.binary_search(&u).unwrap();
        let mut parents = Vec::new();
        let mut increments = Vec::new();
        for &u in verts.iter().skip(1) {
            parents.push(index_of(self.parent(u)));
            increments.push(self.increment(u));
        }
        LabelledTree {
            parents,
            increments,
        }
    }

    /// The subtree of the leftmost child of the root, or None for a point.
    /// This keeps the connecting edge increment with the subtree root's slot
    /// dropped, matching relative labelling.
    pub fn left_subtree(&self) -> Option<LabelledTree> {
        let ch = self.children();
        ch[0].first().map(|&c| self.subtree(c))
    }

    /// The tree with the leftmost child subtree (and its connecting edge)
    /// removed.
    pub fn right_remainder(&self) -> Option<LabelledTree> {
        let ch = self.children();
        let &c = ch[0].first()?;
        // vertices of the left subtree
        let mut in_left = vec![false; self.n_vertices()];
        in_left[c] = true;
        for v in (c + 1)..self.n_vertices() {
            if in_left[self.parent(v)] {
                in_left[v] = true;
            }
        }
        let mut keep: Vec<usize> = (0..self.n_vertices()).filter(|&v| !in_left[v]).collect();
        keep.sort_unstable();
        let index_of = |u: usize| keep.binary_search(&u).unwrap();
        let mut parents = Vec::new();
        let mut increments = Vec::new();
        for &u in keep.iter().skip(1) {
            parents.push(index_of(self.parent(u)));
            increments.push(self.increment(u));
        }
        Some(LabelledTree {
            parents,
            increments,
        })
    }

    /// Balanced-parentheses shape plus increment characters, e.g. `(()) / -0`.
    pub fn to_text(&self) -> String {
        let ch = self.children();
        let mut shape = String::new();
        let mut incs = String::new();
        fn rec(t: &LabelledTree, ch: &[Vec<usize>], v: usize, shape: &mut String, incs: &mut String) {
            for &c in &ch[v] {
                shape.push('(');
                incs.push(match t.increment(c) {
                    -1 => '-',
                    0 => '0',
                    _ => '+',
                });
                rec(t, ch, c, shape, incs);
                shape.push(')');
            }
        }
        rec(self, &ch, 0, &mut shape, &mut incs);
        if self.size() == 0 {
            return ".".to_string();
        }
        format!("{shape} / {incs}")
    }

    pub fn from_text(text: &str) -> Result<LabelledTree> {
        let text = text.trim();
        if text == "." {
            return Ok(LabelledTree::point());
        }
        let (shape, incs) = text
            .split_once('/')
            .ok_or_else(|| MapError::ParseError("expected `<parens> / <incs>`".into()))?;
        let shape: Vec<char> = shape.trim().chars().collect();
        let incs: Vec<char> = incs.trim().chars().collect();
        let mut parents = Vec::new();
        let mut increments = Vec::new();
        let mut stack = vec![0usize];
        let mut next = 1usize;
        let mut ii = 0usize;
        for &c in &shape {
            match c {
                '(' => {
                    let inc = match incs.get(ii) {
                        Some('-') => -1,
                        Some('0') => 0,
                        Some('+') => 1,
                        other => {
                            return Err(MapError::ParseError(format!(
                                "bad increment {other:?}"
                            )))
                        }
                    };
                    ii += 1;
                    parents.push(*stack.last().unwrap());
                    increments.push(inc);
                    stack.push(next);
                    next += 1;
                }
                ')' => {
                    stack.pop();
                    if stack.is_empty() {
                        return Err(MapError::ParseError("unbalanced parentheses".into()));
                    }
                }
                w if w.is_whitespace() => {}
                other => {
                    return Err(MapError::ParseError(format!("bad character {other:?}")));
                }
            }
        }
        if stack.len() != 1 || ii != incs.len() {
            return Err(MapError::ParseError("unbalanced tree text".into()));
        }
        LabelledTree::new(parents, increments)
    }
}

impl fmt::Display for LabelledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// All labelled trees with n edges: Catalan(n) shapes times 3^n labelings.
pub fn enumerate_trees(n: usize, limit: usize) -> Result<Vec<LabelledTree>> {
    if n > limit {
        return Err(MapError::LimitExceeded {
            requested: n,
            limit,
        });
    }
    let shapes = tree_shapes(n);
    let mut out = Vec::new();
    for parents in shapes {
        let mut incs = vec![-1i8; n];
        loop {
            out.push(LabelledTree {
                parents: parents.clone(),
                increments: incs.clone(),
            });
            // odometer over {-1,0,1}^n
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                if incs[i] < 1 {
                    incs[i] += 1;
                    break;
                }
                incs[i] = -1;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        if n == 0 {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Parent vectors of all plane trees with n edges, preorder numbering.
fn tree_shapes(n: usize) -> Vec<Vec<usize>> {
    // generate balanced sequences recursively
    let mut out = Vec::new();
    let mut parents = Vec::new();
    fn rec(
        remaining: usize,
        stack: &mut Vec<usize>,
        next_id: usize,
        parents: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(parents.clone());
            return;
        }
        // open a new child of any vertex currently on the stack top
        {
            // open
            parents.push(*stack.last().unwrap());
            stack.push(next_id);
            rec(remaining - 1, stack, next_id + 1, parents, out);
            stack.pop();
            parents.pop();
        }
        if stack.len() > 1 {
            // close the current vertex and continue elsewhere
            let saved = stack.pop().unwrap();
            rec(remaining, stack, next_id, parents, out);
            stack.push(saved);
        }
    }
    let mut stack = vec![0usize];
    rec(n, &mut stack, 1, &mut parents, &mut out);
    out
}

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n {
        c = c * 2 * (2 * i as u128 + 1) / (i as u128 + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_trees(0, 6).unwrap().len(), 1);
        assert_eq!(enumerate_trees(1, 6).unwrap().len(), 3);
        assert_eq!(enumerate_trees(2, 6).unwrap().len(), 18);
        assert_eq!(enumerate_trees(3, 6).unwrap().len(), 135);
        assert_eq!(enumerate_trees(4, 6).unwrap().len(), 1134);
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), 1);
        assert_eq!(catalan(4), 14);
        assert_eq!(catalan(5), 42);
    }

    #[test]
    fn erasures() {
        // single edge: one erasure, to the point
        let t = LabelledTree::new(vec![0], vec![-1]).unwrap();
        let er = t.leaf_erasures();
        assert_eq!(er.len(), 1);
        assert_eq!(er[0].1, LabelledTree::point());
        // two-edge path: only the deep leaf is erasable
        let path = LabelledTree::new(vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(path.leaf_erasures().len(), 1);
        // cherry: both children
        let cherry = LabelledTree::new(vec![0, 0], vec![0, 1]).unwrap();
        assert_eq!(cherry.leaf_erasures().len(), 2);
    }

    #[test]
    fn subtrees() {
        // root with leftmost child carrying a grandchild, plus another child
        let t = LabelledTree::new(vec![0, 1, 0], vec![1, -1, 0]).unwrap();
        let l = t.left_subtree().unwrap();
        assert_eq!(l.size(), 1);
        assert_eq!(l.increment(1), -1);
        let r = t.right_remainder().unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.increment(1), 0);
    }

    #[test]
    fn text_roundtrip() {
        for t in enumerate_trees(3, 6).unwrap() {
            let s = t.to_text();
            assert_eq!(LabelledTree::from_text(&s).unwrap(), t);
        }
        assert_eq!(LabelledTree::from_text(".").unwrap(), LabelledTree::point());
    }

    #[test]
    fn labels_prefix_sums() {
        let t = LabelledTree::new(vec![0, 1, 0], vec![1, -1, 0]).unwrap();
        assert_eq!(t.labels(), vec![0, 1, 0, 0]);
    }
}
