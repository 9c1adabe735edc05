//! The Tamari order on trees of a fixed degree.
//!
//! The covering relation is the rotation `(a v b) v c  ->  a v (b v c)`
//! applied at a single vertex. The left comb is the unique minimum and the
//! right comb the unique maximum. Order queries go through reachability in
//! the per-degree [`HasseDiagram`], which is built once per degree and then
//! shared.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::par;
use crate::tree::{Tree, TreeSet};

/// Largest degree [`hasse`] will build unless a larger cap is passed.
pub const DEFAULT_CAP: usize = 7;

/// Diagrams up to this degree are memoized process-wide.
pub const MAX_CACHED_DEGREE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TamariError {
    #[error("trees of degrees {left} and {right} are not comparable")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
}

/// Every tree covering `t`: one rotation `(a v b) v c -> a v (b v c)` at one
/// vertex.
pub fn covers(t: &Tree) -> TreeSet {
    let mut out = BTreeSet::new();
    covers_into(t, &mut out);
    TreeSet::from_btree_unchecked(t.degree(), out)
}

fn covers_into(t: &Tree, out: &mut BTreeSet<Tree>) {
    let Some((l, r)) = t.split() else {
        return;
    };
    if let Some((a, b)) = l.split() {
        out.insert(Tree::graft(a.clone(), Tree::graft(b.clone(), r.clone())));
    }
    let mut sub = BTreeSet::new();
    covers_into(l, &mut sub);
    out.extend(sub.into_iter().map(|x| Tree::graft(x, r.clone())));
    let mut sub = BTreeSet::new();
    covers_into(r, &mut sub);
    out.extend(sub.into_iter().map(|x| Tree::graft(l.clone(), x)));
}

/// `t / s`: `t` grafted on the leftmost leaf of `s`.
pub fn under(t: &Tree, s: &Tree) -> Tree {
    s.replace_leftmost_leaf(t)
}

/// `t \ s`: `s` grafted on the rightmost leaf of `t`.
pub fn over(t: &Tree, s: &Tree) -> Tree {
    t.replace_rightmost_leaf(s)
}

/// Fixed-width bit set over vertex indices.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    fn new(len: usize) -> VertexSet {
        VertexSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w & (1u64 << b) != 0)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// The covering digraph on all trees of one degree.
pub struct HasseDiagram {
    degree: usize,
    vertices: Vec<Tree>,
    edges: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    upsets: OnceLock<Vec<VertexSet>>,
}

impl HasseDiagram {
    /// Builds the diagram without caching or cap checks.
    pub fn build(degree: usize) -> HasseDiagram {
        let vertices = Tree::all_of_degree(degree);
        let up: Vec<Vec<usize>> = par::map(&vertices, |v| {
            covers(v)
                .iter()
                .map(|c| {
                    vertices
                        .binary_search(c)
                        .expect("covers preserve the degree")
                })
                .collect()
        });
        let mut down = vec![Vec::new(); vertices.len()];
        let mut edges = Vec::new();
        for (lo, ups) in up.iter().enumerate() {
            for &hi in ups {
                edges.push((lo, hi));
                down[hi].push(lo);
            }
        }
        edges.sort_unstable();
        HasseDiagram {
            degree,
            vertices,
            edges,
            up,
            down,
            upsets: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// All trees of the degree, in canonical order.
    pub fn vertices(&self) -> &[Tree] {
        &self.vertices
    }

    /// Covering pairs `(lower, upper)` as vertex indices, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.vertices.binary_search(t).ok()
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    fn bfs(&self, start: usize, adjacency: &[Vec<usize>]) -> VertexSet {
        let mut seen = VertexSet::new(self.vertices.len());
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Vertices `>= i`, by a fresh search.
    pub fn reachable_up(&self, i: usize) -> VertexSet {
        self.bfs(i, &self.up)
    }

    /// Vertices `<= i`, by a fresh search.
    pub fn reachable_down(&self, i: usize) -> VertexSet {
        self.bfs(i, &self.down)
    }

    /// Memoized up-sets of every vertex.
    pub fn upsets(&self) -> &[VertexSet] {
        self.upsets
            .get_or_init(|| par::map_range(self.vertices.len(), |i| self.reachable_up(i)))
    }

    pub fn leq_index(&self, a: usize, b: usize) -> bool {
        self.upsets()[a].contains(b)
    }

    /// Indices `r` with `a <= r <= b`.
    pub fn interval_indices(&self, a: usize, b: usize) -> Vec<usize> {
        let upsets = self.upsets();
        upsets[a]
            .iter()
            .filter(|&r| upsets[r].contains(b))
            .collect()
    }

    /// DOT digraph with canonical tree labels and lower-to-upper edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph tamari_{} {{", self.degree).unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{v}\"];").unwrap();
        }
        for (lo, hi) in &self.edges {
            writeln!(out, "  n{lo} -> n{hi};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// `{"degree": d, "vertices": [...], "edges": [[lower, upper], ...]}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Repr<'a> {
            degree: usize,
            vertices: &'a [Tree],
            edges: &'a [(usize, usize)],
        }
        serde_json::to_string(&Repr {
            degree: self.degree,
            vertices: &self.vertices,
            edges: &self.edges,
        })
        .expect("diagrams always serialize")
    }
}

fn cache() -> &'static [OnceLock<Arc<HasseDiagram>>; MAX_CACHED_DEGREE + 1] {
    static CACHE: [OnceLock<Arc<HasseDiagram>>; MAX_CACHED_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_CACHED_DEGREE + 1];
    &CACHE
}

/// The memoized diagram of `degree`, refusing degrees above [`DEFAULT_CAP`].
pub fn hasse(degree: usize) -> Result<Arc<HasseDiagram>, TamariError> {
    hasse_capped(degree, DEFAULT_CAP)
}

/// Like [`hasse`] with an explicit cap.
pub fn hasse_capped(degree: usize, cap: usize) -> Result<Arc<HasseDiagram>, TamariError> {
    if degree > cap {
        return Err(TamariError::CapExceeded { degree, cap });
    }
    match cache().get(degree) {
        Some(slot) => Ok(slot
            .get_or_init(|| Arc::new(HasseDiagram::build(degree)))
            .clone()),
        None => Ok(Arc::new(HasseDiagram::build(degree))),
    }
}

fn same_degree(a: &Tree, b: &Tree) -> Result<usize, TamariError> {
    if a.degree() == b.degree() {
        Ok(a.degree())
    } else {
        Err(TamariError::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        })
    }
}

/// `a <= b` in the Tamari order.
pub fn leq(a: &Tree, b: &Tree) -> Result<bool, TamariError> {
    leq_capped(a, b, DEFAULT_CAP)
}

/// Like [`leq`] with an explicit cap.
pub fn leq_capped(a: &Tree, b: &Tree, cap: usize) -> Result<bool, TamariError> {
    let h = hasse_capped(same_degree(a, b)?, cap)?;
    let (i, j) = (h.index_of(a).unwrap(), h.index_of(b).unwrap());
    Ok(h.leq_index(i, j))
}

/// All `r` with `a <= r <= b`; empty when `a` is not below `b`.
pub fn interval(a: &Tree, b: &Tree) -> Result<TreeSet, TamariError> {
    interval_capped(a, b, DEFAULT_CAP)
}

/// Like [`interval`] with an explicit cap.
pub fn interval_capped(a: &Tree, b: &Tree, cap: usize) -> Result<TreeSet, TamariError> {
    let degree = same_degree(a, b)?;
    let h = hasse_capped(degree, cap)?;
    let (i, j) = (h.index_of(a).unwrap(), h.index_of(b).unwrap());
    let members = h
        .interval_indices(i, j)
        .into_iter()
        .map(|r| h.vertices()[r].clone())
        .collect();
    Ok(TreeSet::from_btree_unchecked(degree, members))
}
