//! Integer point realizations of the Tamari order.
//!
//! Two maps send a tree of degree `k` to a point of `Z^k`:
//!
//! * the parenthesis code, counting the opening parentheses in front of each
//!   letter of the tree's bracketed word (all but the last letter). Every code
//!   sums to `k`.
//! * the associahedron coordinates, where the entry for the `i`-th adjacent
//!   letter pair is `a * b`, with `a` the opening parentheses left of `x_i`
//!   and `b` the closing parentheses right of `x_{i+1}` inside the smallest
//!   bracketed subword holding both letters. Every point sums to `k(k+1)/2`.
//!
//! The canopy of a tree records whether each interior leaf is a left (`-`)
//! or a right (`+`) child. [`section`] picks the largest tree of each canopy
//! class; their parenthesis codes are the corners of a combinatorial cube
//! (see [`hypercube`]).

mod exact;
pub mod facets;
pub mod hypercube;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::tamari::{self, TamariError};
use crate::tree::Tree;

pub use facets::{certify_extreme, facet_system, Facet, FacetSystem};
pub use hypercube::{covering_edge_vectors, verify_hypercube, EdgeReport, HypercubeReport};

/// Degree limit for [`section`]; canopies of length up to 9.
pub const SECTION_MAX_DEGREE: usize = tamari::MAX_CACHED_DEGREE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the trivial tree has no bracketed word")]
    TrivialTree,
    #[error("no points given")]
    NoPoints,
    #[error("points have different lengths")]
    LengthMismatch,
    #[error("points span an affine space of dimension {dimension}, need at least 2")]
    Degenerate { dimension: usize },
    #[error("dimension {0} is outside the supported range 2..=4")]
    UnsupportedDimension(usize),
    #[error("invalid canopy sign {0:?}, expected '-' or '+'")]
    InvalidSign(char),
    #[error("canopy class {0} has no largest element")]
    NoFiberMaximum(String),
    #[error("unknown coordinate map {0:?}, expected tamari or loday")]
    UnknownMap(String),
    #[error(transparent)]
    Tamari(#[from] TamariError),
}

/// An integer point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> LatticePoint {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `self - other`, coordinate-wise.
    pub fn minus(&self, other: &LatticePoint) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Letter(usize),
}

fn tokens(t: &Tree) -> Result<Vec<Token>, GeometryError> {
    fn walk(t: &Tree, next_letter: &mut usize, out: &mut Vec<Token>) {
        match t.split() {
            None => {
                out.push(Token::Letter(*next_letter));
                *next_letter += 1;
            }
            Some((l, r)) => {
                out.push(Token::Open);
                walk(l, next_letter, out);
                walk(r, next_letter, out);
                out.push(Token::Close);
            }
        }
    }
    if t.is_leaf() {
        return Err(GeometryError::TrivialTree);
    }
    let mut out = Vec::with_capacity(3 * t.leaves());
    walk(t, &mut 0, &mut out);
    Ok(out)
}

/// The fully bracketed word of a nontrivial tree, letters `x0, x1, ...`.
pub fn to_word(t: &Tree) -> Result<String, GeometryError> {
    Ok(tokens(t)?
        .into_iter()
        .map(|tok| match tok {
            Token::Open => "(".to_string(),
            Token::Close => ")".to_string(),
            Token::Letter(i) => format!("x{i}"),
        })
        .collect())
}

/// Opening parentheses directly in front of each letter except the last.
pub fn tamari_code(t: &Tree) -> Result<LatticePoint, GeometryError> {
    let toks = tokens(t)?;
    let mut coords = Vec::with_capacity(t.degree());
    let mut run = 0;
    for tok in toks {
        match tok {
            Token::Open => run += 1,
            Token::Letter(i) => {
                if i < t.degree() {
                    coords.push(run);
                }
                run = 0;
            }
            Token::Close => run = 0,
        }
    }
    Ok(LatticePoint(coords))
}

/// Associahedron coordinates computed on the bracketed word.
pub fn loday_coords(t: &Tree) -> Result<LatticePoint, GeometryError> {
    let toks = tokens(t)?;
    // position of each letter and of each bracket's partner
    let mut letter_pos = vec![0; t.leaves()];
    let mut partner = vec![usize::MAX; toks.len()];
    let mut open_stack = Vec::new();
    for (pos, tok) in toks.iter().enumerate() {
        match *tok {
            Token::Open => open_stack.push(pos),
            Token::Close => {
                let open = open_stack.pop().expect("tokens are balanced");
                partner[open] = pos;
                partner[pos] = open;
            }
            Token::Letter(i) => letter_pos[i] = pos,
        }
    }
    let coords = (0..t.degree())
        .map(|i| {
            let (left, right) = (letter_pos[i], letter_pos[i + 1]);
            // innermost opening bracket before x_i that closes after x_{i+1}
            let start = (0..left)
                .rev()
                .find(|&p| toks[p] == Token::Open && partner[p] > right)
                .expect("the whole word contains both letters");
            let end = partner[start];
            let a = toks[start..left]
                .iter()
                .filter(|&&k| k == Token::Open)
                .count();
            let b = toks[right..=end]
                .iter()
                .filter(|&&k| k == Token::Close)
                .count();
            (a * b) as i64
        })
        .collect();
    Ok(LatticePoint(coords))
}

/// Associahedron coordinates from subtree sizes: for the internal vertices in
/// left-to-right order, leaves of the left subtree times leaves of the right.
pub fn loday_coords_by_subtrees(t: &Tree) -> Result<LatticePoint, GeometryError> {
    fn walk(t: &Tree, out: &mut Vec<i64>) {
        if let Some((l, r)) = t.split() {
            walk(l, out);
            out.push((l.leaves() * r.leaves()) as i64);
            walk(r, out);
        }
    }
    if t.is_leaf() {
        return Err(GeometryError::TrivialTree);
    }
    let mut out = Vec::with_capacity(t.degree());
    walk(t, &mut out);
    Ok(LatticePoint(out))
}

/// Which point realization to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoordMap {
    Tamari,
    Loday,
}

impl CoordMap {
    pub fn apply(self, t: &Tree) -> Result<LatticePoint, GeometryError> {
        match self {
            CoordMap::Tamari => tamari_code(t),
            CoordMap::Loday => loday_coords(t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoordMap::Tamari => "tamari",
            CoordMap::Loday => "loday",
        }
    }
}

impl FromStr for CoordMap {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tamari" => Ok(CoordMap::Tamari),
            "loday" => Ok(CoordMap::Loday),
            other => Err(GeometryError::UnknownMap(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

/// Orientation of the interior leaves, left to right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Canopy(Vec<Sign>);

impl Canopy {
    pub fn new(signs: Vec<Sign>) -> Canopy {
        Canopy(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^n` canopies of length `n`, `-` before `+`.
    pub fn all(n: usize) -> Vec<Canopy> {
        (0..1usize << n)
            .map(|bits| {
                Canopy(
                    (0..n)
                        .map(|i| {
                            if bits >> (n - 1 - i) & 1 == 0 {
                                Sign::Minus
                            } else {
                                Sign::Plus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Canopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Minus => "-",
                Sign::Plus => "+",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Canopy {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '-' => Ok(Sign::Minus),
                '+' => Ok(Sign::Plus),
                other => Err(GeometryError::InvalidSign(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Canopy)
    }
}

/// The canopy of a nontrivial tree: `-` for an interior leaf that is a left
/// child, `+` for a right child. The outermost two leaves are skipped.
pub fn canopy(t: &Tree) -> Result<Canopy, GeometryError> {
    fn walk(t: &Tree, is_left_child: bool, out: &mut Vec<Sign>) {
        match t.split() {
            None => out.push(if is_left_child {
                Sign::Minus
            } else {
                Sign::Plus
            }),
            Some((l, r)) => {
                walk(l, true, out);
                walk(r, false, out);
            }
        }
    }
    if t.is_leaf() {
        return Err(GeometryError::TrivialTree);
    }
    let mut all = Vec::with_capacity(t.leaves());
    walk(t, false, &mut all);
    all.pop();
    all.remove(0);
    Ok(Canopy(all))
}

/// The largest tree in the Tamari order among those with canopy `c`.
pub fn section(c: &Canopy) -> Result<Tree, GeometryError> {
    let degree = c.len() + 1;
    let h = tamari::hasse_capped(degree, SECTION_MAX_DEGREE)?;
    let in_fiber: Vec<bool> = h
        .vertices()
        .iter()
        .map(|t| canopy(t).map(|k| &k == c))
        .collect::<Result<_, _>>()?;
    let start = in_fiber
        .iter()
        .position(|&b| b)
        .expect("every canopy is realized by some tree");
    // climb inside the class until no cover stays in it
    let mut top = start;
    while let Some(&next) = h.upper_covers(top).iter().find(|&&u| in_fiber[u]) {
        top = next;
    }
    let below = h.reachable_down(top);
    let is_max = in_fiber
        .iter()
        .enumerate()
        .all(|(i, &member)| !member || below.contains(i));
    if !is_max {
        return Err(GeometryError::NoFiberMaximum(c.to_string()));
    }
    Ok(h.vertices()[top].clone())
}

#[derive(Serialize)]
struct PointRow<'a> {
    tree: &'a Tree,
    coords: &'a LatticePoint,
}

/// Output format for [`export_coords`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// One row per tree of `degree` in canonical order.
pub fn export_coords(
    degree: usize,
    map: CoordMap,
    format: ExportFormat,
) -> Result<String, GeometryError> {
    if degree == 0 {
        return Err(GeometryError::TrivialTree);
    }
    let trees = Tree::all_of_degree(degree);
    let points = trees
        .iter()
        .map(|t| map.apply(t))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        ExportFormat::Csv => {
            let mut out = String::from("tree");
            for i in 0..degree {
                out.push_str(&format!(",c{i}"));
            }
            out.push('\n');
            for (t, p) in trees.iter().zip(&points) {
                out.push_str(&t.render());
                for c in p.coords() {
                    out.push_str(&format!(",{c}"));
                }
                out.push('\n');
            }
            Ok(out)
        }
        ExportFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                degree: usize,
                map: &'static str,
                points: Vec<PointRow<'a>>,
            }
            let doc = Doc {
                degree,
                map: map.name(),
                points: trees
                    .iter()
                    .zip(&points)
                    .map(|(tree, coords)| PointRow { tree, coords })
                    .collect(),
            };
            Ok(serde_json::to_string(&doc).expect("coordinates always serialize") + "\n")
        }
    }
}
