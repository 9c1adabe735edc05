//! Planar binary rooted trees.
//!
//! A [`Tree`] is either the trivial tree (a single leaf, written `.`) or the
//! grafting of an ordered pair of trees (written `(l r)`). The number of
//! internal vertices is the tree's *degree*; a tree of degree `n` has `n + 1`
//! leaves. Trees are immutable and share subtrees through [`Arc`], so they are
//! cheap to clone and can be sent across threads.
//!
//! [`TreeSet`] is a duplicate-free, canonically ordered set of trees that all
//! have the same degree.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A planar binary rooted tree.
///
/// The derived ordering is the canonical total order: the leaf sorts before
/// every node and nodes compare lexicographically on `(left, right)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf,
    Node(Arc<Node>),
}

/// An internal vertex together with its two subtrees.
#[derive(PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    left: Tree,
    right: Tree,
    // Determined by `left` and `right`, so it never affects the ordering.
    degree: usize,
}

impl Tree {
    pub const fn leaf() -> Tree {
        Tree::Leaf
    }

    /// Joins the roots of `left` and `right` under a new root vertex.
    pub fn graft(left: Tree, right: Tree) -> Tree {
        let degree = left.degree() + right.degree() + 1;
        Tree::Node(Arc::new(Node {
            left,
            right,
            degree,
        }))
    }

    /// The tree with a single internal vertex; it represents the integer 1.
    pub fn one() -> Tree {
        Tree::graft(Tree::Leaf, Tree::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    /// Number of internal vertices.
    pub fn degree(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(node) => node.degree,
        }
    }

    pub fn leaves(&self) -> usize {
        self.degree() + 1
    }

    pub fn left(&self) -> Option<&Tree> {
        self.split().map(|(l, _)| l)
    }

    pub fn right(&self) -> Option<&Tree> {
        self.split().map(|(_, r)| r)
    }

    /// The two subtrees of a nontrivial tree, `None` for the leaf.
    pub fn split(&self) -> Option<(&Tree, &Tree)> {
        match self {
            Tree::Leaf => None,
            Tree::Node(node) => Some((&node.left, &node.right)),
        }
    }

    /// `left_comb(0)` is the leaf, `left_comb(n) = (left_comb(n - 1) .)`.
    pub fn left_comb(degree: usize) -> Tree {
        (0..degree).fold(Tree::Leaf, |acc, _| Tree::graft(acc, Tree::Leaf))
    }

    /// `right_comb(0)` is the leaf, `right_comb(n) = (. right_comb(n - 1))`.
    pub fn right_comb(degree: usize) -> Tree {
        (0..degree).fold(Tree::Leaf, |acc, _| Tree::graft(Tree::Leaf, acc))
    }

    /// Replaces the leftmost leaf of `self` by `t`.
    pub fn replace_leftmost_leaf(&self, t: &Tree) -> Tree {
        match self.split() {
            None => t.clone(),
            Some((l, r)) => Tree::graft(l.replace_leftmost_leaf(t), r.clone()),
        }
    }

    /// Replaces the rightmost leaf of `self` by `t`.
    pub fn replace_rightmost_leaf(&self, t: &Tree) -> Tree {
        match self.split() {
            None => t.clone(),
            Some((l, r)) => Tree::graft(l.clone(), r.replace_rightmost_leaf(t)),
        }
    }

    /// All trees of the given degree in canonical order.
    pub fn all_of_degree(degree: usize) -> Vec<Tree> {
        let mut by_degree: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
        for k in 1..=degree {
            let mut level = Vec::new();
            for i in 0..k {
                for l in &by_degree[i] {
                    for r in &by_degree[k - 1 - i] {
                        level.push(Tree::graft(l.clone(), r.clone()));
                    }
                }
            }
            level.sort();
            by_degree.push(level);
        }
        by_degree.swap_remove(degree)
    }

    /// Renders the canonical single-space text form.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(4 * self.leaves());
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self.split() {
            None => out.push('.'),
            Some((l, r)) => {
                out.push('(');
                l.render_into(out);
                out.push(' ');
                r.render_into(out);
                out.push(')');
            }
        }
    }

    pub fn parse(text: &str) -> Result<Tree, ParseError> {
        parse_tree(text)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.render())
    }
}

impl FromStr for Tree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

impl Serialize for Tree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_tree(&text).map_err(serde::de::Error::custom)
    }
}

/// Malformed tree text. Positions are byte offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unbalanced parentheses at position {pos}")]
    Unbalanced { pos: usize },
    #[error("unexpected character {found:?} at position {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("node at position {pos} must have exactly two children, found {found}")]
    Arity { pos: usize, found: usize },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match *self {
            ParseError::Empty => None,
            ParseError::Unbalanced { pos }
            | ParseError::UnexpectedChar { pos, .. }
            | ParseError::Arity { pos, .. }
            | ParseError::Trailing { pos } => Some(pos),
        }
    }
}

// Iterative so that deep combs cannot overflow the stack.
fn parse_tree(text: &str) -> Result<Tree, ParseError> {
    struct Frame {
        open: usize,
        children: Vec<Tree>,
    }

    let mut stack: Vec<Frame> = Vec::new();
    let mut root: Option<Tree> = None;

    for (pos, ch) in text.char_indices() {
        if ch.is_whitespace() {
            continue;
        }
        if root.is_some() {
            return Err(ParseError::Trailing { pos });
        }
        let finished = match ch {
            '(' => {
                if let Some(top) = stack.last() {
                    if top.children.len() == 2 {
                        return Err(ParseError::Arity {
                            pos: top.open,
                            found: 3,
                        });
                    }
                }
                stack.push(Frame {
                    open: pos,
                    children: Vec::with_capacity(2),
                });
                None
            }
            '.' => Some(Tree::Leaf),
            ')' => {
                let frame = stack.pop().ok_or(ParseError::Unbalanced { pos })?;
                match <[Tree; 2]>::try_from(frame.children) {
                    Ok([l, r]) => Some(Tree::graft(l, r)),
                    Err(children) => {
                        return Err(ParseError::Arity {
                            pos: frame.open,
                            found: children.len(),
                        })
                    }
                }
            }
            found => return Err(ParseError::UnexpectedChar { pos, found }),
        };
        if let Some(tree) = finished {
            match stack.last_mut() {
                None => root = Some(tree),
                Some(top) => {
                    if top.children.len() == 2 {
                        return Err(ParseError::Arity {
                            pos: top.open,
                            found: 3,
                        });
                    }
                    top.children.push(tree);
                }
            }
        }
    }

    if let Some(frame) = stack.first() {
        return Err(ParseError::Unbalanced { pos: frame.open });
    }
    root.ok_or(ParseError::Empty)
}

/// Errors raised when building a [`TreeSet`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeSetError {
    #[error("tree {tree} has degree {found}, set has degree {expected}")]
    DegreeMismatch {
        expected: usize,
        found: usize,
        tree: String,
    },
    #[error("the number of leaves must be at least 1")]
    NoLeaves,
}

/// A duplicate-free set of trees of one degree, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreeSet {
    degree: usize,
    members: BTreeSet<Tree>,
}

impl TreeSet {
    pub fn empty(degree: usize) -> TreeSet {
        TreeSet {
            degree,
            members: BTreeSet::new(),
        }
    }

    pub fn singleton(tree: Tree) -> TreeSet {
        let degree = tree.degree();
        TreeSet {
            degree,
            members: BTreeSet::from([tree]),
        }
    }

    pub fn from_trees<I>(degree: usize, trees: I) -> Result<TreeSet, TreeSetError>
    where
        I: IntoIterator<Item = Tree>,
    {
        let mut set = TreeSet::empty(degree);
        for t in trees {
            set.insert(t)?;
        }
        Ok(set)
    }

    /// Every tree with `n_leaves` leaves; there are Catalan(`n_leaves - 1`)
    /// of them.
    pub fn enumerate(n_leaves: usize) -> Result<TreeSet, TreeSetError> {
        if n_leaves == 0 {
            return Err(TreeSetError::NoLeaves);
        }
        Ok(TreeSet::all_of_degree(n_leaves - 1))
    }

    pub fn all_of_degree(degree: usize) -> TreeSet {
        TreeSet {
            degree,
            members: Tree::all_of_degree(degree).into_iter().collect(),
        }
    }

    pub(crate) fn from_btree_unchecked(degree: usize, members: BTreeSet<Tree>) -> TreeSet {
        debug_assert!(members.iter().all(|t| t.degree() == degree));
        TreeSet { degree, members }
    }

    pub fn insert(&mut self, tree: Tree) -> Result<bool, TreeSetError> {
        if tree.degree() != self.degree {
            return Err(TreeSetError::DegreeMismatch {
                expected: self.degree,
                found: tree.degree(),
                tree: tree.render(),
            });
        }
        Ok(self.members.insert(tree))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, tree: &Tree) -> bool {
        self.members.contains(tree)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Tree> + DoubleEndedIterator + '_ {
        self.members.iter()
    }

    pub fn first(&self) -> Option<&Tree> {
        self.members.first()
    }

    pub fn is_disjoint(&self, other: &TreeSet) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn is_subset(&self, other: &TreeSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &TreeSet) -> Result<TreeSet, TreeSetError> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(TreeSetError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
                tree: other.members.first().map(Tree::render).unwrap_or_default(),
            });
        }
        Ok(TreeSet {
            degree: self.degree,
            members: self.members.union(&other.members).cloned().collect(),
        })
    }

    pub fn to_vec(&self) -> Vec<Tree> {
        self.members.iter().cloned().collect()
    }

    /// `{"degree": n, "trees": [...]}` with trees in canonical order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree sets always serialize")
    }
}

impl fmt::Debug for TreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeSet(deg {}) ", self.degree)?;
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a TreeSet {
    type Item = &'a Tree;
    type IntoIter = std::collections::btree_set::Iter<'a, Tree>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[derive(Serialize, Deserialize)]
struct TreeSetRepr {
    degree: usize,
    trees: Vec<Tree>,
}

impl Serialize for TreeSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TreeSetRepr {
            degree: self.degree,
            trees: self.to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TreeSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TreeSetRepr::deserialize(deserializer)?;
        TreeSet::from_trees(repr.degree, repr.trees).map_err(serde::de::Error::custom)
    }
}

/// Catalan number `(2n)! / (n! (n+1)!)`, computed by the product formula.
pub fn catalan(n: u64) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn graft_examples() {
        assert_eq!(Tree::graft(Tree::Leaf, Tree::Leaf).render(), "(. .)");
        assert_eq!(Tree::graft(Tree::one(), Tree::Leaf).render(), "((. .) .)");
    }

    #[test]
    fn graft_degree_is_additive() {
        let trees: Vec<Tree> = (0..=4).flat_map(Tree::all_of_degree).collect();
        for a in &trees {
            for b in &trees {
                let g = Tree::graft(a.clone(), b.clone());
                assert_eq!(g.degree(), a.degree() + b.degree() + 1);
                assert_eq!(g.split(), Some((a, b)));
            }
        }
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(TreeSet::enumerate(1).unwrap().to_vec(), vec![Tree::Leaf]);
        assert_eq!(TreeSet::enumerate(4).unwrap().len(), 5);
        assert_eq!(TreeSet::enumerate(0), Err(TreeSetError::NoLeaves));
    }

    #[test]
    fn catalan_counts_match_enumeration() {
        let expected = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (k, &c) in (1..=10).zip(expected.iter()) {
            assert_eq!(catalan(k as u64 - 1), c);
            assert_eq!(TreeSet::enumerate(k).unwrap().len() as u128, c);
        }
    }

    #[test]
    fn structural_induction() {
        for d in 1..=6 {
            for tree in Tree::all_of_degree(d) {
                let (l, r) = tree.split().unwrap();
                assert!(l.degree() < d && r.degree() < d);
                assert_eq!(Tree::graft(l.clone(), r.clone()), tree);
            }
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            t("(. (. .))"),
            Tree::graft(Tree::Leaf, Tree::graft(Tree::Leaf, Tree::Leaf))
        );
        assert_eq!(t("  ( .\n(. .) ) "), t("(. (. .))"));
        assert_eq!(t("."), Tree::Leaf);
    }

    #[test]
    fn parse_errors() {
        let err = Tree::parse("(. .").unwrap_err();
        assert!(matches!(err, ParseError::Unbalanced { pos: 0 }));
        assert!(err.to_string().contains("unbalanced"));
        assert!(matches!(
            Tree::parse("(. .))"),
            Err(ParseError::Trailing { pos: 5 })
        ));
        assert!(matches!(
            Tree::parse(")"),
            Err(ParseError::Unbalanced { pos: 0 })
        ));
        assert!(matches!(
            Tree::parse("(. x)"),
            Err(ParseError::UnexpectedChar { pos: 3, found: 'x' })
        ));
        assert!(matches!(
            Tree::parse("(.)"),
            Err(ParseError::Arity { pos: 0, found: 1 })
        ));
        assert!(matches!(
            Tree::parse("(. . .)"),
            Err(ParseError::Arity { pos: 0, found: 3 })
        ));
        assert_eq!(Tree::parse("   "), Err(ParseError::Empty));
        assert!(matches!(
            Tree::parse(". ."),
            Err(ParseError::Trailing { pos: 2 })
        ));
    }

    #[test]
    fn render_parse_round_trip() {
        for d in 0..=6 {
            for tree in Tree::all_of_degree(d) {
                let text = tree.render();
                assert_eq!(t(&text), tree);
                assert_eq!(t(&text).render(), text);
            }
        }
    }

    #[test]
    fn deep_comb_parses_without_recursion() {
        let comb = "(. ".repeat(20_000) + "." + &")".repeat(20_000);
        let tree = Tree::parse(&comb).unwrap();
        assert_eq!(tree.degree(), 20_000);
        // Dropping a deep Arc chain recurses, so keep it alive.
        std::mem::forget(tree);
    }

    #[test]
    fn canonical_order() {
        assert!(Tree::Leaf < Tree::one());
        let a = t("((. .) .)");
        assert_eq!(a.cmp(&a), std::cmp::Ordering::Equal);
        for d in 0..=6 {
            let trees = Tree::all_of_degree(d);
            for w in trees.windows(2) {
                assert!(w[0] < w[1]);
            }
            for a in &trees {
                for b in &trees {
                    assert_eq!(a.cmp(b), b.cmp(a).reverse());
                    if a != b {
                        // left part dominates the comparison
                        let (al, ar) = a.split().unwrap();
                        let (bl, br) = b.split().unwrap();
                        assert_eq!(a.cmp(b), al.cmp(bl).then(ar.cmp(br)));
                    }
                }
            }
        }
        assert_eq!(Tree::all_of_degree(4), Tree::all_of_degree(4));
    }

    #[test]
    fn combs() {
        assert_eq!(Tree::left_comb(2).render(), "((. .) .)");
        assert_eq!(Tree::right_comb(3).render(), "(. (. (. .)))");
        assert_eq!(Tree::left_comb(0), Tree::Leaf);
    }

    #[test]
    fn leftmost_rightmost_replacement() {
        let y = Tree::one();
        assert_eq!(y.replace_leftmost_leaf(&y).render(), "((. .) .)");
        assert_eq!(y.replace_rightmost_leaf(&y).render(), "(. (. .))");
        assert_eq!(Tree::Leaf.replace_leftmost_leaf(&y), y);
    }

    #[test]
    fn tree_set_rejects_mixed_degrees() {
        let mut set = TreeSet::empty(1);
        assert_eq!(set.insert(Tree::one()), Ok(true));
        assert_eq!(set.insert(Tree::one()), Ok(false));
        assert!(matches!(
            set.insert(Tree::Leaf),
            Err(TreeSetError::DegreeMismatch {
                expected: 1,
                found: 0,
                ..
            })
        ));
    }

    #[test]
    fn tree_set_json() {
        let set = TreeSet::all_of_degree(2);
        assert_eq!(
            set.to_json(),
            r#"{"degree":2,"trees":["(. (. .))","((. .) .)"]}"#
        );
        let back: TreeSet = serde_json::from_str(&set.to_json()).unwrap();
        assert_eq!(back, set);
    }
}
