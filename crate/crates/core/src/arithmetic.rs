//! Split addition and multiplication of trees.
//!
//! For nontrivial trees `s` and `t` the two halves of the sum are
//!
//! ```text
//! s -| t = s.left  v (s.right + t)
//! s |- t = (s + t.left) v t.right
//! s +  t = (s -| t) u (s |- t)
//! ```
//!
//! where `v` is grafting and `u` is set union. The leaf is the zero of the
//! sum. Unit conventions for the halves: `s -| 0 = {s}`, `0 |- t = {t}` for
//! `t != 0`, while `0 -| t = {}` for `t != 0` and `s |- 0 = {}`. With these,
//! `s + t` is always the disjoint union of its two halves and the three
//! splitting relations hold for every triple, zeros included.
//!
//! Everything extends to [`TreeSet`]s by taking the union over all pairs.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::par;
use crate::tree::{Tree, TreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("the trivial tree has no decomposition into copies of 1")]
    DecomposeLeaf,
    #[error("cannot project an empty tree set to an integer")]
    EmptyProjection,
}

fn add_into(s: &Tree, t: &Tree, out: &mut BTreeSet<Tree>) {
    match (s.split(), t.split()) {
        (None, _) => {
            out.insert(t.clone());
        }
        (_, None) => {
            out.insert(s.clone());
        }
        (Some(_), Some(_)) => {
            left_into(s, t, out);
            right_into(s, t, out);
        }
    }
}

fn left_into(s: &Tree, t: &Tree, out: &mut BTreeSet<Tree>) {
    match (s.split(), t.split()) {
        (_, None) => {
            out.insert(s.clone());
        }
        (None, Some(_)) => {}
        (Some((sl, sr)), Some(_)) => {
            let mut inner = BTreeSet::new();
            add_into(sr, t, &mut inner);
            out.extend(inner.into_iter().map(|r| Tree::graft(sl.clone(), r)));
        }
    }
}

fn right_into(s: &Tree, t: &Tree, out: &mut BTreeSet<Tree>) {
    match (s.split(), t.split()) {
        (None, Some(_)) => {
            out.insert(t.clone());
        }
        (_, None) => {}
        (Some(_), Some((tl, tr))) => {
            let mut inner = BTreeSet::new();
            add_into(s, tl, &mut inner);
            out.extend(inner.into_iter().map(|r| Tree::graft(r, tr.clone())));
        }
    }
}

/// `s -| t` for single trees.
pub fn left(s: &Tree, t: &Tree) -> TreeSet {
    let mut out = BTreeSet::new();
    left_into(s, t, &mut out);
    TreeSet::from_btree_unchecked(s.degree() + t.degree(), out)
}

/// `s |- t` for single trees.
pub fn right(s: &Tree, t: &Tree) -> TreeSet {
    let mut out = BTreeSet::new();
    right_into(s, t, &mut out);
    TreeSet::from_btree_unchecked(s.degree() + t.degree(), out)
}

/// `s + t` for single trees.
pub fn add(s: &Tree, t: &Tree) -> TreeSet {
    let mut out = BTreeSet::new();
    add_into(s, t, &mut out);
    TreeSet::from_btree_unchecked(s.degree() + t.degree(), out)
}

// Below this many pairs the rayon overhead dominates.
const PAR_PAIRS: usize = 256;

fn pairwise<F>(s: &TreeSet, t: &TreeSet, op: F) -> TreeSet
where
    F: Fn(&Tree, &Tree, &mut BTreeSet<Tree>) + Sync + Send,
{
    let degree = s.degree() + t.degree();
    let mut out = BTreeSet::new();
    if s.len() * t.len() < PAR_PAIRS {
        for a in s {
            for b in t {
                op(a, b, &mut out);
            }
        }
    } else {
        let left: Vec<Tree> = s.to_vec();
        let parts = par::map(&left, |a| {
            let mut part = BTreeSet::new();
            for b in t {
                op(a, b, &mut part);
            }
            part
        });
        for part in parts {
            out.extend(part);
        }
    }
    TreeSet::from_btree_unchecked(degree, out)
}

/// `S -| T`: union of `s -| t` over all pairs.
pub fn op_left(s: &TreeSet, t: &TreeSet) -> TreeSet {
    pairwise(s, t, left_into)
}

/// `S |- T`: union of `s |- t` over all pairs.
pub fn op_right(s: &TreeSet, t: &TreeSet) -> TreeSet {
    pairwise(s, t, right_into)
}

/// `S + T`: union of `s + t` over all pairs.
pub fn sum(s: &TreeSet, t: &TreeSet) -> TreeSet {
    pairwise(s, t, add_into)
}

/// All trees of degree `n`: the integer `n` split into its components.
pub fn embed(n: usize) -> TreeSet {
    TreeSet::all_of_degree(n)
}

/// The common degree of a non-empty set.
pub fn project(s: &TreeSet) -> Result<usize, ArithmeticError> {
    if s.is_empty() {
        Err(ArithmeticError::EmptyProjection)
    } else {
        Ok(s.degree())
    }
}

/// A parenthesized expression in copies of 1 and the two half-operations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    One,
    Left(Box<Word>, Box<Word>),
    Right(Box<Word>, Box<Word>),
}

impl Word {
    pub fn left(a: Word, b: Word) -> Word {
        Word::Left(Box::new(a), Box::new(b))
    }

    pub fn right(a: Word, b: Word) -> Word {
        Word::Right(Box::new(a), Box::new(b))
    }

    pub fn ones(&self) -> usize {
        match self {
            Word::One => 1,
            Word::Left(a, b) | Word::Right(a, b) => a.ones() + b.ones(),
        }
    }

    /// Every word with exactly `ones` copies of 1: all bracketings times all
    /// choices of operation at each connective.
    pub fn all_with_ones(ones: usize) -> Vec<Word> {
        let mut by_count: Vec<Vec<Word>> = vec![Vec::new(), vec![Word::One]];
        for k in 2..=ones {
            let mut level = Vec::new();
            for i in 1..k {
                for a in &by_count[i] {
                    for b in &by_count[k - i] {
                        level.push(Word::left(a.clone(), b.clone()));
                        level.push(Word::right(a.clone(), b.clone()));
                    }
                }
            }
            by_count.push(level);
        }
        by_count.get(ones).cloned().unwrap_or_default()
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        let (a, b, op) = match self {
            Word::One => return f.write_str("1"),
            Word::Left(a, b) => (a, b, "-|"),
            Word::Right(a, b) => (a, b, "|-"),
        };
        if !top {
            f.write_str("(")?;
        }
        a.fmt_inner(f, false)?;
        write!(f, " {op} ")?;
        b.fmt_inner(f, false)?;
        if !top {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f, true)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{self}]")
    }
}

/// Writes a nontrivial tree in copies of 1 using `l v r = (l |- 1) -| r`,
/// dropping the side whose subtree is the leaf.
pub fn decompose(t: &Tree) -> Result<Word, ArithmeticError> {
    let (l, r) = t.split().ok_or(ArithmeticError::DecomposeLeaf)?;
    let mut word = Word::One;
    if !l.is_leaf() {
        word = Word::right(decompose(l)?, word);
    }
    if !r.is_leaf() {
        word = Word::left(word, decompose(r)?);
    }
    Ok(word)
}

/// Evaluates a word with `1` interpreted as the single tree of degree 1.
pub fn evaluate(word: &Word) -> TreeSet {
    evaluate_with(word, &TreeSet::singleton(Tree::one()))
}

/// Evaluates a word with every copy of `1` replaced by `one`.
pub fn evaluate_with(word: &Word, one: &TreeSet) -> TreeSet {
    match word {
        Word::One => one.clone(),
        Word::Left(a, b) => op_left(&evaluate_with(a, one), &evaluate_with(b, one)),
        Word::Right(a, b) => op_right(&evaluate_with(a, one), &evaluate_with(b, one)),
    }
}

/// `u x T` for a single tree `u`: decompose `u` and substitute `T` for 1.
pub fn multiply_tree(u: &Tree, t: &TreeSet) -> TreeSet {
    if u.is_leaf() || t.degree() == 0 {
        return TreeSet::singleton(Tree::Leaf);
    }
    let word = decompose(u).expect("nontrivial trees always decompose");
    evaluate_with(&word, t)
}

/// `S x T`: union of `u x T` over the members of `S`. Multiplying by a
/// degree-0 factor on either side gives `{.}`.
pub fn multiply(s: &TreeSet, t: &TreeSet) -> TreeSet {
    let degree = s.degree() * t.degree();
    if s.is_empty() {
        return TreeSet::empty(degree);
    }
    let mut out = BTreeSet::new();
    for u in s {
        out.extend(multiply_tree(u, t).iter().cloned());
    }
    TreeSet::from_btree_unchecked(degree, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn set(trees: &[&str]) -> TreeSet {
        let trees: Vec<Tree> = trees.iter().map(|s| t(s)).collect();
        TreeSet::from_trees(trees[0].degree(), trees).unwrap()
    }

    fn one() -> TreeSet {
        embed(1)
    }

    #[test]
    fn one_left_one() {
        assert_eq!(op_left(&one(), &one()), set(&["(. (. .))"]));
        assert_eq!(op_right(&one(), &one()), set(&["((. .) .)"]));
    }

    #[test]
    fn two_left_one() {
        assert_eq!(
            op_left(&embed(2), &embed(1)),
            set(&["((. .) (. .))", "(. ((. .) .))", "(. (. (. .)))"])
        );
        assert_eq!(
            op_right(&embed(2), &embed(1)),
            set(&["(((. .) .) .)", "((. (. .)) .)"])
        );
    }

    #[test]
    fn unit_rules() {
        let zero = embed(0);
        for d in 0..=5 {
            for s in Tree::all_of_degree(d) {
                let single = TreeSet::singleton(s.clone());
                assert_eq!(op_left(&single, &zero), single);
                assert_eq!(sum(&single, &zero), single);
                assert_eq!(sum(&zero, &single), single);
                if d > 0 {
                    assert_eq!(op_right(&zero, &single), single);
                    assert!(op_left(&zero, &single).is_empty());
                }
                assert!(op_right(&single, &zero).is_empty());
            }
        }
    }

    #[test]
    fn small_sums() {
        assert_eq!(sum(&embed(1), &embed(1)), embed(2));
        assert_eq!(sum(&embed(2), &embed(1)), embed(3));
        for m in 0..=6 {
            for n in 0..=(6 - m) {
                assert_eq!(sum(&embed(m), &embed(n)), embed(m + n), "{m} + {n}");
            }
        }
    }

    #[test]
    fn halves_are_disjoint() {
        for a in 1..=4 {
            for b in 1..=4 {
                for s in Tree::all_of_degree(a) {
                    for u in Tree::all_of_degree(b) {
                        let l = left(&s, &u);
                        let r = right(&s, &u);
                        assert!(l.is_disjoint(&r));
                        assert_eq!(add(&s, &u).len(), l.len() + r.len());
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose(&t("((. .) .)")).unwrap(),
            Word::right(Word::One, Word::One)
        );
        assert_eq!(
            decompose(&t("(. (. .))")).unwrap(),
            Word::left(Word::One, Word::One)
        );
        assert_eq!(decompose(&Tree::Leaf), Err(ArithmeticError::DecomposeLeaf));
        assert_eq!(decompose(&t("(. (. .))")).unwrap().to_string(), "1 -| 1");
        assert_eq!(
            Word::left(Word::right(Word::One, Word::One), Word::One).to_string(),
            "(1 |- 1) -| 1"
        );
    }

    #[test]
    fn decompose_round_trip() {
        for d in 1..=6 {
            for tree in Tree::all_of_degree(d) {
                let w = decompose(&tree).unwrap();
                assert_eq!(w.ones(), d);
                assert_eq!(evaluate(&w), TreeSet::singleton(tree));
            }
        }
    }

    #[test]
    fn three_ones() {
        use Word::One;
        let a = evaluate(&Word::left(Word::right(One, One), One));
        let b = evaluate(&Word::right(One, Word::left(One, One)));
        assert_eq!(a, b);
        assert_eq!(a, set(&["((. .) (. .))"]));

        let lhs = evaluate(&Word::right(One, Word::right(One, One)));
        let rhs = evaluate(&Word::right(Word::right(One, One), One))
            .union(&evaluate(&Word::right(Word::left(One, One), One)))
            .unwrap();
        assert_eq!(lhs, rhs);

        let words = Word::all_with_ones(3);
        assert_eq!(words.len(), 8);
        let singletons: BTreeSet<Tree> = words
            .iter()
            .map(evaluate)
            .filter(|s| s.len() == 1)
            .map(|s| s.first().unwrap().clone())
            .collect();
        assert_eq!(singletons.len(), 5);
        assert_eq!(TreeSet::from_trees(3, singletons).unwrap(), embed(3));
    }

    #[test]
    fn worked_products() {
        assert_eq!(
            multiply(&set(&["((. .) .)"]), &set(&["(. (. .))"])),
            set(&["((. (. .)) (. .))"])
        );
        assert_eq!(
            multiply(&set(&["((. .) .)"]), &set(&["((. .) .)"])),
            set(&["(((. .) (. .)) .)", "((((. .) .) .) .)"])
        );
        assert_eq!(multiply(&embed(2), &embed(2)), embed(4));
    }

    #[test]
    fn multiply_by_zero() {
        let zero = embed(0);
        assert_eq!(multiply(&zero, &embed(3)), zero);
        assert_eq!(multiply(&embed(3), &zero), zero);
        assert_eq!(multiply(&one(), &embed(3)), embed(3));
        assert_eq!(multiply(&embed(3), &one()), embed(3));
    }

    #[test]
    fn projection() {
        assert_eq!(embed(0).to_vec(), vec![Tree::Leaf]);
        assert_eq!(embed(3).len(), 5);
        assert_eq!(project(&sum(&embed(2), &embed(3))), Ok(5));
        assert_eq!(project(&multiply(&embed(2), &embed(3))), Ok(6));
        assert_eq!(
            project(&TreeSet::empty(2)),
            Err(ArithmeticError::EmptyProjection)
        );
    }
}
