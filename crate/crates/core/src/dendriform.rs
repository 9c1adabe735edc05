//! Polynomials over trees.
//!
//! A [`Polynomial`] is a finite rational combination of monomials `x^t`, one
//! per tree `t`. The leaf gives the constant monomial `x^. = 1`. Products
//! follow the tree arithmetic: `x^s x^t` is the sum of `x^r` over
//! `r in s + t`, and the two half-products `<` and `>` come from the two
//! halves of the tree sum. Substituting a polynomial for `x` follows tree
//! multiplication.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arithmetic::{self, Word};
use crate::tree::{Tree, TreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("both arguments have a constant term; 1 < 1 and 1 > 1 are undefined")]
    ConstantTimesConstant,
    #[error("cannot substitute a polynomial with a constant term")]
    ConstantSubstitution,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    scalar: BigRational,
    // never contains the leaf or a zero coefficient
    terms: BTreeMap<Tree, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Polynomial {
        Polynomial {
            scalar: c,
            terms: BTreeMap::new(),
        }
    }

    /// `x`, the monomial of the degree-1 tree.
    pub fn x() -> Polynomial {
        Polynomial::monomial(Tree::one())
    }

    pub fn monomial(t: Tree) -> Polynomial {
        Polynomial::term(BigRational::one(), t)
    }

    pub fn term(c: BigRational, t: Tree) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(c, t);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (BigRational, Tree)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (c, t) in terms {
            p.add_term(c, t);
        }
        p
    }

    /// Sum of `x^t` over a tree set.
    pub fn from_tree_set(set: &TreeSet) -> Polynomial {
        Polynomial::from_terms(set.iter().map(|t| (BigRational::one(), t.clone())))
    }

    pub fn add_term(&mut self, c: BigRational, t: Tree) {
        if t.is_leaf() {
            self.scalar += c;
            return;
        }
        match self.terms.entry(t) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn add_set(&mut self, c: &BigRational, set: &TreeSet) {
        for t in set {
            self.add_term(c.clone(), t.clone());
        }
    }

    pub fn scalar_part(&self) -> &BigRational {
        &self.scalar
    }

    pub fn coeff(&self, t: &Tree) -> BigRational {
        if t.is_leaf() {
            self.scalar.clone()
        } else {
            self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.terms.is_empty()
    }

    /// Number of nonzero terms, constant included.
    pub fn len(&self) -> usize {
        self.terms.len() + usize::from(!self.scalar.is_zero())
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Nonzero terms in canonical tree order, constant first.
    pub fn terms(&self) -> Vec<(Tree, BigRational)> {
        let mut out = Vec::with_capacity(self.len());
        if !self.scalar.is_zero() {
            out.push((Tree::Leaf, self.scalar.clone()));
        }
        out.extend(self.terms.iter().map(|(t, c)| (t.clone(), c.clone())));
        out
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.scalar += &other.scalar;
        for (t, c) in &other.terms {
            out.add_term(c.clone(), t.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            scalar: &self.scalar * c,
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    fn bilinear<F>(&self, other: &Polynomial, basis: F) -> Polynomial
    where
        F: Fn(&Tree, &Tree) -> TreeSet,
    {
        let mut out = Polynomial::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_set(&(a * b), &basis(s, t));
            }
        }
        out
    }

    /// `p < q`. With `p = a + P`, `q = b + Q` split into constant and
    /// positive parts: `P < Q + b P`. Undefined when `a` and `b` are both
    /// nonzero.
    pub fn prec(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if !self.scalar.is_zero() && !other.scalar.is_zero() {
            return Err(PolyError::ConstantTimesConstant);
        }
        let mut out = self.bilinear(other, arithmetic::left);
        if !other.scalar.is_zero() {
            out = out.add(&self.scale(&other.scalar));
        }
        Ok(out)
    }

    /// `p > q`: `P > Q + a Q`, undefined when both constants are nonzero.
    pub fn succ(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if !self.scalar.is_zero() && !other.scalar.is_zero() {
            return Err(PolyError::ConstantTimesConstant);
        }
        let mut out = self.bilinear(other, arithmetic::right);
        if !self.scalar.is_zero() {
            out = out.add(&other.scale(&self.scalar));
        }
        Ok(out)
    }

    /// The associative product; `1` is a two-sided unit.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.bilinear(other, arithmetic::add);
        out.scalar += &self.scalar * &other.scalar;
        for (t, c) in &other.terms {
            out.add_term(&self.scalar * c, t.clone());
        }
        for (t, c) in &self.terms {
            out.add_term(&other.scalar * c, t.clone());
        }
        out
    }

    /// Substitutes `q` for `x`: linear in `self`, and each monomial `x^t`
    /// becomes its decomposition word evaluated with `q` in place of 1.
    pub fn compose(&self, q: &Polynomial) -> Result<Polynomial, PolyError> {
        if !q.scalar.is_zero() {
            return Err(PolyError::ConstantSubstitution);
        }
        let mut out = Polynomial::constant(self.scalar.clone());
        for (t, c) in &self.terms {
            let word = arithmetic::decompose(t).expect("terms are nontrivial trees");
            out = out.add(&evaluate_word(&word, q)?.scale(c));
        }
        Ok(out)
    }

    /// `{"terms": [{"tree": "...", "coeff": "p/q"}, ...]}`, constant first.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Term {
            tree: Tree,
            coeff: String,
        }
        #[derive(Serialize)]
        struct Doc {
            terms: Vec<Term>,
        }
        let doc = Doc {
            terms: self
                .terms()
                .into_iter()
                .map(|(tree, c)| Term {
                    tree,
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("polynomials always serialize")
    }
}

fn evaluate_word(word: &Word, one: &Polynomial) -> Result<Polynomial, PolyError> {
    match word {
        Word::One => Ok(one.clone()),
        Word::Left(a, b) => evaluate_word(a, one)?.prec(&evaluate_word(b, one)?),
        Word::Right(a, b) => evaluate_word(a, one)?.succ(&evaluate_word(b, one)?),
    }
}

/// `x^n` as the sum of `x^t` over all trees of degree `n`.
pub fn poly_of_int(n: usize) -> Polynomial {
    Polynomial::from_tree_set(&arithmetic::embed(n))
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write!(f, "{magnitude}*x^{{{t}}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{self}]")
    }
}
