//! Exact arithmetic of planar binary rooted trees.
//!
//! * [`tree`]: trees, grafting, enumeration and the `(l r)` text format.
//! * [`arithmetic`]: the two half-sums, the sum and the product of trees.
//! * [`tamari`]: the rotation order, Hasse diagrams and intervals.
//! * [`geometry`]: integer point realizations of the order and an exact
//!   facet engine used to check their polytope properties.
//! * [`dendriform`]: polynomials with one term per tree.
//! * [`checks`]: exhaustive and randomized verification sweeps.

pub mod arithmetic;
pub mod checks;
pub mod dendriform;
pub mod geometry;
pub mod par;
pub mod tamari;
pub mod tree;

pub use arithmetic::{embed, multiply, op_left, op_right, project, sum, ArithmeticError, Word};
pub use tree::{catalan, ParseError, Tree, TreeSet, TreeSetError};
