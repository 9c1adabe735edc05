//! Exact facet enumeration for small point sets.
//!
//! The points may live in a lower-dimensional affine subspace of the ambient
//! space (the parenthesis codes all lie in the hyperplane `sum = k`). The
//! engine projects onto a set of coordinates that is injective on the affine
//! hull, then tests every hyperplane through an affinely independent subset
//! of `dim` points. A hyperplane with every point on one closed side is a
//! facet. All arithmetic is on integers.

use itertools::Itertools;

use super::exact::{gcd, orthogonal_complement, rank};
use super::{GeometryError, LatticePoint};
use crate::par;

/// The inequality `normal . x >= offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn slack(&self, p: &LatticePoint) -> i64 {
        dot(&self.normal, p.coords()) - self.offset
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Facets of the convex hull of a point set, with point incidences.
#[derive(Debug, Clone)]
pub struct FacetSystem {
    points: Vec<LatticePoint>,
    dimension: usize,
    facets: Vec<Facet>,
    // tight[f][p]
    tight: Vec<Vec<bool>>,
}

impl FacetSystem {
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Affine dimension of the hull.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Facets with primitive integer normals, sorted.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_tight(&self, facet: usize, point: usize) -> bool {
        self.tight[facet][point]
    }

    /// Indices of the facets containing point `p`.
    pub fn tight_facets(&self, p: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| self.tight[f][p])
            .collect()
    }

    /// Indices of the points on facet `f`.
    pub fn tight_points(&self, f: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| self.tight[f][p])
            .collect()
    }

    /// Affine dimension spanned by the points on facet `f`.
    pub fn facet_dimension(&self, f: usize) -> usize {
        affine_dimension(
            &self
                .tight_points(f)
                .iter()
                .map(|&p| &self.points[p])
                .collect::<Vec<_>>(),
        )
    }

    /// A point is a vertex when its tight facet normals pin it down: they
    /// span the full dimension of the hull.
    pub fn is_vertex(&self, p: usize) -> bool {
        let normals: Vec<Vec<i128>> = self
            .tight_facets(p)
            .into_iter()
            .map(|f| self.facets[f].normal.iter().map(|&x| x as i128).collect())
            .collect();
        !normals.is_empty() && rank(&normals) == self.dimension
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| self.is_vertex(p))
            .collect()
    }
}

fn affine_dimension(points: &[&LatticePoint]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<i128>> = rest
        .iter()
        .map(|p| p.minus(first).into_iter().map(i128::from).collect())
        .collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

/// Enumerates the facets of the convex hull of `points`.
///
/// Needs an affine hull of dimension at least 2.
pub fn facet_system(points: &[LatticePoint]) -> Result<FacetSystem, GeometryError> {
    let first = points.first().ok_or(GeometryError::NoPoints)?;
    let ambient = first.dim();
    if points.iter().any(|p| p.dim() != ambient) {
        return Err(GeometryError::LengthMismatch);
    }
    let dimension = affine_dimension(&points.iter().collect::<Vec<_>>());
    if dimension < 2 {
        return Err(GeometryError::Degenerate { dimension });
    }

    let diffs: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.minus(first).into_iter().map(i128::from).collect())
        .collect();
    let chart: Vec<usize> = (0..ambient)
        .combinations(dimension)
        .find(|cols| {
            let projected: Vec<Vec<i128>> = diffs
                .iter()
                .map(|d| cols.iter().map(|&c| d[c]).collect())
                .collect();
            rank(&projected) == dimension
        })
        .expect("some coordinate chart is injective on the affine hull");
    let local: Vec<Vec<i128>> = points
        .iter()
        .map(|p| chart.iter().map(|&c| i128::from(p.coords()[c])).collect())
        .collect();

    let subsets: Vec<Vec<usize>> = (0..points.len()).combinations(dimension).collect();
    let candidates: Vec<Option<(Vec<i128>, i128)>> = par::map(&subsets, |subset| {
        let base = &local[subset[0]];
        let rows: Vec<Vec<i128>> = subset[1..]
            .iter()
            .map(|&i| local[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal = orthogonal_complement(&rows);
        let g = normal.iter().fold(0, |g, &x| gcd(g, x));
        if g == 0 {
            return None;
        }
        normal.iter_mut().for_each(|x| *x /= g);
        let offset: i128 = normal.iter().zip(base).map(|(a, b)| a * b).sum();
        let (mut above, mut below) = (false, false);
        for q in &local {
            let v: i128 = normal.iter().zip(q).map(|(a, b)| a * b).sum::<i128>() - offset;
            above |= v > 0;
            below |= v < 0;
        }
        match (above, below) {
            (true, true) => None,
            (_, true) => Some((normal.iter().map(|x| -x).collect(), -offset)),
            _ => Some((normal, offset)),
        }
    });

    let mut facets: Vec<Facet> = candidates
        .into_iter()
        .flatten()
        .map(|(normal, offset)| {
            let mut lifted = vec![0i64; ambient];
            for (&c, &v) in chart.iter().zip(&normal) {
                lifted[c] = v as i64;
            }
            Facet {
                normal: lifted,
                offset: offset as i64,
            }
        })
        .collect();
    facets.sort();
    facets.dedup();

    let tight = facets
        .iter()
        .map(|f| points.iter().map(|p| f.slack(p) == 0).collect())
        .collect();
    Ok(FacetSystem {
        points: points.to_vec(),
        dimension,
        facets,
        tight,
    })
}

/// Searches for an integer functional, coefficients in `[-b, b]` for
/// `b = 1, 2, ..., max_box`, that is maximized over `points` at `points[idx]`
/// and nowhere else.
pub fn certify_extreme(points: &[LatticePoint], idx: usize, max_box: i64) -> Option<Vec<i64>> {
    let target = &points[idx];
    let d = target.dim();
    for b in 1..=max_box {
        // only functionals touching the new shell |w|_inf == b
        let found = (0..d)
            .map(|_| -b..=b)
            .multi_cartesian_product()
            .filter(|w| w.iter().any(|x| x.abs() == b))
            .find(|w| {
                let top = dot(w, target.coords());
                points
                    .iter()
                    .enumerate()
                    .all(|(j, p)| j == idx || dot(w, p.coords()) < top)
            });
        if found.is_some() {
            return found;
        }
    }
    None
}
