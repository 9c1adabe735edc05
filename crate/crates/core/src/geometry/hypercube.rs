//! Checks on the parenthesis-code polytope: its corners are the codes of the
//! canopy section trees, it is combinatorially a cube, every other code sits
//! on a face through its section corner, and covering rotations move the code
//! by `-e_i + e_j` with `i < j`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::facets::{certify_extreme, facet_system};
use super::{canopy, section, tamari_code, Canopy, CoordMap, GeometryError, LatticePoint};
use crate::tamari;
use crate::tree::Tree;

/// Largest coefficient box tried for extremality certificates.
pub const CERTIFICATE_BOX: i64 = 8;

#[derive(Debug, Clone, Serialize)]
pub struct Corner {
    pub canopy: String,
    pub tree: Tree,
    pub point: LatticePoint,
    /// Integer functional maximized only at `point`, if one was found.
    pub certificate: Option<Vec<i64>>,
    pub tight_facets: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypercubeReport {
    pub n: usize,
    pub point_count: usize,
    pub facet_count: usize,
    pub hull_vertices: Vec<Tree>,
    pub corners: Vec<Corner>,
    pub failures: Vec<String>,
}

impl HypercubeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the cube structure of the parenthesis codes of all trees of degree
/// `n + 1` (an `n`-dimensional polytope), for `n` in `2..=4`.
pub fn verify_hypercube(n: usize) -> Result<HypercubeReport, GeometryError> {
    if !(2..=4).contains(&n) {
        return Err(GeometryError::UnsupportedDimension(n));
    }
    let trees = Tree::all_of_degree(n + 1);
    let points = trees
        .iter()
        .map(tamari_code)
        .collect::<Result<Vec<_>, _>>()?;
    let fs = facet_system(&points)?;
    let index = |t: &Tree| trees.binary_search(t).expect("same degree");
    let mut failures = Vec::new();

    if fs.dimension() != n {
        failures.push(format!(
            "hull has dimension {}, expected {n}",
            fs.dimension()
        ));
    }

    let mut corners = Vec::new();
    let mut corner_idx = Vec::new();
    for c in Canopy::all(n) {
        let tree = section(&c)?;
        let i = index(&tree);
        let certificate = certify_extreme(&points, i, CERTIFICATE_BOX);
        if certificate.is_none() {
            failures.push(format!(
                "no extremality certificate for corner {c} = {tree}"
            ));
        }
        let tight = fs.tight_facets(i).len();
        if tight != n {
            failures.push(format!(
                "corner {c} = {tree} lies on {tight} facets, expected {n}"
            ));
        }
        corner_idx.push(i);
        corners.push(Corner {
            canopy: c.to_string(),
            tree,
            point: points[i].clone(),
            certificate,
            tight_facets: tight,
        });
    }

    let vertices = fs.vertices();
    if vertices.len() != 1 << n {
        failures.push(format!(
            "hull has {} vertices, expected {}",
            vertices.len(),
            1 << n
        ));
    }
    let mut sorted_corners = corner_idx.clone();
    sorted_corners.sort_unstable();
    if sorted_corners != vertices {
        failures.push("hull vertices differ from the section trees".to_string());
    }

    for (i, t) in trees.iter().enumerate() {
        let tight = fs.tight_facets(i);
        if tight.is_empty() {
            failures.push(format!("{t} at {} is interior", points[i]));
            continue;
        }
        let corner = index(&section(&canopy(t)?)?);
        if let Some(&f) = tight.iter().find(|&&f| !fs.is_tight(f, corner)) {
            failures.push(format!(
                "{t}: facet {f} is tight at {} but not at its corner {}",
                points[i], points[corner]
            ));
        }
    }

    Ok(HypercubeReport {
        n,
        point_count: points.len(),
        facet_count: fs.facets().len(),
        hull_vertices: vertices.iter().map(|&i| trees[i].clone()).collect(),
        corners,
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeVector {
    pub lower: Tree,
    pub upper: Tree,
    pub difference: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeReport {
    pub degree: usize,
    pub map: &'static str,
    pub edges: Vec<EdgeVector>,
    pub failures: Vec<String>,
}

impl EdgeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Distinct difference vectors with multiplicities.
    pub fn histogram(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            *out.entry(e.difference.clone()).or_insert(0) += 1;
        }
        out
    }
}

/// `Some((i, j))` when `v = -e_i + e_j` with `i < j`.
pub fn as_forward_transposition(v: &[i64]) -> Option<(usize, usize)> {
    let minus: Vec<usize> = (0..v.len()).filter(|&k| v[k] == -1).collect();
    let plus: Vec<usize> = (0..v.len()).filter(|&k| v[k] == 1).collect();
    let nonzero = v.iter().filter(|&&x| x != 0).count();
    match (minus.as_slice(), plus.as_slice()) {
        (&[i], &[j]) if nonzero == 2 && i < j => Some((i, j)),
        _ => None,
    }
}

/// Coordinate differences along every covering pair of `degree`. For the
/// parenthesis code each difference must be `-e_i + e_j` with `i < j`; the
/// associahedron differences are only collected.
pub fn covering_edge_vectors(degree: usize, map: CoordMap) -> Result<EdgeReport, GeometryError> {
    let h = tamari::hasse(degree)?;
    let mut edges = Vec::with_capacity(h.edges().len());
    let mut failures = Vec::new();
    for &(lo, hi) in h.edges() {
        let (lower, upper) = (&h.vertices()[lo], &h.vertices()[hi]);
        let difference = map.apply(upper)?.minus(&map.apply(lower)?);
        if map == CoordMap::Tamari && as_forward_transposition(&difference).is_none() {
            failures.push(format!("{lower} -> {upper}: difference {difference:?}"));
        }
        edges.push(EdgeVector {
            lower: lower.clone(),
            upper: upper.clone(),
            difference,
        });
    }
    Ok(EdgeReport {
        degree,
        map: map.name(),
        edges,
        failures,
    })
}
