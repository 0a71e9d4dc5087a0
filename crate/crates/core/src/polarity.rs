//! The projective plane PG(2, q) and its orthogonal-polarity graph.
//!
//! Vertices are the points of PG(2, q); two distinct points are adjacent when their
//! dot product vanishes. The graph has `q^2 + q + 1` vertices and `q(q+1)^2 / 2`
//! edges, is C4-free, and its `q + 1` absolute points (`x . x = 0`) have degree `q`
//! while every other vertex has degree `q + 1`.

use serde::Serialize;
use thiserror::Error;

use crate::gf::{is_prime_power, make_field, FieldTable, GfError};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolarityError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("asked to delete {wanted} degree-{q} vertices but only {available} exist")]
    NotEnoughLowDegree { q: u64, wanted: usize, available: usize },
}

/// A normalized point of PG(2, q): the first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProjPoint {
    pub coords: [u32; 3],
}

impl ProjPoint {
    pub fn dot(&self, other: &ProjPoint, field: &FieldTable) -> u32 {
        let [a0, a1, a2] = self.coords;
        let [b0, b1, b2] = other.coords;
        field.add(field.add(field.mul(a0, b0), field.mul(a1, b1)), field.mul(a2, b2))
    }
}

/// All `q^2 + q + 1` points, sorted lexicographically by coordinates.
pub fn projective_points(field: &FieldTable) -> Vec<ProjPoint> {
    let q = field.order();
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    pts.push(ProjPoint { coords: [0, 0, 1] });
    for z in 0..q {
        pts.push(ProjPoint { coords: [0, 1, z] });
    }
    for y in 0..q {
        for z in 0..q {
            pts.push(ProjPoint { coords: [1, y, z] });
        }
    }
    pts.sort_unstable();
    pts
}

/// Indices (into [`projective_points`]) of the points with `x . x = 0`.
pub fn absolute_points(field: &FieldTable, points: &[ProjPoint]) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.dot(p, field) == 0)
        .map(|(i, _)| i)
        .collect()
}

/// The polarity graph on the points of PG(2, q), vertex `i` being `projective_points(field)[i]`.
pub fn polarity_graph(field: &FieldTable) -> Graph {
    let points = projective_points(field);
    let mut g = Graph::new(points.len());
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate().skip(i + 1) {
            if a.dot(b, field) == 0 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Builds GF(q) and its polarity graph in one step.
pub fn polarity_graph_for(q: u64) -> Result<Graph, PolarityError> {
    let pp = is_prime_power(q).ok_or(PolarityError::NotPrimePower(q))?;
    Ok(polarity_graph(&make_field(pp)?))
}

/// Deletes the `r` lowest-indexed vertices of degree `q`.
///
/// Each deleted vertex takes `q` edges with it (minus any edges between two deleted
/// vertices), so the result keeps at least `q(q+1)^2 / 2 - rq` edges when applied to a
/// polarity graph.
pub fn delete_low_degree(g: &Graph, q: u64, r: usize) -> Result<Graph, PolarityError> {
    let low: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) as u64 == q).collect();
    if low.len() < r {
        return Err(PolarityError::NotEnoughLowDegree { q, wanted: r, available: low.len() });
    }
    let drop = VertexSet::from_vertices(g.order(), low[..r].iter().copied());
    Ok(g.remove_vertices(&drop))
}
