//! Links following a tetrahedral scaffold with edge multiplicities.
//!
//! Each edge carries that many straight parallel strands, stopping short of
//! a small ball around every vertex. Inside a ball the strand ends are listed
//! edge by edge (alternating direction of the strand order between
//! successive edges) and paired by the nested matching `i ↔ n-1-i`; each pair
//! is joined by a straight bridge.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::geometry::Point3;
use crate::link::{ClosedPolyline, PolygonalLink};
use crate::scalar::{snap_dyadic, to_f64, Rational};

use super::torus::SNAP_BITS;

/// Edges in the order used by `ScaffoldSpec::multiplicities`.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const EDGE_NAMES: [&str; 6] = ["AB", "AC", "AD", "BC", "BD", "CD"];

const BALL: f64 = 0.2;
const SPREAD: f64 = 0.04;
const PHASE: f64 = 0.37;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaffoldSpec {
    pub vertices: [Point3<Rational>; 4],
    /// Strands on AB, AC, AD, BC, BD, CD.
    pub multiplicities: [u32; 6],
}

impl ScaffoldSpec {
    pub fn new(vertices: [Point3<Rational>; 4], multiplicities: [u32; 6]) -> Self {
        Self { vertices, multiplicities }
    }

    /// Number of strand ends at each vertex.
    pub fn vertex_sums(&self) -> [u32; 4] {
        let mut s = [0; 4];
        for (&(a, b), &m) in EDGES.iter().zip(&self.multiplicities) {
            s[a] += m;
            s[b] += m;
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScaffoldError {
    #[error("odd number of strand ends ({sum}) at vertex {}", ["A", "B", "C", "D"][*.vertex])]
    OddVertex { vertex: usize, sum: u32 },
    #[error("all multiplicities are zero")]
    Empty,
    #[error("pairing impossible: bridges produce an invalid link ({0})")]
    Pairing(String),
}

/// A strand end: edge, strand index, and which end (0 at the edge's first vertex).
type End = (usize, u32, usize);

/// The nested pairing of strand ends at vertex `v`.
pub fn vertex_pairing(spec: &ScaffoldSpec, v: usize) -> Vec<(End, End)> {
    let mut ends: Vec<End> = Vec::new();
    let mut group = 0;
    for (e, &(a, b)) in EDGES.iter().enumerate() {
        if a != v && b != v {
            continue;
        }
        let side = usize::from(b == v);
        let m = spec.multiplicities[e];
        if m == 0 {
            continue;
        }
        if group % 2 == 0 {
            ends.extend((0..m).map(|j| (e, j, side)));
        } else {
            ends.extend((0..m).rev().map(|j| (e, j, side)));
        }
        group += 1;
    }
    let n = ends.len();
    (0..n / 2).map(|i| (ends[i], ends[n - 1 - i])).collect()
}

type F3 = [f64; 3];

fn sub(a: F3, b: F3) -> F3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: F3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn unit(a: F3) -> F3 {
    let n = norm(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

fn cross(a: F3, b: F3) -> F3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn combine(base: F3, terms: &[(f64, F3)]) -> F3 {
    let mut p = base;
    for &(s, v) in terms {
        for k in 0..3 {
            p[k] += s * v[k];
        }
    }
    p
}

pub fn scaffold_link(spec: &ScaffoldSpec) -> Result<PolygonalLink<Rational>, ScaffoldError> {
    for (vertex, &sum) in spec.vertex_sums().iter().enumerate() {
        if sum % 2 == 1 {
            return Err(ScaffoldError::OddVertex { vertex, sum });
        }
    }
    if spec.multiplicities.iter().all(|&m| m == 0) {
        return Err(ScaffoldError::Empty);
    }
    let v: Vec<F3> = spec.vertices.iter().map(|p| [to_f64(&p.x), to_f64(&p.y), to_f64(&p.z)]).collect();
    let scale = EDGES.iter().map(|&(a, b)| norm(sub(v[b], v[a]))).fold(f64::INFINITY, f64::min);

    let end_point = |(e, j, side): End| -> F3 {
        let (a, b) = EDGES[e];
        let dir = unit(sub(v[b], v[a]));
        let helper = if dir[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let e1 = unit(cross(dir, helper));
        let e2 = cross(dir, e1);
        let theta = PHASE + TAU * f64::from(j) / f64::from(spec.multiplicities[e]);
        let r = SPREAD * scale;
        let offset = [(r * theta.cos(), e1), (r * theta.sin(), e2)];
        if side == 0 {
            combine(v[a], &[&[(BALL * scale, dir)], &offset[..]].concat())
        } else {
            combine(v[b], &[&[(-BALL * scale, dir)], &offset[..]].concat())
        }
    };

    let mut partner = std::collections::HashMap::new();
    for vertex in 0..4 {
        for (x, y) in vertex_pairing(spec, vertex) {
            partner.insert(x, y);
            partner.insert(y, x);
        }
    }

    let mut used = std::collections::HashSet::new();
    let mut components = Vec::new();
    for (e, &m) in spec.multiplicities.iter().enumerate() {
        for j in 0..m {
            if used.contains(&(e, j)) {
                continue;
            }
            let mut pts = Vec::new();
            let mut at: End = (e, j, 0);
            loop {
                used.insert((at.0, at.1));
                let far = (at.0, at.1, 1 - at.2);
                pts.push(end_point(at));
                pts.push(end_point(far));
                at = partner[&far];
                if at == (e, j, 0) {
                    break;
                }
            }
            components.push(ClosedPolyline::new(
                pts.into_iter()
                    .map(|p| Point3::new(snap_dyadic(p[0], SNAP_BITS), snap_dyadic(p[1], SNAP_BITS), snap_dyadic(p[2], SNAP_BITS)))
                    .collect(),
            ));
        }
    }
    let link = PolygonalLink::new(components);
    let report = link.validate();
    if !report.is_valid() {
        return Err(ScaffoldError::Pairing(report.to_string()));
    }
    Ok(link)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::tetra::scaffold_tetrahedron;

    #[test]
    fn circuit_gives_two_components() {
        let spec = ScaffoldSpec::new(scaffold_tetrahedron(), [0, 0, 0, 2, 2, 2]);
        let link = scaffold_link(&spec).unwrap();
        assert_eq!(link.component_count(), 2);
    }

    #[test]
    fn odd_sums_rejected() {
        let spec = ScaffoldSpec::new(scaffold_tetrahedron(), [1, 0, 0, 0, 0, 0]);
        assert_eq!(scaffold_link(&spec), Err(ScaffoldError::OddVertex { vertex: 0, sum: 1 }));
    }
}
