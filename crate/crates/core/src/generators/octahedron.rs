//! Octahedral graphs and their three quadrilateral circuits.

use thiserror::Error;

use crate::geometry::{orient3d, Point3, Side};
use crate::link::{ClosedPolyline, EmbeddedGraph};
use crate::lp::{solve, Constraint, Feasibility};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctahedronError {
    #[error("points are not in convex position as an octahedron ({facets} strict hull facets, expected 8)")]
    NotOctahedral { facets: usize },
    #[error("quadrilateral {index} is not planar")]
    NonPlanarCircuit { index: usize },
    #[error("quadrilateral {index} is degenerate")]
    DegenerateCircuit { index: usize },
    #[error("expected property violated: the three quadrilateral hulls share no point\n{details}")]
    NoCommonPoint { details: String },
}

#[derive(Debug, Clone)]
pub struct Octahedron {
    /// Vertex `2i` is opposite vertex `2i + 1`.
    pub graph: EmbeddedGraph<Rational>,
    pub circuits: [ClosedPolyline<Rational>; 3],
}

/// Vertices `±e_1, ±e_2, ±e_3` (in that order) and all twelve edges.
pub fn regular_octahedron_graph() -> EmbeddedGraph<Rational> {
    let mut vertices = Vec::with_capacity(6);
    for axis in 0..3 {
        for s in [1, -1] {
            let mut c = [int(0), int(0), int(0)];
            c[axis] = int(s);
            vertices.push(Point3::from_array(c));
        }
    }
    EmbeddedGraph::new(vertices, octahedron_edges())
}

fn octahedron_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(12);
    for i in 0..6 {
        for j in i + 1..6 {
            if i / 2 != j / 2 {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn regular_octahedron() -> Octahedron {
    let g = regular_octahedron_graph();
    octahedron(&g.vertices.try_into().expect("six vertices")).expect("regular octahedron")
}

/// Checks that six points span an octahedron and pairs up opposite vertices.
///
/// A strict hull facet is a triple with the other three points strictly on one
/// side. Six points in convex position with exactly eight such facets, each
/// missing one point of every opposite pair, form an octahedron.
pub fn octahedron(points: &[Point3<Rational>; 6]) -> Result<Octahedron, OctahedronError> {
    let mut facets = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let sides: Vec<Side> = (0..6)
                    .filter(|&l| l != i && l != j && l != k)
                    .map(|l| orient3d(&points[i], &points[j], &points[k], &points[l]))
                    .collect();
                if sides.iter().all(|&s| s == Side::Positive) || sides.iter().all(|&s| s == Side::Negative) {
                    facets.push([i, j, k]);
                }
            }
        }
    }
    let not_octa = || OctahedronError::NotOctahedral { facets: facets.len() };
    if facets.len() != 8 {
        return Err(not_octa());
    }
    let mut adjacent = [[false; 6]; 6];
    for f in &facets {
        for a in 0..3 {
            for b in 0..3 {
                adjacent[f[a]][f[b]] |= a != b;
            }
        }
    }
    let mut opposite = [usize::MAX; 6];
    for i in 0..6 {
        let non: Vec<usize> = (0..6).filter(|&j| j != i && !adjacent[i][j]).collect();
        if non.len() != 1 {
            return Err(not_octa());
        }
        opposite[i] = non[0];
    }
    // Reorder so that opposite vertices sit at 2i, 2i+1.
    let mut order = Vec::with_capacity(6);
    for i in 0..6 {
        if !order.contains(&i) {
            order.push(i);
            order.push(opposite[i]);
        }
    }
    let vertices: Vec<Point3<Rational>> = order.iter().map(|&i| points[i].clone()).collect();
    let circuit = |a: usize, b: usize| {
        ClosedPolyline::new(vec![
            vertices[2 * a].clone(),
            vertices[2 * b].clone(),
            vertices[2 * a + 1].clone(),
            vertices[2 * b + 1].clone(),
        ])
    };
    let circuits = [circuit(0, 1), circuit(0, 2), circuit(1, 2)];
    Ok(Octahedron {
        graph: EmbeddedGraph::new(vertices, octahedron_edges()),
        circuits,
    })
}

/// Constraints describing the convex hull of a planar polygon.
fn planar_hull_constraints(index: usize, quad: &ClosedPolyline<Rational>) -> Result<Vec<Constraint>, OctahedronError> {
    let v = quad.vertices();
    let mut normal = None;
    'search: for i in 0..v.len() {
        for j in i + 1..v.len() {
            for k in j + 1..v.len() {
                let n = (&v[j] - &v[i]).cross(&(&v[k] - &v[i]));
                if !n.is_zero() {
                    normal = Some(n);
                    break 'search;
                }
            }
        }
    }
    let n = normal.ok_or(OctahedronError::DegenerateCircuit { index })?;
    let offset = n.dot(&v[0]);
    if v.iter().any(|p| n.dot(p) != offset) {
        return Err(OctahedronError::NonPlanarCircuit { index });
    }
    let mut out = vec![Constraint::eq(n.to_array(), offset)];
    for i in 0..v.len() {
        for j in 0..v.len() {
            if i == j {
                continue;
            }
            // In-plane normal of the line through v_i, v_j.
            let m = n.cross(&(&v[j] - &v[i]));
            let c = m.dot(&v[i]);
            let vals: Vec<Rational> = v.iter().map(|p| m.dot(p) - &c).collect();
            if vals.iter().all(|x| *x >= int(0)) && vals.iter().any(|x| *x > int(0)) {
                out.push(Constraint::ge(m.to_array(), c));
            }
        }
    }
    Ok(out)
}

/// A point common to the convex hulls of three planar quadrilaterals.
pub fn quad_common_point(circuits: &[ClosedPolyline<Rational>; 3]) -> Result<Point3<Rational>, OctahedronError> {
    let mut system = Vec::new();
    for (i, q) in circuits.iter().enumerate() {
        system.extend(planar_hull_constraints(i, q)?);
    }
    match solve(&system) {
        Feasibility::Feasible(p) => Ok(p),
        Feasibility::Infeasible(cert) => {
            let mut details = String::new();
            for (i, q) in circuits.iter().enumerate() {
                let pts: Vec<String> = q.vertices().iter().map(|p| p.to_string()).collect();
                details.push_str(&format!("quad {i}: {}\n", pts.join(" ")));
            }
            details.push_str(&format!("farkas multipliers: {cert}"));
            Err(OctahedronError::NoCommonPoint { details })
        }
    }
}

/// Exact test that `x` lies in the convex hull of a planar polygon.
pub fn in_planar_hull(quad: &ClosedPolyline<Rational>, x: &Point3<Rational>) -> bool {
    planar_hull_constraints(0, quad).map_or(false, |cs| cs.iter().all(|c| c.holds_at(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn regular_circuits_meet_at_origin() {
        let o = regular_octahedron();
        assert!(o.graph.validate().is_valid());
        let p = quad_common_point(&o.circuits).unwrap();
        assert_eq!(p, Point3::origin());
        for c in &o.circuits {
            assert!(in_planar_hull(c, &p));
        }
    }

    #[test]
    fn shuffled_input_recovers_opposites() {
        let g = regular_octahedron_graph();
        let order = [3, 0, 5, 2, 1, 4];
        let pts: [Point3<Rational>; 6] = std::array::from_fn(|i| g.vertices[order[i]].clone());
        let o = octahedron(&pts).unwrap();
        for i in 0..3 {
            let a = &o.graph.vertices[2 * i];
            let b = &o.graph.vertices[2 * i + 1];
            assert!((a + b).is_zero());
        }
    }

    #[test]
    fn interior_point_rejected() {
        let mut pts: [Point3<Rational>; 6] = regular_octahedron_graph().vertices.try_into().unwrap();
        pts[5] = Point3::new(rat(1, 10), rat(1, 10), rat(1, 10));
        assert!(matches!(octahedron(&pts), Err(OctahedronError::NotOctahedral { .. })));
    }
}
