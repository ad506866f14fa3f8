//! Polygonal links and embedded graphs, with exact validity checks.

use std::fmt;

use thiserror::Error;

use crate::geometry::{orient2d, orient3d, project_drop, Point3, Side};
use crate::scalar::Scalar;

/// A closed polygonal curve; the edge from the last vertex back to the first is implied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedPolyline<T> {
    vertices: Vec<Point3<T>>,
}

impl<T: Scalar> ClosedPolyline<T> {
    /// Wraps the vertices without checking them; see [`PolygonalLink::validate`].
    pub fn new(vertices: Vec<Point3<T>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point3<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Segment `i` runs from vertex `i` to vertex `i + 1 (mod len)`.
    pub fn segment(&self, i: usize) -> (&Point3<T>, &Point3<T>) {
        let n = self.vertices.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point3<T>, &Point3<T>)> + '_ {
        (0..self.vertices.len()).map(move |i| self.segment(i))
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    pub fn map_points(&self, f: impl Fn(&Point3<T>) -> Point3<T>) -> Self {
        Self {
            vertices: self.vertices.iter().map(f).collect(),
        }
    }

    pub fn centroid(&self) -> Point3<T> {
        centroid(&self.vertices)
    }

    pub fn contains_point(&self, p: &Point3<T>) -> bool {
        self.segments().any(|(a, b)| point_on_segment(p, a, b))
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_polyline(self, 0)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Ordered union of closed polylines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolygonalLink<T> {
    components: Vec<ClosedPolyline<T>>,
}

impl<T: Scalar> PolygonalLink<T> {
    pub fn new(components: Vec<ClosedPolyline<T>>) -> Self {
        Self { components }
    }

    pub fn components(&self) -> &[ClosedPolyline<T>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(ClosedPolyline::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Point3<T>> + '_ {
        self.components.iter().flat_map(|c| c.vertices().iter())
    }

    pub fn centroid(&self) -> Point3<T> {
        let all: Vec<Point3<T>> = self.vertices().cloned().collect();
        centroid(&all)
    }

    pub fn map_points(&self, f: impl Fn(&Point3<T>) -> Point3<T>) -> Self {
        Self {
            components: self.components.iter().map(|c| c.map_points(&f)).collect(),
        }
    }

    pub fn contains_point(&self, p: &Point3<T>) -> bool {
        self.components.iter().any(|c| c.contains_point(p))
    }

    /// Every violated invariant; empty iff the link is valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            violations.extend(validate_polyline(c, k));
        }
        for a in 0..self.components.len() {
            for b in a + 1..self.components.len() {
                if let Some((sa, sb)) = first_crossing(&self.components[a], &self.components[b]) {
                    violations.push(Violation::ComponentsIntersect {
                        first: a,
                        second: b,
                        first_segment: sa,
                        second_segment: sb,
                    });
                }
            }
        }
        ValidationReport { violations }
    }
}

/// A graph whose edges are straight segments between its vertex positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmbeddedGraph<T> {
    pub vertices: Vec<Point3<T>>,
    pub edges: Vec<(usize, usize)>,
}

impl<T: Scalar> EmbeddedGraph<T> {
    pub fn new(vertices: Vec<Point3<T>>, edges: Vec<(usize, usize)>) -> Self {
        Self { vertices, edges }
    }

    pub fn edge_segment(&self, e: usize) -> (&Point3<T>, &Point3<T>) {
        let (i, j) = self.edges[e];
        (&self.vertices[i], &self.vertices[j])
    }

    pub fn contains_point(&self, p: &Point3<T>) -> bool {
        self.vertices.iter().any(|v| v == p)
            || (0..self.edges.len()).any(|e| {
                let (a, b) = self.edge_segment(e);
                point_on_segment(p, a, b)
            })
    }

    pub fn map_points(&self, f: impl Fn(&Point3<T>) -> Point3<T>) -> Self {
        Self {
            vertices: self.vertices.iter().map(f).collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.vertices[i] == self.vertices[j] {
                    violations.push(Violation::GraphDuplicateVertex { first: i, second: j });
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut usable = Vec::new();
        for (e, &(i, j)) in self.edges.iter().enumerate() {
            if i >= n || j >= n || i == j {
                violations.push(Violation::GraphBadEdge { edge: e });
                continue;
            }
            if !seen.insert((i.min(j), i.max(j))) {
                violations.push(Violation::GraphDuplicateEdge { edge: e });
                continue;
            }
            usable.push(e);
        }
        for &e in &usable {
            let (i, j) = self.edges[e];
            let (a, b) = self.edge_segment(e);
            for (v, p) in self.vertices.iter().enumerate() {
                if v != i && v != j && point_on_segment(p, a, b) {
                    violations.push(Violation::GraphEdgeThroughVertex { edge: e, vertex: v });
                }
            }
        }
        for (x, &e) in usable.iter().enumerate() {
            for &f in &usable[x + 1..] {
                let (i, j) = self.edges[e];
                let (k, l) = self.edges[f];
                let (a, b) = self.edge_segment(e);
                let (c, d) = self.edge_segment(f);
                let shared = [i, j].iter().filter(|v| **v == k || **v == l).count();
                let bad = match shared {
                    0 => segments_intersect(a, b, c, d),
                    1 => {
                        let common = if i == k || i == l { i } else { j };
                        let other_e = if common == i { j } else { i };
                        let other_f = if common == k { l } else { k };
                        fold_back(
                            &self.vertices[common],
                            &self.vertices[other_e],
                            &self.vertices[other_f],
                        )
                    }
                    _ => false,
                };
                if bad {
                    violations.push(Violation::GraphEdgesIntersect { first: e, second: f });
                }
            }
        }
        ValidationReport { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("component {component} has {count} vertices (need at least 3)")]
    TooFewVertices { component: usize, count: usize },
    #[error("degenerate segment at (comp {component}, index {index})")]
    DegenerateSegment { component: usize, index: usize },
    #[error("repeated vertex in comp {component} at indices {first} and {second}")]
    RepeatedVertex {
        component: usize,
        first: usize,
        second: usize,
    },
    #[error("comp {component} self-intersects: segments {first} and {second}")]
    SelfIntersection {
        component: usize,
        first: usize,
        second: usize,
    },
    #[error("components {first},{second} intersect (segments {first_segment} and {second_segment})")]
    ComponentsIntersect {
        first: usize,
        second: usize,
        first_segment: usize,
        second_segment: usize,
    },
    #[error("graph vertices {first} and {second} coincide")]
    GraphDuplicateVertex { first: usize, second: usize },
    #[error("graph edge {edge} has an invalid endpoint")]
    GraphBadEdge { edge: usize },
    #[error("graph edge {edge} repeats an earlier edge")]
    GraphDuplicateEdge { edge: usize },
    #[error("graph edge {edge} passes through vertex {vertex}")]
    GraphEdgeThroughVertex { edge: usize, vertex: usize },
    #[error("graph edges {first} and {second} intersect")]
    GraphEdgesIntersect { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

fn validate_polyline<T: Scalar>(c: &ClosedPolyline<T>, component: usize) -> Vec<Violation> {
    let n = c.len();
    let mut out = Vec::new();
    if n < 3 {
        out.push(Violation::TooFewVertices {
            component,
            count: n,
        });
        return out;
    }
    let v = c.vertices();
    let mut degenerate = vec![false; n];
    for i in 0..n {
        if v[i] == v[(i + 1) % n] {
            degenerate[i] = true;
            out.push(Violation::DegenerateSegment {
                component,
                index: i,
            });
        }
    }
    for i in 0..n {
        for j in i + 2..n {
            if (i == 0 && j == n - 1) || v[i] != v[j] {
                continue;
            }
            out.push(Violation::RepeatedVertex {
                component,
                first: i,
                second: j,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let boxes: Vec<_> = (0..n).map(|i| BBox::of_segment(c.segment(i))).collect();
    for i in 0..n {
        // Adjacent segments may only share their common vertex.
        let (a, b) = c.segment(i);
        let next = &v[(i + 2) % n];
        if fold_back(b, a, next) {
            out.push(Violation::SelfIntersection {
                component,
                first: i,
                second: (i + 1) % n,
            });
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if !boxes[i].overlaps(&boxes[j]) {
                continue;
            }
            let (p, q) = c.segment(j);
            if segments_intersect(a, b, p, q) {
                out.push(Violation::SelfIntersection {
                    component,
                    first: i,
                    second: j,
                });
            }
        }
    }
    out
}

fn first_crossing<T: Scalar>(
    a: &ClosedPolyline<T>,
    b: &ClosedPolyline<T>,
) -> Option<(usize, usize)> {
    let boxes_b: Vec<_> = (0..b.len()).map(|j| BBox::of_segment(b.segment(j))).collect();
    for i in 0..a.len() {
        let seg = a.segment(i);
        let bi = BBox::of_segment(seg);
        for (j, bj) in boxes_b.iter().enumerate() {
            if !bi.overlaps(bj) {
                continue;
            }
            let (p, q) = b.segment(j);
            if segments_intersect(seg.0, seg.1, p, q) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether segments `[common, a]` and `[common, b]` overlap beyond their shared endpoint.
fn fold_back<T: Scalar>(common: &Point3<T>, a: &Point3<T>, b: &Point3<T>) -> bool {
    let u = a - common;
    let w = b - common;
    u.cross(&w).is_zero() && u.dot(&w) > T::zero()
}

#[derive(Debug, Clone)]
pub(crate) struct BBox<T> {
    lo: [T; 3],
    hi: [T; 3],
}

impl<T: Scalar> BBox<T> {
    pub(crate) fn of_segment((a, b): (&Point3<T>, &Point3<T>)) -> Self {
        let a = a.to_array();
        let b = b.to_array();
        let lo = std::array::from_fn(|k| if a[k] < b[k] { a[k].clone() } else { b[k].clone() });
        let hi = std::array::from_fn(|k| if a[k] < b[k] { b[k].clone() } else { a[k].clone() });
        Self { lo, hi }
    }

    pub(crate) fn overlaps(&self, other: &Self) -> bool {
        (0..3).all(|k| self.lo[k] <= other.hi[k] && other.lo[k] <= self.hi[k])
    }
}

pub fn centroid<T: Scalar>(points: &[Point3<T>]) -> Point3<T> {
    let mut sum = Point3::origin();
    for p in points {
        sum = &sum + p;
    }
    let n = T::from_usize(points.len().max(1)).expect("count fits scalar");
    sum.scale(&(T::one() / n))
}

/// Exact test for `p` on the closed segment `[a, b]`.
pub fn point_on_segment<T: Scalar>(p: &Point3<T>, a: &Point3<T>, b: &Point3<T>) -> bool {
    let ab = b - a;
    let ap = p - a;
    if !ab.cross(&ap).is_zero() {
        return false;
    }
    let t = ab.dot(&ap);
    t >= T::zero() && t <= ab.norm2()
}

/// Exact test whether closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_intersect<T: Scalar>(
    a: &Point3<T>,
    b: &Point3<T>,
    c: &Point3<T>,
    d: &Point3<T>,
) -> bool {
    if orient3d(a, b, c, d) != Side::On {
        return false;
    }
    let ab = b - a;
    let mut normal = ab.cross(&(c - a));
    if normal.is_zero() {
        normal = ab.cross(&(d - a));
    }
    if normal.is_zero() {
        let cd = d - c;
        normal = cd.cross(&(a - c));
        if normal.is_zero() {
            // All four points collinear (or segments degenerate).
            return collinear_overlap(a, b, c, d);
        }
    }
    let drop = largest_abs_axis(&normal);
    let (a2, b2, c2, d2) = (
        project_drop(a, drop),
        project_drop(b, drop),
        project_drop(c, drop),
        project_drop(d, drop),
    );
    segments_intersect_2d(&a2, &b2, &c2, &d2)
}

fn largest_abs_axis<T: Scalar>(n: &Point3<T>) -> usize {
    let abs = [n.x.abs(), n.y.abs(), n.z.abs()];
    let mut best = 0;
    for k in 1..3 {
        if abs[k] > abs[best] {
            best = k;
        }
    }
    best
}

fn collinear_overlap<T: Scalar>(
    a: &Point3<T>,
    b: &Point3<T>,
    c: &Point3<T>,
    d: &Point3<T>,
) -> bool {
    let mut dir = b - a;
    if dir.is_zero() {
        dir = d - c;
    }
    if dir.is_zero() {
        return a == c;
    }
    let key = |p: &Point3<T>| dir.dot(&(p - a));
    let (s0, s1) = order(key(a), key(b));
    let (t0, t1) = order(key(c), key(d));
    s0 <= t1 && t0 <= s1
}

fn order<T: Scalar>(x: T, y: T) -> (T, T) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

pub(crate) fn segments_intersect_2d<T: Scalar>(
    a: &(T, T),
    b: &(T, T),
    c: &(T, T),
    d: &(T, T),
) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Side::On && o2 != Side::On && o3 != Side::On && o4 != Side::On
    {
        return true;
    }
    (o1 == Side::On && on_segment_2d(a, b, c))
        || (o2 == Side::On && on_segment_2d(a, b, d))
        || (o3 == Side::On && on_segment_2d(c, d, a))
        || (o4 == Side::On && on_segment_2d(c, d, b))
}

/// `p` collinear with `[a, b]`; is it within the segment's box?
fn on_segment_2d<T: Scalar>(a: &(T, T), b: &(T, T), p: &(T, T)) -> bool {
    let within = |lo: &T, hi: &T, x: &T| {
        let (l, h) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        l <= x && x <= h
    };
    within(&a.0, &b.0, &p.0) && within(&a.1, &b.1, &p.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn pt(x: i64, y: i64, z: i64) -> Point3<Rational> {
        Point3::new(int(x), int(y), int(z))
    }

    fn square(cx: i64, cy: i64, z: i64) -> ClosedPolyline<Rational> {
        ClosedPolyline::new(vec![
            pt(cx + 1, cy + 1, z),
            pt(cx - 1, cy + 1, z),
            pt(cx - 1, cy - 1, z),
            pt(cx + 1, cy - 1, z),
        ])
    }

    #[test]
    fn distant_squares_are_valid() {
        let link = PolygonalLink::new(vec![square(0, 0, 0), square(10, 0, 0)]);
        assert!(link.validate().is_valid());
    }

    #[test]
    fn repeated_vertex_reports_degenerate_segment() {
        let c = ClosedPolyline::new(vec![pt(1, 1, 0), pt(-1, 1, 0), pt(-1, 1, 0), pt(1, -1, 0)]);
        let report = PolygonalLink::new(vec![c]).validate();
        assert_eq!(
            report.violations,
            vec![Violation::DegenerateSegment {
                component: 0,
                index: 1
            }]
        );
        assert_eq!(
            report.violations[0].to_string(),
            "degenerate segment at (comp 0, index 1)"
        );
    }

    #[test]
    fn squares_sharing_an_edge_intersect() {
        let link = PolygonalLink::new(vec![square(0, 0, 0), square(2, 0, 0)]);
        let report = link.validate();
        assert!(matches!(
            report.violations.as_slice(),
            [Violation::ComponentsIntersect { first: 0, second: 1, .. }]
        ));
        assert!(report.violations[0].to_string().starts_with("components 0,1 intersect"));
    }

    #[test]
    fn bow_tie_self_intersects() {
        let c = ClosedPolyline::new(vec![pt(0, 0, 0), pt(2, 2, 0), pt(2, 0, 0), pt(0, 2, 0)]);
        assert!(!c.is_valid());
    }

    #[test]
    fn fold_back_is_rejected() {
        let c = ClosedPolyline::new(vec![pt(0, 0, 0), pt(2, 0, 0), pt(1, 0, 0), pt(0, 1, 0)]);
        assert!(!c.is_valid());
    }

    #[test]
    fn skew_and_touching_segments() {
        assert!(!segments_intersect(&pt(0, 0, 0), &pt(1, 0, 0), &pt(0, 1, 1), &pt(1, 1, 1)));
        assert!(segments_intersect(&pt(0, 0, 0), &pt(2, 0, 0), &pt(1, 0, 0), &pt(1, 1, 1)));
        assert!(segments_intersect(&pt(0, 0, 0), &pt(2, 0, 0), &pt(1, 0, 0), &pt(3, 0, 0)));
        assert!(!segments_intersect(&pt(0, 0, 0), &pt(1, 0, 0), &pt(2, 0, 0), &pt(3, 0, 0)));
        assert!(segments_intersect(&pt(0, 0, 0), &pt(2, 2, 0), &pt(0, 2, 0), &pt(2, 0, 0)));
    }

    #[test]
    fn graph_validation() {
        let g = EmbeddedGraph::new(vec![pt(0, 0, 0), pt(2, 0, 0), pt(1, 0, 0)], vec![(0, 1)]);
        assert!(matches!(
            g.validate().violations.as_slice(),
            [Violation::GraphEdgeThroughVertex { edge: 0, vertex: 2 }]
        ));
        let g = EmbeddedGraph::new(vec![pt(0, 0, 0), pt(1, 0, 0)], vec![(0, 1), (1, 0), (0, 0)]);
        assert_eq!(g.validate().violations.len(), 2);
    }
}
