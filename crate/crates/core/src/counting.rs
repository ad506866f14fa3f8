//! The plane/curve crossing rule.
//!
//! A segment whose endpoints lie strictly on opposite sides counts once. A
//! maximal cyclic run of vertices lying on the plane counts once when the
//! curve changes sides across it and twice when it returns to the side it
//! came from. A curve lying entirely in the plane meets it infinitely often.

use std::fmt;
use std::ops::Add;

use crate::geometry::{Plane, Point3, Side};
use crate::link::{ClosedPolyline, EmbeddedGraph, PolygonalLink};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingCount {
    Finite(u64),
    Infinite,
}

impl CrossingCount {
    pub const ZERO: CrossingCount = CrossingCount::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, CrossingCount::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            CrossingCount::Finite(k) => Some(k),
            CrossingCount::Infinite => None,
        }
    }

    /// `count >= 2n`, with `Infinite` meeting every threshold.
    pub fn reaches_level(self, n: u64) -> bool {
        match self {
            CrossingCount::Finite(k) => k >= 2 * n,
            CrossingCount::Infinite => true,
        }
    }
}

impl Add for CrossingCount {
    type Output = CrossingCount;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (CrossingCount::Finite(a), CrossingCount::Finite(b)) => CrossingCount::Finite(a + b),
            _ => CrossingCount::Infinite,
        }
    }
}

impl std::iter::Sum for CrossingCount {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CrossingCount::ZERO, Add::add)
    }
}

impl fmt::Display for CrossingCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingCount::Finite(k) => write!(f, "{k}"),
            CrossingCount::Infinite => f.write_str("inf"),
        }
    }
}

/// Applies the counting rule to the cyclic side sequence of one closed curve.
pub fn count_cyclic_sides(sides: &[i8]) -> CrossingCount {
    let n = sides.len();
    let Some(anchor) = sides.iter().position(|&s| s != 0) else {
        return CrossingCount::Infinite;
    };
    let mut count = 0u64;
    let mut last = sides[anchor];
    let mut in_run = false;
    for step in 1..=n {
        let s = sides[(anchor + step) % n];
        if s == 0 {
            in_run = true;
            continue;
        }
        if in_run {
            count += if s == last { 2 } else { 1 };
            in_run = false;
        } else if s != last {
            count += 1;
        }
        last = s;
    }
    CrossingCount::Finite(count)
}

/// Count for side sequences of several closed curves laid out back to back.
pub fn count_components(sides: &[i8], ranges: &[std::ops::Range<usize>]) -> CrossingCount {
    ranges
        .iter()
        .map(|r| count_cyclic_sides(&sides[r.clone()]))
        .sum()
}

pub fn curve_crossing_count<T: Scalar>(component: &ClosedPolyline<T>, s: &Plane<T>) -> CrossingCount {
    let sides: Vec<i8> = component
        .vertices()
        .iter()
        .map(|v| s.side(v).as_i8())
        .collect();
    count_cyclic_sides(&sides)
}

pub fn link_crossing_count<T: Scalar>(link: &PolygonalLink<T>, s: &Plane<T>) -> CrossingCount {
    link.components()
        .iter()
        .map(|c| curve_crossing_count(c, s))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphCrossing {
    Finite(u64),
    /// The plane contains a graph vertex; such planes are excluded from graph hulls.
    VertexHit,
}

/// Edges with endpoints strictly on opposite sides; each counted once.
pub fn graph_crossing_count<T: Scalar>(g: &EmbeddedGraph<T>, s: &Plane<T>) -> GraphCrossing {
    let sides: Vec<Side> = g.vertices.iter().map(|v| s.side(v)).collect();
    graph_count_from_sides(&g.edges, |i| sides[i].as_i8())
}

pub(crate) fn graph_count_from_sides(
    edges: &[(usize, usize)],
    side: impl Fn(usize) -> i8,
) -> GraphCrossing {
    let mut count = 0;
    for &(i, j) in edges {
        let (a, b) = (side(i), side(j));
        if a == 0 || b == 0 {
            return GraphCrossing::VertexHit;
        }
        if a != b {
            count += 1;
        }
    }
    GraphCrossing::Finite(count)
}

/// Side of `v` relative to the plane through `x` with normal `u`.
pub fn side_through<T: Scalar>(u: &Point3<T>, x: &Point3<T>, v: &Point3<T>) -> i8 {
    Side::of(&u.dot(&(v - x))).as_i8()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Direction;
    use crate::scalar::{int, rat, Rational};
    use proptest::prelude::*;

    fn pt(x: i64, y: i64, z: i64) -> Point3<Rational> {
        Point3::new(int(x), int(y), int(z))
    }

    fn square() -> ClosedPolyline<Rational> {
        ClosedPolyline::new(vec![pt(1, 1, 0), pt(-1, 1, 0), pt(-1, -1, 0), pt(1, -1, 0)])
    }

    fn plane(a: i64, b: i64, c: i64, d: Rational) -> Plane<Rational> {
        Plane::new(Direction::from_ints(a, b, c).unwrap(), d)
    }

    #[test]
    fn square_examples() {
        assert_eq!(curve_crossing_count(&square(), &plane(1, 0, 0, int(0))), CrossingCount::Finite(2));
        assert_eq!(curve_crossing_count(&square(), &plane(1, 0, 0, int(1))), CrossingCount::Finite(2));
        assert_eq!(curve_crossing_count(&square(), &plane(0, 0, 1, int(0))), CrossingCount::Infinite);
    }

    #[test]
    fn wrap_around_run_on_triangle() {
        let tri = ClosedPolyline::new(vec![pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)]);
        assert_eq!(curve_crossing_count(&tri, &plane(0, 1, 0, int(0))), CrossingCount::Finite(2));
    }

    #[test]
    fn run_that_changes_sides_counts_once() {
        assert_eq!(count_cyclic_sides(&[1, 0, 0, -1]), CrossingCount::Finite(2));
        assert_eq!(count_cyclic_sides(&[1, 0, -1, 0]), CrossingCount::Finite(2));
        assert_eq!(count_cyclic_sides(&[1, 0, 1, -1]), CrossingCount::Finite(4));
        assert_eq!(count_cyclic_sides(&[0, 1, 1, 1]), CrossingCount::Finite(2));
        assert_eq!(count_cyclic_sides(&[1, 1, 1]), CrossingCount::Finite(0));
    }

    #[test]
    fn octahedron_graph_counts() {
        let g = crate::generators::octahedron::regular_octahedron_graph();
        assert_eq!(graph_crossing_count(&g, &plane(0, 0, 1, rat(1, 2))), GraphCrossing::Finite(4));
        assert_eq!(graph_crossing_count(&g, &plane(0, 0, 1, int(0))), GraphCrossing::VertexHit);
        let tri = EmbeddedGraph::new(vec![pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)], vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(graph_crossing_count(&tri, &plane(1, 0, 0, rat(1, 2))), GraphCrossing::Finite(2));
    }

    proptest! {
        #[test]
        fn finite_counts_are_even(sides in prop::collection::vec(-1i8..=1, 3..40)) {
            if let CrossingCount::Finite(k) = count_cyclic_sides(&sides) {
                prop_assert_eq!(k % 2, 0);
            }
        }

        #[test]
        fn rotation_and_reversal_invariant(sides in prop::collection::vec(-1i8..=1, 3..30), shift in 0usize..30) {
            let base = count_cyclic_sides(&sides);
            let mut rotated = sides.clone();
            rotated.rotate_left(shift % sides.len());
            prop_assert_eq!(count_cyclic_sides(&rotated), base);
            let mut rev = sides.clone();
            rev.reverse();
            prop_assert_eq!(count_cyclic_sides(&rev), base);
            let flipped: Vec<i8> = sides.iter().map(|s| -s).collect();
            prop_assert_eq!(count_cyclic_sides(&flipped), base);
        }

        #[test]
        fn tangent_count_is_larger_one_sided_limit(sides in prop::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], 3..30), pos in 0usize..30) {
            // Put exactly one vertex on the plane and compare with the two
            // nudged planes (the vertex pushed to either side).
            let mut s = sides.clone();
            let k = pos % s.len();
            s[k] = 0;
            let on = count_cyclic_sides(&s).finite().unwrap();
            s[k] = 1;
            let up = count_cyclic_sides(&s).finite().unwrap();
            s[k] = -1;
            let down = count_cyclic_sides(&s).finite().unwrap();
            prop_assert_eq!(on, up.max(down));
        }
    }
}
