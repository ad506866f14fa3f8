//! How a single plane meets the components of a link.

use std::collections::BTreeSet;

use crate::counting::{curve_crossing_count, CrossingCount};
use crate::geometry::{Plane, Side};
use crate::link::PolygonalLink;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcutReport {
    /// Components the plane touches or crosses.
    pub components_met: BTreeSet<usize>,
    /// Total crossing count under the counting rule.
    pub points_met: CrossingCount,
    /// No vertex lies on the plane, so every meeting point is a transversal crossing.
    pub transversal: bool,
    /// Closed sides (`+1`: `normal·x >= offset`, `-1`: `<=`) missing some component.
    pub tiny_sides: Vec<i8>,
}

impl NcutReport {
    /// Meets at most `n` components, all transversally.
    pub fn is_n_cut(&self, n: usize) -> bool {
        self.transversal && self.components_met.len() <= n
    }

    /// Transversal and at most `n` points.
    pub fn is_n_point_cut(&self, n: u64) -> bool {
        self.transversal && self.points_met <= CrossingCount::Finite(n)
    }
}

pub fn ncut_classify(link: &PolygonalLink<Rational>, s: &Plane<Rational>) -> NcutReport {
    let mut components_met = BTreeSet::new();
    let mut points = Vec::with_capacity(link.component_count());
    let mut transversal = true;
    let (mut misses_positive, mut misses_negative) = (false, false);
    for (i, c) in link.components().iter().enumerate() {
        let sides: Vec<Side> = c.vertices().iter().map(|v| s.side(v)).collect();
        let has = |x: Side| sides.contains(&x);
        if has(Side::On) {
            transversal = false;
        }
        if has(Side::On) || (has(Side::Positive) && has(Side::Negative)) {
            components_met.insert(i);
        }
        // Every vertex strictly on one side means the whole polygon is.
        misses_positive |= sides.iter().all(|&x| x == Side::Negative);
        misses_negative |= sides.iter().all(|&x| x == Side::Positive);
        points.push(curve_crossing_count(c, s));
    }
    let mut tiny_sides = Vec::new();
    if misses_negative {
        tiny_sides.push(-1);
    }
    if misses_positive {
        tiny_sides.push(1);
    }
    NcutReport {
        components_met,
        points_met: points.into_iter().sum(),
        transversal,
        tiny_sides,
    }
}
