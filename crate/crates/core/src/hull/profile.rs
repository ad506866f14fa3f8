//! Crossing counts of the parallel planes with one fixed normal.

use std::fmt;

use crate::counting::{count_components, CrossingCount};
use crate::geometry::Direction;
use crate::link::PolygonalLink;
use crate::scalar::{format_rational, Rational};

/// Finite union of disjoint closed intervals, sorted and merged.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalUnion {
    intervals: Vec<(Rational, Rational)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts and merges overlapping or touching pieces.
    pub fn from_intervals(mut pieces: Vec<(Rational, Rational)>) -> Self {
        pieces.retain(|(lo, hi)| lo <= hi);
        pieces.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo <= t && t <= hi)
    }

    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.intervals
            .iter()
            .all(|(lo, hi)| other.intervals.iter().any(|(a, b)| a <= lo && hi <= b))
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(lo, hi)| format!("[{}, {}]", format_rational(lo), format_rational(hi)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Step function `t ↦ count` for the planes `u · x = t`.
///
/// `counts[k]` holds the value on the open interval just below
/// `breakpoints[k]` (and `counts[B]` the one above the last breakpoint).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingProfile {
    pub direction: Direction<Rational>,
    pub breakpoints: Vec<Rational>,
    pub counts: Vec<CrossingCount>,
    pub boundary_counts: Vec<CrossingCount>,
}

impl CrossingProfile {
    pub fn count_at(&self, t: &Rational) -> CrossingCount {
        match self.breakpoints.binary_search(t) {
            Ok(k) => self.boundary_counts[k],
            Err(k) => self.counts[k],
        }
    }

    /// Largest finite value attained anywhere.
    pub fn max_finite(&self) -> u64 {
        self.counts
            .iter()
            .chain(&self.boundary_counts)
            .filter_map(|c| c.finite())
            .max()
            .unwrap_or(0)
    }

    pub fn all_counts(&self) -> impl Iterator<Item = CrossingCount> + '_ {
        self.counts.iter().chain(&self.boundary_counts).copied()
    }
}

pub fn directional_profile(link: &PolygonalLink<Rational>, u: &Direction<Rational>) -> CrossingProfile {
    let heights: Vec<Rational> = link.vertices().map(|v| u.dot(v)).collect();
    let mut breakpoints = heights.clone();
    breakpoints.sort();
    breakpoints.dedup();
    let rank: Vec<usize> = heights
        .iter()
        .map(|h| breakpoints.binary_search(h).expect("height is a breakpoint"))
        .collect();
    let mut ranges = Vec::with_capacity(link.component_count());
    let mut start = 0;
    for c in link.components() {
        ranges.push(start..start + c.len());
        start += c.len();
    }
    let b = breakpoints.len();
    let mut sides = vec![0i8; rank.len()];
    let mut counts = Vec::with_capacity(b + 1);
    for k in 0..=b {
        for (s, &r) in sides.iter_mut().zip(&rank) {
            *s = if r >= k { 1 } else { -1 };
        }
        counts.push(count_components(&sides, &ranges));
    }
    let mut boundary_counts = Vec::with_capacity(b);
    for k in 0..b {
        for (s, &r) in sides.iter_mut().zip(&rank) {
            *s = (r as i64 - k as i64).signum() as i8;
        }
        boundary_counts.push(count_components(&sides, &ranges));
    }
    CrossingProfile {
        direction: u.clone(),
        breakpoints,
        counts,
        boundary_counts,
    }
}

/// Closure of `{ t : count(t) >= 2n }`; `Infinite` meets every level.
pub fn admissible_offsets(profile: &CrossingProfile, n: u64) -> IntervalUnion {
    assert!(n >= 1, "level must be at least 1");
    let bp = &profile.breakpoints;
    let mut pieces = Vec::new();
    for k in 1..bp.len() {
        if profile.counts[k].reaches_level(n) {
            pieces.push((bp[k - 1].clone(), bp[k].clone()));
        }
    }
    for (k, c) in profile.boundary_counts.iter().enumerate() {
        if c.reaches_level(n) {
            pieces.push((bp[k].clone(), bp[k].clone()));
        }
    }
    IntervalUnion::from_intervals(pieces)
}
