//! Gauss linking numbers from signed crossings of a generic linear projection.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{orient2d, Point3, Side};
use crate::link::{segments_intersect, BBox, ClosedPolyline, PolygonalLink};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkingError {
    #[error("curves intersect (segment {first_segment} of the first meets segment {second_segment} of the second)")]
    Intersecting {
        first_segment: usize,
        second_segment: usize,
    },
    #[error("no generic projection direction found among {tried} candidates")]
    NoGenericDirection { tried: usize },
    #[error("components {first} and {second}: {source}")]
    Pair {
        first: usize,
        second: usize,
        #[source]
        source: Box<LinkingError>,
    },
}

/// Candidate projection directions, tried in order until one is generic.
fn candidate_directions() -> impl Iterator<Item = [i64; 3]> {
    const FIXED: [[i64; 3]; 6] = [
        [3, 5, 7],
        [2, -3, 11],
        [5, 1, -4],
        [-7, 2, 3],
        [1, 13, -6],
        [9, -4, 1],
    ];
    FIXED
        .into_iter()
        .chain((1..58i64).map(|k| [k, k * k + 1, 2 * k + 3 - k * k % 7]))
}

const MAX_DIRECTIONS: usize = 64;

/// Why a projection direction was rejected.
enum Degenerate {
    NotGeneric,
    Touching(usize, usize),
}

/// Gauss linking number of two disjoint closed polylines.
pub fn linking_number<T: Scalar>(
    a: &ClosedPolyline<T>,
    b: &ClosedPolyline<T>,
) -> Result<i64, LinkingError> {
    if let Some((i, j)) = first_contact(a, b) {
        return Err(LinkingError::Intersecting {
            first_segment: i,
            second_segment: j,
        });
    }
    let mut tried = 0;
    for d in candidate_directions().take(MAX_DIRECTIONS) {
        tried += 1;
        match linking_number_along(a, b, d) {
            Ok(lk) => return Ok(lk),
            Err(Degenerate::NotGeneric) => continue,
            Err(Degenerate::Touching(i, j)) => {
                return Err(LinkingError::Intersecting {
                    first_segment: i,
                    second_segment: j,
                })
            }
        }
    }
    Err(LinkingError::NoGenericDirection { tried })
}

/// Linking number using one specific projection direction; `None` if the
/// direction is not generic for this pair.
pub fn linking_number_with_direction<T: Scalar>(
    a: &ClosedPolyline<T>,
    b: &ClosedPolyline<T>,
    direction: [i64; 3],
) -> Result<Option<i64>, LinkingError> {
    match linking_number_along(a, b, direction) {
        Ok(lk) => Ok(Some(lk)),
        Err(Degenerate::NotGeneric) => Ok(None),
        Err(Degenerate::Touching(i, j)) => Err(LinkingError::Intersecting {
            first_segment: i,
            second_segment: j,
        }),
    }
}

fn first_contact<T: Scalar>(a: &ClosedPolyline<T>, b: &ClosedPolyline<T>) -> Option<(usize, usize)> {
    let boxes: Vec<BBox<T>> = b.segments().map(BBox::of_segment).collect();
    for (i, sa) in a.segments().enumerate() {
        let ba = BBox::of_segment(sa);
        for (j, sb) in b.segments().enumerate() {
            if ba.overlaps(&boxes[j]) && segments_intersect(sa.0, sa.1, sb.0, sb.1) {
                return Some((i, j));
            }
        }
    }
    None
}

struct Projected<T> {
    plane: Vec<(T, T)>,
    depth: Vec<T>,
}

fn project<T: Scalar>(c: &ClosedPolyline<T>, basis: &[Point3<T>; 3]) -> Projected<T> {
    let plane = c
        .vertices()
        .iter()
        .map(|v| (basis[0].dot(v), basis[1].dot(v)))
        .collect();
    let depth = c.vertices().iter().map(|v| basis[2].dot(v)).collect();
    Projected { plane, depth }
}

fn to_scalar<T: Scalar>(d: [i64; 3]) -> Point3<T> {
    let f = |k: i64| T::from_i64(k).expect("small integer fits scalar");
    Point3::new(f(d[0]), f(d[1]), f(d[2]))
}

fn linking_number_along<T: Scalar>(
    a: &ClosedPolyline<T>,
    b: &ClosedPolyline<T>,
    d: [i64; 3],
) -> Result<i64, Degenerate> {
    let dir: Point3<T> = to_scalar(d);
    let helper: Point3<T> = if d[0] != 0 || d[1] != 0 {
        to_scalar([0, 0, 1])
    } else {
        to_scalar([1, 0, 0])
    };
    let e1 = dir.cross(&helper);
    let e2 = dir.cross(&e1);
    let basis = [e1, e2, dir.clone()];
    let pa = project(a, &basis);
    let pb = project(b, &basis);

    // A segment seen end-on, or a vertex projecting onto the other curve,
    // makes the diagram non-generic.
    for p in [&pa, &pb] {
        let n = p.plane.len();
        if (0..n).any(|i| p.plane[i] == p.plane[(i + 1) % n]) {
            return Err(Degenerate::NotGeneric);
        }
    }
    if vertex_on_diagram(&pa, &pb) || vertex_on_diagram(&pb, &pa) {
        return Err(Degenerate::NotGeneric);
    }

    let na = pa.plane.len();
    let nb = pb.plane.len();
    let mut crossings: Vec<(T, T)> = Vec::new();
    let mut total = 0i64;
    for i in 0..na {
        let (p0, p1) = (&pa.plane[i], &pa.plane[(i + 1) % na]);
        for j in 0..nb {
            let (q0, q1) = (&pb.plane[j], &pb.plane[(j + 1) % nb]);
            let o1 = orient2d(p0, p1, q0);
            let o2 = orient2d(p0, p1, q1);
            let o3 = orient2d(q0, q1, p0);
            let o4 = orient2d(q0, q1, p1);
            if o1 == o2 || o3 == o4 {
                continue;
            }
            let dp = (p1.0.clone() - p0.0.clone(), p1.1.clone() - p0.1.clone());
            let dq = (q1.0.clone() - q0.0.clone(), q1.1.clone() - q0.1.clone());
            let w = (q0.0.clone() - p0.0.clone(), q0.1.clone() - p0.1.clone());
            let den = cross2(&dp, &dq);
            let s = cross2(&w, &dq) / den.clone();
            let t = cross2(&w, &dp) / den;
            let point = (
                p0.0.clone() + s.clone() * dp.0.clone(),
                p0.1.clone() + s.clone() * dp.1.clone(),
            );
            if crossings.contains(&point) {
                return Err(Degenerate::NotGeneric);
            }
            crossings.push(point);
            let za = lerp(&pa.depth[i], &pa.depth[(i + 1) % na], &s);
            let zb = lerp(&pb.depth[j], &pb.depth[(j + 1) % nb], &t);
            if za == zb {
                return Err(Degenerate::Touching(i, j));
            }
            let (a0, a1) = a.segment(i);
            let (b0, b1) = b.segment(j);
            let ta = a1 - a0;
            let tb = b1 - b0;
            let (over, under) = if za > zb { (ta, tb) } else { (tb, ta) };
            total += match Side::of(&dir.dot(&over.cross(&under))) {
                Side::Positive => 1,
                Side::Negative => -1,
                Side::On => return Err(Degenerate::NotGeneric),
            };
        }
    }
    debug_assert!(total % 2 == 0, "crossing sign sum must be even");
    Ok(total / 2)
}

fn cross2<T: Scalar>(a: &(T, T), b: &(T, T)) -> T {
    a.0.clone() * b.1.clone() - a.1.clone() * b.0.clone()
}

fn lerp<T: Scalar>(a: &T, b: &T, t: &T) -> T {
    a.clone() + t.clone() * (b.clone() - a.clone())
}

fn vertex_on_diagram<T: Scalar>(v: &Projected<T>, s: &Projected<T>) -> bool {
    let n = s.plane.len();
    v.plane.iter().any(|p| {
        (0..n).any(|j| {
            let (q0, q1) = (&s.plane[j], &s.plane[(j + 1) % n]);
            orient2d(q0, q1, p) == Side::On && within_box(q0, q1, p)
        })
    })
}

fn within_box<T: Scalar>(a: &(T, T), b: &(T, T), p: &(T, T)) -> bool {
    let within = |lo: &T, hi: &T, x: &T| {
        let (l, h) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        l <= x && x <= h
    };
    within(&a.0, &b.0, &p.0) && within(&a.1, &b.1, &p.1)
}

/// Symmetric matrix of pairwise linking numbers (diagonal unused, kept 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Every pair has nonzero linking number (sufficient for "pairwise linked").
    pub fn all_nonzero(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| i == j || self.entries[i][j] != 0))
    }

    pub fn first_zero_pair(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.entries[i][j] == 0)
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn pairwise_linking<T: Scalar>(link: &PolygonalLink<T>) -> Result<LinkingMatrix, LinkingError> {
    let comps = link.components();
    let n = comps.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let values: Vec<Result<i64, LinkingError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            linking_number(&comps[i], &comps[j]).map_err(|e| LinkingError::Pair {
                first: i,
                second: j,
                source: Box::new(e),
            })
        })
        .collect();
    let mut entries = vec![vec![0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        let v = v?;
        entries[i][j] = v;
        entries[j][i] = v;
    }
    Ok(LinkingMatrix { entries })
}
