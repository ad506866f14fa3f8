//! Exact hull membership by enumerating the strata of the sphere arrangement.
//!
//! For a fixed point `x`, the count of the plane through `x` with normal `u`
//! only depends on the signs of `u · (v_i - x)`. Those signs are constant on
//! the vertices, open arcs and open cells of the great-circle arrangement
//! `{ u : u · (v_i - x) = 0 }`. Every arc and cell touches an arrangement
//! vertex `w`, so it is enough to look at each `w`, the two rays along every
//! circle through `w`, and the sectors beside those rays. Rays and sectors
//! are reached by symbolic perturbation: `w + δ₁ t ± δ₂ n` with
//! `δ₂ ≪ δ₁ ≪ 1`, signs compared lexicographically.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::HullError;
use crate::counting::{count_components, graph_count_from_sides, link_crossing_count, CrossingCount, GraphCrossing};
use crate::geometry::{Direction, Plane, Point3};
use crate::link::{EmbeddedGraph, PolygonalLink};
use crate::scalar::{max_bits, primitive_integer_vector, Rational};

/// Integer arithmetic used inside the arrangement; `i128` when the inputs are
/// small enough that no product can overflow, `BigInt` otherwise.
pub(crate) trait Int: Signed + Ord + Clone + Send + Sync + fmt::Debug {
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("checked bit bound")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type V<I> = [I; 3];

fn dot<I: Int>(a: &V<I>, b: &V<I>) -> I {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn cross<I: Int>(a: &V<I>, b: &V<I>) -> V<I> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn sgn<I: Int>(v: &I) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Which stratum of the arrangement a plane normal was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratumKind {
    Vertex,
    Arc,
    Cell,
}

impl fmt::Display for StratumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StratumKind::Vertex => "vertex",
            StratumKind::Arc => "arc",
            StratumKind::Cell => "cell",
        })
    }
}

/// The symbolic description of a stratum: `D² w + D σ t + τ n` for the
/// smallest power-of-two `D` that realizes the recorded sign pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct StratumId {
    /// Indices of the two circles spanning `w`.
    a: usize,
    b: usize,
    kind: StratumKind,
    /// Circle along which the ray/sector is taken (unused for vertices).
    along: usize,
    sigma: i8,
    tau: i8,
}

/// Minimal crossing count over all planes through a point, with a plane
/// that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipTranscript {
    pub point: Point3<Rational>,
    pub min_count: CrossingCount,
    pub plane: Plane<Rational>,
    pub stratum: StratumKind,
    pub strata_examined: u64,
}

impl MembershipTranscript {
    /// Largest `n` with `min_count >= 2n`.
    pub fn level(&self) -> u64 {
        match self.min_count {
            CrossingCount::Finite(k) => k / 2,
            CrossingCount::Infinite => u64::MAX,
        }
    }

    pub fn is_member(&self, n: u64) -> bool {
        self.min_count.reaches_level(n)
    }
}

impl fmt::Display for MembershipTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, count = {}", self.plane, self.min_count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub level: u64,
    pub transcript: MembershipTranscript,
}

/// Difference vectors `v_i - x`, scaled to primitive integers, grouped into
/// great circles (equal up to sign).
struct Arrangement<I> {
    d: Vec<V<I>>,
    circle_of: Vec<usize>,
    normals: Vec<V<I>>,
}

fn arrangement<I: Int>(d_big: &[[BigInt; 3]]) -> Arrangement<I> {
    let mut ids: HashMap<[BigInt; 3], usize> = HashMap::new();
    let mut normals = Vec::new();
    let mut circle_of = Vec::with_capacity(d_big.len());
    for v in d_big {
        let mut key = v.clone();
        if key.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            key = key.map(|c| -c);
        }
        let next = normals.len();
        let id = *ids.entry(key.clone()).or_insert_with(|| {
            normals.push(key.clone().map(|c| I::from_big(&c)));
            next
        });
        circle_of.push(id);
    }
    Arrangement {
        d: d_big.iter().map(|v| v.clone().map(|c| I::from_big(&c))).collect(),
        circle_of,
        normals,
    }
}

/// What to evaluate at each stratum: the full link rule, or the graph rule on
/// open cells only.
#[derive(Clone, Copy)]
enum Evaluator<'a> {
    Link(&'a [Range<usize>]),
    Graph(&'a [(usize, usize)]),
}

impl Evaluator<'_> {
    fn wants(&self, kind: StratumKind) -> bool {
        match self {
            Evaluator::Link(_) => true,
            Evaluator::Graph(_) => kind == StratumKind::Cell,
        }
    }

    fn count(&self, signs: &[i8]) -> CrossingCount {
        match self {
            Evaluator::Link(ranges) => count_components(signs, ranges),
            Evaluator::Graph(edges) => match graph_count_from_sides(edges, |i| signs[i]) {
                GraphCrossing::Finite(k) => CrossingCount::Finite(k),
                // Only open cells are evaluated, so no vertex is ever hit.
                GraphCrossing::VertexHit => CrossingCount::Infinite,
            },
        }
    }
}

type Best = (CrossingCount, StratumId);

fn better(x: Option<Best>, y: Option<Best>) -> Option<Best> {
    match (x, y) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Minimum over every stratum touching the vertex `w = n_a × n_b`.
fn strata_at<I: Int>(arr: &Arrangement<I>, a: usize, b: usize, eval: Evaluator, examined: &mut u64) -> Option<Best> {
    let w = cross(&arr.normals[a], &arr.normals[b]);
    let mut signs: Vec<i8> = arr.d.iter().map(|d| sgn(&dot(&w, d))).collect();
    let zeros: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] == 0).collect();
    let mut incident: Vec<usize> = zeros.iter().map(|&i| arr.circle_of[i]).collect();
    incident.sort_unstable();
    incident.dedup();
    // Each vertex is handled once, by its two smallest circles.
    if incident.len() < 2 || incident[0] != a || incident[1] != b {
        return None;
    }
    let mut best: Option<Best> = None;
    let mut consider = |count: CrossingCount, id: StratumId, examined: &mut u64| {
        *examined += 1;
        best = better(best, Some((count, id)));
    };
    let base = StratumId {
        a,
        b,
        kind: StratumKind::Vertex,
        along: a,
        sigma: 0,
        tau: 0,
    };
    if eval.wants(StratumKind::Vertex) {
        consider(eval.count(&signs), base, examined);
    }
    for &c in &incident {
        let n = &arr.normals[c];
        let t = cross(n, &w);
        let td: Vec<i8> = zeros.iter().map(|&i| sgn(&dot(&t, &arr.d[i]))).collect();
        let nd: Vec<i8> = zeros.iter().map(|&i| sgn(&dot(n, &arr.d[i]))).collect();
        for sigma in [1i8, -1] {
            if eval.wants(StratumKind::Arc) {
                for (k, &i) in zeros.iter().enumerate() {
                    signs[i] = sigma * td[k];
                }
                let id = StratumId { kind: StratumKind::Arc, along: c, sigma, ..base };
                consider(eval.count(&signs), id, examined);
            }
            for tau in [1i8, -1] {
                for (k, &i) in zeros.iter().enumerate() {
                    signs[i] = if td[k] != 0 { sigma * td[k] } else { tau * nd[k] };
                }
                let id = StratumId { kind: StratumKind::Cell, along: c, sigma, tau, ..base };
                consider(eval.count(&signs), id, examined);
            }
        }
        for &i in &zeros {
            signs[i] = 0;
        }
    }
    best
}

/// Target signs of a stratum, recomputed from its description.
fn stratum_signs<I: Int>(arr: &Arrangement<I>, id: &StratumId) -> Vec<i8> {
    let w = cross(&arr.normals[id.a], &arr.normals[id.b]);
    let n = &arr.normals[id.along];
    let t = cross(n, &w);
    arr.d
        .iter()
        .map(|d| {
            let s = sgn(&dot(&w, d));
            if s != 0 || id.kind == StratumKind::Vertex {
                return s;
            }
            let s = id.sigma * sgn(&dot(&t, d));
            if s != 0 || id.kind == StratumKind::Arc {
                return s;
            }
            id.tau * sgn(&dot(n, d))
        })
        .collect()
}

/// A concrete integer normal with the stratum's sign pattern.
fn realize<I: Int>(arr: &Arrangement<I>, id: &StratumId) -> [BigInt; 3] {
    let target = stratum_signs(arr, id);
    let big = |v: &V<I>| v.clone().map(|c| c.to_big());
    let w = big(&cross(&arr.normals[id.a], &arr.normals[id.b]));
    let n = big(&arr.normals[id.along]);
    let t = cross(&n, &w);
    let d: Vec<[BigInt; 3]> = arr.d.iter().map(big).collect();
    let sigma = BigInt::from(id.sigma);
    let tau = BigInt::from(id.tau);
    let mut scale = BigInt::from(1);
    loop {
        let u: [BigInt; 3] = match id.kind {
            StratumKind::Vertex => w.clone(),
            StratumKind::Arc => std::array::from_fn(|k| &scale * &w[k] + &sigma * &t[k]),
            StratumKind::Cell => std::array::from_fn(|k| &scale * &scale * &w[k] + &scale * &sigma * &t[k] + &tau * &n[k]),
        };
        if d.iter().zip(&target).all(|(v, &s)| sgn(&dot(&u, v)) == s) {
            return u;
        }
        scale *= 2;
    }
}

fn difference_vectors<'a>(
    points: impl Iterator<Item = &'a Point3<Rational>>,
    x: &Point3<Rational>,
) -> Result<Vec<[BigInt; 3]>, HullError> {
    points
        .map(|v| {
            let d = v - x;
            if d.is_zero() {
                Err(HullError::PointOnCurve)
            } else {
                Ok(primitive_integer_vector(&d.to_array()))
            }
        })
        .collect()
}

/// Bits per input coordinate for which every product stays inside `i128`.
const I128_SAFE_BITS: u64 = 29;

fn fits_i128(d: &[[BigInt; 3]]) -> bool {
    d.iter().all(|v| max_bits(v) <= I128_SAFE_BITS)
}

fn minimize<I: Int>(d: &[[BigInt; 3]], eval: Evaluator) -> (Option<(CrossingCount, [BigInt; 3], StratumKind)>, u64) {
    let arr: Arrangement<I> = arrangement(d);
    let c = arr.normals.len();
    if c < 2 {
        return minimize_single_circle(&arr, eval);
    }
    let (best, examined) = (0..c)
        .into_par_iter()
        .map(|a| {
            let mut examined = 0u64;
            let mut best = None;
            for b in a + 1..c {
                best = better(best, strata_at(&arr, a, b, eval, &mut examined));
            }
            (best, examined)
        })
        .reduce(|| (None, 0), |x, y| (better(x.0, y.0), x.1 + y.1));
    let out = best.map(|(count, id)| (count, realize(&arr, &id), id.kind));
    (out, examined)
}

/// All difference vectors parallel: the circle itself plus its two hemispheres.
fn minimize_single_circle<I: Int>(arr: &Arrangement<I>, eval: Evaluator) -> (Option<(CrossingCount, [BigInt; 3], StratumKind)>, u64) {
    let n = arr.normals[0].clone().map(|c| c.to_big());
    let axis = if n[0].is_zero() && n[1].is_zero() { [1, 0, 0] } else { [0, 0, 1] }.map(BigInt::from);
    let on_circle = cross(&n, &axis);
    let mut best = None;
    let mut examined = 0;
    for (u, kind) in [(n.clone(), StratumKind::Cell), (on_circle, StratumKind::Arc)] {
        if !eval.wants(kind) {
            continue;
        }
        let signs: Vec<i8> = arr.d.iter().map(|d| sgn(&dot(&u, &d.clone().map(|c| c.to_big())))).collect();
        let count = eval.count(&signs);
        examined += 1;
        if best.as_ref().map_or(true, |(b, _, _)| count < *b) {
            best = Some((count, u, kind));
        }
    }
    (best, examined)
}

fn run(d: &[[BigInt; 3]], eval: Evaluator) -> (Option<(CrossingCount, [BigInt; 3], StratumKind)>, u64) {
    if fits_i128(d) {
        minimize::<i128>(d, eval)
    } else {
        minimize::<BigInt>(d, eval)
    }
}

fn plane_through(x: &Point3<Rational>, u: [BigInt; 3]) -> Plane<Rational> {
    let dir = Direction::from_vector(Point3::from_array(u.map(Rational::from_integer))).expect("stratum normal is nonzero");
    Plane::through(x, dir)
}

/// Minimum crossing count over every plane through `x`, decided exactly.
pub fn min_crossing(link: &PolygonalLink<Rational>, x: &Point3<Rational>) -> Result<MembershipTranscript, HullError> {
    if link.contains_point(x) {
        return Err(HullError::PointOnCurve);
    }
    let d = difference_vectors(link.vertices(), x)?;
    let mut ranges = Vec::new();
    let mut start = 0;
    for c in link.components() {
        ranges.push(start..start + c.len());
        start += c.len();
    }
    let (best, examined) = run(&d, Evaluator::Link(&ranges));
    let (count, u, kind) = best.ok_or(HullError::EmptyInput)?;
    let plane = plane_through(x, u);
    let recount = link_crossing_count(link, &plane);
    assert_eq!(recount, count, "transcript plane must reproduce the stratum count");
    Ok(MembershipTranscript {
        point: x.clone(),
        min_count: count,
        plane,
        stratum: kind,
        strata_examined: examined,
    })
}

/// Whether `x` lies in the `n`-th hull.
pub fn membership(link: &PolygonalLink<Rational>, x: &Point3<Rational>, n: u64) -> Result<Membership, HullError> {
    if n == 0 {
        return Err(HullError::InvalidLevel);
    }
    let transcript = min_crossing(link, x)?;
    Ok(Membership {
        member: transcript.is_member(n),
        level: transcript.level(),
        transcript,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMembership {
    pub member: bool,
    pub min_edges: u64,
    pub plane: Plane<Rational>,
}

impl fmt::Display for GraphMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, count = {}", self.plane, self.min_edges)
    }
}

/// Whether every plane through `x` that avoids the graph's vertices meets at
/// least `n` edges. Only open cells of the arrangement are planes of that kind.
pub fn graph_membership(g: &EmbeddedGraph<Rational>, x: &Point3<Rational>, n: u64) -> Result<GraphMembership, HullError> {
    if g.contains_point(x) {
        return Err(HullError::PointOnCurve);
    }
    let d = difference_vectors(g.vertices.iter(), x)?;
    let (best, _) = run(&d, Evaluator::Graph(&g.edges));
    let (count, u, _) = best.ok_or(HullError::EmptyInput)?;
    let plane = plane_through(x, u);
    let min_edges = count.finite().expect("open cells never touch a vertex");
    debug_assert_eq!(
        crate::counting::graph_crossing_count(g, &plane),
        GraphCrossing::Finite(min_edges)
    );
    Ok(GraphMembership {
        member: min_edges >= n,
        min_edges,
        plane,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::octahedron::regular_octahedron_graph;
    use crate::link::ClosedPolyline;
    use crate::scalar::{int, rat};

    /// Convex 12-gon with rational vertices on the unit circle.
    fn dodecagon() -> PolygonalLink<Rational> {
        let pts = [
            (5, 0), (4, 3), (3, 4), (0, 5), (-3, 4), (-4, 3),
            (-5, 0), (-4, -3), (-3, -4), (0, -5), (3, -4), (4, -3),
        ];
        let vs = pts.iter().map(|&(a, b)| Point3::new(rat(a, 5), rat(b, 5), int(0))).collect();
        PolygonalLink::new(vec![ClosedPolyline::new(vs)])
    }

    #[test]
    fn convex_planar_curve() {
        let link = dodecagon();
        let o = Point3::origin();
        let m1 = membership(&link, &o, 1).unwrap();
        assert!(m1.member);
        let m2 = membership(&link, &o, 2).unwrap();
        assert!(!m2.member);
        assert_eq!(m2.transcript.min_count, CrossingCount::Finite(2));
        assert_eq!(link_crossing_count(&link, &m2.transcript.plane), CrossingCount::Finite(2));
        let far = Point3::new(int(0), int(0), int(5));
        let m = membership(&link, &far, 1).unwrap();
        assert!(!m.member);
        assert_eq!(m.transcript.min_count, CrossingCount::Finite(0));
    }

    #[test]
    fn point_on_curve_rejected() {
        let link = dodecagon();
        assert_eq!(membership(&link, &Point3::new(int(1), int(0), int(0)), 1), Err(HullError::PointOnCurve));
        assert_eq!(
            membership(&link, &Point3::new(rat(9, 10), rat(3, 10), int(0)), 1),
            Err(HullError::PointOnCurve)
        );
    }

    #[test]
    fn octahedron_centre() {
        let g = regular_octahedron_graph();
        let o = Point3::origin();
        let m6 = graph_membership(&g, &o, 6).unwrap();
        assert!(m6.member);
        let m7 = graph_membership(&g, &o, 7).unwrap();
        assert!(!m7.member);
        assert_eq!(m7.min_edges, 6);
        assert_eq!(crate::counting::graph_crossing_count(&g, &m7.plane), GraphCrossing::Finite(6));
        assert!(!graph_membership(&g, &Point3::new(int(0), int(0), int(5)), 1).unwrap().member);
    }

    #[test]
    fn bigint_path_agrees_with_i128() {
        let link = dodecagon();
        let x = Point3::new(rat(1, 7), rat(-2, 9), rat(1, 3));
        let d = difference_vectors(link.vertices(), &x).unwrap();
        let ranges = [0..12];
        let (a, ea) = minimize::<i128>(&d, Evaluator::Link(&ranges));
        let (b, eb) = minimize::<BigInt>(&d, Evaluator::Link(&ranges));
        assert_eq!(a, b);
        assert_eq!(ea, eb);
    }
}
