//! Independent oracles shared by the integration tests. None of these call
//! into the library's counting, linking or hull code.

#![allow(dead_code)]

use std::f64::consts::TAU;

use hullkit::geometry::{Plane, Point3};
use hullkit::link::{ClosedPolyline, EmbeddedGraph, PolygonalLink};
use hullkit::scalar::{int, rat, snap_dyadic, to_f64, Rational};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn side(p: &Plane<Rational>, v: &Point3<Rational>) -> i8 {
    let n = p.normal.vector();
    sign(&(&n.x * &v.x + &n.y * &v.y + &n.z * &v.z - &p.offset))
}

/// Crossings of one closed polyline with a plane, `None` if it lies in it.
/// Counted as the sign changes of the cyclic sequence of nonzero sides plus
/// two for every touching run of on-plane vertices.
pub fn oracle_count(c: &ClosedPolyline<Rational>, p: &Plane<Rational>) -> Option<u64> {
    let s: Vec<i8> = c.vertices().iter().map(|v| side(p, v)).collect();
    let n = s.len();
    let start = s.iter().position(|&x| x != 0)?;
    let mut changes = 0;
    let mut touches = 0;
    let mut last = s[start];
    let mut in_run = false;
    for k in 1..=n {
        let x = s[(start + k) % n];
        if x == 0 {
            in_run = true;
            continue;
        }
        if x != last {
            changes += 1;
        } else if in_run {
            touches += 1;
        }
        in_run = false;
        last = x;
    }
    Some(changes + 2 * touches)
}

pub fn oracle_link_count(l: &PolygonalLink<Rational>, p: &Plane<Rational>) -> Option<u64> {
    l.components().iter().map(|c| oracle_count(c, p)).sum()
}

/// Edges crossing a plane strictly, `None` if a vertex lies on it.
pub fn oracle_graph_count(g: &EmbeddedGraph<Rational>, p: &Plane<Rational>) -> Option<u64> {
    let s: Vec<i8> = g.vertices.iter().map(|v| side(p, v)).collect();
    if s.contains(&0) {
        return None;
    }
    Some(g.edges.iter().filter(|&&(a, b)| s[a] != s[b]).count() as u64)
}

fn f3(p: &Point3<Rational>) -> [f64; 3] {
    [to_f64(&p.x), to_f64(&p.y), to_f64(&p.z)]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: [f64; 3]) -> [f64; 3] {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Gauss linking integral, evaluated segment pair by segment pair with the
/// closed-form solid angle of two straight segments.
pub fn gauss_linking(a: &ClosedPolyline<Rational>, b: &ClosedPolyline<Rational>) -> f64 {
    let pa: Vec<[f64; 3]> = a.vertices().iter().map(f3).collect();
    let pb: Vec<[f64; 3]> = b.vertices().iter().map(f3).collect();
    let mut total = 0.0;
    for i in 0..pa.len() {
        let (p1, p2) = (pa[i], pa[(i + 1) % pa.len()]);
        for j in 0..pb.len() {
            let (p3, p4) = (pb[j], pb[(j + 1) % pb.len()]);
            let (r13, r14, r23, r24) = (sub(p3, p1), sub(p4, p1), sub(p3, p2), sub(p4, p2));
            let n = [
                unit(cross(r13, r14)),
                unit(cross(r14, r24)),
                unit(cross(r24, r23)),
                unit(cross(r23, r13)),
            ];
            let mut omega = 0.0;
            for k in 0..4 {
                omega += dot(n[k], n[(k + 1) % 4]).clamp(-1.0, 1.0).asin();
            }
            if omega.is_nan() {
                continue;
            }
            let orient = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
            total += omega * orient.signum();
        }
    }
    total / (2.0 * TAU)
}

pub fn snap(x: f64) -> Rational {
    snap_dyadic(x, 24)
}

/// Regular `n`-gon of radius 1 in the xy-plane, snapped to 2^-24.
pub fn regular_polygon(n: usize) -> PolygonalLink<Rational> {
    let pts = (0..n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            Point3::new(snap(t.cos()), snap(t.sin()), int(0))
        })
        .collect();
    PolygonalLink::new(vec![ClosedPolyline::new(pts)])
}

/// The rotation of the integer quaternion `(a, b, c, d)`, exact.
pub fn rotation(q: [i64; 4]) -> [[Rational; 3]; 3] {
    let [a, b, c, d] = q;
    let n = int(a * a + b * b + c * c + d * d);
    let m = [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ];
    m.map(|row| row.map(|v| int(v) / &n))
}

pub fn apply(m: &[[Rational; 3]; 3], t: &Point3<Rational>, p: &Point3<Rational>) -> Point3<Rational> {
    let v = p.to_array();
    let t = t.to_array();
    Point3::from_array(std::array::from_fn(|i| &m[i][0] * &v[0] + &m[i][1] * &v[1] + &m[i][2] * &v[2] + &t[i]))
}

/// A random valid link with up to `max_components` components of 3 to
/// `max_vertices` vertices each. Each component is a star-shaped loop
/// around its own centre with jittered radius and height; invalid draws are
/// redrawn.
pub fn random_link(rng: &mut ChaCha8Rng, max_components: usize, max_vertices: usize) -> PolygonalLink<Rational> {
    loop {
        let k = rng.gen_range(1..=max_components);
        let comps = (0..k)
            .map(|_| {
                let m = rng.gen_range(3..=max_vertices);
                let centre = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
                let tilt = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
                let pts = (0..m)
                    .map(|j| {
                        let t = TAU * (j as f64 + rng.gen_range(0.0..0.6)) / m as f64;
                        let r = rng.gen_range(1.0..3.0);
                        let (x, y) = (r * t.cos(), r * t.sin());
                        let z = 0.4 * (tilt[0] as f64 * x + tilt[1] as f64 * y) / 2.0 + rng.gen_range(-1.0..1.0);
                        let q = |v: f64| rat((v * 16.0).round() as i64, 16);
                        Point3::new(
                            q(x) + int(centre[0]),
                            q(y) + int(centre[1]),
                            q(z) + int(centre[2]),
                        )
                    })
                    .collect();
                ClosedPolyline::new(pts)
            })
            .collect();
        let link = PolygonalLink::new(comps);
        if link.validate().is_valid() {
            return link;
        }
    }
}

/// A random point with small dyadic coordinates, off the link.
pub fn random_point(rng: &mut ChaCha8Rng, link: &PolygonalLink<Rational>) -> Point3<Rational> {
    loop {
        let mut c = || rat(rng.gen_range(-80i64..=80), 16);
        let p = Point3::new(c(), c(), c());
        if !link.contains_point(&p) {
            return p;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Is `x` in the convex hull of a planar polygon? Checks coplanarity and that
/// `x` is on the same side of every edge.
pub fn in_convex_polygon(poly: &ClosedPolyline<Rational>, x: &Point3<Rational>) -> bool {
    let v = poly.vertices();
    let n = v.len();
    let normal = (&v[1] - &v[0]).cross(&(&v[2] - &v[0]));
    if (x - &v[0]).dot(&normal) != int(0) {
        return false;
    }
    let signs: Vec<i8> = (0..n)
        .map(|i| sign(&(&v[(i + 1) % n] - &v[i]).cross(&(x - &v[i])).dot(&normal)))
        .collect();
    signs.iter().all(|&s| s >= 0) || signs.iter().all(|&s| s <= 0)
}
