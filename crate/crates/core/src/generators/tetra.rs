//! Pairwise linked links laid out along a tetrahedron.
//!
//! `2k + a` strands run around the triangle BCD, given one full twist in the
//! middle of BC so that every pair links once. Each edge AX carries `k + b_X`
//! thin planar loops lying in the vertical plane through A and X; each loop
//! reaches past X and encloses the circuit bundle there. Loops on the same
//! edge are cabled with one full twist. At A the loops' vertical extents
//! interleave, which links loops on different edges.
//!
//! The hull count of the result is the largest vertex load: `m_0 + m_X` at
//! X ∈ {B, C, D} and `m_B + m_C + m_D` at A.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::geometry::{Direction, Point3};
use crate::hull::{hull_bounds, min_crossing, HullBounds, HullError};
use crate::link::{ClosedPolyline, PolygonalLink};
use crate::linking::{pairwise_linking, LinkingMatrix};
use crate::scalar::{int, rat, snap_dyadic, Rational};

use super::torus::SNAP_BITS;

/// Remainder patterns indexed by `p mod 5`: circuit strands first, then the
/// extra loops on AB, AC, AD.
pub const PATTERNS: [[u32; 4]; 5] = [[0, 0, 0, 0], [1, 0, 0, 0], [2, 0, 0, 0], [2, 1, 0, 0], [2, 1, 1, 0]];

pub const MIN_P: u32 = 2;
pub const MAX_P: u32 = 10;

/// Twist steps per full turn.
const TWIST_STEPS: usize = 16;
/// Circuit tube radius and the phase of strand 0.
const CIRCUIT_RADIUS: f64 = 0.1;
const CIRCUIT_PHASE: f64 = 0.3;
/// Loop geometry: overhang behind A, reach past X, half-height at X.
const LOOP_BACK: f64 = 0.1;
const LOOP_REACH: f64 = 0.5;
const LOOP_HALF_HEIGHT: f64 = 1.2;
/// Vertical spacing of the loop ends at A.
const LOOP_STAGGER: f64 = 0.25;
/// Spacing between cabled loops on one edge.
const CABLE_SPACING: f64 = 0.06;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TetraPattern {
    pub p: u32,
    pub k: u32,
    pub r: u32,
    pub pattern: [u32; 4],
}

impl TetraPattern {
    /// The default pattern for `p = 5k + r`.
    pub fn for_p(p: u32) -> Self {
        Self {
            p,
            k: p / 5,
            r: p % 5,
            pattern: PATTERNS[(p % 5) as usize],
        }
    }

    /// Any distribution of the `r` leftover components.
    pub fn with_pattern(p: u32, pattern: [u32; 4]) -> Result<Self, TetraError> {
        let r = p % 5;
        if pattern.iter().sum::<u32>() != r {
            return Err(TetraError::InvalidPattern { p, pattern });
        }
        Ok(Self {
            p,
            k: p / 5,
            r,
            pattern,
        })
    }

    pub fn circuit_strands(&self) -> u32 {
        2 * self.k + self.pattern[0]
    }

    /// Loops on AB, AC, AD.
    pub fn edge_loops(&self) -> [u32; 3] {
        [1, 2, 3].map(|i| self.k + self.pattern[i])
    }

    /// Half the number of strand ends at A, B, C, D.
    pub fn vertex_loads(&self) -> [u64; 4] {
        let m0 = u64::from(self.circuit_strands());
        let [b, c, d] = self.edge_loops().map(u64::from);
        [b + c + d, m0 + b, m0 + c, m0 + d]
    }

    /// `⌈3p/5⌉`.
    pub fn target(&self) -> u64 {
        (3 * u64::from(self.p)).div_ceil(5)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TetraError {
    #[error("p = {0} outside the supported range {MIN_P}..={MAX_P}")]
    OutOfRange(u32),
    #[error("pattern {pattern:?} does not distribute the remainder of p = {p}")]
    InvalidPattern { p: u32, pattern: [u32; 4] },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Hull(#[from] HullError),
}

/// A, B, C, D.
pub fn scaffold_tetrahedron() -> [Point3<Rational>; 4] {
    [(0, 0, 4), (-3, -2, 0), (3, -2, 0), (0, 3, 0)].map(|(x, y, z)| Point3::new(int(x), int(y), int(z)))
}

/// Inward normals of the faces opposite A, B, C, D.
pub fn face_normals() -> Vec<Direction<Rational>> {
    let v = scaffold_tetrahedron();
    (0..4)
        .map(|i| {
            let f: Vec<&Point3<Rational>> = (0..4).filter(|&j| j != i).map(|j| &v[j]).collect();
            let n = (f[1] - f[0]).cross(&(f[2] - f[0]));
            let n = if n.dot(&(&v[i] - f[0])) > int(0) { n } else { -&n };
            Direction::from_vector(n).expect("tetrahedron is not degenerate").normalized()
        })
        .collect()
}

type F3 = [f64; 3];

fn add(a: F3, b: F3) -> F3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: F3, s: f64) -> F3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn lerp(a: F3, b: F3, t: f64) -> F3 {
    add(a, scale(add(b, scale(a, -1.0)), t))
}

fn cross(a: F3, b: F3) -> F3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn unit(a: F3) -> F3 {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    scale(a, 1.0 / n)
}

fn snap(p: F3) -> Point3<Rational> {
    Point3::new(
        snap_dyadic(p[0], SNAP_BITS),
        snap_dyadic(p[1], SNAP_BITS),
        snap_dyadic(p[2], SNAP_BITS),
    )
}

const A: F3 = [0.0, 0.0, 4.0];
const B: F3 = [-3.0, -2.0, 0.0];
const C: F3 = [3.0, -2.0, 0.0];
const D: F3 = [0.0, 3.0, 0.0];
const EZ: F3 = [0.0, 0.0, 1.0];

/// Points `from → to` with the offset rotating once about the segment axis
/// over its middle part; `offset(angle)` gives the offset at a rotation angle.
fn twisted_run(from: F3, to: F3, offset: impl Fn(f64) -> F3, out: &mut Vec<F3>) {
    out.push(add(from, offset(0.0)));
    for s in 0..=TWIST_STEPS {
        let t = 1.0 / 3.0 + (s as f64 / TWIST_STEPS as f64) / 3.0;
        let angle = TAU * s as f64 / TWIST_STEPS as f64;
        out.push(add(lerp(from, to, t), offset(angle)));
    }
}

fn circuit_strand(i: u32, m: u32) -> Vec<F3> {
    let n1: F3 = [0.0, 1.0, 0.0];
    let alpha = CIRCUIT_PHASE + TAU * f64::from(i) / f64::from(m);
    let offset = |a: f64| add(scale(n1, CIRCUIT_RADIUS * (alpha + a).cos()), scale(EZ, CIRCUIT_RADIUS * (alpha + a).sin()));
    let mut pts = Vec::new();
    if m > 1 {
        twisted_run(B, C, offset, &mut pts);
    } else {
        pts.push(add(B, offset(0.0)));
    }
    pts.push(add(C, offset(0.0)));
    pts.push(add(D, offset(0.0)));
    pts
}

/// Loop `i` of `m` along edge AX; `slot` ∈ {1, 2, 3} staggers its ends at A.
fn edge_loop(x: F3, slot: u32, i: u32, m: u32) -> Vec<F3> {
    let h = unit([x[0], x[1], 0.0]);
    let normal = cross(EZ, h);
    let hi = f64::from(slot) * LOOP_STAGGER;
    let lo = (f64::from(slot) - 4.0) * LOOP_STAGGER;
    let p1 = add(add(A, scale(EZ, hi)), scale(h, -LOOP_BACK));
    let p2 = add(add(x, scale(EZ, LOOP_HALF_HEIGHT)), scale(h, LOOP_REACH));
    let p3 = add(add(x, scale(EZ, -LOOP_HALF_HEIGHT)), scale(h, LOOP_REACH));
    let p4 = add(add(A, scale(EZ, lo)), scale(h, -LOOP_BACK));
    let c = CABLE_SPACING * (f64::from(i) - f64::from(m - 1) / 2.0);
    let side = unit(cross(add(p2, scale(p1, -1.0)), normal));
    let offset = |a: f64| add(scale(normal, c * a.cos()), scale(side, c * a.sin()));
    let mut pts = Vec::new();
    if m > 1 {
        twisted_run(p1, p2, offset, &mut pts);
    } else {
        pts.push(p1);
    }
    pts.extend([p2, p3, p4].map(|p| add(p, offset(0.0))));
    pts
}

/// The link alone, without any checks.
pub fn tetra_multihopf_link(pattern: &TetraPattern) -> PolygonalLink<Rational> {
    let mut components = Vec::new();
    let m0 = pattern.circuit_strands();
    for i in 0..m0 {
        components.push(circuit_strand(i, m0));
    }
    for (slot, (x, m)) in [B, C, D].into_iter().zip(pattern.edge_loops()).enumerate() {
        for i in 0..m {
            components.push(edge_loop(x, slot as u32 + 1, i, m));
        }
    }
    PolygonalLink::new(
        components
            .into_iter()
            .map(|c| ClosedPolyline::new(c.into_iter().map(snap).collect()))
            .collect(),
    )
}

/// Points tried, in order, as the designated witness.
pub fn witness_candidates() -> Vec<Point3<Rational>> {
    let [a, b, c, d] = scaffold_tetrahedron();
    let tetra = Point3::new(int(0), rat(-1, 4), int(1));
    debug_assert_eq!(tetra, crate::link::centroid(&[a, b.clone(), c.clone(), d.clone()]));
    let base = crate::link::centroid(&[b.clone(), c.clone(), d]);
    let bc = b.midpoint(&c);
    let between = bc.midpoint(&base);
    vec![tetra, base, bc, between]
}

#[derive(Debug, Clone)]
pub struct TetraLink {
    pub link: PolygonalLink<Rational>,
    pub pattern: TetraPattern,
    pub witness: Point3<Rational>,
    pub face_normals: Vec<Direction<Rational>>,
    pub linking: LinkingMatrix,
    pub bounds: HullBounds,
}

impl TetraLink {
    pub fn header(&self) -> Vec<String> {
        let pat = self.pattern.pattern;
        let mut out = vec![
            format!(
                "generator: tetra p={} k={} r={} pattern=({},{},{},{})",
                self.pattern.p, self.pattern.k, self.pattern.r, pat[0], pat[1], pat[2], pat[3]
            ),
            "convention: tetrahedron A=(0,0,4) B=(-3,-2,0) C=(3,-2,0) D=(0,3,0); components: circuit BCD first, then loops on AB, AC, AD; coordinates snapped to 2^-24".to_string(),
            format!("witness: {}", self.witness),
        ];
        for (i, n) in self.face_normals.iter().enumerate() {
            out.push(format!("face-normal {}: {n}", ["BCD", "ACD", "ABD", "ABC"][i]));
        }
        let upper = self.bounds.upper.map_or("unbounded".to_string(), |u| u.to_string());
        out.push(format!(
            "contract: validate ok; pairwise lk nonzero; hull bounds ({}, {upper}) target {}",
            self.bounds.lower,
            self.pattern.target()
        ));
        out
    }
}

/// Builds the link for `p` components with the default pattern and checks
/// the full contract.
pub fn tetra_multihopf(p: u32) -> Result<TetraLink, TetraError> {
    if !(MIN_P..=MAX_P).contains(&p) {
        return Err(TetraError::OutOfRange(p));
    }
    tetra_multihopf_with(&TetraPattern::for_p(p))
}

pub fn tetra_multihopf_with(pattern: &TetraPattern) -> Result<TetraLink, TetraError> {
    if !(MIN_P..=MAX_P).contains(&pattern.p) {
        return Err(TetraError::OutOfRange(pattern.p));
    }
    let link = tetra_multihopf_link(pattern);
    let report = link.validate();
    if !report.is_valid() {
        return Err(TetraError::Contract(format!("validate failed: {report}")));
    }
    let linking = pairwise_linking(&link).map_err(|e| TetraError::Contract(format!("linking number: {e}")))?;
    if let Some((i, j)) = linking.first_zero_pair() {
        return Err(TetraError::Contract(format!("components {i},{j} have linking number 0")));
    }
    let target = pattern.target();
    let mut witness = None;
    let mut best = 0;
    for w in witness_candidates() {
        let level = min_crossing(&link, &w)?.level();
        best = best.max(level);
        if level >= target {
            witness = Some(w);
            break;
        }
    }
    let Some(witness) = witness else {
        return Err(TetraError::Contract(format!(
            "no candidate witness reaches level {target} (best {best})"
        )));
    };
    let face_normals = face_normals();
    let bounds = hull_bounds(&link, std::slice::from_ref(&witness), &[face_normals.clone()])?;
    if bounds.lower != target || bounds.upper != Some(target) {
        let upper = bounds.upper.map_or("unbounded".to_string(), |u| u.to_string());
        return Err(TetraError::Contract(format!(
            "hull bounds ({}, {upper}) differ from target ({target}, {target}); vertex loads {:?}",
            bounds.lower,
            pattern.vertex_loads()
        )));
    }
    Ok(TetraLink {
        link,
        pattern: *pattern,
        witness,
        face_normals,
        linking,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_sum_to_p() {
        for p in MIN_P..=MAX_P {
            let t = TetraPattern::for_p(p);
            assert_eq!(t.circuit_strands() + t.edge_loops().iter().sum::<u32>(), p);
        }
    }

    #[test]
    fn face_normals_point_inward() {
        let v = scaffold_tetrahedron();
        let n = face_normals();
        for i in 0..4 {
            let other = &v[(i + 1) % 4];
            assert!(n[i].dot(&v[i]) > n[i].dot(other));
        }
        assert_eq!(n[0].vector(), &Point3::new(int(0), int(0), int(1)));
    }

    #[test]
    fn small_instance_is_valid_and_linked() {
        let link = tetra_multihopf_link(&TetraPattern::for_p(5));
        assert!(link.validate().is_valid());
        assert!(pairwise_linking(&link).unwrap().all_nonzero());
    }

    #[test]
    fn custom_pattern_must_match_remainder() {
        assert!(TetraPattern::with_pattern(8, [1, 1, 1, 0]).is_ok());
        assert!(TetraPattern::with_pattern(8, [1, 1, 0, 0]).is_err());
    }
}
