//! Polygonal torus links on a round torus.

use std::f64::consts::TAU;

use num_integer::Integer;
use thiserror::Error;

use crate::geometry::Point3;
use crate::link::{ClosedPolyline, PolygonalLink};
use crate::linking::pairwise_linking;
use crate::scalar::{int, snap_dyadic, to_f64, Rational};

/// Coordinates are snapped to this many fractional bits.
pub const SNAP_BITS: u32 = 24;
const MAX_ATTEMPTS: usize = 5;

pub const PHASE_CONVENTION: &str = "component j uses phase phi_j = 2*pi*j/q";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusParams {
    pub p: u32,
    pub q: u32,
    pub major_radius: Rational,
    pub minor_radius: Rational,
    /// Defaults to `max(12, 6 (p' + q'))`.
    pub segments: Option<usize>,
}

impl TorusParams {
    pub fn new(p: u32, q: u32) -> Self {
        Self {
            p,
            q,
            major_radius: int(2),
            minor_radius: int(1),
            segments: None,
        }
    }

    pub fn components(&self) -> u32 {
        self.p.gcd(&self.q)
    }

    fn reduced(&self) -> (u32, u32) {
        let g = self.components();
        (self.p / g, self.q / g)
    }

    pub fn default_segments(&self) -> usize {
        let (p, q) = self.reduced();
        (6 * (p + q) as usize).max(12)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("invalid torus parameters: {0}")]
    InvalidParams(String),
    #[error("resolution insufficient: no valid embedding up to {segments} segments per component")]
    ResolutionInsufficient { segments: usize },
}

#[derive(Debug, Clone)]
pub struct TorusLink {
    pub link: PolygonalLink<Rational>,
    pub params: TorusParams,
    pub segments: usize,
}

impl TorusLink {
    pub fn header(&self) -> Vec<String> {
        vec![
            format!(
                "generator: torus p={} q={} R={} r={} segments={}",
                self.params.p, self.params.q, self.params.major_radius, self.params.minor_radius, self.segments
            ),
            format!("convention: {PHASE_CONVENTION}; coordinates snapped to 2^-{SNAP_BITS}"),
            "contract: validate ok; |lk| = p'q' for every pair of components".to_string(),
        ]
    }
}

fn sample(params: &TorusParams, segments: usize) -> PolygonalLink<Rational> {
    let g = params.components();
    let (p, q) = params.reduced();
    let big = to_f64(&params.major_radius);
    let small = to_f64(&params.minor_radius);
    let components = (0..g)
        .map(|j| {
            let phase = TAU * j as f64 / params.q as f64;
            let pts = (0..segments)
                .map(|k| {
                    let t = TAU * k as f64 / segments as f64;
                    let psi = q as f64 * t + phase;
                    let theta = p as f64 * t;
                    let rho = big + small * psi.cos();
                    Point3::new(
                        snap_dyadic(rho * theta.cos(), SNAP_BITS),
                        snap_dyadic(rho * theta.sin(), SNAP_BITS),
                        snap_dyadic(small * psi.sin(), SNAP_BITS),
                    )
                })
                .collect();
            ClosedPolyline::new(pts)
        })
        .collect();
    PolygonalLink::new(components)
}

/// Samples the torus curve(s), snaps to dyadic rationals and checks the
/// result; doubles the resolution until it validates and links correctly.
pub fn torus_link(params: &TorusParams) -> Result<TorusLink, TorusError> {
    if params.p == 0 || params.q == 0 {
        return Err(TorusError::InvalidParams("p and q must be positive".into()));
    }
    if !(params.minor_radius > int(0) && params.major_radius > params.minor_radius) {
        return Err(TorusError::InvalidParams("need R > r > 0".into()));
    }
    let start = params.segments.unwrap_or_else(|| params.default_segments());
    if start < 12 {
        return Err(TorusError::InvalidParams("at least 12 segments per component".into()));
    }
    let (p, q) = params.reduced();
    let expected = i64::from(p) * i64::from(q);
    let mut segments = start;
    for _ in 0..MAX_ATTEMPTS {
        let link = sample(params, segments);
        if link.validate().is_valid() {
            let ok = match pairwise_linking(&link) {
                Ok(m) => (0..m.size()).all(|i| (0..m.size()).all(|j| i == j || m.get(i, j).abs() == expected)),
                Err(_) => false,
            };
            if ok {
                return Ok(TorusLink {
                    link,
                    params: params.clone(),
                    segments,
                });
            }
        }
        segments *= 2;
    }
    Err(TorusError::ResolutionInsufficient { segments: segments / 2 })
}
