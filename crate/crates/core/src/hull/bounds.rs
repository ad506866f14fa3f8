//! Two-sided bounds on the number of hulls of one embedding.

use std::fmt;

use super::certificate::{certify_from_profiles, Emptiness, EmptyCertificate, NonEmptyCertificate};
use super::membership::min_crossing;
use super::profile::{directional_profile, CrossingProfile};
use super::HullError;
use crate::geometry::{Direction, Point3};
use crate::link::PolygonalLink;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullBounds {
    pub lower: u64,
    /// `None` when no family certifies emptiness at any level tried.
    pub upper: Option<u64>,
    pub lower_certificate: Option<NonEmptyCertificate>,
    pub upper_certificate: Option<EmptyCertificate>,
}

impl fmt::Display for HullBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) => writeln!(f, "bounds lower={} upper={u}", self.lower)?,
            None => writeln!(f, "bounds lower={} upper=unbounded", self.lower)?,
        }
        if let Some(c) = &self.lower_certificate {
            c.fmt(f)?;
        }
        if let Some(c) = &self.upper_certificate {
            c.fmt(f)?;
        }
        Ok(())
    }
}

/// Centroid of all vertices followed by the component centroids, skipping
/// any that lie on the link.
pub fn default_witnesses(link: &PolygonalLink<Rational>) -> Vec<Point3<Rational>> {
    let mut out = vec![link.centroid()];
    out.extend(link.components().iter().map(|c| c.centroid()));
    let mut seen = Vec::new();
    out.retain(|p| {
        let keep = !link.contains_point(p) && !seen.contains(p);
        seen.push(p.clone());
        keep
    });
    out
}

/// `lower` is the best level reached by a witness; `upper` is one less than
/// the first level some family certifies empty.
pub fn hull_bounds(
    link: &PolygonalLink<Rational>,
    witnesses: &[Point3<Rational>],
    families: &[Vec<Direction<Rational>>],
) -> Result<HullBounds, HullError> {
    let mut lower = 0;
    let mut lower_certificate: Option<NonEmptyCertificate> = None;
    for w in witnesses {
        let t = min_crossing(link, w)?;
        let level = t.level();
        if lower_certificate.is_none() || level > lower {
            lower = level;
            lower_certificate = Some(NonEmptyCertificate {
                level,
                witness: w.clone(),
                transcript: t,
            });
        }
    }

    let mut upper: Option<u64> = None;
    let mut upper_certificate = None;
    for family in families.iter().filter(|f| !f.is_empty()) {
        let profiles: Vec<CrossingProfile> = family.iter().map(|u| directional_profile(link, u)).collect();
        // Beyond this level only planes with infinite counts stay admissible.
        let cap = profiles.iter().map(|p| p.max_finite() / 2 + 1).max().unwrap_or(1);
        // Levels up to `lower` hold a witness, so no certificate can exist there.
        for n in (lower + 1)..=cap.max(lower + 1) {
            if upper.is_some_and(|u| n > u) {
                break;
            }
            if let Emptiness::Certified(cert) = certify_from_profiles(&profiles, n) {
                if upper.map_or(true, |u| n - 1 < u) {
                    upper = Some(n - 1);
                    upper_certificate = Some(cert);
                }
                break;
            }
        }
    }
    Ok(HullBounds {
        lower,
        upper,
        lower_certificate,
        upper_certificate,
    })
}
