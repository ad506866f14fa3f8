//! Emptiness certificates from finite families of directions.
//!
//! At level `n`, the hull lies inside `{ x : u_j · x ∈ S_j }` for every
//! direction `u_j`, where `S_j` is the admissible offset set. If no choice of
//! one interval per direction leaves a feasible region, the hull is empty.

use std::fmt;

use super::membership::MembershipTranscript;
use super::profile::{admissible_offsets, directional_profile, CrossingProfile, IntervalUnion};
use crate::geometry::{Direction, Point3};
use crate::link::PolygonalLink;
use crate::lp::{solve, Constraint, FarkasCertificate, Feasibility};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSlab {
    pub direction: Direction<Rational>,
    pub admissible: IntervalUnion,
}

impl DirectionSlab {
    /// `lo <= u · x <= hi` for interval `k`.
    pub fn constraints(&self, k: usize) -> [Constraint; 2] {
        let (lo, hi) = &self.admissible.intervals()[k];
        let u = self.direction.vector().to_array();
        [Constraint::ge(u.clone(), lo.clone()), Constraint::le(u, hi.clone())]
    }
}

/// A partial choice of intervals (one per leading direction) shown
/// infeasible by Farkas multipliers over its constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibleSelection {
    pub choice: Vec<usize>,
    pub farkas: FarkasCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyCertificate {
    pub level: u64,
    pub slabs: Vec<DirectionSlab>,
    pub selections: Vec<InfeasibleSelection>,
}

fn selection_constraints(slabs: &[DirectionSlab], choice: &[usize]) -> Vec<Constraint> {
    choice
        .iter()
        .enumerate()
        .flat_map(|(j, &k)| slabs[j].constraints(k))
        .collect()
}

impl EmptyCertificate {
    /// Re-checks the certificate from its stored intervals alone: every full
    /// selection must extend some recorded prefix whose multipliers verify.
    pub fn verify(&self) -> bool {
        fn walk(cert: &EmptyCertificate, prefix: &mut Vec<usize>) -> bool {
            if let Some(sel) = cert.selections.iter().find(|s| s.choice == *prefix) {
                return sel.farkas.verify(&selection_constraints(&cert.slabs, prefix));
            }
            let depth = prefix.len();
            if depth == cert.slabs.len() {
                return false;
            }
            for k in 0..cert.slabs[depth].admissible.len() {
                prefix.push(k);
                let ok = walk(cert, prefix);
                prefix.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        walk(self, &mut Vec::new())
    }

    /// Also checks that the stored intervals are the admissible sets of `link`.
    pub fn verify_against(&self, link: &PolygonalLink<Rational>) -> bool {
        self.verify()
            && self.slabs.iter().all(|s| {
                let profile = directional_profile(link, &s.direction);
                admissible_offsets(&profile, self.level) == s.admissible
            })
    }
}

impl fmt::Display for EmptyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate empty level={} directions={}", self.level, self.slabs.len())?;
        for (j, s) in self.slabs.iter().enumerate() {
            writeln!(f, "direction {j} {}", s.direction)?;
            writeln!(f, "  admissible {}", s.admissible)?;
        }
        for sel in &self.selections {
            let choice: Vec<String> = sel.choice.iter().map(|k| k.to_string()).collect();
            writeln!(f, "selection [{}] infeasible", choice.join(","))?;
            for (c, l) in selection_constraints(&self.slabs, &sel.choice).iter().zip(&sel.farkas.multipliers) {
                writeln!(f, "  {} * ({c})", crate::scalar::format_rational(l))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonEmptyCertificate {
    pub level: u64,
    pub witness: Point3<Rational>,
    pub transcript: MembershipTranscript,
}

impl NonEmptyCertificate {
    pub fn verify(&self, link: &PolygonalLink<Rational>) -> bool {
        match super::membership::min_crossing(link, &self.witness) {
            Ok(t) => t.min_count == self.transcript.min_count && t.is_member(self.level),
            Err(_) => false,
        }
    }
}

impl fmt::Display for NonEmptyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate nonempty level={}", self.level)?;
        writeln!(f, "witness {}", self.witness)?;
        writeln!(f, "minimum {}", self.transcript)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HullCertificate {
    Empty(EmptyCertificate),
    NonEmpty(NonEmptyCertificate),
}

impl fmt::Display for HullCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HullCertificate::Empty(c) => c.fmt(f),
            HullCertificate::NonEmpty(c) => c.fmt(f),
        }
    }
}

/// Outcome of trying to certify emptiness with a given family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    Certified(EmptyCertificate),
    /// Some selection is feasible; `point` satisfies all its slab
    /// constraints. This says nothing about membership.
    Failure {
        level: u64,
        slabs: Vec<DirectionSlab>,
        choice: Vec<usize>,
        point: Point3<Rational>,
    },
}

impl Emptiness {
    pub fn is_certified(&self) -> bool {
        matches!(self, Emptiness::Certified(_))
    }
}

impl fmt::Display for Emptiness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Emptiness::Certified(c) => c.fmt(f),
            Emptiness::Failure { level, slabs, choice, point } => {
                writeln!(f, "certificate failure level={level} directions={}", slabs.len())?;
                for (j, s) in slabs.iter().enumerate() {
                    writeln!(f, "direction {j} {}", s.direction)?;
                    writeln!(f, "  admissible {}", s.admissible)?;
                }
                let choice: Vec<String> = choice.iter().map(|k| k.to_string()).collect();
                writeln!(f, "selection [{}] feasible", choice.join(","))?;
                writeln!(f, "feasible point {point}")
            }
        }
    }
}

pub(crate) fn certify_from_profiles(profiles: &[CrossingProfile], n: u64) -> Emptiness {
    let slabs: Vec<DirectionSlab> = profiles
        .iter()
        .map(|p| DirectionSlab {
            direction: p.direction.clone(),
            admissible: admissible_offsets(p, n),
        })
        .collect();
    let mut selections = Vec::new();
    let mut prefix = Vec::new();
    match search(&slabs, &mut prefix, &mut selections) {
        None => Emptiness::Certified(EmptyCertificate {
            level: n,
            slabs,
            selections,
        }),
        Some((choice, point)) => Emptiness::Failure {
            level: n,
            slabs,
            choice,
            point,
        },
    }
}

/// Depth-first over interval choices, pruning infeasible prefixes. Returns a
/// feasible full selection if one exists.
fn search(
    slabs: &[DirectionSlab],
    prefix: &mut Vec<usize>,
    out: &mut Vec<InfeasibleSelection>,
) -> Option<(Vec<usize>, Point3<Rational>)> {
    let system = selection_constraints(slabs, prefix);
    let point = match solve(&system) {
        Feasibility::Infeasible(farkas) => {
            out.push(InfeasibleSelection {
                choice: prefix.clone(),
                farkas,
            });
            return None;
        }
        Feasibility::Feasible(p) => p,
    };
    let depth = prefix.len();
    if depth == slabs.len() {
        return Some((prefix.clone(), point));
    }
    for k in 0..slabs[depth].admissible.len() {
        prefix.push(k);
        let found = search(slabs, prefix, out);
        prefix.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Tries to prove that the `n`-th hull is empty using the given directions.
pub fn emptiness_certificate(link: &PolygonalLink<Rational>, n: u64, dirs: &[Direction<Rational>]) -> Emptiness {
    assert!(n >= 1, "level must be at least 1");
    assert!(!dirs.is_empty(), "need at least one direction");
    let profiles: Vec<CrossingProfile> = dirs.iter().map(|u| directional_profile(link, u)).collect();
    certify_from_profiles(&profiles, n)
}
