//! Argument and file parsing shared by the commands.

use hullkit::format::{parse_graph, parse_link};
use hullkit::generators::tetra::face_normals;
use hullkit::geometry::{Direction, Plane, Point3};
use hullkit::scalar::{parse_rational, Rational};
use hullkit::{Graph, Link};

use crate::Failure;

pub fn rationals(s: &str, expected: usize, what: &str) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != expected {
        return Err(Failure::Input(format!(
            "{what}: expected {expected} comma-separated numbers, got {s:?}"
        )));
    }
    parts
        .into_iter()
        .map(|p| parse_rational(p).map_err(|e| Failure::Input(format!("{what}: {e}"))))
        .collect()
}

pub fn point(s: &str) -> Result<Point3<Rational>, Failure> {
    let mut v = rationals(s, 3, "point")?;
    let z = v.pop().unwrap();
    let y = v.pop().unwrap();
    Ok(Point3::new(v.pop().unwrap(), y, z))
}

pub fn direction(s: &str) -> Result<Direction<Rational>, Failure> {
    let mut v = rationals(s, 3, "direction")?;
    let z = v.pop().unwrap();
    let y = v.pop().unwrap();
    Direction::new(v.pop().unwrap(), y, z).map_err(|e| Failure::Input(format!("direction {s:?}: {e}")))
}

/// `a,b,c,d` for the plane `a x + b y + c z = d`.
pub fn plane(s: &str) -> Result<Plane<Rational>, Failure> {
    let mut v = rationals(s, 4, "plane")?;
    let d = v.pop().unwrap();
    let c = v.pop().unwrap();
    let b = v.pop().unwrap();
    let n = Direction::new(v.pop().unwrap(), b, c).map_err(|e| Failure::Input(format!("plane {s:?}: {e}")))?;
    Ok(Plane::new(n, d))
}

/// `faces` (the scaffold tetrahedron's inward face normals), `axes`, or a
/// `;`-separated list of directions.
pub fn directions(s: &str) -> Result<Vec<Direction<Rational>>, Failure> {
    match s.trim() {
        "faces" => Ok(face_normals()),
        "axes" => Ok(["1,0,0", "0,1,0", "0,0,1"].iter().map(|d| direction(d).unwrap()).collect()),
        list => {
            let dirs = list.split(';').filter(|d| !d.trim().is_empty()).map(direction).collect::<Result<Vec<_>, _>>()?;
            if dirs.is_empty() {
                return Err(Failure::Input("empty direction list".into()));
            }
            Ok(dirs)
        }
    }
}

/// Four `;`-separated 1-based subsets; an empty group is the empty set.
pub fn sets(s: &str) -> Result<[Vec<u32>; 4], Failure> {
    let groups: Vec<&str> = s.split(';').collect();
    if groups.len() != 4 {
        return Err(Failure::Input(format!("expected 4 subsets separated by ';', got {}", groups.len())));
    }
    let mut out: [Vec<u32>; 4] = Default::default();
    for (slot, g) in out.iter_mut().zip(groups) {
        for e in g.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            slot.push(e.parse().map_err(|_| Failure::Input(format!("bad subset element {e:?}")))?);
        }
    }
    Ok(out)
}

pub fn pattern(s: &str) -> Result<[u32; 4], Failure> {
    let v: Vec<u32> = s
        .split(',')
        .map(|e| e.trim().parse().map_err(|_| Failure::Input(format!("bad pattern entry {e:?}"))))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| Failure::Input(format!("pattern needs 4 entries, got {s:?}")))
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

pub fn link_unchecked(path: &str) -> Result<Link, Failure> {
    parse_link(&read(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

/// Parses a link file and rejects embeddings that are not valid.
pub fn link(path: &str) -> Result<Link, Failure> {
    let link = link_unchecked(path)?;
    let report = link.validate();
    if !report.is_valid() {
        return Err(Failure::Degenerate(format!("{path}: invalid embedding: {report}")));
    }
    Ok(link)
}

pub fn graph(path: &str) -> Result<Graph, Failure> {
    let g = parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let report = g.validate();
    if !report.is_valid() {
        return Err(Failure::Degenerate(format!("{path}: invalid embedding: {report}")));
    }
    Ok(g)
}
