//! Plain-text link and graph files.
//!
//! ```text
//! HULLKIT-LINK 1
//! # comments and blank lines are ignored
//! component 4
//! 1 1 0
//! -1 1 0
//! -1 -1 0
//! 1 -1 0
//! ```
//!
//! Graph files start with `HULLKIT-GRAPH 1` followed by a `vertices m`
//! block and an `edges e` block of 0-based index pairs.

use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::Point3;
use crate::link::{ClosedPolyline, EmbeddedGraph, PolygonalLink};
use crate::scalar::{format_rational, parse_rational, Rational};

pub const LINK_HEADER: &str = "HULLKIT-LINK 1";
pub const GRAPH_HEADER: &str = "HULLKIT-GRAPH 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Non-blank, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_point(line_no: usize, line: &str) -> Result<Point3<Rational>, FormatError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return fail(line_no, format!("expected 3 coordinates, found {}", fields.len()));
    }
    let mut coords = Vec::with_capacity(3);
    for f in fields {
        match parse_rational(f) {
            Ok(q) => coords.push(q),
            Err(e) => return fail(line_no, e.to_string()),
        }
    }
    let z = coords.pop().unwrap();
    let y = coords.pop().unwrap();
    let x = coords.pop().unwrap();
    Ok(Point3::new(x, y, z))
}

fn parse_keyword_count(line_no: usize, line: &str, keyword: &str) -> Result<usize, FormatError> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(k), Some(n), None) if k == keyword => match n.parse() {
            Ok(n) => Ok(n),
            Err(_) => fail(line_no, format!("bad count {n:?} after {keyword:?}")),
        },
        _ => fail(line_no, format!("expected \"{keyword} <count>\", found {line:?}")),
    }
}

pub fn parse_link(text: &str) -> Result<PolygonalLink<Rational>, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, LINK_HEADER)) => {}
        Some((n, other)) => return fail(n, format!("expected {LINK_HEADER:?}, found {other:?}")),
        None => return fail(0, "empty input"),
    }
    let mut components = Vec::new();
    while let Some((n, line)) = lines.next() {
        let k = parse_keyword_count(n, line, "component")?;
        let mut pts = Vec::with_capacity(k);
        for _ in 0..k {
            let Some((m, l)) = lines.next() else {
                return fail(n, format!("component {} truncated", components.len()));
            };
            pts.push(parse_point(m, l)?);
        }
        components.push(ClosedPolyline::new(pts));
    }
    if components.is_empty() {
        return fail(0, "no components");
    }
    Ok(PolygonalLink::new(components))
}

pub fn parse_graph(text: &str) -> Result<EmbeddedGraph<Rational>, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, GRAPH_HEADER)) => {}
        Some((n, other)) => return fail(n, format!("expected {GRAPH_HEADER:?}, found {other:?}")),
        None => return fail(0, "empty input"),
    }
    let Some((n, line)) = lines.next() else {
        return fail(0, "missing vertices block");
    };
    let m = parse_keyword_count(n, line, "vertices")?;
    let mut vertices = Vec::with_capacity(m);
    for _ in 0..m {
        let Some((i, l)) = lines.next() else {
            return fail(n, "vertices block truncated");
        };
        vertices.push(parse_point(i, l)?);
    }
    let Some((n, line)) = lines.next() else {
        return fail(0, "missing edges block");
    };
    let e = parse_keyword_count(n, line, "edges")?;
    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let Some((i, l)) = lines.next() else {
            return fail(n, "edges block truncated");
        };
        let ids: Vec<&str> = l.split_whitespace().collect();
        let parsed: Option<Vec<usize>> = ids.iter().map(|s| s.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[a, b]) if a < m && b < m => edges.push((a, b)),
            _ => return fail(i, format!("bad edge {l:?}")),
        }
    }
    if let Some((i, l)) = lines.next() {
        return fail(i, format!("trailing content {l:?}"));
    }
    Ok(EmbeddedGraph::new(vertices, edges))
}

fn write_point(out: &mut String, p: &Point3<Rational>) {
    let _ = writeln!(
        out,
        "{} {} {}",
        format_rational(&p.x),
        format_rational(&p.y),
        format_rational(&p.z)
    );
}

fn write_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
}

/// Serializes with exact `num/den` coordinates; `comments` go after the header.
pub fn write_link(link: &PolygonalLink<Rational>, comments: &[String]) -> String {
    let mut out = String::new();
    out.push_str(LINK_HEADER);
    out.push('\n');
    write_comments(&mut out, comments);
    for c in link.components() {
        let _ = writeln!(out, "component {}", c.len());
        for p in c.vertices() {
            write_point(&mut out, p);
        }
    }
    out
}

pub fn write_graph(g: &EmbeddedGraph<Rational>, comments: &[String]) -> String {
    let mut out = String::new();
    out.push_str(GRAPH_HEADER);
    out.push('\n');
    write_comments(&mut out, comments);
    let _ = writeln!(out, "vertices {}", g.vertices.len());
    for p in &g.vertices {
        write_point(&mut out, p);
    }
    let _ = writeln!(out, "edges {}", g.edges.len());
    for (a, b) in &g.edges {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}
