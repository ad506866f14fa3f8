//! Covers of the complete graph K_p by four complete subgraphs.
//!
//! A cover is four vertex sets such that every pair of vertices (and every
//! single vertex) lies in one of them. The search finds the least possible
//! size of the largest set.

use std::fmt;

use thiserror::Error;

/// Largest `p` the exhaustive search accepts.
pub const MAX_P: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("p = {0} outside the exhaustive range 1..={MAX_P}")]
    OutOfRange(u32),
    #[error("subset element {element} is not in 1..={p}")]
    BadElement { p: u32, element: u32 },
    #[error("not a cover: {0}")]
    NotACover(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverInstance {
    pub p: u32,
    /// Bit `i` of a subset stands for vertex `i + 1`.
    pub subsets: [u16; 4],
}

fn popcount(m: u16) -> u32 {
    m.count_ones()
}

impl CoverInstance {
    pub fn new(p: u32, subsets: [u16; 4]) -> Result<Self, CoverError> {
        if !(1..=MAX_P).contains(&p) {
            return Err(CoverError::OutOfRange(p));
        }
        for s in subsets {
            if u32::from(s) >> p != 0 {
                return Err(CoverError::BadElement {
                    p,
                    element: 16 - s.leading_zeros(),
                });
            }
        }
        Ok(Self { p, subsets })
    }

    /// Builds an instance from 1-based element lists.
    pub fn from_sets(p: u32, sets: &[Vec<u32>; 4]) -> Result<Self, CoverError> {
        let mut subsets = [0u16; 4];
        for (m, set) in subsets.iter_mut().zip(sets) {
            for &e in set {
                if e == 0 || e > p || e > 16 {
                    return Err(CoverError::BadElement { p, element: e });
                }
                *m |= 1 << (e - 1);
            }
        }
        Self::new(p, subsets)
    }

    pub fn full(&self) -> u16 {
        full_mask(self.p)
    }

    pub fn sizes(&self) -> [u32; 4] {
        self.subsets.map(popcount)
    }

    pub fn max_size(&self) -> u32 {
        self.sizes().into_iter().max().unwrap_or(0)
    }

    /// The first pair `(i, j)`, `i <= j`, 0-based, lying in no subset.
    pub fn first_uncovered(&self) -> Option<(u32, u32)> {
        first_uncovered(self.p, &self.subsets)
    }
}

fn full_mask(p: u32) -> u16 {
    ((1u32 << p) - 1) as u16
}

fn first_uncovered(p: u32, subsets: &[u16]) -> Option<(u32, u32)> {
    for i in 0..p {
        let mut reach = 0u16;
        for &s in subsets {
            if s >> i & 1 == 1 {
                reach |= s;
            }
        }
        // Vertices j >= i not sharing a subset with i (including i itself).
        let missing = !reach & full_mask(p) & !((1u16 << i) - 1);
        if missing != 0 {
            return Some((i, missing.trailing_zeros()));
        }
    }
    None
}

fn format_set(m: u16) -> String {
    let elems: Vec<String> = (0..16).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

impl fmt::Display for CoverInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.subsets.iter().map(|&m| format_set(m)).collect();
        write!(f, "p={} {}", self.p, sets.join(" "))
    }
}

/// Condition (*): every pair of vertices shares a subset.
pub fn is_cover(inst: &CoverInstance) -> bool {
    inst.first_uncovered().is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub feasible_min_max: u32,
    pub witness: CoverInstance,
    pub exhaustive: bool,
}

impl CoverResult {
    pub fn machine_line(&self) -> String {
        format!(
            "min_max p={} value={} exhaustive={}",
            self.witness.p, self.feasible_min_max, self.exhaustive
        )
    }
}

/// All masks over `free` with exactly `k` bits set.
fn choose(free: u16, k: u32) -> Vec<u16> {
    let bits: Vec<u16> = (0..16).filter(|i| free >> i & 1 == 1).map(|i| 1u16 << i).collect();
    let mut out = Vec::new();
    fn rec(bits: &[u16], k: u32, acc: u16, out: &mut Vec<u16>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        if bits.len() < k as usize {
            return;
        }
        rec(&bits[1..], k - 1, acc | bits[0], out);
        rec(&bits[1..], k, acc, out);
    }
    rec(&bits, k, 0, &mut out);
    out
}

/// Is there a cover whose subsets all have at most `s` elements? Enlarging a
/// subset keeps a cover a cover, so every subset may be taken of size
/// `min(s, p)`; vertex symmetry fixes the first one. Each later subset is the
/// next unused one and must contain the first uncovered pair.
fn cover_with_max(p: u32, s: u32) -> Option<[u16; 4]> {
    let full = full_mask(p);
    let s = s.min(p);
    let first = full_mask(s);
    let mut subsets = [first, 0, 0, 0];
    fn rec(p: u32, s: u32, used: usize, subsets: &mut [u16; 4]) -> bool {
        let Some((i, j)) = first_uncovered(p, &subsets[..used]) else {
            return true;
        };
        if used == 4 {
            return false;
        }
        let pair = (1u16 << i) | (1u16 << j);
        let Some(rest) = s.checked_sub(popcount(pair)) else {
            return false;
        };
        for extra in choose(full_mask(p) & !pair, rest) {
            subsets[used] = pair | extra;
            if rec(p, s, used + 1, subsets) {
                return true;
            }
        }
        subsets[used] = 0;
        false
    }
    debug_assert_eq!(full & first, first);
    rec(p, s, 1, &mut subsets).then_some(subsets)
}

/// Least max subset size over all covers of K_p, with a witness. Every
/// smaller size is refuted by exhausting the search.
pub fn min_max_cover(p: u32) -> Result<CoverResult, CoverError> {
    if !(1..=MAX_P).contains(&p) {
        return Err(CoverError::OutOfRange(p));
    }
    for s in 1..=p {
        if let Some(subsets) = cover_with_max(p, s) {
            let witness = CoverInstance { p, subsets };
            debug_assert!(is_cover(&witness) && witness.max_size() == s);
            return Ok(CoverResult {
                feasible_min_max: s,
                witness,
                exhaustive: true,
            });
        }
    }
    unreachable!("a single full subset always covers")
}

/// `⌈3p/5⌉`.
pub fn three_fifths(p: u32) -> u32 {
    (3 * p).div_ceil(5)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub bound: u32,
    pub result: CoverResult,
    /// A cover beating the bound, if one exists.
    pub counterexample: Option<CoverInstance>,
}

/// Does every cover of K_p have a subset with at least `3p/5` vertices?
pub fn verify_bound(p: u32) -> Result<BoundCheck, CoverError> {
    let result = min_max_cover(p)?;
    let bound = three_fifths(p);
    let holds = result.feasible_min_max >= bound;
    Ok(BoundCheck {
        holds,
        bound,
        counterexample: (!holds).then_some(result.witness),
        result,
    })
}

/// The graph on the four subsets joining two whose union is everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub instance: CoverInstance,
    pub edges: Vec<(usize, usize)>,
    /// Matchings `{(a,b), (c,d)}` with neither pair an edge.
    pub claim1_violations: Vec<[(usize, usize); 2]>,
    pub triangle: Option<[usize; 3]>,
    /// Some subset has at least `2p/3` elements.
    pub two_thirds_holds: Option<bool>,
    pub star_center: Option<usize>,
    /// The center, or the leaf meeting it most, has at least `3p/5` elements.
    pub three_fifths_holds: Option<bool>,
}

impl StructureReport {
    pub fn claim1_holds(&self) -> bool {
        self.claim1_violations.is_empty()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cover {}", self.instance)?;
        let edges: Vec<String> = self.edges.iter().map(|(a, b)| format!("({},{})", a + 1, b + 1)).collect();
        writeln!(f, "gamma edges {}", if edges.is_empty() { "none".into() } else { edges.join(" ") })?;
        writeln!(f, "claim1 {}", if self.claim1_holds() { "holds" } else { "fails" })?;
        for [(a, b), (c, d)] in &self.claim1_violations {
            writeln!(f, "  neither ({},{}) nor ({},{}) is an edge", a + 1, b + 1, c + 1, d + 1)?;
        }
        match self.triangle {
            Some([a, b, c]) => writeln!(f, "triangle ({},{},{})", a + 1, b + 1, c + 1)?,
            None => writeln!(f, "triangle none")?,
        }
        if let Some(h) = self.two_thirds_holds {
            writeln!(f, "claim2 max size >= 2p/3 {}", if h { "holds" } else { "fails" })?;
        }
        match self.star_center {
            Some(c) => writeln!(f, "star center {}", c + 1)?,
            None => writeln!(f, "star none")?,
        }
        if let Some(h) = self.three_fifths_holds {
            writeln!(f, "claim3 size >= 3p/5 {}", if h { "holds" } else { "fails" })?;
        }
        Ok(())
    }
}

pub fn star_or_triangle(inst: &CoverInstance) -> Result<StructureReport, CoverError> {
    if let Some((i, j)) = inst.first_uncovered() {
        return Err(CoverError::NotACover(format!("pair {{{},{}}} shares no subset", i + 1, j + 1)));
    }
    let full = inst.full();
    let s = inst.subsets;
    let is_edge = |a: usize, b: usize| s[a] | s[b] == full;
    let edges: Vec<(usize, usize)> = (0..4)
        .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
        .filter(|&(a, b)| is_edge(a, b))
        .collect();
    let claim1_violations = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
        .into_iter()
        .filter(|[(a, b), (c, d)]| !is_edge(*a, *b) && !is_edge(*c, *d))
        .collect();
    let triangle = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .into_iter()
        .find(|&[a, b, c]| is_edge(a, b) && is_edge(a, c) && is_edge(b, c));
    let p = inst.p;
    let two_thirds_holds = triangle.map(|_| 3 * inst.max_size() >= 2 * p);
    let star_center = if triangle.is_none() && !edges.is_empty() {
        (0..4).find(|&c| edges.iter().all(|&(a, b)| a == c || b == c))
    } else {
        None
    };
    let three_fifths_holds = star_center.map(|c| {
        let leaf = (0..4)
            .filter(|&l| l != c)
            .max_by_key(|&l| (popcount(s[l] & s[c]), std::cmp::Reverse(l)))
            .expect("three leaves");
        [c, leaf].iter().any(|&a| 5 * popcount(s[a]) >= 3 * p)
    });
    Ok(StructureReport {
        instance: *inst,
        edges,
        claim1_violations,
        triangle,
        two_thirds_holds,
        star_center,
        three_fifths_holds,
    })
}
