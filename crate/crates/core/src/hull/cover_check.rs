//! Do finitely many closed half-spaces cover a ball?
//!
//! The uncovered set `U` is the intersection of the open complements, an open
//! convex polyhedron. `U` meets the open ball `B(0, R)` exactly when `U` is
//! nonempty and the point of its closure nearest the origin is closer than
//! `R`. That nearest point is the projection of the origin onto the affine
//! span of at most three active facets, so a finite enumeration finds it.

use num_traits::{Signed, Zero};

use crate::geometry::{Plane, Point3, Side};
use crate::link::PolygonalLink;
use crate::lp::{solve, Constraint, FarkasCertificate, Feasibility};
use crate::scalar::{int, Rational};

/// The closed half-space `{ x : side · (normal·x - offset) >= 0 }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub plane: Plane<Rational>,
    pub side: Side,
}

impl HalfSpace {
    pub fn new(plane: Plane<Rational>, side: Side) -> Self {
        assert!(side != Side::On, "a half-space needs a side");
        Self { plane, side }
    }

    pub fn contains(&self, x: &Point3<Rational>) -> bool {
        let v = self.plane.evaluate(x);
        match self.side {
            Side::Positive => !v.is_negative(),
            _ => !v.is_positive(),
        }
    }

    /// The open complement as `a · x > b`.
    fn complement(&self) -> ([Rational; 3], Rational) {
        let s = int(-(self.side.as_i8() as i64));
        let a = self.plane.normal.vector().to_array().map(|c| c * &s);
        (a, &self.plane.offset * &s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// The complements have empty intersection: the half-spaces cover all of
    /// space. `None` when they only cover the ball.
    Covers(Option<FarkasCertificate>),
    Gap(Point3<Rational>),
}

impl CoverOutcome {
    pub fn covers(&self) -> bool {
        matches!(self, CoverOutcome::Covers(_))
    }
}

/// A radius whose open ball around the origin contains every vertex.
pub fn bounding_radius(link: &PolygonalLink<Rational>) -> Rational {
    let l1 = link
        .vertices()
        .map(|v| v.x.abs() + v.y.abs() + v.z.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    l1 + int(1)
}

/// Solves the small symmetric system `g μ = b` exactly; `None` if singular.
fn solve_gram(mut g: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !g[r][col].is_zero())?;
        g.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !g[r][col].is_zero() {
                let f = &g[r][col] / &g[col][col];
                for c in col..n {
                    let v = &f * &g[col][c];
                    g[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &g[i][i]).collect())
}

fn dot3(a: &[Rational; 3], x: &[Rational; 3]) -> Rational {
    &a[0] * &x[0] + &a[1] * &x[1] + &a[2] * &x[2]
}

/// Point of `{ a_i · x >= b_i }` nearest the origin (the set is nonempty).
fn nearest_point(rows: &[([Rational; 3], Rational)]) -> [Rational; 3] {
    let m = rows.len();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..m {
        subsets.push(vec![i]);
        for j in i + 1..m {
            subsets.push(vec![i, j]);
            for k in j + 1..m {
                subsets.push(vec![i, j, k]);
            }
        }
    }
    let mut best: Option<([Rational; 3], Rational)> = None;
    for s in subsets {
        let g: Vec<Vec<Rational>> = s.iter().map(|&i| s.iter().map(|&j| dot3(&rows[i].0, &rows[j].0)).collect()).collect();
        let b: Vec<Rational> = s.iter().map(|&i| rows[i].1.clone()).collect();
        let Some(mu) = solve_gram(g, b) else { continue };
        let mut x = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (w, &i) in mu.iter().zip(&s) {
            for k in 0..3 {
                x[k] += w * &rows[i].0[k];
            }
        }
        if rows.iter().all(|(a, b)| dot3(a, &x) >= *b) {
            let n2 = dot3(&x, &x);
            if best.as_ref().map_or(true, |(_, bn)| n2 < *bn) {
                best = Some((x, n2));
            }
        }
    }
    best.expect("nonempty polyhedron has a nearest point").0
}

/// Decides whether the closed half-spaces cover the ball of the given radius
/// around the origin; returns an uncovered point inside the ball otherwise.
pub fn halfspace_cover_check(halfspaces: &[HalfSpace], radius: &Rational) -> CoverOutcome {
    let rows: Vec<([Rational; 3], Rational)> = halfspaces.iter().map(HalfSpace::complement).collect();
    let system: Vec<Constraint> = rows.iter().map(|(a, b)| Constraint::gt(a.clone(), b.clone())).collect();
    let interior = match solve(&system) {
        Feasibility::Infeasible(cert) => return CoverOutcome::Covers(Some(cert)),
        Feasibility::Feasible(p) => p,
    };
    let r2 = radius * radius;
    let nearest = Point3::from_array(nearest_point(&rows));
    if nearest.norm2() >= r2 {
        return CoverOutcome::Covers(None);
    }
    let uncovered = |p: &Point3<Rational>| halfspaces.iter().all(|h| !h.contains(p));
    if uncovered(&nearest) {
        return CoverOutcome::Gap(nearest);
    }
    // Points strictly between a closure point and an interior point are interior.
    let mut t = int(1);
    loop {
        let z = nearest.lerp(&interior, &t);
        if z.norm2() < r2 {
            debug_assert!(uncovered(&z));
            return CoverOutcome::Gap(z);
        }
        t /= int(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Direction;

    fn x_plane(offset: i64) -> Plane<Rational> {
        Plane::new(Direction::from_ints(1, 0, 0).unwrap(), int(offset))
    }

    #[test]
    fn opposite_overlapping_halfspaces_cover() {
        let hs = [HalfSpace::new(x_plane(1), Side::Negative), HalfSpace::new(x_plane(-1), Side::Positive)];
        assert!(halfspace_cover_check(&hs, &int(10)).covers());
    }

    #[test]
    fn slab_gap_at_origin() {
        let hs = [HalfSpace::new(x_plane(-1), Side::Negative), HalfSpace::new(x_plane(1), Side::Positive)];
        assert_eq!(halfspace_cover_check(&hs, &int(10)), CoverOutcome::Gap(Point3::origin()));
    }

    #[test]
    fn tetrahedron_faces_cover() {
        let v = [(0, 0, 4), (-3, -2, 0), (3, -2, 0), (0, 3, 0)].map(|(a, b, c)| Point3::new(int(a), int(b), int(c)));
        let mut hs = Vec::new();
        for i in 0..4 {
            let f: Vec<&Point3<Rational>> = (0..4).filter(|&j| j != i).map(|j| &v[j]).collect();
            let n = (f[1] - f[0]).cross(&(f[2] - f[0]));
            let plane = Plane::through(f[0], Direction::from_vector(n).unwrap());
            hs.push(HalfSpace::new(plane.clone(), plane.side(&v[i])));
        }
        assert!(halfspace_cover_check(&hs, &int(100)).covers());
    }

    #[test]
    fn gap_outside_ball_is_covered_and_boundary_gap_nudged() {
        // Uncovered region x > 20 lies outside a ball of radius 10.
        let far = [HalfSpace::new(x_plane(20), Side::Negative)];
        assert_eq!(halfspace_cover_check(&far, &int(10)), CoverOutcome::Covers(None));
        // Uncovered region x > 3: nearest closure point (3,0,0) is covered.
        let near = [HalfSpace::new(x_plane(3), Side::Negative)];
        let CoverOutcome::Gap(p) = halfspace_cover_check(&near, &int(10)) else { panic!() };
        assert!(p.x > int(3) && p.norm2() < int(100));
    }
}
