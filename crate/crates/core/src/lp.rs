//! Exact feasibility of small linear systems in three variables.
//!
//! Fourier–Motzkin elimination over rationals. Every derived row remembers the
//! nonnegative combination of input rows that produced it, so an
//! infeasibility verdict comes with Farkas multipliers that can be checked
//! without trusting the elimination.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::geometry::Point3;
use crate::scalar::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// `coeffs · x  (rel)  rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: [Rational; 3],
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: [Rational; 3], rel: Relation, rhs: Rational) -> Self {
        Self { coeffs, rel, rhs }
    }

    pub fn le(coeffs: [Rational; 3], rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn lt(coeffs: [Rational; 3], rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Lt, rhs)
    }

    /// `coeffs · x >= rhs`, stored as `-coeffs · x <= -rhs`.
    pub fn ge(coeffs: [Rational; 3], rhs: Rational) -> Self {
        Self::le(coeffs.map(|c| -c), -rhs)
    }

    pub fn gt(coeffs: [Rational; 3], rhs: Rational) -> Self {
        Self::lt(coeffs.map(|c| -c), -rhs)
    }

    pub fn eq(coeffs: [Rational; 3], rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    pub fn lhs(&self, x: &Point3<Rational>) -> Rational {
        &self.coeffs[0] * &x.x + &self.coeffs[1] * &x.y + &self.coeffs[2] * &x.z
    }

    pub fn holds_at(&self, x: &Point3<Rational>) -> bool {
        let l = self.lhs(x);
        match self.rel {
            Relation::Le => l <= self.rhs,
            Relation::Lt => l < self.rhs,
            Relation::Eq => l == self.rhs,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.rel {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        };
        write!(
            f,
            "({})x + ({})y + ({})z {} {}",
            format_rational(&self.coeffs[0]),
            format_rational(&self.coeffs[1]),
            format_rational(&self.coeffs[2]),
            rel,
            format_rational(&self.rhs)
        )
    }
}

/// Multipliers `λ`, one per constraint, proving infeasibility: `Σ λ_i a_i = 0`
/// and either `Σ λ_i b_i < 0`, or `Σ λ_i b_i = 0` with some strict row
/// carrying positive weight. Inequality rows need `λ_i >= 0`; equality rows
/// may take either sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, system: &[Constraint]) -> bool {
        if self.multipliers.len() != system.len() {
            return false;
        }
        let mut sum = [Rational::zero(), Rational::zero(), Rational::zero()];
        let mut rhs = Rational::zero();
        let mut strict_weight = false;
        for (lambda, c) in self.multipliers.iter().zip(system) {
            match c.rel {
                Relation::Eq => {}
                Relation::Le | Relation::Lt => {
                    if lambda.is_negative() {
                        return false;
                    }
                }
            }
            if c.rel == Relation::Lt && lambda.is_positive() {
                strict_weight = true;
            }
            for k in 0..3 {
                sum[k] += lambda * &c.coeffs[k];
            }
            rhs += lambda * &c.rhs;
        }
        sum.iter().all(Zero::is_zero) && (rhs.is_negative() || (rhs.is_zero() && strict_weight))
    }
}

impl fmt::Display for FarkasCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multipliers.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Point3<Rational>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone)]
struct Row {
    a: [Rational; 3],
    b: Rational,
    strict: bool,
    /// Weights over the original constraints (signed for equality rows).
    prov: Vec<Rational>,
}

impl Row {
    fn combine(p: &Row, wp: &Rational, q: &Row, wq: &Rational) -> Row {
        Row {
            a: std::array::from_fn(|k| &p.a[k] * wp + &q.a[k] * wq),
            b: &p.b * wp + &q.b * wq,
            strict: p.strict || q.strict,
            prov: p.prov.iter().zip(&q.prov).map(|(x, y)| x * wp + y * wq).collect(),
        }
    }

    /// Scale-free key of the left-hand side, for keeping only the tightest row.
    fn direction_key(&self) -> Option<[Rational; 3]> {
        let lead = self.a.iter().find(|c| !c.is_zero())?.abs();
        Some(std::array::from_fn(|k| &self.a[k] / &lead))
    }
}

/// Keeps, among rows with proportional left-hand sides, the one with the
/// smallest normalized right-hand side (strict wins ties).
fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut best: HashMap<[Rational; 3], Row> = HashMap::new();
    let mut trivial = Vec::new();
    for r in rows {
        let Some(key) = r.direction_key() else {
            trivial.push(r);
            continue;
        };
        let lead = r.a.iter().find(|c| !c.is_zero()).unwrap().abs();
        let nb = &r.b / &lead;
        match best.get(&key) {
            Some(old) => {
                let old_lead = old.a.iter().find(|c| !c.is_zero()).unwrap().abs();
                let ob = &old.b / &old_lead;
                if nb < ob || (nb == ob && r.strict && !old.strict) {
                    best.insert(key, r);
                }
            }
            None => {
                best.insert(key, r);
            }
        }
    }
    // Deterministic order regardless of hashing.
    let mut kept: Vec<([Rational; 3], Row)> = best.into_iter().collect();
    kept.sort_by(|x, y| x.0.cmp(&y.0));
    trivial.into_iter().chain(kept.into_iter().map(|(_, r)| r)).collect()
}

/// Decides `{ x : every constraint holds }` exactly.
pub fn solve(system: &[Constraint]) -> Feasibility {
    let m = system.len();
    let unit = |i: usize, s: Rational| {
        let mut v = vec![Rational::zero(); m];
        v[i] = s;
        v
    };
    let mut rows = Vec::with_capacity(m + 4);
    for (i, c) in system.iter().enumerate() {
        match c.rel {
            Relation::Le | Relation::Lt => rows.push(Row {
                a: c.coeffs.clone(),
                b: c.rhs.clone(),
                strict: c.rel == Relation::Lt,
                prov: unit(i, Rational::one()),
            }),
            Relation::Eq => {
                rows.push(Row {
                    a: c.coeffs.clone(),
                    b: c.rhs.clone(),
                    strict: false,
                    prov: unit(i, Rational::one()),
                });
                rows.push(Row {
                    a: c.coeffs.clone().map(|x| -x),
                    b: -c.rhs.clone(),
                    strict: false,
                    prov: unit(i, -Rational::one()),
                });
            }
        }
    }

    // stages[k] holds the rows in which variables 0..k have been eliminated.
    let mut stages: Vec<Vec<Row>> = vec![prune(rows)];
    for var in 0..3 {
        let current = stages.last().unwrap();
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in current {
            if r.a[var].is_positive() {
                pos.push(r);
            } else if r.a[var].is_negative() {
                neg.push(r);
            } else {
                next.push(r.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                let wp = -q.a[var].clone();
                let wq = p.a[var].clone();
                let mut r = Row::combine(p, &wp, q, &wq);
                r.a[var] = Rational::zero();
                next.push(r);
            }
        }
        stages.push(prune(next));
    }

    for r in stages.last().unwrap() {
        let violated = r.b.is_negative() || (r.b.is_zero() && r.strict);
        if violated {
            return Feasibility::Infeasible(FarkasCertificate {
                multipliers: r.prov.clone(),
            });
        }
    }

    // Back-substitute from the last eliminated variable down.
    let mut x = [Rational::zero(), Rational::zero(), Rational::zero()];
    for var in (0..3).rev() {
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for r in &stages[var] {
            let c = &r.a[var];
            if c.is_zero() {
                continue;
            }
            // c * x_var <= b - Σ_{k>var} a_k x_k
            let mut rest = r.b.clone();
            for k in var + 1..3 {
                rest -= &r.a[k] * &x[k];
            }
            let bound = rest / c;
            if c.is_positive() {
                if upper.as_ref().map_or(true, |(u, s)| bound < *u || (bound == *u && r.strict && !s)) {
                    upper = Some((bound, r.strict));
                }
            } else if lower.as_ref().map_or(true, |(l, s)| bound > *l || (bound == *l && r.strict && !s)) {
                lower = Some((bound, r.strict));
            }
        }
        x[var] = match (lower, upper) {
            (Some((l, _)), Some((u, _))) if l == u => l,
            (Some((l, _)), Some((u, _))) => (l + u) / Rational::from_integer(2.into()),
            (Some((l, _)), None) => l + Rational::one(),
            (None, Some((u, _))) => u - Rational::one(),
            (None, None) => Rational::zero(),
        };
    }
    let [a, b, c] = x;
    let point = Point3::new(a, b, c);
    debug_assert!(system.iter().all(|c| c.holds_at(&point)));
    Feasibility::Feasible(point)
}
