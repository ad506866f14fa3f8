//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use hullkit::counting::curve_crossing_count;
use hullkit::cover::{is_cover, min_max_cover, three_fifths, verify_bound, CoverInstance};
use hullkit::generators::octahedron::{octahedron, quad_common_point, regular_octahedron};
use hullkit::generators::tetra::{face_normals, tetra_multihopf};
use hullkit::generators::torus::{torus_link, TorusParams};
use hullkit::geometry::{Direction, Plane, Point3};
use hullkit::hull::{
    default_witnesses, emptiness_certificate, graph_membership, hull_bounds, membership, min_crossing,
    sampled_min_count, Emptiness, MembershipTranscript,
};
use hullkit::linking::pairwise_linking;
use hullkit::scalar::{int, rat};
use hullkit::{CrossingCount, Link, Rational};
use rand::Rng;

/// Every plane whose count some criterion relied on, re-counted per
/// component by the library and by the oracle.
#[derive(Default)]
struct Parity {
    counts: usize,
    odd: Vec<String>,
    mismatched: Vec<String>,
}

impl Parity {
    fn record(&mut self, link: &Link, plane: &Plane<Rational>) {
        for (i, c) in link.components().iter().enumerate() {
            let ours = curve_crossing_count(c, plane);
            let theirs = oracle_count(c, plane);
            if ours.finite() != theirs {
                self.mismatched.push(format!("component {i}: {ours:?} vs {theirs:?} at {plane}"));
            }
            if let CrossingCount::Finite(k) = ours {
                self.counts += 1;
                if k % 2 == 1 {
                    self.odd.push(format!("component {i}: count {k} at {plane}"));
                }
            }
        }
    }
}

/// Checks a transcript plane: it passes through the point and its count,
/// recomputed by the oracle, is the reported minimum.
fn transcript_ok(link: &Link, t: &MembershipTranscript, parity: &mut Parity) -> bool {
    parity.record(link, &t.plane);
    t.plane.evaluate(&t.point) == int(0) && oracle_link_count(link, &t.plane) == t.min_count.finite()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Runs one criterion; `limit` is its runtime budget, if it has one.
fn run(id: u32, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let pass = o.pass && in_time;
    let budget = limit.map_or("no limit".to_string(), |l| format!("limit {l:?}"));
    println!(
        "criterion {id}: {} {} [{elapsed:.2?}, {budget}{}]",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        if in_time { "" } else { ", over time" }
    );
    pass
}

fn unknot(parity: &mut Parity) -> Outcome {
    let link = regular_polygon(12);
    let families = vec![face_normals(), axes()];
    let b = match hull_bounds(&link, &default_witnesses(&link), &families) {
        Ok(b) => b,
        Err(e) => return outcome(false, e.to_string()),
    };
    let certs_ok = b.lower_certificate.as_ref().is_some_and(|c| c.verify(&link))
        && b.upper_certificate.as_ref().is_some_and(|c| c.verify_against(&link));
    let o = Point3::origin();
    let m1 = membership(&link, &o, 1).unwrap();
    let m2 = membership(&link, &o, 2).unwrap();
    let t_ok = transcript_ok(&link, &m2.transcript, parity);
    let pass = (b.lower, b.upper) == (1, Some(1))
        && certs_ok
        && m1.member
        && !m2.member
        && m2.transcript.min_count == CrossingCount::Finite(2)
        && t_ok;
    outcome(
        pass,
        format!(
            "bounds=({},{:?}) member(0,1)={} member(0,2)={} transcript count={} reverified={t_ok}",
            b.lower, b.upper, m1.member, m2.member, m2.transcript.min_count
        ),
    )
}

fn axes() -> Vec<Direction<Rational>> {
    vec![
        Direction::from_ints(1, 0, 0).unwrap(),
        Direction::from_ints(0, 1, 0).unwrap(),
        Direction::from_ints(0, 0, 1).unwrap(),
    ]
}

fn hopf(parity: &mut Parity) -> Outcome {
    let link = torus_link(&TorusParams::new(2, 2)).unwrap().link;
    let lk = pairwise_linking(&link).unwrap().get(0, 1);
    let c = link.components();
    let x = c[0].centroid().midpoint(&c[1].centroid());
    let m = membership(&link, &x, 2).unwrap();
    let s = sampled_min_count(&link, &x, 100_000, 2).unwrap();
    parity.record(&link, &s.plane);
    let t_ok = transcript_ok(&link, &m.transcript, parity);
    let agree = m.transcript.min_count <= s.count && m.member == s.count.reaches_level(2);
    outcome(
        lk.abs() == 1 && agree && t_ok,
        format!(
            "lk={lk} point={x} member(2)={} exact min={} sampled min={}",
            m.member, m.transcript.min_count, s.count
        ),
    )
}

/// Least largest part over all covers, by enumerating sorted quadruples of
/// subsets directly. Every vertex must be covered too, so p=1 needs a set.
fn brute_min_max(p: u32) -> u32 {
    let full = 1u32 << p;
    let mut best = u32::MAX;
    for a in 0..full {
        for b in a..full {
            for c in b..full {
                for d in c..full {
                    let sets = [a, b, c, d];
                    let size = sets.iter().map(|s| s.count_ones()).max().unwrap();
                    if size >= best {
                        continue;
                    }
                    let covered = (0..p).all(|i| {
                        (i..p).all(|j| sets.iter().any(|s| s >> i & 1 == 1 && s >> j & 1 == 1))
                    });
                    if covered {
                        best = size;
                    }
                }
            }
        }
    }
    best
}

fn cover_bound() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut values = Vec::new();
    for p in 1..=10 {
        let b = verify_bound(p).unwrap();
        let r = &b.result;
        let witness_ok = is_cover(&r.witness) && r.witness.max_size() == r.feasible_min_max;
        if !(b.holds && r.exhaustive && witness_ok && r.feasible_min_max >= three_fifths(p)) {
            pass = false;
            notes.push(format!("p={p} bound fails"));
        }
        if p <= 6 {
            let brute = brute_min_max(p);
            if brute != r.feasible_min_max {
                pass = false;
                notes.push(format!("p={p} brute force {brute} vs {}", r.feasible_min_max));
            }
        }
        values.push(r.feasible_min_max);
    }
    for (p, want) in [(5u32, 3u32), (10, 6)] {
        let r = min_max_cover(p).unwrap();
        if r.feasible_min_max != want || three_fifths(p) != want {
            pass = false;
            notes.push(format!("p={p} equality fails"));
        }
    }
    // A witness at p=5 is checked by hand as well.
    let five = CoverInstance::from_sets(5, &[vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 5], vec![3, 4, 5]]).unwrap();
    pass &= is_cover(&five);
    outcome(pass, format!("min_max p=1..10 = {values:?} {}", notes.join("; ")))
}

fn tetra(p: u32, parity: &mut Parity) -> Outcome {
    let t = match tetra_multihopf(p) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("p={p}: {e}")),
    };
    let link = &t.link;
    let valid = link.validate().is_valid();
    let lk = pairwise_linking(link).unwrap();
    let want = three_fifths(p) as u64;
    let b = &t.bounds;
    let lower_ok = b.lower_certificate.as_ref().is_some_and(|c| c.level == want && c.verify(link));
    let upper_ok = b
        .upper_certificate
        .as_ref()
        .is_some_and(|c| c.level == want + 1 && c.slabs.len() == 4 && c.verify() && c.verify_against(link));
    let mut t_ok = true;
    if let Some(c) = &b.lower_certificate {
        t_ok = transcript_ok(link, &c.transcript, parity);
    }
    // Independently, the face family at n=want+1 certifies on its own.
    let faces = emptiness_certificate(link, want + 1, &face_normals());
    let faces_ok = matches!(&faces, Emptiness::Certified(c) if c.verify_against(link));
    let s = sampled_min_count(link, &t.witness, 10_000, 4).unwrap();
    parity.record(link, &s.plane);
    let sampled_ok = s.count.reaches_level(want);
    let pass = valid
        && lk.all_nonzero()
        && (b.lower, b.upper) == (want, Some(want))
        && lower_ok
        && upper_ok
        && faces_ok
        && t_ok
        && sampled_ok;
    outcome(
        pass,
        format!(
            "p={p} components={} bounds=({},{:?}) nonempty@{want}={lower_ok} empty@{}={upper_ok} witness={} sampled min={}",
            link.component_count(),
            b.lower,
            b.upper,
            want + 1,
            t.witness,
            s.count
        ),
    )
}

fn torus34(parity: &mut Parity) -> Outcome {
    let link = torus_link(&TorusParams::new(3, 4)).unwrap().link;
    let x = Point3::origin();
    let m = membership(&link, &x, 2).unwrap();
    let t_ok = transcript_ok(&link, &m.transcript, parity);
    outcome(
        link.component_count() == 1 && m.member && t_ok,
        format!("member(axis centroid,2)={} min={}", m.member, m.transcript.min_count),
    )
}

fn octahedra() -> Outcome {
    let regular = regular_octahedron();
    let mut rng = rng(6);
    let mut failures = Vec::new();
    let mut cases = vec![regular.clone()];
    while cases.len() < 101 {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-4..=4)));
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det == 0 {
            continue;
        }
        let den = rng.gen_range(1..=5);
        let t: [Rational; 3] = std::array::from_fn(|_| rat(rng.gen_range(-9..=9), 4));
        let pts: [Point3<Rational>; 6] = std::array::from_fn(|k| {
            let v = regular.graph.vertices[k].to_array();
            Point3::from_array(std::array::from_fn(|i| {
                (0..3).map(|j| rat(m[i][j], den) * &v[j]).sum::<Rational>() + &t[i]
            }))
        });
        match octahedron(&pts) {
            Ok(o) => cases.push(o),
            Err(e) => failures.push(format!("affine image rejected: {e}")),
        }
    }
    for (k, o) in cases.iter().enumerate() {
        let x = match quad_common_point(&o.circuits) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("case {k}: {e}"));
                continue;
            }
        };
        if !o.circuits.iter().all(|q| in_convex_polygon(q, &x)) {
            failures.push(format!("case {k}: common point outside a quadrilateral"));
        }
        match graph_membership(&o.graph, &x, 6) {
            Ok(g) if g.member && oracle_graph_count(&o.graph, &g.plane) == Some(g.min_edges) => {}
            other => failures.push(format!("case {k}: {other:?}")),
        }
    }
    let g7 = graph_membership(&regular.graph, &Point3::origin(), 7).unwrap();
    let plane_edges = oracle_graph_count(&regular.graph, &g7.plane);
    let through = g7.plane.evaluate(&Point3::origin()) == int(0);
    let seven_ok = !g7.member && g7.min_edges == 6 && plane_edges == Some(6) && through;
    let pass = failures.is_empty() && seven_ok;
    outcome(
        pass,
        format!(
            "{} octahedra, member@6 everywhere={}, regular member@7={} plane meets {plane_edges:?} edges {}",
            cases.len(),
            failures.is_empty(),
            g7.member,
            failures.first().cloned().unwrap_or_default()
        ),
    )
}

fn oracle_suite(parity: &mut Parity) -> Outcome {
    let mut rng = rng(7);
    let mut failures = Vec::new();
    let (mut points, mut certified) = (0, 0);
    for k in 0..50 {
        let link = random_link(&mut rng, 4, 40);
        for _ in 0..5 {
            let x = random_point(&mut rng, &link);
            points += 1;
            let t = min_crossing(&link, &x).unwrap();
            let s = sampled_min_count(&link, &x, 10_000, k).unwrap();
            parity.record(&link, &s.plane);
            if t.min_count > s.count {
                failures.push(format!("link {k} at {x}: exact {} > sampled {}", t.min_count, s.count));
            }
            if !transcript_ok(&link, &t, parity) {
                failures.push(format!("link {k} at {x}: transcript plane does not re-verify"));
            }
            for n in 1..=t.level().min(8) + 1 {
                let m = membership(&link, &x, n).unwrap();
                if m.member && !s.count.reaches_level(n) {
                    failures.push(format!("link {k} at {x}: member at {n} but sampled {}", s.count));
                }
                if m.member != t.is_member(n) {
                    failures.push(format!("link {k} at {x}: membership at {n} disagrees with minimum"));
                }
            }
        }
        let b = hull_bounds(&link, &default_witnesses(&link), &[axes()]).unwrap();
        if let Some(c) = &b.upper_certificate {
            certified += 1;
            if !(c.verify() && c.verify_against(&link)) {
                failures.push(format!("link {k}: empty certificate does not re-verify"));
            }
        }
        if b.lower_certificate.as_ref().is_some_and(|c| !c.verify(&link)) {
            failures.push(format!("link {k}: nonempty certificate does not re-verify"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "50 links, {points} points, {certified} empty certificates, {} failures {}",
            failures.len(),
            failures.first().cloned().unwrap_or_default()
        ),
    )
}

fn main() -> ExitCode {
    let mut parity = Parity::default();
    let mut ok = true;
    let secs = |s: u64| Some(Duration::from_secs(s));
    ok &= run(1, secs(1), || unknot(&mut parity));
    ok &= run(2, secs(30), || hopf(&mut parity));
    ok &= run(3, secs(600), cover_bound);
    ok &= run(4, secs(900), || tetra(5, &mut parity));
    ok &= run(4, secs(900), || tetra(10, &mut parity));
    ok &= run(5, None, || torus34(&mut parity));
    ok &= run(6, secs(300), octahedra);
    ok &= run(7, None, || oracle_suite(&mut parity));
    ok &= run(8, None, || {
        outcome(
            parity.odd.is_empty() && parity.mismatched.is_empty(),
            format!(
                "{} finite curve counts, {} odd, {} oracle mismatches {}",
                parity.counts,
                parity.odd.len(),
                parity.mismatched.len(),
                parity.odd.first().or(parity.mismatched.first()).cloned().unwrap_or_default()
            ),
        )
    });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
