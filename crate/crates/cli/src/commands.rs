use hullkit::cover::{is_cover, min_max_cover, star_or_triangle, verify_bound, CoverError, CoverInstance};
use hullkit::format::{write_graph, write_link};
use hullkit::generators::octahedron::{octahedron, quad_common_point, regular_octahedron_graph, OctahedronError};
use hullkit::generators::tetra::{tetra_multihopf, tetra_multihopf_with, TetraError, TetraPattern};
use hullkit::generators::torus::{torus_link, TorusError, TorusParams};
use hullkit::geometry::Point3;
use hullkit::hull::{
    admissible_offsets, default_witnesses, directional_profile, emptiness_certificate, graph_membership, hull_bounds,
    membership, ncut_classify, sampled_min_count, Emptiness, HullError,
};
use hullkit::linking::pairwise_linking;
use hullkit::scalar::{format_rational, parse_rational, to_f64};
use hullkit::Rational;

use crate::{parse, Command, Failure, Gen};

fn hull_failure(e: HullError) -> Failure {
    match e {
        HullError::PointOnCurve => Failure::Degenerate(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn cover_failure(e: CoverError) -> Failure {
    Failure::Input(e.to_string())
}

fn emit(text: String, output: Option<String>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            println!("wrote {path}");
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn level(n: u64) -> Result<u64, Failure> {
    if n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    Ok(n)
}

pub fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Gen(g) => generate(g),
        Command::Validate { file } => {
            let link = parse::link_unchecked(&file)?;
            let report = link.validate();
            println!("{report}");
            Ok(report.is_valid())
        }
        Command::Lk { file } => {
            let link = parse::link(&file)?;
            let m = pairwise_linking(&link).map_err(|e| Failure::Degenerate(e.to_string()))?;
            print!("{m}");
            println!("all_nonzero={}", m.all_nonzero());
            Ok(true)
        }
        Command::Profile { file, dir, n } => {
            let link = parse::link(&file)?;
            let u = parse::direction(&dir)?;
            let profile = directional_profile(&link, &u);
            println!("profile direction {u}");
            let b = &profile.breakpoints;
            for (k, c) in profile.counts.iter().enumerate() {
                let lo = if k == 0 { "-inf".to_string() } else { format_rational(&b[k - 1]) };
                let hi = if k == b.len() { "inf".to_string() } else { format_rational(&b[k]) };
                println!("open ({lo}, {hi}) count {c}");
                if k < b.len() {
                    println!("at {} count {}", format_rational(&b[k]), profile.boundary_counts[k]);
                }
            }
            if let Some(n) = n {
                println!("admissible n={} {}", level(n)?, admissible_offsets(&profile, n));
            }
            Ok(true)
        }
        Command::Member { file, point, n } => {
            let link = parse::link(&file)?;
            let x = parse::point(&point)?;
            let m = membership(&link, &x, level(n)?).map_err(hull_failure)?;
            println!("member point={x} n={n} result={} level={}", m.member, m.level);
            println!("minimum {} stratum={}", m.transcript, m.transcript.stratum);
            println!("strata examined {}", m.transcript.strata_examined);
            Ok(m.member)
        }
        Command::Sample { file, point, trials, seed } => {
            let link = parse::link(&file)?;
            let x = parse::point(&point)?;
            let s = sampled_min_count(&link, &x, trials, seed).map_err(hull_failure)?;
            println!("sampled point={x} trials={} seed={seed} count={}", s.trials, s.count);
            println!("plane {}", s.plane);
            Ok(true)
        }
        Command::CertifyEmpty { file, n, dirs } => {
            let link = parse::link(&file)?;
            let dirs = parse::directions(&dirs)?;
            let e = emptiness_certificate(&link, level(n)?, &dirs);
            print!("{e}");
            match e {
                Emptiness::Certified(c) => {
                    if !c.verify_against(&link) {
                        return Err(Failure::Contract("certificate failed its own re-check".into()));
                    }
                    println!("verified true");
                    Ok(true)
                }
                Emptiness::Failure { .. } => Ok(false),
            }
        }
        Command::Bounds { file, witness, dirs } => {
            let link = parse::link(&file)?;
            let witnesses = if witness.is_empty() {
                default_witnesses(&link)
            } else {
                witness.iter().map(|w| parse::point(w)).collect::<Result<_, _>>()?
            };
            let dirs = if dirs.is_empty() { vec!["faces".to_string(), "axes".to_string()] } else { dirs };
            let families = dirs.iter().map(|d| parse::directions(d)).collect::<Result<Vec<_>, _>>()?;
            let b = hull_bounds(&link, &witnesses, &families).map_err(hull_failure)?;
            print!("{b}");
            let lower_ok = b.lower_certificate.as_ref().map_or(true, |c| c.verify(&link));
            let upper_ok = b.upper_certificate.as_ref().map_or(true, |c| c.verify_against(&link));
            if !(lower_ok && upper_ok) {
                return Err(Failure::Contract("bounds certificate failed its own re-check".into()));
            }
            Ok(true)
        }
        Command::Ncut { file, plane } => {
            let link = parse::link(&file)?;
            let s = parse::plane(&plane)?;
            let r = ncut_classify(&link, &s);
            let met: Vec<String> = r.components_met.iter().map(|c| c.to_string()).collect();
            println!("plane {s}");
            println!("components_met {{{}}}", met.join(","));
            println!("points_met {}", r.points_met);
            println!("transversal {}", r.transversal);
            let tiny: Vec<String> = r.tiny_sides.iter().map(|s| format!("{s:+}")).collect();
            println!("tiny_sides {}", if tiny.is_empty() { "none".into() } else { tiny.join(",") });
            Ok(true)
        }
        Command::CoverMin(c) => {
            let r = min_max_cover(c.p).map_err(cover_failure)?;
            println!("{}", r.machine_line());
            println!("witness {}", r.witness);
            if !is_cover(&r.witness) || r.witness.max_size() != r.feasible_min_max {
                return Err(Failure::Contract("witness failed re-verification".into()));
            }
            Ok(true)
        }
        Command::CoverVerify(c) => {
            let b = verify_bound(c.p).map_err(cover_failure)?;
            println!("{}", b.result.machine_line());
            println!("bound p={} ceil(3p/5)={} holds={}", c.p, b.bound, b.holds);
            println!("witness {}", b.result.witness);
            if let Some(ce) = &b.counterexample {
                println!("counterexample {ce}");
            }
            Ok(b.holds)
        }
        Command::CoverStructure { p, sets } => {
            let inst = CoverInstance::from_sets(p, &parse::sets(&sets)?).map_err(cover_failure)?;
            match star_or_triangle(&inst) {
                Ok(r) => {
                    print!("{r}");
                    let ok = r.claim1_holds()
                        && r.two_thirds_holds != Some(false)
                        && r.three_fifths_holds != Some(false)
                        && (r.triangle.is_some() || r.star_center.is_some());
                    Ok(ok)
                }
                Err(CoverError::NotACover(m)) => {
                    println!("cover {inst}");
                    println!("not a cover: {m}");
                    Ok(false)
                }
                Err(e) => Err(cover_failure(e)),
            }
        }
        Command::OctaCommon { file } => {
            let g = parse::graph(&file)?;
            let pts: [Point3<Rational>; 6] = g
                .vertices
                .clone()
                .try_into()
                .map_err(|v: Vec<_>| Failure::Input(format!("an octahedron has 6 vertices, found {}", v.len())))?;
            let octa = octahedron(&pts).map_err(|e| Failure::Input(e.to_string()))?;
            let x = match quad_common_point(&octa.circuits) {
                Ok(x) => x,
                Err(e @ OctahedronError::NoCommonPoint { .. }) => {
                    println!("{e}");
                    return Ok(false);
                }
                Err(e) => return Err(Failure::Input(e.to_string())),
            };
            println!("common point {x}");
            let approx: Vec<String> = x.to_array().iter().map(|c| format!("{:.6}", to_f64(c))).collect();
            println!("  \u{2248} ({})", approx.join(", "));
            let m = graph_membership(&octa.graph, &x, 6).map_err(hull_failure)?;
            println!("graph_member n=6 result={} min_edges={}", m.member, m.min_edges);
            println!("minimum {m}");
            Ok(m.member)
        }
        Command::GraphMember { file, point, n } => {
            let g = parse::graph(&file)?;
            let x = parse::point(&point)?;
            let m = graph_membership(&g, &x, level(n)?).map_err(hull_failure)?;
            println!("graph_member point={x} n={n} result={} min_edges={}", m.member, m.min_edges);
            println!("minimum {m}");
            Ok(m.member)
        }
    }
}

fn generate(g: Gen) -> Result<bool, Failure> {
    match g {
        Gen::Torus { p, q, segments, major, minor, output } => {
            let major = parse_rational(&major).map_err(|e| Failure::Input(format!("--major: {e}")))?;
            let minor = parse_rational(&minor).map_err(|e| Failure::Input(format!("--minor: {e}")))?;
            let params = TorusParams {
                segments,
                major_radius: major,
                minor_radius: minor,
                ..TorusParams::new(p, q)
            };
            let t = torus_link(&params).map_err(|e| match e {
                TorusError::InvalidParams(_) => Failure::Input(e.to_string()),
                TorusError::ResolutionInsufficient { .. } => Failure::Contract(e.to_string()),
            })?;
            emit(write_link(&t.link, &t.header()), output)?;
            Ok(true)
        }
        Gen::Tetra { p, pattern, output } => {
            let result = match pattern {
                None => tetra_multihopf(p),
                Some(s) => {
                    let pat = TetraPattern::with_pattern(p, parse::pattern(&s)?).map_err(|e| Failure::Input(e.to_string()))?;
                    tetra_multihopf_with(&pat)
                }
            };
            let t = result.map_err(|e| match e {
                TetraError::Contract(_) => Failure::Contract(e.to_string()),
                _ => Failure::Input(e.to_string()),
            })?;
            emit(write_link(&t.link, &t.header()), output)?;
            Ok(true)
        }
        Gen::Octahedron { affine, output } => {
            let base = regular_octahedron_graph();
            let (graph, note) = match affine {
                None => (base, "regular: vertices +-e1, +-e2, +-e3".to_string()),
                Some(s) => {
                    let a = parse::rationals(&s, 12, "affine")?;
                    let map = |p: &Point3<Rational>| {
                        let v = p.to_array();
                        Point3::from_array(std::array::from_fn(|i| {
                            &a[3 * i] * &v[0] + &a[3 * i + 1] * &v[1] + &a[3 * i + 2] * &v[2] + &a[9 + i]
                        }))
                    };
                    let text: Vec<String> = a.iter().map(format_rational).collect();
                    (base.map_points(map), format!("affine image of the regular octahedron, M|t = {}", text.join(",")))
                }
            };
            let pts: [Point3<Rational>; 6] = graph.vertices.clone().try_into().expect("six vertices");
            let octa = octahedron(&pts).map_err(|e| Failure::Input(e.to_string()))?;
            let header = vec![
                "generator: octahedron".to_string(),
                format!("convention: {note}; vertices 2i and 2i+1 are opposite"),
                "contract: convex position with octahedral face lattice".to_string(),
            ];
            emit(write_graph(&octa.graph, &header), output)?;
            Ok(true)
        }
    }
}
