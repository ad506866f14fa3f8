mod common;

use common::*;
use hullkit::generators::torus::{torus_link, TorusParams};
use hullkit::geometry::Point3;
use hullkit::linking::{linking_number, pairwise_linking};
use hullkit::scalar::rat;
use proptest::prelude::*;

#[test]
fn torus_links_match_gauss_integral() {
    for (p, q) in [(2, 2), (2, 4), (3, 3), (2, 6), (4, 4)] {
        let link = torus_link(&TorusParams::new(p, q)).unwrap().link;
        let m = pairwise_linking(&link).unwrap();
        let c = link.components();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let g = gauss_linking(&c[i], &c[j]);
                assert!((g - g.round()).abs() < 1e-6, "({p},{q}) pair {i},{j}: {g}");
                assert_eq!(m.get(i, j), g.round() as i64, "({p},{q}) pair {i},{j}");
            }
        }
    }
}

#[test]
fn random_links_match_gauss_integral() {
    let mut rng = rng(11);
    for _ in 0..40 {
        let link = random_link(&mut rng, 3, 12);
        let m = pairwise_linking(&link).unwrap();
        let c = link.components();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let g = gauss_linking(&c[i], &c[j]);
                assert_eq!(m.get(i, j), g.round() as i64);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetric_and_odd_under_reversal(seed in 0u64..10_000) {
        let mut rng = rng(seed);
        let link = random_link(&mut rng, 2, 10);
        prop_assume!(link.component_count() == 2);
        let c = link.components();
        let ab = linking_number(&c[0], &c[1]).unwrap();
        prop_assert_eq!(linking_number(&c[1], &c[0]).unwrap(), ab);
        prop_assert_eq!(linking_number(&c[0].reversed(), &c[1]).unwrap(), -ab);
        prop_assert_eq!(linking_number(&c[0].reversed(), &c[1].reversed()).unwrap(), ab);
    }

    #[test]
    fn invariant_under_rigid_motion(seed in 0u64..10_000, q in prop::array::uniform4(-3i64..=3)) {
        prop_assume!(q != [0, 0, 0, 0]);
        let mut rng = rng(seed);
        let link = random_link(&mut rng, 3, 10);
        let r = rotation(q);
        let t = Point3::new(rat(1, 3), rat(-2, 7), rat(5, 2));
        let moved = link.map_points(|p| apply(&r, &t, p));
        prop_assert_eq!(pairwise_linking(&moved).unwrap(), pairwise_linking(&link).unwrap());
    }
}
