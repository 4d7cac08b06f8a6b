use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semap::catalog;
use semap::geometry::{antiprism_coordinates, export_off, parse_off, prism_coordinates};
use semap::symmetry::{automorphism_group, canonical_certificate, isomorphism, verify_isomorphism};
use semap::verify::scramble;
use semap::{parse_map, semi_equivelar_type, write_map, VertexType};

const SMALL: [&str; 12] = [
    "tetrahedron",
    "cube",
    "octahedron",
    "icosahedron",
    "cuboctahedron",
    "truncated-tetrahedron",
    "snub-cube",
    "pseudo-rhombicuboctahedron",
    "prism-5",
    "antiprism-7",
    "rp2-icosahedron",
    "rp2-truncated-octahedron",
];

fn raw_type() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(3u32..13, 3..7)
}

proptest! {
    #[test]
    fn normalize_is_idempotent(raw in raw_type()) {
        let t = VertexType::normalize(&raw).unwrap();
        prop_assert_eq!(VertexType::normalize(t.sizes()).unwrap(), t.clone());
        prop_assert_eq!(t.to_string().parse::<VertexType>().unwrap(), t);
    }

    #[test]
    fn normalize_ignores_rotation_and_reversal(raw in raw_type(), shift in 0usize..6, flip in any::<bool>()) {
        let mut moved = raw.clone();
        moved.rotate_left(shift % raw.len());
        if flip {
            moved.reverse();
        }
        let (a, b) = (VertexType::normalize(&raw).unwrap(), VertexType::normalize(&moved).unwrap());
        prop_assert_eq!(a.defect(), b.defect());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn invariants_survive_relabelling(index in 0usize..SMALL.len(), seed in any::<u64>()) {
        let m = catalog::build(SMALL[index]).unwrap().map;
        let (r, _) = scramble(&m, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(canonical_certificate(&m), canonical_certificate(&r));
        prop_assert_eq!(semi_equivelar_type(&m).unwrap(), semi_equivelar_type(&r).unwrap());
        prop_assert_eq!(automorphism_group(&m).order(), automorphism_group(&r).order());
        let w = isomorphism(&r, &m).unwrap();
        prop_assert!(verify_isomorphism(&r, &m, &w));
    }

    #[test]
    fn text_format_round_trips(index in 0usize..SMALL.len(), seed in any::<u64>()) {
        let m = catalog::build(SMALL[index]).unwrap().map;
        let (r, _) = scramble(&m, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(parse_map(&write_map(&r)).unwrap(), r);
    }

    #[test]
    fn off_round_trips(n in 3usize..40, anti in any::<bool>()) {
        let (r, m) = if anti {
            (antiprism_coordinates(n).unwrap(), catalog::antiprism_map(n).unwrap())
        } else {
            (prism_coordinates(n).unwrap(), catalog::prism_map(n).unwrap())
        };
        let (coords, faces) = parse_off(&export_off(&r, &m).unwrap()).unwrap();
        prop_assert_eq!(faces, m.faces().to_vec());
        prop_assert_eq!(coords, r.coords);
    }
}
