use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semap::catalog::{build, rp2_catalog, sphere_catalog, sphere_names};
use semap::classify::{identify, identify_direct, identify_projective};
use semap::generate::{exhaustive_generate, exhaustive_generate_within, MAX_VERTICES};
use semap::symmetry::{are_isomorphic, verify_isomorphism};
use semap::verify::scramble;
use semap::VertexType;

#[test]
fn catalog_names_and_errors() {
    assert_eq!(sphere_names(12).unwrap().len(), 37);
    assert_eq!(sphere_names(20).unwrap().len(), 37 + 16);
    assert_eq!(sphere_names(11).unwrap_err().kind(), "MaxGonTooSmall");
    assert_eq!(build("prism-2").unwrap_err().kind(), "NTooSmall");
    assert_eq!(build("hexagon").unwrap_err().kind(), "UnknownName");
    assert_eq!(build("rp2-tetrahedron").unwrap_err().kind(), "UnknownName");
    assert!(are_isomorphic(&build("prism-4").unwrap().map, &build("cube").unwrap().map));
    assert!(are_isomorphic(&build("antiprism-3").unwrap().map, &build("octahedron").unwrap().map));
}

#[test]
fn manifest_lines() {
    let e = build("snub-cube").unwrap();
    assert_eq!(e.manifest_line().split('\t').take(3).collect::<Vec<_>>(), ["snub-cube", "[3^4,4]", "24"]);
    let counts: Vec<usize> = rp2_catalog().unwrap().iter().map(|e| e.map.vertex_count()).collect();
    assert_eq!(counts, [6, 10, 12, 15, 12, 24, 30, 60, 30, 30]);
}

#[test]
fn shuffled_truncated_icosahedron_is_named() {
    let m = build("truncated-icosahedron").unwrap().map;
    let (r, _) = scramble(&m, &mut ChaCha8Rng::seed_from_u64(11));
    let v = identify(&r).unwrap();
    assert_eq!(v.name, "truncated-icosahedron");
    assert!(verify_isomorphism(&r, &m, &v.witness));
}

#[test]
fn reduction_agrees_with_direct_comparison() {
    for e in sphere_catalog(12).unwrap() {
        let a = identify(&e.map).unwrap();
        let b = identify_direct(&e.map).unwrap();
        assert_eq!(a.name, e.name);
        assert_eq!(b.name, e.name);
    }
}

#[test]
fn projective_maps_are_named_through_their_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for e in rp2_catalog().unwrap() {
        let (r, _) = scramble(&e.map, &mut rng);
        let v = identify_projective(&r).unwrap();
        assert_eq!(v.name, e.name);
        assert!(verify_isomorphism(&r, &e.map, &v.witness));
    }
    let sphere = build("cube").unwrap().map;
    assert_eq!(identify_projective(&sphere).unwrap_err().kind(), "WrongProjectivePlane");
}

#[test]
fn generator_limits() {
    let t: VertexType = "[3^5]".parse().unwrap();
    assert_eq!(exhaustive_generate(MAX_VERTICES + 2, &t).unwrap_err().kind(), "TooLarge");
    assert_eq!(exhaustive_generate(10, &t).unwrap_err().kind(), "CountMismatch");
}

#[test]
fn generator_finds_the_small_solids() {
    let cases = [
        (12, "[3,4,3,4]", "cuboctahedron"),
        (12, "[3,6^2]", "truncated-tetrahedron"),
        (6, "[3,4^2]", "prism-3"),
        (10, "[4^2,5]", "prism-5"),
        (12, "[4^2,6]", "prism-6"),
        (10, "[3^3,5]", "antiprism-5"),
        (12, "[3^3,6]", "antiprism-6"),
    ];
    for (n, t, name) in cases {
        let maps = exhaustive_generate(n, &t.parse().unwrap()).unwrap();
        assert_eq!(maps.len(), 1, "({n},{t})");
        assert!(are_isomorphic(&maps[0], &build(name).unwrap().map), "({n},{t})");
    }
}

#[test]
fn prisms_and_antiprisms_are_unique_up_to_eight() {
    for n in 3..=8usize {
        for (family, t) in [("prism", format!("[4^2,{n}]")), ("antiprism", format!("[3^3,{n}]"))] {
            let maps = exhaustive_generate_within(2 * n, &t.parse().unwrap(), 16).unwrap();
            assert_eq!(maps.len(), 1, "{t}");
            assert!(are_isomorphic(&maps[0], &build(&format!("{family}-{n}")).unwrap().map), "{t}");
        }
    }
    let t: VertexType = "[4^2,8]".parse().unwrap();
    assert_eq!(exhaustive_generate(16, &t).unwrap_err().kind(), "TooLarge");
}
