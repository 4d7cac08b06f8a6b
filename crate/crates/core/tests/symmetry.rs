use semap::catalog::{build, sphere_catalog};
use semap::symmetry::{
    automorphism_group, cycle_notation, double_cover, free_involutions, is_free_involution, is_vertex_transitive,
    quotient, verify_isomorphism, Flags,
};

fn map(name: &str) -> semap::PolyhedralMap {
    build(name).unwrap().map
}

#[test]
fn group_orders() {
    let table = [
        ("tetrahedron", 24),
        ("cube", 48),
        ("octahedron", 48),
        ("dodecahedron", 120),
        ("icosahedron", 120),
        ("truncated-icosahedron", 120),
        ("great-rhombicuboctahedron", 48),
        ("snub-cube", 24),
        ("snub-dodecahedron", 60),
        ("pseudo-rhombicuboctahedron", 16),
        ("prism-3", 12),
        ("prism-7", 28),
        ("antiprism-5", 20),
    ];
    for (name, order) in table {
        assert_eq!(automorphism_group(&map(name)).order(), order, "{name}");
    }
}

#[test]
fn flags_count_four_per_edge() {
    for name in ["cube", "snub-dodecahedron", "rp2-dodecahedron"] {
        let m = map(name);
        assert_eq!(Flags::new(&m).len(), 4 * m.edge_count(), "{name}");
    }
}

#[test]
fn group_elements_are_automorphisms() {
    let m = map("truncated-octahedron");
    let g = automorphism_group(&m);
    assert!(g.elements.iter().all(|p| verify_isomorphism(&m, &m, p)));
    assert_eq!(g.orbits.len(), 1);
}

#[test]
fn pseudo_has_two_orbits() {
    let m = map("pseudo-rhombicuboctahedron");
    let g = automorphism_group(&m);
    assert!(!g.is_vertex_transitive());
    assert_eq!(g.orbits.len(), 2);
    assert_eq!(g.orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![8, 16]);
}

#[test]
fn free_involutions_exactly_for_point_symmetric_solids() {
    for e in sphere_catalog(12).unwrap() {
        let free = free_involutions(&e.map);
        let parameter = |prefix: &str| e.name.strip_prefix(prefix).and_then(|n| n.parse::<u32>().ok());
        let symmetric = match (parameter("prism-"), parameter("antiprism-")) {
            (Some(n), _) => n % 2 == 0,
            (_, Some(n)) => n % 2 == 1,
            _ => !["tetrahedron", "truncated-tetrahedron", "snub-cube", "snub-dodecahedron", "pseudo-rhombicuboctahedron"]
                .contains(&e.name.as_str()),
        };
        assert_eq!(!free.is_empty(), symmetric, "{}", e.name);
        assert!(free.iter().all(|p| is_free_involution(&e.map, p)));
    }
}

#[test]
fn quotient_and_cover_errors() {
    let cube = map("cube");
    let identity: Vec<usize> = (0..8).collect();
    assert_eq!(quotient(&cube, &identity).unwrap_err().kind(), "NotFreeInvolution");
    assert_eq!(double_cover(&cube).unwrap_err().kind(), "AlreadySpherical");
    let sigma = &free_involutions(&map("truncated-cube"))[0];
    assert_eq!(quotient(&map("truncated-cube"), sigma).unwrap_err().kind(), "NonPolyhedralQuotient");
    // The antipodal map of the cube identifies opposite faces into a
    // hemicube whose three squares pairwise share two edges.
    assert!(quotient(&cube, &free_involutions(&cube)[0]).is_err());
}

#[test]
fn deck_transformation_is_free() {
    let y = map("rp2-icosidodecahedron");
    let (cover, deck) = double_cover(&y).unwrap();
    assert_eq!(cover.vertex_count(), 2 * y.vertex_count());
    assert!(is_free_involution(&cover, &deck));
    assert!(is_vertex_transitive(&cover));
}

#[test]
fn cycles_are_printed_from_their_least_point() {
    assert_eq!(cycle_notation(&[0, 1, 2]), "()");
    assert_eq!(cycle_notation(&[1, 2, 0, 4, 3]), "(0 1 2)(3 4)");
}
