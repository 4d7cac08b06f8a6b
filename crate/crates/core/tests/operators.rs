use semap::catalog::build;
use semap::operators::{
    canonical_seed, dual, edge_coloring, eligible_squares, insert_diagonal_matching, inverse_rectification,
    inverse_truncation, opposite_seed, rectify, remove_deep_blue, truncate, EdgeColor,
};
use semap::semi_equivelar_type;
use semap::symmetry::are_isomorphic;

fn map(name: &str) -> semap::PolyhedralMap {
    build(name).unwrap().map
}

#[test]
fn truncations_of_the_classical_solids() {
    let table = [
        ("tetrahedron", "truncated-tetrahedron"),
        ("cube", "truncated-cube"),
        ("octahedron", "truncated-octahedron"),
        ("dodecahedron", "truncated-dodecahedron"),
        ("icosahedron", "truncated-icosahedron"),
        ("cuboctahedron", "great-rhombicuboctahedron"),
        ("icosidodecahedron", "great-rhombicosidodecahedron"),
    ];
    for (base, result) in table {
        assert!(are_isomorphic(&truncate(&map(base)).unwrap(), &map(result)), "truncate({base})");
    }
}

#[test]
fn rectifications_of_the_classical_solids() {
    let table = [
        ("cube", "cuboctahedron"),
        ("octahedron", "cuboctahedron"),
        ("dodecahedron", "icosidodecahedron"),
        ("icosidodecahedron", "small-rhombicosidodecahedron"),
        ("cuboctahedron", "small-rhombicuboctahedron"),
        ("tetrahedron", "octahedron"),
    ];
    for (base, result) in table {
        assert!(are_isomorphic(&rectify(&map(base)).unwrap(), &map(result)), "rectify({base})");
    }
}

#[test]
fn truncated_tetrahedron_has_twelve_vertices() {
    let t = truncate(&map("tetrahedron")).unwrap();
    assert_eq!(t.vertex_count(), 12);
    assert_eq!(semi_equivelar_type(&t).unwrap().to_string(), "[3,6^2]");
}

#[test]
fn duality_pairs() {
    for (a, b) in [("cube", "octahedron"), ("dodecahedron", "icosahedron"), ("tetrahedron", "tetrahedron")] {
        let d = dual(&map(a)).unwrap();
        assert!(are_isomorphic(&d, &map(b)), "dual({a})");
        assert!(are_isomorphic(&dual(&d).unwrap(), &map(a)));
    }
}

#[test]
fn inverses_reject_wrong_shapes() {
    assert_eq!(inverse_truncation(&map("cube")).unwrap_err().kind(), "WrongShape");
    assert!(inverse_rectification(&map("cube")).is_err());
    assert_eq!(remove_deep_blue(&map("icosahedron")).unwrap_err().kind(), "WrongShape");
    assert!(are_isomorphic(&inverse_truncation(&map("truncated-icosahedron")).unwrap(), &map("icosahedron")));
}

#[test]
fn snub_colouring_counts() {
    let c = edge_coloring(&map("snub-cube")).unwrap();
    assert_eq!(c.count(EdgeColor::DeepBlue), 12);
    assert_eq!(c.count(EdgeColor::Red) + c.count(EdgeColor::Blue) + 12, 60);
    let snub = map("snub-dodecahedron");
    let y = remove_deep_blue(&snub).unwrap();
    assert_eq!(y.vertex_count(), 60);
    assert_eq!(semi_equivelar_type(&y).unwrap().to_string(), "[3,4,5,4]");
}

#[test]
fn matching_from_either_seed() {
    let y = map("small-rhombicuboctahedron");
    assert_eq!(eligible_squares(&y).len(), 12);
    let a = canonical_seed(&y).unwrap();
    let b = opposite_seed(&y, a).unwrap();
    assert_ne!(a, b);
    let (x1, x2) = (insert_diagonal_matching(&y, a).unwrap(), insert_diagonal_matching(&y, b).unwrap());
    assert!(are_isomorphic(&x1, &map("snub-cube")));
    assert!(are_isomorphic(&x1, &x2));
    assert_ne!(x1.face_set(), x2.face_set());
}
