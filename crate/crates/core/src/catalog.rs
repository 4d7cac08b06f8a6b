//! Named maps: Platonic and Archimedean solids, prisms, antiprisms, the
//! pseudo-rhombicuboctahedron, and their projective-plane quotients.

use std::collections::BTreeSet;

use rayon::prelude::*;
use strum::IntoStaticStr;
use thiserror::Error;

use crate::classify::square_type_counts;
use crate::map::PolyhedralMap;
use crate::operators::{canonical_seed, dual, insert_diagonal_matching, rectify, truncate};
use crate::symmetry::{are_isomorphic, free_involutions, quotient};
use crate::vtype::{Family, VertexType};

#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("family parameter {0} is below 3")]
    NTooSmall(usize),
    #[error("max gon {0} is below 12")]
    MaxGonTooSmall(u32),
    #[error("construction of {name} failed: {reason}")]
    Construction { name: String, reason: String },
}

impl CatalogError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub map: PolyhedralMap,
    pub expected_type: VertexType,
    pub expected_count: usize,
    /// How the map was obtained, e.g. `truncate(cube)`.
    pub recipe: String,
}

impl CatalogEntry {
    /// One manifest line: `name<TAB>type<TAB>count<TAB>recipe`.
    pub fn manifest_line(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.name, self.expected_type, self.expected_count, self.recipe)
    }
}

pub const PLATONIC: [&str; 5] = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"];

pub const ARCHIMEDEAN: [&str; 13] = [
    "truncated-tetrahedron",
    "truncated-cube",
    "truncated-octahedron",
    "truncated-dodecahedron",
    "truncated-icosahedron",
    "cuboctahedron",
    "icosidodecahedron",
    "small-rhombicuboctahedron",
    "small-rhombicosidodecahedron",
    "great-rhombicuboctahedron",
    "great-rhombicosidodecahedron",
    "snub-cube",
    "snub-dodecahedron",
];

pub const PSEUDO: &str = "pseudo-rhombicuboctahedron";

/// Sphere maps whose antipodal quotients make up the projective catalog.
pub const CENTRALLY_SYMMETRIC: [&str; 10] = [
    "icosahedron",
    "dodecahedron",
    "truncated-octahedron",
    "icosidodecahedron",
    "small-rhombicuboctahedron",
    "great-rhombicuboctahedron",
    "small-rhombicosidodecahedron",
    "great-rhombicosidodecahedron",
    "truncated-dodecahedron",
    "truncated-icosahedron",
];

fn faces(rows: &[&[usize]]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn failed(name: &str, reason: impl ToString) -> CatalogError {
    CatalogError::Construction { name: name.to_string(), reason: reason.to_string() }
}

fn expected(name: &str) -> Option<&'static str> {
    Some(match name {
        "tetrahedron" => "[3^3]",
        "cube" => "[4^3]",
        "octahedron" => "[3^4]",
        "dodecahedron" => "[5^3]",
        "icosahedron" => "[3^5]",
        "truncated-tetrahedron" => "[3,6^2]",
        "truncated-cube" => "[3,8^2]",
        "truncated-octahedron" => "[4,6^2]",
        "truncated-dodecahedron" => "[3,10^2]",
        "truncated-icosahedron" => "[5,6^2]",
        "cuboctahedron" => "[3,4,3,4]",
        "icosidodecahedron" => "[3,5,3,5]",
        "small-rhombicuboctahedron" => "[3,4^3]",
        "small-rhombicosidodecahedron" => "[3,4,5,4]",
        "great-rhombicuboctahedron" => "[4,6,8]",
        "great-rhombicosidodecahedron" => "[4,6,10]",
        "snub-cube" => "[3^4,4]",
        "snub-dodecahedron" => "[3^4,5]",
        "pseudo-rhombicuboctahedron" => "[3,4^3]",
        _ => return None,
    })
}

fn entry(name: &str, map: PolyhedralMap, ty: VertexType, recipe: String) -> Result<CatalogEntry, CatalogError> {
    let count = ty.predicted_vertex_count().map_err(|e| failed(name, e))? as usize;
    let found = crate::vtype::semi_equivelar_type(&map).map_err(|e| failed(name, e))?;
    if found != ty || map.vertex_count() != count {
        return Err(failed(name, format!("got {found} on {} vertices, expected {ty} on {count}", map.vertex_count())));
    }
    Ok(CatalogEntry { name: name.to_string(), map, expected_type: ty, expected_count: count, recipe })
}

fn known(name: &str, map: PolyhedralMap, recipe: &str) -> Result<CatalogEntry, CatalogError> {
    let ty: VertexType = expected(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?.parse().expect("valid");
    entry(name, map, ty, recipe.to_string())
}

fn tetrahedron() -> PolyhedralMap {
    PolyhedralMap::from_faces(faces(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])).expect("valid")
}

fn octahedron() -> PolyhedralMap {
    PolyhedralMap::from_faces(faces(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 1],
        &[1, 2, 5],
        &[2, 3, 5],
        &[3, 4, 5],
        &[4, 1, 5],
    ]))
    .expect("valid")
}

/// Vertex 0 on top, rings 1..=5 and 6..=10, vertex 11 at the bottom.
fn icosahedron() -> PolyhedralMap {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut fs = Vec::with_capacity(20);
    for i in 0..5 {
        fs.push(vec![0, u(i), u(i + 1)]);
        fs.push(vec![u(i), l(i), u(i + 1)]);
        fs.push(vec![u(i + 1), l(i), l(i + 1)]);
        fs.push(vec![11, l(i + 1), l(i)]);
    }
    PolyhedralMap::from_faces(fs).expect("valid")
}

/// Vertices `u_m = m` and `b_m = n + m`; top face, bottom face, then the
/// squares `u_m u_{m+1} b_{m+1} b_m`.
pub fn prism_map(n: usize) -> Result<PolyhedralMap, CatalogError> {
    if n < 3 {
        return Err(CatalogError::NTooSmall(n));
    }
    let mut fs = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).collect()];
    for m in 0..n {
        let m1 = (m + 1) % n;
        fs.push(vec![m, m1, n + m1, n + m]);
    }
    PolyhedralMap::from_faces(fs).map_err(|e| failed(&format!("prism-{n}"), e))
}

/// Vertices `u_m = m` and `b_m = n + m`; top face, bottom face, then the
/// triangles `u_m b_m b_{m+1}` and `u_m b_{m+1} u_{m+1}`.
pub fn antiprism_map(n: usize) -> Result<PolyhedralMap, CatalogError> {
    if n < 3 {
        return Err(CatalogError::NTooSmall(n));
    }
    let mut fs = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).collect()];
    for m in 0..n {
        let m1 = (m + 1) % n;
        fs.push(vec![m, n + m, n + m1]);
        fs.push(vec![m, n + m1, m1]);
    }
    PolyhedralMap::from_faces(fs).map_err(|e| failed(&format!("antiprism-{n}"), e))
}

pub fn prism(n: usize) -> Result<CatalogEntry, CatalogError> {
    let map = prism_map(n)?;
    entry(&format!("prism-{n}"), map, Family::Prism.member(n as u32), format!("prism({n})"))
}

pub fn antiprism(n: usize) -> Result<CatalogEntry, CatalogError> {
    let map = antiprism_map(n)?;
    entry(&format!("antiprism-{n}"), map, Family::Antiprism.member(n as u32), format!("antiprism({n})"))
}

pub fn platonic(name: &str) -> Result<CatalogEntry, CatalogError> {
    let op = |r: Result<PolyhedralMap, crate::operators::OpError>| r.map_err(|e| failed(name, e));
    match name {
        "tetrahedron" => known(name, tetrahedron(), "fixed face list"),
        "octahedron" => known(name, octahedron(), "fixed face list"),
        "icosahedron" => known(name, icosahedron(), "fixed face list"),
        "cube" => known(name, prism_map(4)?, "prism(4)"),
        "dodecahedron" => known(name, op(dual(&icosahedron()))?, "dual(icosahedron)"),
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

pub fn archimedean(name: &str) -> Result<CatalogEntry, CatalogError> {
    let (operator, base) = match name {
        "truncated-tetrahedron" => ("truncate", "tetrahedron"),
        "truncated-cube" => ("truncate", "cube"),
        "truncated-octahedron" => ("truncate", "octahedron"),
        "truncated-dodecahedron" => ("truncate", "dodecahedron"),
        "truncated-icosahedron" => ("truncate", "icosahedron"),
        "cuboctahedron" => ("rectify", "cube"),
        "icosidodecahedron" => ("rectify", "dodecahedron"),
        "small-rhombicuboctahedron" => ("rectify", "cuboctahedron"),
        "small-rhombicosidodecahedron" => ("rectify", "icosidodecahedron"),
        "great-rhombicuboctahedron" => ("truncate", "cuboctahedron"),
        "great-rhombicosidodecahedron" => ("truncate", "icosidodecahedron"),
        "snub-cube" => ("insert-matching", "small-rhombicuboctahedron"),
        "snub-dodecahedron" => ("insert-matching", "small-rhombicosidodecahedron"),
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    };
    let base_map = build(base)?.map;
    let map = match operator {
        "truncate" => truncate(&base_map),
        "rectify" => rectify(&base_map),
        _ => {
            let seed = canonical_seed(&base_map).ok_or_else(|| failed(name, "no eligible square"))?;
            insert_diagonal_matching(&base_map, seed)
        }
    }
    .map_err(|e| failed(name, e))?;
    let recipe = if operator == "insert-matching" {
        format!("insert-matching({base}, canonical seed)")
    } else {
        format!("{operator}({base})")
    };
    known(name, map, &recipe)
}

/// Faces of the cap around `alpha`: the square itself, the four squares on
/// its sides and the four triangles at its corners.
fn cap_faces(m: &PolyhedralMap, alpha: usize) -> Vec<usize> {
    let sq = m.face(alpha);
    let mut cap = vec![alpha];
    for k in 0..4 {
        cap.push(m.opposite_face(alpha, sq[k], sq[(k + 1) % 4]).expect("edges have two sides"));
    }
    for &v in sq {
        for &f in &m.face_cycle(v).faces {
            if m.face(f).len() == 3 && !cap.contains(&f) {
                cap.push(f);
            }
        }
    }
    cap
}

/// Boundary cycle of a disk given by its faces.
fn boundary_cycle(m: &PolyhedralMap, disk: &[usize]) -> Option<Vec<usize>> {
    let inside: BTreeSet<usize> = disk.iter().copied().collect();
    let mut next: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for &f in disk {
        let face = m.face(f);
        let n = face.len();
        for k in 0..n {
            let (a, b) = (face[k], face[(k + 1) % n]);
            if !inside.contains(&m.opposite_face(f, a, b)?) {
                // Faces of one orientable disk agree on direction up to a
                // global flip, so following `next` walks the boundary.
                next.insert(a, b);
            }
        }
    }
    let start = *next.keys().min()?;
    let mut cycle = vec![start];
    let mut v = next[&start];
    while v != start {
        cycle.push(v);
        v = *next.get(&v)?;
        if cycle.len() > next.len() {
            return None;
        }
    }
    (cycle.len() == next.len()).then_some(cycle)
}

/// The small rhombicuboctahedron with one square cap turned by an eighth of a
/// turn.
pub fn pseudo_rhombicuboctahedron() -> Result<CatalogEntry, CatalogError> {
    let name = PSEUDO;
    let rco = build("small-rhombicuboctahedron")?.map;
    let oriented = PolyhedralMap::new(rco.vertex_count(), rco.oriented_faces().ok_or_else(|| failed(name, "not orientable"))?)
        .map_err(|e| failed(name, e))?;
    let alpha = (0..oriented.face_count())
        .find(|&f| {
            let s = oriented.face(f);
            s.len() == 4
                && (0..4).all(|k| oriented.face(oriented.opposite_face(f, s[k], s[(k + 1) % 4]).expect("two sides")).len() == 4)
        })
        .ok_or_else(|| failed(name, "no square surrounded by squares"))?;
    let cap = cap_faces(&oriented, alpha);
    let ring = boundary_cycle(&oriented, &cap).ok_or_else(|| failed(name, "cap boundary is not a cycle"))?;
    if cap.len() != 9 || ring.len() != 8 {
        return Err(failed(name, "cap is not a square cupola"));
    }
    let mut shift: Vec<usize> = (0..oriented.vertex_count()).collect();
    for i in 0..8 {
        shift[ring[i]] = ring[(i + 1) % 8];
    }
    let fs: Vec<Vec<usize>> = (0..oriented.face_count())
        .map(|f| {
            let face = oriented.face(f);
            if cap.contains(&f) {
                face.iter().map(|&v| shift[v]).collect()
            } else {
                face.to_vec()
            }
        })
        .collect();
    let map = PolyhedralMap::new(oriented.vertex_count(), fs).map_err(|e| failed(name, e))?;
    let counts = square_type_counts(&map).map_err(|e| failed(name, e))?;
    if (counts.s2, counts.s3, counts.s4) != (8, 8, 2) || are_isomorphic(&map, &rco) {
        return Err(failed(name, format!("gyration gave square types {counts:?}")));
    }
    known(name, map, "gyrate(small-rhombicuboctahedron)")
}

/// Antipodal quotient of a centrally symmetric sphere map.
pub fn rp2_entry(base: &str) -> Result<CatalogEntry, CatalogError> {
    let name = format!("rp2-{base}");
    let sphere = build(base)?;
    let sigma = free_involutions(&sphere.map).into_iter().next().ok_or_else(|| failed(&name, "no free involution"))?;
    let map = quotient(&sphere.map, &sigma).map_err(|e| failed(&name, e))?;
    let found = crate::vtype::semi_equivelar_type(&map).map_err(|e| failed(&name, e))?;
    if found != sphere.expected_type || 2 * map.vertex_count() != sphere.expected_count {
        return Err(failed(&name, format!("quotient has type {found} on {} vertices", map.vertex_count())));
    }
    Ok(CatalogEntry {
        name,
        expected_count: map.vertex_count(),
        map,
        expected_type: sphere.expected_type,
        recipe: format!("quotient({base})"),
    })
}

fn family_parameter(name: &str, prefix: &str) -> Option<Result<usize, CatalogError>> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return Some(Err(CatalogError::UnknownName(name.to_string())));
    }
    Some(digits.parse::<usize>().map_err(|_| CatalogError::UnknownName(name.to_string())))
}

/// Builds any named map: solids, `prism-N`, `antiprism-N`, and `rp2-<solid>`
/// for the ten centrally symmetric solids.
pub fn build(name: &str) -> Result<CatalogEntry, CatalogError> {
    if PLATONIC.contains(&name) {
        return platonic(name);
    }
    if ARCHIMEDEAN.contains(&name) {
        return archimedean(name);
    }
    if name == PSEUDO {
        return pseudo_rhombicuboctahedron();
    }
    if let Some(n) = family_parameter(name, "antiprism-") {
        return antiprism(n?);
    }
    if let Some(n) = family_parameter(name, "prism-") {
        return prism(n?);
    }
    if let Some(base) = name.strip_prefix("rp2-") {
        if CENTRALLY_SYMMETRIC.contains(&base) {
            return rp2_entry(base);
        }
    }
    Err(CatalogError::UnknownName(name.to_string()))
}

/// Names of the sphere catalog in its fixed order.
pub fn sphere_names(max_gon: u32) -> Result<Vec<String>, CatalogError> {
    if max_gon < 12 {
        return Err(CatalogError::MaxGonTooSmall(max_gon));
    }
    let mut names: Vec<String> = PLATONIC.iter().chain(ARCHIMEDEAN.iter()).map(|s| s.to_string()).collect();
    names.push(PSEUDO.to_string());
    names.extend((3..=max_gon).filter(|&n| n != 4).map(|n| format!("prism-{n}")));
    names.extend((4..=max_gon).map(|n| format!("antiprism-{n}")));
    Ok(names)
}

/// Every sphere map of the classification with faces of at most `max_gon`
/// sides, one per isomorphism class.
pub fn sphere_catalog(max_gon: u32) -> Result<Vec<CatalogEntry>, CatalogError> {
    sphere_names(max_gon)?.par_iter().map(|n| build(n)).collect()
}

/// The ten projective-plane maps.
pub fn rp2_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    CENTRALLY_SYMMETRIC.par_iter().map(|b| rp2_entry(b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_entries() {
        assert_eq!(build("icosahedron").unwrap().map.vertex_count(), 12);
        assert_eq!(build("dodecahedron").unwrap().expected_type.to_string(), "[5^3]");
        assert_eq!(build("prism-3").unwrap().expected_type.to_string(), "[3,4^2]");
        assert_eq!(build("prism-4").unwrap().expected_type.to_string(), "[4^3]");
        assert_eq!(build("antiprism-3").unwrap().expected_type.to_string(), "[3^4]");
        assert_eq!(build("antiprism-8").unwrap().map.vertex_count(), 16);
        assert!(are_isomorphic(&build("antiprism-3").unwrap().map, &build("octahedron").unwrap().map));
    }

    #[test]
    fn names() {
        assert_eq!(build("prism-2").unwrap_err(), CatalogError::NTooSmall(2));
        assert_eq!(build("prism-x").unwrap_err().kind(), "UnknownName");
        assert_eq!(build("prism-05").unwrap_err().kind(), "UnknownName");
        assert_eq!(build("rp2-cube").unwrap_err().kind(), "UnknownName");
        assert_eq!(build("hexahedron").unwrap_err().kind(), "UnknownName");
        assert_eq!(sphere_names(12).unwrap().len(), 37);
    }

    #[test]
    fn snub_and_pseudo() {
        let snub = build("snub-cube").unwrap();
        assert_eq!(snub.expected_type.to_string(), "[3^4,4]");
        let pseudo = build(PSEUDO).unwrap();
        assert_eq!(pseudo.map.vertex_count(), 24);
    }
}
