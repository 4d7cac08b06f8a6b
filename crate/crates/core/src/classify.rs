//! Recognition of sphere maps: reduces a semi-equivelar map through the
//! inverse operators until it reaches a Platonic solid, a prism or an
//! antiprism, then names it and produces an explicit isomorphism.

use std::fmt;

use strum::IntoStaticStr;
use thiserror::Error;

use crate::catalog::{self, CatalogEntry, CENTRALLY_SYMMETRIC};
use crate::io::write_map;
use crate::map::PolyhedralMap;
use crate::operators::{inverse_rectification, inverse_truncation, remove_deep_blue};
use crate::symmetry::{canonical_certificate, cycle_notation, double_cover, isomorphism, verify_isomorphism};
use crate::vtype::{semi_equivelar_type, Family, NotSemiEquivelar, VertexType};

#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum ClassifyError {
    #[error("map has Euler characteristic {0}, not 2")]
    WrongSphere(i64),
    #[error("map has Euler characteristic {0}, not 1")]
    WrongProjectivePlane(i64),
    #[error(transparent)]
    NotSemiEquivelar(#[from] NotSemiEquivelar),
    #[error("{op} does not apply: {reason}")]
    WrongShape { op: &'static str, reason: String },
    #[error("classification violated: {reason}\n{map}")]
    ClassificationViolation { reason: String, map: String },
}

impl ClassifyError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

fn violation(m: &PolyhedralMap, reason: impl Into<String>) -> ClassifyError {
    ClassifyError::ClassificationViolation { reason: reason.into(), map: write_map(m) }
}

/// Numbers of squares sharing an edge with exactly 2, 3 and 4 other squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareTypeCounts {
    pub s2: usize,
    pub s3: usize,
    pub s4: usize,
}

/// Square types of a 24-vertex map of type `[3,4^3]`.
pub fn square_type_counts(m: &PolyhedralMap) -> Result<SquareTypeCounts, ClassifyError> {
    const OP: &str = "square type count";
    let t = semi_equivelar_type(m)?;
    if t.to_string() != "[3,4^3]" || m.vertex_count() != 24 {
        return Err(ClassifyError::WrongShape { op: OP, reason: format!("{t} on {} vertices", m.vertex_count()) });
    }
    let mut counts = SquareTypeCounts { s2: 0, s3: 0, s4: 0 };
    for f in 0..m.face_count() {
        let s = m.face(f);
        if s.len() != 4 {
            continue;
        }
        let squares = (0..4)
            .filter(|&k| m.face(m.opposite_face(f, s[k], s[(k + 1) % 4]).expect("two sides")).len() == 4)
            .count();
        match squares {
            2 => counts.s2 += 1,
            3 => counts.s3 += 1,
            4 => counts.s4 += 1,
            other => {
                return Err(ClassifyError::WrongShape { op: OP, reason: format!("square {f} meets {other} squares") })
            }
        }
    }
    Ok(counts)
}

/// A catalog name with a vertex bijection onto the catalog map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    /// `witness[v]` is the catalog vertex matched with input vertex `v`.
    pub witness: Vec<usize>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "name={} witness={}", self.name, cycle_notation(&self.witness))
    }
}

fn regular_name(t: &VertexType) -> Option<&'static str> {
    Some(match t.sizes() {
        [3, 3, 3] => "tetrahedron",
        [3, 3, 3, 3] => "octahedron",
        [4, 4, 4] => "cube",
        [3, 3, 3, 3, 3] => "icosahedron",
        [5, 5, 5] => "dodecahedron",
        _ => return None,
    })
}

fn truncated_name(base: &str) -> Option<&'static str> {
    Some(match base {
        "tetrahedron" => "truncated-tetrahedron",
        "cube" => "truncated-cube",
        "octahedron" => "truncated-octahedron",
        "dodecahedron" => "truncated-dodecahedron",
        "icosahedron" => "truncated-icosahedron",
        "cuboctahedron" => "great-rhombicuboctahedron",
        "icosidodecahedron" => "great-rhombicosidodecahedron",
        _ => return None,
    })
}

fn rectified_name(base: &str) -> Option<&'static str> {
    Some(match base {
        "cube" => "cuboctahedron",
        "dodecahedron" => "icosidodecahedron",
        "icosidodecahedron" => "small-rhombicosidodecahedron",
        _ => return None,
    })
}

fn snub_name(base: &str) -> Option<&'static str> {
    Some(match base {
        "small-rhombicuboctahedron" => "snub-cube",
        "small-rhombicosidodecahedron" => "snub-dodecahedron",
        _ => return None,
    })
}

/// Name of the catalog entry `m` reduces to, without the final isomorphism.
fn reduce(m: &PolyhedralMap) -> Result<String, ClassifyError> {
    if m.euler_characteristic() != 2 {
        return Err(ClassifyError::WrongSphere(m.euler_characteristic()));
    }
    let t = semi_equivelar_type(m)?;
    match t.predicted_vertex_count() {
        Ok(n) if n as usize == m.vertex_count() => {}
        Ok(n) => return Err(violation(m, format!("type {t} forces {n} vertices"))),
        Err(e) => return Err(violation(m, format!("type {t}: {e}"))),
    }
    if let Some(name) = regular_name(&t) {
        return Ok(name.to_string());
    }
    if let Some(n) = Family::Prism.parameter(&t) {
        return Ok(format!("prism-{n}"));
    }
    if t.sizes() == [3, 4, 4] {
        return Ok("prism-3".to_string());
    }
    if let Some(n) = Family::Antiprism.parameter(&t) {
        return Ok(format!("antiprism-{n}"));
    }
    let via = |base: Result<PolyhedralMap, crate::operators::OpError>,
               rename: fn(&str) -> Option<&'static str>,
               step: &str|
     -> Result<String, ClassifyError> {
        let base = base.map_err(|e| violation(m, format!("{step}: {e}")))?;
        let inner = reduce(&base)?;
        rename(&inner).map(str::to_string).ok_or_else(|| violation(m, format!("{step} gave {inner}")))
    };
    match *t.sizes() {
        [a, b, c] if b == c && a != b && b % 2 == 0 && b >= 6 => via(inverse_truncation(m), truncated_name, "inverse truncation"),
        [4, b, c] if b != c && b % 2 == 0 && c % 2 == 0 => via(inverse_truncation(m), truncated_name, "inverse truncation"),
        [a, b, c, d] if a == c && b == d && a < b => via(inverse_rectification(m), rectified_name, "inverse rectification"),
        [3, 4, 5, 4] => via(inverse_rectification(m), rectified_name, "inverse rectification"),
        [3, 3, 3, 3, _] => via(remove_deep_blue(m), snub_name, "deep-blue removal"),
        [3, 4, 4, 4] => match square_type_counts(m)? {
            SquareTypeCounts { s2: 12, s3: 0, s4: 6 } => Ok("small-rhombicuboctahedron".to_string()),
            SquareTypeCounts { s2: 8, s3: 8, s4: 2 } => Ok(catalog::PSEUDO.to_string()),
            c => Err(violation(m, format!("square types {c:?}"))),
        },
        _ => Err(violation(m, format!("no reduction for type {t}"))),
    }
}

fn matched(m: &PolyhedralMap, entry: &CatalogEntry) -> Result<Verdict, ClassifyError> {
    let witness = isomorphism(m, &entry.map)
        .ok_or_else(|| violation(m, format!("reduced to {} but is not isomorphic to it", entry.name)))?;
    if !verify_isomorphism(m, &entry.map, &witness) {
        return Err(violation(m, format!("witness for {} does not verify", entry.name)));
    }
    Ok(Verdict { name: entry.name.clone(), witness })
}

fn entry_for(m: &PolyhedralMap, name: &str) -> Result<CatalogEntry, ClassifyError> {
    catalog::build(name).map_err(|e| violation(m, e.to_string()))
}

/// Names the sphere map `m` and returns a verified isomorphism onto the
/// catalog entry.
pub fn identify(m: &PolyhedralMap) -> Result<Verdict, ClassifyError> {
    let name = reduce(m)?;
    matched(m, &entry_for(m, &name)?)
}

/// Cross-check: compares `m` directly against every catalog entry with the
/// same vertex count and type.
pub fn identify_direct(m: &PolyhedralMap) -> Result<Verdict, ClassifyError> {
    if m.euler_characteristic() != 2 {
        return Err(ClassifyError::WrongSphere(m.euler_characteristic()));
    }
    let t = semi_equivelar_type(m)?;
    let largest = t.sizes().iter().copied().max().unwrap_or(3).max(12);
    let names = catalog::sphere_names(largest).map_err(|e| violation(m, e.to_string()))?;
    let cert = canonical_certificate(m);
    for name in names {
        let entry = entry_for(m, &name)?;
        if entry.expected_type == t && entry.expected_count == m.vertex_count() && canonical_certificate(&entry.map) == cert {
            return matched(m, &entry);
        }
    }
    Err(violation(m, format!("no catalog entry of type {t}")))
}

/// Names a projective-plane map through its double cover.
pub fn identify_projective(y: &PolyhedralMap) -> Result<Verdict, ClassifyError> {
    if y.euler_characteristic() != 1 {
        return Err(ClassifyError::WrongProjectivePlane(y.euler_characteristic()));
    }
    semi_equivelar_type(y)?;
    let (cover, _) = double_cover(y).map_err(|e| violation(y, e.to_string()))?;
    let base = reduce(&cover)?;
    if !CENTRALLY_SYMMETRIC.contains(&base.as_str()) {
        return Err(violation(y, format!("double cover is {base}, which has no polyhedral quotient")));
    }
    matched(y, &entry_for(y, &format!("rp2-{base}"))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_small_solids() {
        for name in ["tetrahedron", "cube", "prism-3", "prism-7", "antiprism-5", "truncated-tetrahedron", "cuboctahedron"] {
            let e = catalog::build(name).unwrap();
            let v = identify(&e.map).unwrap();
            assert_eq!(v.name, name);
            assert!(v.witness.iter().enumerate().all(|(i, &w)| i == w) || verify_isomorphism(&e.map, &e.map, &v.witness));
        }
    }

    #[test]
    fn refuses_non_sphere_and_mixed() {
        let rp2 = catalog::build("rp2-icosahedron").unwrap();
        assert_eq!(identify(&rp2.map).unwrap_err().kind(), "WrongSphere");
        assert_eq!(identify_projective(&rp2.map).unwrap().name, "rp2-icosahedron");
        // Cube with one corner cut off.
        let cut = PolyhedralMap::from_faces(vec![
            vec![0, 1, 2, 3, 8],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4, 9],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 8, 9, 4, 7],
            vec![0, 8, 9],
        ])
        .unwrap();
        assert_eq!(cut.vertex_count(), 10);
        assert_eq!(identify(&cut).unwrap_err().kind(), "NotSemiEquivelar");
    }
}
