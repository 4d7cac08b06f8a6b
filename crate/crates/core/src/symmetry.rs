//! Isomorphism and symmetry through flags.
//!
//! A flag is a vertex, an edge through it and a face through that edge. Flag
//! `(f, i, s)` sits on the edge from position `i` to `i + 1` of face `f`, at
//! the first endpoint when `s = 0` and at the second when `s = 1`. Three
//! involutions change exactly one of vertex, edge and face. A breadth-first
//! walk over them from a starting flag gives a code that depends only on the
//! isomorphism class and the start; the least code over all starts is a
//! complete invariant, reflections included.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write as _;

use strum::IntoStaticStr;
use thiserror::Error;

use crate::map::{face_key, MapError, PolyhedralMap};

#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum SymmetryError {
    #[error("the quotient is not a polyhedral map: {0}")]
    NonPolyhedralQuotient(MapError),
    #[error("the permutation is not a free involution of the map")]
    NotFreeInvolution,
    #[error("the map already lies on the sphere")]
    AlreadySpherical,
    #[error("the quotient is not a projective plane (Euler characteristic {0})")]
    QuotientNotProjective(i64),
}

impl SymmetryError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

/// Flags of a map with their three involutions.
#[derive(Debug, Clone)]
pub struct Flags {
    /// Moves `[change vertex, change edge, change face]` per flag.
    moves: Vec<[u32; 3]>,
    vertex: Vec<u32>,
}

impl Flags {
    pub fn new(m: &PolyhedralMap) -> Self {
        let faces = m.faces();
        let mut offset = Vec::with_capacity(faces.len());
        let mut total = 0usize;
        for f in faces {
            offset.push(total);
            total += 2 * f.len();
        }
        // Position of each edge inside each of its faces.
        let mut position = vec![[usize::MAX; 2]; m.edge_count()];
        for (fi, f) in faces.iter().enumerate() {
            let n = f.len();
            for i in 0..n {
                let e = m.edge_id(f[i], f[(i + 1) % n]).expect("face edges exist");
                let slot = if m.edges()[e].faces[0] == fi { 0 } else { 1 };
                position[e][slot] = i;
            }
        }
        let mut moves = vec![[0u32; 3]; total];
        let mut vertex = vec![0u32; total];
        for (fi, f) in faces.iter().enumerate() {
            let n = f.len();
            for i in 0..n {
                let (a, b) = (f[i], f[(i + 1) % n]);
                let e = m.edge_id(a, b).expect("face edges exist");
                let edge = m.edges()[e];
                let (other, slot) = if edge.faces[0] == fi { (edge.faces[1], 1) } else { (edge.faces[0], 0) };
                let j = position[e][slot];
                let g = &faces[other];
                for s in 0..2 {
                    let id = offset[fi] + 2 * i + s;
                    let v = if s == 0 { a } else { b };
                    vertex[id] = v as u32;
                    moves[id][0] = (offset[fi] + 2 * i + 1 - s) as u32;
                    moves[id][1] = if s == 1 {
                        (offset[fi] + 2 * ((i + 1) % n)) as u32
                    } else {
                        (offset[fi] + 2 * ((i + n - 1) % n) + 1) as u32
                    };
                    let s2 = if g[j] == v { 0 } else { 1 };
                    moves[id][2] = (offset[other] + 2 * j + s2) as u32;
                }
            }
        }
        Flags { moves, vertex }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Breadth-first code from `start`, abandoned as soon as it exceeds `best`.
/// Returns the code and discovery order if it is not larger than `best`.
fn bfs_code(flags: &Flags, start: usize, best: Option<&[u32]>) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = flags.len();
    let mut label = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(3 * n);
    let mut state = Ordering::Equal;
    label[start] = 0;
    order.push(start as u32);
    let mut head = 0;
    while head < order.len() {
        let x = order[head] as usize;
        head += 1;
        for &y in &flags.moves[x] {
            let y = y as usize;
            if label[y] == u32::MAX {
                label[y] = order.len() as u32;
                order.push(y as u32);
            }
            let value = label[y];
            if state == Ordering::Equal {
                if let Some(b) = best {
                    state = value.cmp(&b[code.len()]);
                    if state == Ordering::Greater {
                        return None;
                    }
                }
            }
            code.push(value);
        }
    }
    Some((code, order))
}

/// Canonical form of a map up to isomorphism.
#[derive(Debug, Clone)]
pub struct CanonicalCertificate {
    code: Vec<u32>,
    vertex_count: usize,
    /// `relabel[v]` is the canonical index of vertex `v`.
    relabel: Vec<usize>,
}

impl PartialEq for CanonicalCertificate {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.code == other.code
    }
}

impl Eq for CanonicalCertificate {}

impl CanonicalCertificate {
    pub fn code(&self) -> &[u32] {
        &self.code
    }

    /// Canonical index of every vertex.
    pub fn relabeling(&self) -> &[usize] {
        &self.relabel
    }
}

pub fn canonical_certificate(m: &PolyhedralMap) -> CanonicalCertificate {
    let flags = Flags::new(m);
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    for start in 0..flags.len() {
        if let Some(found) = bfs_code(&flags, start, best.as_ref().map(|b| b.0.as_slice())) {
            if best.as_ref().is_none_or(|b| found.0 < b.0) {
                best = Some(found);
            }
        }
    }
    let (code, order) = best.expect("maps have flags");
    let mut relabel = vec![usize::MAX; m.vertex_count()];
    let mut next = 0;
    for &x in &order {
        let v = flags.vertex[x as usize] as usize;
        if relabel[v] == usize::MAX {
            relabel[v] = next;
            next += 1;
        }
    }
    CanonicalCertificate { code, vertex_count: m.vertex_count(), relabel }
}

fn same_counts(a: &PolyhedralMap, b: &PolyhedralMap) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && a.face_count() == b.face_count()
}

pub fn are_isomorphic(a: &PolyhedralMap, b: &PolyhedralMap) -> bool {
    same_counts(a, b) && canonical_certificate(a) == canonical_certificate(b)
}

/// A vertex bijection `a → b` carrying faces to faces, if one exists.
pub fn isomorphism(a: &PolyhedralMap, b: &PolyhedralMap) -> Option<Vec<usize>> {
    if !same_counts(a, b) {
        return None;
    }
    let (ca, cb) = (canonical_certificate(a), canonical_certificate(b));
    isomorphism_from_certificates(&ca, &cb)
}

/// Composes two canonical relabelings into a bijection `a → b`.
pub fn isomorphism_from_certificates(a: &CanonicalCertificate, b: &CanonicalCertificate) -> Option<Vec<usize>> {
    if a != b {
        return None;
    }
    let mut inverse_b = vec![0; b.vertex_count];
    for (v, &c) in b.relabel.iter().enumerate() {
        inverse_b[c] = v;
    }
    Some(a.relabel.iter().map(|&c| inverse_b[c]).collect())
}

/// Whether `perm` maps the faces of `a` exactly onto the faces of `b`.
pub fn verify_isomorphism(a: &PolyhedralMap, b: &PolyhedralMap, perm: &[usize]) -> bool {
    if perm.len() != a.vertex_count() || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    let mapped: Vec<Vec<usize>> = a.faces().iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
    let mut keys: Vec<Vec<usize>> = mapped.iter().map(|f| face_key(f)).collect();
    keys.sort();
    keys == b.face_set()
}

#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    /// Vertex permutations, identity first, sorted.
    pub elements: Vec<Vec<usize>>,
    /// Vertex orbits, each sorted, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.orbits.len() == 1
    }
}

/// Extends `0 ↦ target` to a flag automorphism, if possible.
fn extend_flag_map(flags: &Flags, target: usize) -> Option<Vec<u32>> {
    let n = flags.len();
    let mut image = vec![u32::MAX; n];
    image[0] = target as u32;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let fx = image[x] as usize;
        for k in 0..3 {
            let y = flags.moves[x][k] as usize;
            let fy = flags.moves[fx][k];
            if image[y] == u32::MAX {
                image[y] = fy;
                stack.push(y);
            } else if image[y] != fy {
                return None;
            }
        }
    }
    Some(image)
}

pub fn automorphism_group(m: &PolyhedralMap) -> AutomorphismGroup {
    let flags = Flags::new(m);
    let mut elements: Vec<Vec<usize>> = (0..flags.len())
        .filter_map(|t| extend_flag_map(&flags, t))
        .map(|image| {
            let mut perm = vec![0usize; m.vertex_count()];
            for (x, &fx) in image.iter().enumerate() {
                perm[flags.vertex[x] as usize] = flags.vertex[fx as usize] as usize;
            }
            perm
        })
        .collect();
    elements.sort();
    elements.dedup();
    let orbits = orbits_of(m.vertex_count(), &elements);
    AutomorphismGroup { elements, orbits }
}

fn orbits_of(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for v in 0..n {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = perms.iter().map(|p| p[v]).collect();
        orbit.push(v);
        orbit.sort_unstable();
        orbit.dedup();
        for &w in &orbit {
            orbit_of[w] = orbits.len();
        }
        orbits.push(orbit);
    }
    orbits
}

pub fn is_vertex_transitive(m: &PolyhedralMap) -> bool {
    automorphism_group(m).is_vertex_transitive()
}

/// Whether `perm` is an automorphism of order two fixing no vertex, no edge
/// and no face.
pub fn is_free_involution(m: &PolyhedralMap, perm: &[usize]) -> bool {
    if perm.len() != m.vertex_count() || !verify_isomorphism(m, m, perm) {
        return false;
    }
    if (0..perm.len()).any(|v| perm[v] == v || perm[perm[v]] != v) {
        return false;
    }
    if m.edges().iter().any(|e| {
        let (u, v) = e.ends;
        (perm[u], perm[v]) == (v, u)
    }) {
        return false;
    }
    let keys: HashSet<Vec<usize>> = m.faces().iter().map(|f| face_key(f)).collect();
    debug_assert_eq!(keys.len(), m.face_count());
    !m.faces().iter().any(|f| {
        let image: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
        face_key(&image) == face_key(f)
    })
}

/// All automorphisms acting freely as involutions on vertices, edges and
/// faces.
pub fn free_involutions(m: &PolyhedralMap) -> Vec<Vec<usize>> {
    automorphism_group(m).elements.into_iter().filter(|p| is_free_involution(m, p)).collect()
}

/// Identifies each cell with its image under `sigma`.
pub fn quotient(m: &PolyhedralMap, sigma: &[usize]) -> Result<PolyhedralMap, SymmetryError> {
    if !is_free_involution(m, sigma) {
        return Err(SymmetryError::NotFreeInvolution);
    }
    let mut id = vec![usize::MAX; m.vertex_count()];
    let mut next = 0;
    for v in 0..m.vertex_count() {
        if id[v] == usize::MAX {
            id[v] = next;
            id[sigma[v]] = next;
            next += 1;
        }
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        m.faces().iter().enumerate().map(|(i, f)| (face_key(f), i)).collect();
    let mut faces = Vec::with_capacity(m.face_count() / 2);
    for (i, f) in m.faces().iter().enumerate() {
        let image: Vec<usize> = f.iter().map(|&v| sigma[v]).collect();
        if i < index[&face_key(&image)] {
            faces.push(f.iter().map(|&v| id[v]).collect());
        }
    }
    let q = PolyhedralMap::new(next, faces).map_err(SymmetryError::NonPolyhedralQuotient)?;
    if q.euler_characteristic() != 1 {
        return Err(SymmetryError::QuotientNotProjective(q.euler_characteristic()));
    }
    Ok(q)
}

/// Orientation double cover of a projective-plane map together with its deck
/// involution. Vertex `v` lifts to `v` and `v + n`.
pub fn double_cover(y: &PolyhedralMap) -> Result<(PolyhedralMap, Vec<usize>), SymmetryError> {
    if y.euler_characteristic() != 1 {
        return Err(SymmetryError::AlreadySpherical);
    }
    let n = y.vertex_count();
    // Sign of face f at its vertex v: does f run along the reference rotation?
    let sign = |f: usize, v: usize| -> bool {
        let cycle = y.face_cycle(v);
        let d = cycle.degree();
        let k = cycle.faces.iter().position(|&g| g == f).expect("face lies around its vertex");
        let face = y.face(f);
        let i = face.iter().position(|&w| w == v).expect("vertex lies on face");
        face[(i + face.len() - 1) % face.len()] == cycle.neighbors[k] && face[(i + 1) % face.len()] == cycle.neighbors[(k + 1) % d]
    };
    let lift = |v: usize, positive: bool| if positive { v } else { v + n };
    let mut faces = Vec::with_capacity(2 * y.face_count());
    for (f, face) in y.faces().iter().enumerate() {
        faces.push(face.iter().map(|&v| lift(v, sign(f, v))).collect::<Vec<_>>());
    }
    for (f, face) in y.faces().iter().enumerate() {
        faces.push(face.iter().rev().map(|&v| lift(v, !sign(f, v))).collect::<Vec<_>>());
    }
    let cover = PolyhedralMap::new(2 * n, faces).map_err(SymmetryError::NonPolyhedralQuotient)?;
    let deck = (0..2 * n).map(|v| (v + n) % (2 * n)).collect();
    Ok((cover, deck))
}

/// Cycle notation with fixed points omitted; `()` for the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut v = start;
        let mut first = true;
        while !seen[v] {
            seen[v] = true;
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
            first = false;
            v = perm[v];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> PolyhedralMap {
        PolyhedralMap::from_faces(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn cube() -> PolyhedralMap {
        PolyhedralMap::from_faces(vec![
            vec![0, 1, 2, 3],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ])
        .unwrap()
    }

    #[test]
    fn flag_moves_are_fixed_point_free_involutions() {
        let c = cube();
        let flags = Flags::new(&c);
        assert_eq!(flags.len(), 4 * c.edge_count());
        for x in 0..flags.len() {
            for k in 0..3 {
                let y = flags.moves[x][k] as usize;
                assert_ne!(x, y);
                assert_eq!(flags.moves[y][k] as usize, x);
            }
            // Changing the face keeps the vertex; changing the edge keeps it too.
            assert_eq!(flags.vertex[x], flags.vertex[flags.moves[x][1] as usize]);
            assert_eq!(flags.vertex[x], flags.vertex[flags.moves[x][2] as usize]);
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphism_group(&tetra()).order(), 24);
        let g = automorphism_group(&cube());
        assert_eq!(g.order(), 48);
        assert!(g.is_vertex_transitive());
        assert!(free_involutions(&tetra()).is_empty());
        assert_eq!(free_involutions(&cube()).len(), 1);
    }

    #[test]
    fn certificates_ignore_labels() {
        let c = cube();
        let perm = vec![5, 3, 7, 0, 2, 6, 1, 4];
        let d = c.relabeled(&perm).unwrap();
        assert_eq!(canonical_certificate(&c), canonical_certificate(&d));
        let w = isomorphism(&c, &d).unwrap();
        assert!(verify_isomorphism(&c, &d, &w));
        assert!(!are_isomorphic(&c, &tetra()));
    }

    #[test]
    fn cube_quotient_is_not_polyhedral() {
        let c = cube();
        let sigma = free_involutions(&c).remove(0);
        assert_eq!(quotient(&c, &sigma).unwrap_err().kind(), "NonPolyhedralQuotient");
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_notation(&[0, 1, 2]), "()");
        assert_eq!(cycle_notation(&[3, 2, 1, 5, 4, 0]), "(0 3 5)(1 2)");
    }
}
