//! Validated polyhedral maps on closed surfaces.
//!
//! A [`PolyhedralMap`] is built from its face list alone. Edges, the cyclic
//! order of faces around every vertex and an orientation (when one exists) are
//! derived at construction time and never change afterwards.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use strum::IntoStaticStr;
use thiserror::Error;

/// Reasons a face list does not describe a polyhedral map on S² or RP².
#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum MapError {
    #[error("face list is empty")]
    Empty,
    #[error("face {face} has {len} vertices, at least 3 are required")]
    FaceTooSmall { face: usize, len: usize },
    #[error("face {face} uses vertex {vertex}, but the map has {vertex_count} vertices")]
    VertexOutOfRange { face: usize, vertex: usize, vertex_count: usize },
    #[error("vertex {vertex} lies on no face (vertex ids must be dense)")]
    UnusedVertex { vertex: usize },
    #[error("face {face} visits vertex {vertex} more than once")]
    RepeatedVertexInFace { face: usize, vertex: usize },
    #[error("edge {}-{} lies in {faces} face slot(s) covering {distinct} distinct face(s); exactly two are required", edge.0, edge.1)]
    EdgeDegreeNotTwo { edge: (usize, usize), faces: usize, distinct: usize },
    #[error("faces {first} and {second} meet in {shared:?}, which is neither a vertex nor an edge")]
    NonPolyhedralIntersection { first: usize, second: usize, shared: Vec<usize> },
    #[error("the faces around vertex {vertex} do not form a single cycle")]
    PinchedVertex { vertex: usize },
    #[error("the underlying graph is disconnected")]
    Disconnected,
    #[error("Euler characteristic {chi} is neither 2 (sphere) nor 1 (projective plane)")]
    UnsupportedSurface { chi: i64 },
}

impl MapError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

/// An edge together with the two faces containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Endpoints, smaller id first.
    pub ends: (usize, usize),
    /// Incident faces, smaller index first.
    pub faces: [usize; 2],
}

/// Cyclic order of the faces around one vertex.
///
/// Face `faces[k]` lies between the edges towards `neighbors[k]` and
/// `neighbors[(k + 1) % d]`; consecutive faces share the edge between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCycle {
    pub vertex: usize,
    pub faces: Vec<usize>,
    pub neighbors: Vec<usize>,
}

impl FaceCycle {
    pub fn degree(&self) -> usize {
        self.faces.len()
    }
}

/// Closed surfaces supported by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    Sphere,
    ProjectivePlane,
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Sphere => f.write_str("S2"),
            Surface::ProjectivePlane => f.write_str("RP2"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PolyhedralMap {
    vertex_count: usize,
    faces: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<(usize, usize), usize>,
    cycles: Vec<FaceCycle>,
    /// Per-face flag: keep the stored order (`true`) or reverse it to obtain a
    /// coherent orientation. `None` for non-orientable surfaces.
    orientation: Option<Vec<bool>>,
    euler: i64,
}

/// Canonical key of a face up to rotation and reversal.
pub(crate) fn face_key(face: &[usize]) -> Vec<usize> {
    let n = face.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        for dir in [1isize, -1] {
            let seq: Vec<usize> = (0..n)
                .map(|i| face[(start as isize + dir * i as isize).rem_euclid(n as isize) as usize])
                .collect();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    best.unwrap_or_default()
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl PolyhedralMap {
    /// Builds and validates a map. The number of vertices is one more than the
    /// largest id used; ids must be dense.
    pub fn from_faces(faces: Vec<Vec<usize>>) -> Result<Self, MapError> {
        let vertex_count = faces.iter().flatten().max().map_or(0, |&m| m + 1);
        Self::new(vertex_count, faces)
    }

    /// Builds and validates a map on `vertex_count` vertices.
    pub fn new(vertex_count: usize, faces: Vec<Vec<usize>>) -> Result<Self, MapError> {
        if faces.is_empty() || vertex_count == 0 {
            return Err(MapError::Empty);
        }
        let mut used = vec![false; vertex_count];
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(MapError::FaceTooSmall { face: fi, len: face.len() });
            }
            for &v in face {
                if v >= vertex_count {
                    return Err(MapError::VertexOutOfRange { face: fi, vertex: v, vertex_count });
                }
            }
            let mut seen = face.clone();
            seen.sort_unstable();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(MapError::RepeatedVertexInFace { face: fi, vertex: w[0] });
            }
            for &v in face {
                used[v] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(MapError::UnusedVertex { vertex: v });
        }

        // Edge incidences. Faces that coincide as polygons count once.
        let keys: Vec<Vec<usize>> = faces.iter().map(|f| face_key(f)).collect();
        let mut slots: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (fi, face) in faces.iter().enumerate() {
            for i in 0..face.len() {
                let e = ordered(face[i], face[(i + 1) % face.len()]);
                slots.entry(e).or_default().push(fi);
            }
        }
        let mut edge_list: Vec<((usize, usize), Vec<usize>)> = slots.into_iter().collect();
        edge_list.sort_unstable();
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut edge_lookup = HashMap::with_capacity(edge_list.len());
        for (ends, fs) in edge_list {
            let mut distinct: Vec<&Vec<usize>> = fs.iter().map(|&f| &keys[f]).collect();
            distinct.sort();
            distinct.dedup();
            if fs.len() != 2 || distinct.len() != 2 {
                return Err(MapError::EdgeDegreeNotTwo { edge: ends, faces: fs.len(), distinct: distinct.len() });
            }
            edge_lookup.insert(ends, edges.len());
            edges.push(Edge { ends, faces: [fs[0].min(fs[1]), fs[0].max(fs[1])] });
        }

        // Faces around each vertex, with the two neighbours each face offers.
        let mut corners: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vertex_count];
        for (fi, face) in faces.iter().enumerate() {
            let n = face.len();
            for i in 0..n {
                corners[face[i]].push((fi, face[(i + n - 1) % n], face[(i + 1) % n]));
            }
        }
        let mut cycles = Vec::with_capacity(vertex_count);
        for (v, around) in corners.iter().enumerate() {
            cycles.push(walk_cycle(v, around, &edges, &edge_lookup)?);
        }

        // Connectivity over face edges.
        let mut seen = vec![false; vertex_count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &cycles[v].neighbors {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(MapError::Disconnected);
        }

        check_polyhedral(&faces, &cycles, &edge_lookup)?;

        let euler = vertex_count as i64 - edges.len() as i64 + faces.len() as i64;
        if euler != 1 && euler != 2 {
            return Err(MapError::UnsupportedSurface { chi: euler });
        }
        let orientation = orient(&faces, &edges);
        Ok(PolyhedralMap { vertex_count, faces, edges, edge_lookup, cycles, orientation, euler })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Index of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_lookup.get(&ordered(u, v)).copied()
    }

    /// f₀ − f₁ + f₂.
    pub fn euler_characteristic(&self) -> i64 {
        self.euler
    }

    pub fn surface(&self) -> Surface {
        if self.euler == 2 {
            Surface::Sphere
        } else {
            Surface::ProjectivePlane
        }
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation.is_some()
    }

    /// Faces rewritten so that every edge is traversed in opposite directions
    /// by its two faces. `None` on non-orientable surfaces.
    pub fn oriented_faces(&self) -> Option<Vec<Vec<usize>>> {
        let signs = self.orientation.as_ref()?;
        Some(
            self.faces
                .iter()
                .zip(signs)
                .map(|(f, &keep)| if keep { f.clone() } else { f.iter().rev().copied().collect() })
                .collect(),
        )
    }

    pub fn face_cycle(&self, v: usize) -> &FaceCycle {
        &self.cycles[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.cycles[v].degree()
    }

    /// Neighbours of `v` in rotation order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.cycles[v].neighbors
    }

    /// Sizes of the faces around `v`, in cyclic order.
    pub fn face_sizes_around(&self, v: usize) -> Vec<usize> {
        self.cycles[v].faces.iter().map(|&f| self.faces[f].len()).collect()
    }

    /// The face on the other side of edge `{u, v}` from face `f`.
    pub fn opposite_face(&self, f: usize, u: usize, v: usize) -> Option<usize> {
        let e = &self.edges[self.edge_id(u, v)?];
        match e.faces {
            [a, b] if a == f => Some(b),
            [a, b] if b == f => Some(a),
            _ => None,
        }
    }

    /// Applies a vertex relabelling (`perm[old] = new`) and rebuilds.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, MapError> {
        let faces = self.faces.iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        PolyhedralMap::new(self.vertex_count, faces)
    }

    /// The set of faces as canonical keys, sorted; equal for maps with the
    /// same labelled face set regardless of face order or face rotation.
    pub fn face_set(&self) -> Vec<Vec<usize>> {
        let mut keys: Vec<Vec<usize>> = self.faces.iter().map(|f| face_key(f)).collect();
        keys.sort();
        keys
    }
}

impl PartialEq for PolyhedralMap {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.faces == other.faces
    }
}

impl Eq for PolyhedralMap {}

fn walk_cycle(
    v: usize,
    around: &[(usize, usize, usize)],
    edges: &[Edge],
    lookup: &HashMap<(usize, usize), usize>,
) -> Result<FaceCycle, MapError> {
    let d = around.len();
    let pinched = MapError::PinchedVertex { vertex: v };
    // around[k] = (face, predecessor, successor) of v in that face.
    let (f0, a0, b0) = around[0];
    let mut faces = vec![f0];
    let mut neighbors = vec![a0];
    let mut current = f0;
    let mut exit = b0;
    while exit != a0 {
        neighbors.push(exit);
        let e = &edges[lookup[&ordered(v, exit)]];
        let next = if e.faces[0] == current { e.faces[1] } else { e.faces[0] };
        let &(nf, p, s) = around.iter().find(|c| c.0 == next).ok_or_else(|| pinched.clone())?;
        let out = if p == exit { s } else { p };
        faces.push(nf);
        current = nf;
        exit = out;
        if faces.len() > d {
            return Err(pinched);
        }
    }
    if faces.len() != d {
        return Err(pinched);
    }
    Ok(FaceCycle { vertex: v, faces, neighbors })
}

fn check_polyhedral(
    faces: &[Vec<usize>],
    cycles: &[FaceCycle],
    lookup: &HashMap<(usize, usize), usize>,
) -> Result<(), MapError> {
    let mut shared: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for c in cycles {
        for (i, &f) in c.faces.iter().enumerate() {
            for &g in &c.faces[i + 1..] {
                shared.entry(ordered(f, g)).or_default().push(c.vertex);
            }
        }
    }
    let consecutive = |face: &[usize], u: usize, v: usize| {
        let n = face.len();
        (0..n).any(|i| {
            let (a, b) = (face[i], face[(i + 1) % n]);
            (a == u && b == v) || (a == v && b == u)
        })
    };
    let mut pairs: Vec<_> = shared.into_iter().collect();
    pairs.sort_unstable();
    for ((f, g), mut verts) in pairs {
        verts.sort_unstable();
        let ok = match verts.len() {
            1 => true,
            2 => {
                let (u, v) = (verts[0], verts[1]);
                lookup.contains_key(&(u, v)) && consecutive(&faces[f], u, v) && consecutive(&faces[g], u, v)
            }
            _ => false,
        };
        if !ok {
            return Err(MapError::NonPolyhedralIntersection { first: f, second: g, shared: verts });
        }
    }
    Ok(())
}

/// Propagates face orientations across edges; `None` when the surface is not
/// orientable.
fn orient(faces: &[Vec<usize>], edges: &[Edge]) -> Option<Vec<bool>> {
    let directed = |face: &[usize], keep: bool, u: usize, v: usize| {
        let n = face.len();
        (0..n).any(|i| {
            let (a, b) = (face[i], face[(i + 1) % n]);
            if keep {
                a == u && b == v
            } else {
                a == v && b == u
            }
        })
    };
    let mut adjacency: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); faces.len()];
    for e in edges {
        let (u, v) = e.ends;
        adjacency[e.faces[0]].push((e.faces[1], u, v));
        adjacency[e.faces[1]].push((e.faces[0], u, v));
    }
    let mut sign: Vec<Option<bool>> = vec![None; faces.len()];
    sign[0] = Some(true);
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let sf = sign[f]?;
        for &(g, u, v) in &adjacency[f] {
            // f runs u->v under its sign; g must then run v->u.
            let f_forward = directed(&faces[f], sf, u, v);
            let want = if f_forward { directed(&faces[g], true, v, u) } else { directed(&faces[g], true, u, v) };
            match sign[g] {
                None => {
                    sign[g] = Some(want);
                    queue.push_back(g);
                }
                Some(s) if s != want => return None,
                Some(_) => {}
            }
        }
    }
    sign.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
    }

    pub(crate) fn octa() -> Vec<Vec<usize>> {
        [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [1, 2, 5], [2, 3, 5], [3, 4, 5], [4, 1, 5]]
            .iter()
            .map(|f| f.to_vec())
            .collect()
    }

    fn cube() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2, 3],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ]
    }

    /// The 6-vertex triangulation of RP² (hemi-icosahedron).
    fn rp2_6() -> Vec<Vec<usize>> {
        [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect()
    }

    #[test]
    fn tetrahedron_is_a_sphere() {
        let m = PolyhedralMap::from_faces(tetra()).unwrap();
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (4, 6, 4));
        assert!(m.is_orientable());
    }

    #[test]
    fn doubled_triangle_is_rejected() {
        let err = PolyhedralMap::from_faces(vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, MapError::EdgeDegreeNotTwo { .. }), "{err:?}");
        // Rotated and reversed copies are the same polygon.
        let err = PolyhedralMap::from_faces(vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap_err();
        assert_eq!(err.kind(), "EdgeDegreeNotTwo");
    }

    #[test]
    fn octahedron_and_cube() {
        let m = PolyhedralMap::from_faces(octa()).unwrap();
        assert_eq!(m.euler_characteristic(), 2);
        assert!((0..6).all(|v| m.degree(v) == 4));
        let c = PolyhedralMap::from_faces(cube()).unwrap();
        assert_eq!(c.euler_characteristic(), 2);
        for v in 0..8 {
            assert_eq!(c.face_sizes_around(v), vec![4, 4, 4]);
        }
    }

    #[test]
    fn projective_plane_has_euler_one() {
        let m = PolyhedralMap::from_faces(rp2_6()).unwrap();
        assert_eq!(m.euler_characteristic(), 1);
        assert_eq!(m.surface(), Surface::ProjectivePlane);
        assert!(!m.is_orientable());
        assert!(m.oriented_faces().is_none());
    }

    #[test]
    fn error_paths() {
        assert_eq!(PolyhedralMap::from_faces(vec![]).unwrap_err(), MapError::Empty);
        let e = PolyhedralMap::from_faces(vec![vec![0, 1, 1], vec![0, 1, 2]]).unwrap_err();
        assert_eq!(e.kind(), "RepeatedVertexInFace");
        let e = PolyhedralMap::new(5, tetra()).unwrap_err();
        assert_eq!(e, MapError::UnusedVertex { vertex: 4 });
        let e = PolyhedralMap::new(3, tetra()).unwrap_err();
        assert_eq!(e.kind(), "VertexOutOfRange");
        // Two tetrahedra glued at a vertex: the link at 0 is two cycles.
        let mut pinched = tetra();
        pinched.extend([vec![0, 4, 5], vec![0, 4, 6], vec![0, 5, 6], vec![4, 5, 6]]);
        assert_eq!(PolyhedralMap::from_faces(pinched).unwrap_err(), MapError::PinchedVertex { vertex: 0 });
        // Two disjoint tetrahedra.
        let mut two = tetra();
        two.extend(tetra().into_iter().map(|f| f.into_iter().map(|v| v + 4).collect::<Vec<_>>()));
        assert_eq!(PolyhedralMap::from_faces(two).unwrap_err(), MapError::Disconnected);
        // Two squares closing into a "pillow" share four vertices.
        let pillow = vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]];
        assert!(PolyhedralMap::from_faces(pillow).is_err());
    }

    #[test]
    fn non_polyhedral_intersection_is_reported() {
        // Three quadrilaterals around two poles: a cell decomposition of the
        // sphere in which faces share three vertices.
        let faces = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 4], vec![0, 4, 2, 1]];
        let err = PolyhedralMap::from_faces(faces).unwrap_err();
        assert_eq!(err.kind(), "NonPolyhedralIntersection", "{err:?}");
    }

    #[test]
    fn face_cycles_are_consistent() {
        let m = PolyhedralMap::from_faces(cube()).unwrap();
        for v in 0..m.vertex_count() {
            let c = m.face_cycle(v);
            let d = c.degree();
            for k in 0..d {
                let (f, g) = (c.faces[k], c.faces[(k + 1) % d]);
                let w = c.neighbors[(k + 1) % d];
                let e = m.edges()[m.edge_id(v, w).unwrap()];
                assert_eq!(e.faces, [f.min(g), f.max(g)]);
            }
        }
    }

    #[test]
    fn oriented_faces_traverse_edges_oppositely() {
        let m = PolyhedralMap::from_faces(octa()).unwrap();
        let faces = m.oriented_faces().unwrap();
        let mut directed = std::collections::HashSet::new();
        for f in &faces {
            for i in 0..f.len() {
                assert!(directed.insert((f[i], f[(i + 1) % f.len()])));
            }
        }
        assert_eq!(directed.len(), 2 * m.edge_count());
    }
}
