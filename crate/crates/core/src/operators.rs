//! Map-to-map constructions: truncation, rectification, duality, their
//! inverses, and the diagonal surgeries relating snub solids to the
//! rhombi-solids.

use std::collections::{BTreeMap, HashMap, VecDeque};

use strum::IntoStaticStr;
use thiserror::Error;

use crate::map::{MapError, PolyhedralMap};
use crate::vtype::{semi_equivelar_type, VertexType};

#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum OpError {
    #[error("{op} does not apply: {reason}")]
    WrongShape { op: &'static str, reason: String },
    #[error("polygons {first} and {second} are joined more than once")]
    MultiEdgeDetected { first: usize, second: usize },
    #[error("{}-{} is not a diagonal of an eligible square", diagonal.0, diagonal.1)]
    NotEligibleSquare { diagonal: (usize, usize) },
    #[error("forced diagonals conflict at face {face}")]
    PropagationConflict { face: usize },
    #[error("result is not a valid map: {0}")]
    Map(#[from] MapError),
}

impl OpError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

fn wrong(op: &'static str, reason: impl Into<String>) -> OpError {
    OpError::WrongShape { op, reason: reason.into() }
}

fn typed(x: &PolyhedralMap, op: &'static str) -> Result<VertexType, OpError> {
    semi_equivelar_type(x).map_err(|e| wrong(op, e.to_string()))
}

/// Every vertex is cut off: each q-gon becomes a 2q-gon and each degree-d
/// vertex becomes a d-gon. Vertex `k` of the result is the k-th directed edge
/// `(i, j)` in lexicographic order; original faces come first, then one face
/// per original vertex.
pub fn truncate(x: &PolyhedralMap) -> Result<PolyhedralMap, OpError> {
    let mut directed: Vec<(usize, usize)> = x.edges().iter().flat_map(|e| [e.ends, (e.ends.1, e.ends.0)]).collect();
    directed.sort_unstable();
    let id: HashMap<(usize, usize), usize> = directed.iter().enumerate().map(|(k, &d)| (d, k)).collect();
    let mut faces = Vec::with_capacity(x.face_count() + x.vertex_count());
    for face in x.faces() {
        let q = face.len();
        let mut big = Vec::with_capacity(2 * q);
        for k in 0..q {
            let (a, b) = (face[k], face[(k + 1) % q]);
            big.push(id[&(a, b)]);
            big.push(id[&(b, a)]);
        }
        faces.push(big);
    }
    for v in 0..x.vertex_count() {
        faces.push(x.neighbors(v).iter().map(|&w| id[&(v, w)]).collect());
    }
    Ok(PolyhedralMap::new(directed.len(), faces)?)
}

/// Vertices become the edges of `x`; every face shrinks onto its edge
/// midpoints and every vertex becomes a face. Vertex `k` of the result is
/// edge `k` of `x`.
pub fn rectify(x: &PolyhedralMap) -> Result<PolyhedralMap, OpError> {
    let edge = |a: usize, b: usize| x.edge_id(a, b).expect("face edges exist");
    let mut faces = Vec::with_capacity(x.face_count() + x.vertex_count());
    for face in x.faces() {
        let q = face.len();
        faces.push((0..q).map(|k| edge(face[k], face[(k + 1) % q])).collect());
    }
    for v in 0..x.vertex_count() {
        faces.push(x.neighbors(v).iter().map(|&w| edge(v, w)).collect());
    }
    Ok(PolyhedralMap::new(x.edge_count(), faces)?)
}

/// Faces become vertices; the face-cycle at each vertex becomes a face.
pub fn dual(x: &PolyhedralMap) -> Result<PolyhedralMap, OpError> {
    let faces = (0..x.vertex_count()).map(|v| x.face_cycle(v).faces.clone()).collect();
    Ok(PolyhedralMap::new(x.face_count(), faces)?)
}

/// Face size of the polygons that truncation created from vertices: the
/// lone size `p` of `[p,(2q)^2]`, or the square of `[4,2p,2q]`.
fn truncation_node_size(t: &VertexType) -> Option<usize> {
    match *t.sizes() {
        [a, b, c] if b == c && a != b && b % 2 == 0 && b >= 6 => Some(a as usize),
        [4, b, c] if b != c && b % 2 == 0 && c % 2 == 0 && b >= 6 => Some(4),
        _ => None,
    }
}

/// Graph on the `size`-gons whose links are the edges lying in no `size`-gon.
/// The polygons must partition the vertices. Returns the polygons' face
/// indices, the owning polygon of every vertex, and the links in edge order.
pub fn polygon_adjacency(
    x: &PolyhedralMap,
    size: usize,
) -> Result<(Vec<usize>, Vec<usize>, Vec<(usize, usize)>), OpError> {
    const OP: &str = "polygon adjacency";
    let nodes: Vec<usize> = (0..x.face_count()).filter(|&f| x.face(f).len() == size).collect();
    let mut owner = vec![usize::MAX; x.vertex_count()];
    for (k, &f) in nodes.iter().enumerate() {
        for &v in x.face(f) {
            if owner[v] != usize::MAX {
                return Err(wrong(OP, format!("vertex {v} lies in two {size}-gons")));
            }
            owner[v] = k;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(wrong(OP, format!("vertex {v} lies in no {size}-gon")));
    }
    let mut links = Vec::new();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    for e in x.edges() {
        let (a, b) = (owner[e.ends.0], owner[e.ends.1]);
        let in_node = e.faces.iter().any(|&f| x.face(f).len() == size && owner[x.face(f)[0]] == a);
        if a == b {
            if in_node {
                continue;
            }
            return Err(OpError::MultiEdgeDetected { first: a, second: b });
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key, ()).is_some() {
            return Err(OpError::MultiEdgeDetected { first: key.0, second: key.1 });
        }
        links.push(key);
    }
    Ok((nodes, owner, links))
}

/// Contracts the polygons that truncation created back to vertices.
pub fn inverse_truncation(x: &PolyhedralMap) -> Result<PolyhedralMap, OpError> {
    const OP: &str = "inverse truncation";
    let t = typed(x, OP)?;
    let size = truncation_node_size(&t).ok_or_else(|| wrong(OP, format!("type {t} is not a truncation type")))?;
    let (nodes, owner, _) = polygon_adjacency(x, size)?;
    let mut faces = Vec::with_capacity(x.face_count() - nodes.len());
    for face in x.faces() {
        if face.len() == size {
            continue;
        }
        let n = face.len();
        // Align so that positions (0,1), (2,3), ... share a polygon.
        let shift = if owner[face[0]] == owner[face[1]] { 0 } else { 1 };
        let mut small = Vec::with_capacity(n / 2);
        for k in (0..n).step_by(2) {
            let (a, b) = (face[(k + shift) % n], face[(k + shift + 1) % n]);
            if owner[a] != owner[b] {
                return Err(wrong(OP, format!("face {face:?} does not alternate")));
            }
            small.push(owner[a]);
        }
        faces.push(small);
    }
    Ok(PolyhedralMap::new(nodes.len(), faces)?)
}

/// Two-colouring of the faces of a degree-4 map in which edge-adjacent faces
/// get different colours.
fn face_two_colouring(x: &PolyhedralMap, op: &'static str) -> Result<Vec<bool>, OpError> {
    if let Some(v) = (0..x.vertex_count()).find(|&v| x.degree(v) != 4) {
        return Err(wrong(op, format!("vertex {v} does not have degree 4")));
    }
    let mut colour: Vec<Option<bool>> = vec![None; x.face_count()];
    colour[0] = Some(false);
    let mut queue = VecDeque::from([0usize]);
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); x.face_count()];
    for e in x.edges() {
        adjacent[e.faces[0]].push(e.faces[1]);
        adjacent[e.faces[1]].push(e.faces[0]);
    }
    while let Some(f) = queue.pop_front() {
        let c = colour[f].expect("queued faces are coloured");
        for &g in &adjacent[f] {
            match colour[g] {
                None => {
                    colour[g] = Some(!c);
                    queue.push_back(g);
                }
                Some(d) if d == c => return Err(wrong(op, "faces are not two-colourable")),
                Some(_) => {}
            }
        }
    }
    Ok(colour.into_iter().map(|c| c.expect("face graph is connected")).collect())
}

/// Recovers `y` from `rectify(y)`, taking as vertices of `y` the colour class
/// whose faces all have one size (the smaller size if both classes qualify,
/// the class of face 0 on a tie).
pub fn inverse_rectification(x: &PolyhedralMap) -> Result<PolyhedralMap, OpError> {
    const OP: &str = "inverse rectification";
    let colour = face_two_colouring(x, OP)?;
    let class_size = |c: bool| {
        let mut sizes: Vec<usize> = (0..x.face_count()).filter(|&f| colour[f] == c).map(|f| x.face(f).len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.len() == 1 {
            Some(sizes[0])
        } else {
            None
        }
    };
    let node = match (class_size(colour[0]), class_size(!colour[0])) {
        (Some(a), Some(b)) if b < a => !colour[0],
        (Some(_), _) => colour[0],
        (None, Some(_)) => !colour[0],
        (None, None) => return Err(wrong(OP, "neither face class is uniform")),
    };
    rebuild_from_rectification(x, &colour, node)
}

/// As [`inverse_rectification`], with the vertices of `y` taken from the
/// colour class of `node_size`-gons.
pub fn inverse_rectification_by(x: &PolyhedralMap, node_size: usize) -> Result<PolyhedralMap, OpError> {
    const OP: &str = "inverse rectification";
    let colour = face_two_colouring(x, OP)?;
    let classes: Vec<bool> = [false, true]
        .into_iter()
        .filter(|&c| (0..x.face_count()).filter(|&f| colour[f] == c).all(|f| x.face(f).len() == node_size))
        .collect();
    let &node = classes.first().ok_or_else(|| wrong(OP, format!("no face class consists of {node_size}-gons")))?;
    rebuild_from_rectification(x, &colour, node)
}

fn rebuild_from_rectification(x: &PolyhedralMap, colour: &[bool], node: bool) -> Result<PolyhedralMap, OpError> {
    let nodes: Vec<usize> = (0..x.face_count()).filter(|&f| colour[f] == node).collect();
    let index: HashMap<usize, usize> = nodes.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    let mut faces = Vec::new();
    for (f, face) in x.faces().iter().enumerate() {
        if colour[f] == node {
            continue;
        }
        let n = face.len();
        let small = (0..n)
            .map(|k| {
                let g = x.opposite_face(f, face[k], face[(k + 1) % n]).expect("face edges have two sides");
                index[&g]
            })
            .collect();
        faces.push(small);
    }
    Ok(PolyhedralMap::new(nodes.len(), faces)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, IntoStaticStr)]
pub enum EdgeColor {
    /// Between a triangle and the large face.
    Red,
    /// Between two triangles.
    Blue,
    /// A blue edge whose endpoints both see one triangle on one side and three
    /// on the other.
    DeepBlue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    /// Colour of every edge, indexed like [`PolyhedralMap::edges`].
    pub colors: Vec<EdgeColor>,
}

impl EdgeColoring {
    pub fn deep_blue(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == EdgeColor::DeepBlue).collect()
    }

    pub fn count(&self, c: EdgeColor) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }
}

/// Colours the edges of a map of type `[3^4,q]`, q ∈ {4, 5}, and checks that
/// the deep-blue edges form a perfect matching.
pub fn edge_coloring(x: &PolyhedralMap) -> Result<EdgeColoring, OpError> {
    const OP: &str = "edge colouring";
    let t = typed(x, OP)?;
    let q = match *t.sizes() {
        [3, 3, 3, 3, q] if q == 4 || q == 5 => q as usize,
        _ => return Err(wrong(OP, format!("type {t} is not [3^4,4] or [3^4,5]"))),
    };
    let mut colors: Vec<EdgeColor> = x
        .edges()
        .iter()
        .map(|e| if e.faces.iter().any(|&f| x.face(f).len() == q) { EdgeColor::Red } else { EdgeColor::Blue })
        .collect();
    // At each vertex, the edges leaving one triangle on one side of the
    // four-triangle fan and three on the other.
    let mut split = vec![0u8; x.edge_count()];
    for v in 0..x.vertex_count() {
        let cycle = x.face_cycle(v);
        let k = cycle.faces.iter().position(|&f| x.face(f).len() == q).expect("one large face per vertex");
        // Face positions k+1..k+4 are the triangles T1..T4; the edge between
        // T1 and T2 sits at neighbour k+2, the one between T3 and T4 at k+4.
        for j in [k + 2, k + 4] {
            let w = cycle.neighbors[j % 5];
            split[x.edge_id(v, w).expect("rotation edges exist")] += 1;
        }
    }
    for (e, c) in colors.iter_mut().enumerate() {
        if *c == EdgeColor::Blue && split[e] == 2 {
            *c = EdgeColor::DeepBlue;
        }
    }
    let mut hits = vec![0usize; x.vertex_count()];
    for (e, c) in colors.iter().enumerate() {
        if *c == EdgeColor::DeepBlue {
            let (a, b) = x.edges()[e].ends;
            hits[a] += 1;
            hits[b] += 1;
        }
    }
    if let Some(v) = hits.iter().position(|&h| h != 1) {
        return Err(wrong(OP, format!("vertex {v} meets {} deep-blue edges", hits[v])));
    }
    Ok(EdgeColoring { colors })
}

/// Deletes the deep-blue edges, merging each pair of triangles into a square.
pub fn remove_deep_blue(x: &PolyhedralMap) -> Result<PolyhedralMap, OpError> {
    let coloring = edge_coloring(x)?;
    let deep = coloring.deep_blue();
    let mut removed = vec![false; x.face_count()];
    let mut squares = Vec::with_capacity(deep.len());
    for &e in &deep {
        let edge = x.edges()[e];
        let (s, t) = edge.ends;
        let apex = |f: usize| *x.face(f).iter().find(|&&v| v != s && v != t).expect("triangle has a third vertex");
        // Orient around face 0 so that it runs s -> t -> apex.
        let f0 = x.face(edge.faces[0]);
        let i = f0.iter().position(|&v| v == s).expect("edge lies on face");
        let (s, t) = if f0[(i + 1) % 3] == t { (s, t) } else { (t, s) };
        let (x0, y0) = (apex(edge.faces[0]), apex(edge.faces[1]));
        squares.push(vec![s, y0, t, x0]);
        removed[edge.faces[0]] = true;
        removed[edge.faces[1]] = true;
    }
    let mut faces: Vec<Vec<usize>> =
        x.faces().iter().enumerate().filter(|(f, _)| !removed[*f]).map(|(_, f)| f.clone()).collect();
    faces.extend(squares);
    Ok(PolyhedralMap::new(x.vertex_count(), faces)?)
}

/// Squares that share edges with exactly two triangles.
pub fn eligible_squares(y: &PolyhedralMap) -> Vec<usize> {
    (0..y.face_count())
        .filter(|&f| {
            let face = y.face(f);
            face.len() == 4
                && (0..4)
                    .filter(|&k| {
                        let g = y.opposite_face(f, face[k], face[(k + 1) % 4]).expect("edges have two sides");
                        y.face(g).len() == 3
                    })
                    .count()
                    == 2
        })
        .collect()
}

/// The lexicographically least diagonal of an eligible square.
pub fn canonical_seed(y: &PolyhedralMap) -> Option<(usize, usize)> {
    eligible_squares(y)
        .into_iter()
        .flat_map(|f| {
            let s = y.face(f);
            [(s[0].min(s[2]), s[0].max(s[2])), (s[1].min(s[3]), s[1].max(s[3]))]
        })
        .min()
}

/// The diagonal of the same square not chosen by `seed`.
pub fn opposite_seed(y: &PolyhedralMap, seed: (usize, usize)) -> Option<(usize, usize)> {
    eligible_squares(y).into_iter().find_map(|f| {
        let s = y.face(f);
        let (d0, d1) = ((s[0], s[2]), (s[1], s[3]));
        let same = |d: (usize, usize)| d == seed || (d.1, d.0) == seed;
        if same(d0) {
            Some(d1)
        } else if same(d1) {
            Some(d0)
        } else {
            None
        }
    })
}

/// Places one diagonal in every eligible square so that every vertex meets
/// exactly one of them, starting from `seed` and following the forced
/// choices, then splits each square along its diagonal.
pub fn insert_diagonal_matching(y: &PolyhedralMap, seed: (usize, usize)) -> Result<PolyhedralMap, OpError> {
    let eligible = eligible_squares(y);
    let (a, c) = seed;
    // choice 0 joins corners 0 and 2, choice 1 joins corners 1 and 3.
    let (start, first_choice) = eligible
        .iter()
        .find_map(|&f| {
            let s = y.face(f);
            let is = |p: usize, q: usize| (p == a && q == c) || (p == c && q == a);
            if is(s[0], s[2]) {
                Some((f, 0u8))
            } else if is(s[1], s[3]) {
                Some((f, 1u8))
            } else {
                None
            }
        })
        .ok_or(OpError::NotEligibleSquare { diagonal: seed })?;
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); y.vertex_count()];
    for &f in &eligible {
        for &v in y.face(f) {
            at_vertex[v].push(f);
        }
    }
    let mut choice: BTreeMap<usize, u8> = BTreeMap::new();
    choice.insert(start, first_choice);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let ch = choice[&f] as usize;
        let s = y.face(f);
        for k in 0..4 {
            let v = s[k];
            let covered = k % 2 == ch;
            let others: Vec<usize> = at_vertex[v].iter().copied().filter(|&g| g != f).collect();
            if covered && others.is_empty() {
                continue;
            }
            let [g] = others[..] else {
                return Err(OpError::PropagationConflict { face: f });
            };
            let pos = y.face(g).iter().position(|&w| w == v).expect("vertex lies on square") % 2;
            let want = if covered { 1 - pos } else { pos } as u8;
            match choice.get(&g) {
                None => {
                    choice.insert(g, want);
                    queue.push_back(g);
                }
                Some(&have) if have != want => return Err(OpError::PropagationConflict { face: g }),
                Some(_) => {}
            }
        }
    }
    if let Some(&f) = eligible.iter().find(|f| !choice.contains_key(f)) {
        return Err(OpError::PropagationConflict { face: f });
    }
    let mut faces: Vec<Vec<usize>> =
        (0..y.face_count()).filter(|f| !choice.contains_key(f)).map(|f| y.face(f).to_vec()).collect();
    for (&f, &ch) in &choice {
        let s = y.face(f);
        let r = ch as usize;
        let (p, q, u, w) = (s[r], s[r + 1], s[(r + 2) % 4], s[(r + 3) % 4]);
        faces.push(vec![p, q, u]);
        faces.push(vec![p, u, w]);
    }
    Ok(PolyhedralMap::new(y.vertex_count(), faces)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::are_isomorphic;

    fn tetra() -> PolyhedralMap {
        PolyhedralMap::from_faces(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn truncated_tetrahedron() {
        let t = truncate(&tetra()).unwrap();
        assert_eq!(t.vertex_count(), 12);
        assert_eq!(semi_equivelar_type(&t).unwrap().to_string(), "[3,6^2]");
        let back = inverse_truncation(&t).unwrap();
        assert!(are_isomorphic(&back, &tetra()));
    }

    #[test]
    fn rectified_tetrahedron_is_octahedral() {
        let r = rectify(&tetra()).unwrap();
        assert_eq!(r.vertex_count(), 6);
        assert_eq!(semi_equivelar_type(&r).unwrap().to_string(), "[3^4]");
        assert!(are_isomorphic(&inverse_rectification(&r).unwrap(), &tetra()));
        let d = dual(&tetra()).unwrap();
        assert!(are_isomorphic(&d, &tetra()));
    }

    #[test]
    fn wrong_shapes() {
        assert_eq!(inverse_truncation(&tetra()).unwrap_err().kind(), "WrongShape");
        assert_eq!(inverse_rectification(&tetra()).unwrap_err().kind(), "WrongShape");
        assert_eq!(edge_coloring(&tetra()).unwrap_err().kind(), "WrongShape");
        assert_eq!(insert_diagonal_matching(&tetra(), (0, 1)).unwrap_err().kind(), "NotEligibleSquare");
    }
}
