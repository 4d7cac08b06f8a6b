//! Exhaustive generation of small semi-equivelar sphere maps.
//!
//! The search fixes the star of vertex 0, then repeatedly takes the
//! lowest-numbered vertex whose face-cycle is still open and adds a face across
//! its smallest open edge, trying every assignment of new and existing vertices
//! to the face's remaining corners. Partial states are pruned by local checks
//! (edge multiplicity, face intersections, the face sizes seen around each
//! vertex) and completed maps are deduplicated by canonical certificate.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use strum::IntoStaticStr;
use thiserror::Error;

use crate::map::PolyhedralMap;
use crate::symmetry::{canonical_certificate, CanonicalCertificate};
use crate::vtype::{semi_equivelar_type, VertexType};

pub const MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum GenerateError {
    #[error("{count} vertices exceeds the limit of {limit}")]
    TooLarge { count: usize, limit: usize },
    #[error("type {vtype} does not give {count} vertices on the sphere")]
    CountMismatch { count: usize, vtype: VertexType },
}

impl GenerateError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

#[derive(Clone)]
struct State {
    faces: Vec<Vec<usize>>,
    at_vertex: Vec<Vec<usize>>,
    edge_faces: HashMap<(usize, usize), Vec<usize>>,
    used: usize,
    size_used: BTreeMap<usize, usize>,
}

struct Target {
    count: usize,
    degree: usize,
    /// Expanded canonical size sequence.
    cycle: Vec<usize>,
    /// Multiplicity of each size around a vertex.
    per_vertex: BTreeMap<usize, usize>,
    /// Total number of faces of each size.
    total: BTreeMap<usize, usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Whether `word` occurs as a contiguous block of the cyclic `cycle`, read in
/// either direction.
fn embeds(word: &[usize], cycle: &[usize]) -> bool {
    let d = cycle.len();
    if word.len() > d {
        return false;
    }
    (0..d).any(|s| {
        word.iter().enumerate().all(|(i, &p)| cycle[(s + i) % d] == p)
            || word.iter().enumerate().all(|(i, &p)| cycle[(s + d - i) % d] == p)
    })
}

enum Link {
    Closed,
    Open,
    Invalid,
}

impl State {
    fn new(count: usize) -> Self {
        State {
            faces: Vec::new(),
            at_vertex: vec![Vec::new(); count],
            edge_faces: HashMap::new(),
            used: 0,
            size_used: BTreeMap::new(),
        }
    }

    fn edge_load(&self, u: usize, v: usize) -> usize {
        self.edge_faces.get(&key(u, v)).map_or(0, Vec::len)
    }

    fn add_face(&mut self, face: Vec<usize>) {
        let f = self.faces.len();
        let n = face.len();
        for i in 0..n {
            self.at_vertex[face[i]].push(f);
            self.edge_faces.entry(key(face[i], face[(i + 1) % n])).or_default().push(f);
        }
        *self.size_used.entry(n).or_default() += 1;
        self.used = self.used.max(face.iter().max().map_or(0, |&m| m + 1));
        self.faces.push(face);
    }

    /// The two neighbours of `v` inside face `f`.
    fn sides(&self, f: usize, v: usize) -> (usize, usize) {
        let face = &self.faces[f];
        let n = face.len();
        let i = face.iter().position(|&w| w == v).expect("vertex lies on face");
        (face[(i + n - 1) % n], face[(i + 1) % n])
    }

    fn across(&self, f: usize, v: usize, w: usize) -> Option<usize> {
        self.edge_faces.get(&key(v, w))?.iter().copied().find(|&g| g != f)
    }

    /// Splits the faces at `v` into maximal fans and checks them against the
    /// target cycle.
    fn link(&self, v: usize, t: &Target) -> Link {
        let faces = &self.at_vertex[v];
        if faces.len() > t.degree {
            return Link::Invalid;
        }
        let mut per: BTreeMap<usize, usize> = BTreeMap::new();
        for &f in faces {
            *per.entry(self.faces[f].len()).or_default() += 1;
        }
        if per.iter().any(|(p, &c)| c > t.per_vertex.get(p).copied().unwrap_or(0)) {
            return Link::Invalid;
        }
        let k = faces.len();
        let index = |f: usize| faces.iter().position(|&g| g == f).expect("face at vertex");
        let adjacent: Vec<Vec<usize>> = faces
            .iter()
            .map(|&f| {
                let (p, q) = self.sides(f, v);
                [p, q].iter().filter_map(|&w| self.across(f, v, w)).map(index).collect()
            })
            .collect();
        let mut seen = vec![false; k];
        let mut fans = 0;
        for root in 0..k {
            if seen[root] {
                continue;
            }
            fans += 1;
            // Start from an end of the fan when it has one.
            let mut start = root;
            let mut prev = usize::MAX;
            let mut steps = 0;
            while adjacent[start].len() == 2 && steps <= k {
                let next = if adjacent[start][0] != prev { adjacent[start][0] } else { adjacent[start][1] };
                prev = start;
                start = next;
                steps += 1;
                if start == root {
                    break;
                }
            }
            let closed = adjacent[start].len() == 2;
            let mut word = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                word.push(self.faces[faces[cur]].len());
                match adjacent[cur].iter().copied().find(|&g| !seen[g]) {
                    Some(g) => cur = g,
                    None => break,
                }
            }
            if closed {
                if word.len() != k || k != t.degree {
                    return Link::Invalid;
                }
                let sizes: Vec<u32> = word.iter().map(|&p| p as u32).collect();
                let ty = VertexType::normalize(&sizes).expect("sizes are valid");
                return if ty.sizes().iter().map(|&p| p as usize).eq(t.cycle.iter().copied()) {
                    Link::Closed
                } else {
                    Link::Invalid
                };
            }
            if !embeds(&word, &t.cycle) {
                return Link::Invalid;
            }
        }
        if faces.len() + fans > t.degree {
            return Link::Invalid;
        }
        Link::Open
    }

    /// Whether the face shares at most a vertex or an edge with every
    /// existing face.
    fn meets_polyhedrally(&self, face: &[usize]) -> bool {
        let n = face.len();
        let mut shared: HashMap<usize, Vec<usize>> = HashMap::new();
        for &v in face {
            for &g in &self.at_vertex[v] {
                shared.entry(g).or_default().push(v);
            }
        }
        let consecutive = |poly: &[usize], u: usize, w: usize| {
            let m = poly.len();
            (0..m).any(|i| key(poly[i], poly[(i + 1) % m]) == key(u, w))
        };
        shared.into_iter().all(|(g, vs)| match vs.len() {
            1 => true,
            2 => consecutive(face, vs[0], vs[1]) && consecutive(&self.faces[g], vs[0], vs[1]),
            _ => false,
        }) && (0..n).all(|i| self.edge_load(face[i], face[(i + 1) % n]) < 2)
    }
}

fn search(state: State, t: &Target, found: &mut Vec<PolyhedralMap>) {
    // Lowest vertex whose cycle is still open.
    let mut next = None;
    for v in 0..state.used {
        match state.link(v, t) {
            Link::Invalid => return,
            Link::Open => {
                next = Some(v);
                break;
            }
            Link::Closed => {}
        }
    }
    let Some(v) = next else {
        if state.used == t.count {
            if let Ok(m) = PolyhedralMap::new(t.count, state.faces.clone()) {
                let target: Vec<u32> = t.cycle.iter().map(|&p| p as u32).collect();
                if m.euler_characteristic() == 2 && semi_equivelar_type(&m).is_ok_and(|ty| ty.sizes() == target.as_slice()) {
                    found.push(m);
                }
            }
        }
        return;
    };
    for (face, next_state) in extensions(&state, v, t) {
        let _ = face;
        search(next_state, t, found);
    }
}

/// All states obtained by adding one face across the smallest open edge at
/// `v`.
fn extensions(state: &State, v: usize, t: &Target) -> Vec<(Vec<usize>, State)> {
    let a = state.at_vertex[v]
        .iter()
        .flat_map(|&f| {
            let (p, q) = state.sides(f, v);
            [p, q]
        })
        .filter(|&w| state.edge_load(v, w) == 1)
        .min()
        .expect("open vertices have an open edge");
    let mut out = Vec::new();
    for (&p, &limit) in &t.total {
        if state.size_used.get(&p).copied().unwrap_or(0) >= limit {
            continue;
        }
        // Face a, v, c, y_1, ..., y_{p-3}.
        let mut corners = vec![a, v];
        fill(state, t, p, &mut corners, &mut out);
    }
    out
}

fn fill(state: &State, t: &Target, p: usize, corners: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, State)>) {
    if corners.len() == p {
        let a = corners[0];
        let last = *corners.last().expect("face has corners");
        if state.edge_load(last, a) >= 2 || !state.meets_polyhedrally(corners) {
            return;
        }
        let mut next = state.clone();
        next.add_face(corners.clone());
        if corners.iter().all(|&w| !matches!(next.link(w, t), Link::Invalid)) {
            out.push((corners.clone(), next));
        }
        return;
    }
    let fresh = state.used + corners.iter().filter(|&&w| w >= state.used).count();
    let prev = *corners.last().expect("face has corners");
    let mut options: Vec<usize> = (0..state.used).collect();
    if fresh < t.count {
        options.push(fresh);
    }
    for w in options {
        if corners.contains(&w) {
            continue;
        }
        if w < state.used {
            if state.at_vertex[w].len() >= t.degree || state.edge_load(prev, w) >= 2 {
                continue;
            }
        }
        corners.push(w);
        fill(state, t, p, corners, out);
        corners.pop();
    }
}

/// Every sphere map with `count` vertices and type `t`, one per isomorphism
/// class, sorted by certificate.
pub fn exhaustive_generate(count: usize, t: &VertexType) -> Result<Vec<PolyhedralMap>, GenerateError> {
    exhaustive_generate_within(count, t, MAX_VERTICES)
}

/// As [`exhaustive_generate`] with a caller-chosen vertex limit. Types with
/// long forced stars, such as the prism and antiprism types, stay fast a
/// little past the default limit.
pub fn exhaustive_generate_within(
    count: usize,
    t: &VertexType,
    limit: usize,
) -> Result<Vec<PolyhedralMap>, GenerateError> {
    if count > limit {
        return Err(GenerateError::TooLarge { count, limit });
    }
    match t.predicted_vertex_count() {
        Ok(n) if n as usize == count => {}
        _ => return Err(GenerateError::CountMismatch { count, vtype: t.clone() }),
    }
    let cycle: Vec<usize> = t.sizes().iter().map(|&p| p as usize).collect();
    let mut per_vertex = BTreeMap::new();
    for &p in &cycle {
        *per_vertex.entry(p).or_default() += 1;
    }
    let total = per_vertex.iter().map(|(&p, &m)| (p, count * m / p)).collect();
    let target = Target { count, degree: cycle.len(), cycle: cycle.clone(), per_vertex, total };

    // The star of vertex 0 is forced up to labels.
    let mut state = State::new(count);
    let d = cycle.len();
    let star_size = 1 + d + cycle.iter().map(|p| p - 3).sum::<usize>();
    if star_size > count {
        return Ok(Vec::new());
    }
    let spokes: Vec<usize> = (1..=d).collect();
    let mut next = d + 1;
    for k in 0..d {
        let mut face = vec![0, spokes[k]];
        for _ in 0..cycle[k] - 3 {
            face.push(next);
            next += 1;
        }
        face.push(spokes[(k + 1) % d]);
        state.add_face(face);
    }

    // Split the search on the first extension for parallelism.
    let v = (0..state.used).find(|&v| matches!(state.link(v, &target), Link::Open));
    let branches = match v {
        Some(v) => extensions(&state, v, &target),
        None => vec![(Vec::new(), state)],
    };
    let found: Vec<PolyhedralMap> = branches
        .into_par_iter()
        .flat_map_iter(|(_, s)| {
            let mut local = Vec::new();
            search(s, &target, &mut local);
            local
        })
        .collect();

    let mut unique: BTreeMap<Vec<u32>, PolyhedralMap> = BTreeMap::new();
    for m in found {
        let cert: CanonicalCertificate = canonical_certificate(&m);
        unique.entry(cert.code().to_vec()).or_insert(m);
    }
    Ok(unique.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> VertexType {
        s.parse().unwrap()
    }

    #[test]
    fn guards() {
        assert_eq!(exhaustive_generate(20, &t("[5^3]")).unwrap_err().kind(), "TooLarge");
        assert_eq!(exhaustive_generate(6, &t("[3^3]")).unwrap_err().kind(), "CountMismatch");
    }

    #[test]
    fn tetrahedron_and_octahedron_are_unique() {
        assert_eq!(exhaustive_generate(4, &t("[3^3]")).unwrap().len(), 1);
        assert_eq!(exhaustive_generate(6, &t("[3^4]")).unwrap().len(), 1);
        assert_eq!(exhaustive_generate(6, &t("[3,4^2]")).unwrap().len(), 1);
    }

    #[test]
    fn embedding() {
        assert!(embeds(&[4, 3], &[3, 4, 4, 4]));
        assert!(embeds(&[4, 4, 3], &[3, 4, 4, 4]));
        assert!(!embeds(&[3, 3], &[3, 4, 3, 4]));
    }
}
