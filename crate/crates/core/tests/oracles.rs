//! Brute-force cross-checks on small vertex sets, sharing no code with the
//! library beyond map construction.

use std::collections::{BTreeSet, HashSet};

use semap::catalog;
use semap::generate::exhaustive_generate;
use semap::symmetry::automorphism_group;
use semap::{semi_equivelar_type, PolyhedralMap, VertexType};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Faces up to rotation and reversal: least vertex first, then the smaller
/// neighbour second.
fn normal_face(face: &[usize]) -> Vec<usize> {
    let k = face.len();
    let start = (0..k).min_by_key(|&i| face[i]).unwrap();
    let fwd: Vec<usize> = (0..k).map(|i| face[(start + i) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|i| face[(start + k - i) % k]).collect();
    fwd.min(bwd)
}

fn normal_set(faces: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    faces.iter().map(|f| normal_face(f)).collect()
}

/// Every cyclic polygon with `size` distinct vertices below `n`.
fn polygons(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, size: usize, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if path.len() == size {
            out.insert(normal_face(path));
            return;
        }
        for v in 0..n {
            if !path.contains(&v) && v > path[0] {
                path.push(v);
                extend(n, size, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for first in 0..n {
        extend(n, size, &mut vec![first], &mut out);
    }
    out.into_iter().collect()
}

struct Search<'a> {
    candidates: &'a [Vec<usize>],
    t: &'a VertexType,
    /// Number of faces of each size every vertex must see.
    need: Vec<usize>,
    chosen: Vec<usize>,
    seen: Vec<Vec<usize>>,
    edge_use: Vec<Vec<u8>>,
    found: HashSet<Vec<usize>>,
    duplicates: usize,
}

impl Search<'_> {
    fn deficient(&self, v: usize) -> bool {
        self.seen[v].iter().sum::<usize>() < self.t.degree()
    }

    /// A vertex with all its faces must have every edge in two of them.
    fn closed(&self, u: usize) -> bool {
        self.edge_use[u].iter().all(|&c| c == 0 || c == 2)
    }

    /// Faces through the lowest deficient vertex are added in increasing
    /// index order, so every face set is reached exactly once.
    fn run(&mut self, branch: Option<usize>, floor: usize) {
        let n = self.seen.len();
        let Some(v) = (0..n).find(|&v| self.deficient(v)) else {
            let faces: Vec<Vec<usize>> = self.chosen.iter().map(|&i| self.candidates[i].clone()).collect();
            if let Ok(m) = PolyhedralMap::new(n, faces) {
                if semi_equivelar_type(&m).ok().as_ref() == Some(self.t) {
                    let mut key = self.chosen.clone();
                    key.sort_unstable();
                    if !self.found.insert(key) {
                        self.duplicates += 1;
                    }
                }
            }
            return;
        };
        let start = if branch == Some(v) { floor } else { 0 };
        for i in start..self.candidates.len() {
            let face = &self.candidates[i];
            let k = face.len();
            if !face.contains(&v) || self.chosen.contains(&i) {
                continue;
            }
            let fits = face.iter().all(|&u| self.seen[u][k] < self.need[k])
                && (0..k).all(|j| self.edge_use[face[j]][face[(j + 1) % k]] < 2);
            if !fits {
                continue;
            }
            self.toggle(i, true);
            if self.candidates[i].iter().all(|&u| self.deficient(u) || self.closed(u)) {
                self.run(Some(v), i + 1);
            }
            self.toggle(i, false);
        }
    }

    fn toggle(&mut self, i: usize, on: bool) {
        let face = &self.candidates[i];
        let k = face.len();
        for j in 0..k {
            let (a, b) = (face[j], face[(j + 1) % k]);
            if on {
                self.edge_use[a][b] += 1;
                self.edge_use[b][a] += 1;
            } else {
                self.edge_use[a][b] -= 1;
                self.edge_use[b][a] -= 1;
            }
        }
        for &u in face {
            if on {
                self.seen[u][k] += 1;
            } else {
                self.seen[u][k] -= 1;
            }
        }
        if on {
            self.chosen.push(i);
        } else {
            self.chosen.pop();
        }
    }
}

/// All labelled maps on `0..n` of type `t`, found by choosing face sets in
/// which every vertex sees the right number of faces of each size and every
/// edge lies in at most two faces.
fn labelled_maps(n: usize, t: &VertexType) -> usize {
    let sizes: BTreeSet<usize> = t.sizes().iter().map(|&s| s as usize).collect();
    let largest = *sizes.iter().max().unwrap();
    let candidates: Vec<Vec<usize>> = sizes.iter().flat_map(|&s| polygons(n, s)).collect();
    let mut need = vec![0; largest + 1];
    t.sizes().iter().for_each(|&s| need[s as usize] += 1);
    let mut search = Search {
        candidates: &candidates,
        t,
        need,
        chosen: Vec::new(),
        seen: vec![vec![0; largest + 1]; n],
        edge_use: vec![vec![0; n]; n],
        found: HashSet::new(),
        duplicates: 0,
    };
    search.run(None, 0);
    assert_eq!(search.duplicates, 0, "face sets must be reached once");
    search.found.len()
}

/// Orbit-stabiliser count of labelled copies of the generated classes.
fn labelled_from_classes(n: usize, t: &VertexType) -> usize {
    exhaustive_generate(n, t).unwrap().iter().map(|m| factorial(n) / automorphism_group(m).order()).sum()
}

#[test]
fn generator_accounts_for_every_labelled_map() {
    let cases: [(usize, &str, usize); 5] =
        [(4, "[3^3]", 1), (6, "[3^4]", 15), (6, "[3,4^2]", 60), (8, "[4^3]", 840), (8, "[3^3,4]", 2520)];
    for (n, t, expected) in cases {
        let t: VertexType = t.parse().unwrap();
        let brute = labelled_maps(n, &t);
        assert_eq!(brute, expected, "({n},{t}) brute force");
        assert_eq!(labelled_from_classes(n, &t), brute, "({n},{t}) generator");
    }
}

#[test]
fn labelled_search_finds_nothing_for_impossible_small_types() {
    // [3,4,3,4] needs 12 vertices and [4^3] needs 8.
    assert_eq!(labelled_maps(6, &"[3,4,3,4]".parse().unwrap()), 0);
    assert_eq!(labelled_maps(6, &"[4^3]".parse().unwrap()), 0);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

#[test]
fn automorphisms_match_exhaustive_relabelling() {
    for name in ["tetrahedron", "octahedron", "prism-3", "cube", "antiprism-4"] {
        let m = catalog::build(name).unwrap().map;
        let n = m.vertex_count();
        let base = normal_set(m.faces());
        let mut images = HashSet::new();
        let mut fixing = BTreeSet::new();
        for p in permutations(n) {
            let moved: Vec<Vec<usize>> = m.faces().iter().map(|f| f.iter().map(|&v| p[v]).collect()).collect();
            let set = normal_set(&moved);
            if set == base {
                fixing.insert(p.clone());
            }
            images.insert(set);
        }
        let g = automorphism_group(&m);
        assert_eq!(g.order(), fixing.len(), "{name}");
        assert_eq!(g.elements.iter().cloned().collect::<BTreeSet<_>>(), fixing, "{name}");
        assert_eq!(images.len(), factorial(n) / fixing.len(), "{name}");
    }
}

#[test]
fn vertex_counts_follow_from_euler_relation() {
    // n - n d / 2 + n Σ 1/p = 2, solved in integers with denominator lcm.
    for (t, count) in semap::verify::SPORADIC {
        let t: VertexType = t.parse().unwrap();
        let lcm = t.sizes().iter().fold(1i64, |a, &p| {
            let p = p as i64;
            let gcd = (1..=a.min(p)).rev().find(|g| a % g == 0 && p % g == 0).unwrap();
            a / gcd * p
        });
        let d = t.degree() as i64;
        let numerator = 2 * lcm - d * lcm + 2 * t.sizes().iter().map(|&p| lcm / p as i64).sum::<i64>();
        assert!(numerator > 0, "{t}");
        assert_eq!((4 * lcm) % numerator, 0, "{t}");
        assert_eq!((4 * lcm / numerator) as u64, count, "{t}");
    }
}
