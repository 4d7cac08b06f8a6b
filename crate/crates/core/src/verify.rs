//! Reproducible end-to-end checks, one per documented guarantee of the
//! library. Shared by `semap verify` and the acceptance test target.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, CENTRALLY_SYMMETRIC, PSEUDO};
use crate::classify::{identify, identify_projective, square_type_counts, SquareTypeCounts};
use crate::generate::exhaustive_generate;
use crate::geometry::{antiprism_coordinates, export_off, parse_off, prism_coordinates, Realization};
use crate::map::PolyhedralMap;
use crate::operators::{
    canonical_seed, edge_coloring, insert_diagonal_matching, inverse_rectification_by, inverse_truncation,
    opposite_seed, rectify, remove_deep_blue, truncate,
};
use crate::symmetry::{
    are_isomorphic, automorphism_group, canonical_certificate, double_cover, free_involutions, quotient,
    verify_isomorphism, SymmetryError,
};
use crate::vtype::{enumerate_admissible, semi_equivelar_type, Family, VertexType};

/// Suite names in criterion order.
pub const SUITES: [&str; 10] = [
    "enumeration",
    "count-table",
    "catalog",
    "square-types",
    "operators",
    "snub-surgery",
    "identify",
    "transitivity",
    "uniqueness",
    "geometry",
];

/// Seed of the random relabelings in the `identify` suite.
pub const RELABEL_SEED: u64 = 0x5eed_0007;
pub const RELABEL_TRIALS: usize = 100;

/// The nineteen sporadic types and their vertex counts, in table order.
pub const SPORADIC: [(&str, u64); 19] = [
    ("[3^3]", 4),
    ("[3^4]", 6),
    ("[4^3]", 8),
    ("[3^5]", 12),
    ("[5^3]", 20),
    ("[3^4,5]", 60),
    ("[3^4,4]", 24),
    ("[3,5,3,5]", 30),
    ("[3,4,3,4]", 12),
    ("[3,4,5,4]", 60),
    ("[3,4^3]", 24),
    ("[5,6^2]", 60),
    ("[4,6,8]", 48),
    ("[4,6,10]", 120),
    ("[4,6^2]", 24),
    ("[3,6^2]", 12),
    ("[3,8^2]", 24),
    ("[3,10^2]", 60),
    ("[3,4^2]", 6),
];

/// Vertex types that occur on the projective plane.
pub const PROJECTIVE_TYPES: [&str; 10] = [
    "[5^3]",
    "[3^5]",
    "[4,6^2]",
    "[3,5,3,5]",
    "[3,4^3]",
    "[4,6,8]",
    "[3,4,5,4]",
    "[4,6,10]",
    "[3,10^2]",
    "[5,6^2]",
];

#[derive(Debug, Clone)]
pub struct Check {
    pub id: usize,
    pub suite: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {:<13} {:>9.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.suite,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0}")]
pub struct UnknownSuite(pub String);

type Outcome = Result<String, String>;

fn ensure(ok: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(reason())
    }
}

fn ty(s: &str) -> VertexType {
    s.parse().expect("fixed type strings parse")
}

fn build(name: &str) -> Result<PolyhedralMap, String> {
    catalog::build(name).map(|e| e.map).map_err(|e| format!("{name}: {e}"))
}

/// Runs one criterion by number (1 to 10).
pub fn run_criterion(id: usize) -> Check {
    let (suite, limit, body): (&'static str, Option<Duration>, fn() -> Outcome) = match id {
        1 => (SUITES[0], Some(Duration::from_secs(5)), enumeration),
        2 => (SUITES[1], None, count_table),
        3 => (SUITES[2], Some(Duration::from_secs(60)), catalog_integrity),
        4 => (SUITES[3], None, square_types),
        5 => (SUITES[4], None, operator_laws),
        6 => (SUITES[5], None, snub_surgery),
        7 => (SUITES[6], Some(Duration::from_secs(120)), identification),
        8 => (SUITES[7], None, transitivity),
        9 => (SUITES[8], Some(Duration::from_secs(300)), uniqueness),
        10 => (SUITES[9], Some(Duration::from_secs(5)), geometry),
        _ => panic!("criteria are numbered 1 to 10"),
    };
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (passed, detail) = match (result, limit) {
        (Ok(detail), Some(limit)) if elapsed > limit => (false, format!("{detail}; exceeded {}s", limit.as_secs())),
        (Ok(detail), _) => (true, detail),
        (Err(reason), _) => (false, reason),
    };
    Check { id, suite, passed, detail, elapsed }
}

/// Runs a named suite, or every suite for `all`.
pub fn run_suite(name: &str) -> Result<Vec<Check>, UnknownSuite> {
    if name == "all" {
        return Ok((1..=SUITES.len()).map(run_criterion).collect());
    }
    let id = SUITES.iter().position(|&s| s == name).ok_or_else(|| UnknownSuite(name.to_string()))?;
    Ok(vec![run_criterion(id + 1)])
}

fn enumeration() -> Outcome {
    let e = enumerate_admissible(50).map_err(|e| e.to_string())?;
    let expected: BTreeSet<VertexType> = SPORADIC.iter().map(|(t, _)| ty(t)).collect();
    ensure(e.violations.is_empty(), || format!("violations: {:?}", e.violations))?;
    ensure(e.sporadic == expected, || format!("sporadic set differs: {:?}", e.sporadic.symmetric_difference(&expected)))?;
    ensure(e.prisms == (5..=50).collect(), || format!("prism parameters {:?}", e.prisms))?;
    ensure(e.antiprisms == (4..=50).collect(), || format!("antiprism parameters {:?}", e.antiprisms))?;
    Ok(format!("{} sporadic, {} prism, {} antiprism types", e.sporadic.len(), e.prisms.len(), e.antiprisms.len()))
}

fn count_table() -> Outcome {
    for (t, n) in SPORADIC {
        let got = ty(t).predicted_vertex_count().map_err(|e| format!("{t}: {e}"))?;
        ensure(got == n, || format!("{t}: predicted {got}, expected {n}"))?;
    }
    Ok("19 counts match".to_string())
}

fn catalog_integrity() -> Outcome {
    let entries = catalog::sphere_catalog(12).map_err(|e| e.to_string())?;
    ensure(entries.len() == 37, || format!("{} entries", entries.len()))?;
    for e in &entries {
        let t = semi_equivelar_type(&e.map).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(t == e.expected_type, || format!("{}: type {t}, declared {}", e.name, e.expected_type))?;
        ensure(e.map.euler_characteristic() == 2, || format!("{}: not a sphere", e.name))?;
        let predicted = t.predicted_vertex_count().map_err(|err| format!("{}: {err}", e.name))?;
        ensure(e.map.vertex_count() == e.expected_count && predicted as usize == e.expected_count, || {
            format!("{}: {} vertices, predicted {predicted}", e.name, e.map.vertex_count())
        })?;
    }
    let certs: Vec<_> = entries.iter().map(|e| canonical_certificate(&e.map)).collect();
    for i in 0..certs.len() {
        for j in 0..i {
            ensure(certs[i] != certs[j], || format!("{} and {} are isomorphic", entries[i].name, entries[j].name))?;
        }
    }
    Ok("37 entries valid and pairwise non-isomorphic".to_string())
}

fn square_types() -> Outcome {
    let small = build("small-rhombicuboctahedron")?;
    let pseudo = build(PSEUDO)?;
    let a = square_type_counts(&small).map_err(|e| e.to_string())?;
    let b = square_type_counts(&pseudo).map_err(|e| e.to_string())?;
    ensure(a == SquareTypeCounts { s2: 12, s3: 0, s4: 6 }, || format!("small rhombicuboctahedron {a:?}"))?;
    ensure(b == SquareTypeCounts { s2: 8, s3: 8, s4: 2 }, || format!("pseudo {b:?}"))?;
    let same = semi_equivelar_type(&small).ok() == semi_equivelar_type(&pseudo).ok()
        && small.vertex_count() == pseudo.vertex_count();
    ensure(same, || "type or count differ".to_string())?;
    ensure(!are_isomorphic(&small, &pseudo), || "maps are isomorphic".to_string())?;
    Ok(format!("(12,0,6) vs (8,8,2), non-isomorphic"))
}

fn operator_laws() -> Outcome {
    let inputs = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron", "cuboctahedron", "icosidodecahedron"];
    for name in inputs {
        let x = build(name)?;
        let t = semi_equivelar_type(&x).map_err(|e| e.to_string())?;
        let s = t.sizes();
        let (trunc, rect) = if s.iter().all(|&q| q == s[0]) {
            let (p, q) = (s.len() as u32, s[0]);
            (vec![p, 2 * q, 2 * q], vec![p, q, p, q])
        } else {
            let (p, q) = (s[0], s[1]);
            (vec![4, 2 * p, 2 * q], vec![4, p, 4, q])
        };
        let expect = |raw: Vec<u32>| VertexType::normalize(&raw).map_err(|e| e.to_string());
        let tx = truncate(&x).map_err(|e| format!("truncate({name}): {e}"))?;
        let rx = rectify(&x).map_err(|e| format!("rectify({name}): {e}"))?;
        let tt = semi_equivelar_type(&tx).map_err(|e| format!("truncate({name}): {e}"))?;
        let rt = semi_equivelar_type(&rx).map_err(|e| format!("rectify({name}): {e}"))?;
        ensure(tt == expect(trunc)?, || format!("truncate({name}) has type {tt}"))?;
        ensure(rt == expect(rect)?, || format!("rectify({name}) has type {rt}"))?;
        ensure(tx.vertex_count() == 2 * x.edge_count(), || format!("truncate({name}) has {} vertices", tx.vertex_count()))?;
        ensure(rx.vertex_count() == x.edge_count(), || format!("rectify({name}) has {} vertices", rx.vertex_count()))?;
        let back = inverse_truncation(&tx).map_err(|e| format!("inverse truncation of {name}: {e}"))?;
        ensure(are_isomorphic(&back, &x), || format!("inverse truncation does not recover {name}"))?;
        let back = inverse_rectification_by(&rx, x.degree(0)).map_err(|e| format!("inverse rectification of {name}: {e}"))?;
        ensure(are_isomorphic(&back, &x), || format!("inverse rectification does not recover {name}"))?;
    }
    Ok(format!("{} inputs", inputs.len()))
}

fn is_perfect_matching(m: &PolyhedralMap, edges: &[usize]) -> bool {
    let mut hit = vec![0usize; m.vertex_count()];
    for &e in edges {
        let (u, v) = m.edges()[e].ends;
        hit[u] += 1;
        hit[v] += 1;
    }
    hit.iter().all(|&h| h == 1)
}

fn snub_surgery() -> Outcome {
    for (snub, base, count) in [("snub-cube", "small-rhombicuboctahedron", 12), ("snub-dodecahedron", "small-rhombicosidodecahedron", 30)] {
        let x = build(snub)?;
        let deep = edge_coloring(&x).map_err(|e| e.to_string())?.deep_blue();
        ensure(deep.len() == count, || format!("{snub}: {} deep-blue edges", deep.len()))?;
        ensure(is_perfect_matching(&x, &deep), || format!("{snub}: deep-blue edges are not a perfect matching"))?;
        let y = remove_deep_blue(&x).map_err(|e| format!("{snub}: {e}"))?;
        ensure(are_isomorphic(&y, &build(base)?), || format!("{snub} minus deep-blue is not {base}"))?;
        let first = canonical_seed(&y).ok_or_else(|| format!("{base}: no eligible square"))?;
        let second = opposite_seed(&y, first).ok_or_else(|| format!("{base}: no opposite seed"))?;
        let a = insert_diagonal_matching(&y, first).map_err(|e| format!("{base}: {e}"))?;
        let b = insert_diagonal_matching(&y, second).map_err(|e| format!("{base}: {e}"))?;
        ensure(are_isomorphic(&a, &x), || format!("insertion into {base} does not give {snub}"))?;
        ensure(are_isomorphic(&a, &b), || format!("{base}: the two seeds disagree"))?;
        let again = remove_deep_blue(&a).map_err(|e| e.to_string())?;
        ensure(are_isomorphic(&again, &y), || format!("{snub}: second removal differs"))?;
    }
    Ok("12 and 30 deep-blue edges, round trips hold".to_string())
}

/// Relabels the vertices, shuffles the faces and rotates or reverses each
/// face. Returns the new map and the vertex permutation used.
pub fn scramble(m: &PolyhedralMap, rng: &mut impl Rng) -> (PolyhedralMap, Vec<usize>) {
    let mut perm: Vec<usize> = (0..m.vertex_count()).collect();
    perm.shuffle(rng);
    let mut faces: Vec<Vec<usize>> = m
        .faces()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            let shift = rng.gen_range(0..g.len());
            g.rotate_left(shift);
            if rng.gen_bool(0.5) {
                g.reverse();
            }
            g
        })
        .collect();
    faces.shuffle(rng);
    let scrambled = PolyhedralMap::new(m.vertex_count(), faces).expect("relabeling keeps a map valid");
    (scrambled, perm)
}

fn identification() -> Outcome {
    let entries = catalog::sphere_catalog(12).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(RELABEL_SEED);
    for trial in 0..RELABEL_TRIALS {
        let entry = &entries[rng.gen_range(0..entries.len())];
        let (m, _) = scramble(&entry.map, &mut rng);
        let verdict = identify(&m).map_err(|e| format!("trial {trial} ({}): {e}", entry.name))?;
        ensure(verdict.name == entry.name, || format!("trial {trial}: {} named {}", entry.name, verdict.name))?;
        ensure(verify_isomorphism(&m, &entry.map, &verdict.witness), || format!("trial {trial}: witness rejected"))?;
    }
    let rp2 = catalog::rp2_catalog().map_err(|e| e.to_string())?;
    let types: BTreeSet<VertexType> = rp2.iter().map(|e| semi_equivelar_type(&e.map)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let expected: BTreeSet<VertexType> = PROJECTIVE_TYPES.iter().map(|t| ty(t)).collect();
    ensure(rp2.len() == 10 && types == expected, || format!("projective types {types:?}"))?;
    for e in &rp2 {
        ensure(e.map.euler_characteristic() == 1, || format!("{} is not projective", e.name))?;
        let v = identify_projective(&e.map).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(v.name == e.name, || format!("{} named {}", e.name, v.name))?;
    }
    let tc = build("truncated-cube")?;
    let involutions = free_involutions(&tc);
    ensure(!involutions.is_empty(), || "truncated cube has no free involution".to_string())?;
    for sigma in &involutions {
        match quotient(&tc, sigma) {
            Err(SymmetryError::NonPolyhedralQuotient(_)) => {}
            other => return Err(format!("truncated cube quotient gave {other:?}")),
        }
    }
    for base in CENTRALLY_SYMMETRIC {
        let m = build(base)?;
        let sigma = free_involutions(&m).into_iter().next().ok_or_else(|| format!("{base}: no free involution"))?;
        let y = quotient(&m, &sigma).map_err(|e| format!("{base}: {e}"))?;
        let (cover, _) = double_cover(&y).map_err(|e| format!("{base}: {e}"))?;
        ensure(are_isomorphic(&cover, &m), || format!("{base}: double cover of the quotient differs"))?;
    }
    Ok(format!("{RELABEL_TRIALS} relabelings named, 10 projective maps, truncated cube rejected"))
}

fn transitivity() -> Outcome {
    for e in catalog::sphere_catalog(12).map_err(|e| e.to_string())? {
        let g = automorphism_group(&e.map);
        let expected = e.name != PSEUDO;
        ensure(g.is_vertex_transitive() == expected, || format!("{}: vertex-transitive = {}", e.name, !expected))?;
    }
    let pseudo = build(PSEUDO)?;
    let free = free_involutions(&pseudo);
    ensure(free.is_empty(), || format!("pseudo has {} free involutions", free.len()))?;
    Ok("36 vertex-transitive, pseudo not, pseudo has no free involution".to_string())
}

fn uniqueness() -> Outcome {
    for (count, t, name) in [(4, "[3^3]", "tetrahedron"), (6, "[3^4]", "octahedron"), (8, "[4^3]", "cube"), (12, "[3^5]", "icosahedron")] {
        let maps = exhaustive_generate(count, &ty(t)).map_err(|e| e.to_string())?;
        ensure(maps.len() == 1, || format!("({count},{t}): {} maps", maps.len()))?;
        ensure(are_isomorphic(&maps[0], &build(name)?), || format!("({count},{t}) is not the {name}"))?;
    }
    Ok("one map each for 4, 6, 8, 12 vertices".to_string())
}

fn off_lossless(r: &Realization, m: &PolyhedralMap) -> Result<bool, String> {
    let text = export_off(r, m).map_err(|e| e.to_string())?;
    let (coords, faces) = parse_off(&text).map_err(|e| e.to_string())?;
    Ok(faces == m.faces() && coords == r.coords)
}

fn geometry() -> Outcome {
    for n in 3..=24usize {
        for (family, r, m) in [
            (Family::Prism, prism_coordinates(n), catalog::prism_map(n)),
            (Family::Antiprism, antiprism_coordinates(n), catalog::antiprism_map(n)),
        ] {
            let r = r.map_err(|e| e.to_string())?;
            let m = m.map_err(|e| e.to_string())?;
            let rep = r.report;
            ensure(rep.max_norm_deviation <= 1e-12, || format!("{family:?} {n}: norm deviation {:e}", rep.max_norm_deviation))?;
            ensure(rep.edge_length_spread <= 1e-9, || format!("{family:?} {n}: edge spread {:e}", rep.edge_length_spread))?;
            ensure(off_lossless(&r, &m)?, || format!("{family:?} {n}: OFF round trip lost data"))?;
        }
    }
    let r = antiprism_coordinates(3).map_err(|e| e.to_string())?;
    let mut got = Vec::new();
    for i in 0..6 {
        for j in 0..i {
            got.push((r.coords[i] - r.coords[j]).norm());
        }
    }
    got.sort_by(f64::total_cmp);
    let mut want = vec![2f64.sqrt(); 12];
    want.extend([2.0; 3]);
    let worst = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("antiprism 3 distances off by {worst:e}"))?;
    Ok(format!("n = 3..24 within tolerance, octahedron distances within {worst:.1e}"))
}
