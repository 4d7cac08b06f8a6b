//! Vertex-types: canonical cyclic face-size sequences, their defect, the
//! vertex count they force on the sphere, and enumeration of the spherical
//! admissible types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use strum::IntoStaticStr;
use thiserror::Error;

use crate::map::PolyhedralMap;

#[derive(Debug, Clone, PartialEq, Eq, Error, IntoStaticStr)]
pub enum VTypeError {
    #[error("face size {0} is below 3")]
    SizeTooSmall(u32),
    #[error("degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("defect {0} is not positive")]
    NonPositiveDefect(Ratio<i64>),
    #[error("4 / {0} is not an integer")]
    NonIntegerCount(Ratio<i64>),
    #[error("max gon {0} is below 12")]
    MaxGonTooSmall(u32),
    #[error("cannot parse vertex-type `{0}`")]
    Syntax(String),
}

impl VTypeError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

/// A vertex-type, stored as the lexicographically least rotation or
/// reflection of its face-size sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexType {
    seq: Vec<u32>,
}

/// One run `p^n` of a vertex-type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub size: u32,
    pub count: u32,
}

fn least_rotation(raw: &[u32]) -> Vec<u32> {
    let d = raw.len();
    let mut best: Vec<u32> = raw.to_vec();
    let mut candidate = Vec::with_capacity(d);
    for start in 0..d {
        for forward in [true, false] {
            candidate.clear();
            candidate.extend((0..d).map(|i| if forward { raw[(start + i) % d] } else { raw[(start + d - i) % d] }));
            if candidate < best {
                best.clone_from(&candidate);
            }
        }
    }
    best
}

/// Maximal cyclic runs of a sequence, starting at a run boundary when one
/// exists.
fn cyclic_runs(seq: &[u32]) -> Vec<Run> {
    let d = seq.len();
    let Some(start) = (0..d).find(|&i| seq[i] != seq[(i + d - 1) % d]) else {
        return vec![Run { size: seq[0], count: d as u32 }];
    };
    let mut runs: Vec<Run> = Vec::new();
    for i in 0..d {
        let p = seq[(start + i) % d];
        match runs.last_mut() {
            Some(r) if r.size == p => r.count += 1,
            _ => runs.push(Run { size: p, count: 1 }),
        }
    }
    runs
}

impl VertexType {
    /// Canonical form of a raw cyclic size sequence.
    pub fn normalize(raw: &[u32]) -> Result<Self, VTypeError> {
        if let Some(&p) = raw.iter().find(|&&p| p < 3) {
            return Err(VTypeError::SizeTooSmall(p));
        }
        if raw.len() < 3 {
            return Err(VTypeError::DegreeTooSmall(raw.len()));
        }
        Ok(VertexType { seq: least_rotation(raw) })
    }

    /// Builds a type from runs, e.g. `[(3, 4), (5, 1)]` for `[3^4,5]`.
    pub fn from_runs(runs: &[(u32, u32)]) -> Result<Self, VTypeError> {
        let raw: Vec<u32> = runs.iter().flat_map(|&(p, n)| std::iter::repeat_n(p, n as usize)).collect();
        Self::normalize(&raw)
    }

    /// The expanded canonical sequence, one entry per incident face.
    pub fn sizes(&self) -> &[u32] {
        &self.seq
    }

    pub fn degree(&self) -> usize {
        self.seq.len()
    }

    pub fn runs(&self) -> Vec<Run> {
        cyclic_runs(&self.seq)
    }

    /// Face sizes in increasing order with multiplicities.
    pub fn profile(&self) -> DegreeProfile {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &p in &self.seq {
            *counts.entry(p).or_default() += 1;
        }
        DegreeProfile { entries: counts.into_iter().collect() }
    }

    /// `2 − Σ (p − 2)/p` over the incident faces.
    pub fn defect(&self) -> Ratio<i64> {
        defect_of(&self.seq)
    }

    /// The number of vertices `4 / defect` of a sphere map of this type.
    pub fn predicted_vertex_count(&self) -> Result<u64, VTypeError> {
        let defect = self.defect();
        if defect <= Ratio::from_integer(0) {
            return Err(VTypeError::NonPositiveDefect(defect));
        }
        let n = Ratio::from_integer(4) / defect;
        if !n.is_integer() {
            return Err(VTypeError::NonIntegerCount(defect));
        }
        Ok(n.to_integer() as u64)
    }

    /// The three local obstructions to being the type of any semi-equivelar
    /// map. Reports the first that applies.
    pub fn lemma_filter(&self) -> FilterOutcome {
        let runs = self.runs();
        let k = runs.len();
        let lone = |i: usize| runs.iter().enumerate().all(|(j, r)| j == i || r.size != runs[i].size);
        for (i, r) in runs.iter().enumerate() {
            if r.count == 2 && r.size % 2 == 1 && lone(i) {
                return FilterOutcome::Fail { condition: Condition::I, witness: *r };
            }
        }
        for (i, r) in runs.iter().enumerate() {
            if r.count == 1 && r.size % 2 == 1 && lone(i) && runs[(i + k - 1) % k].size != runs[(i + 1) % k].size {
                return FilterOutcome::Fail { condition: Condition::II, witness: *r };
            }
        }
        if k == 4 {
            for s in 0..4 {
                let (a, b, c, d) = (runs[s], runs[(s + 1) % 4], runs[(s + 2) % 4], runs[(s + 3) % 4]);
                let (p, q, r) = (a.size, b.size, d.size);
                if a.count == 1
                    && c.count == 1
                    && c.size == p
                    && p % 2 == 1
                    && p != q
                    && q != r
                    && p != r
                {
                    return FilterOutcome::Fail { condition: Condition::III, witness: a };
                }
            }
        }
        FilterOutcome::Pass
    }
}

fn defect_of(seq: &[u32]) -> Ratio<i64> {
    seq.iter().fold(Ratio::from_integer(2), |acc, &p| acc - Ratio::new(p as i64 - 2, p as i64))
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.runs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if r.count > 1 {
                write!(f, "{}^{}", r.size, r.count)?;
            } else {
                write!(f, "{}", r.size)?;
            }
        }
        f.write_str("]")
    }
}

impl FromStr for VertexType {
    type Err = VTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || VTypeError::Syntax(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(syntax)?;
        let mut runs = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            let (p, n) = match part.split_once('^') {
                Some((p, n)) => (p.trim(), n.trim()),
                None => (part, "1"),
            };
            let p: u32 = p.parse().map_err(|_| syntax())?;
            let n: u32 = n.parse().map_err(|_| syntax())?;
            if n == 0 {
                return Err(syntax());
            }
            runs.push((p, n));
        }
        Self::from_runs(&runs)
    }
}

impl Serialize for VertexType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Face sizes `q_1 < … < q_k` with multiplicities `m_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub entries: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, IntoStaticStr)]
pub enum Condition {
    #[strum(serialize = "i")]
    I,
    #[strum(serialize = "ii")]
    II,
    #[strum(serialize = "iii")]
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterOutcome {
    Pass,
    Fail { condition: Condition, witness: Run },
}

/// Type read off the face-cycle at `v`.
pub fn vertex_type_at(m: &PolyhedralMap, v: usize) -> VertexType {
    let sizes: Vec<u32> = m.face_sizes_around(v).into_iter().map(|s| s as u32).collect();
    VertexType::normalize(&sizes).expect("faces of a valid map have at least 3 sides and vertices degree at least 3")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vertices {first} {first_type} and {second} {second_type} have different types")]
pub struct NotSemiEquivelar {
    pub first: usize,
    pub first_type: VertexType,
    pub second: usize,
    pub second_type: VertexType,
}

/// The common vertex-type, or two vertices witnessing that there is none.
pub fn semi_equivelar_type(m: &PolyhedralMap) -> Result<VertexType, NotSemiEquivelar> {
    let first = vertex_type_at(m, 0);
    for v in 1..m.vertex_count() {
        let t = vertex_type_at(m, v);
        if t != first {
            return Err(NotSemiEquivelar { first: 0, first_type: first, second: v, second_type: t });
        }
    }
    Ok(first)
}

/// The nineteen sporadic spherical types with their vertex counts, in the
/// order of the classical table.
pub fn sporadic_table() -> Vec<(VertexType, u64)> {
    let rows: [(&[(u32, u32)], u64); 19] = [
        (&[(3, 3)], 4),
        (&[(3, 4)], 6),
        (&[(4, 3)], 8),
        (&[(3, 5)], 12),
        (&[(5, 3)], 20),
        (&[(3, 4), (5, 1)], 60),
        (&[(3, 4), (4, 1)], 24),
        (&[(3, 1), (5, 1), (3, 1), (5, 1)], 30),
        (&[(3, 1), (4, 1), (3, 1), (4, 1)], 12),
        (&[(3, 1), (4, 1), (5, 1), (4, 1)], 60),
        (&[(3, 1), (4, 3)], 24),
        (&[(5, 1), (6, 2)], 60),
        (&[(4, 1), (6, 1), (8, 1)], 48),
        (&[(4, 1), (6, 1), (10, 1)], 120),
        (&[(4, 1), (6, 2)], 24),
        (&[(3, 1), (6, 2)], 12),
        (&[(3, 1), (8, 2)], 24),
        (&[(3, 1), (10, 2)], 60),
        (&[(3, 1), (4, 2)], 6),
    ];
    rows.iter().map(|(runs, n)| (VertexType::from_runs(runs).expect("table entries are valid"), *n)).collect()
}

/// The two infinite families of spherical types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `[4^2,r]`, r ≥ 5: prisms.
    Prism,
    /// `[3^3,s]`, s ≥ 4: antiprisms.
    Antiprism,
}

impl Family {
    pub fn member(self, n: u32) -> VertexType {
        match self {
            Family::Prism => VertexType::from_runs(&[(4, 2), (n, 1)]),
            Family::Antiprism => VertexType::from_runs(&[(3, 3), (n, 1)]),
        }
        .expect("family members are valid")
    }

    /// The parameter `n` if `t` belongs to this family.
    pub fn parameter(self, t: &VertexType) -> Option<u32> {
        let s = t.sizes();
        match (self, s) {
            (Family::Prism, [4, 4, r]) if *r >= 5 => Some(*r),
            (Family::Antiprism, [3, 3, 3, r]) if *r >= 4 => Some(*r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumeration {
    pub sporadic: BTreeSet<VertexType>,
    pub prisms: BTreeSet<u32>,
    pub antiprisms: BTreeSet<u32>,
    /// Survivors outside the admissible set. Always empty unless the
    /// classification is wrong.
    pub violations: BTreeSet<VertexType>,
}

/// Every canonical type of degree 3 to 5 with entries in `3..=max_gon` and
/// positive defect, before filtering.
pub fn spherical_candidates(max_gon: u32) -> BTreeSet<VertexType> {
    let mut multisets = Vec::new();
    let mut current = Vec::new();
    collect_multisets(max_gon, &mut current, &mut multisets);
    multisets
        .par_iter()
        .flat_map_iter(|ms| arrangements(ms).into_iter())
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn collect_multisets(max_gon: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if current.len() >= 3 && defect_of(current) > Ratio::from_integer(0) {
        out.push(current.clone());
    }
    if current.len() == 5 {
        return;
    }
    let lo = current.last().copied().unwrap_or(3);
    for p in lo..=max_gon {
        current.push(p);
        // Later entries are at least p, so the defect only shrinks further.
        let slack = 3usize.saturating_sub(current.len());
        let floor: Ratio<i64> = defect_of(current) - Ratio::new((p as i64 - 2) * slack as i64, p as i64);
        if floor <= Ratio::from_integer(0) {
            current.pop();
            break;
        }
        collect_multisets(max_gon, current, out);
        current.pop();
    }
}

/// All distinct cyclic arrangements of a multiset, canonicalized.
fn arrangements(multiset: &[u32]) -> BTreeSet<VertexType> {
    let mut out = BTreeSet::new();
    let mut seq = multiset.to_vec();
    loop {
        out.insert(VertexType { seq: least_rotation(&seq) });
        if !next_permutation(&mut seq) {
            break;
        }
    }
    out
}

fn next_permutation(seq: &mut [u32]) -> bool {
    let Some(i) = (1..seq.len()).rev().find(|&i| seq[i - 1] < seq[i]) else {
        return false;
    };
    let j = (i..seq.len()).rev().find(|&j| seq[j] > seq[i - 1]).expect("pivot has a larger successor");
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Filters and partitions an arbitrary collection of candidate types.
pub fn admissible_from_candidates<I: IntoIterator<Item = VertexType>>(candidates: I) -> Enumeration {
    let sporadic: BTreeSet<VertexType> = sporadic_table().into_iter().map(|(t, _)| t).collect();
    let mut out = Enumeration::default();
    for t in candidates {
        if t.defect() <= Ratio::from_integer(0) || t.lemma_filter() != FilterOutcome::Pass {
            continue;
        }
        if sporadic.contains(&t) {
            out.sporadic.insert(t);
        } else if let Some(r) = Family::Prism.parameter(&t) {
            out.prisms.insert(r);
        } else if let Some(s) = Family::Antiprism.parameter(&t) {
            out.antiprisms.insert(s);
        } else {
            out.violations.insert(t);
        }
    }
    out
}

/// Enumerates the spherical types with faces of at most `max_gon` sides that
/// survive the local obstructions.
pub fn enumerate_admissible(max_gon: u32) -> Result<Enumeration, VTypeError> {
    if max_gon < 12 {
        return Err(VTypeError::MaxGonTooSmall(max_gon));
    }
    Ok(admissible_from_candidates(spherical_candidates(max_gon)))
}
