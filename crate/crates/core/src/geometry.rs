//! Vertex coordinates on the unit sphere, their validation, and OFF/SVG
//! export.
//!
//! Prisms and antiprisms have closed-form coordinates. Any other sphere map
//! is placed by a Tutte embedding of the plane, lifted to the sphere, spread
//! out by spring and repulsion forces, and then relaxed towards equal edge
//! lengths.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector, Vector3};
use strum::IntoStaticStr;
use thiserror::Error;

use crate::catalog::{antiprism_map, prism_map};
use crate::map::PolyhedralMap;

pub type Point = Vector3<f64>;

pub const RELAX_BUDGET: usize = 100_000;
const DESCENT_BUDGET: usize = 20_000;
const POLISH_BUDGET: usize = 500;
const SPREAD_ITERATIONS: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Error, IntoStaticStr)]
pub enum GeometryError {
    #[error("family parameter {0} is below 3")]
    NTooSmall(usize),
    #[error("map has Euler characteristic {0}, not 2")]
    NotSpherical(i64),
    #[error("relaxation did not converge within {} steps", report.iterations)]
    ConvergenceFailure { realization: Box<Realization>, report: ValidationReport },
    #[error("{coordinates} coordinates for {vertices} vertices")]
    CountMismatch { coordinates: usize, vertices: usize },
    #[error("line {line}: {message}")]
    OffSyntax { line: usize, message: String },
}

impl GeometryError {
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, IntoStaticStr)]
pub enum Provenance {
    #[strum(serialize = "exact-formula")]
    ExactFormula,
    #[strum(serialize = "relaxed")]
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct ValidationReport {
    /// Largest `| |x| - 1 |` over the vertices.
    pub max_norm_deviation: f64,
    /// Longest minus shortest edge.
    pub edge_length_spread: f64,
    /// Largest distance of a face corner from the face's best plane.
    pub max_planarity_residual: f64,
    /// Largest per-face spread of side lengths plus spread of corner
    /// distances from the face centroid.
    pub max_regularity_residual: f64,
    /// Faces whose corners wind the wrong way around the outward normal.
    pub folded_faces: usize,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub coords: Vec<Point>,
    pub provenance: Provenance,
    pub report: ValidationReport,
}

fn length(a: &Point, b: &Point) -> f64 {
    (a - b).norm()
}

/// Measures how close `coords` come to a semi-regular spherical polyhedron.
pub fn validate(m: &PolyhedralMap, coords: &[Point]) -> ValidationReport {
    let mut r = ValidationReport::default();
    r.max_norm_deviation = coords.iter().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max);
    let lengths: Vec<f64> = m.edges().iter().map(|e| length(&coords[e.ends.0], &coords[e.ends.1])).collect();
    let (lo, hi) = lengths.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &l| (lo.min(l), hi.max(l)));
    r.edge_length_spread = if lengths.is_empty() { 0.0 } else { hi - lo };
    let faces = m.oriented_faces().unwrap_or_else(|| m.faces().to_vec());
    let mut folded_pos = 0;
    let mut folded_neg = 0;
    for face in &faces {
        let pts: Vec<Point> = face.iter().map(|&v| coords[v]).collect();
        let n = pts.len();
        let centroid = pts.iter().fold(Point::zeros(), |acc, p| acc + p) / n as f64;
        // Newell's normal.
        let mut normal = Point::zeros();
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            normal += Point::new((a.y - b.y) * (a.z + b.z), (a.z - b.z) * (a.x + b.x), (a.x - b.x) * (a.y + b.y));
        }
        let outward = normal.dot(&centroid);
        if outward < 0.0 {
            folded_pos += 1;
        } else {
            folded_neg += 1;
        }
        let unit = normal.try_normalize(1e-300).unwrap_or_else(Point::zeros);
        let planarity = pts.iter().map(|p| (p - centroid).dot(&unit).abs()).fold(0.0, f64::max);
        let sides: Vec<f64> = (0..n).map(|i| length(&pts[i], &pts[(i + 1) % n])).collect();
        let radii: Vec<f64> = pts.iter().map(|p| length(p, &centroid)).collect();
        let spread = |xs: &[f64]| {
            xs.iter().copied().fold(f64::MIN, f64::max) - xs.iter().copied().fold(f64::MAX, f64::min)
        };
        r.max_planarity_residual = r.max_planarity_residual.max(planarity);
        r.max_regularity_residual = r.max_regularity_residual.max(spread(&sides) + spread(&radii));
    }
    // A global orientation may be reversed; count the minority as folded.
    r.folded_faces = folded_pos.min(folded_neg);
    r
}

fn exact(m: &PolyhedralMap, coords: Vec<Point>) -> Realization {
    let report = ValidationReport { converged: true, ..validate(m, &coords) };
    Realization { coords, provenance: Provenance::ExactFormula, report }
}

/// Closed-form coordinates of the regular prism on the unit sphere, in the
/// vertex order of [`prism_map`].
pub fn prism_coordinates(n: usize) -> Result<Realization, GeometryError> {
    let m = prism_map(n).map_err(|_| GeometryError::NTooSmall(n))?;
    let nf = n as f64;
    let s = (PI / nf).sin();
    let c = (1.0 + s * s).powf(-0.5);
    let mut coords = Vec::with_capacity(2 * n);
    for sign in [1.0, -1.0] {
        for k in 0..n {
            let a = 2.0 * k as f64 * PI / nf;
            coords.push(c * Point::new(a.cos(), a.sin(), sign * s));
        }
    }
    Ok(exact(&m, coords))
}

/// Closed-form coordinates of the antiprism on the unit sphere, in the
/// vertex order of [`antiprism_map`].
pub fn antiprism_coordinates(n: usize) -> Result<Realization, GeometryError> {
    let m = antiprism_map(n).map_err(|_| GeometryError::NTooSmall(n))?;
    let nf = n as f64;
    let s1 = (PI / nf).sin();
    let s2 = (PI / (2.0 * nf)).sin();
    let c2 = (PI / (2.0 * nf)).cos();
    let c = (s1 * s1 + c2 * c2).powf(-0.5);
    let h = (s1 * s1 - s2 * s2).sqrt();
    let mut coords = Vec::with_capacity(2 * n);
    for k in 0..n {
        let a = (2 * k + 1) as f64 * PI / nf;
        coords.push(c * Point::new(a.cos(), a.sin(), h));
    }
    for k in 0..n {
        let a = 2.0 * k as f64 * PI / nf;
        coords.push(c * Point::new(a.cos(), a.sin(), -h));
    }
    Ok(exact(&m, coords))
}

/// Plane embedding with the largest face as the outer circle.
fn tutte(m: &PolyhedralMap) -> Vec<(f64, f64)> {
    let n = m.vertex_count();
    let outer = (0..m.face_count()).max_by_key(|&f| (m.face(f).len(), usize::MAX - f)).expect("maps have faces");
    let ring = m.face(outer);
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for (i, &v) in ring.iter().enumerate() {
        let a = 2.0 * PI * i as f64 / ring.len() as f64;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    let inner: Vec<usize> = (0..n).filter(|&v| !fixed[v]).collect();
    if inner.is_empty() {
        return pos;
    }
    let mut index = vec![usize::MAX; n];
    for (i, &v) in inner.iter().enumerate() {
        index[v] = i;
    }
    let k = inner.len();
    let mut a = DMatrix::<f64>::zeros(k, k);
    let mut bx = DVector::<f64>::zeros(k);
    let mut by = DVector::<f64>::zeros(k);
    for (i, &v) in inner.iter().enumerate() {
        let nbrs = m.neighbors(v);
        a[(i, i)] = nbrs.len() as f64;
        for &w in nbrs {
            if fixed[w] {
                bx[i] += pos[w].0;
                by[i] += pos[w].1;
            } else {
                a[(i, index[w])] -= 1.0;
            }
        }
    }
    let lu = a.lu();
    let x = lu.solve(&bx).expect("Tutte system of a connected map is nonsingular");
    let y = lu.solve(&by).expect("Tutte system of a connected map is nonsingular");
    for (i, &v) in inner.iter().enumerate() {
        pos[v] = (x[i], y[i]);
    }
    pos
}

fn tangent(p: &Point, g: &Point) -> Point {
    g - p * p.dot(g)
}

/// Fruchterman-Reingold layout on the sphere with a cooling schedule.
fn spread(m: &PolyhedralMap, coords: &mut [Point]) {
    let n = coords.len();
    let k = (4.0 * PI / n as f64).sqrt();
    let mut force = vec![Point::zeros(); n];
    for it in 0..SPREAD_ITERATIONS {
        force.iter_mut().for_each(|f| *f = Point::zeros());
        for i in 0..n {
            for j in (i + 1)..n {
                let d = coords[i] - coords[j];
                let r = d.norm().max(1e-9);
                let push = d * (k * k / (r * r));
                force[i] += push;
                force[j] -= push;
            }
        }
        for e in m.edges() {
            let (u, v) = e.ends;
            let d = coords[v] - coords[u];
            let pull = d * (d.norm() / k);
            force[u] += pull;
            force[v] -= pull;
        }
        let temperature = 0.2 * (1.0 - it as f64 / SPREAD_ITERATIONS as f64) + 1e-3;
        for i in 0..n {
            let t = tangent(&coords[i], &force[i]);
            let len = t.norm();
            if len > 0.0 {
                coords[i] = (coords[i] + t * (len.min(temperature) / len)).normalize();
            }
        }
    }
}

/// `Σ (ℓ² − mean)² / mean²` over the edges and its gradient.
fn energy(m: &PolyhedralMap, coords: &[Point], grad: Option<&mut Vec<Point>>) -> f64 {
    let squares: Vec<f64> = m.edges().iter().map(|e| (coords[e.ends.0] - coords[e.ends.1]).norm_squared()).collect();
    let count = squares.len() as f64;
    let mean = squares.iter().sum::<f64>() / count;
    let value = squares.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (mean * mean);
    if let Some(grad) = grad {
        grad.iter_mut().for_each(|g| *g = Point::zeros());
        for (e, &s) in m.edges().iter().zip(&squares) {
            let ds = 2.0 * (s - mean) / (mean * mean) - 2.0 * value / (mean * count);
            let (u, v) = e.ends;
            let d = coords[u] - coords[v];
            grad[u] += d * (2.0 * ds);
            grad[v] -= d * (2.0 * ds);
        }
    }
    value
}

/// Levenberg-Marquardt on the residuals `ℓ_e² − s` and `|x_v|² − 1`, with
/// the common squared length `s` as an extra unknown.
fn polish(m: &PolyhedralMap, coords: &mut [Point], budget: usize) -> (usize, bool) {
    let n = coords.len();
    let edges = m.edges();
    let unknowns = 3 * n + 1;
    let residuals = |x: &[Point], s: f64| -> DVector<f64> {
        let mut r = DVector::zeros(edges.len() + n);
        for (i, e) in edges.iter().enumerate() {
            r[i] = (x[e.ends.0] - x[e.ends.1]).norm_squared() - s;
        }
        for (v, p) in x.iter().enumerate() {
            r[edges.len() + v] = p.norm_squared() - 1.0;
        }
        r
    };
    let mut s = edges.iter().map(|e| (coords[e.ends.0] - coords[e.ends.1]).norm_squared()).sum::<f64>() / edges.len() as f64;
    let mut r = residuals(coords, s);
    let mut cost = r.norm_squared();
    let mut lambda = 1e-3;
    let limit = budget.min(POLISH_BUDGET);
    let mut used = 0;
    while used < limit {
        used += 1;
        if cost < 1e-26 {
            break;
        }
        let mut j = DMatrix::<f64>::zeros(edges.len() + n, unknowns);
        for (i, e) in edges.iter().enumerate() {
            let (u, v) = e.ends;
            let d = (coords[u] - coords[v]) * 2.0;
            for k in 0..3 {
                j[(i, 3 * u + k)] = d[k];
                j[(i, 3 * v + k)] = -d[k];
            }
            j[(i, 3 * n)] = -1.0;
        }
        for (v, p) in coords.iter().enumerate() {
            for k in 0..3 {
                j[(edges.len() + v, 3 * v + k)] = 2.0 * p[k];
            }
        }
        let jt = j.transpose();
        let normal = &jt * &j;
        let rhs = -(&jt * &r);
        let mut system = normal.clone();
        for k in 0..unknowns {
            system[(k, k)] += lambda * (1.0 + normal[(k, k)]);
        }
        let Some(delta) = system.cholesky().map(|c| c.solve(&rhs)) else {
            lambda *= 10.0;
            continue;
        };
        let trial: Vec<Point> = (0..n)
            .map(|v| coords[v] + Point::new(delta[3 * v], delta[3 * v + 1], delta[3 * v + 2]))
            .collect();
        let trial_s = s + delta[3 * n];
        let trial_r = residuals(&trial, trial_s);
        let trial_cost = trial_r.norm_squared();
        if trial_cost < cost {
            let moved = delta.amax();
            coords.copy_from_slice(&trial);
            s = trial_s;
            r = trial_r;
            cost = trial_cost;
            lambda = (lambda / 3.0).max(1e-15);
            if moved < 1e-13 {
                break;
            }
        } else {
            lambda *= 2.0;
        }
    }
    coords.iter_mut().for_each(|p| *p = p.normalize());
    let spread = validate(m, coords).edge_length_spread;
    (used, cost < 1e-20 && spread < 1e-9)
}

/// Relaxed coordinates for a sphere map. The error case still carries the
/// last realization and its report.
pub fn realize_on_sphere(m: &PolyhedralMap) -> Result<Realization, GeometryError> {
    if m.euler_characteristic() != 2 {
        return Err(GeometryError::NotSpherical(m.euler_characteristic()));
    }
    let plane = tutte(m);
    let mut coords: Vec<Point> = plane
        .iter()
        .map(|&(x, y)| {
            let r2 = x * x + y * y;
            Point::new(2.0 * x, 2.0 * y, r2 - 1.0) / (r2 + 1.0)
        })
        .collect();
    spread(m, &mut coords);

    let n = coords.len();
    let mut grad = vec![Point::zeros(); n];
    let mut value = energy(m, &coords, Some(&mut grad));
    let mut step = 0.1;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < DESCENT_BUDGET {
        iterations += 1;
        if value < 1e-28 {
            converged = true;
            break;
        }
        let trial: Vec<Point> = coords.iter().zip(&grad).map(|(p, g)| (p - tangent(p, g) * step).normalize()).collect();
        let moved = coords.iter().zip(&trial).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let mut trial_grad = vec![Point::zeros(); n];
        let trial_value = energy(m, &trial, Some(&mut trial_grad));
        if trial_value <= value {
            coords = trial;
            grad = trial_grad;
            value = trial_value;
            step *= 1.2;
            let slope = coords.iter().zip(&grad).map(|(p, g)| tangent(p, g).norm()).fold(0.0, f64::max);
            if moved < 1e-12 && slope < 1e-9 {
                converged = true;
                break;
            }
        } else {
            step *= 0.5;
            if step < 1e-300 {
                break;
            }
        }
    }
    if !converged {
        let (used, done) = polish(m, &mut coords, RELAX_BUDGET - iterations);
        iterations += used;
        converged = done;
    }
    let report = ValidationReport { iterations, converged, ..validate(m, &coords) };
    let realization = Realization { coords, provenance: Provenance::Relaxed, report };
    if converged {
        Ok(realization)
    } else {
        Err(GeometryError::ConvergenceFailure { report, realization: Box::new(realization) })
    }
}

fn check_count(r: &Realization, m: &PolyhedralMap) -> Result<(), GeometryError> {
    if r.coords.len() != m.vertex_count() {
        return Err(GeometryError::CountMismatch { coordinates: r.coords.len(), vertices: m.vertex_count() });
    }
    Ok(())
}

/// OFF text: header, `f0 f2 f1`, one coordinate line per vertex, then
/// `k v1 ... vk` per face.
pub fn export_off(r: &Realization, m: &PolyhedralMap) -> Result<String, GeometryError> {
    check_count(r, m)?;
    let mut out = format!("OFF\n{} {} {}\n", m.vertex_count(), m.face_count(), m.edge_count());
    for p in &r.coords {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.z);
    }
    for face in m.faces() {
        let _ = write!(out, "{}", face.len());
        for v in face {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    Ok(out)
}

/// Reads OFF text back into coordinates and faces.
pub fn parse_off(text: &str) -> Result<(Vec<Point>, Vec<Vec<usize>>), GeometryError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |line: usize, message: &str| GeometryError::OffSyntax { line, message: message.to_string() };
    let (line, header) = lines.next().ok_or_else(|| bad(1, "empty input"))?;
    if header != "OFF" {
        return Err(bad(line, "expected OFF header"));
    }
    let (line, counts) = lines.next().ok_or_else(|| bad(line, "missing counts"))?;
    let counts: Vec<usize> =
        counts.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| bad(line, "bad counts"))?;
    let [nv, nf, _] = counts[..] else {
        return Err(bad(line, "expected three counts"));
    };
    let mut coords = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or_else(|| bad(line, "missing vertex"))?;
        let xs: Vec<f64> = l.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| bad(line, "bad coordinate"))?;
        let [x, y, z] = xs[..] else {
            return Err(bad(line, "expected three coordinates"));
        };
        coords.push(Point::new(x, y, z));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, l) = lines.next().ok_or_else(|| bad(line, "missing face"))?;
        let xs: Vec<usize> = l.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| bad(line, "bad face"))?;
        let (&k, rest) = xs.split_first().ok_or_else(|| bad(line, "empty face"))?;
        if rest.len() != k {
            return Err(bad(line, "face length mismatch"));
        }
        faces.push(rest.to_vec());
    }
    if let Some((line, _)) = lines.next() {
        return Err(bad(line, "trailing data"));
    }
    Ok((coords, faces))
}

const SVG_SIZE: f64 = 800.0;
const SVG_CLIP: f64 = 8.0;
const ARC_SEGMENTS: usize = 32;

fn stereographic(p: &Point) -> (f64, f64) {
    let d = (1.0 - p.z).max(1e-9);
    let (x, y) = (p.x / d, p.y / d);
    let r = (x * x + y * y).sqrt();
    if r > SVG_CLIP {
        (x * SVG_CLIP / r, y * SVG_CLIP / r)
    } else {
        (x, y)
    }
}

fn slerp(a: &Point, b: &Point, t: f64) -> Point {
    let (a, b) = (a.normalize(), b.normalize());
    let omega = a.dot(&b).clamp(-1.0, 1.0).acos();
    if omega < 1e-12 {
        return a;
    }
    let s = omega.sin();
    (a * ((1.0 - t) * omega).sin() / s + b * (t * omega).sin() / s).normalize()
}

/// Stereographic drawing from the north pole, one path per edge.
pub fn export_svg(r: &Realization, m: &PolyhedralMap) -> Result<String, GeometryError> {
    check_count(r, m)?;
    let arcs: Vec<Vec<(f64, f64)>> = m
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (r.coords[e.ends.0], r.coords[e.ends.1]);
            (0..=ARC_SEGMENTS).map(|k| stereographic(&slerp(&a, &b, k as f64 / ARC_SEGMENTS as f64))).collect()
        })
        .collect();
    let extent = arcs.iter().flatten().map(|&(x, y)| x.abs().max(y.abs())).fold(1e-9, f64::max);
    let scale = 0.48 * SVG_SIZE / extent;
    let half = SVG_SIZE / 2.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1">"#);
    for (e, arc) in m.edges().iter().zip(&arcs) {
        let _ = write!(out, r#"<path data-edge="{}-{}" d=""#, e.ends.0, e.ends.1);
        for (k, &(x, y)) in arc.iter().enumerate() {
            let _ = write!(out, "{}{:.3} {:.3}", if k == 0 { "M" } else { " L" }, half + scale * x, half - scale * y);
        }
        let _ = writeln!(out, r#""/>"#);
    }
    let _ = writeln!(out, "</g>\n</svg>");
    Ok(out)
}
