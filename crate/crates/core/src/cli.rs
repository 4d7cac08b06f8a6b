//! Command-line front end. `run` parses arguments and executes one command
//! without touching the process, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 domain error (the error kind is printed), 2
//! usage or input-parsing error.

use std::fmt::{self, Display, Write as _};
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{self, antiprism_map, prism_map, CatalogError};
use crate::classify::{identify, identify_projective, ClassifyError};
use crate::geometry::{self, export_off, export_svg, realize_on_sphere, GeometryError, Realization};
use crate::io::{parse_map, write_map, ParseError};
use crate::map::{MapError, PolyhedralMap};
use crate::operators::{self, canonical_seed, OpError};
use crate::symmetry::{self, automorphism_group, cycle_notation, free_involutions, isomorphism, SymmetryError};
use crate::verify;
use crate::vtype::{enumerate_admissible, semi_equivelar_type, Family, VTypeError};

#[derive(Debug, Parser)]
#[command(name = "semap", version, about = "Semi-equivelar maps on the sphere and the projective plane")]
pub struct Cli {
    /// Print one JSON document instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the admissible spherical vertex types with their vertex counts.
    EnumTypes {
        #[arg(long)]
        max_gon: u32,
    },
    /// Build a catalog map by name.
    Build {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an operator to a map file.
    Apply {
        op: Op,
        /// Map file; `-` or no flag reads standard input.
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
        /// Output file; without it the map goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Diagonal `a,b` of an eligible square, for insert-matching.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Name a map and print an isomorphism onto the catalog entry.
    Classify {
        /// Map file; `-` or no flag reads standard input.
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
    },
    /// Decide whether two map files are isomorphic.
    Isom { a: PathBuf, b: PathBuf },
    /// Automorphism group, vertex orbits and vertex-transitivity.
    Autgroup {
        /// Map file; `-` or no flag reads standard input.
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
    },
    /// Write coordinates on the unit sphere as OFF or SVG.
    Export {
        /// Map file; `-` or no flag reads standard input.
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the ten projective-plane maps and a manifest.
    Rp2Catalog {
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the sphere catalog manifest, optionally writing every map.
    SphereCatalog {
        #[arg(long, default_value_t = 12)]
        max_gon: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Truncate,
    Rectify,
    Dual,
    RemoveDeepBlue,
    InsertMatching,
    Quotient,
    DoubleCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Off,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

trait Kinded: Display {
    fn kind(&self) -> &'static str;
}

macro_rules! kinded {
    ($($t:ty),*) => {$(
        impl Kinded for $t {
            fn kind(&self) -> &'static str {
                <$t>::kind(self)
            }
        }
    )*};
}

kinded!(CatalogError, ClassifyError, GeometryError, MapError, OpError, ParseError, SymmetryError, VTypeError);

fn domain(e: impl Kinded) -> Failure {
    Failure::Domain { kind: e.kind(), message: e.to_string() }
}

/// A finished command: text for stdout, the same fields as JSON, and
/// optional side text for stderr.
struct Report {
    text: String,
    json: Value,
    note: String,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, note: String::new() }
    }
}

pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> CommandOutcome {
    let result = match &cli.command {
        Command::EnumTypes { max_gon } => enum_types(*max_gon),
        Command::Build { name, out } => build(name, out.as_deref(), cli.json),
        Command::Apply { op, input, out, seed } => apply(*op, input, out.as_deref(), seed.as_deref(), cli.json),
        Command::Classify { input } => classify(input),
        Command::Isom { a, b } => isom(a, b),
        Command::Autgroup { input } => autgroup(input),
        Command::Export { input, format, out } => export(input, *format, out.as_deref(), cli.json),
        Command::Rp2Catalog { out } => rp2_catalog(out),
        Command::SphereCatalog { max_gon, out } => sphere_catalog(*max_gon, out.as_deref()),
        Command::Verify { suite } => run_verify(suite),
    };
    match result {
        Ok((code, report)) => CommandOutcome {
            code,
            stdout: if cli.json { format!("{}\n", report.json) } else { report.text },
            stderr: report.note,
        },
        Err(Failure::Usage(message)) => fail(2, "UsageError", &message, cli.json),
        Err(Failure::Domain { kind, message }) => fail(1, kind, &message, cli.json),
    }
}

fn fail(code: i32, kind: &str, message: &str, json: bool) -> CommandOutcome {
    let stdout = if json { format!("{}\n", json!({ "error": kind, "message": message })) } else { String::new() };
    CommandOutcome { code, stdout, stderr: format!("{kind}: {message}\n") }
}

type CmdResult = Result<(i32, Report), Failure>;

fn read_map(path: &Path) -> Result<PolyhedralMap, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map(|_| text)
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_map(&text).map_err(|e| match e {
        ParseError::Invalid(_) => Failure::Domain { kind: e.kind(), message: format!("{}: {e}", path.display()) },
        _ => Failure::Usage(format!("{}: {}: {e}", path.display(), e.kind())),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn type_name(m: &PolyhedralMap) -> String {
    semi_equivelar_type(m).map(|t| t.to_string()).unwrap_or_else(|_| "mixed".to_string())
}

fn enum_types(max_gon: u32) -> CmdResult {
    if max_gon < 12 {
        return Err(Failure::Usage(format!("--max-gon must be at least 12, got {max_gon}")));
    }
    let e = enumerate_admissible(max_gon).map_err(domain)?;
    let mut text = String::new();
    let mut sporadic = Vec::new();
    for (t, count) in crate::vtype::sporadic_table() {
        let _ = writeln!(text, "sporadic {t} {count}");
        sporadic.push(json!({ "type": t.to_string(), "count": count }));
    }
    let mut families = Vec::new();
    for (family, params) in [(Family::Prism, &e.prisms), (Family::Antiprism, &e.antiprisms)] {
        let label = match family {
            Family::Prism => "prism",
            Family::Antiprism => "antiprism",
        };
        for &n in params {
            let t = family.member(n);
            let _ = writeln!(text, "{label} {t} {}", 2 * n);
            families.push(json!({ "family": label, "type": t.to_string(), "count": 2 * n }));
        }
    }
    let violations: Vec<String> = e.violations.iter().map(|t| t.to_string()).collect();
    for v in &violations {
        let _ = writeln!(text, "violation {v}");
    }
    let code = if violations.is_empty() { 0 } else { 1 };
    Ok((code, Report::new(text, json!({ "sporadic": sporadic, "families": families, "violations": violations }))))
}

fn build(name: &str, out: Option<&Path>, json_mode: bool) -> CmdResult {
    let entry = catalog::build(name).map_err(domain)?;
    let summary = format!("{} {}", entry.expected_type, entry.expected_count);
    let mut fields = json!({ "name": entry.name, "type": entry.expected_type.to_string(), "count": entry.expected_count });
    let map_text = write_map(&entry.map);
    match out {
        Some(path) => {
            write_file(path, &map_text)?;
            Ok((0, Report::new(format!("{summary}\n"), fields)))
        }
        None => {
            fields["map"] = Value::String(map_text.clone());
            let note = if json_mode { String::new() } else { format!("{summary}\n") };
            Ok((0, Report { text: map_text, json: fields, note }))
        }
    }
}

fn parse_seed(seed: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("seed must look like a,b; got {seed}"));
    let (a, b) = seed.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn apply(op: Op, input: &Path, out: Option<&Path>, seed: Option<&str>, json_mode: bool) -> CmdResult {
    let x = read_map(input)?;
    let y = match op {
        Op::Truncate => operators::truncate(&x).map_err(domain)?,
        Op::Rectify => operators::rectify(&x).map_err(domain)?,
        Op::Dual => operators::dual(&x).map_err(domain)?,
        Op::RemoveDeepBlue => operators::remove_deep_blue(&x).map_err(domain)?,
        Op::InsertMatching => {
            let seed = match seed {
                Some(s) => parse_seed(s)?,
                None => canonical_seed(&x).ok_or_else(|| {
                    domain(OpError::WrongShape { op: "insert matching", reason: "no eligible square".to_string() })
                })?,
            };
            operators::insert_diagonal_matching(&x, seed).map_err(domain)?
        }
        Op::Quotient => {
            let sigma = free_involutions(&x).into_iter().next().ok_or_else(|| domain(SymmetryError::NotFreeInvolution))?;
            symmetry::quotient(&x, &sigma).map_err(domain)?
        }
        Op::DoubleCover => symmetry::double_cover(&x).map_err(domain)?.0,
    };
    let (bt, at) = (type_name(&x), type_name(&y));
    let summary = format!("before {bt} {}\nafter {at} {}\n", x.vertex_count(), y.vertex_count());
    let mut fields = json!({
        "before": { "type": bt, "count": x.vertex_count() },
        "after": { "type": at, "count": y.vertex_count() },
    });
    let map_text = write_map(&y);
    match out {
        Some(path) => {
            write_file(path, &map_text)?;
            Ok((0, Report::new(summary, fields)))
        }
        None => {
            fields["map"] = Value::String(map_text.clone());
            let note = if json_mode { String::new() } else { summary };
            Ok((0, Report { text: map_text, json: fields, note }))
        }
    }
}

fn classify(input: &Path) -> CmdResult {
    let m = read_map(input)?;
    let verdict = if m.euler_characteristic() == 1 { identify_projective(&m) } else { identify(&m) }.map_err(domain)?;
    let witness = cycle_notation(&verdict.witness);
    Ok((0, Report::new(format!("{verdict}\n"), json!({ "name": verdict.name, "witness": witness }))))
}

fn isom(a: &Path, b: &Path) -> CmdResult {
    let (ma, mb) = (read_map(a)?, read_map(b)?);
    let witness = isomorphism(&ma, &mb).map(|w| cycle_notation(&w));
    let mut text = format!("isomorphic: {}\n", witness.is_some());
    if let Some(w) = &witness {
        let _ = writeln!(text, "witness: {w}");
    }
    Ok((0, Report::new(text, json!({ "isomorphic": witness.is_some(), "witness": witness }))))
}

fn autgroup(input: &Path) -> CmdResult {
    let m = read_map(input)?;
    let g = automorphism_group(&m);
    let orbits: Vec<String> =
        g.orbits.iter().map(|o| o.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
    let elements: Vec<String> = g.elements.iter().map(|p| cycle_notation(p)).collect();
    let mut text = format!("order: {}\norbits: {}\nvertex-transitive: {}\n", g.order(), orbits.join(" | "), g.is_vertex_transitive());
    for e in &elements {
        let _ = writeln!(text, "element: {e}");
    }
    let json = json!({
        "order": g.order(),
        "orbits": g.orbits,
        "vertex-transitive": g.is_vertex_transitive(),
        "elements": elements,
    });
    Ok((0, Report::new(text, json)))
}

/// Exact coordinates when the map is a prism or an antiprism, carried over
/// to the input labelling.
fn exact_realization(m: &PolyhedralMap) -> Option<Realization> {
    let name = identify(m).ok()?.name;
    let (target, mut r) = match name.as_str() {
        "cube" => (prism_map(4).ok()?, geometry::prism_coordinates(4).ok()?),
        "octahedron" => (antiprism_map(3).ok()?, geometry::antiprism_coordinates(3).ok()?),
        _ => {
            if let Some(n) = name.strip_prefix("antiprism-") {
                let n = n.parse().ok()?;
                (antiprism_map(n).ok()?, geometry::antiprism_coordinates(n).ok()?)
            } else {
                let n = name.strip_prefix("prism-")?.parse().ok()?;
                (prism_map(n).ok()?, geometry::prism_coordinates(n).ok()?)
            }
        }
    };
    let witness = isomorphism(m, &target)?;
    r.coords = witness.iter().map(|&w| r.coords[w]).collect();
    r.report = geometry::ValidationReport { converged: true, ..geometry::validate(m, &r.coords) };
    Some(r)
}

fn export(input: &Path, format: Format, out: Option<&Path>, json_mode: bool) -> CmdResult {
    let m = read_map(input)?;
    let r = match exact_realization(&m) {
        Some(r) => r,
        None => realize_on_sphere(&m).map_err(domain)?,
    };
    let data = match format {
        Format::Off => export_off(&r, &m),
        Format::Svg => export_svg(&r, &m),
    }
    .map_err(domain)?;
    let provenance: &'static str = r.provenance.into();
    let rep = r.report;
    let summary = format!(
        "provenance: {provenance}\nmax-norm-deviation: {:e}\nedge-length-spread: {:e}\nplanarity-residual: {:e}\nregularity-residual: {:e}\nfolded-faces: {}\n",
        rep.max_norm_deviation, rep.edge_length_spread, rep.max_planarity_residual, rep.max_regularity_residual, rep.folded_faces
    );
    let mut fields = json!({ "provenance": provenance, "report": rep });
    match out {
        Some(path) => {
            write_file(path, &data)?;
            Ok((0, Report::new(summary, fields)))
        }
        None => {
            fields["data"] = Value::String(data.clone());
            let note = if json_mode { String::new() } else { summary };
            Ok((0, Report { text: data, json: fields, note }))
        }
    }
}

fn write_catalog(dir: &Path, entries: &[catalog::CatalogEntry]) -> Result<(Vec<String>, String), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    let mut manifest = String::from("name\ttype\tcount\trecipe\n");
    for e in entries {
        let path = dir.join(format!("{}.map", e.name));
        write_file(&path, &write_map(&e.map))?;
        files.push(path.display().to_string());
        let _ = writeln!(manifest, "{}", e.manifest_line());
    }
    let path = dir.join("manifest.tsv");
    write_file(&path, &manifest)?;
    Ok((files, path.display().to_string()))
}

fn rp2_catalog(out: &Path) -> CmdResult {
    let entries = catalog::rp2_catalog().map_err(domain)?;
    let (files, manifest) = write_catalog(out, &entries)?;
    let mut text = String::new();
    for f in &files {
        let _ = writeln!(text, "wrote {f}");
    }
    let _ = writeln!(text, "manifest {manifest}");
    Ok((0, Report::new(text, json!({ "files": files, "manifest": manifest }))))
}

fn sphere_catalog(max_gon: u32, out: Option<&Path>) -> CmdResult {
    let entries = catalog::sphere_catalog(max_gon).map_err(|e| match e {
        CatalogError::MaxGonTooSmall(_) => Failure::Usage(e.to_string()),
        other => domain(other),
    })?;
    if let Some(dir) = out {
        write_catalog(dir, &entries)?;
    }
    let lines: Vec<String> = entries.iter().map(|e| e.manifest_line()).collect();
    let text = lines.iter().map(|l| format!("{l}\n")).collect();
    let json = json!({
        "entries": entries
            .iter()
            .map(|e| json!({ "name": e.name, "type": e.expected_type.to_string(), "count": e.expected_count, "recipe": e.recipe }))
            .collect::<Vec<_>>(),
    });
    Ok((0, Report::new(text, json)))
}

struct Lines<'a>(&'a [verify::Check]);

impl fmt::Display for Lines<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| writeln!(f, "{c}"))
    }
}

fn run_verify(suite: &str) -> CmdResult {
    let checks = verify::run_suite(suite).map_err(|e| Failure::Usage(e.to_string()))?;
    let code = if checks.iter().all(|c| c.passed) { 0 } else { 1 };
    let json = json!({
        "checks": checks
            .iter()
            .map(|c| json!({ "id": c.id, "suite": c.suite, "passed": c.passed, "seconds": c.elapsed.as_secs_f64(), "detail": c.detail }))
            .collect::<Vec<_>>(),
    });
    Ok((code, Report::new(Lines(&checks).to_string(), json)))
}
