//! Command-line front end. Every subcommand prints one JSON document (or a
//! short text summary with `--format text`).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds;
use crate::embedding::Embedding;
use crate::families;
use crate::graph::Graph;
use crate::planarity::{self, NestedCertificate, Planarity};
use crate::search::{self, SearchConfig, SearchResult, SearchValue};

#[derive(Parser, Debug)]
#[command(name = "stronggenus", version, about = "Embeddings, strong genus search and near-planar counterexamples")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Hex,
    K33,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// Largest genus to search.
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long, env = "STRONGGENUS_THREADS", default_value_t = 1)]
    threads: usize,
    /// Seconds before the search gives up.
    #[arg(long)]
    timeout: Option<f64>,
    /// Disable branch-and-bound pruning (plain enumeration).
    #[arg(long)]
    no_prune: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig { cap: self.cap, threads: self.threads.max(1), timeout: self.timeout.map(Duration::from_secs_f64), pruning: !self.no_prune }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write graph, embedding and certificate files for a family member.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        rings: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// List the faces of an embedding.
    Faces { embedding: PathBuf },
    /// Euler characteristic, orientability and genus.
    Genus { embedding: PathBuf },
    StrongCheck { embedding: PathBuf },
    PolyhedralCheck { embedding: PathBuf },
    /// Facial distance between two vertices (1-based).
    Fdist {
        embedding: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Nested separating cycles for two vertices of a planar embedding.
    Prop1Cert {
        embedding: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least genus of a strong orientable embedding.
    SgSearch {
        graph: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum orientable genus.
    MinGenus {
        graph: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Bounds {
        #[arg(long)]
        girth: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Full counterexample pipeline for a family member.
    Verify {
        #[arg(long, value_enum, default_value_t = Family::Hex)]
        family: Family,
        #[arg(long, default_value_t = 5)]
        rings: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Recorded in the report for reproducibility.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command: exit status plus message.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure { code: 2, message: e.to_string() }
            }
        }
    )*};
}

failure_from!(
    crate::graph::GraphError,
    crate::embedding::EmbeddingError,
    crate::planarity::PlanarityError,
    crate::search::SearchError,
    crate::bounds::BoundsError
);

/// Runs the CLI with `argv[0]` as program name; returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((doc, code)) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")),
                Format::Text => writeln!(out, "{}", to_text(&doc, 0)),
            };
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn to_text(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) | Value::Array(_) if !is_flat(v) => format!("{pad}{k}:\n{}", to_text(v, indent + 2)),
                _ => format!("{pad}{k}: {}", to_text(v, 0)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) if is_flat(v) => items.iter().map(|i| to_text(i, 0)).collect::<Vec<_>>().join(" "),
        Value::Array(items) => items.iter().map(|i| format!("{pad}-\n{}", to_text(i, indent + 2))).collect::<Vec<_>>().join("\n"),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_embedding(path: &Path) -> Result<Embedding, Failure> {
    Ok(Embedding::parse(&read(path)?)?)
}

fn load_graph(path: &Path) -> Result<Arc<Graph>, Failure> {
    Ok(Arc::new(Graph::parse(&read(path)?)?))
}

fn write_file(path: &Path, body: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| Failure::usage(format!("{}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, body).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn vertex_arg(v: usize, g: &Graph) -> Result<usize, Failure> {
    if v == 0 || v > g.vertex_count() {
        return Err(Failure::usage(format!("vertex {v} out of range 1..={}", g.vertex_count())));
    }
    Ok(v - 1)
}

fn value_json(v: SearchValue) -> Value {
    match v {
        SearchValue::Genus(g) => json!(g),
        SearchValue::AboveCap => json!("above_cap"),
        SearchValue::Infinite => json!("infinite"),
        SearchValue::Unknown => json!("unknown"),
    }
}

fn search_json(r: &SearchResult, witness_file: Option<&Path>) -> Value {
    json!({
        "quantity": r.quantity,
        "value": value_json(r.value),
        "lower_bound": r.lower_bound,
        "exhaustive": r.exhaustive,
        "nodes": r.nodes_explored,
        "witness_file": witness_file.map(|p| p.display().to_string()),
    })
}

fn dispatch(cli: &Cli) -> Result<(Value, i32), Failure> {
    match &cli.command {
        Command::Gen { family, rings, out } => gen(*family, *rings, out).map(|v| (v, 0)),
        Command::Faces { embedding } => {
            let e = load_embedding(embedding)?;
            let g = e.graph();
            let faces: Vec<Value> = e
                .trace_faces()
                .iter()
                .map(|w| {
                    json!({
                        "length": w.len(),
                        "darts": w.darts().map(|d| d.to_string()).collect::<Vec<_>>(),
                        "vertices": w.vertex_sequence(g).iter().map(|v| v + 1).collect::<Vec<_>>(),
                        "is_cycle": w.is_cycle(g),
                    })
                })
                .collect();
            Ok((json!({ "face_count": faces.len(), "faces": faces }), 0))
        }
        Command::Genus { embedding } => {
            let e = load_embedding(embedding)?;
            let s = e.surface()?;
            Ok((json!({ "euler_characteristic": e.euler_characteristic(), "orientable": s.orientable, "genus": s.genus, "faces": e.face_count() }), 0))
        }
        Command::StrongCheck { embedding } => {
            let e = load_embedding(embedding)?;
            let g = e.graph();
            let bad: Vec<usize> = e.trace_faces().iter().enumerate().filter(|(_, w)| !w.is_cycle(g)).map(|(i, _)| i + 1).collect();
            Ok((json!({ "strong": bad.is_empty(), "non_cycle_faces": bad }), 0))
        }
        Command::PolyhedralCheck { embedding } => {
            let e = load_embedding(embedding)?;
            Ok((json!({ "polyhedral": e.is_polyhedral(), "strong": e.is_strong() }), 0))
        }
        Command::Fdist { embedding, x, y } => {
            let e = load_embedding(embedding)?;
            let (xv, yv) = (vertex_arg(*x, e.graph())?, vertex_arg(*y, e.graph())?);
            let q = e.facial_distance(xv, yv)?;
            Ok((json!({ "x": x, "y": y, "facial_distance": q, "thm1_bound": bounds::thm1_bound(q as u64)? }), 0))
        }
        Command::Prop1Cert { embedding, x, y, out } => {
            let e = load_embedding(embedding)?;
            let (xv, yv) = (vertex_arg(*x, e.graph())?, vertex_arg(*y, e.graph())?);
            let cert = planarity::prop1_certificate(&e, xv, yv)?;
            let check = planarity::verify_certificate(e.graph(), &cert, &e);
            if let Some(p) = out {
                write_file(p, &cert.to_text())?;
            }
            let doc = json!({
                "x": x,
                "y": y,
                "rings": cert.cycles.len(),
                "facial_distance": e.facial_distance(xv, yv)?,
                "cycles": cert.cycles.iter().map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "verified": check.is_valid(),
                "problems": check.problems,
            });
            Ok((doc, if check.is_valid() { 0 } else { 1 }))
        }
        Command::SgSearch { graph, search, out } | Command::MinGenus { graph, search, out } => {
            let g = load_graph(graph)?;
            let cfg = search.config();
            let r = if matches!(cli.command, Command::SgSearch { .. }) { search::strong_genus(&g, &cfg)? } else { search::min_genus(&g, &cfg)? };
            let witness_file = match (&r.witness, out) {
                (Some(w), Some(dir)) => {
                    let stem = graph.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
                    let path = dir.join(format!("{stem}-witness.emb"));
                    write_file(&path, &w.to_text())?;
                    Some(path)
                }
                _ => None,
            };
            Ok((search_json(&r, witness_file.as_deref()), 0))
        }
        Command::Bounds { girth, n, m, q } => {
            let report = bounds::report(*n, *m, *girth, *q)?;
            Ok((serde_json::to_value(report).expect("serializable"), 0))
        }
        Command::Verify { family, rings, search, seed, out } => {
            if *family != Family::Hex {
                return Err(Failure::usage("verify supports --family hex"));
            }
            let report = verify_hex(*rings, &search.config(), *seed)?;
            let code = if report.passed() { 0 } else { 1 };
            if let Some(dir) = out {
                write_file(&dir.join(format!("hex-{rings}-report.json")), &serde_json::to_string_pretty(&report).expect("serializable"))?;
            }
            Ok((serde_json::to_value(&report).expect("serializable"), code))
        }
    }
}

fn gen(family: Family, rings: usize, out: &Path) -> Result<Value, Failure> {
    let mut files = Vec::new();
    let mut emit = |name: String, body: String| -> Result<(), Failure> {
        let p = out.join(name);
        write_file(&p, &body)?;
        files.push(p.display().to_string());
        Ok(())
    };
    match family {
        Family::K33 => {
            emit("k33.graph".into(), families::k33().to_text())?;
            Ok(json!({ "family": "k33", "files": files }))
        }
        Family::Hex => {
            let inst = families::hex_cylinder(rings).map_err(|e| Failure::usage(e.to_string()))?;
            let stem = format!("hex-{rings}");
            emit(format!("{stem}.graph"), inst.graph.to_text())?;
            emit(format!("{stem}-planar.emb"), inst.reference_planar.to_text())?;
            if let Some(t) = &inst.reference_toroidal {
                emit(format!("{stem}-toroidal.emb"), t.to_text())?;
            }
            emit(format!("{stem}.cert"), inst.reference_rings.to_text())?;
            Ok(json!({
                "family": "hex",
                "rings": rings,
                "vertices": inst.graph.vertex_count(),
                "edges": inst.graph.edge_count(),
                "x": inst.x + 1,
                "y": inst.y + 1,
                "planarizing_edge": inst.planarizing_edge + 1,
                "files": files,
            }))
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct CertificateSummary {
    pub rings: usize,
    pub cycle_lengths: Vec<usize>,
    pub verified: bool,
}

#[derive(Debug, Serialize)]
pub struct SearchSummary {
    pub cap: Option<u32>,
    pub value: Value,
    pub lower_bound: u32,
    pub exhaustive: bool,
    pub nodes: u64,
    pub pruning: bool,
}

#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub cap: Option<u32>,
    pub threads: usize,
    pub timeout_secs: Option<f64>,
    pub pruning: bool,
    pub seed: u64,
}

/// Outcome of the counterexample pipeline on one family member.
#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub vertices: usize,
    pub edges: usize,
    pub gamma: Option<u32>,
    pub q: usize,
    pub thm1_bound: u64,
    pub sg_lower: u64,
    pub sg_lower_method: &'static str,
    pub search: Option<SearchSummary>,
    pub certificate: CertificateSummary,
    pub checks: Vec<Check>,
    pub counterexample: bool,
    pub config: RunConfig,
    pub timings_ms: BTreeMap<&'static str, u128>,
}

impl VerificationReport {
    /// All checks hold, and if the bound exceeds the genus the gap is certified.
    pub fn passed(&self) -> bool {
        let expected = self.gamma.is_some_and(|g| self.thm1_bound > g as u64);
        self.checks.iter().all(|c| c.pass) && (!expected || self.counterexample)
    }
}

/// Builds `hex_cylinder(rings)` and certifies genus, facial distance, the
/// nested rings and a strong-genus lower bound.
pub fn verify_hex(rings: usize, cfg: &SearchConfig, seed: u64) -> Result<VerificationReport, Failure> {
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let inst = families::hex_cylinder(rings).map_err(|e| Failure::usage(e.to_string()))?;
    timings.insert("build", t.elapsed().as_millis());
    let g = inst.graph.clone();
    let planar_part = Arc::new(inst.planar_part().clone());
    let mut checks = Vec::new();

    let t = Instant::now();
    let full = planarity::planar_embedding(&g)?;
    let part = planarity::planar_embedding(&planar_part)?;
    let toroidal_chi = inst.reference_toroidal.as_ref().map(|e| e.euler_characteristic());
    checks.push(Check { name: "cubic", pass: g.is_cubic() });
    checks.push(Check { name: "planar_after_deleting_xy", pass: part.is_planar() });
    checks.push(Check { name: "full_graph_nonplanar", pass: full == Planarity::NonPlanar });
    checks.push(Check { name: "toroidal_witness_chi_zero", pass: toroidal_chi == Some(0) });
    checks.push(Check { name: "subdivision_of_3_connected", pass: planar_part.is_subdivision_of_3connected() });
    let gamma = (full == Planarity::NonPlanar && toroidal_chi == Some(0)).then_some(1);
    timings.insert("genus", t.elapsed().as_millis());

    let t = Instant::now();
    let e = &inst.reference_planar;
    let q = e.facial_distance(inst.x, inst.y)?;
    checks.push(Check { name: "facial_distance_is_rings_plus_one", pass: q == rings + 1 });
    let cert = planarity::prop1_certificate(e, inst.x, inst.y)?;
    let verified = planarity::verify_certificate(&planar_part, &cert, e).is_valid();
    checks.push(Check { name: "certificate_verified", pass: verified && cert.cycles.len() + 1 == q });
    checks.push(Check { name: "reference_rings_verified", pass: planarity::verify_certificate(&planar_part, &inst.reference_rings, e).is_valid() });
    let layers = e.face_bfs_layers(inst.x, inst.y);
    checks.push(Check { name: "face_layers_disjoint", pass: layers.as_ref().is_ok_and(|l| l.len() + 1 == q) });
    timings.insert("facial_distance", t.elapsed().as_millis());
    let thm1 = bounds::thm1_bound(q as u64)?;

    let t = Instant::now();
    let result = search::strong_genus(&g, cfg)?;
    timings.insert("search", t.elapsed().as_millis());
    let search_bound = result.exhaustive.then_some(result.lower_bound as u64);
    if let (SearchValue::Genus(found), Some(w)) = (result.value, &result.witness) {
        checks.push(Check { name: "strong_witness_rechecks", pass: w.is_strong() && w.surface().map(|s| s.genus) == Ok(found) });
        checks.push(Check { name: "search_consistent_with_thm1", pass: found as u64 >= thm1 });
    }
    let (sg_lower, method) = match search_bound {
        Some(b) if b >= thm1 => (b, if cfg.pruning { "search-bnb" } else { "search-exhaustive" }),
        _ => (thm1, "thm1-bound"),
    };
    let counterexample = gamma.is_some_and(|gm| sg_lower > gm as u64);

    Ok(VerificationReport {
        instance: format!("hex-{rings}"),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        gamma,
        q,
        thm1_bound: thm1,
        sg_lower,
        sg_lower_method: method,
        search: Some(SearchSummary { cap: cfg.cap, value: value_json(result.value), lower_bound: result.lower_bound, exhaustive: result.exhaustive, nodes: result.nodes_explored, pruning: cfg.pruning }),
        certificate: CertificateSummary { rings: cert.cycles.len(), cycle_lengths: cert.cycles.iter().map(Vec::len).collect(), verified },
        checks,
        counterexample,
        config: RunConfig { cap: cfg.cap, threads: cfg.threads, timeout_secs: cfg.timeout.map(|t| t.as_secs_f64()), pruning: cfg.pruning, seed },
        timings_ms: timings,
    })
}

/// Parses a certificate file against a graph with `n` vertices.
pub fn load_certificate(path: &Path, n: usize) -> Result<NestedCertificate, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    NestedCertificate::parse(&text, n).map_err(|e| e.to_string())
}
