//! `arithdyn` command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use arithdyn::degree_engine::{alpha_ratio, alpha_root, canonical_height_with};
use arithdyn::experiments::{run_experiment, ExperimentConfig, ExperimentKind, ExperimentReport, ReportRow};
use arithdyn::heights::TorusEmbedding;
use arithdyn::map_zoo::{iterate_orbit, OrbitOptions, Point, SelfMap, DEFAULT_BIT_BUDGET};
use arithdyn::ns_calculus::{ns_check, NsDocument};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Exit status when some cell is inconsistent beyond tolerance.
const EXIT_INCONSISTENT: u8 = 2;
/// Exit status when an invariance check fails.
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "arithdyn", version, about = "Dynamical and arithmetic degrees of concrete self-maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for sampled points (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest coordinate size, in bits, an orbit may reach.
    #[arg(long, global = true)]
    bit_budget: Option<u64>,
    /// Allowed gap between the estimate and the dynamical degree.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file. Experiments treat it as a prefix and write both `.csv` and `.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Height model on tori.
    #[arg(long, global = true, value_enum)]
    embedding: Option<Embedding>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Embedding {
    Projective,
    Product,
}

impl From<Embedding> for TorusEmbedding {
    fn from(e: Embedding) -> Self {
        match e {
            Embedding::Projective => TorusEmbedding::ProjectiveSpace,
            Embedding::Product => TorusEmbedding::ProductOfLines,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certified dynamical degree of a map.
    Delta { map: PathBuf },
    /// Orbit of a point with exact coordinates and heights.
    Orbit {
        map: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Arithmetic degree estimates along an orbit.
    Alpha {
        map: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Canonical height with its truncation bound.
    Canonical {
        map: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 40)]
        n: usize,
    },
    /// Verdict sweep over the maps and points of a config.
    VerifyKs { config: PathBuf },
    /// Curve points with positive canonical height.
    FindPoints { config: PathBuf },
    /// Points with pairwise disjoint orbit segments.
    DisjointOrbits { config: PathBuf },
    /// Intersection table and pullback checks for a Neron-Severi model.
    NsCheck { model: PathBuf },
    /// Whatever experiment the config names.
    Run { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let c = &cli.common;
    match &cli.command {
        Command::Delta { map } => cmd_delta(c, map),
        Command::Orbit { map, point, n } => cmd_orbit(c, map, point, *n),
        Command::Alpha { map, point, n } => cmd_alpha(c, map, point, *n),
        Command::Canonical { map, point, n } => cmd_canonical(c, map, point, *n),
        Command::VerifyKs { config } => cmd_experiment(c, config, Some(ExperimentKind::VerdictSweep)),
        Command::FindPoints { config } => cmd_experiment(c, config, Some(ExperimentKind::FindPoints)),
        Command::DisjointOrbits { config } => cmd_experiment(c, config, Some(ExperimentKind::DisjointOrbits)),
        Command::Run { config } => cmd_experiment(c, config, None),
        Command::NsCheck { model } => cmd_ns_check(c, model),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A map file holds either a bare map description or `{"id": .., "map": ..}`.
fn load_map(path: &Path) -> Result<(String, SelfMap)> {
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let (id, spec, at) = match doc.get("map") {
        Some(m) => (doc.get("id").and_then(Value::as_str).map_or(stem, str::to_string), m, "map"),
        None => (stem, &doc, ""),
    };
    let map = SelfMap::from_json(spec, at).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    Ok((id, map))
}

fn orbit_options(c: &Common, n: usize) -> OrbitOptions {
    let mut opts = OrbitOptions::new(n).with_bit_budget(c.bit_budget.unwrap_or(DEFAULT_BIT_BUDGET));
    if let Some(e) = c.embedding {
        opts = opts.with_embedding(e.into());
    }
    opts
}

fn emit(c: &Common, text: &str) -> Result<()> {
    match &c.out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_json(c: &Common, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    emit(c, &s)
}

/// Single-row CSV in the shared report layout.
fn emit_rows(c: &Common, rows: Vec<ReportRow>) -> Result<()> {
    let report = ExperimentReport {
        kind: ExperimentKind::VerdictSweep,
        rows,
        details: Value::Null,
        inconsistent: 0,
        failed_checks: 0,
    };
    emit(c, &report.to_csv()?)
}

fn blank_row(id: &str, point: &str) -> ReportRow {
    ReportRow {
        map_id: id.into(),
        point: point.into(),
        delta: None,
        alpha: None,
        alpha_err: None,
        hhat: None,
        status: String::new(),
        verdict: String::new(),
    }
}

fn cmd_delta(c: &Common, path: &Path) -> Result<u8> {
    let (id, f) = load_map(path)?;
    let d = f.delta()?;
    if c.format == Some(Format::Csv) {
        let mut row = blank_row(&id, "");
        row.delta = Some(d.value);
        row.status = format!("domain={}", f.domain());
        emit_rows(c, vec![row])?;
    } else {
        emit_json(c, &json!({"map_id": id, "domain": f.domain().to_string(), "delta": d}))?;
    }
    Ok(0)
}

fn cmd_orbit(c: &Common, path: &Path, point: &str, n: usize) -> Result<u8> {
    let (id, f) = load_map(path)?;
    let p = Point::parse_for(f.domain(), point)?;
    let orbit = iterate_orbit(&f, &p, &orbit_options(c, n))?;
    if c.format == Some(Format::Csv) {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        w.write_record(["step", "point", "height"])?;
        for (k, (q, h)) in orbit.points.iter().zip(&orbit.heights).enumerate() {
            w.write_record([k.to_string(), q.to_string(), h.value.to_string()])?;
        }
        emit(c, &String::from_utf8(w.into_inner()?)?)?;
    } else {
        emit_json(c, &json!({"map_id": id, "status": orbit.status.to_string(), "orbit": orbit}))?;
    }
    Ok(0)
}

fn cmd_alpha(c: &Common, path: &Path, point: &str, n: usize) -> Result<u8> {
    let (id, f) = load_map(path)?;
    let p = Point::parse_for(f.domain(), point)?;
    let delta = f.delta()?;
    let orbit = iterate_orbit(&f, &p, &orbit_options(c, n))?;
    let ratio = alpha_ratio(&orbit);
    let root = alpha_root(&orbit);
    if c.format == Some(Format::Csv) {
        let mut row = blank_row(&id, &p.to_string());
        row.delta = Some(delta.value);
        row.status = orbit.status.to_string();
        match &ratio {
            Ok(a) => {
                row.alpha = Some(a.value);
                row.alpha_err = Some(a.error_bar);
            }
            Err(e) => row.verdict = format!("error: {e}"),
        }
        emit_rows(c, vec![row])?;
    } else {
        let show = |r: &Result<_, arithdyn::degree_engine::EngineError>| match r {
            Ok(v) => json!(v),
            Err(e) => json!({"error": e.to_string()}),
        };
        emit_json(
            c,
            &json!({
                "map_id": id,
                "point": p.to_string(),
                "delta": delta,
                "status": orbit.status.to_string(),
                "ratio": show(&ratio),
                "root": show(&root),
            }),
        )?;
    }
    Ok(0)
}

fn cmd_canonical(c: &Common, path: &Path, point: &str, n: usize) -> Result<u8> {
    let (id, f) = load_map(path)?;
    let p = Point::parse_for(f.domain(), point)?;
    let delta = f.delta()?.value;
    let h = canonical_height_with(&f, delta, &p, &orbit_options(c, n))?;
    if c.format == Some(Format::Csv) {
        let mut row = blank_row(&id, &p.to_string());
        row.delta = Some(delta);
        row.hhat = Some(h.value);
        row.status = format!("tail_bound={}", h.tail_bound);
        emit_rows(c, vec![row])?;
    } else {
        emit_json(c, &json!({"map_id": id, "point": p.to_string(), "delta": delta, "canonical_height": h}))?;
    }
    Ok(0)
}

fn cmd_experiment(c: &Common, path: &Path, kind: Option<ExperimentKind>) -> Result<u8> {
    let text = read(path)?;
    let mut cfg = ExperimentConfig::from_json_str(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    if let Some(k) = kind {
        cfg.kind = k;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(b) = c.bit_budget {
        cfg.bit_budget = b;
    }
    if let Some(t) = c.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            bail!("--tolerance must be a nonnegative number");
        }
        cfg.tolerance = t;
    }
    if let Some(e) = c.embedding {
        cfg.embedding = e.into();
    }
    let report = run_experiment(&cfg)?;

    let prefix = c.out.clone().or_else(|| cfg.output.as_ref().map(PathBuf::from));
    match prefix {
        Some(prefix) => {
            let (csv_path, json_path) = report.write_files(&prefix)?;
            eprintln!("wrote {} and {}", csv_path.display(), json_path.display());
        }
        None => match c.format.unwrap_or(Format::Csv) {
            Format::Csv => emit(c, &report.to_csv()?)?,
            Format::Json => emit(c, &report.to_json())?,
        },
    }
    if report.inconsistent > 0 {
        eprintln!("{} cell(s) inconsistent beyond tolerance", report.inconsistent);
        return Ok(EXIT_INCONSISTENT);
    }
    if report.failed_checks > 0 {
        eprintln!("{} check(s) failed", report.failed_checks);
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(0)
}

fn cmd_ns_check(c: &Common, path: &Path) -> Result<u8> {
    let text = read(path)?;
    let doc: NsDocument = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let (model, action) = doc.into_parts()?;
    let report = ns_check(&model, action.as_ref())?;
    if c.format == Some(Format::Csv) {
        let flag = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
        let mut row = blank_row("model", "");
        row.delta = report.delta.map(|d| d.value);
        row.status = format!("pullback_ok={}", flag(report.pullback_ok));
        row.verdict = format!("ample_preserved={}", flag(report.ample_preserved));
        emit_rows(c, vec![row])?;
    } else {
        emit_json(c, &json!(report))?;
    }
    Ok(if report.pullback_ok == Some(false) { EXIT_CHECK_FAILED } else { 0 })
}
