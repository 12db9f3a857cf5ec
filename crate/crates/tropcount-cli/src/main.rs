mod cache;
mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tropcount::enumerate::{enumerate_curves, ingest_curves, ConfigMode, EnumerationResult, PointConfiguration};
use tropcount::lattice::{LatticePoint, LatticePolygon};
use tropcount::motvol::{complex_volume, semistable_volume, CellDatum, StratumDatum, VolumeVariant};
use tropcount::multiplicity::{count_rows, rows_to_csv, totals, CountRow};
use tropcount::rational::QPoint;
use tropcount::ringkit::{HalfLaurent, MotivicClass};
use tropcount::verify::verify_result;
use tropcount::zeta::{functional_equation_report, invert_series, ZetaInput, ZetaVariant};
use tropcount::{Error, Result};

#[derive(Parser)]
#[command(name = "tropcount", version, about = "Count plane tropical curves with refined multiplicities")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached enumeration results.
    #[arg(long, global = true, env = "TROPCOUNT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Disable the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice-point statistics of a polygon.
    Stats {
        #[arg(long)]
        polygon: PathBuf,
    },
    /// List the curves through a configuration.
    Enumerate(Source),
    /// Classical, refined and Welschinger counts.
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare refined multiplicities with the motivic nodal counts.
    Verify(Source),
    /// Extract the coefficients of a Hilbert generating series.
    Zeta {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ZetaKind::ChiY)]
        variant: ZetaKind,
    },
    /// Draw each curve as an SVG file.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out_dir: PathBuf,
        /// Signed-logarithmic layout for widely spread points.
        #[arg(long)]
        symlog: bool,
        /// Omit the subdivision inset.
        #[arg(long)]
        no_inset: bool,
    },
    /// Evaluate motivic volumes of a cell or stratum list.
    Volume {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Clone)]
struct Source {
    #[arg(long)]
    polygon: PathBuf,
    #[arg(long, default_value_t = 0)]
    delta: i64,
    /// Point-configuration JSON.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use supplied curves (a JSON list, or an enumeration result) instead of enumerating.
    #[arg(long, conflicts_with = "config")]
    curves: Option<PathBuf>,
    /// Solve with the hyperplane solver instead of lattice paths.
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZetaKind {
    ChiY,
    Euler,
}

/// Configuration file: every field optional, the point count is implied.
#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    mode: Option<ConfigMode>,
    #[serde(default)]
    points: Vec<QPoint>,
    direction: Option<LatticePoint>,
    scale: Option<i64>,
    cell_budget: Option<u64>,
    #[serde(default)]
    oracle: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::validation(format!("cannot read {}: {e}", path.display()), None))?;
    serde_json::from_str(&text).map_err(|e| Error::validation(format!("{}: {e}", path.display()), None))
}

fn load_polygon(path: &Path) -> Result<LatticePolygon> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::validation(format!("cannot read {}: {e}", path.display()), None))?;
    LatticePolygon::from_json_str(&text)
}

fn build_config(polygon: &LatticePolygon, delta: i64, source: &Source) -> Result<PointConfiguration> {
    let file: ConfigFile = match &source.config {
        Some(p) => read_json(p)?,
        None => ConfigFile::default(),
    };
    let mode = file.mode.unwrap_or(if file.points.is_empty() { ConfigMode::Stretched } else { ConfigMode::Explicit });
    let mut cfg = match mode {
        ConfigMode::Stretched => PointConfiguration::stretched(polygon, delta),
        ConfigMode::Explicit => PointConfiguration::explicit(file.points),
    };
    cfg.direction = file.direction;
    cfg.scale = file.scale;
    cfg.cell_budget = file.cell_budget;
    cfg.oracle = file.oracle || source.oracle;
    Ok(cfg)
}

struct Context {
    cache: Option<cache::Cache>,
}

fn obtain(ctx: &Context, source: &Source) -> Result<EnumerationResult> {
    let polygon = load_polygon(&source.polygon)?;
    if let Some(path) = &source.curves {
        let raw: Value = read_json(path)?;
        let list = match raw {
            Value::Array(items) => items,
            Value::Object(ref m) if m.contains_key("curves") => match &m["curves"] {
                Value::Array(items) => items.clone(),
                _ => return Err(Error::validation("\"curves\" must be a list", None)),
            },
            _ => return Err(Error::validation("expected a list of curves or an enumeration result", None)),
        };
        return ingest_curves(&polygon, source.delta, &list);
    }
    let config = build_config(&polygon, source.delta, source)?;
    let key = cache::CacheKey::new(&polygon, source.delta, &config);
    if let Some(c) = &ctx.cache {
        if let Some(hit) = c.load(&key) {
            return Ok(hit);
        }
    }
    let result = enumerate_curves(&polygon, source.delta, &config)?;
    if let Some(c) = &ctx.cache {
        c.store(&key, &result);
    }
    Ok(result)
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn stats(polygon: &LatticePolygon) -> Value {
    let s = polygon.stats();
    let boundary = s.boundary_length;
    json!({
        "vertices": polygon.to_json().vertices,
        "total_points": s.total_points,
        "interior_points": s.interior_points,
        "boundary_points": boundary,
        "doubled_area": s.doubled_area,
        "genus": polygon.genus(),
        "pick_identity": s.doubled_area == 2 * s.interior_points + boundary - 2,
        "degree": polygon.degree_directions(),
    })
}

#[derive(Serialize)]
struct CountReport {
    polygon_genus: i64,
    curve_genus: i64,
    delta: i64,
    curves: usize,
    classical_total: i64,
    refined_total: HalfLaurent,
    refined_display: String,
    welschinger_total: i64,
    rows: Vec<CountRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VolumeInput {
    #[serde(default)]
    cells: Vec<CellDatum>,
    #[serde(default = "closure")]
    variant: VolumeVariant,
    #[serde(default)]
    strata: Vec<StratumDatum>,
}

fn closure() -> VolumeVariant {
    VolumeVariant::Closure
}

fn class_report(class: &MotivicClass) -> Result<Value> {
    let chi = class.chi_y()?;
    Ok(json!({
        "class": class,
        "display": class.to_string(),
        "chi_y": chi,
        "chi_y_display": chi.to_string(),
        "euler": chi.eval_at_one(),
    }))
}

/// Run a command, returning its output text and exit status.
fn run(cli: &Cli) -> Result<(String, u8)> {
    let cache = if cli.no_cache { None } else { cli.cache_dir.clone().or_else(cache::default_dir).map(cache::Cache::new) };
    let ctx = Context { cache };
    let out = match &cli.command {
        Command::Stats { polygon } => pretty(&stats(&load_polygon(polygon)?)),
        Command::Enumerate(source) => pretty(&obtain(&ctx, source)?),
        Command::Count { source, format } => {
            let result = obtain(&ctx, source)?;
            let t = totals(&result)?;
            let rows = count_rows(&result, &t);
            match format {
                Format::Csv => {
                    let mut s = rows_to_csv(&rows);
                    let n: Vec<String> = t.refined_total.terms().iter().map(|(e, c)| format!("{e}:{c}")).collect();
                    s.push_str(&format!("\"total\",{},\"{}\",{}\n", t.classical_total, n.join(";"), t.welschinger_total));
                    s
                }
                Format::Json => pretty(&CountReport {
                    polygon_genus: result.polygon.genus(),
                    curve_genus: result.genus,
                    delta: result.delta,
                    curves: result.curves.len(),
                    classical_total: t.classical_total,
                    refined_display: t.refined_total.to_string(),
                    refined_total: t.refined_total,
                    welschinger_total: t.welschinger_total,
                    rows,
                }),
            }
        }
        Command::Verify(source) => {
            let report = verify_result(&obtain(&ctx, source)?)?;
            let status = if report.all_equal { 0 } else { 5 };
            return Ok((pretty(&report), status));
        }
        Command::Zeta { input, variant } => {
            let z: ZetaInput = read_json(input)?;
            let variant = match variant {
                ZetaKind::ChiY => ZetaVariant::ChiY,
                ZetaKind::Euler => ZetaVariant::Euler,
            };
            let ex = invert_series(&z, variant)?;
            let mut n = ex.n.clone();
            while n.last().is_some_and(HalfLaurent::is_zero) {
                n.pop();
            }
            let fe = functional_equation_report(&n, z.g);
            let display: Vec<String> = ex.n.iter().map(|c| c.to_string()).collect();
            pretty(&json!({
                "g": ex.g,
                "variant": ex.variant,
                "determined": ex.determined,
                "n": ex.n,
                "n_display": display,
                "vanishes_above_genus": ex.n.iter().skip((z.g + 1) as usize).all(HalfLaurent::is_zero),
                "functional_equation": fe,
            }))
        }
        Command::Render { source, out_dir, symlog, no_inset } => {
            let result = obtain(&ctx, source)?;
            fs::create_dir_all(out_dir)
                .map_err(|e| Error::validation(format!("cannot create {}: {e}", out_dir.display()), None))?;
            let opts = render::RenderOptions { symlog: *symlog, inset: !no_inset };
            let mut files = Vec::new();
            for (i, c) in result.curves.iter().enumerate() {
                let name = format!("curve-{:03}.svg", i + 1);
                let path = out_dir.join(&name);
                fs::write(&path, render::render_svg(c, &opts))
                    .map_err(|e| Error::Resource(format!("cannot write {}: {e}", path.display())))?;
                files.push(name);
            }
            pretty(&json!({ "directory": out_dir, "files": files }))
        }
        Command::Volume { input } => {
            let v: VolumeInput = read_json(input)?;
            let mut report = serde_json::Map::new();
            if !v.cells.is_empty() {
                report.insert("complex".into(), class_report(&complex_volume(&v.cells, v.variant)?)?);
            }
            if !v.strata.is_empty() {
                report.insert("semistable".into(), class_report(&semistable_volume(&v.strata)?)?);
            }
            if report.is_empty() {
                report.insert("complex".into(), class_report(&MotivicClass::zero())?);
            }
            pretty(&Value::Object(report))
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let outcome = run(&cli).and_then(|(text, status)| {
        match &cli.output {
            Some(p) => fs::write(p, &text).map_err(|e| Error::Resource(format!("cannot write {}: {e}", p.display())))?,
            None => {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
        }
        Ok(status)
    });
    match outcome {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
