//! Enumeration of simple marked tropical curves through a point configuration.
//!
//! The default engine walks monotone lattice paths through the polygon and compresses
//! each into marked subdivisions, then realizes them on points spread along a line with
//! geometrically growing gaps. An independent solver intersects the tropical hyperplanes
//! of explicit points directly (δ ≤ 1) and doubles as a small-instance oracle.

pub mod assign;
pub mod paths;
pub mod pencil;
pub mod realize;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::rational::QPoint;
use crate::tropcurve::{check_balanced, curve_from_subdivision, curve_genus, NewtonSubdivision, TropicalCurve};

use paths::{increasing_paths, sorted_points, PathContext};
use realize::{realize_leaf, stretched_points};

/// Default cap on recursion steps of the path compression.
pub const DEFAULT_CELL_BUDGET: u64 = 50_000_000;

/// Gap ratios tried in turn until every compressed path is realized.
const SCALE_LADDER: [i64; 6] = [4, 10, 100, 1_000, 10_000, 100_000];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigMode {
    Stretched,
    Explicit,
}

/// Where the curves must pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub mode: ConfigMode,
    #[serde(default)]
    pub points: Vec<QPoint>,
    /// Line direction in stretched mode; `(1, -M)` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<LatticePoint>,
    pub count: usize,
    /// Gap ratio of stretched points; chosen automatically when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_budget: Option<u64>,
    /// Solve the stretched configuration with the hyperplane solver instead of lattice paths.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub oracle: bool,
}

impl PointConfiguration {
    pub fn stretched(polygon: &LatticePolygon, delta: i64) -> Self {
        PointConfiguration {
            mode: ConfigMode::Stretched,
            points: Vec::new(),
            direction: None,
            count: expected_count(polygon, delta).max(0) as usize,
            scale: None,
            cell_budget: None,
            oracle: false,
        }
    }

    pub fn explicit(points: Vec<QPoint>) -> Self {
        PointConfiguration {
            mode: ConfigMode::Explicit,
            count: points.len(),
            points,
            direction: None,
            scale: None,
            cell_budget: None,
            oracle: false,
        }
    }

    pub fn with_direction(mut self, direction: LatticePoint) -> Self {
        self.direction = Some(direction);
        self
    }

    pub fn with_scale(mut self, scale: i64) -> Self {
        self.scale = Some(scale);
        self
    }

    pub fn with_oracle(mut self, oracle: bool) -> Self {
        self.oracle = oracle;
        self
    }

    pub fn with_cell_budget(mut self, budget: u64) -> Self {
        self.cell_budget = Some(budget);
        self
    }
}

/// `(1, -M)` with `M` larger than the horizontal width, so the pairing is injective.
pub fn default_direction(polygon: &LatticePolygon) -> LatticePoint {
    let (lo, hi) = polygon.bounds();
    LatticePoint::new(1, -(hi.x - lo.x + 1))
}

fn expected_count(polygon: &LatticePolygon, delta: i64) -> i64 {
    polygon.stats().total_points - 1 - delta
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationMetadata {
    pub method: String,
    pub paths: usize,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub polygon: LatticePolygon,
    pub delta: i64,
    pub genus: i64,
    pub configuration: PointConfiguration,
    pub curves: Vec<TropicalCurve>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<EnumerationMetadata>,
}

fn check_delta(polygon: &LatticePolygon, delta: i64) -> Result<()> {
    let g = polygon.genus();
    if delta < 0 || delta > g {
        return Err(Error::Domain(format!("delta must lie in 0..={g}, got {delta}")));
    }
    Ok(())
}

/// All simple marked curves of genus `g - delta` through the configuration, sorted by key.
pub fn enumerate_curves(
    polygon: &LatticePolygon,
    delta: i64,
    config: &PointConfiguration,
) -> Result<EnumerationResult> {
    check_delta(polygon, delta)?;
    let want = expected_count(polygon, delta);
    if config.count as i64 != want {
        return Err(Error::validation(format!("configuration count must be {want}, got {}", config.count), None));
    }
    let budget = config.cell_budget.unwrap_or(DEFAULT_CELL_BUDGET);
    let mut out_config = config.clone();
    let (mut curves, metadata) = match config.mode {
        ConfigMode::Explicit => {
            if config.points.len() != config.count {
                return Err(Error::validation(
                    format!("{} points given for count {}", config.points.len(), config.count),
                    None,
                ));
            }
            check_distinct(&config.points)?;
            (solve_with_budget(polygon, delta, &config.points, budget)?, hyperplane_metadata())
        }
        ConfigMode::Stretched => {
            let direction = config.direction.unwrap_or_else(|| default_direction(polygon));
            if direction.primitive() != direction {
                return Err(Error::validation(format!("direction {direction:?} is not primitive"), None));
            }
            out_config.direction = Some(direction);
            if config.oracle {
                let scale = config.scale.unwrap_or(10);
                out_config.scale = Some(scale);
                let points = stretched_points(direction, config.count, scale);
                out_config.points = points.clone();
                (solve_with_budget(polygon, delta, &points, budget)?, hyperplane_metadata())
            } else {
                let (curves, scale, points, meta) = lattice_path_curves(polygon, delta, direction, config, budget)?;
                out_config.scale = Some(scale);
                out_config.points = points;
                (curves, meta)
            }
        }
    };
    let genus = polygon.genus() - delta;
    for c in &curves {
        c.require_simple().map_err(|e| Error::Consistency(e.to_string()))?;
        if curve_genus(c)? != genus {
            return Err(Error::Consistency("enumerated curve has the wrong genus".into()));
        }
    }
    curves.sort_by_key(|c| c.key());
    Ok(EnumerationResult {
        polygon: polygon.clone(),
        delta,
        genus,
        configuration: out_config,
        curves,
        metadata: Some(metadata),
    })
}

fn hyperplane_metadata() -> EnumerationMetadata {
    EnumerationMetadata { method: "hyperplane_intersection".into(), paths: 0, steps: 0 }
}

fn check_distinct(points: &[QPoint]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        if !seen.insert((p.x.clone(), p.y.clone())) {
            return Err(Error::Genericity(format!("point {i} repeats an earlier point")));
        }
    }
    Ok(())
}

fn solve_with_budget(polygon: &LatticePolygon, delta: i64, points: &[QPoint], budget: u64) -> Result<Vec<TropicalCurve>> {
    let n = polygon.stats().total_points as u64;
    let work = n.saturating_pow(4);
    if work > budget {
        return Err(Error::Resource(format!("hyperplane solver needs about {work} steps, budget is {budget}")));
    }
    pencil::solve_explicit(polygon, delta, points)
}

type PathOutcome = (Vec<TropicalCurve>, i64, Vec<QPoint>, EnumerationMetadata);

fn lattice_path_curves(
    polygon: &LatticePolygon,
    delta: i64,
    direction: LatticePoint,
    config: &PointConfiguration,
    budget: u64,
) -> Result<PathOutcome> {
    let sorted = sorted_points(polygon, direction)?;
    let ctx = PathContext::new(polygon, direction, budget)?;
    let paths = increasing_paths(&sorted, delta as usize);
    let leaves: Vec<_> = paths
        .par_iter()
        .map(|p| ctx.expand(p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let genus = polygon.genus() - delta;
    let scales: Vec<i64> = match config.scale {
        Some(s) => vec![s],
        None => SCALE_LADDER.to_vec(),
    };
    for scale in scales {
        if scale < 2 {
            return Err(Error::validation(format!("scale must be at least 2, got {scale}"), None));
        }
        let points = stretched_points(direction, config.count, scale);
        let realized: Vec<Option<TropicalCurve>> =
            leaves.par_iter().map(|l| realize_leaf(polygon, l, &points)).collect::<Result<_>>()?;
        if realized.iter().all(Option::is_some) {
            let mut curves = Vec::new();
            for c in realized.into_iter().flatten() {
                if curve_genus(&c)? == genus {
                    curves.push(c);
                }
            }
            let meta = EnumerationMetadata {
                method: "lattice_paths".into(),
                paths: paths.len(),
                steps: ctx.steps_used(),
            };
            return Ok((curves, scale, points, meta));
        }
    }
    Err(Error::Genericity(format!(
        "stretched points along {direction:?} do not realize every lattice path; try a larger scale"
    )))
}

/// One problem found while validating a supplied curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveIssue {
    pub curve: usize,
    pub message: String,
}

/// Validate user-supplied curves and wrap them as a result.
pub fn ingest_curves(
    polygon: &LatticePolygon,
    delta: i64,
    curves: &[serde_json::Value],
) -> Result<EnumerationResult> {
    check_delta(polygon, delta)?;
    let genus = polygon.genus() - delta;
    let mut issues = Vec::new();
    let mut accepted = Vec::new();
    for (i, raw) in curves.iter().enumerate() {
        match validate_curve(polygon, genus, raw) {
            Ok(c) => accepted.push(c),
            Err(msgs) => issues.extend(msgs.into_iter().map(|message| CurveIssue { curve: i, message })),
        }
    }
    if let Some(first) = issues.first() {
        let report: Vec<String> = issues.iter().map(|x| format!("curve {}: {}", x.curve, x.message)).collect();
        return Err(Error::validation(report.join("; "), Some(first.curve)));
    }
    let points: Vec<QPoint> = accepted.first().map(|c| c.markings.iter().map(|m| m.point.clone()).collect()).unwrap_or_default();
    let mut configuration = PointConfiguration::explicit(points);
    configuration.count = expected_count(polygon, delta).max(0) as usize;
    Ok(EnumerationResult {
        polygon: polygon.clone(),
        delta,
        genus,
        configuration,
        curves: accepted,
        metadata: None,
    })
}

fn validate_curve(polygon: &LatticePolygon, genus: i64, raw: &serde_json::Value) -> std::result::Result<TropicalCurve, Vec<String>> {
    let curve: TropicalCurve = serde_json::from_value(raw.clone()).map_err(|e| vec![format!("malformed curve: {e}")])?;
    let mut msgs = Vec::new();
    if curve.dual.polygon != *polygon {
        msgs.push("dual polygon differs from the requested polygon".to_string());
    }
    for v in check_balanced(&curve) {
        msgs.push(format!("vertex {} unbalanced, residual ({}, {})", v.vertex, v.residual.x, v.residual.y));
    }
    let sub = match NewtonSubdivision::new(curve.dual.polygon.clone(), curve.dual.cells.clone(), curve.dual.lifting.clone()) {
        Ok(s) => s,
        Err(e) => {
            msgs.push(format!("dual subdivision invalid: {e}"));
            return Err(msgs);
        }
    };
    let rebuilt = match curve_from_subdivision(&sub) {
        Ok(c) => c,
        Err(e) => {
            msgs.push(e.to_string());
            return Err(msgs);
        }
    };
    if (!curve.vertices.is_empty() || !curve.edges.is_empty()) && !same_graph(&curve, &rebuilt) {
        msgs.push("vertices and edges do not match the dual subdivision".to_string());
    }
    if let Err(e) = rebuilt.require_simple() {
        msgs.push(e.to_string());
    } else if let Ok(g) = curve_genus(&rebuilt) {
        if g != genus {
            msgs.push(format!("genus {g}, expected {genus}"));
        }
    }
    let mut markings = Vec::new();
    for (j, m) in curve.markings.iter().enumerate() {
        match rebuilt.locate_point(&m.point) {
            Ok(found) => {
                let claimed = curve.edges.get(m.edge).map(|e| e.dual);
                if !curve.edges.is_empty() && claimed != Some(rebuilt.edges[found.edge].dual) {
                    msgs.push(format!("marking {j} is not on its stated edge"));
                }
                markings.push(found);
            }
            Err(e) => msgs.push(format!("marking {j}: {e}")),
        }
    }
    if !msgs.is_empty() {
        return Err(msgs);
    }
    Ok(TropicalCurve { markings, ..rebuilt })
}

fn same_graph(a: &TropicalCurve, b: &TropicalCurve) -> bool {
    let verts = |c: &TropicalCurve| -> BTreeSet<(String, String)> {
        c.vertices.iter().map(|v| (v.position.x.to_string(), v.position.y.to_string())).collect()
    };
    let edges = |c: &TropicalCurve| -> BTreeSet<((LatticePoint, LatticePoint), i64, bool)> {
        c.edges.iter().map(|e| (e.dual, e.weight, e.is_bounded())).collect()
    };
    a.vertices.len() == b.vertices.len() && a.edges.len() == b.edges.len() && verts(a) == verts(b) && edges(a) == edges(b)
}
