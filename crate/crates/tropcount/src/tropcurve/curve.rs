use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::subdivision::{cell_doubled_area, is_parallelogram, Cell, NewtonSubdivision};
use crate::error::{Error, Result};
use crate::lattice::{orient, LatticePoint, LatticePolygon};
use crate::rational::{rat, rat_string, QPoint, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVertex {
    pub position: QPoint,
    /// Index of the dual cell.
    pub cell: usize,
    /// Four-valent vertex dual to a parallelogram: a transverse crossing of two branches.
    pub crossing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEdge {
    pub from: usize,
    /// `None` for an unbounded edge.
    pub to: Option<usize>,
    pub weight: i64,
    /// Primitive direction pointing away from `from`.
    pub dir: LatticePoint,
    /// Endpoints of the dual edge of the subdivision.
    pub dual: (LatticePoint, LatticePoint),
}

impl CurveEdge {
    pub fn is_bounded(&self) -> bool {
        self.to.is_some()
    }
}

/// A point of the configuration and the edge it lies on: `point = start + param * span`,
/// where `span` is `end - start` for bounded edges and `dir` for rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    pub point: QPoint,
    pub edge: usize,
    #[serde(with = "rat_string")]
    pub param: Rat,
}

/// Embedded tropical curve with its dual marked subdivision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalCurve {
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<CurveEdge>,
    pub dual: NewtonSubdivision,
    #[serde(default)]
    pub markings: Vec<Marking>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancingViolation {
    pub vertex: usize,
    pub residual: LatticePoint,
}

/// Inner normal of the polygon edge containing the segment `a b`.
fn inner_normal(polygon: &LatticePolygon, a: LatticePoint, b: LatticePoint) -> LatticePoint {
    let n = (b - a).primitive().rot90();
    let inside = polygon
        .vertices()
        .iter()
        .find(|v| orient(a, b, **v) != 0)
        .copied()
        .unwrap_or(a);
    if n.dot(inside - a) > 0 {
        n
    } else {
        -n
    }
}

/// Build the dual curve of a regular subdivision.
pub fn curve_from_subdivision(sub: &NewtonSubdivision) -> Result<TropicalCurve> {
    sub.check_regular()?;
    let vertices: Vec<CurveVertex> = (0..sub.cells.len())
        .map(|i| {
            let aff = sub.cell_affine(i);
            CurveVertex {
                position: QPoint::new(-aff.gx, -aff.gy),
                cell: i,
                crossing: is_parallelogram(&sub.cells[i]),
            }
        })
        .collect();
    let mut edges = Vec::new();
    for ((a, b), cells) in sub.edges() {
        let weight = (b - a).lattice_length();
        match cells.as_slice() {
            [c] => edges.push(CurveEdge {
                from: *c,
                to: None,
                weight,
                dir: inner_normal(&sub.polygon, a, b),
                dual: (a, b),
            }),
            [c1, c2] => {
                let n = (b - a).primitive().rot90();
                let diff = &vertices[*c2].position - &vertices[*c1].position;
                let s = diff.pair(n);
                if s.is_zero() || !diff.pair(b - a).is_zero() {
                    return Err(Error::Consistency(format!(
                        "cells {c1} and {c2} have the same dual vertex"
                    )));
                }
                let dir = if s.is_positive() { n } else { -n };
                edges.push(CurveEdge { from: *c1, to: Some(*c2), weight, dir, dual: (a, b) });
            }
            _ => {
                return Err(Error::Consistency(format!(
                    "subdivision edge {a} {b} lies in {} cells",
                    cells.len()
                )))
            }
        }
    }
    Ok(TropicalCurve { vertices, edges, dual: sub.clone(), markings: Vec::new() })
}

/// Balancing residual at every vertex; empty iff the curve is balanced.
pub fn check_balanced(curve: &TropicalCurve) -> Vec<BalancingViolation> {
    let mut sums = vec![LatticePoint::default(); curve.vertices.len()];
    for e in &curve.edges {
        if let Some(s) = sums.get_mut(e.from) {
            *s = *s + e.weight * e.dir;
        }
        if let Some(t) = e.to.and_then(|t| sums.get_mut(t)) {
            *t = *t - e.weight * e.dir;
        }
    }
    sums.into_iter()
        .enumerate()
        .filter(|(_, r)| *r != LatticePoint::default())
        .map(|(vertex, residual)| BalancingViolation { vertex, residual })
        .collect()
}

impl TropicalCurve {
    pub fn polygon(&self) -> &LatticePolygon {
        &self.dual.polygon
    }

    pub fn cell(&self, vertex: usize) -> &Cell {
        &self.dual.cells[self.vertices[vertex].cell]
    }

    /// Outgoing `(weighted direction, edge index)` pairs at a vertex.
    pub fn outgoing(&self, vertex: usize) -> Vec<(LatticePoint, usize)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.from == vertex {
                out.push((e.weight * e.dir, i));
            }
            if e.to == Some(vertex) {
                out.push((-(e.weight * e.dir), i));
            }
        }
        out
    }

    pub fn valence(&self, vertex: usize) -> usize {
        self.outgoing(vertex).len()
    }

    pub fn bounded_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_bounded()).count()
    }

    /// Unbounded edges counted with weight.
    pub fn unbounded_weight(&self) -> i64 {
        self.edges.iter().filter(|e| !e.is_bounded()).map(|e| e.weight).sum()
    }

    /// Every vertex is trivalent or a transverse crossing, and every end has weight 1.
    pub fn is_simple(&self) -> bool {
        self.simplicity_problem().is_none()
    }

    fn simplicity_problem(&self) -> Option<String> {
        for (i, v) in self.vertices.iter().enumerate() {
            let val = self.valence(i);
            let ok = val == 3 || (val == 4 && v.crossing && is_parallelogram(self.cell(i)));
            if !ok {
                return Some(format!("vertex {i} has valence {val} and is not a transverse crossing"));
            }
        }
        if let Some((i, e)) = self.edges.iter().enumerate().find(|(_, e)| !e.is_bounded() && e.weight != 1) {
            return Some(format!("unbounded edge {i} has weight {}", e.weight));
        }
        None
    }

    /// Fail unless the curve is simple.
    pub fn require_simple(&self) -> Result<()> {
        match self.simplicity_problem() {
            Some(m) => Err(Error::Unsupported(format!("curve is not simple: {m}"))),
            None => Ok(()),
        }
    }

    /// Locate the configuration points on the curve and store them as markings.
    pub fn with_markings(mut self, points: &[QPoint]) -> Result<Self> {
        self.markings = points.iter().map(|p| self.locate_point(p)).collect::<Result<_>>()?;
        Ok(self)
    }

    /// The marking of a point lying in the relative interior of an edge.
    pub fn locate_point(&self, p: &QPoint) -> Result<Marking> {
        let (_, arg) = self.dual.evaluate(p);
        if arg.len() < 2 {
            return Err(Error::Genericity(format!("point {p} is not on the curve")));
        }
        let a0 = arg[0];
        let far = arg.iter().copied().max_by_key(|q| (*q - a0).dot(*q - a0)).unwrap_or(a0);
        if arg.iter().any(|q| orient(a0, far, *q) != 0) {
            return Err(Error::Genericity(format!("point {p} is a vertex of the curve")));
        }
        let edge = self
            .edges
            .iter()
            .position(|e| arg.contains(&e.dual.0) && arg.contains(&e.dual.1))
            .ok_or_else(|| Error::Consistency(format!("no edge of the curve carries point {p}")))?;
        let e = &self.edges[edge];
        let start = &self.vertices[e.from].position;
        let span = match e.to {
            Some(t) => &self.vertices[t].position - start,
            None => QPoint::from_lattice(e.dir),
        };
        let rel = p - start;
        let param = rel.dot(&span) / span.dot(&span);
        if start + &span.scale(&param) != *p {
            return Err(Error::Consistency(format!("point {p} is off edge {edge}")));
        }
        let inside = param.is_positive() && (e.to.is_none() || param < rat(1));
        if !inside {
            return Err(Error::Genericity(format!("point {p} sits at an end of edge {edge}")));
        }
        Ok(Marking { point: p.clone(), edge, param })
    }

    /// Canonical key: cells, then marked dual edges in configuration order.
    pub fn key(&self) -> CurveKey {
        CurveKey {
            cells: self.dual.cells.clone(),
            marked: self.markings.iter().map(|m| self.edges[m.edge].dual).collect(),
        }
    }
}

/// Sort and identity key of a marked curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveKey {
    pub cells: Vec<Cell>,
    pub marked: Vec<(LatticePoint, LatticePoint)>,
}

impl std::fmt::Display for CurveKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cells: Vec<String> = self
            .cells
            .iter()
            .map(|c| c.iter().map(|p| format!("{},{}", p.x, p.y)).collect::<Vec<_>>().join(";"))
            .collect();
        let marked: Vec<String> =
            self.marked.iter().map(|(a, b)| format!("{},{}-{},{}", a.x, a.y, b.x, b.y)).collect();
        write!(f, "{} @ {}", cells.join("|"), marked.join(";"))
    }
}

/// First Betti number of the parameterizing graph, crossings split into two points.
pub fn curve_genus(curve: &TropicalCurve) -> Result<i64> {
    let mut v = 0i64;
    for (i, vert) in curve.vertices.iter().enumerate() {
        match (curve.valence(i), vert.crossing) {
            (3, _) => v += 1,
            (4, true) => v += 2,
            (val, _) => {
                return Err(Error::Unsupported(format!(
                    "vertex {i} of valence {val} is neither trivalent nor a crossing"
                )))
            }
        }
    }
    Ok(curve.bounded_edge_count() as i64 - v + 1)
}

/// Multiplicity `|det(w1 v1, w2 v2)|` of a trivalent vertex.
pub fn vertex_multiplicity(curve: &TropicalCurve, vertex: usize) -> Result<i64> {
    if vertex >= curve.vertices.len() {
        return Err(Error::Domain(format!("no vertex {vertex}")));
    }
    let out = curve.outgoing(vertex);
    if out.len() != 3 {
        return Err(Error::Domain(format!(
            "vertex {vertex} has valence {}, multiplicity needs a trivalent vertex",
            out.len()
        )));
    }
    Ok(out[0].0.cross(out[1].0).abs())
}

/// Recover the dual cells from the weighted graph alone (positions, directions, weights).
pub fn dual_cells_from_graph(curve: &TropicalCurve) -> Result<Vec<Cell>> {
    let n = curve.vertices.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    // Each vertex's cell up to translation: outgoing w*d rotated clockwise, sorted by angle.
    let mut shapes: Vec<Vec<(LatticePoint, usize)>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut sides: Vec<(LatticePoint, usize)> = curve
            .outgoing(i)
            .into_iter()
            .map(|(w, e)| (LatticePoint::new(w.y, -w.x), e))
            .collect();
        sides.sort_by(|a, b| angle_cmp(a.0, b.0));
        shapes.push(sides);
    }
    let mut offset: Vec<Option<LatticePoint>> = vec![None; n];
    let mut starts: Vec<BTreeMap<usize, LatticePoint>> = vec![BTreeMap::new(); n];
    for (i, sides) in shapes.iter().enumerate() {
        let mut cur = LatticePoint::default();
        for (s, e) in sides {
            starts[i].insert(*e, cur);
            cur = cur + *s;
        }
        if cur != LatticePoint::default() {
            return Err(Error::Validation { message: format!("vertex {i} is not balanced"), at: Some(i) });
        }
    }
    offset[0] = Some(LatticePoint::default());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let oi = offset[i].unwrap_or_default();
        for (_, e) in &shapes[i] {
            let edge = &curve.edges[*e];
            let Some(t) = edge.to else { continue };
            let j = if edge.from == i { t } else { edge.from };
            if offset[j].is_some() {
                continue;
            }
            // The shared side runs start_i -> start_i + s in cell i and the reverse in cell j.
            let si = starts[i][e];
            let side = shapes[i].iter().find(|(_, f)| f == e).map(|(s, _)| *s).unwrap_or_default();
            let sj = starts[j][e];
            offset[j] = Some(oi + si + side - sj);
            queue.push_back(j);
        }
    }
    let mut cells = Vec::with_capacity(n);
    for i in 0..n {
        let o = offset[i].ok_or_else(|| Error::validation("curve graph is disconnected", Some(i)))?;
        let pts: Vec<LatticePoint> = shapes[i].iter().map(|(_, e)| o + starts[i][e]).collect();
        cells.push(pts);
    }
    let (lo, _) = curve.polygon().bounds();
    let min_x = cells.iter().flatten().map(|p| p.x).min().unwrap_or(0);
    let min_y = cells.iter().flatten().map(|p| p.y).min().unwrap_or(0);
    let shift = LatticePoint::new(lo.x - min_x, lo.y - min_y);
    let mut out: Vec<Cell> = cells
        .into_iter()
        .map(|c| {
            let moved: Vec<LatticePoint> = c.into_iter().map(|p| p + shift).collect();
            super::subdivision::normalize_cell(&moved).unwrap_or(moved)
        })
        .collect();
    out.sort();
    Ok(out)
}

fn half(p: LatticePoint) -> u8 {
    if p.y > 0 || (p.y == 0 && p.x > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: LatticePoint, b: LatticePoint) -> std::cmp::Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Total doubled area of the dual cells; equals the polygon's for a curve of that degree.
pub fn dual_area(curve: &TropicalCurve) -> i64 {
    curve.dual.cells.iter().map(|c| cell_doubled_area(c)).sum()
}
