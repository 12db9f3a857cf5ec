use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::curve::{vertex_multiplicity, TropicalCurve};
use super::subdivision::{cell_doubled_area, cell_locate, is_parallelogram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseId {
    FourValent,
    Weight2Marked,
    Weight2Unmarked,
    Mult3Vertex,
    Smooth,
}

impl CaseId {
    pub const NODAL: [CaseId; 4] = [
        CaseId::FourValent,
        CaseId::Weight2Marked,
        CaseId::Weight2Unmarked,
        CaseId::Mult3Vertex,
    ];
}

/// Kinds of faces counted by the census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceType {
    /// Bounded edge of weight 1.
    BoundedEdge,
    UnboundedEdge,
    /// Trivalent vertex of multiplicity 1 away from any special feature.
    OrdinaryVertex,
    FourValentVertex,
    /// Endpoint of the weight-2 edge.
    OnEdgeVertex,
    Weight2Edge,
    Mult3Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCensus {
    pub case_id: CaseId,
    pub counts: BTreeMap<FaceType, i64>,
}

impl FaceCensus {
    pub fn count(&self, f: FaceType) -> i64 {
        self.counts.get(&f).copied().unwrap_or(0)
    }

    /// Face counts a case takes on a polygon of doubled area `a` with `g` interior points.
    pub fn expected(case_id: CaseId, a: i64, g: i64) -> Self {
        use FaceType::*;
        let counts: Vec<(FaceType, i64)> = match case_id {
            CaseId::FourValent => vec![
                (BoundedEdge, a - 2 + g),
                (UnboundedEdge, a + 2 - 2 * g),
                (OrdinaryVertex, a - 2),
                (FourValentVertex, 1),
            ],
            CaseId::Weight2Marked | CaseId::Weight2Unmarked => vec![
                (BoundedEdge, a - 5 + g),
                (UnboundedEdge, a + 2 - 2 * g),
                (OrdinaryVertex, a - 4),
                (OnEdgeVertex, 2),
                (Weight2Edge, 1),
            ],
            CaseId::Mult3Vertex => vec![
                (BoundedEdge, a - 4 + g),
                (UnboundedEdge, a + 2 - 2 * g),
                (OrdinaryVertex, a - 3),
                (Mult3Vertex, 1),
            ],
            CaseId::Smooth => vec![
                (BoundedEdge, a - 1 + g),
                (UnboundedEdge, a + 2 - 2 * g),
                (OrdinaryVertex, a),
            ],
        };
        FaceCensus { case_id, counts: counts.into_iter().collect() }
    }

    /// Doubled area implied by the vertex count.
    pub fn implied_doubled_area(&self) -> i64 {
        let v = self.count(FaceType::OrdinaryVertex);
        match self.case_id {
            CaseId::FourValent => v + 2,
            CaseId::Weight2Marked | CaseId::Weight2Unmarked => v + 4,
            CaseId::Mult3Vertex => v + 3,
            CaseId::Smooth => v,
        }
    }
}

/// Classify a simple marked curve with `delta` nodes and count its faces.
pub fn face_census(curve: &TropicalCurve, delta: i64) -> Result<FaceCensus> {
    use FaceType::*;
    if !(0..=1).contains(&delta) {
        return Err(Error::Unsupported(format!("face census needs delta 0 or 1, got {delta}")));
    }
    curve
        .require_simple()
        .map_err(|e| Error::Classification(e.to_string()))?;
    let sub = &curve.dual;
    let unused = sub.unused_points();
    let parallelograms: Vec<usize> = (0..sub.cells.len()).filter(|&i| is_parallelogram(&sub.cells[i])).collect();
    let big: Vec<usize> = (0..sub.cells.len())
        .filter(|&i| !is_parallelogram(&sub.cells[i]) && cell_doubled_area(&sub.cells[i]) > 1)
        .collect();
    let mut counts: BTreeMap<FaceType, i64> = BTreeMap::new();
    let mut bump = |f: FaceType, k: i64| *counts.entry(f).or_insert(0) += k;
    let unbounded: i64 = curve.edges.iter().filter(|e| !e.is_bounded()).count() as i64;
    let w1_bounded = curve.edges.iter().filter(|e| e.is_bounded() && e.weight == 1).count() as i64;
    let wide: Vec<usize> = (0..curve.edges.len())
        .filter(|&i| curve.edges[i].is_bounded() && curve.edges[i].weight > 1)
        .collect();
    bump(UnboundedEdge, unbounded);
    bump(BoundedEdge, w1_bounded);

    let describe = || {
        format!(
            "{} parallelogram(s), {} non-unimodular triangle(s), {} unused point(s), {} heavy bounded edge(s)",
            parallelograms.len(),
            big.len(),
            unused.len(),
            wide.len()
        )
    };

    let case_id = match (delta, parallelograms.len(), big.len(), unused.len(), wide.len()) {
        (0, 0, 0, 0, 0) => {
            bump(OrdinaryVertex, curve.vertices.len() as i64);
            CaseId::Smooth
        }
        (1, 1, 0, 0, 0) if cell_doubled_area(&sub.cells[parallelograms[0]]) == 2 => {
            bump(OrdinaryVertex, curve.vertices.len() as i64 - 1);
            bump(FourValentVertex, 1);
            CaseId::FourValent
        }
        (1, 0, 2, 1, 1) => {
            let ei = wide[0];
            let e = &curve.edges[ei];
            let u = unused[0];
            let mid = e.dual.0 + e.dual.1;
            let ok = e.weight == 2
                && mid == u + u
                && big.iter().all(|&c| cell_doubled_area(&sub.cells[c]) == 2)
                && sub.polygon.is_interior(u);
            if !ok {
                return Err(Error::Classification(format!("unrecognized weight-2 configuration: {}", describe())));
            }
            bump(OrdinaryVertex, curve.vertices.len() as i64 - 2);
            bump(OnEdgeVertex, 2);
            bump(Weight2Edge, 1);
            if curve.markings.iter().any(|m| m.edge == ei) {
                CaseId::Weight2Marked
            } else {
                CaseId::Weight2Unmarked
            }
        }
        (1, 0, 1, 1, 0) => {
            let c = &sub.cells[big[0]];
            let ok = c.len() == 3 && cell_doubled_area(c) == 3 && cell_locate(c, unused[0]) == Some(true);
            if !ok {
                return Err(Error::Classification(format!("unrecognized special vertex: {}", describe())));
            }
            let v = curve.vertices.iter().position(|v| v.cell == big[0]).unwrap_or(0);
            if vertex_multiplicity(curve, v)? != 3 {
                return Err(Error::Consistency("special vertex does not have multiplicity 3".into()));
            }
            bump(OrdinaryVertex, curve.vertices.len() as i64 - 1);
            bump(Mult3Vertex, 1);
            CaseId::Mult3Vertex
        }
        _ => {
            return Err(Error::Classification(format!(
                "curve with delta {delta} matches no known case: {}",
                describe()
            )))
        }
    };
    Ok(FaceCensus { case_id, counts })
}
