//! Per-face motivic contributions of nodal curves and the refined-count comparison.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::EnumerationResult;
use crate::error::{Error, Result};
use crate::motvol::{cell_volume, CellDatum, VolumeVariant};
use crate::multiplicity::refined_multiplicity;
use crate::ringkit::{HalfLaurent, MotivicClass};
use crate::tropcurve::{face_census, CaseId, FaceCensus, FaceType, TropicalCurve};

/// Which of the two cells over a face a row describes: the face itself or its thickening.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Face,
    Thickened,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub case_id: CaseId,
    pub face: FaceType,
    pub layer: Layer,
    pub cell: CellDatum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContributionTable {
    pub rows: Vec<TableRow>,
    pub base_cells: BTreeMap<CaseId, Vec<CellDatum>>,
}

fn poly(c: &[i64]) -> MotivicClass {
    MotivicClass::from_poly(c)
}

fn lm1_sq() -> MotivicClass {
    poly(&[1, -2, 1])
}

fn times(a: &[i64], b: &[i64]) -> MotivicClass {
    poly(a).mul(&poly(b)).expect("polynomial classes multiply")
}

/// `[C_1] - 3`: a smooth genus-1 curve minus three points.
fn elliptic_minus_three() -> MotivicClass {
    MotivicClass::curve(1, 3)
}

impl ContributionTable {
    /// Classes of the initial degenerations for the four nodal cases.
    pub fn standard() -> Self {
        use CaseId::{FourValent, Weight2Marked, Weight2Unmarked};
        use FaceType::{BoundedEdge, FourValentVertex, OnEdgeVertex, OrdinaryVertex, UnboundedEdge, Weight2Edge};
        use Layer::*;
        let mut rows = Vec::new();
        let mut add = |case_id, face, layer, class: MotivicClass, dim, rec| {
            rows.push(TableRow { case_id, face, layer, cell: CellDatum::new(class, dim, rec) });
        };

        add(FourValent, BoundedEdge, Face, lm1_sq(), 1, 0);
        add(FourValent, UnboundedEdge, Face, lm1_sq(), 1, 1);
        add(FourValent, OrdinaryVertex, Face, times(&[-1, 1], &[-2, 1]), 0, 0);
        add(FourValent, FourValentVertex, Face, poly(&[3, -3, 1]), 0, 0);

        add(Weight2Marked, BoundedEdge, Face, times(&[-1, 1], &[-2, 1]), 1, 0);
        add(Weight2Marked, BoundedEdge, Thickened, lm1_sq(), 2, 1);
        add(Weight2Marked, UnboundedEdge, Face, times(&[-1, 1], &[-2, 1]), 1, 1);
        add(Weight2Marked, UnboundedEdge, Thickened, lm1_sq(), 2, 2);
        add(Weight2Marked, OrdinaryVertex, Face, poly(&[4, -4, 1]), 0, 0);
        add(Weight2Marked, OrdinaryVertex, Thickened, times(&[-1, 1], &[-2, 1]), 1, 1);
        add(Weight2Marked, OnEdgeVertex, Face, poly(&[7, -4, 1]), 0, 0);
        add(Weight2Marked, OnEdgeVertex, Thickened, times(&[-1, 1], &[-3, 1]), 1, 1);
        add(Weight2Marked, Weight2Edge, Face, poly(&[5, -6, 1]), 1, 0);
        add(Weight2Marked, Weight2Edge, Thickened, lm1_sq().scale(2), 2, 1);

        let weight_one_rows = |case_id, add: &mut dyn FnMut(CaseId, FaceType, Layer, MotivicClass, i64, i64)| {
            add(case_id, BoundedEdge, Face, lm1_sq(), 1, 0);
            add(case_id, BoundedEdge, Thickened, lm1_sq(), 2, 1);
            add(case_id, UnboundedEdge, Face, lm1_sq(), 1, 1);
            add(case_id, UnboundedEdge, Thickened, lm1_sq(), 2, 2);
            add(case_id, OrdinaryVertex, Face, times(&[-1, 1], &[-2, 1]), 0, 0);
            add(case_id, OrdinaryVertex, Thickened, times(&[-1, 1], &[-2, 1]), 1, 1);
        };
        weight_one_rows(Weight2Unmarked, &mut add);
        add(Weight2Unmarked, OnEdgeVertex, Face, poly(&[4, -3, 1]), 0, 0);
        add(Weight2Unmarked, OnEdgeVertex, Thickened, times(&[-1, 1], &[-3, 1]), 1, 1);
        add(Weight2Unmarked, Weight2Edge, Face, times(&[-3, 1], &[-1, 1]), 1, 0);
        add(Weight2Unmarked, Weight2Edge, Thickened, lm1_sq().scale(2), 2, 1);

        weight_one_rows(CaseId::Mult3Vertex, &mut add);
        add(CaseId::Mult3Vertex, FaceType::Mult3Vertex, Face, lm1_sq().sub(&elliptic_minus_three()), 0, 0);
        let special = poly(&[-1, 1]).mul(&elliptic_minus_three()).expect("one factor is polynomial");
        add(CaseId::Mult3Vertex, FaceType::Mult3Vertex, Thickened, special, 1, 1);

        let mut base_cells = BTreeMap::new();
        base_cells.insert(FourValent, vec![CellDatum::new(poly(&[-1, 1]), 0, 0)]);
        base_cells.insert(
            Weight2Marked,
            vec![CellDatum::new(poly(&[-2, 1]), 0, 0), CellDatum::new(poly(&[-1, 1]), 1, 1)],
        );
        for case in [Weight2Unmarked, CaseId::Mult3Vertex] {
            base_cells.insert(case, vec![CellDatum::new(poly(&[-1, 1]), 0, 0), CellDatum::new(poly(&[-1, 1]), 1, 1)]);
        }
        ContributionTable { rows, base_cells }
    }

    pub fn rows_for(&self, case_id: CaseId) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(move |r| r.case_id == case_id)
    }

    /// chi_{-y} of one row, through the closure volume formula.
    pub fn row_chi(row: &TableRow) -> Result<HalfLaurent> {
        cell_volume(&row.cell, VolumeVariant::Closure)?.chi_y()
    }

    /// chi_{-y} summed over both layers of a face.
    pub fn face_chi(&self, case_id: CaseId, face: FaceType) -> Result<HalfLaurent> {
        let mut total = HalfLaurent::zero();
        for r in self.rows_for(case_id).filter(|r| r.face == face) {
            total += &Self::row_chi(r)?;
        }
        Ok(total)
    }
}

/// Smallest doubled area at which the case's face counts are all nonnegative.
/// Smallest doubled area at which every face count of the case is nonnegative.
pub fn min_doubled_area(case_id: CaseId, g: i64) -> i64 {
    let (edges, vertices) = match case_id {
        CaseId::FourValent => (2, 2),
        CaseId::Weight2Marked | CaseId::Weight2Unmarked => (5, 4),
        CaseId::Mult3Vertex => (4, 3),
        CaseId::Smooth => (1, 0),
    };
    (edges - g).max(vertices).max(2 * g - 2)
}

fn check_census(census: &FaceCensus, g: i64) -> Result<i64> {
    if census.case_id == CaseId::Smooth {
        return Err(Error::Domain("smooth curves have no nodal contribution".into()));
    }
    if g < 1 {
        return Err(Error::Domain(format!("genus must be at least 1, got {g}")));
    }
    let a = census.implied_doubled_area();
    if a < min_doubled_area(census.case_id, g) {
        return Err(Error::Classification(format!(
            "doubled area {a} is too small for {:?}",
            census.case_id
        )));
    }
    let expected = FaceCensus::expected(census.case_id, a, g);
    if expected.counts != census.counts {
        return Err(Error::Classification(format!(
            "face counts {:?} do not match {:?} for doubled area {a} and genus {g}",
            census.counts, expected.counts
        )));
    }
    Ok(a)
}

/// One face type's share of the universal-curve Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLedgerEntry {
    pub face: FaceType,
    pub count: i64,
    pub chi: HalfLaurent,
}

fn face_ledger(census: &FaceCensus, g: i64) -> Result<Vec<FaceLedgerEntry>> {
    check_census(census, g)?;
    let table = ContributionTable::standard();
    census
        .counts
        .iter()
        .map(|(&face, &count)| {
            Ok(FaceLedgerEntry { face, count, chi: table.face_chi(census.case_id, face)?.scale(count) })
        })
        .collect()
}

/// chi_{-y} of the universal curve over the cell of the curve.
pub fn chi_universal_curve(census: &FaceCensus, g: i64) -> Result<HalfLaurent> {
    Ok(face_ledger(census, g)?.into_iter().map(|e| e.chi).sum())
}

/// chi_{-y} of the linear-series cell, from its base cells.
pub fn chi_linear_series(case_id: CaseId) -> Result<HalfLaurent> {
    let table = ContributionTable::standard();
    let cells = table
        .base_cells
        .get(&case_id)
        .ok_or_else(|| Error::Domain(format!("no linear-series cells for {case_id:?}")))?;
    let mut total = HalfLaurent::zero();
    for c in cells {
        total += &cell_volume(c, VolumeVariant::Closure)?.chi_y()?;
    }
    Ok(total)
}

/// `chi(universal curve) + (g - 1)(y + 1) chi(linear series)`.
pub fn nodal_count(census: &FaceCensus, g: i64) -> Result<HalfLaurent> {
    let c = chi_universal_curve(census, g)?;
    let l = chi_linear_series(census.case_id)?;
    Ok(c + HalfLaurent::from_poly(&[1, 1]).scale(g - 1) * l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCheck {
    pub n_refined: HalfLaurent,
    pub n_delta: HalfLaurent,
    pub equal: bool,
}

/// Compare the refined multiplicity with `y^(-delta) N_delta`.
pub fn conjecture_check(curve: &TropicalCurve, g: i64, delta: i64) -> Result<ConjectureCheck> {
    let n_refined = refined_multiplicity(curve)?.refined;
    let census = face_census(curve, delta)?;
    let n_delta = match delta {
        0 => HalfLaurent::one(),
        1 => nodal_count(&census, g)?,
        _ => return Err(Error::Unsupported(format!("comparison for delta = {delta}"))),
    };
    let scaled = n_delta.shift_half(-2 * delta);
    Ok(ConjectureCheck { equal: scaled == n_refined, n_refined, n_delta })
}

/// Per-curve verification record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVerification {
    pub curve: String,
    pub case_id: CaseId,
    pub n_refined: HalfLaurent,
    pub n_delta: HalfLaurent,
    pub equal: bool,
    pub faces: Vec<FaceLedgerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub genus: i64,
    pub delta: i64,
    pub all_equal: bool,
    pub curves: Vec<CurveVerification>,
}

pub fn verify_result(result: &EnumerationResult) -> Result<VerificationReport> {
    let g = result.polygon.genus();
    let delta = result.delta;
    let curves: Vec<CurveVerification> = result
        .curves
        .par_iter()
        .map(|c| {
            let check = conjecture_check(c, g, delta)?;
            let census = face_census(c, delta)?;
            let faces = if delta == 1 { face_ledger(&census, g)? } else { Vec::new() };
            Ok(CurveVerification {
                curve: c.key().to_string(),
                case_id: census.case_id,
                n_refined: check.n_refined,
                n_delta: check.n_delta,
                equal: check.equal,
                faces,
            })
        })
        .collect::<Result<_>>()?;
    Ok(VerificationReport { genus: g, delta, all_equal: curves.iter().all(|c| c.equal), curves })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(c: &[i64]) -> HalfLaurent {
        HalfLaurent::from_poly(c)
    }

    #[test]
    fn row_count() {
        let t = ContributionTable::standard();
        let n: Vec<usize> = CaseId::NODAL.iter().map(|&c| t.rows_for(c).count()).collect();
        assert_eq!(n, vec![4, 10, 10, 8]);
    }

    #[test]
    fn totals_at_small_genus() {
        let cases = [
            (CaseId::FourValent, y(&[0, 1])),
            (CaseId::Weight2Marked, y(&[1, 2, 1])),
            (CaseId::Weight2Unmarked, y(&[1, 2, 1])),
            (CaseId::Mult3Vertex, y(&[1, 1, 1])),
        ];
        for (case, want) in cases {
            let census = FaceCensus::expected(case, 9, 1);
            assert_eq!(chi_universal_curve(&census, 1).unwrap(), want, "{case:?}");
        }
    }

    #[test]
    fn linear_series() {
        assert_eq!(chi_linear_series(CaseId::FourValent).unwrap(), y(&[-1, 1]));
        assert_eq!(chi_linear_series(CaseId::Weight2Marked).unwrap(), y(&[-1, 1]));
        assert_eq!(chi_linear_series(CaseId::Weight2Unmarked).unwrap(), y(&[0, 1]));
        assert_eq!(chi_linear_series(CaseId::Mult3Vertex).unwrap(), y(&[0, 1]));
    }

    #[test]
    fn mismatched_census_is_rejected() {
        let mut census = FaceCensus::expected(CaseId::FourValent, 9, 1);
        census.counts.insert(FaceType::BoundedEdge, 100);
        assert!(matches!(chi_universal_curve(&census, 1), Err(Error::Classification(_))));
        let small = FaceCensus::expected(CaseId::Weight2Marked, 3, 1);
        assert!(matches!(chi_universal_curve(&small, 1), Err(Error::Classification(_))));
    }

    #[test]
    fn synthetic_genus_two() {
        let census = FaceCensus::expected(CaseId::Mult3Vertex, 12, 2);
        let n = nodal_count(&census, 2).unwrap().shift_half(-2);
        assert_eq!(n, HalfLaurent::from_int_terms([(-1, 1), (0, 1), (1, 1)]));
    }
}
