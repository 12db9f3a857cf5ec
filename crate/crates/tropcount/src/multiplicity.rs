//! Vertex multiplicities, their quantum refinements and aggregate counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_curves, EnumerationResult, PointConfiguration};
use crate::error::{Error, Result};
use crate::lattice::LatticePolygon;
use crate::ringkit::HalfLaurent;
use crate::tropcurve::{vertex_multiplicity, TropicalCurve};

/// Balanced quantum integer `y^((m-1)/2) + y^((m-3)/2) + ... + y^(-(m-1)/2)`.
pub fn quantum_integer(m: i64) -> Result<HalfLaurent> {
    if m < 1 {
        return Err(Error::Domain(format!("quantum integer needs m >= 1, got {m}")));
    }
    Ok(HalfLaurent::from_half_terms((0..m).map(|i| (m - 1 - 2 * i, 1))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub classical: i64,
    pub refined: HalfLaurent,
    pub welschinger: i64,
}

/// Products of vertex multiplicities over the trivalent vertices; crossings contribute 1.
pub fn refined_multiplicity(curve: &TropicalCurve) -> Result<CountRecord> {
    curve.require_simple()?;
    let mut classical = 1i64;
    let mut refined = HalfLaurent::one();
    for (i, v) in curve.vertices.iter().enumerate() {
        if v.crossing {
            continue;
        }
        let m = vertex_multiplicity(curve, i)?;
        classical *= m;
        refined = &refined * &quantum_integer(m)?;
    }
    if !refined.is_integral() {
        return Err(Error::Consistency(format!("refined multiplicity {refined} has half-integer exponents")));
    }
    if refined.eval_at_one() != classical || !refined.is_palindromic() {
        return Err(Error::Consistency(format!("refined multiplicity {refined} does not refine {classical}")));
    }
    let welschinger = refined.eval_at_minus_one()?;
    Ok(CountRecord { classical, refined, welschinger })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeveriTotals {
    pub refined_total: HalfLaurent,
    pub classical_total: i64,
    pub welschinger_total: i64,
    pub per_curve: Vec<CountRecord>,
}

/// Totals over an enumeration result.
pub fn totals(result: &EnumerationResult) -> Result<SeveriTotals> {
    let per_curve: Vec<CountRecord> = result.curves.par_iter().map(refined_multiplicity).collect::<Result<_>>()?;
    let refined_total: HalfLaurent = per_curve.iter().map(|r| r.refined.clone()).sum();
    let classical_total = per_curve.iter().map(|r| r.classical).sum();
    let welschinger_total = per_curve.iter().map(|r| r.welschinger).sum();
    if refined_total.eval_at_one() != classical_total {
        return Err(Error::Consistency("refined total does not specialize to the classical total".into()));
    }
    Ok(SeveriTotals { refined_total, classical_total, welschinger_total, per_curve })
}

/// Enumerate and count in one step.
pub fn severi(polygon: &LatticePolygon, delta: i64, config: &PointConfiguration) -> Result<SeveriTotals> {
    totals(&enumerate_curves(polygon, delta, config)?)
}

/// One row of the count table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub curve: String,
    pub n: i64,
    #[serde(rename = "N")]
    pub refined: HalfLaurent,
    #[serde(rename = "W")]
    pub welschinger: i64,
}

pub fn count_rows(result: &EnumerationResult, totals: &SeveriTotals) -> Vec<CountRow> {
    result
        .curves
        .iter()
        .zip(&totals.per_curve)
        .map(|(c, r)| CountRow {
            curve: c.key().to_string(),
            n: r.classical,
            refined: r.refined.clone(),
            welschinger: r.welschinger,
        })
        .collect()
}

/// CSV with columns `curve,n,N,W`; `N` lists `doubled_exponent:coefficient` pairs.
pub fn rows_to_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("curve,n,N,W\n");
    for r in rows {
        let n: Vec<String> = r.refined.terms().iter().map(|(e, c)| format!("{e}:{c}")).collect();
        out.push_str(&format!("\"{}\",{},\"{}\",{}\n", r.curve, r.n, n.join(";"), r.welschinger));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_quantum_integers() {
        assert_eq!(quantum_integer(1).unwrap(), HalfLaurent::one());
        assert_eq!(quantum_integer(2).unwrap(), HalfLaurent::from_half_terms([(1, 1), (-1, 1)]));
        assert_eq!(quantum_integer(3).unwrap(), HalfLaurent::from_int_terms([(-1, 1), (0, 1), (1, 1)]));
        assert!(matches!(quantum_integer(0), Err(Error::Domain(_))));
    }

    #[test]
    fn quantum_integer_at_one() {
        for m in 1..20 {
            assert_eq!(quantum_integer(m).unwrap().eval_at_one(), m);
        }
    }

    #[test]
    fn csv_shape() {
        let rows = vec![CountRow { curve: "k".into(), n: 3, refined: quantum_integer(3).unwrap(), welschinger: -1 }];
        assert_eq!(rows_to_csv(&rows), "curve,n,N,W\n\"k\",3,\"-2:1;0:1;2:1\",-1\n");
    }
}
