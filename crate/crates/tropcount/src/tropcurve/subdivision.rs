use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{orient, LatticePoint, LatticePolygon};
use crate::rational::{common_denominator, parse_rat, rat, Rat};

/// A maximal cell: its corners in counterclockwise order from the smallest.
pub type Cell = Vec<LatticePoint>;

/// Newton subdivision of a lattice polygon together with a lifting that certifies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonSubdivision {
    pub polygon: LatticePolygon,
    pub cells: Vec<Cell>,
    #[serde(with = "lifting_serde")]
    pub lifting: BTreeMap<LatticePoint, Rat>,
}

/// Affine function `u -> c + <g, u>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub c: Rat,
    pub gx: Rat,
    pub gy: Rat,
}

impl Affine {
    pub fn eval(&self, u: LatticePoint) -> Rat {
        &self.c + &self.gx * rat(u.x) + &self.gy * rat(u.y)
    }

    /// The affine function through three lifted, non-collinear points.
    pub fn through(pts: [(LatticePoint, &Rat); 3]) -> Option<Affine> {
        let [(a, fa), (b, fb), (c, fc)] = pts;
        let (ab, ac) = (b - a, c - a);
        let det = ab.cross(ac);
        if det == 0 {
            return None;
        }
        let (db, dc) = (fb - fa, fc - fa);
        let det = rat(det);
        let gx = (&db * rat(ac.y) - &dc * rat(ab.y)) / &det;
        let gy = (&dc * rat(ab.x) - &db * rat(ac.x)) / &det;
        let c = fa - &gx * rat(a.x) - &gy * rat(a.y);
        Some(Affine { c, gx, gy })
    }
}

/// Doubled area of a convex cell.
pub fn cell_doubled_area(cell: &[LatticePoint]) -> i64 {
    let n = cell.len();
    (0..n).map(|i| cell[i].cross(cell[(i + 1) % n])).sum()
}

/// `Some(true)` strictly inside, `Some(false)` on the boundary, `None` outside.
pub fn cell_locate(cell: &[LatticePoint], p: LatticePoint) -> Option<bool> {
    let n = cell.len();
    let mut boundary = false;
    for i in 0..n {
        let o = orient(cell[i], cell[(i + 1) % n], p);
        if o < 0 {
            return None;
        }
        if o == 0 {
            boundary = true;
        }
    }
    Some(!boundary)
}

/// Corners of the convex hull, counterclockwise from the smallest; `None` if degenerate.
pub fn normalize_cell(points: &[LatticePoint]) -> Option<Cell> {
    LatticePolygon::convex_hull(points).ok().map(|p| p.vertices().to_vec())
}

/// Is the cell a parallelogram?
pub fn is_parallelogram(cell: &[LatticePoint]) -> bool {
    cell.len() == 4 && cell[0] + cell[2] == cell[1] + cell[3]
}

impl NewtonSubdivision {
    /// Validate a subdivision given by explicit cells and a certifying lifting.
    pub fn new(
        polygon: LatticePolygon,
        cells: Vec<Vec<LatticePoint>>,
        lifting: BTreeMap<LatticePoint, Rat>,
    ) -> Result<Self> {
        let mut norm = Vec::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            let cell = normalize_cell(c)
                .ok_or_else(|| Error::validation(format!("cell {i} is degenerate"), Some(i)))?;
            if cell.len() != c.len() {
                return Err(Error::validation(
                    format!("cell {i} lists points that are not corners"),
                    Some(i),
                ));
            }
            norm.push(cell);
        }
        norm.sort();
        let sub = NewtonSubdivision { polygon, cells: norm, lifting };
        sub.check_tiling()?;
        sub.check_regular()?;
        Ok(sub)
    }

    /// The regular subdivision induced by the lower convex hull of the lifted points.
    pub fn from_lifting(polygon: LatticePolygon, lifting: BTreeMap<LatticePoint, Rat>) -> Result<Self> {
        for (i, v) in polygon.vertices().iter().enumerate() {
            if !lifting.contains_key(v) {
                return Err(Error::validation(
                    format!("polygon vertex {v} carries no lifting value"),
                    Some(i),
                ));
            }
        }
        for p in lifting.keys() {
            if !polygon.contains(*p) {
                return Err(Error::validation(format!("lifted point {p} lies outside the polygon"), None));
            }
        }
        let cells = lower_hull_cells(&lifting);
        let mut cells: Vec<Cell> = cells;
        cells.sort();
        let sub = NewtonSubdivision { polygon, cells, lifting };
        sub.check_tiling()?;
        Ok(sub)
    }

    fn check_tiling(&self) -> Result<()> {
        for (i, cell) in self.cells.iter().enumerate() {
            for p in cell {
                if !self.polygon.contains(*p) {
                    return Err(Error::validation(format!("cell {i} leaves the polygon at {p}"), Some(i)));
                }
                if !self.lifting.contains_key(p) {
                    return Err(Error::validation(format!("corner {p} of cell {i} is not lifted"), Some(i)));
                }
            }
        }
        let total: i64 = self.cells.iter().map(|c| cell_doubled_area(c)).sum();
        if total != self.polygon.doubled_area() {
            return Err(Error::validation(
                format!(
                    "cells cover doubled area {total}, polygon has {}",
                    self.polygon.doubled_area()
                ),
                None,
            ));
        }
        Ok(())
    }

    /// The affine function interpolating the lifting on cell `i`.
    pub fn cell_affine(&self, i: usize) -> Affine {
        let c = &self.cells[i];
        Affine::through([(c[0], &self.lifting[&c[0]]), (c[1], &self.lifting[&c[1]]), (c[2], &self.lifting[&c[2]])])
            .expect("cell corners are in convex position")
    }

    fn cell_containing(&self, p: LatticePoint, skip: usize) -> usize {
        self.cells
            .iter()
            .enumerate()
            .find(|(j, c)| *j != skip && cell_locate(c, p).is_some())
            .map(|(j, _)| j)
            .unwrap_or(skip)
    }

    /// Check that the lifting's lower hull induces exactly these cells.
    pub fn check_regular(&self) -> Result<()> {
        for (i, cell) in self.cells.iter().enumerate() {
            let aff = self.cell_affine(i);
            for p in &cell[3..] {
                if aff.eval(*p) != self.lifting[p] {
                    return Err(Error::Regularity {
                        message: format!("corner {p} of cell {i} is off the cell's plane"),
                        cells: (i, i),
                    });
                }
            }
            for (p, v) in &self.lifting {
                if cell.contains(p) {
                    continue;
                }
                let gap = v - aff.eval(*p);
                let inside = cell_locate(cell, *p).is_some();
                if gap.is_negative() || (!inside && gap.is_zero()) {
                    let j = self.cell_containing(*p, i);
                    return Err(Error::Regularity {
                        message: format!("lifted point {p} is not above the plane of cell {i}"),
                        cells: (i, j),
                    });
                }
            }
        }
        Ok(())
    }

    /// Every edge `(a, b)` with `a < b`, mapped to the indices of the cells containing it.
    pub fn edges(&self) -> BTreeMap<(LatticePoint, LatticePoint), Vec<usize>> {
        let mut out: BTreeMap<(LatticePoint, LatticePoint), Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            let n = c.len();
            for k in 0..n {
                let (a, b) = (c[k], c[(k + 1) % n]);
                out.entry((a.min(b), a.max(b))).or_default().push(i);
            }
        }
        out
    }

    /// Points used as corners by some cell.
    pub fn corners(&self) -> BTreeSet<LatticePoint> {
        self.cells.iter().flatten().copied().collect()
    }

    /// Lattice points of the polygon that are not corners of any cell.
    pub fn unused_points(&self) -> Vec<LatticePoint> {
        let used = self.corners();
        self.polygon
            .lattice_points()
            .into_iter()
            .filter(|p| !used.contains(p))
            .collect()
    }

    /// Value of the tropical polynomial `min_u phi(u) + <u, p>` and its minimizers.
    pub fn evaluate(&self, p: &crate::rational::QPoint) -> (Rat, Vec<LatticePoint>) {
        let mut best: Option<Rat> = None;
        let mut arg = Vec::new();
        for (u, v) in &self.lifting {
            let val = v + p.pair(*u);
            match &best {
                Some(b) if &val > b => {}
                Some(b) if &val == b => arg.push(*u),
                _ => {
                    best = Some(val);
                    arg = vec![*u];
                }
            }
        }
        (best.unwrap_or_else(Rat::zero), arg)
    }
}

/// Cells of the lower convex hull of the lifted points.
fn lower_hull_cells(lifting: &BTreeMap<LatticePoint, Rat>) -> Vec<Cell> {
    let den = common_denominator(lifting.values());
    let pts: Vec<(LatticePoint, BigInt)> = lifting
        .iter()
        .map(|(p, v)| (*p, (v * Rat::from_integer(den.clone())).to_integer()))
        .collect();
    let n = pts.len();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut covered: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if covered.contains(&(i, j, k)) {
                    continue;
                }
                let o = orient(pts[i].0, pts[j].0, pts[k].0);
                if o == 0 {
                    continue;
                }
                let (j2, k2) = if o > 0 { (j, k) } else { (k, j) };
                let a = vec3(&pts[i], &pts[j2]);
                let b = vec3(&pts[i], &pts[k2]);
                let nrm = cross3(&a, &b);
                let mut face = Vec::new();
                let mut lower = true;
                for (m, q) in pts.iter().enumerate() {
                    let d = vec3(&pts[i], q);
                    let s = &nrm[0] * &d[0] + &nrm[1] * &d[1] + &nrm[2] * &d[2];
                    if s.is_negative() {
                        lower = false;
                        break;
                    }
                    if s.is_zero() {
                        face.push(m);
                    }
                }
                if lower {
                    for x in 0..face.len() {
                        for y in x + 1..face.len() {
                            for z in y + 1..face.len() {
                                covered.insert((face[x], face[y], face[z]));
                            }
                        }
                    }
                    faces.insert(face);
                }
            }
        }
    }
    faces
        .into_iter()
        .filter_map(|f| {
            let p: Vec<LatticePoint> = f.iter().map(|&m| pts[m].0).collect();
            normalize_cell(&p)
        })
        .collect()
}

fn vec3(o: &(LatticePoint, BigInt), p: &(LatticePoint, BigInt)) -> [BigInt; 3] {
    [
        BigInt::from(p.0.x - o.0.x),
        BigInt::from(p.0.y - o.0.y),
        &p.1 - &o.1,
    ]
}

fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

mod lifting_serde {
    use super::*;

    pub fn serialize<S: Serializer>(m: &BTreeMap<LatticePoint, Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(LatticePoint, String)> = m.iter().map(|(p, r)| (*p, r.to_string())).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<LatticePoint, Rat>, D::Error> {
        let v = Vec::<(LatticePoint, String)>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (p, s) in v {
            let r = parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))?;
            if out.insert(p, r).is_some() {
                return Err(serde::de::Error::custom(format!("point {p} lifted twice")));
            }
        }
        Ok(out)
    }
}
