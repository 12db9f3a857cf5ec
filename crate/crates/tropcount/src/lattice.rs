//! Lattice polygons: validation, lattice-point counts and degree data.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point (or vector) of the integer lattice, serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn dot(self, other: LatticePoint) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Determinant of the 2x2 matrix with columns `self`, `other`.
    pub fn cross(self, other: LatticePoint) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// Number of lattice steps along the segment from the origin to `self`.
    pub fn lattice_length(self) -> i64 {
        self.x.gcd(&self.y)
    }

    /// Divide out the lattice length. The zero vector is returned unchanged.
    pub fn primitive(self) -> LatticePoint {
        let g = self.lattice_length();
        if g == 0 {
            self
        } else {
            LatticePoint::new(self.x / g, self.y / g)
        }
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn rot90(self) -> LatticePoint {
        LatticePoint::new(-self.y, self.x)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(LatticePoint::new(x, y))
    }
}

/// Signed doubled area of the triangle `a, b, c` (positive when counterclockwise).
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    (b - a).cross(c - a)
}

/// A strictly convex lattice polygon with counterclockwise vertices,
/// starting at the lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// Lattice-point bookkeeping of a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonStats {
    pub total_points: i64,
    pub interior_points: i64,
    pub doubled_area: i64,
    pub boundary_length: i64,
}

/// One edge's contribution to the degree: its primitive inner normal and lattice length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDirection {
    pub direction: LatticePoint,
    pub multiplicity: i64,
}

impl LatticePolygon {
    /// Validate and normalize a vertex list. Clockwise input is reversed.
    /// Errors carry the input index of the offending vertex.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::validation(
                format!("polygon needs at least 3 vertices, got {n}"),
                None,
            ));
        }
        let area: i64 = (0..n)
            .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
            .sum();
        if area == 0 {
            return Err(Error::validation("degenerate polygon with zero area", Some(0)));
        }
        let mut idx: Vec<usize> = (0..n).collect();
        if area < 0 {
            idx.reverse();
        }
        let v: Vec<LatticePoint> = idx.iter().map(|&i| vertices[i]).collect();
        for i in 0..n {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            let turn = orient(a, b, c);
            if turn <= 0 {
                let kind = if turn == 0 { "collinear" } else { "reflex" };
                return Err(Error::validation(
                    format!(
                        "{kind} vertex triple ({}, {}, {}) at {a} {b} {c}",
                        idx[(i + n - 1) % n],
                        idx[i],
                        idx[(i + 1) % n]
                    ),
                    Some(idx[i]),
                ));
            }
        }
        // All turns are left; reject polygons that wind around more than once.
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            for (j, &p) in v.iter().enumerate() {
                if j != i && j != (i + 1) % n && orient(a, b, p) <= 0 {
                    return Err(Error::validation(
                        format!(
                            "non-convex polygon: vertex {} {p} is not strictly inside edge ({}, {})",
                            idx[j],
                            idx[i],
                            idx[(i + 1) % n]
                        ),
                        Some(idx[j]),
                    ));
                }
            }
        }
        let start = (0..n).min_by_key(|&i| v[i]).unwrap_or(0);
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(v[(start + k) % n]);
        }
        Ok(LatticePolygon { vertices: out })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect())
    }

    /// Convex hull of a point set (collinear boundary points dropped).
    pub fn convex_hull(points: &[LatticePoint]) -> Result<Self> {
        let mut pts: Vec<LatticePoint> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::validation("fewer than 3 distinct points", None));
        }
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    /// The triangle with vertices `(0,0), (d,0), (0,d)`.
    pub fn simplex(d: i64) -> Result<Self> {
        Self::from_coords(&[(0, 0), (d, 0), (0, d)])
    }

    /// The rectangle `[0,a] x [0,b]`.
    pub fn rectangle(a: i64, b: i64) -> Result<Self> {
        Self::from_coords(&[(0, 0), (a, 0), (a, b), (0, b)])
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Edges as (start, end) pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn doubled_area(&self) -> i64 {
        self.edges().map(|(a, b)| a.cross(b)).sum()
    }

    pub fn boundary_length(&self) -> i64 {
        self.edges().map(|(a, b)| (b - a).lattice_length()).sum()
    }

    pub fn stats(&self) -> PolygonStats {
        let doubled_area = self.doubled_area();
        let boundary_length = self.boundary_length();
        let interior_points = (doubled_area - boundary_length + 2) / 2;
        PolygonStats {
            total_points: interior_points + boundary_length,
            interior_points,
            doubled_area,
            boundary_length,
        }
    }

    /// Interior lattice-point count, the genus of a generic curve in the linear system.
    pub fn genus(&self) -> i64 {
        self.stats().interior_points
    }

    pub fn degree_directions(&self) -> Vec<DegreeDirection> {
        self.edges()
            .map(|(a, b)| {
                let d = b - a;
                DegreeDirection {
                    direction: d.rot90().primitive(),
                    multiplicity: d.lattice_length(),
                }
            })
            .collect()
    }

    /// `Some(true)` strictly inside, `Some(false)` on the boundary, `None` outside.
    pub fn locate(&self, p: LatticePoint) -> Option<bool> {
        let mut on_boundary = false;
        for (a, b) in self.edges() {
            let o = orient(a, b, p);
            if o < 0 {
                return None;
            }
            if o == 0 {
                on_boundary = true;
            }
        }
        Some(!on_boundary)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.locate(p).is_some()
    }

    pub fn is_interior(&self, p: LatticePoint) -> bool {
        self.locate(p) == Some(true)
    }

    /// Bounding box `(min, max)`.
    pub fn bounds(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            LatticePoint::new(xs.clone().min().unwrap_or(0), ys.clone().min().unwrap_or(0)),
            LatticePoint::new(xs.max().unwrap_or(0), ys.max().unwrap_or(0)),
        )
    }

    /// All lattice points of the closed polygon in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounds();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                let p = LatticePoint::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Boundary lattice points in counterclockwise order starting at the first vertex.
    pub fn boundary_points(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            let d = b - a;
            let len = d.lattice_length();
            let step = d.primitive();
            for k in 0..len {
                out.push(a + k * step);
            }
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&p| k * p).collect())
    }

    pub fn translated(&self, t: LatticePoint) -> Self {
        LatticePolygon {
            vertices: self.vertices.iter().map(|&p| p + t).collect(),
        }
    }

    pub fn to_json(&self) -> PolygonJson {
        PolygonJson {
            vertices: self.vertices.iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: PolygonJson = serde_json::from_str(s)
            .map_err(|e| Error::validation(format!("malformed polygon JSON: {e}"), None))?;
        raw.into_polygon()
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Wire format `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[i64; 2]>,
}

impl PolygonJson {
    pub fn into_polygon(self) -> Result<LatticePolygon> {
        LatticePolygon::new(
            self.vertices
                .into_iter()
                .map(|[x, y]| LatticePoint::new(x, y))
                .collect(),
        )
    }
}

impl Serialize for LatticePolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolygonJson::deserialize(d)?
            .into_polygon()
            .map_err(serde::de::Error::custom)
    }
}
