//! Lattice paths and their positive/negative compression into marked subdivisions.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::tropcurve::Cell;

/// A new subdivision vertex `d = a + c - b` completing the parallelogram `a b c d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Completion {
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub c: LatticePoint,
    pub d: LatticePoint,
}

/// Outcome of compressing one side of a path down to the boundary.
#[derive(Debug, Clone, Default)]
pub struct SideFill {
    pub cells: Vec<Cell>,
    pub completions: Vec<Completion>,
    pub mult: i64,
}

/// A fully compressed path: the marked subdivision it determines.
#[derive(Debug, Clone)]
pub struct PathLeaf {
    pub path: Vec<LatticePoint>,
    pub cells: Vec<Cell>,
    pub completions: Vec<Completion>,
    pub mult: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Positive,
    Negative,
}

pub struct PathContext<'a> {
    pub polygon: &'a LatticePolygon,
    pub direction: LatticePoint,
    pub budget: u64,
    used: AtomicU64,
    upper: Vec<LatticePoint>,
    lower: Vec<LatticePoint>,
}

impl<'a> PathContext<'a> {
    /// `direction` must order the lattice points injectively.
    pub fn new(polygon: &'a LatticePolygon, direction: LatticePoint, budget: u64) -> Result<Self> {
        let pts = sorted_points(polygon, direction)?;
        let (p, q) = (pts[0], pts[pts.len() - 1]);
        let ring = polygon.boundary_points();
        let n = ring.len();
        let ip = ring.iter().position(|x| *x == p).unwrap_or(0);
        let iq = ring.iter().position(|x| *x == q).unwrap_or(0);
        // Clockwise arc from p to q bounds the region left of any path.
        let mut upper = vec![p];
        let mut i = ip;
        while i != iq {
            i = (i + n - 1) % n;
            upper.push(ring[i]);
        }
        let mut lower = vec![p];
        let mut i = ip;
        while i != iq {
            i = (i + 1) % n;
            lower.push(ring[i]);
        }
        Ok(PathContext { polygon, direction, budget, used: AtomicU64::new(0), upper, lower })
    }

    fn lambda(&self, u: LatticePoint) -> i64 {
        u.dot(self.direction)
    }

    fn charge(&self) -> Result<()> {
        let n = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            return Err(Error::Resource(format!(
                "lattice-path expansion exceeded the budget of {} steps",
                self.budget
            )));
        }
        Ok(())
    }

    pub fn steps_used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// All ways to compress `path` on both sides.
    pub fn expand(&self, path: &[LatticePoint]) -> Result<Vec<PathLeaf>> {
        let pos = self.compress(path.to_vec(), Side::Positive)?;
        if pos.is_empty() {
            return Ok(Vec::new());
        }
        let neg = self.compress(path.to_vec(), Side::Negative)?;
        let mut out = Vec::with_capacity(pos.len() * neg.len());
        for a in &pos {
            for b in &neg {
                let mut cells = a.cells.clone();
                cells.extend(b.cells.iter().cloned());
                let mut completions = a.completions.clone();
                completions.extend(b.completions.iter().copied());
                out.push(PathLeaf { path: path.to_vec(), cells, completions, mult: a.mult * b.mult });
            }
        }
        Ok(out)
    }

    fn compress(&self, path: Vec<LatticePoint>, side: Side) -> Result<Vec<SideFill>> {
        self.charge()?;
        let target = match side {
            Side::Positive => &self.upper,
            Side::Negative => &self.lower,
        };
        if path == *target {
            return Ok(vec![SideFill { mult: 1, ..Default::default() }]);
        }
        let turn = |j: usize| (path[j] - path[j - 1]).cross(path[j + 1] - path[j]);
        let j = match (1..path.len().saturating_sub(1)).find(|&j| match side {
            Side::Positive => turn(j) > 0,
            Side::Negative => turn(j) < 0,
        }) {
            Some(j) => j,
            None => return Ok(Vec::new()),
        };
        let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
        let mut out = Vec::new();

        let mut skip = path.clone();
        skip.remove(j);
        let area = turn(j).abs();
        for mut fill in self.compress(skip, side)? {
            fill.cells.insert(0, vec![a, b, c]);
            fill.mult *= area;
            out.push(fill);
        }

        let d = a + c - b;
        let ld = self.lambda(d);
        if self.polygon.contains(d) && self.lambda(a) < ld && ld < self.lambda(c) {
            let mut moved = path;
            moved[j] = d;
            for mut fill in self.compress(moved, side)? {
                fill.cells.insert(0, vec![a, b, c, d]);
                fill.completions.insert(0, Completion { a, b, c, d });
                out.push(fill);
            }
        }
        Ok(out)
    }
}

/// Lattice points sorted by the pairing with `direction`, which must be injective on them.
pub fn sorted_points(polygon: &LatticePolygon, direction: LatticePoint) -> Result<Vec<LatticePoint>> {
    let mut pts = polygon.lattice_points();
    pts.sort_by_key(|u| u.dot(direction));
    for w in pts.windows(2) {
        if w[0].dot(direction) == w[1].dot(direction) {
            return Err(Error::validation(
                format!(
                    "direction {direction} does not separate lattice points {} and {}",
                    w[0], w[1]
                ),
                None,
            ));
        }
    }
    Ok(pts)
}

/// Every increasing path from the first to the last point that skips exactly `skip` points.
pub fn increasing_paths(sorted: &[LatticePoint], skip: usize) -> Vec<Vec<LatticePoint>> {
    let n = sorted.len();
    if n < 2 || skip > n - 2 {
        return Vec::new();
    }
    let inner: Vec<usize> = (1..n - 1).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        inner: &[usize],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        sorted: &[LatticePoint],
        out: &mut Vec<Vec<LatticePoint>>,
    ) {
        if left == 0 {
            let path: Vec<LatticePoint> = (0..sorted.len())
                .filter(|i| !chosen.contains(i))
                .map(|i| sorted[i])
                .collect();
            out.push(path);
            return;
        }
        for k in start..inner.len() {
            chosen.push(inner[k]);
            rec(inner, k + 1, left - 1, chosen, sorted, out);
            chosen.pop();
        }
    }
    rec(&inner, 0, skip, &mut chosen, sorted, &mut out);
    out
}
