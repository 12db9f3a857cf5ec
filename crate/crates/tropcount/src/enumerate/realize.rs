//! Turning a compressed lattice path into a tropical curve through stretched points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::paths::PathLeaf;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::rational::{rat, QPoint, Rat};
use crate::tropcurve::{curve_from_subdivision, NewtonSubdivision, TropicalCurve};

/// Points `p_j = t_j * direction` with `t_j = -scale^j`, `j = 1..=count`.
pub fn stretched_points(direction: LatticePoint, count: usize, scale: i64) -> Vec<QPoint> {
    let k = BigInt::from(scale);
    (1..=count)
        .map(|j| {
            let t = -Rat::from_integer(Pow::pow(&k, j as u32));
            QPoint::new(&t * rat(direction.x), &t * rat(direction.y))
        })
        .collect()
}

/// Solve the lifting of a leaf so that the `j`-th path edge passes through `points[j]`.
pub fn leaf_lifting(leaf: &PathLeaf, points: &[QPoint]) -> BTreeMap<LatticePoint, Rat> {
    let mut phi = BTreeMap::new();
    let path = &leaf.path;
    phi.insert(path[0], Rat::zero());
    for j in 1..path.len() {
        let prev = phi[&path[j - 1]].clone();
        let v = prev + points[j - 1].pair(path[j - 1] - path[j]);
        phi.insert(path[j], v);
    }
    for c in &leaf.completions {
        let v = &phi[&c.a] + &phi[&c.c] - &phi[&c.b];
        phi.insert(c.d, v);
    }
    phi
}

/// Build and check the curve of a leaf. `Ok(None)` means the points are not stretched enough.
pub fn realize_leaf(polygon: &LatticePolygon, leaf: &PathLeaf, points: &[QPoint]) -> Result<Option<TropicalCurve>> {
    let lifting = leaf_lifting(leaf, points);
    let sub = match NewtonSubdivision::new(polygon.clone(), leaf.cells.clone(), lifting) {
        Ok(s) => s,
        Err(Error::Regularity { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let curve = curve_from_subdivision(&sub)?;
    let curve = match curve.with_markings(points) {
        Ok(c) => c,
        Err(Error::Genericity(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    for (j, m) in curve.markings.iter().enumerate() {
        let (a, b) = (leaf.path[j], leaf.path[j + 1]);
        if curve.edges[m.edge].dual != (a.min(b), a.max(b)) {
            return Ok(None);
        }
    }
    Ok(Some(curve))
}

