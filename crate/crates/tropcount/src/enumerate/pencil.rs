//! Curves through explicit points for δ ≤ 1, by intersecting tropical hyperplanes.
//!
//! Each point `p` imposes the tropical hyperplane `min_u φ(u) + <u, p>`. For δ = 0
//! the solution is the tropical Cramer vector; for δ = 1 the solutions form a tropical
//! line (a tree in coefficient space) whose leaves and parallelogram crossings are
//! the candidate curves.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::assign::tropical_det;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::rational::{common_denominator, QPoint, Rat};
use crate::tropcurve::{curve_from_subdivision, curve_genus, NewtonSubdivision, TropicalCurve};

struct System {
    lattice: Vec<LatticePoint>,
    matrix: Vec<Vec<BigInt>>,
    scale: BigInt,
}

impl System {
    fn new(polygon: &LatticePolygon, points: &[QPoint]) -> System {
        let lattice = polygon.lattice_points();
        let coords: Vec<&Rat> = points.iter().flat_map(|p| [&p.x, &p.y]).collect();
        let scale = common_denominator(coords);
        let matrix = points
            .iter()
            .map(|p| {
                lattice
                    .iter()
                    .map(|&u| {
                        let v = p.pair(u) * Rat::from_integer(scale.clone());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        System { lattice, matrix, scale }
    }

    /// Tropical minor with the listed columns removed.
    fn minor(&self, removed: &[usize]) -> BigInt {
        let m: Vec<Vec<BigInt>> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| !removed.contains(j))
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        tropical_det(&m)
    }

    fn lifting(&self, values: &[Option<BigInt>]) -> BTreeMap<LatticePoint, Rat> {
        self.lattice
            .iter()
            .zip(values)
            .filter_map(|(&u, v)| v.as_ref().map(|v| (u, Rat::new(v.clone(), self.scale.clone()))))
            .collect()
    }
}

fn unit_parallelograms(lattice: &[LatticePoint]) -> Vec<[usize; 4]> {
    let index: BTreeMap<LatticePoint, usize> = lattice.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut out = Vec::new();
    for (ia, &a) in lattice.iter().enumerate() {
        for (ib, &b) in lattice.iter().enumerate() {
            for (id, &d) in lattice.iter().enumerate() {
                if ib >= id || ia == ib || ia == id {
                    continue;
                }
                if (b - a).cross(d - a).abs() != 1 {
                    continue;
                }
                let c = b + d - a;
                if let Some(&ic) = index.get(&c) {
                    // Count each parallelogram once, from its smallest corner.
                    if ia < ic && ia < ib && ia < id {
                        out.push([ia, ib, ic, id]);
                    }
                }
            }
        }
    }
    out
}

fn candidate(
    polygon: &LatticePolygon,
    lifting: BTreeMap<LatticePoint, Rat>,
    genus: i64,
    points: &[QPoint],
) -> Result<Option<TropicalCurve>> {
    if polygon.vertices().iter().any(|v| !lifting.contains_key(v)) {
        return Ok(None);
    }
    let sub = NewtonSubdivision::from_lifting(polygon.clone(), lifting)?;
    let curve = curve_from_subdivision(&sub)?;
    if !curve.is_simple() || curve_genus(&curve)? != genus {
        return Ok(None);
    }
    Ok(Some(curve.with_markings(points)?))
}

/// All simple curves of genus `g - delta` through `points`, for `delta` in {0, 1}.
pub fn solve_explicit(polygon: &LatticePolygon, delta: i64, points: &[QPoint]) -> Result<Vec<TropicalCurve>> {
    let sys = System::new(polygon, points);
    let n = sys.lattice.len();
    let genus = polygon.genus() - delta;
    if points.len() as i64 != n as i64 - 1 - delta {
        return Err(Error::validation(
            format!("expected {} points, got {}", n as i64 - 1 - delta, points.len()),
            None,
        ));
    }
    match delta {
        0 => {
            let values: Vec<Option<BigInt>> = (0..n).map(|k| Some(sys.minor(&[k]))).collect();
            match candidate(polygon, sys.lifting(&values), genus, points)? {
                Some(c) => Ok(vec![c]),
                None => Err(Error::Genericity("the curve through the points is not simple".into())),
            }
        }
        1 => solve_pencil(polygon, &sys, genus, points),
        _ => Err(Error::Unsupported(format!("explicit configurations with delta = {delta}"))),
    }
}

/// A coordinate `alpha * t + beta` along one piece of a tree path.
#[derive(Clone)]
struct Linear {
    alpha: i64,
    beta: BigInt,
}

fn solve_pencil(polygon: &LatticePolygon, sys: &System, genus: i64, points: &[QPoint]) -> Result<Vec<TropicalCurve>> {
    let n = sys.lattice.len();
    let mut plucker = vec![vec![BigInt::zero(); n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let m = sys.minor(&[u, v]);
            plucker[u][v] = m.clone();
            plucker[v][u] = m;
        }
    }
    let mut found: BTreeMap<_, TropicalCurve> = BTreeMap::new();
    let mut push = |c: TropicalCurve| {
        found.entry(c.key()).or_insert(c);
    };

    // Leaf rays: coordinate u tends to infinity.
    for u in 0..n {
        let values: Vec<Option<BigInt>> =
            (0..n).map(|l| if l == u { None } else { Some(plucker[u][l].clone()) }).collect();
        if let Some(c) = candidate(polygon, sys.lifting(&values), genus, points)? {
            push(c);
        }
    }

    // Paths from leaf r to every other leaf k cover all bounded edges.
    let r = 0usize;
    let paras = unit_parallelograms(&sys.lattice);
    for k in 1..n {
        let mut breaks: Vec<BigInt> = (0..n)
            .filter(|&l| l != r && l != k)
            .map(|l| &plucker[k][l] - &plucker[r][l])
            .collect();
        breaks.sort();
        breaks.dedup();
        let mut bounds: Vec<Option<BigInt>> = vec![None];
        bounds.extend(breaks.into_iter().map(Some));
        bounds.push(None);
        for w in bounds.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            // A sample parameter strictly inside the piece decides each coordinate's branch.
            let two = BigInt::from(2);
            let sample2 = match (lo, hi) {
                (Some(a), Some(b)) => a + b,
                (None, Some(b)) => b * &two - 2,
                (Some(a), None) => a * &two + 2,
                (None, None) => BigInt::zero(),
            };
            let coords: Vec<Linear> = (0..n)
                .map(|l| {
                    if l == r {
                        Linear { alpha: 0, beta: BigInt::zero() }
                    } else if l == k {
                        Linear { alpha: 1, beta: BigInt::zero() }
                    } else {
                        let tl2 = (&plucker[k][l] - &plucker[r][l]) * &two;
                        if sample2 < tl2 {
                            Linear { alpha: 1, beta: &plucker[r][l] - &plucker[r][k] }
                        } else {
                            Linear { alpha: 0, beta: &plucker[k][l] - &plucker[r][k] }
                        }
                    }
                })
                .collect();
            for p in &paras {
                let [a, b, c, d] = *p;
                let coef = coords[a].alpha + coords[c].alpha - coords[b].alpha - coords[d].alpha;
                let cons = &coords[a].beta + &coords[c].beta - &coords[b].beta - &coords[d].beta;
                if coef == 0 {
                    if cons.is_zero() {
                        let values = eval_scaled(&coords, &sample2, 2);
                        if parallelogram_is_face(sys, &values, p) {
                            return Err(Error::Genericity(
                                "a one-parameter family of curves shares a crossing".into(),
                            ));
                        }
                    }
                    continue;
                }
                // coef * t + cons = 0, with t rational.
                let (num, den) = if coef > 0 { (-cons, BigInt::from(coef)) } else { (cons, BigInt::from(-coef)) };
                if lo.as_ref().is_some_and(|x| num < x * &den) || hi.as_ref().is_some_and(|x| num > x * &den) {
                    continue;
                }
                let values = eval_scaled(&coords, &num, den.clone());
                if !parallelogram_is_face(sys, &values, p) {
                    continue;
                }
                let scaled = System { lattice: sys.lattice.clone(), matrix: Vec::new(), scale: &sys.scale * &den };
                let lifting = scaled.lifting(&values.into_iter().map(Some).collect::<Vec<_>>());
                if let Some(c) = candidate(polygon, lifting, genus, points)? {
                    push(c);
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Coordinates at `t = num / den`, all multiplied by `den`.
fn eval_scaled(coords: &[Linear], num: &BigInt, den: impl Into<BigInt>) -> Vec<BigInt> {
    let den = den.into();
    coords.iter().map(|c| num * c.alpha + &c.beta * &den).collect()
}

/// Whether the parallelogram is a lower face of the lifting `values` (plane through it, others strictly above).
fn parallelogram_is_face(sys: &System, values: &[BigInt], p: &[usize; 4]) -> bool {
    let [a, b, _, d] = *p;
    let (pa, pb, pd) = (sys.lattice[a], sys.lattice[b], sys.lattice[d]);
    let e1 = pb - pa;
    let e2 = pd - pa;
    let det = e1.cross(e2);
    let h1 = &values[b] - &values[a];
    let h2 = &values[d] - &values[a];
    for (i, &u) in sys.lattice.iter().enumerate() {
        if p.contains(&i) {
            continue;
        }
        let w = u - pa;
        // Plane height at u, times det: solve w = s e1 + t e2.
        let s = w.cross(e2);
        let t = e1.cross(w);
        let plane = &h1 * s + &h2 * t + &values[a] * det;
        let lifted = &values[i] * det;
        let above = if det > 0 { lifted > plane } else { lifted < plane };
        if !above {
            return false;
        }
    }
    true
}
