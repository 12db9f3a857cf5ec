//! Exact rational scalars and points, serialized as strings like `"-3/2"`.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::lattice::LatticePoint;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Serde adapter for a single rational stored as a string.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).ok_or_else(|| serde::de::Error::custom(format!("bad rational {raw:?}")))
    }
}

/// A point of the plane with rational coordinates, serialized as `["x", "y"]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoint {
    pub x: Rat,
    pub y: Rat,
}

impl QPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        QPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QPoint::new(rat(x), rat(y))
    }

    pub fn origin() -> Self {
        QPoint::new(Rat::zero(), Rat::zero())
    }

    /// Pairing with an integer vector.
    pub fn pair(&self, u: LatticePoint) -> Rat {
        &self.x * rat(u.x) + &self.y * rat(u.y)
    }

    pub fn dot(&self, o: &QPoint) -> Rat {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn scale(&self, t: &Rat) -> QPoint {
        QPoint::new(&self.x * t, &self.y * t)
    }

    pub fn from_lattice(u: LatticePoint) -> QPoint {
        QPoint::from_ints(u.x, u.y)
    }

    /// Approximate coordinates for display only.
    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.x), rat_to_f64(&self.y))
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl Add for &QPoint {
    type Output = QPoint;
    fn add(self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &QPoint {
    type Output = QPoint;
    fn sub(self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for QPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

/// A coordinate written either as an integer or as a `"p/q"` string.
#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    fn into_rat<E: serde::de::Error>(self) -> Result<Rat, E> {
        match self {
            Coord::Int(n) => Ok(rat(n)),
            Coord::Text(t) => parse_rat(&t).ok_or_else(|| E::custom(format!("bad rational {t:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for QPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[Coord; 2]>::deserialize(d)?;
        Ok(QPoint::new(x.into_rat()?, y.into_rat()?))
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l
}
