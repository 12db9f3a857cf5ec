//! Motivic volumes of cells of a tropical complex and of semistable models.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ringkit::MotivicClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronDescriptor {
    pub dim: u32,
    pub bounded: bool,
    pub affine_subspace: bool,
}

/// Bounded-Euler characteristic of the relative interior of a polyhedron.
pub fn chi_prime(p: &PolyhedronDescriptor) -> i64 {
    if p.bounded {
        if p.dim.is_multiple_of(2) {
            1
        } else {
            -1
        }
    } else if p.affine_subspace {
        1
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDatum {
    pub in_class: MotivicClass,
    pub dim: i64,
    pub rec_dim: i64,
}

impl CellDatum {
    pub fn new(in_class: MotivicClass, dim: i64, rec_dim: i64) -> Self {
        CellDatum { in_class, dim, rec_dim }
    }

    fn check(&self) -> Result<()> {
        if self.dim < 0 || self.rec_dim < 0 || self.rec_dim > self.dim {
            return Err(Error::Domain(format!(
                "cell with dim {} and recession dim {} is invalid",
                self.dim, self.rec_dim
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeVariant {
    BoundedCell,
    Closure,
    Stratum,
}

fn sign(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn cell_volume(c: &CellDatum, variant: VolumeVariant) -> Result<MotivicClass> {
    c.check()?;
    match variant {
        VolumeVariant::BoundedCell => {
            if c.rec_dim > 0 {
                Ok(MotivicClass::zero())
            } else {
                Ok(c.in_class.scale(sign(c.dim)))
            }
        }
        VolumeVariant::Closure => Ok(c.in_class.scale(sign(c.dim - c.rec_dim)).localize(c.rec_dim as u32)),
        VolumeVariant::Stratum => {
            let factor = MotivicClass::from_poly(&[1, -1]).pow((c.dim - c.rec_dim) as u32)?;
            factor.mul(&c.in_class)
        }
    }
}

/// Sum of cell volumes; closure sums are reduced.
pub fn complex_volume(cells: &[CellDatum], variant: VolumeVariant) -> Result<MotivicClass> {
    let mut total = MotivicClass::zero();
    for c in cells {
        total = total.add(&cell_volume(c, variant)?);
    }
    Ok(match variant {
        VolumeVariant::Closure => total.reduce(),
        _ => total,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumDatum {
    pub stratum_class: MotivicClass,
    pub depth: u32,
}

/// Sum over strata of `[E_J] (1 - L)^(|J| - 1)`.
pub fn semistable_volume(strata: &[StratumDatum]) -> Result<MotivicClass> {
    let mut total = MotivicClass::zero();
    for s in strata {
        if s.depth == 0 {
            return Err(Error::Domain("stratum depth must be at least 1".into()));
        }
        let factor = MotivicClass::from_poly(&[1, -1]).pow(s.depth - 1)?;
        total = total.add(&factor.mul(&s.stratum_class)?);
    }
    Ok(total)
}
