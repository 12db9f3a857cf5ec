use serde::{Deserialize, Serialize};

use super::laurent::HalfLaurent;
use crate::error::{Error, Result};

/// Truncated power series in `q` with `HalfLaurent` coefficients.
///
/// `coefficients[i]` is the coefficient of `q^{offset + i}`; terms of
/// exponent `>= order` are unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRaw")]
pub struct SeriesY {
    order: i64,
    offset: i64,
    coefficients: Vec<HalfLaurent>,
}

#[derive(Deserialize)]
struct SeriesRaw {
    order: i64,
    offset: i64,
    coefficients: Vec<HalfLaurent>,
}

impl TryFrom<SeriesRaw> for SeriesY {
    type Error = Error;
    fn try_from(r: SeriesRaw) -> Result<Self> {
        if r.order - r.offset != r.coefficients.len() as i64 {
            return Err(Error::validation(
                format!(
                    "series with offset {} and order {} needs {} coefficients, got {}",
                    r.offset,
                    r.order,
                    r.order - r.offset,
                    r.coefficients.len()
                ),
                None,
            ));
        }
        Ok(SeriesY { order: r.order, offset: r.offset, coefficients: r.coefficients })
    }
}

impl SeriesY {
    pub fn new(offset: i64, coefficients: Vec<HalfLaurent>) -> Self {
        SeriesY { order: offset + coefficients.len() as i64, offset, coefficients }
    }

    pub fn zero(offset: i64, order: i64) -> Self {
        let n = (order - offset).max(0) as usize;
        Self::new(offset, vec![HalfLaurent::zero(); n])
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coefficients(&self) -> &[HalfLaurent] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<HalfLaurent> {
        self.coefficients
    }

    /// Coefficient of `q^e`; zero below the offset, `None` at or beyond the order.
    pub fn coeff(&self, e: i64) -> Option<HalfLaurent> {
        if e >= self.order {
            None
        } else if e < self.offset {
            Some(HalfLaurent::zero())
        } else {
            Some(self.coefficients[(e - self.offset) as usize].clone())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(HalfLaurent::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_tracks_length() {
        let s = SeriesY::new(-1, vec![HalfLaurent::one(); 3]);
        assert_eq!(s.order(), 2);
        assert_eq!(s.coeff(-2), Some(HalfLaurent::zero()));
        assert_eq!(s.coeff(1), Some(HalfLaurent::one()));
        assert_eq!(s.coeff(2), None);
    }

    #[test]
    fn rejects_inconsistent_json() {
        let bad = r#"{"order": 3, "offset": 0, "coefficients": []}"#;
        assert!(serde_json::from_str::<SeriesY>(bad).is_err());
        let s = SeriesY::zero(0, 2);
        let back: SeriesY = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
