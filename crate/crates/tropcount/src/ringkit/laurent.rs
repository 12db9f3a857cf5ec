use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Laurent polynomial in `y^{1/2}` with integer coefficients.
///
/// Keys are doubled exponents: key `k` stands for `y^{k/2}`. Zero
/// coefficients are never stored, so the empty map is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, i64>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `c * y^{half_exp/2}`.
    pub fn monomial(half_exp: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(half_exp, c);
        }
        HalfLaurent { terms }
    }

    /// `c * y^e` for an integer exponent `e`.
    pub fn y_pow(e: i64, c: i64) -> Self {
        Self::monomial(2 * e, c)
    }

    /// The variable `y`.
    pub fn y() -> Self {
        Self::y_pow(1, 1)
    }

    /// Build from `(doubled exponent, coefficient)` pairs; repeated keys are summed.
    pub fn from_half_terms(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = HalfLaurent::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    /// Build from integer-exponent coefficients `[(e, c)]`.
    pub fn from_int_terms(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Self::from_half_terms(pairs.into_iter().map(|(e, c)| (2 * e, c)))
    }

    /// Coefficients of `c_0 + c_1 y + c_2 y^2 + ...`.
    pub fn from_poly(coeffs: &[i64]) -> Self {
        Self::from_int_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, c)))
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, i64> {
        &self.terms
    }

    /// Coefficient of `y^{half_exp/2}`.
    pub fn coeff(&self, half_exp: i64) -> i64 {
        self.terms.get(&half_exp).copied().unwrap_or(0)
    }

    /// All exponents are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Invariant under `y -> 1/y`.
    pub fn is_palindromic(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.coeff(-e) == *c)
    }

    /// Image under `y -> 1/y`.
    pub fn invert_variable(&self) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (-e, *c)).collect(),
        }
    }

    /// Multiply by `y^{half_shift/2}`.
    pub fn shift_half(&self, half_shift: i64) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + half_shift, *c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return HalfLaurent::zero();
        }
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = HalfLaurent::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Value at `y = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Value at `y = -1`; defined only for integral exponents.
    pub fn eval_at_minus_one(&self) -> Result<i64> {
        if !self.is_integral() {
            return Err(Error::Domain(format!(
                "cannot evaluate {self} at y = -1: half-integer exponent present"
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| if (e / 2) % 2 == 0 { *c } else { -*c })
            .sum())
    }

    /// Exact quotient by `y - 1`, or `None` if the division leaves a remainder.
    pub fn div_y_minus_one(&self) -> Option<Self> {
        let mut quotient = HalfLaurent::zero();
        for parity in [0i64, 1] {
            let class: Vec<(i64, i64)> = self
                .terms
                .iter()
                .filter(|(e, _)| e.rem_euclid(2) == parity)
                .map(|(e, c)| (*e, *c))
                .collect();
            let (Some(&(lo, _)), Some(&(hi, _))) = (class.first(), class.last()) else {
                continue;
            };
            // p_e = q_{e-2} - q_e, solved from the top exponent down.
            let mut carry = 0i64;
            let mut e = hi;
            while e > lo {
                carry += self.coeff(e);
                quotient.add_term(e - 2, carry);
                e -= 2;
            }
            if self.coeff(lo) + carry != 0 {
                return None;
            }
        }
        Some(quotient)
    }

    /// Exact quotient by `(y - 1)^k`.
    pub fn div_y_minus_one_pow(&self, k: u32) -> Option<Self> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.div_y_minus_one()?;
        }
        Some(cur)
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.terms {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let var = match e {
                0 => String::new(),
                2 => "y".to_string(),
                _ if e % 2 == 0 => format!("y^{}", e / 2),
                _ => format!("y^({}/2)", e),
            };
            match (a, var.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{var}")?,
                _ => write!(f, "{a}*{var}")?,
            }
        }
        Ok(())
    }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(mut self, o: HalfLaurent) -> HalfLaurent {
        self += &o;
        self
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, o: &HalfLaurent) {
        for (&e, &c) in &o.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, o: &HalfLaurent) {
        for (&e, &c) in &o.terms {
            self.add_term(e, -c);
        }
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(mut self, o: HalfLaurent) -> HalfLaurent {
        self -= &o;
        self
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: HalfLaurent) -> HalfLaurent {
        &self * &o
    }
}

impl std::iter::Sum for HalfLaurent {
    fn sum<I: Iterator<Item = HalfLaurent>>(iter: I) -> Self {
        let mut acc = HalfLaurent::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> std::iter::Sum<&'a HalfLaurent> for HalfLaurent {
    fn sum<I: Iterator<Item = &'a HalfLaurent>>(iter: I) -> Self {
        let mut acc = HalfLaurent::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct HalfLaurentJson {
    half_exps: BTreeMap<String, i64>,
}

impl Serialize for HalfLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Keys are written in numeric order so files are stable and readable.
        use serde::ser::SerializeMap;
        struct Ordered<'a>(&'a BTreeMap<i64, i64>);
        impl Serialize for Ordered<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    m.serialize_entry(&e.to_string(), c)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("half_exps", &Ordered(&self.terms))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for HalfLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HalfLaurentJson::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.half_exps.len());
        for (k, c) in raw.half_exps {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad doubled exponent {k:?}")))?;
            pairs.push((e, c));
        }
        Ok(HalfLaurent::from_half_terms(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_sum() -> HalfLaurent {
        HalfLaurent::from_half_terms([(1, 1), (-1, 1)])
    }

    #[test]
    fn square_of_weight_two_factor() {
        let s = sqrt_sum();
        assert_eq!(&s * &s, HalfLaurent::from_int_terms([(-1, 1), (0, 2), (1, 1)]));
    }

    #[test]
    fn annihilator_and_inverse() {
        let p = HalfLaurent::from_int_terms([(-1, 1), (0, 1), (1, 1)]);
        assert!((&p * &HalfLaurent::zero()).is_zero());
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn specializations() {
        let p = HalfLaurent::from_int_terms([(-1, 1), (0, 10), (1, 1)]);
        assert_eq!(p.eval_at_one(), 12);
        let q = HalfLaurent::from_int_terms([(-1, 1), (0, 2), (1, 1)]);
        assert_eq!(q.eval_at_minus_one().unwrap(), 0);
        assert_eq!(HalfLaurent::zero().eval_at_one(), 0);
        assert!(matches!(sqrt_sum().eval_at_minus_one(), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_division() {
        let p = HalfLaurent::from_poly(&[1, -2, 1]);
        assert_eq!(p.div_y_minus_one().unwrap(), HalfLaurent::from_poly(&[-1, 1]));
        assert_eq!(p.div_y_minus_one_pow(2).unwrap(), HalfLaurent::one());
        assert!(p.div_y_minus_one_pow(3).is_none());
        assert!(HalfLaurent::from_poly(&[1, 1]).div_y_minus_one().is_none());
        let half = HalfLaurent::from_half_terms([(3, 1), (1, -1)]);
        assert_eq!(half.div_y_minus_one().unwrap(), HalfLaurent::monomial(1, 1));
        assert_eq!(HalfLaurent::zero().div_y_minus_one(), Some(HalfLaurent::zero()));
    }

    #[test]
    fn display() {
        let p = HalfLaurent::from_int_terms([(-1, 1), (0, 10), (1, 1)]);
        assert_eq!(p.to_string(), "y^-1 + 10 + y");
        assert_eq!(sqrt_sum().to_string(), "y^(-1/2) + y^(1/2)");
        assert_eq!(HalfLaurent::from_poly(&[0, -3, 2]).to_string(), "-3*y + 2*y^2");
    }

    #[test]
    fn json_uses_doubled_exponents() {
        let s = serde_json::to_string(&sqrt_sum()).unwrap();
        assert_eq!(s, r#"{"half_exps":{"-1":1,"1":1}}"#);
        let back: HalfLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sqrt_sum());
        let zero: HalfLaurent = serde_json::from_str(r#"{"half_exps":{"4":0}}"#).unwrap();
        assert!(zero.is_zero());
    }
}
