use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::HalfLaurent;
use crate::error::{Error, Result};

/// `coeff * [C_h minus m points] * L^k`, with `C_h` a smooth projective genus-`h` curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 4]", into = "[i64; 4]")]
pub struct CurveTerm {
    pub genus: u32,
    pub punctures: u32,
    pub l_exp: i64,
    pub coeff: i64,
}

impl From<[i64; 4]> for CurveTerm {
    fn from([h, m, k, c]: [i64; 4]) -> Self {
        CurveTerm {
            genus: h.max(0) as u32,
            punctures: m.max(0) as u32,
            l_exp: k,
            coeff: c,
        }
    }
}

impl From<CurveTerm> for [i64; 4] {
    fn from(t: CurveTerm) -> Self {
        [t.genus as i64, t.punctures as i64, t.l_exp, t.coeff]
    }
}

impl CurveTerm {
    /// chi_{-y} of the punctured curve atom, times `y^k`.
    fn chi_y(&self) -> HalfLaurent {
        let h = self.genus as i64;
        let m = self.punctures as i64;
        HalfLaurent::from_int_terms([(self.l_exp, 1 - h - m), (self.l_exp + 1, 1 - h)])
            .scale(self.coeff)
    }
}

/// Integer combination of `L^k` and curve atoms `[C_h minus m points] L^k`,
/// over the formal denominator `(L - 1)^loc_power`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MotivicClass {
    #[serde(rename = "L_poly", with = "int_key_map")]
    poly: BTreeMap<i64, i64>,
    #[serde(default)]
    curve_terms: Vec<CurveTerm>,
    #[serde(default)]
    loc_power: u32,
}

/// Multiplication or localization inputs that leave the supported fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotivicOp {
    Add,
    Mul,
    ScaleByLPower(i64),
}

fn add_to(map: &mut BTreeMap<i64, i64>, k: i64, c: i64) {
    if c == 0 {
        return;
    }
    let e = map.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        map.remove(&k);
    }
}

fn mul_l_minus_one(map: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (&k, &c) in map {
        add_to(&mut out, k + 1, c);
        add_to(&mut out, k, -c);
    }
    out
}

fn div_l_minus_one(map: &BTreeMap<i64, i64>) -> Option<BTreeMap<i64, i64>> {
    let (Some(&lo), Some(&hi)) = (map.keys().next(), map.keys().next_back()) else {
        return Some(BTreeMap::new());
    };
    let mut out = BTreeMap::new();
    let mut carry = 0i64;
    let mut k = hi;
    while k > lo {
        carry += map.get(&k).copied().unwrap_or(0);
        add_to(&mut out, k - 1, carry);
        k -= 1;
    }
    if map.get(&lo).copied().unwrap_or(0) + carry != 0 {
        return None;
    }
    Some(out)
}

/// Numerator with punctures folded into the polynomial part and genus-0 atoms
/// replaced by `L + 1`; only atoms with `h >= 1, m = 0` remain.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Canonical {
    poly: BTreeMap<i64, i64>,
    curves: BTreeMap<u32, BTreeMap<i64, i64>>,
}

impl Canonical {
    fn times_l_minus_one(&self, times: u32) -> Canonical {
        let mut out = self.clone();
        for _ in 0..times {
            out.poly = mul_l_minus_one(&out.poly);
            for v in out.curves.values_mut() {
                *v = mul_l_minus_one(v);
            }
        }
        out
    }

    fn div_l_minus_one(&self) -> Option<Canonical> {
        let poly = div_l_minus_one(&self.poly)?;
        let mut curves = BTreeMap::new();
        for (&h, v) in &self.curves {
            let q = div_l_minus_one(v)?;
            if !q.is_empty() {
                curves.insert(h, q);
            }
        }
        Some(Canonical { poly, curves })
    }
}

impl MotivicClass {
    pub fn zero() -> Self {
        MotivicClass::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::l_pow(0, c)
    }

    /// `c * L^k`.
    pub fn l_pow(k: i64, c: i64) -> Self {
        let mut poly = BTreeMap::new();
        add_to(&mut poly, k, c);
        MotivicClass { poly, ..Default::default() }
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        Self::l_pow(1, 1)
    }

    /// `c_0 + c_1 L + c_2 L^2 + ...`.
    pub fn from_poly(coeffs: &[i64]) -> Self {
        let mut poly = BTreeMap::new();
        for (i, &c) in coeffs.iter().enumerate() {
            add_to(&mut poly, i as i64, c);
        }
        MotivicClass { poly, ..Default::default() }
    }

    /// `L - a`.
    pub fn l_minus(a: i64) -> Self {
        Self::from_poly(&[-a, 1])
    }

    /// The class of a smooth genus-`h` curve minus `m` points.
    pub fn curve(genus: u32, punctures: u32) -> Self {
        Self::from_parts(
            BTreeMap::new(),
            vec![CurveTerm { genus, punctures, l_exp: 0, coeff: 1 }],
            0,
        )
    }

    pub fn from_parts(poly: BTreeMap<i64, i64>, curve_terms: Vec<CurveTerm>, loc_power: u32) -> Self {
        let mut out = MotivicClass { poly: BTreeMap::new(), curve_terms: Vec::new(), loc_power };
        for (k, c) in poly {
            add_to(&mut out.poly, k, c);
        }
        out.curve_terms = merge_terms(curve_terms);
        out
    }

    pub fn poly(&self) -> &BTreeMap<i64, i64> {
        &self.poly
    }

    pub fn curve_terms(&self) -> &[CurveTerm] {
        &self.curve_terms
    }

    pub fn loc_power(&self) -> u32 {
        self.loc_power
    }

    pub fn has_curve_terms(&self) -> bool {
        !self.curve_terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        let c = self.canonical();
        c.poly.is_empty() && c.curves.is_empty()
    }

    /// Divide formally by `(L - 1)^k`.
    pub fn localize(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.loc_power += k;
        out
    }

    fn canonical(&self) -> Canonical {
        let mut poly = self.poly.clone();
        let mut curves: BTreeMap<u32, BTreeMap<i64, i64>> = BTreeMap::new();
        for t in &self.curve_terms {
            add_to(&mut poly, t.l_exp, -(t.punctures as i64) * t.coeff);
            if t.genus == 0 {
                add_to(&mut poly, t.l_exp, t.coeff);
                add_to(&mut poly, t.l_exp + 1, t.coeff);
            } else {
                add_to(curves.entry(t.genus).or_default(), t.l_exp, t.coeff);
            }
        }
        curves.retain(|_, v| !v.is_empty());
        Canonical { poly, curves }
    }

    fn from_canonical(c: Canonical, loc_power: u32) -> Self {
        let mut terms = Vec::new();
        for (h, v) in c.curves {
            for (k, coeff) in v {
                terms.push(CurveTerm { genus: h, punctures: 0, l_exp: k, coeff });
            }
        }
        Self::from_parts(c.poly, terms, loc_power)
    }

    /// Numerator times `(L - 1)^k`, keeping the stored shape of the atoms.
    fn raise(&self, k: u32) -> Self {
        let mut poly = self.poly.clone();
        let mut terms = self.curve_terms.clone();
        for _ in 0..k {
            poly = mul_l_minus_one(&poly);
            let mut next = Vec::with_capacity(terms.len() * 2);
            for t in &terms {
                next.push(CurveTerm { l_exp: t.l_exp + 1, ..*t });
                next.push(CurveTerm { coeff: -t.coeff, ..*t });
            }
            terms = merge_terms(next);
        }
        Self::from_parts(poly, terms, self.loc_power + k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let r = self.loc_power.max(other.loc_power);
        let a = self.raise(r - self.loc_power);
        let b = other.raise(r - other.loc_power);
        let mut poly = a.poly;
        for (k, c) in b.poly {
            add_to(&mut poly, k, c);
        }
        let mut terms = a.curve_terms;
        terms.extend(b.curve_terms);
        Self::from_parts(poly, terms, r)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_parts(
            self.poly.iter().map(|(e, c)| (*e, c * k)).collect(),
            self.curve_terms.iter().map(|t| CurveTerm { coeff: t.coeff * k, ..*t }).collect(),
            self.loc_power,
        )
    }

    /// Multiply by `L^k`.
    pub fn scale_by_l_power(&self, k: i64) -> Self {
        Self::from_parts(
            self.poly.iter().map(|(e, c)| (e + k, *c)).collect(),
            self.curve_terms.iter().map(|t| CurveTerm { l_exp: t.l_exp + k, ..*t }).collect(),
            self.loc_power,
        )
    }

    /// Product; fails when both factors contain curve atoms.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.has_curve_terms() && other.has_curve_terms() {
            return Err(Error::Unsupported(
                "product of two classes that both contain curve atoms".into(),
            ));
        }
        let (with_curves, plain) = if self.has_curve_terms() { (self, other) } else { (other, self) };
        let mut poly = BTreeMap::new();
        for (&e1, &c1) in &self.poly {
            for (&e2, &c2) in &other.poly {
                add_to(&mut poly, e1 + e2, c1 * c2);
            }
        }
        let mut terms = Vec::new();
        for t in &with_curves.curve_terms {
            for (&e, &c) in &plain.poly {
                terms.push(CurveTerm { l_exp: t.l_exp + e, coeff: t.coeff * c, ..*t });
            }
        }
        Ok(Self::from_parts(poly, terms, self.loc_power + other.loc_power))
    }

    /// Apply one of the basic operations.
    pub fn apply(&self, other: &Self, op: MotivicOp) -> Result<Self> {
        match op {
            MotivicOp::Add => Ok(self.add(other)),
            MotivicOp::Mul => self.mul(other),
            MotivicOp::ScaleByLPower(k) => Ok(self.scale_by_l_power(k)),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Numerator divided by `L - 1`, if exact. Atoms keep their punctures when possible.
    fn numerator_div_l_minus_one(&self) -> Option<Self> {
        let poly = div_l_minus_one(&self.poly);
        let mut groups: BTreeMap<(u32, u32), BTreeMap<i64, i64>> = BTreeMap::new();
        for t in &self.curve_terms {
            add_to(groups.entry((t.genus, t.punctures)).or_default(), t.l_exp, t.coeff);
        }
        let grouped: Option<Vec<CurveTerm>> = groups
            .iter()
            .map(|(&(h, m), v)| {
                div_l_minus_one(v).map(|q| {
                    q.into_iter()
                        .map(|(k, c)| CurveTerm { genus: h, punctures: m, l_exp: k, coeff: c })
                        .collect::<Vec<_>>()
                })
            })
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect());
        if let (Some(p), Some(t)) = (poly, grouped) {
            return Some(Self::from_parts(p, t, self.loc_power));
        }
        let c = self.canonical().div_l_minus_one()?;
        Some(Self::from_canonical(c, self.loc_power))
    }

    /// Remove as many `(L - 1)` factors from the denominator as divide the numerator.
    pub fn reduce(&self) -> Self {
        let mut cur = self.clone();
        while cur.loc_power > 0 {
            match cur.numerator_div_l_minus_one() {
                Some(mut q) => {
                    q.loc_power = cur.loc_power - 1;
                    cur = q;
                }
                None => break,
            }
        }
        cur
    }

    /// The same class with `loc_power = 0`, or an error if the numerator is not divisible.
    pub fn unlocalized(&self) -> Result<Self> {
        let r = self.reduce();
        if r.loc_power > 0 {
            return Err(Error::NotUnlocalized(format!(
                "{self} keeps a denominator (L-1)^{}",
                r.loc_power
            )));
        }
        Ok(r)
    }

    /// chi_{-y}: `L -> y`, curve atoms to `(1-h)(1+y) - m`, then exact division by `(y-1)^loc_power`.
    pub fn chi_y(&self) -> Result<HalfLaurent> {
        let mut num = HalfLaurent::zero();
        for (&k, &c) in &self.poly {
            num += &HalfLaurent::y_pow(k, c);
        }
        for t in &self.curve_terms {
            num += &t.chi_y();
        }
        num.div_y_minus_one_pow(self.loc_power).ok_or_else(|| {
            Error::NotUnlocalized(format!(
                "chi_y numerator of {self} is not divisible by (y-1)^{}",
                self.loc_power
            ))
        })
    }

    /// Euler characteristic: chi_{-y} at `y = 1`.
    pub fn euler(&self) -> Result<i64> {
        Ok(self.chi_y()?.eval_at_one())
    }
}

fn merge_terms(terms: Vec<CurveTerm>) -> Vec<CurveTerm> {
    let mut acc: BTreeMap<(u32, u32, i64), i64> = BTreeMap::new();
    for t in terms {
        *acc.entry((t.genus, t.punctures, t.l_exp)).or_insert(0) += t.coeff;
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((genus, punctures, l_exp), coeff)| CurveTerm { genus, punctures, l_exp, coeff })
        .collect()
}

impl PartialEq for MotivicClass {
    fn eq(&self, other: &Self) -> bool {
        let r = self.loc_power.max(other.loc_power);
        self.canonical().times_l_minus_one(r - self.loc_power)
            == other.canonical().times_l_minus_one(r - other.loc_power)
    }
}

impl Eq for MotivicClass {}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = Vec::new();
        let l = |k: i64| match k {
            0 => String::new(),
            1 => "L".to_string(),
            _ => format!("L^{k}"),
        };
        for (&k, &c) in self.poly.iter().rev() {
            let var = l(k);
            let body = match (c.abs(), var.is_empty()) {
                (a, true) => a.to_string(),
                (1, false) => var,
                (a, false) => format!("{a}*{var}"),
            };
            parts.push((c, body));
        }
        for t in &self.curve_terms {
            let atom = if t.punctures == 0 {
                format!("[C{}]", t.genus)
            } else {
                format!("[C{} - {}pt]", t.genus, t.punctures)
            };
            let var = l(t.l_exp);
            let atom = if var.is_empty() { atom } else { format!("{atom}*{var}") };
            let body = if t.coeff.abs() == 1 { atom } else { format!("{}*{atom}", t.coeff.abs()) };
            parts.push((t.coeff, body));
        }
        if parts.is_empty() {
            write!(f, "0")?;
        }
        for (i, (c, body)) in parts.iter().enumerate() {
            match (i, *c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        if self.loc_power > 0 {
            write!(f, " / (L-1)^{}", self.loc_power)?;
        }
        Ok(())
    }
}

mod int_key_map {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<i64, i64>, s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            out.serialize_entry(&k.to_string(), v)?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, i64>, D::Error> {
        let raw = BTreeMap::<String, i64>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let k: i64 = k.trim().parse().map_err(serde::de::Error::custom)?;
            if v != 0 {
                *out.entry(k).or_insert(0) += v;
            }
        }
        out.retain(|_, v| *v != 0);
        Ok(out)
    }
}
