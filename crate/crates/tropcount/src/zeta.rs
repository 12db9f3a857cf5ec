//! Hilbert-scheme generating series and their expansion in the basis `q^r B^(g-1-r)`,
//! where `B = (1 - q)(1 - qy)` (or `(1 - q)^2` for Euler characteristics).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ringkit::{HalfLaurent, SeriesY};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaInput {
    pub g: i64,
    /// chi_{-y} of the Hilbert schemes of `0, 1, 2, ...` points.
    pub hilb_chi: Vec<HalfLaurent>,
    /// Number of known coefficients; defaults to the length of `hilb_chi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

impl ZetaInput {
    pub fn new(g: i64, hilb_chi: Vec<HalfLaurent>) -> Self {
        ZetaInput { g, hilb_chi, order: None }
    }

    pub fn order(&self) -> usize {
        self.order.unwrap_or(self.hilb_chi.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaVariant {
    ChiY,
    Euler,
}

/// Extracted coefficients `N_0 .. N_{determined - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaExtraction {
    pub variant: ZetaVariant,
    pub g: i64,
    pub determined: usize,
    pub n: Vec<HalfLaurent>,
}

/// Smallest truncation order that pins down `N_0 .. N_g`.
pub fn required_order(g: i64) -> usize {
    (2 * g + 2).max(2) as usize
}

type Poly = Vec<HalfLaurent>;

fn mul_trunc(a: &[HalfLaurent], b: &[HalfLaurent], order: usize) -> Poly {
    let mut out = vec![HalfLaurent::zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, z) in b.iter().enumerate().take(order - i) {
            out[i + j] += &(x * z);
        }
    }
    out
}

fn base(variant: ZetaVariant) -> Poly {
    match variant {
        ZetaVariant::ChiY => vec![HalfLaurent::one(), HalfLaurent::from_poly(&[-1, -1]), HalfLaurent::y()],
        ZetaVariant::Euler => vec![HalfLaurent::one(), HalfLaurent::constant(-2), HalfLaurent::one()],
    }
}

/// Power series of `1 / B` truncated at `order`.
fn base_inverse(variant: ZetaVariant, order: usize) -> Poly {
    (0..order)
        .map(|k| match variant {
            ZetaVariant::ChiY => HalfLaurent::from_poly(&vec![1; k + 1]),
            ZetaVariant::Euler => HalfLaurent::constant(k as i64 + 1),
        })
        .collect()
}

/// `B^k` for any integer `k`, truncated at `order`.
fn base_power(variant: ZetaVariant, k: i64, order: usize) -> Poly {
    let factor = if k >= 0 { base(variant) } else { base_inverse(variant, order) };
    let mut out = vec![HalfLaurent::zero(); order];
    if order > 0 {
        out[0] = HalfLaurent::one();
    }
    for _ in 0..k.unsigned_abs() {
        out = mul_trunc(&out, &factor, order);
    }
    out
}

fn basis_term(variant: ZetaVariant, g: i64, r: usize, order: usize) -> Poly {
    let mut shifted = vec![HalfLaurent::zero(); order];
    if r < order {
        let p = base_power(variant, g - 1 - r as i64, order - r);
        for (i, c) in p.into_iter().enumerate() {
            shifted[r + i] = c;
        }
    }
    shifted
}

/// Coefficients `N_r` with `sum_i hilb_chi[i] q^i = sum_r N_r q^r B^(g-1-r)` up to the order.
pub fn invert_series(input: &ZetaInput, variant: ZetaVariant) -> Result<ZetaExtraction> {
    if input.g < 0 {
        return Err(Error::Domain(format!("genus must be nonnegative, got {}", input.g)));
    }
    let order = input.order();
    let need = required_order(input.g);
    if order < need {
        return Err(Error::Truncation { required: need, given: order });
    }
    if input.hilb_chi.len() < order {
        return Err(Error::validation(
            format!("order {order} needs {order} coefficients, got {}", input.hilb_chi.len()),
            None,
        ));
    }
    let mut residual: Poly = input.hilb_chi[..order]
        .iter()
        .map(|h| match variant {
            ZetaVariant::ChiY => h.clone(),
            ZetaVariant::Euler => HalfLaurent::constant(h.eval_at_one()),
        })
        .collect();
    let mut n = Vec::with_capacity(order);
    for r in 0..order {
        let lead = residual[r].clone();
        if !lead.is_zero() {
            let term = basis_term(variant, input.g, r, order);
            for (x, t) in residual.iter_mut().zip(&term) {
                *x -= &(&lead * t);
            }
        }
        n.push(lead);
    }
    Ok(ZetaExtraction { variant, g: input.g, determined: order, n })
}

/// `q^(1-g) sum_r N_r q^r B^(g-1-r)` with `order` coefficients starting at `q^(1-g)`.
pub fn forward_series(n: &[HalfLaurent], g: i64, order: usize) -> SeriesY {
    let mut acc = vec![HalfLaurent::zero(); order];
    for (r, c) in n.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = basis_term(ZetaVariant::ChiY, g, r, order);
        for (x, t) in acc.iter_mut().zip(&term) {
            *x += &(c * t);
        }
    }
    SeriesY::new(1 - g, acc)
}

fn poly_mul(a: &[HalfLaurent], b: &[HalfLaurent]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    mul_trunc(a, b, a.len() + b.len() - 1)
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(HalfLaurent::is_zero) {
        p.pop();
    }
    p
}

/// Exact quotient by `B = 1 - (1 + y) q + y q^2`, whose top coefficient `y` is a unit.
fn div_by_base(p: &[HalfLaurent]) -> Option<Poly> {
    let mut rem = trim(p.to_vec());
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < 3 {
        return None;
    }
    let b = base(ZetaVariant::ChiY);
    let mut quot = vec![HalfLaurent::zero(); rem.len() - 2];
    for k in (0..quot.len()).rev() {
        let c = rem[k + 2].shift_half(-2);
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &(&c * bj);
        }
        quot[k] = c;
    }
    if rem.iter().all(HalfLaurent::is_zero) {
        Some(trim(quot))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalEquationReport {
    pub holds: bool,
    /// `f(q) = sum_r N_r q^r B^(g-r)` when it is a polynomial.
    pub f: Option<Vec<HalfLaurent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

/// Check `q^(2g) y^g f(1/(qy)) = f(q)` and `deg f <= 2g`.
pub fn functional_equation_report(n: &[HalfLaurent], g: i64) -> FunctionalEquationReport {
    let fail = |f, msg: String| FunctionalEquationReport { holds: false, f, violation: Some(msg) };
    if g < 0 {
        return fail(None, format!("genus {g} is negative"));
    }
    // Clear denominators: multiply by B^m where m covers every negative exponent g - r.
    let m = n.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(r, _)| r as i64 - g).max().unwrap_or(0).max(0);
    let b = base(ZetaVariant::ChiY);
    let mut numerator: Poly = Vec::new();
    for (r, c) in n.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term: Poly = vec![HalfLaurent::zero(); r];
        term.push(c.clone());
        for _ in 0..(g - r as i64 + m) {
            term = poly_mul(&term, &b);
        }
        if numerator.len() < term.len() {
            numerator.resize(term.len(), HalfLaurent::zero());
        }
        for (x, t) in numerator.iter_mut().zip(&term) {
            *x += t;
        }
    }
    let mut f = numerator;
    for _ in 0..m {
        match div_by_base(&f) {
            Some(q) => f = q,
            None => return fail(None, "f is not a polynomial in q".into()),
        }
    }
    let f = trim(f);
    match twist_violation(&f, g) {
        Some(msg) => fail(Some(f), msg),
        None => FunctionalEquationReport { holds: true, f: Some(f), violation: None },
    }
}

/// First failure of `deg f <= 2g` and `f_(2g-k) = y^(g-k) f_k`, if any.
pub fn twist_violation(f: &[HalfLaurent], g: i64) -> Option<String> {
    let f = trim(f.to_vec());
    let top = (2 * g).max(0) as usize;
    if f.len() > top + 1 {
        return Some(format!("f has degree {} > {}", f.len() - 1, top));
    }
    let coeff = |k: usize| f.get(k).cloned().unwrap_or_else(HalfLaurent::zero);
    for k in 0..=top {
        let lhs = coeff(top - k);
        let rhs = coeff(k).shift_half(2 * (g - k as i64));
        if lhs != rhs {
            return Some(format!("coefficient of q^{} is {lhs}, twist of q^{k} gives {rhs}", top - k));
        }
    }
    None
}

pub fn functional_equation_check(n: &[HalfLaurent], g: i64) -> bool {
    functional_equation_report(n, g).holds
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(c: &[i64]) -> HalfLaurent {
        HalfLaurent::from_poly(c)
    }

    #[test]
    fn zero_input() {
        let r = invert_series(&ZetaInput::new(1, vec![HalfLaurent::zero(); 4]), ZetaVariant::ChiY).unwrap();
        assert!(r.n.iter().all(HalfLaurent::is_zero));
    }

    #[test]
    fn nodal_genus_one() {
        let h = vec![y(&[1]), y(&[0, 1]), y(&[0, 1, 1]), y(&[0, 1, 1, 1])];
        let r = invert_series(&ZetaInput::new(1, h), ZetaVariant::ChiY).unwrap();
        assert_eq!(r.n[0], y(&[1]));
        assert_eq!(r.n[1], y(&[0, 1]));
        assert!(r.n[2].is_zero());
    }

    #[test]
    fn smooth_genus_one() {
        let h = vec![y(&[1]), HalfLaurent::zero(), HalfLaurent::zero(), HalfLaurent::zero()];
        let r = invert_series(&ZetaInput::new(1, h), ZetaVariant::ChiY).unwrap();
        assert_eq!(r.n[0], y(&[1]));
        assert!(r.n[1].is_zero());
    }

    #[test]
    fn truncation_is_reported() {
        let r = invert_series(&ZetaInput::new(2, vec![HalfLaurent::one(); 5]), ZetaVariant::ChiY);
        assert!(matches!(r, Err(Error::Truncation { required: 6, given: 5 })));
    }

    #[test]
    fn forward_examples() {
        let s = forward_series(&[HalfLaurent::one()], 0, 3);
        assert_eq!(s.offset(), 1);
        assert_eq!(s.coefficients(), &[y(&[1]), y(&[1, 1]), y(&[1, 1, 1])]);
        let s = forward_series(&[y(&[1]), y(&[0, 1])], 1, 4);
        assert_eq!(s.coefficients(), &[y(&[1]), y(&[0, 1]), y(&[0, 1, 1]), y(&[0, 1, 1, 1])]);
        assert!(forward_series(&[], 3, 5).is_zero());
    }

    #[test]
    fn functional_equation_examples() {
        assert!(functional_equation_check(&[y(&[1]), y(&[0, 1])], 1));
        assert!(functional_equation_check(&[y(&[1])], 0));
        assert!(functional_equation_check(&[y(&[1]), y(&[1])], 1));
        let bad = functional_equation_report(&[y(&[1]), y(&[0, 1]), y(&[1])], 1);
        assert!(!bad.holds);
    }

    #[test]
    fn twist_detects_asymmetry() {
        assert!(twist_violation(&[y(&[1]), y(&[-1, -1]), y(&[0, 1])], 1).is_none());
        assert!(twist_violation(&[y(&[1]), y(&[1])], 1).is_some());
        assert!(twist_violation(&[y(&[1]), y(&[0]), y(&[0]), y(&[1])], 1).is_some());
    }

    #[test]
    fn constant_terms_are_twist_invariant() {
        let r = functional_equation_report(&[y(&[1]), y(&[1])], 1);
        assert_eq!(r.f.unwrap(), vec![y(&[1]), y(&[0, -1]), y(&[0, 1])]);
    }
}
