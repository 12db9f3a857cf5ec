//! Plane Severi degrees from the Caporaso-Harris recursion on tangency profiles,
//! refined by replacing each tangency order `k` with the quantum integer `[k]_y`.

use std::collections::HashMap;

use tropcount::ringkit::HalfLaurent;

type Seq = Vec<u32>;

fn weight(s: &[u32]) -> u32 {
    s.iter().enumerate().map(|(i, &c)| (i as u32 + 1) * c).sum()
}

fn trim(mut s: Seq) -> Seq {
    while s.last() == Some(&0) {
        s.pop();
    }
    s
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `[k]_y`, built here without the library's own helper.
fn quantum(k: u32) -> HalfLaurent {
    let k = k as i64;
    HalfLaurent::from_half_terms((0..k).map(|i| (k - 1 - 2 * i, 1)))
}

#[derive(Default)]
pub struct CaporasoHarris {
    memo: HashMap<(u32, i64, Seq, Seq), HalfLaurent>,
}

impl CaporasoHarris {
    /// Classical count of degree-`d` curves with `delta` nodes through general points.
    pub fn severi(&mut self, d: u32, delta: i64) -> u128 {
        self.refined_severi(d, delta).eval_at_one() as u128
    }

    pub fn refined_severi(&mut self, d: u32, delta: i64) -> HalfLaurent {
        let mut beta = vec![0; d.max(1) as usize];
        beta[0] = d;
        self.n(d, delta, Vec::new(), beta)
    }

    /// Relative count with fixed tangencies `alpha` and free tangencies `beta` to a line.
    pub fn n(&mut self, d: u32, delta: i64, alpha: Seq, beta: Seq) -> HalfLaurent {
        let alpha = trim(alpha);
        let beta = trim(beta);
        if delta < 0 || weight(&alpha) + weight(&beta) != d {
            return HalfLaurent::zero();
        }
        if d == 0 {
            return if delta == 0 { HalfLaurent::one() } else { HalfLaurent::zero() };
        }
        let key = (d, delta, alpha.clone(), beta.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = HalfLaurent::zero();
        for k in 0..beta.len() {
            if beta[k] == 0 {
                continue;
            }
            let mut a = alpha.clone();
            a.resize(a.len().max(k + 1), 0);
            a[k] += 1;
            let mut b = beta.clone();
            b[k] -= 1;
            total += &(quantum(k as u32 + 1) * self.n(d, delta, a, b));
        }
        let len = (d as usize).max(alpha.len()).max(beta.len());
        let mut alpha_p = vec![0u32; len];
        let mut beta_p = vec![0u32; len];
        total += &self.second_sum(d, delta, &alpha, &beta, 0, &mut alpha_p, &mut beta_p);
        self.memo.insert(key, total.clone());
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn second_sum(
        &mut self,
        d: u32,
        delta: i64,
        alpha: &[u32],
        beta: &[u32],
        k: usize,
        alpha_p: &mut Seq,
        beta_p: &mut Seq,
    ) -> HalfLaurent {
        let used = weight(alpha_p) + weight(beta_p);
        if used > d - 1 {
            return HalfLaurent::zero();
        }
        if k == alpha_p.len() {
            if used != d - 1 {
                return HalfLaurent::zero();
            }
            let extra: u32 = (0..beta_p.len()).map(|i| beta_p[i] - beta.get(i).copied().unwrap_or(0)).sum();
            let delta_p = delta - (d as i64 - 1) + extra as i64;
            if delta_p < 0 {
                return HalfLaurent::zero();
            }
            let mut count = 1i64;
            let mut factor = HalfLaurent::one();
            for i in 0..alpha_p.len() {
                let a = alpha.get(i).copied().unwrap_or(0);
                let b = beta.get(i).copied().unwrap_or(0);
                count *= binom(a, alpha_p[i]) * binom(beta_p[i], b);
                factor = factor * quantum(i as u32 + 1).pow(beta_p[i] - b);
            }
            if count == 0 {
                return HalfLaurent::zero();
            }
            return factor.scale(count) * self.n(d - 1, delta_p, alpha_p.clone(), beta_p.clone());
        }
        let a_max = alpha.get(k).copied().unwrap_or(0);
        let b_min = beta.get(k).copied().unwrap_or(0);
        let mut total = HalfLaurent::zero();
        for a in 0..=a_max {
            let mut b = b_min;
            loop {
                alpha_p[k] = a;
                beta_p[k] = b;
                if weight(alpha_p) + weight(beta_p) > d - 1 {
                    break;
                }
                total += &self.second_sum(d, delta, alpha, beta, k + 1, alpha_p, beta_p);
                b += 1;
            }
            alpha_p[k] = 0;
            beta_p[k] = 0;
        }
        total
    }
}
