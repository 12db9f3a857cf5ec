//! Min-cost perfect matching (tropical determinant) on exact integer matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Minimum over permutations `s` of `sum_i m[i][s(i)]` for a square matrix.
pub fn tropical_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::zero();
    }
    let big: BigInt = m.iter().flatten().map(|x| x.abs()).sum::<BigInt>() * 2 + 1;
    // Hungarian method with potentials, 1-based rows/columns.
    let mut u = vec![BigInt::zero(); n + 1];
    let mut v = vec![BigInt::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![big.clone(); n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = big.clone();
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = &m[i0 - 1][j - 1] - &u[i0] - &v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j].clone();
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else {
                    minv[j] -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| m[p[j] - 1][j - 1].clone()).sum()
}
