//! Integer Hermite normal form (row style) and integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row HNF: echelon rows, positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped. Only integer row operations are used.
pub fn hnf(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(p) = best else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[r].clone();
        for i in 0..r {
            let q = rows[i][c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, y) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Column index of each row's leading entry.
pub fn pivots(rows: &[Vec<BigInt>]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect()
}

/// A ℤ-basis of {c ∈ ℤ^r : c·A = 0} for an r×k integer matrix A.
pub fn integer_left_kernel(a: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    let r = a.len();
    let aug: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    hnf(aug, k + r)
        .into_iter()
        .filter(|row| row[..k].iter().all(Zero::is_zero))
        .map(|row| row[k..].to_vec())
        .collect()
}

/// Greatest common divisor of all entries (zero for the empty or zero matrix).
pub fn content(rows: &[Vec<BigInt>]) -> BigInt {
    rows.iter()
        .flatten()
        .fold(BigInt::zero(), |g, x| g.gcd(x))
}
