//! Exact integer matrix rank.
//!
//! Betti numbers must be exact, never thresholded singular values. The
//! fast path does Gaussian elimination modulo two independent 31-bit
//! primes; modular rank can only undercount, so agreement across both
//! primes is accepted. On disagreement the certified fallback runs
//! fraction-free (Bareiss) elimination over arbitrary-precision
//! integers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::sparse::SparseIntMatrix;

const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

/// Exact rank over ℚ (equivalently over ℤ as a ℚ-matrix).
pub fn rank(m: &SparseIntMatrix) -> usize {
    if m.nrows == 0 || m.ncols == 0 || m.is_zero() {
        return 0;
    }
    let r0 = rank_mod(m, PRIMES[0]);
    let r1 = rank_mod(m, PRIMES[1]);
    if r0 == r1 {
        r0
    } else {
        rank_bareiss(m)
    }
}

/// Rank of the reduction modulo prime `p` (p < 2^32).
pub fn rank_mod(m: &SparseIntMatrix, p: u64) -> usize {
    let nrows = m.nrows;
    let ncols = m.ncols;
    let mut a = vec![0u64; nrows * ncols];
    for &(r, c, v) in m.triplets() {
        a[r as usize * ncols + c as usize] = v.rem_euclid(p as i64) as u64;
    }
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let pivot = (row..nrows).find(|&r| a[r * ncols + col] != 0);
        let Some(pr) = pivot else { continue };
        if pr != row {
            for c in col..ncols {
                a.swap(pr * ncols + c, row * ncols + c);
            }
        }
        let inv = mod_inverse(a[row * ncols + col], p);
        for r in (row + 1)..nrows {
            let factor = a[r * ncols + col];
            if factor == 0 {
                continue;
            }
            let scale = mulmod(factor, inv, p);
            for c in col..ncols {
                let sub = mulmod(scale, a[row * ncols + c], p);
                let cell = &mut a[r * ncols + c];
                *cell = (*cell + p - sub) % p;
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p prime, a != 0 mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    result
}

/// Fraction-free elimination over BigInt: exact for any input.
pub fn rank_bareiss(m: &SparseIntMatrix) -> usize {
    let nrows = m.nrows;
    let ncols = m.ncols;
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense_i64()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let pivot = (row..nrows).find(|&r| !a[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        a.swap(pr, row);
        let pivot_val = a[row][col].clone();
        for r in (row + 1)..nrows {
            for c in (col + 1)..ncols {
                let num = &pivot_val * &a[r][c] - &a[r][col] * &a[row][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::from(0);
        }
        prev = pivot_val;
        row += 1;
        rank += 1;
    }
    rank
}
