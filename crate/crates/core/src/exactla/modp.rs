//! Small-prime arithmetic for obstruction checks and determinant filters.

use super::int::Int;
use super::matrix::IntMatrix;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Determinant modulo a prime of a square matrix given row-major with
/// entries already reduced into [0, p).
pub fn det_mod_p(n: usize, mut a: Vec<u64>, p: u64) -> u64 {
    assert_eq!(a.len(), n * n);
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = (p - det) % p;
        }
        let pk = a[k * n + k];
        det = (det as u128 * pk as u128 % p as u128) as u64;
        let inv = inv_mod(pk, p);
        for i in k + 1..n {
            let f = a[i * n + k];
            if f == 0 {
                continue;
            }
            let f = (f as u128 * inv as u128 % p as u128) as u64;
            let (top, rest) = a.split_at_mut(i * n);
            let src = &top[k * n + k..k * n + n];
            let dst = &mut rest[k..n];
            if p < 1 << 32 {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = (*d + p - f * s % p) % p;
                }
            } else {
                for (d, &s) in dst.iter_mut().zip(src) {
                    let t = (f as u128 * s as u128 % p as u128) as u64;
                    *d = (*d + p - t) % p;
                }
            }
        }
    }
    det
}

/// Rank over F_p of an integer matrix.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<u64> = (0..rows * cols)
        .map(|i| m.get(i / cols, i % cols).mod_u64(p))
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, piv * cols + j);
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for i in 0..rows {
            if i == rank || a[i * cols + c] == 0 {
                continue;
            }
            let f = (a[i * cols + c] as u128 * inv as u128 % p as u128) as u64;
            for j in c..cols {
                let s = (f as u128 * a[rank * cols + j] as u128 % p as u128) as u64;
                a[i * cols + j] = (a[i * cols + j] + p - s) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn matrix_mod_p(m: &IntMatrix, p: u64) -> Vec<u64> {
    let cols = m.cols();
    (0..m.rows() * cols)
        .map(|i| m.get(i / cols, i % cols).mod_u64(p))
        .collect()
}

/// Residue of an Int determinant candidate, signed representative.
pub fn signed_residue(x: u64, p: u64) -> Int {
    if x > p / 2 {
        Int::from(x as i64 - p as i64)
    } else {
        Int::from(x as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::det;

    #[test]
    fn det_matches_exact() {
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        for p in [2u64, 3, 5, 7, 11, 13] {
            let d = det_mod_p(3, matrix_mod_p(&m, p), p);
            assert_eq!(d, det(&m).mod_u64(p));
        }
        assert_eq!(rank_mod_p(&m, 3), 2);
        assert_eq!(rank_mod_p(&m, 5), 3);
    }
}
