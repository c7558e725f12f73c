//! Small exact integer linear algebra: kernels via column reduction with
//! unimodular bookkeeping, Bareiss determinants, unimodular inverses.

use num_bigint::BigInt;
use num_traits::{Euclid, One, Signed, Zero};

pub fn mat_vec_i64(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let p = b[0].len();
    let m = b.len();
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| (0..m).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity_i64(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn is_unimodular(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n) && determinant(m).abs().is_one()
}

/// Inverse of a unimodular integer matrix, via the adjugate.
pub fn inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let det = determinant(m);
    if !det.abs().is_one() {
        return None;
    }
    let det: i64 = i64::try_from(&det).ok()?;
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C_{j,i} for the (i,j) entry of the inverse
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c])
                        .collect::<Vec<_>>()
                })
                .collect();
            let cof = determinant(&minor);
            let cof: i64 = i64::try_from(&cof).ok()?;
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = sign * cof * det;
        }
    }
    Some(inv)
}

/// A `Z`-basis of `{v : Mv = 0}` for an integer matrix `M` given as rows.
///
/// Column reduction over `Z` with a companion identity matrix: the
/// companion columns over the zero columns of the reduced matrix span the
/// kernel lattice (the transforms are unimodular, so the span is the full
/// kernel, not a finite-index sublattice).
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let nrows = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == ncols));

    // column-major copies: a[j] is column j of M, c[j] of the companion
    let mut a: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| (0..nrows).map(|i| rows[i][j].clone()).collect())
        .collect();
    let mut c: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            (0..ncols)
                .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let mut next = 0usize; // columns [0, next) hold pivots of earlier rows
    for row in 0..nrows {
        loop {
            let mut nz: Vec<usize> = (next..ncols).filter(|&j| !a[j][row].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let j = nz[0];
                a.swap(next, j);
                c.swap(next, j);
                next += 1;
                break;
            }
            nz.sort_by_key(|&j| a[j][row].abs());
            let p = nz[0];
            for &j in &nz[1..] {
                let q = a[j][row].div_euclid(&a[p][row]);
                if q.is_zero() {
                    continue;
                }
                for i in 0..nrows {
                    let sub = &q * &a[p][i];
                    a[j][i] -= sub;
                }
                for i in 0..ncols {
                    let sub = &q * &c[p][i];
                    c[j][i] -= sub;
                }
            }
        }
    }
    c.drain(next..).collect()
}

/// Convenience wrapper for small integer matrices.
pub fn integer_kernel_i64(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    integer_kernel(&big, ncols)
}
