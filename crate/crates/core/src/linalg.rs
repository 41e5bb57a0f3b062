//! Exact dense linear algebra over [`QuadScalar`].

use std::cmp::Ordering;

use crate::scalar::QuadScalar;

pub type ScalarMatrix = Vec<Vec<QuadScalar>>;

pub fn zeros(rows: usize, cols: usize, d: u32) -> ScalarMatrix {
    vec![vec![QuadScalar::zero(d); cols]; rows]
}

pub fn identity(n: usize, d: u32) -> ScalarMatrix {
    let mut m = zeros(n, n, d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = QuadScalar::one(d);
    }
    m
}

fn field_of(m: &ScalarMatrix) -> u32 {
    m.first().and_then(|r| r.first()).map_or(1, QuadScalar::field)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det(m: &ScalarMatrix) -> QuadScalar {
    let n = m.len();
    let d = field_of(m);
    if n == 0 {
        return QuadScalar::one(d);
    }
    let mut a = m.clone();
    let mut prev = QuadScalar::one(d);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&p| !a[p][k].is_zero()) else {
                return QuadScalar::zero(d);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &v / &prev;
            }
            a[i][k] = QuadScalar::zero(d);
        }
        prev = a[k][k].clone();
    }
    let result = a[n - 1][n - 1].clone();
    if negate {
        -result
    } else {
        result
    }
}

/// Rank by fraction-free row echelon reduction.
pub fn rank(m: &ScalarMatrix) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let d = field_of(m);
    let mut a = m.clone();
    let mut prev = QuadScalar::one(d);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = &v / &prev;
            }
            a[i][c] = QuadScalar::zero(d);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &ScalarMatrix) -> Option<ScalarMatrix> {
    let n = m.len();
    let d = field_of(m);
    let mut a = m.clone();
    let mut inv = identity(n, d);
    for c in 0..n {
        let p = (c..n).find(|&p| !a[p][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let pivot = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &pivot;
            inv[c][j] = &inv[c][j] / &pivot;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                inv[i][j] = &inv[i][j] - &(&f * &inv[c][j]);
            }
        }
    }
    Some(inv)
}

pub fn mat_mul(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let d = field_of(a);
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(QuadScalar::zero(d), |acc, k| &acc + &(&row[k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &ScalarMatrix, v: &[QuadScalar]) -> Vec<QuadScalar> {
    let d = field_of(a);
    a.iter()
        .map(|row| row.iter().zip(v).fold(QuadScalar::zero(d), |acc, (x, y)| &acc + &(x * y)))
        .collect()
}

pub fn transpose(a: &ScalarMatrix) -> ScalarMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn to_f64(a: &ScalarMatrix) -> Vec<Vec<f64>> {
    a.iter().map(|row| row.iter().map(QuadScalar::to_f64).collect()).collect()
}

/// Symmetric pivoted `L D L^T` factorization of a positive semidefinite
/// matrix: `A[perm[i]][perm[j]] = sum_k L[i][k] D[k] L[j][k]`.
#[derive(Debug, Clone)]
pub struct PsdFactor {
    pub perm: Vec<usize>,
    pub lower: ScalarMatrix,
    pub diag: Vec<QuadScalar>,
    pub rank: usize,
}

impl PsdFactor {
    /// Rows `X` (indexed like the input matrix) with `X X^T = A`, in
    /// double precision, padded or truncated to `width` columns.
    pub fn coordinates(&self, width: usize) -> Vec<Vec<f64>> {
        let n = self.perm.len();
        let roots: Vec<f64> = self.diag.iter().map(|v| v.to_f64().max(0.0).sqrt()).collect();
        let mut out = vec![vec![0.0; width]; n];
        for (row, &orig) in self.perm.iter().enumerate() {
            for k in 0..self.rank.min(width) {
                out[orig][k] = self.lower[row][k].to_f64() * roots[k];
            }
        }
        out
    }
}

/// Exact positive-semidefiniteness test; returns the factorization when
/// `m` (symmetric) is PSD.
pub fn psd_factor(m: &ScalarMatrix) -> Option<PsdFactor> {
    let n = m.len();
    let d = field_of(m);
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lower = zeros(n, n, d);
    let mut diag = Vec::new();
    let mut k = 0;
    while k < n {
        if (k..n).any(|i| a[i][i].is_negative()) {
            return None;
        }
        let pivot = (k..n)
            .filter(|&i| a[i][i].signum() == Ordering::Greater)
            .max_by(|&i, &j| a[i][i].cmp(&a[j][j]).then(j.cmp(&i)));
        let Some(p) = pivot else {
            // Remaining diagonal is zero: PSD only if the whole block is zero.
            if (k..n).any(|i| (k..n).any(|j| !a[i][j].is_zero())) {
                return None;
            }
            break;
        };
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        lower.swap(k, p);
        perm.swap(k, p);
        let dk = a[k][k].clone();
        lower[k][k] = QuadScalar::one(d);
        for i in k + 1..n {
            lower[i][k] = &a[i][k] / &dk;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for (off, row) in tail.iter_mut().enumerate() {
            let l = &lower[k + 1 + off][k];
            for (x, p) in row.iter_mut().zip(pivot_row).skip(k + 1) {
                *x = &*x - &(l * p);
            }
        }
        diag.push(dk);
        k += 1;
    }
    let rank = diag.len();
    Some(PsdFactor { perm, lower, diag, rank })
}
