#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use point_spectra::linalg::{identity, mat_mul, ScalarMatrix};
use point_spectra::{PointConfiguration, QuadScalar};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Random element `a + b sqrt(d)` with small numerators and denominators.
pub fn random_scalar<R: Rng>(rng: &mut R, d: u32) -> QuadScalar {
    let a = rat(rng.gen_range(-9..=9), rng.gen_range(1..=3));
    let b = if d == 1 { rat(0, 1) } else { rat(rng.gen_range(-4..=4), rng.gen_range(1..=2)) };
    QuadScalar::new(a, b, d as u64).unwrap()
}

pub fn random_config<R: Rng>(rng: &mut R, n: usize, m: usize, d: u32) -> PointConfiguration {
    let pts = (0..n).map(|_| (0..m).map(|_| random_scalar(rng, d)).collect()).collect();
    PointConfiguration::new(m, d, pts).unwrap()
}

pub fn random_int_config<R: Rng>(rng: &mut R, n: usize, m: usize, range: i64) -> PointConfiguration {
    let pts: Vec<Vec<i64>> = (0..n).map(|_| (0..m).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    PointConfiguration::from_ints(&pts).unwrap()
}

/// Planar integer configuration with pairwise distinct squared distances
/// and a relation matrix of rank 2.
pub fn generic_planar<R: Rng>(rng: &mut R, n: usize, range: i64) -> PointConfiguration {
    loop {
        let p = random_int_config(rng, n, 2, range);
        let mut d = p.distance_table().values;
        d.sort();
        if d.windows(2).all(|w| w[0] != w[1]) && !d[0].is_zero() && p.generic_rank_check() {
            return p;
        }
    }
}

/// Exact orthogonal matrix: product of rational Givens rotations from
/// Pythagorean pairs and coordinate reflections.
pub fn random_orthogonal<R: Rng>(rng: &mut R, m: usize, d: u32) -> ScalarMatrix {
    let mut g = identity(m, d);
    for _ in 0..3 {
        if m >= 2 {
            let mut axes: Vec<usize> = (0..m).collect();
            axes.shuffle(rng);
            let (i, j) = (axes[0], axes[1]);
            let p: i64 = rng.gen_range(1..=5);
            let q: i64 = rng.gen_range(0..=5);
            let h = p * p + q * q;
            let c = QuadScalar::from_frac(p * p - q * q, h, d);
            let s = QuadScalar::from_frac(2 * p * q, h, d);
            let mut r = identity(m, d);
            r[i][i] = c.clone();
            r[j][j] = c;
            r[i][j] = -s.clone();
            r[j][i] = s;
            g = mat_mul(&r, &g);
        }
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(0..m);
            let mut f = identity(m, d);
            f[k][k] = QuadScalar::from_int(-1, d);
            g = mat_mul(&f, &g);
        }
    }
    g
}

/// Integer matrix with determinant `+-1`: random shears, swaps and sign
/// flips.
pub fn random_unimodular<R: Rng>(rng: &mut R, m: usize, d: u32) -> ScalarMatrix {
    let mut u = identity(m, d);
    for _ in 0..6 {
        let mut e = identity(m, d);
        if m >= 2 && rng.gen_bool(0.7) {
            let i = rng.gen_range(0..m);
            let mut j = rng.gen_range(0..m);
            while j == i {
                j = rng.gen_range(0..m);
            }
            e[i][j] = QuadScalar::from_int(rng.gen_range(-3..=3), d);
        } else {
            let k = rng.gen_range(0..m);
            e[k][k] = QuadScalar::from_int(-1, d);
        }
        u = mat_mul(&e, &u);
    }
    u
}

pub fn random_translation<R: Rng>(rng: &mut R, m: usize, d: u32) -> Vec<QuadScalar> {
    (0..m).map(|_| random_scalar(rng, d)).collect()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
