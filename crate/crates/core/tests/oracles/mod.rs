//! Reference computations that share no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rank over the rationals by fraction-free elimination on `i128`.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c] != 0 {
                let (f, g) = (a[rank][c], a[r][c]);
                for k in 0..cols {
                    a[r][k] = a[r][k] * f - a[rank][k] * g;
                }
                let d = a[r].iter().fold(0i128, |acc, &x| gcd(acc, x));
                if d > 1 {
                    a[r].iter_mut().for_each(|x| *x /= d);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the field with two elements.
pub fn rank_f2(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(2) as u8).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] == 1) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] == 1 {
                for k in 0..cols {
                    a[r][k] ^= a[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by cofactor expansion.
pub fn det_laplace(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
        let term = BigInt::from(m[0][j]) * det_laplace(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}`
/// where `D_k` is the gcd of all `k × k` minors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det_laplace(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

/// Boundary matrix of an abstract complex given by its simplices of
/// dimensions `n` and `n - 1`, built from scratch.
pub fn boundary_rows(lower: &[Vec<u32>], upper: &[Vec<u32>]) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let r = lower.iter().position(|f| *f == face).expect("face present");
            rows[r][j] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    rows
}
