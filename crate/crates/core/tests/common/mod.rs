//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own scanning or elimination code.

#![allow(clippy::needless_range_loop)]
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Iterates a substitution from its seed until the word reaches `n` letters.
pub fn iterate(rules: &[&[u8]], seed: u8, n: usize) -> Vec<u8> {
    let mut w = vec![seed];
    while w.len() < n {
        w = w.iter().flat_map(|&a| rules[a as usize].iter().copied()).collect();
    }
    w.truncate(n);
    w
}

pub fn fibonacci(n: usize) -> Vec<u8> {
    iterate(&[&[0, 1], &[0]], 0, n)
}

pub fn thue_morse(n: usize) -> Vec<u8> {
    // parity of the binary digit sum
    (0..n).map(|i: usize| (i.count_ones() % 2) as u8).collect()
}

/// All distinct windows of length `n`.
pub fn windows(w: &[u8], n: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    if n == 0 {
        out.insert(Vec::new());
        return out;
    }
    for i in 0..w.len().saturating_sub(n - 1) {
        out.insert(w[i..i + n].to_vec());
    }
    out
}

/// Rank by dense Gauss–Jordan elimination over ℚ.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / &m[rank][col];
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..ncols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank modulo the prime `p` with plain `i128` arithmetic.
pub fn rank_mod(rows: &[Vec<i64>], p: i128) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let pow = |mut b: i128, mut e: i128| {
        let mut acc = 1i128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow(m[rank][col], p - 2);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..ncols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Commutator matrix of degree `n` built from scratch: one row `e(uv) − e(vu)`
/// per pair of factors, columns indexed by the length-`n` factors.
pub fn commutator_rows(w: &[u8], n: usize) -> Vec<Vec<i64>> {
    let cols: Vec<Vec<u8>> = windows(w, n).into_iter().collect();
    let col = |x: &[u8]| cols.iter().position(|c| c == x);
    let mut rows = Vec::new();
    for k in 1..n {
        for u in windows(w, k) {
            for v in windows(w, n - k) {
                let mut r = vec![0i64; cols.len()];
                if let Some(i) = col(&[u.clone(), v.clone()].concat()) {
                    r[i] += 1;
                }
                if let Some(i) = col(&[v.clone(), u.clone()].concat()) {
                    r[i] -= 1;
                }
                rows.push(r);
            }
        }
    }
    rows
}

/// `dim(Z ∩ A(n))` from the transposed bracket matrix: a vector `z` is
/// central iff `Σ z_u [u, a] = 0` for every letter.
pub fn center_dim(w: &[u8], n: usize, d: u8) -> usize {
    let basis: Vec<Vec<u8>> = windows(w, n).into_iter().collect();
    let next: Vec<Vec<u8>> = windows(w, n + 1).into_iter().collect();
    let col = |x: &[u8]| next.iter().position(|c| c == x);
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|u| {
            let mut r = vec![0i64; next.len() * d as usize];
            for a in 0..d {
                let off = a as usize * next.len();
                if let Some(i) = col(&[u.as_slice(), &[a]].concat()) {
                    r[off + i] += 1;
                }
                if let Some(i) = col(&[&[a], u.as_slice()].concat()) {
                    r[off + i] -= 1;
                }
            }
            r
        })
        .collect();
    basis.len() - rank_q(&rows)
}

/// Incremental row reduction modulo a prime.
pub struct ModEchelon {
    p: i128,
    rows: Vec<(usize, Vec<i128>)>,
}

impl ModEchelon {
    pub fn new(p: i128) -> Self {
        ModEchelon { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, row: &[i64]) -> bool {
        let p = self.p;
        let mut r: Vec<i128> = row.iter().map(|&x| (x as i128).rem_euclid(p)).collect();
        for (piv, s) in &self.rows {
            let f = r[*piv];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(s) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let mut inv = 1i128;
        let (mut b, mut e) = (r[piv], p - 2);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        for x in r.iter_mut() {
            *x = *x * inv % p;
        }
        self.rows.push((piv, r));
        true
    }
}
