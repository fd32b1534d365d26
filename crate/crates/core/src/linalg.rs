//! Exact rank and nullspace computations over ℚ and GF(p).
//!
//! Ranks over ℚ use fraction-free integer elimination: every stored row is
//! primitive (content 1) with a positive pivot, so entries stay small for the
//! ±1 matrices that arise here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldDescriptor {
    #[default]
    Rationals,
    /// GF(p), p an odd prime.
    Prime(u64),
}

/// Default prime for the fast path.
pub const DEFAULT_PRIME: u64 = 32003;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Characteristic("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Argument(format!("prime {p} too large (must be below 2^31)")));
        }
        Ok(FieldDescriptor::Prime(p))
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `Q`, `rationals`, `GF(p)`, `gf:p` or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldDescriptor::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .or_else(|| t.strip_prefix("gf("))
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("gf:"))
            .unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown field {s:?}; use Q or GF(p)")))?;
        FieldDescriptor::prime(p)
    }
}

/// Incrementally built row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Rows,
}

#[derive(Debug, Clone)]
enum Rows {
    Q(Vec<(usize, Vec<BigInt>)>),
    P(u64, Vec<(usize, Vec<u64>)>),
}

fn make_primitive(row: &mut [BigInt], pivot: usize) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if row[pivot].is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits in u64")
}

impl Echelon {
    pub fn new(field: FieldDescriptor, ncols: usize) -> Self {
        let rows = match field {
            FieldDescriptor::Rationals => Rows::Q(Vec::new()),
            FieldDescriptor::Prime(p) => Rows::P(p, Vec::new()),
        };
        Echelon { ncols, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        match &self.rows {
            Rows::Q(r) => r.len(),
            Rows::P(_, r) => r.len(),
        }
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: &[BigInt]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        match &mut self.rows {
            Rows::Q(rows) => {
                let mut r = row.to_vec();
                for (piv, stored) in rows.iter() {
                    if r[*piv].is_zero() {
                        continue;
                    }
                    let a = stored[*piv].clone();
                    let b = r[*piv].clone();
                    for (x, s) in r.iter_mut().zip(stored) {
                        if s.is_zero() {
                            if !x.is_zero() {
                                *x *= &a;
                            }
                        } else {
                            *x = &*x * &a - &b * s;
                        }
                    }
                }
                match r.iter().position(|x| !x.is_zero()) {
                    Some(piv) => {
                        make_primitive(&mut r, piv);
                        rows.push((piv, r));
                        true
                    }
                    None => false,
                }
            }
            Rows::P(p, rows) => {
                let p = *p;
                let mut r: Vec<u64> = row.iter().map(|x| to_mod(x, p)).collect();
                for (piv, stored) in rows.iter() {
                    let b = r[*piv];
                    if b == 0 {
                        continue;
                    }
                    // stored pivot is 1
                    for (x, s) in r.iter_mut().zip(stored) {
                        if *s != 0 {
                            *x = (*x + p - b * s % p) % p;
                        }
                    }
                }
                match r.iter().position(|&x| x != 0) {
                    Some(piv) => {
                        let inv = inv_mod(r[piv], p);
                        for x in r.iter_mut() {
                            *x = *x * inv % p;
                        }
                        rows.push((piv, r));
                        true
                    }
                    None => false,
                }
            }
        }
    }

    /// Adds a row given as sparse `(column, value)` pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, i64)]) -> bool {
        let mut row = vec![BigInt::zero(); self.ncols];
        for &(c, v) in entries {
            row[c] += v;
        }
        self.insert(&row)
    }

    /// Adds a rational row after clearing denominators.
    pub fn insert_rational(&mut self, row: &[BigRational]) -> bool {
        self.insert(&clear_denominators(row))
    }
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Rank of a matrix given by sparse integer rows.
pub fn rank_sparse(field: FieldDescriptor, ncols: usize, rows: &[Vec<(usize, i64)>]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        if e.rank() == ncols {
            break;
        }
        e.insert_sparse(r);
    }
    e.rank()
}

/// Rank over ℚ of a dense rational matrix.
pub fn rank_rational(ncols: usize, rows: &[Vec<BigRational>]) -> usize {
    let mut e = Echelon::new(FieldDescriptor::Rationals, ncols);
    for r in rows {
        e.insert_rational(r);
    }
    e.rank()
}

/// Basis of `{z ∈ ℚ^ncols : M z = 0}` for the matrix with the given rows,
/// via reduced row echelon form. Basis vectors have a 1 in their free column.
pub fn nullspace(ncols: usize, rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![BigRational::zero(); ncols];
            z[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                z[pc] = -m[i][f].clone();
            }
            z
        })
        .collect()
}

/// `M z` for a dense rational matrix.
pub fn apply(rows: &[Vec<BigRational>], z: &[BigRational]) -> Vec<BigRational> {
    rows.iter().map(|r| r.iter().zip(z).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)).collect()
}
