//! Linear-algebra evidence in `F[𝔊_w]`: the generator filtration, the
//! truncated center, and the rank checks for `φ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Groupoid, GroupoidElement};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, FieldDescriptor};
use crate::par::{self, Exec};
use crate::words::{FactorLanguage, FiniteWord};

/// Largest sandwich constant searched by [`filtration_growth`].
pub const SANDWICH_CMAX: u64 = 16;

/// A coordinate system for elements: shift classes `shift_lo..=shift_hi`, each
/// refined to full language words on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    pub lo: i64,
    pub hi: i64,
    pub shift_lo: i64,
    pub shift_hi: i64,
    width: usize,
}

impl Coordinates {
    pub fn new(g: &Groupoid, lo: i64, hi: i64, shift_lo: i64, shift_hi: i64) -> Result<Self> {
        if lo > hi || shift_lo > shift_hi {
            return Err(Error::Argument("empty coordinate range".into()));
        }
        let len = (hi - lo + 1) as usize;
        if len > g.horizon() {
            return Err(Error::Horizon { requested: len, horizon: g.horizon() });
        }
        Ok(Coordinates { lo, hi, shift_lo, shift_hi, width: g.language().complexity(len)? })
    }

    pub fn window_len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn shift_offset(&self, m: i64) -> Option<usize> {
        (self.shift_lo..=self.shift_hi).contains(&m).then(|| (m - self.shift_lo) as usize)
    }

    pub fn ncols(&self) -> usize {
        self.width * (self.shift_hi - self.shift_lo + 1) as usize
    }
}

fn dense(ncols: usize, sparse: &[(usize, BigRational)]) -> Vec<BigInt> {
    let l = sparse.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut row = vec![BigInt::zero(); ncols];
    for (i, x) in sparse {
        row[*i] += x.numer() * (&l / x.denom());
    }
    row
}

/// A basis of each level `V^n` of the filtration by products of length
/// `<= n` of `1, D_a, T, T^{-1}`, built breadth first.
#[derive(Debug, Clone)]
pub struct FiltrationBasis {
    pub field: FieldDescriptor,
    /// `dims[n] = dim V^n`
    pub dims: Vec<usize>,
    /// Basis elements in discovery order; the first `dims[n]` span `V^n`.
    pub elements: Vec<GroupoidElement>,
}

/// Only products of the newest basis elements with a generator can leave
/// the previous level, so each level costs one pass over the new elements.
pub fn filtration_basis(g: &Groupoid, n: usize, field: FieldDescriptor, exec: Exec) -> Result<FiltrationBasis> {
    let r = n as i64;
    let coords = Coordinates::new(g, -r, r, -r, r)?;
    let gens = g.generators()?;
    let mut ech = Echelon::new(field, coords.ncols());
    let one = g.one();
    ech.insert(&dense(coords.ncols(), &g.vector(&one, &coords)?));
    let mut elements = vec![one];
    let mut dims = vec![1];
    let mut frontier = 0..1;
    for _ in 1..=n {
        let jobs: Vec<(usize, usize)> = frontier.clone().flat_map(|i| (0..gens.len()).map(move |j| (i, j))).collect();
        let products = par::map(exec, &jobs, |&(i, j)| -> Result<(GroupoidElement, Vec<BigInt>)> {
            let p = g.multiply(&elements[i], &gens[j])?;
            let v = dense(coords.ncols(), &g.vector(&p, &coords)?);
            Ok((p, v))
        });
        let start = elements.len();
        for p in products {
            let (e, v) = p?;
            if ech.insert(&v) {
                elements.push(e);
            }
        }
        frontier = start..elements.len();
        dims.push(elements.len());
    }
    Ok(FiltrationBasis { field, dims, elements })
}

/// One row of the growth table with the sandwich bounds at the reported `C`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiltrationRow {
    pub n: usize,
    pub dim: usize,
    /// `(n/C)·c(⌊n/C⌋)`
    pub lower_bound: f64,
    /// `C·n·c(Cn)`
    pub upper_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiltrationGrowth {
    pub field: FieldDescriptor,
    /// `dims[n] = γ(n)` for `0 <= n <= N`.
    pub dims: Vec<usize>,
    /// Smallest `C <= 16` for which the sandwich holds on `1..=N`.
    pub sandwich: Option<u64>,
    /// `C` used for the bounds in `rows`: the sandwich constant, or 16.
    pub bounds_constant: u64,
    /// Some `Cn` exceeded the horizon and `c(horizon)` stood in for `c(Cn)`.
    pub upper_truncated: bool,
    pub rows: Vec<FiltrationRow>,
}

/// `c(k)` with `c(0) = 1`; beyond the horizon `c(horizon)`, which is a lower
/// bound for the true value since `c` is nondecreasing.
fn complexity_at(lang: &FactorLanguage, k: usize) -> (usize, bool) {
    let h = lang.horizon();
    if k > h {
        (lang.complexity(h).expect("horizon"), true)
    } else {
        (lang.complexity(k).expect("within horizon"), false)
    }
}

/// Exact `(n/C)·c(⌊n/C⌋)`, `C·n·c(Cn)`, and whether the upper side used the
/// horizon stand-in.
fn bounds(lang: &FactorLanguage, n: usize, c: u64) -> (BigRational, BigInt, bool) {
    let c_us = c as usize;
    let (low_c, _) = complexity_at(lang, n / c_us);
    let (up_c, trunc) = complexity_at(lang, c_us * n);
    let lower = BigRational::new(BigInt::from(n * low_c), BigInt::from(c));
    let upper = BigInt::from(c) * BigInt::from(n) * BigInt::from(up_c);
    (lower, upper, trunc)
}

/// `((n/C)·c(⌊n/C⌋), C·n·c(Cn))` as floats, and whether the upper bound used
/// the horizon stand-in.
pub fn sandwich_bounds(lang: &FactorLanguage, n: usize, c: u64) -> (f64, f64, bool) {
    use num_traits::ToPrimitive;
    let (l, u, t) = bounds(lang, n, c);
    (l.to_f64().unwrap_or(f64::NAN), u.to_f64().unwrap_or(f64::INFINITY), t)
}

/// Smallest `C <= cmax` with `(n/C)·c(⌊n/C⌋) <= γ(n) <= C·n·c(Cn)` for every
/// `1 <= n < dims.len()`.
pub fn sandwich_constant(dims: &[usize], lang: &FactorLanguage, cmax: u64) -> Option<u64> {
    (1..=cmax).find(|&c| {
        (1..dims.len()).all(|n| {
            let (lower, upper, _) = bounds(lang, n, c);
            let gamma = BigInt::from(dims[n]);
            lower <= BigRational::from_integer(gamma.clone()) && gamma <= upper
        })
    })
}

/// `γ(n)` for `0 <= n <= N` and the sandwich constant.
pub fn filtration_growth(g: &Groupoid, n: usize, field: FieldDescriptor, exec: Exec) -> Result<FiltrationGrowth> {
    let basis = filtration_basis(g, n, field, exec)?;
    let lang = g.language();
    let sandwich = sandwich_constant(&basis.dims, lang, SANDWICH_CMAX);
    let c = sandwich.unwrap_or(SANDWICH_CMAX);
    let mut upper_truncated = false;
    let rows = (1..=n)
        .map(|k| {
            let (lower_bound, upper_bound, t) = sandwich_bounds(lang, k, c);
            upper_truncated |= t;
            FiltrationRow { n: k, dim: basis.dims[k], lower_bound, upper_bound }
        })
        .collect();
    Ok(FiltrationGrowth { field, dims: basis.dims, sandwich, bounds_constant: c, upper_truncated, rows })
}

/// `dim{e ∈ V^n : eD_a = D_ae for all a, eT = Te}` minus the scalars.
pub fn truncated_center_check(g: &Groupoid, n: usize, field: FieldDescriptor, exec: Exec) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    let basis = filtration_basis(g, n, field, exec)?;
    let r = n as i64 + 1;
    let coords = Coordinates::new(g, -r, r, -r, r)?;
    let mut tests: Vec<GroupoidElement> = (0..g.letters() as u8).map(|a| g.d(a)).collect::<Result<_>>()?;
    tests.push(g.t());
    let block = coords.ncols();
    let rows = par::map(exec, &basis.elements, |e| -> Result<Vec<BigInt>> {
        let mut row = Vec::with_capacity(block * tests.len());
        for t in &tests {
            row.extend(dense(block, &g.vector(&g.commutator(e, t)?, &coords)?));
        }
        Ok(row)
    });
    let mut ech = Echelon::new(field, block * tests.len());
    for row in rows {
        ech.insert(&row?);
    }
    // the unit is in V^n and central
    Ok(basis.elements.len() - ech.rank() - 1)
}

fn phi_coords(g: &Groupoid, n: usize) -> Result<Coordinates> {
    let r = n as i64;
    Coordinates::new(g, -r, -1, r, r)
}

/// Rank of `{φ(v) : v ∈ F(n)}`.
pub fn phi_rank(g: &Groupoid, n: usize, field: FieldDescriptor, exec: Exec) -> Result<usize> {
    if n == 0 {
        return Ok(1);
    }
    let coords = phi_coords(g, n)?;
    let words = g.language().factors(n)?;
    let rows = par::map(exec, words, |v| -> Result<Vec<BigInt>> {
        Ok(dense(coords.ncols(), &g.vector(&g.phi(v.symbols())?, &coords)?))
    });
    let mut ech = Echelon::new(field, coords.ncols());
    for row in rows {
        ech.insert(&row?);
    }
    Ok(ech.rank())
}

/// `φ` is injective on `A(n)`: the images of the length-`n` factors are
/// independent.
pub fn phi_injectivity_check(g: &Groupoid, n: usize, field: FieldDescriptor, exec: Exec) -> Result<bool> {
    let c = if n == 0 { 1 } else { g.language().complexity(n)? };
    Ok(phi_rank(g, n, field, exec)? == c)
}

/// `dim span{[φ(u), φ(v)] : |u| + |v| = n, |u|, |v| >= 1}`.
pub fn phi_commutator_dim(g: &Groupoid, n: usize, field: FieldDescriptor, exec: Exec) -> Result<usize> {
    if n < 2 {
        return Ok(0);
    }
    let coords = phi_coords(g, n)?;
    let lang = g.language();
    let mut pairs: Vec<(&FiniteWord, &FiniteWord)> = Vec::new();
    for k in 1..n {
        for u in lang.factors(k)? {
            for v in lang.factors(n - k)? {
                pairs.push((u, v));
            }
        }
    }
    let rows = par::map(exec, &pairs, |(u, v)| -> Result<Vec<BigInt>> {
        let c = g.commutator(&g.phi(u.symbols())?, &g.phi(v.symbols())?)?;
        Ok(dense(coords.ncols(), &g.vector(&c, &coords)?))
    });
    let mut ech = Echelon::new(field, coords.ncols());
    for row in rows {
        ech.insert(&row?);
    }
    Ok(ech.rank())
}

/// [`phi_commutator_dim`] for `n = 1..=max_n`.
pub fn phi_commutator_dims(g: &Groupoid, max_n: usize, field: FieldDescriptor, exec: Exec) -> Result<Vec<usize>> {
    (1..=max_n).map(|n| phi_commutator_dim(g, n, field, exec)).collect()
}

/// Factor pairs `(u, v)` with `|u| + |v| <= max_total` where
/// `φ(u)φ(v) != φ(uv)`; `uv` need not be a factor.
pub fn phi_multiplicativity_failures(
    g: &Groupoid,
    max_total: usize,
    exec: Exec,
) -> Result<Vec<(FiniteWord, FiniteWord)>> {
    let lang = g.language();
    let mut pairs: Vec<(&FiniteWord, &FiniteWord)> = Vec::new();
    for a in 0..=max_total {
        for b in 0..=max_total - a {
            for u in lang.factors(a)? {
                for v in lang.factors(b)? {
                    pairs.push((u, v));
                }
            }
        }
    }
    let checks = par::map(exec, &pairs, |(u, v)| -> Result<bool> {
        let lhs = g.multiply(&g.phi(u.symbols())?, &g.phi(v.symbols())?)?;
        Ok(lhs == g.phi(u.concat(v).symbols())?)
    });
    let mut out = Vec::new();
    for ((u, v), ok) in pairs.into_iter().zip(checks) {
        if !ok? {
            out.push((u.clone(), v.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{factor_language, library};

    fn fib(h: usize) -> Groupoid {
        Groupoid::new(factor_language(&library::fibonacci(), h, 4000).unwrap())
    }

    #[test]
    fn injective_and_multiplicative() {
        let g = fib(20);
        for n in 0..=8 {
            assert!(phi_injectivity_check(&g, n, FieldDescriptor::Rationals, Exec::Sequential).unwrap());
        }
        assert!(phi_multiplicativity_failures(&g, 6, Exec::Sequential).unwrap().is_empty());
    }

    #[test]
    fn fibonacci_sandwich_and_center() {
        let g = fib(200);
        let gr = filtration_growth(&g, 6, FieldDescriptor::Rationals, Exec::Sequential).unwrap();
        assert_eq!(gr.dims[0], 1);
        assert!(gr.dims.windows(2).all(|w| w[0] <= w[1]));
        assert!(gr.sandwich.is_some_and(|c| c <= 8), "{:?}", gr.dims);
        for n in 0..=3 {
            assert_eq!(truncated_center_check(&g, n, FieldDescriptor::Rationals, Exec::Sequential).unwrap(), 0);
        }
    }

    #[test]
    fn sandwich_search() {
        let g = fib(50);
        // c(n) = n + 1, so C = 1 fails the upper side of γ(n) = n(n+2)
        let dims: Vec<usize> = (0..=5).map(|n| n * (n + 2)).collect();
        assert_eq!(sandwich_constant(&dims, g.language(), 16), Some(2));
        let huge: Vec<usize> = (0..=5).map(|n| 1000 * n * n * n).collect();
        assert_eq!(sandwich_constant(&huge, g.language(), 16), None);
    }
}
