//! The monomial algebra `A_w`: the free algebra on the letters modulo every
//! monomial that is not a factor of `w`. The degree-`n` component has the
//! length-`n` factors as a basis.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, FieldDescriptor};
use crate::par::{self, Exec};
use crate::words::{FactorLanguage, FiniteWord};

#[derive(Debug, Clone)]
pub struct MonomialAlgebra {
    lang: FactorLanguage,
    field: FieldDescriptor,
}

/// One row of the growth table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `c(n) = dim A(n)`
    pub dim: usize,
    /// `Σ_{1 <= i <= n} c(i)`
    pub growth: usize,
    /// `growth + 1`, counting the unit.
    pub growth_unital: usize,
}

impl MonomialAlgebra {
    pub fn new(lang: FactorLanguage) -> Self {
        MonomialAlgebra { lang, field: FieldDescriptor::Rationals }
    }

    pub fn with_field(mut self, field: FieldDescriptor) -> Self {
        self.field = field;
        self
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn language(&self) -> &FactorLanguage {
        &self.lang
    }

    pub fn horizon(&self) -> usize {
        self.lang.horizon()
    }

    pub fn generators(&self) -> usize {
        self.lang.alphabet_size()
    }

    /// Basis of `A(n)`: the sorted factors of length `n`.
    pub fn basis(&self, n: usize) -> Result<&[FiniteWord]> {
        self.lang.factors(n)
    }

    pub fn dim_component(&self, n: usize) -> Result<usize> {
        self.lang.complexity(n)
    }

    /// `dim(A(1) + … + A(n))`, without the unit.
    pub fn growth(&self, n: usize) -> Result<usize> {
        (1..=n).map(|i| self.dim_component(i)).sum()
    }

    pub fn growth_table(&self) -> Vec<GrowthRow> {
        let mut acc = 0;
        self.lang
            .complexities()
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                acc += c;
                GrowthRow { n: i + 1, dim: c, growth: acc, growth_unital: acc + 1 }
            })
            .collect()
    }

    /// Product of two basis monomials: `uv` if it is a factor, `None` for zero.
    pub fn multiply(&self, u: &FiniteWord, v: &FiniteWord) -> Result<Option<FiniteWord>> {
        let n = u.len() + v.len();
        if n > self.horizon() {
            return Err(Error::Horizon { requested: n, horizon: self.horizon() });
        }
        for w in [u, v] {
            if !self.lang.contains(w.symbols())? {
                return Err(Error::Argument(format!("{w} is not a factor")));
            }
        }
        let uv = u.concat(v);
        Ok(self.lang.contains(uv.symbols())?.then_some(uv))
    }

    /// Smallest `t` with `letter^t = 0`.
    pub fn nilpotency_degree(&self, letter: u8) -> Result<usize> {
        if letter as usize >= self.generators() {
            return Err(Error::Argument(format!("letter {letter} outside the alphabet")));
        }
        (1..=self.horizon())
            .find(|&t| self.lang.index_of(&vec![letter; t]).is_none())
            .ok_or(Error::NotNilpotent { letter: letter as usize, horizon: self.horizon() })
    }

    /// Sparse coordinates of `[u, a] = ua − au` in `A(|u|+1)`.
    fn bracket_with_letter(&self, u: &[u8], a: u8) -> Vec<(usize, i64)> {
        let mut ua = u.to_vec();
        ua.push(a);
        let mut au = vec![a];
        au.extend_from_slice(u);
        let mut out = Vec::with_capacity(2);
        if let Some(i) = self.lang.index_of(&ua) {
            out.push((i, 1));
        }
        if let Some(j) = self.lang.index_of(&au) {
            match out.iter_mut().find(|(i, _)| *i == j) {
                Some(e) => e.1 -= 1,
                None => out.push((j, -1)),
            }
        }
        out.retain(|&(_, v)| v != 0);
        out
    }

    fn check_center_degree(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Argument("degree 0 is the scalars and is excluded".into()));
        }
        if n + 1 > self.horizon() {
            return Err(Error::Horizon { requested: n + 1, horizon: self.horizon() });
        }
        Ok(())
    }

    /// `dim Z(A_w) ∩ A(n)`: the nullity of `z ↦ ([z, a])_a` from `A(n)` to
    /// `⊕_a A(n+1)`.
    pub fn center_component(&self, n: usize) -> Result<usize> {
        self.check_center_degree(n)?;
        let basis = self.basis(n)?;
        let next = self.dim_component(n + 1)?;
        let d = self.generators();
        let mut e = Echelon::new(self.field, d * next);
        for u in basis {
            let mut row = Vec::new();
            for a in 0..d {
                row.extend(self.bracket_with_letter(u.symbols(), a as u8).into_iter().map(|(i, v)| (a * next + i, v)));
            }
            e.insert_sparse(&row);
        }
        Ok(basis.len() - e.rank())
    }

    /// Matrix of `ad_a` restricted to `A(n)`, one row per coordinate of `A(n+1)`.
    fn ad_matrix(&self, n: usize, a: u8) -> Result<Vec<Vec<BigRational>>> {
        let basis = self.basis(n)?;
        let next = self.dim_component(n + 1)?;
        let mut m = vec![vec![BigRational::zero(); basis.len()]; next];
        for (col, u) in basis.iter().enumerate() {
            for (row, v) in self.bracket_with_letter(u.symbols(), a) {
                m[row][col] = BigRational::from_integer(BigInt::from(v));
            }
        }
        Ok(m)
    }

    /// Same quantity as [`center_component`](Self::center_component), computed
    /// as `Ker ad_x ∩ Ker ad_y ∩ A(n)`: a nullspace basis of `ad_x`, then the
    /// kernel of each further `ad_a` restricted to it. Always over ℚ.
    pub fn center_component_by_kernels(&self, n: usize) -> Result<usize> {
        self.check_center_degree(n)?;
        let mut kernel: Option<Vec<Vec<BigRational>>> = None;
        for a in 0..self.generators() as u8 {
            let m = self.ad_matrix(n, a)?;
            kernel = Some(match kernel {
                None => linalg::nullspace(self.dim_component(n)?, &m),
                Some(k) => {
                    if k.is_empty() {
                        return Ok(0);
                    }
                    // columns: images of the current kernel basis vectors
                    let images: Vec<Vec<BigRational>> = k.iter().map(|z| linalg::apply(&m, z)).collect();
                    let restricted: Vec<Vec<BigRational>> =
                        (0..m.len()).map(|r| images.iter().map(|img| img[r].clone()).collect()).collect();
                    linalg::nullspace(k.len(), &restricted)
                        .into_iter()
                        .map(|c| {
                            (0..k[0].len())
                                .map(|i| c.iter().zip(&k).fold(BigRational::zero(), |acc, (ci, kv)| acc + ci * &kv[i]))
                                .collect()
                        })
                        .collect()
                }
            });
        }
        Ok(kernel.map_or(0, |k| k.len()))
    }

    /// Center dimensions for `n = 1..=max_n`.
    pub fn center_components(&self, max_n: usize, exec: Exec) -> Result<Vec<usize>> {
        par::map_range(exec, 1..max_n + 1, |n| self.center_component(n)).into_iter().collect()
    }
}

/// A homogeneous element `Σ c_u u` of `A(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedVector {
    pub degree: usize,
    pub coeffs: BTreeMap<FiniteWord, BigRational>,
}

impl GradedVector {
    pub fn zero(degree: usize) -> Self {
        GradedVector { degree, coeffs: BTreeMap::new() }
    }

    /// A basis monomial; it must be a factor.
    pub fn monomial(alg: &MonomialAlgebra, u: &FiniteWord) -> Result<Self> {
        if !alg.language().contains(u.symbols())? {
            return Err(Error::Argument(format!("{u} is not a factor")));
        }
        let mut v = GradedVector::zero(u.len());
        v.coeffs.insert(u.clone(), BigRational::from_integer(1.into()));
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, w: FiniteWord, c: BigRational) {
        match self.coeffs.entry(w) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GradedVector) -> Result<GradedVector> {
        if self.degree != other.degree {
            return Err(Error::Argument("adding components of different degree".into()));
        }
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> GradedVector {
        if c.is_zero() {
            return GradedVector::zero(self.degree);
        }
        GradedVector { degree: self.degree, coeffs: self.coeffs.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn multiply(&self, other: &GradedVector, alg: &MonomialAlgebra) -> Result<GradedVector> {
        let mut out = GradedVector::zero(self.degree + other.degree);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if let Some(uv) = alg.multiply(u, v)? {
                    out.add_term(uv, a * b);
                }
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab − ba`.
    pub fn bracket(&self, other: &GradedVector, alg: &MonomialAlgebra) -> Result<GradedVector> {
        let ab = self.multiply(other, alg)?;
        let ba = other.multiply(self, alg)?;
        ab.add(&ba.scale(&BigRational::from_integer((-1).into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{factor_language, library};

    fn alg(src: crate::words::WordSource, n: usize) -> MonomialAlgebra {
        MonomialAlgebra::new(factor_language(&src, n, 10_000).unwrap())
    }

    fn w(s: &str) -> FiniteWord {
        FiniteWord::parse_digits(s).unwrap()
    }

    #[test]
    fn dims_and_growth() {
        let fib = alg(library::fibonacci(), 10);
        assert_eq!(fib.dim_component(3).unwrap(), 4);
        assert_eq!(fib.growth(3).unwrap(), 9);
        assert!(fib.dim_component(11).is_err());
        let tm = alg(library::thue_morse(), 10);
        assert_eq!(tm.dim_component(4).unwrap(), 10);
        let t = fib.growth_table();
        assert_eq!(t[2], GrowthRow { n: 3, dim: 4, growth: 9, growth_unital: 10 });
    }

    #[test]
    fn multiplication() {
        let tm = alg(library::thue_morse(), 6);
        assert_eq!(tm.multiply(&w("00"), &w("0")).unwrap(), None);
        assert_eq!(tm.multiply(&FiniteWord::empty(), &w("01")).unwrap(), Some(w("01")));
        let fib = alg(library::fibonacci(), 6);
        assert_eq!(fib.multiply(&w("0"), &w("0")).unwrap(), Some(w("00")));
        assert!(fib.multiply(&w("11"), &w("0")).is_err());
        assert!(fib.multiply(&w("0100"), &w("010")).is_err());
    }

    #[test]
    fn nilpotency() {
        let fib = alg(library::fibonacci(), 8);
        assert_eq!(fib.nilpotency_degree(0).unwrap(), 3);
        assert_eq!(fib.nilpotency_degree(1).unwrap(), 2);
        let c = alg(library::constant(), 8);
        assert!(matches!(c.nilpotency_degree(0), Err(Error::NotNilpotent { .. })));
    }

    #[test]
    fn center_trivial_for_fibonacci_and_not_for_periodic() {
        let fib = alg(library::fibonacci(), 9);
        for n in 1..=8 {
            assert_eq!(fib.center_component(n).unwrap(), 0, "n={n}");
            assert_eq!(fib.center_component_by_kernels(n).unwrap(), 0);
        }
        let per = alg(library::periodic_01(), 5);
        assert_eq!(per.center_component(2).unwrap(), 1);
        assert_eq!(per.center_component_by_kernels(2).unwrap(), 1);
        assert!(per.center_component(0).is_err());
        assert!(per.center_component(5).is_err());
    }

    #[test]
    fn center_by_hand_fibonacci_degree_one() {
        // A(1) = <x, y>, A(2) = <xx, xy, yx>. [x,x] = 0, [y,x] = yx − xy,
        // [x,y] = xy − yx, [y,y] = 0 (yy = 0): the map has rank 1 on x and
        // rank 1 on y, jointly rank 2, so the center is 0.
        let fib = alg(library::fibonacci(), 3);
        assert_eq!(fib.center_component(1).unwrap(), 0);
    }

    #[test]
    fn graded_vectors() {
        let fib = alg(library::fibonacci(), 6);
        let x = GradedVector::monomial(&fib, &w("0")).unwrap();
        let y = GradedVector::monomial(&fib, &w("1")).unwrap();
        let xy = x.bracket(&y, &fib).unwrap();
        assert_eq!(xy.coeffs.len(), 2);
        assert!(x.bracket(&x, &fib).unwrap().is_zero());
        let s = x.add(&x).unwrap();
        assert_eq!(s.coeffs[&w("0")], BigRational::from_integer(2.into()));
        assert!(x.add(&xy).is_err());
    }
}
