//! Graded dimensions of the commutator Lie algebra `[A_w, A_w]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_sparse, Echelon, FieldDescriptor};
use crate::monomial::MonomialAlgebra;
use crate::par::{self, Exec};
use crate::words::FiniteWord;

/// `(u, v)` and the sparse coordinates of `uv − vu`.
pub type CommutatorRow = (FiniteWord, FiniteWord, Vec<(usize, i64)>);

/// The matrix whose row `(u, v)` holds the coordinates of `uv − vu` in
/// `A(n)`, over all factor pairs with `|u|, |v| >= 1` and `|u| + |v| = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorRankProblem {
    pub degree: usize,
    pub columns: usize,
    /// `(u, v, sparse row)`; zero rows are kept.
    pub rows: Vec<CommutatorRow>,
}

impl CommutatorRankProblem {
    pub fn build(alg: &MonomialAlgebra, n: usize) -> Result<Self> {
        if n > alg.horizon() {
            return Err(Error::Horizon { requested: n, horizon: alg.horizon() });
        }
        let lang = alg.language();
        let mut rows = Vec::new();
        for k in 1..n {
            for u in lang.factors(k)? {
                for v in lang.factors(n - k)? {
                    let uv = u.concat(v);
                    let vu = v.concat(u);
                    let mut row: Vec<(usize, i64)> = Vec::with_capacity(2);
                    if let Some(i) = lang.index_of(uv.symbols()) {
                        row.push((i, 1));
                    }
                    if let Some(j) = lang.index_of(vu.symbols()) {
                        match row.iter_mut().find(|(i, _)| *i == j) {
                            Some(e) => e.1 -= 1,
                            None => row.push((j, -1)),
                        }
                    }
                    row.retain(|&(_, x)| x != 0);
                    row.sort_unstable();
                    rows.push((u.clone(), v.clone(), row));
                }
            }
        }
        Ok(CommutatorRankProblem { degree: n, columns: lang.complexity(n)?, rows })
    }

    /// Nonzero rows up to sign, deduplicated; spans the same space.
    fn distinct_rows(&self, half: bool) -> Vec<Vec<(usize, i64)>> {
        let mut out: Vec<Vec<(usize, i64)>> = self
            .rows
            .iter()
            .filter(|(u, v, r)| !r.is_empty() && (!half || u < v))
            .map(|(_, _, r)| if r[0].1 < 0 { r.iter().map(|&(i, x)| (i, -x)).collect() } else { r.clone() })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn rank(&self, field: FieldDescriptor) -> Result<usize> {
        check_field(field)?;
        Ok(rank_sparse(field, self.columns, &self.distinct_rows(false)))
    }

    /// Rank using only the rows with `u < v`.
    pub fn rank_half(&self, field: FieldDescriptor) -> Result<usize> {
        check_field(field)?;
        Ok(rank_sparse(field, self.columns, &self.distinct_rows(true)))
    }
}

fn check_field(field: FieldDescriptor) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::Characteristic(field.to_string()));
    }
    Ok(())
}

/// `dim([A, A] ∩ A(n))`. Over GF(p) the value is a lower bound for the
/// rank over ℚ.
pub fn commutator_dim(alg: &MonomialAlgebra, n: usize, field: FieldDescriptor) -> Result<usize> {
    check_field(field)?;
    if n == 0 {
        return Ok(0);
    }
    CommutatorRankProblem::build(alg, n)?.rank(field)
}

/// [`commutator_dim`] for `n = 1..=max_n`.
pub fn commutator_dims(alg: &MonomialAlgebra, max_n: usize, field: FieldDescriptor, exec: Exec) -> Result<Vec<usize>> {
    par::map_range(exec, 1..max_n + 1, |n| commutator_dim(alg, n, field)).into_iter().collect()
}

/// The quarter bound at one degree together with the intermediate facts of
/// its proof.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuarterReport {
    pub n: usize,
    pub field: FieldDescriptor,
    pub dim_a: usize,
    /// `dim A(n-2)`
    pub dim_a_n_minus_2: usize,
    pub comm_dim: usize,
    /// `dim A(n-2) / 4`
    pub bound: f64,
    pub pass: bool,
    /// `comm_dim − bound`
    pub margin: f64,
    /// `dim x S_1` and `dim y S_2` inside `A(n-1)`.
    pub split: [usize; 2],
    /// Letter `i` with `dim x_i S_i >= dim A(n-1) / 2`.
    pub chosen_i: usize,
    pub half_holds: bool,
    /// `dim(Ker ad_{x_j} ∩ x_i S_i)` for `j = 0, 1`.
    pub kernel_dims: [usize; 2],
    /// Letter `j` with kernel dimension at most `dim x_i S_i / 2`, if any.
    pub chosen_j: Option<usize>,
}

/// Checks `4 · dim([A, A] ∩ A(n)) >= dim A(n-2)` for a two-letter algebra.
pub fn verify_quarter_bound(alg: &MonomialAlgebra, n: usize, field: FieldDescriptor) -> Result<QuarterReport> {
    if n <= 2 {
        return Err(Error::Argument(format!("quarter bound needs n > 2, got {n}")));
    }
    if alg.generators() != 2 {
        return Err(Error::Argument("quarter bound report needs a two-letter alphabet".into()));
    }
    let comm_dim = commutator_dim(alg, n, field)?;
    let lang = alg.language();
    let dim_a = lang.complexity(n)?;
    let below = lang.complexity(n - 2)?;
    let prev = lang.factors(n - 1)?;
    let mut split = [0usize; 2];
    for u in prev {
        split[u.symbols()[0] as usize] += 1;
    }
    let chosen_i = if split[0] >= split[1] { 0 } else { 1 };
    let part: Vec<&FiniteWord> = prev.iter().filter(|u| u.symbols()[0] as usize == chosen_i).collect();
    let mut kernel_dims = [0usize; 2];
    for (j, kd) in kernel_dims.iter_mut().enumerate() {
        let mut e = Echelon::new(field, dim_a);
        for u in &part {
            let mut row: Vec<(usize, i64)> = Vec::new();
            let mut uj = u.symbols().to_vec();
            uj.push(j as u8);
            let mut ju = vec![j as u8];
            ju.extend_from_slice(u.symbols());
            if let Some(a) = lang.index_of(&uj) {
                row.push((a, 1));
            }
            if let Some(b) = lang.index_of(&ju) {
                row.push((b, -1));
            }
            e.insert_sparse(&row);
        }
        *kd = part.len() - e.rank();
    }
    let chosen_j = (0..2).find(|&j| 2 * kernel_dims[j] <= part.len());
    let bound = below as f64 / 4.0;
    Ok(QuarterReport {
        n,
        field,
        dim_a,
        dim_a_n_minus_2: below,
        comm_dim,
        bound,
        pass: 4 * comm_dim >= below,
        margin: comm_dim as f64 - bound,
        split,
        chosen_i,
        half_holds: 2 * split[chosen_i] >= prev.len(),
        kernel_dims,
        chosen_j,
    })
}

/// One row of the Lie growth proxy table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProxyRow {
    pub n: usize,
    /// `Σ_{m=3}^{n} dim([A,A] ∩ A(m))`
    pub proxy: usize,
    /// `¼ Σ_{m<=n-2} c(m)`
    pub lower: f64,
    /// `Σ_{m<=n} c(m)`
    pub upper: usize,
    pub holds: bool,
}

/// Graded filtration sums of the commutator dimensions for `n = 1..=max_n`,
/// with the sandwich `¼ Σ_{m<=n-2} c(m) <= proxy(n) <= Σ_{m<=n} c(m)`.
pub fn lie_growth_proxy(
    alg: &MonomialAlgebra,
    max_n: usize,
    field: FieldDescriptor,
    exec: Exec,
) -> Result<Vec<ProxyRow>> {
    if max_n > alg.horizon() {
        return Err(Error::Horizon { requested: max_n, horizon: alg.horizon() });
    }
    let dims = commutator_dims(alg, max_n, field, exec)?;
    let c = alg.language().complexities();
    let mut rows = Vec::with_capacity(max_n);
    let mut proxy = 0;
    for n in 1..=max_n {
        if n >= 3 {
            proxy += dims[n - 1];
        }
        let below: usize = c[..n.saturating_sub(2)].iter().sum();
        let upper: usize = c[..n].iter().sum();
        rows.push(ProxyRow { n, proxy, lower: below as f64 / 4.0, upper, holds: 4 * proxy >= below && proxy <= upper });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{factor_language, library, WordSource};

    fn alg(src: WordSource, n: usize) -> MonomialAlgebra {
        MonomialAlgebra::new(factor_language(&src, n, 10_000).unwrap())
    }

    #[test]
    fn fibonacci_degree_five() {
        let a = alg(library::fibonacci(), 12);
        let v = commutator_dim(&a, 5, FieldDescriptor::Rationals).unwrap();
        assert!(v >= 1);
        assert!(v <= a.dim_component(5).unwrap());
    }

    #[test]
    fn rows_are_antisymmetric() {
        let a = alg(library::thue_morse(), 8);
        let p = CommutatorRankProblem::build(&a, 6).unwrap();
        for (u, v, r) in &p.rows {
            let (_, _, s) = p.rows.iter().find(|(x, y, _)| x == v && y == u).unwrap();
            let neg: Vec<(usize, i64)> = r.iter().map(|&(i, x)| (i, -x)).collect();
            let mut s = s.clone();
            s.sort_unstable();
            let mut neg = neg;
            neg.sort_unstable();
            assert_eq!(s, neg);
        }
        assert_eq!(p.rank(FieldDescriptor::Rationals).unwrap(), p.rank_half(FieldDescriptor::Rationals).unwrap());
    }

    #[test]
    fn prime_field_agrees_on_periodic_word() {
        let a = alg(library::periodic_01(), 6);
        let q = commutator_dim(&a, 4, FieldDescriptor::Rationals).unwrap();
        let p = commutator_dim(&a, 4, FieldDescriptor::Prime(32003)).unwrap();
        assert_eq!(p, q);
        assert!(matches!(commutator_dim(&a, 4, FieldDescriptor::Prime(2)), Err(Error::Characteristic(_))));
    }

    #[test]
    fn quarter_bound_reports() {
        let a = alg(library::fibonacci(), 12);
        for n in 3..=12 {
            let r = verify_quarter_bound(&a, n, FieldDescriptor::Rationals).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.half_holds);
            assert!(r.chosen_j.is_some());
        }
        assert!(verify_quarter_bound(&a, 2, FieldDescriptor::Rationals).is_err());
    }

    #[test]
    fn proxy_sandwich() {
        let a = alg(library::thue_morse(), 9);
        let rows = lie_growth_proxy(&a, 9, FieldDescriptor::Rationals, Exec::Sequential).unwrap();
        assert!(rows.iter().all(|r| r.holds));
        assert_eq!(rows[1].proxy, 0);
    }
}
