use serde::Serialize;

use super::{eps, GrowthSeries};
use crate::error::{Error, Result};
use crate::real::Real;

pub const DEFAULT_CMAX: u64 = 64;
pub const DEFAULT_DMAX: u64 = 64;

/// Lexicographically least `(C, D)` with `f(n) <= C g(Dn)` for every sample
/// point `n` of `f` in `lo..=hi`, searching `C, D <= 64`.
pub fn preceq_witness(f: &GrowthSeries, g: &GrowthSeries, lo: u64, hi: u64) -> Result<Option<(u64, u64)>> {
    preceq_witness_with(f, g, DEFAULT_CMAX, DEFAULT_DMAX, lo, hi)
}

/// [`preceq_witness`] with explicit bounds. `None` means no pair within the
/// bounds works on the sampled range, which is evidence and not proof.
/// Fails when the search reaches a `D` for which `g(Dn)` is unknown.
pub fn preceq_witness_with(
    f: &GrowthSeries,
    g: &GrowthSeries,
    cmax: u64,
    dmax: u64,
    lo: u64,
    hi: u64,
) -> Result<Option<(u64, u64)>> {
    if cmax == 0 || dmax == 0 {
        return Err(Error::Argument("C and D bounds must be positive".into()));
    }
    let points = f.points_in(lo, hi);
    if points.is_empty() {
        return Err(Error::InsufficientSamples(format!("{} has no samples in {lo}..={hi}", f.label)));
    }
    let fl: Vec<Real> = points.iter().map(|&n| f.ln_at(n).expect("sample point")).collect();
    // worst(D) = max_n (ln f(n) − ln g(Dn)), computed when the search first needs it
    let mut worst: Vec<Option<Real>> = vec![None; dmax as usize];
    let mut worst_at = |d: u64| -> Result<Real> {
        if let Some(w) = &worst[d as usize - 1] {
            return Ok(w.clone());
        }
        let mut m: Option<Real> = None;
        for (&n, lf) in points.iter().zip(&fl) {
            let dn = n.checked_mul(d).ok_or_else(|| Error::Argument(format!("{d}·{n} overflows")))?;
            let lg = g
                .ln_at(dn)
                .ok_or_else(|| Error::InsufficientSamples(format!("{} undefined at {d}·{n} = {dn}", g.label)))?;
            let diff = lf - &lg;
            m = Some(match m {
                Some(x) => x.max(diff),
                None => diff,
            });
        }
        let m = m.expect("nonempty points");
        worst[d as usize - 1] = Some(m.clone());
        Ok(m)
    };
    let e = eps();
    for c in 1..=cmax {
        let budget = &Real::from_u64(c).ln() + &e;
        for d in 1..=dmax {
            if worst_at(d)? <= budget {
                return Ok(Some((c, d)));
            }
        }
    }
    Ok(None)
}

/// A failed instance of `f(m+n) <= f(m) f(n)` (or of the dyadic variant,
/// where `m = n = 2^k`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub m: u64,
    pub n: u64,
    /// `ln f(m+n)`
    pub ln_lhs: f64,
    /// `ln f(m) + ln f(n)`
    pub ln_rhs: f64,
}

/// Every sampled pair `lo <= m <= n` with `m + n <= hi` where
/// `f(m+n) > f(m) f(n)`.
pub fn check_submultiplicative(f: &GrowthSeries, lo: u64, hi: u64) -> Vec<Violation> {
    let lo = lo.max(1);
    let e = eps();
    let vals: Vec<(u64, Real)> = (lo..=hi).filter_map(|n| f.ln_at(n).map(|l| (n, l))).collect();
    let lookup = |n: u64| vals.binary_search_by_key(&n, |(k, _)| *k).ok().map(|i| &vals[i].1);
    let mut out = Vec::new();
    for (i, (m, lm)) in vals.iter().enumerate() {
        for (n, ln) in &vals[i..] {
            let Some(s) = m.checked_add(*n).filter(|&s| s <= hi) else {
                break;
            };
            let Some(ls) = lookup(s) else {
                continue;
            };
            let rhs = lm + ln;
            if ls > &(&rhs + &e) {
                out.push(Violation { m: *m, n: *n, ln_lhs: ls.to_f64(), ln_rhs: rhs.to_f64() });
            }
        }
    }
    out
}

/// Failures of `f(2^{k+1}) <= f(2^k)^2` over consecutive dyadic samples.
pub fn check_dyadic_submultiplicative(f: &GrowthSeries) -> Vec<Violation> {
    let e = eps();
    f.points()
        .into_iter()
        .filter(|n| n.is_power_of_two())
        .filter_map(|n| {
            let lhs = f.ln_at(n.checked_mul(2)?)?;
            let l = f.ln_at(n)?;
            let rhs = &l + &l;
            (lhs > &rhs + &e).then(|| Violation { m: n, n, ln_lhs: lhs.to_f64(), ln_rhs: rhs.to_f64() })
        })
        .collect()
}
