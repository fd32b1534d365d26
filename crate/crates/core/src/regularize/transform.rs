use serde::Serialize;

use super::{eps, tail_onset, GrowthSeries, EPSILON};
use crate::error::{Error, Result};
use crate::real::Real;

pub const DEFAULT_TMAX: usize = 8;

/// Cauchy tolerance for the partial products of condition (c).
pub const CAUCHY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TSelection {
    pub t: usize,
    /// First sample point of the tail on which `f(2^t n) >= n f(n)` holds.
    pub n0: u64,
    pub points_checked: usize,
}

/// Smallest `t <= tmax` such that `f(2^t n) >= n f(n)` holds for all sampled
/// `n >= n0` in `lo..=hi`, where `n0` lies in the first half of the points.
pub fn select_t(f: &GrowthSeries, lo: u64, hi: u64, tmax: usize) -> Result<TSelection> {
    let e = eps();
    let mut any_points = false;
    for t in 1..=tmax {
        let shift =
            1u64.checked_shl(t as u32).filter(|_| t < 64).ok_or_else(|| Error::Argument("t too large".into()))?;
        let mut pts = Vec::new();
        let mut holds = Vec::new();
        for n in f.points_in(lo, hi) {
            let Some(big) = n.checked_mul(shift).and_then(|m| f.ln_at(m)) else {
                continue;
            };
            let rhs = &Real::from_u64(n).ln() + &f.ln_at(n).expect("sample point");
            pts.push(n);
            holds.push(&big + &e >= rhs);
        }
        if pts.is_empty() {
            continue;
        }
        any_points = true;
        if let Some(i) = tail_onset(&holds) {
            return Ok(TSelection { t, n0: pts[i], points_checked: pts.len() });
        }
    }
    if !any_points {
        return Err(Error::InsufficientSamples(format!("{} has no samples n with f(2^t n) known", f.label)));
    }
    Err(Error::NotEvidenced(format!("f(2^t n) >= n f(n) fails on the tail for every t <= {tmax}")))
}

/// `f′(n) = Σ_{i<t} n^{-i/t} f(2^i n)` at every sample point where all terms
/// are known.
pub fn f_prime(f: &GrowthSeries, t: usize) -> Result<GrowthSeries> {
    if t == 0 {
        return Err(Error::Argument("t must be at least 1".into()));
    }
    let tr = Real::from_u64(t as u64);
    let mut out = GrowthSeries::empty(format!("{}'", f.label));
    out.transform_t = Some(t);
    for n in f.points() {
        let ln_n = Real::from_u64(n).ln();
        let terms: Option<Vec<Real>> = (0..t)
            .map(|i| {
                let m = n.checked_mul(1u64.checked_shl(i as u32)?)?;
                let lf = f.ln_at(m)?;
                Some(&lf - &(&(&Real::from_u64(i as u64) * &ln_n) / &tr))
            })
            .collect();
        if let Some(terms) = terms {
            let v = if terms.len() == 1 { terms[0].clone() } else { Real::log_sum_exp(&terms) };
            out.insert_ln(n, v)?;
        }
    }
    if out.is_empty() {
        return Err(Error::InsufficientSamples(format!("{}: no point has all of f(2^i n), i < {t}", f.label)));
    }
    Ok(out)
}

/// Per-point margins of one condition (positive means it holds).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionTrace {
    pub points: Vec<u64>,
    /// Log-scale margin at each point.
    pub margins: Vec<f64>,
    /// First point of the tail on which the condition holds throughout.
    pub onset: Option<u64>,
    /// Smallest margin on that tail.
    pub worst_tail_margin: Option<f64>,
}

impl ConditionTrace {
    fn from_margins(points: Vec<u64>, margins: Vec<Real>) -> Self {
        let e = eps();
        let neg_e = -&e;
        let holds: Vec<bool> = margins.iter().map(|m| m >= &neg_e).collect();
        let onset_index = tail_onset(&holds);
        let worst =
            onset_index.map(|i| margins[i..].iter().cloned().reduce(Real::min).expect("nonempty tail").to_f64());
        ConditionTrace {
            onset: onset_index.map(|i| points[i]),
            points,
            margins: margins.iter().map(Real::to_f64).collect(),
            worst_tail_margin: worst,
        }
    }

    pub fn holds(&self) -> bool {
        self.onset.is_some()
    }
}

/// Condition (c): the ratios `ρ_k = f′(2^k)/f′(2^{k+1})` and the partial
/// products of `Π (1 + ρ_k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductTrace {
    pub points: Vec<u64>,
    pub ln_ratios: Vec<f64>,
    pub partial_products: Vec<f64>,
    pub increasing: bool,
    /// `max |P_last − P_j|` over the second half of the partial products.
    pub tail_spread: f64,
    pub cauchy_stable: bool,
    /// Largest `ρ_{k+1}/ρ_k` over the second half.
    pub decay_rate: f64,
    /// `ρ_k <= 2 (2^k)^{-1/t}` wherever condition (a) holds at `2^k`.
    pub ratio_bound_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionsReport {
    pub t: usize,
    pub epsilon: f64,
    /// `f′(2n) >= ½ n^{1/t} f′(n)`
    pub a: ConditionTrace,
    /// `f′(2^{k+1}) / f′(2^k)^2 <= 2^{-k/2}`, indexed by `2^k`.
    pub b: ConditionTrace,
    /// `ln` of the largest measured `f′(2^k)^2 / f′(2^{k+1})` lower bound on
    /// the tail of (b), i.e. the realized `β`.
    pub ln_beta: Option<f64>,
    pub c: ProductTrace,
}

/// Evaluates the three conditions on the dyadic sample points of `fp`.
pub fn check_conditions(fp: &GrowthSeries, t: usize) -> Result<ConditionsReport> {
    if t == 0 {
        return Err(Error::Argument("t must be at least 1".into()));
    }
    let grid: Vec<(u64, Real)> =
        fp.points().into_iter().filter(|n| n.is_power_of_two()).filter_map(|n| Some((n, fp.ln_at(n)?))).collect();
    // consecutive pairs (2^k, 2^{k+1})
    let pairs: Vec<(u64, &Real, &Real)> =
        grid.windows(2).filter(|w| w[1].0 == 2 * w[0].0).map(|w| (w[0].0, &w[0].1, &w[1].1)).collect();
    if pairs.len() < 2 {
        return Err(Error::InsufficientSamples("need at least three consecutive dyadic samples".into()));
    }
    let ln2 = Real::ln2();
    let tr = Real::from_u64(t as u64);
    let points: Vec<u64> = pairs.iter().map(|p| p.0).collect();

    let a_margins: Vec<Real> = pairs
        .iter()
        .map(|&(n, l1, l2)| {
            let rhs = &(&(&Real::from_u64(n).ln() / &tr) - &ln2) + l1;
            l2 - &rhs
        })
        .collect();
    let ln_ratios_b: Vec<Real> = pairs.iter().map(|&(_, l1, l2)| &(l2 - l1) - l1).collect();
    let b_margins: Vec<Real> = pairs
        .iter()
        .zip(&ln_ratios_b)
        .map(|(&(n, _, _), r)| {
            let k = Real::from_u64(n.trailing_zeros() as u64);
            &(-&(&(&k * &ln2) / &Real::from_u64(2))) - r
        })
        .collect();
    let a = ConditionTrace::from_margins(points.clone(), a_margins.clone());
    let b = ConditionTrace::from_margins(points.clone(), b_margins);
    let ln_beta = b.onset.map(|n0| {
        let i = points.iter().position(|&p| p == n0).expect("onset is a point");
        -ln_ratios_b[i..].iter().cloned().reduce(Real::max).expect("nonempty").to_f64()
    });

    // condition (c)
    let ln_rho: Vec<Real> = pairs.iter().map(|&(_, l1, l2)| l1 - l2).collect();
    let mut partial = Vec::with_capacity(ln_rho.len());
    let mut p = Real::one();
    for lr in &ln_rho {
        p = &p * &(&Real::one() + &lr.exp());
        partial.push(p.clone());
    }
    let increasing = partial.windows(2).all(|w| w[1] >= w[0]);
    let half = partial.len() / 2;
    let last = partial.last().expect("nonempty").clone();
    let spread = partial[half..].iter().map(|x| (&last - x).abs()).reduce(Real::max).expect("nonempty");
    let decay_rate =
        ln_rho[half..].windows(2).map(|w| (&w[1] - &w[0]).exp().to_f64()).fold(f64::NEG_INFINITY, f64::max);
    let e = eps();
    let ratio_bound_consistent = pairs.iter().zip(&a_margins).zip(&ln_rho).all(|((&(n, _, _), am), lr)| {
        if am < &-&e {
            return true;
        }
        let bound = &ln2 - &(&Real::from_u64(n).ln() / &tr);
        lr <= &(&bound + &e)
    });
    let c = ProductTrace {
        points,
        ln_ratios: ln_rho.iter().map(Real::to_f64).collect(),
        partial_products: partial.iter().map(Real::to_f64).collect(),
        increasing,
        tail_spread: spread.to_f64(),
        cauchy_stable: spread <= Real::from_f64(CAUCHY_TOL),
        decay_rate,
        ratio_bound_consistent,
    };
    Ok(ConditionsReport { t, epsilon: EPSILON, a, b, ln_beta, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularize::{dense_grid, dyadic_grid, preceq_witness, Formula};

    #[test]
    fn select_t_examples() {
        let grid = dyadic_grid(0, 20);
        let f = GrowthSeries::from_formula(Formula::NPowLnN.ceil(), &grid).unwrap();
        let s = select_t(&f, 1, 1 << 20, DEFAULT_TMAX).unwrap();
        assert_eq!(s.t, 1);
        let e = GrowthSeries::from_formula(Formula::Exponential { base: 2.0 }, &dense_grid(1, 40)).unwrap();
        let s = select_t(&e, 1, 40, DEFAULT_TMAX).unwrap();
        assert_eq!((s.t, s.n0), (1, 1));
        let sq = GrowthSeries::from_formula(Formula::Power { exponent: 2.0 }, &dyadic_grid(0, 40)).unwrap();
        assert!(matches!(select_t(&sq, 1, 1 << 40, DEFAULT_TMAX), Err(Error::NotEvidenced(_))));
    }

    #[test]
    fn f_prime_examples() {
        let e = GrowthSeries::from_formula(Formula::Exponential { base: 2.0 }, &[4]).unwrap();
        let fp = f_prime(&e, 2).unwrap();
        assert!((fp.ln_at(4).unwrap().to_f64() - 144f64.ln()).abs() < 1e-12);
        let f = GrowthSeries::from_formula(Formula::NPowLnN.ceil(), &dyadic_grid(0, 16)).unwrap();
        let f1 = f_prime(&f, 1).unwrap();
        for n in f.points() {
            assert_eq!(f1.ln_at(n), f.ln_at(n));
        }
        assert_eq!(preceq_witness(&f, &f1, 1, 1 << 16).unwrap(), Some((1, 1)));
        assert!(f_prime(&f, 0).is_err());
    }

    #[test]
    fn conditions_for_n_pow_ln_n() {
        let f = GrowthSeries::from_formula(Formula::NPowLnN.ceil(), &dyadic_grid(0, 30)).unwrap();
        let fp = f_prime(&f, 1).unwrap();
        let r = check_conditions(&fp, 1).unwrap();
        assert!(r.a.onset.unwrap() <= 64);
        assert!(r.b.holds());
        assert!(r.c.cauchy_stable, "{}", r.c.tail_spread);
        assert!(r.c.increasing && r.c.ratio_bound_consistent);
    }

    #[test]
    fn conditions_can_fail() {
        let e = GrowthSeries::from_formula(Formula::Exponential { base: 2.0 }, &dyadic_grid(0, 12)).unwrap();
        let r = check_conditions(&e, 1).unwrap();
        // ratio f(2^{k+1}) / f(2^k)^2 = 1 never decays
        assert!(!r.b.holds());
        let c = GrowthSeries::from_formula(Formula::Constant { value: 5.0 }, &dyadic_grid(0, 12)).unwrap();
        let r = check_conditions(&c, 1).unwrap();
        assert!(!r.a.holds());
    }
}
