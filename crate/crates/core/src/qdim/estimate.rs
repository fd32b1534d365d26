use serde::Serialize;

use super::{alpha_hat, AlphaHat};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::real::Real;
use crate::regularize::{Formula, GrowthSeries};

/// Default share of the grid used as the tail window.
pub const DEFAULT_TAIL: f64 = 0.5;
pub const MIN_TAIL_SAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    /// `log2 n`
    pub log2_n: f64,
    pub alpha: AlphaHat,
}

/// Finite-sample surrogates for `Dim^q` (tail maximum of `α̂`) and
/// `Dimsup^q` (tail minimum).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimEstimate {
    pub q: u32,
    pub trace: Vec<TracePoint>,
    /// Index of the first trace point in the tail window.
    pub tail_start: usize,
    pub tail_fraction: f64,
    /// `+∞` when some tail point is above the layer.
    pub dim: f64,
    pub dimsup: f64,
}

/// `(n, ln f(n))` for a closed form on a grid.
pub fn formula_trace(formula: &Formula, grid: &[Real], exec: Exec) -> Result<Vec<(Real, Real)>> {
    par::map(exec, grid, |n| formula.ln_eval(n).map(|l| (n.clone(), l))).into_iter().collect()
}

/// Estimates from `(n, ln f(n))` samples. The tail window is the last
/// `⌈fraction · len⌉` samples and must hold at least [`MIN_TAIL_SAMPLES`]
/// points inside the level's domain; points outside it are dropped from the
/// trace.
pub fn dim_estimate(q: u32, samples: &[(Real, Real)], fraction: f64, exec: Exec) -> Result<DimEstimate> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Argument(format!("tail fraction {fraction} not in (0, 1]")));
    }
    let evaluated = par::map(exec, samples, |(n, lf)| match alpha_hat(q, lf, n) {
        Ok(a) => Ok(Some(TracePoint { log2_n: (&n.ln() / &Real::ln2()).to_f64(), alpha: a })),
        Err(Error::Domain(_)) => Ok(None),
        Err(e) => Err(e),
    });
    let evaluated = evaluated.into_iter().collect::<Result<Vec<_>>>()?;
    let window = (fraction * samples.len() as f64).ceil() as usize;
    let valid_before = evaluated[..samples.len() - window].iter().filter(|p| p.is_some()).count();
    let trace: Vec<TracePoint> = evaluated.into_iter().flatten().collect();
    let tail_start = valid_before;
    if trace.len() - tail_start < MIN_TAIL_SAMPLES {
        return Err(Error::InsufficientSamples(format!(
            "tail window has {} valid samples, need {MIN_TAIL_SAMPLES}",
            trace.len() - tail_start
        )));
    }
    let vals: Vec<f64> = trace[tail_start..].iter().map(|p| p.alpha.to_f64()).collect();
    let dim = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let dimsup = vals.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(DimEstimate { q, trace, tail_start, tail_fraction: fraction, dim, dimsup })
}

/// [`dim_estimate`] on the sample points of a series.
pub fn dim_estimate_series(q: u32, series: &GrowthSeries, fraction: f64, exec: Exec) -> Result<DimEstimate> {
    let samples: Vec<(Real, Real)> = series.ln_trace().into_iter().map(|(n, l)| (Real::from_u64(n), l)).collect();
    dim_estimate(q, &samples, fraction, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdim::dyadic_reals;

    #[test]
    fn phi_three_half_recovered() {
        let f = Formula::Phi { q: 3, alpha: 0.5 }.ceil();
        let tr = formula_trace(&f, &dyadic_reals(1, 32, 1), Exec::Sequential).unwrap();
        let d = dim_estimate(3, &tr, DEFAULT_TAIL, Exec::Sequential).unwrap();
        assert!((d.dim - 0.5).abs() < 0.05 && (d.dimsup - 0.5).abs() < 0.05, "{} {}", d.dim, d.dimsup);
        assert!(d.dimsup <= d.dim);
    }

    #[test]
    fn constant_level_one() {
        let s = GrowthSeries::from_formula(Formula::Constant { value: 7.0 }, &(1..=40).collect::<Vec<u64>>()).unwrap();
        let d = dim_estimate_series(1, &s, DEFAULT_TAIL, Exec::Sequential).unwrap();
        assert!((d.dim - 7.0).abs() < 1e-12 && (d.dimsup - 7.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        let tr = formula_trace(&Formula::Power { exponent: 2.0 }, &dyadic_reals(1, 10, 1), Exec::Sequential).unwrap();
        assert!(matches!(dim_estimate(2, &tr, 0.5, Exec::Sequential), Err(Error::InsufficientSamples(_))));
        assert!(dim_estimate(2, &tr, 0.0, Exec::Sequential).is_err());
    }
}
