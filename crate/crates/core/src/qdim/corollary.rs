//! Grid checks of the doubling inequality `φ_σ^q(2n) >= n φ_σ^q(n)` and of the
//! functions separating consecutive levels.

use serde::Serialize;

use super::estimate::{dim_estimate, formula_trace, TracePoint, DEFAULT_TAIL};
use super::{double_exponential, dyadic_reals, iter_log, n_min, phi_ceil_ln, phi_ln, separating_ln};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::real::Real;
use crate::regularize::{Formula, EPSILON};

/// One inequality checked pointwise on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Link {
    pub name: String,
    /// `log2 n` of the first tail point from which the inequality holds.
    pub onset_log2_n: Option<f64>,
    pub onset_index: Option<usize>,
    /// Smallest log-scale margin on that tail.
    pub worst_tail_margin: Option<f64>,
    pub points: usize,
}

impl Link {
    fn new(name: &str, grid: &[Real], margins: &[Real]) -> Link {
        let neg_e = Real::from_f64(-EPSILON);
        let holds: Vec<bool> = margins.iter().map(|m| m >= &neg_e).collect();
        let start = holds.iter().rposition(|h| !h).map_or(0, |i| i + 1);
        let onset = (start < holds.len() && 2 * start <= holds.len()).then_some(start);
        Link {
            name: name.to_string(),
            onset_log2_n: onset.map(|i| log2(&grid[i])),
            onset_index: onset,
            worst_tail_margin: onset.map(|i| margins[i..].iter().cloned().reduce(Real::min).expect("tail").to_f64()),
            points: margins.len(),
        }
    }

    pub fn holds(&self) -> bool {
        self.onset_index.is_some()
    }
}

fn log2(n: &Real) -> f64 {
    (&n.ln() / &Real::ln2()).to_f64()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cor61Report {
    pub q: u32,
    pub sigma: f64,
    pub increasing: Link,
    /// `φ(m+n) <= φ(m) φ(n)` over grid pairs `m <= n`, attributed to `n`.
    pub submultiplicative: Link,
    /// `φ(2n) >= n φ(n)`
    pub doubling: Link,
    /// The intermediate inequalities of the argument.
    pub steps: Vec<Link>,
}

/// Checks `φ_σ^q = ⌈Φ_σ^q⌉` on `grid` (ascending, `q >= 3`).
pub fn verify_corollary_61(q: u32, sigma: f64, grid: &[Real], exec: Exec) -> Result<Cor61Report> {
    if q < 3 {
        return Err(Error::Argument("the doubling inequality is checked for q >= 3".into()));
    }
    let s = Real::from_f64(sigma);
    let nmin = n_min(q)?;
    let grid: Vec<Real> = grid.iter().filter(|n| *n >= &nmin).cloned().collect();
    if grid.len() < 2 {
        return Err(Error::InsufficientSamples("grid has fewer than two admissible points".into()));
    }
    let two = Real::from_u64(2);
    let ln_phi = |n: &Real| phi_ceil_ln(q, &s, n);
    let at: Vec<Real> = par::map(exec, &grid, ln_phi).into_iter().collect::<Result<_>>()?;
    let at2: Vec<Real> = par::map(exec, &grid, |n| ln_phi(&(n * &two))).into_iter().collect::<Result<_>>()?;

    let inc: Vec<Real> = std::iter::once(Real::zero()).chain(at.windows(2).map(|w| &w[1] - &w[0])).collect();
    let sub: Vec<Real> = par::map_range(exec, 0..grid.len(), |j| -> Result<Real> {
        let mut worst: Option<Real> = None;
        for i in 0..=j {
            let m = &(&at[i] + &at[j]) - &ln_phi(&(&grid[i] + &grid[j]))?;
            worst = Some(worst.map_or(m.clone(), |w| w.min(m)));
        }
        Ok(worst.expect("i = j term"))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let dbl: Vec<Real> = grid.iter().zip(at.iter().zip(&at2)).map(|(n, (a, a2))| &(a2 - a) - &n.ln()).collect();

    let beta = &s / &(&s + &Real::one());
    let ln2 = Real::ln2();
    let steps = if q == 3 {
        let two_beta = (&beta * &ln2).exp();
        let step1: Vec<Real> = grid.iter().zip(&at2).map(|(n, a2)| a2 - &(&two_beta * &n.powf(&beta))).collect();
        let c = &two_beta - &(&Real::one() + &(&beta * &ln2));
        let step2: Vec<Real> = grid.iter().map(|_| c.clone()).collect();
        let step3: Vec<Real> = grid.iter().map(|n| &(&(&beta * &ln2) * &n.powf(&beta)) - &n.ln()).collect();
        vec![
            Link::new("phi(2n) >= exp(2^b n^b)", &grid, &step1),
            Link::new("2^b >= 1 + b ln 2", &grid, &step2),
            Link::new("b ln2 n^b >= ln n", &grid, &step3),
        ]
    } else {
        let e = &Real::one() / &s;
        let mut step1 = Vec::with_capacity(grid.len());
        let mut step2 = Vec::with_capacity(grid.len());
        let mut step3 = Vec::with_capacity(grid.len());
        for n in &grid {
            let n2 = n * &two;
            let gap = &phi_ln(q, &s, &n2)? - &phi_ln(q, &s, n)?;
            let lower = n / &iter_log(q - 3, &n2)?.powf(&e);
            step1.push(&gap - &lower);
            step2.push(&lower - &n.sqrt());
            step3.push(&n.sqrt() - &n2.ln());
        }
        vec![
            Link::new("ln Phi(2n) - ln Phi(n) >= n / L(2n)^(1/s)", &grid, &step1),
            Link::new("n / L(2n)^(1/s) >= sqrt n", &grid, &step2),
            Link::new("sqrt n >= ln 2n", &grid, &step3),
        ]
    };
    Ok(Cor61Report {
        q,
        sigma,
        increasing: Link::new("increasing", &grid, &inc),
        submultiplicative: Link::new("submultiplicative", &grid, &sub),
        doubling: Link::new("phi(2n) >= n phi(n)", &grid, &dbl),
        steps,
    })
}

/// `α̂` of one function at one level along a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerTrace {
    pub level: u32,
    pub trace: Vec<TracePoint>,
    pub tail_start: usize,
    /// Nondecreasing on the tail with a strictly larger last value.
    pub diverging: bool,
    /// Nonincreasing on the tail with a strictly smaller last value.
    pub vanishing: bool,
    pub dim: f64,
    pub dimsup: f64,
}

impl LayerTrace {
    fn build(level: u32, samples: &[(Real, Real)], exec: Exec) -> Result<LayerTrace> {
        let d = dim_estimate(level, samples, DEFAULT_TAIL, exec)?;
        let vals: Vec<f64> = d.trace[d.tail_start..].iter().map(|p| p.alpha.to_f64()).collect();
        let tol = |a: f64| 1e-12 * a.abs().max(1.0);
        let nondecreasing = vals.windows(2).all(|w| w[1] >= w[0] - tol(w[0]));
        let nonincreasing = vals.windows(2).all(|w| w[1] <= w[0] + tol(w[0]));
        let (first, last) = (vals[0], *vals.last().expect("tail"));
        Ok(LayerTrace {
            level,
            tail_start: d.tail_start,
            diverging: nondecreasing && last > first,
            vanishing: nonincreasing && last < first,
            dim: d.dim,
            dimsup: d.dimsup,
            trace: d.trace,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cor62Report {
    pub q: u32,
    pub literal: bool,
    pub formula: String,
    /// `α̂` at level `q`; expected to diverge.
    pub level_q: LayerTrace,
    /// `α̂` at level `q+1`; expected to vanish.
    pub level_next: LayerTrace,
    /// `f_q(2n) >= n f_q(n)`
    pub doubling: Link,
}

/// Default grids for the separating functions: dyadic up to `2^4400` for
/// `q <= 3`, and `exp(exp(s))` with `s` up to 20.5 above that, which keeps
/// `ln ln n` past `e^2` on the tail.
pub fn separating_grid(q: u32) -> Vec<Real> {
    if q <= 3 {
        dyadic_reals(4, 4400, 8)
    } else {
        double_exponential(1.2, 20.5, 80)
    }
}

/// Traces `α̂` of the level-`q` separating function at levels `q` and `q+1`.
pub fn verify_corollary_62(q: u32, grid: &[Real], literal: bool, exec: Exec) -> Result<Cor62Report> {
    let formula = Formula::Separating { q, literal };
    let nmin = n_min(q + 1)?;
    let grid: Vec<Real> = grid.iter().filter(|n| *n >= &nmin).cloned().collect();
    let samples = formula_trace(&formula, &grid, exec)?;
    let doubled = par::map(exec, &grid, |n| separating_ln(q, &(n * &Real::from_u64(2)), literal))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let dbl: Vec<Real> = samples.iter().zip(&doubled).map(|((n, l), l2)| &(l2 - l) - &n.ln()).collect();
    Ok(Cor62Report {
        q,
        literal,
        formula: formula.to_string(),
        level_q: LayerTrace::build(q, &samples, exec)?,
        level_next: LayerTrace::build(q + 1, &samples, exec)?,
        doubling: Link::new("f(2n) >= n f(n)", &grid, &dbl),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub cor61: Option<Cor61Report>,
    pub cor62: Option<Cor62Report>,
}

/// Both checks where they apply: the doubling inequality for `q >= 3` on
/// `grid`, and the separating function for `q >= 2` on its default grid.
pub fn verify_corollaries(q: u32, sigma: f64, grid: &[Real], exec: Exec) -> Result<CorollaryReport> {
    let cor61 = if q >= 3 { Some(verify_corollary_61(q, sigma, grid, exec)?) } else { None };
    let cor62 = if q >= 2 { Some(verify_corollary_62(q, &separating_grid(q), false, exec)?) } else { None };
    Ok(CorollaryReport { cor61, cor62 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_q4() {
        let r = verify_corollary_61(4, 0.5, &dyadic_reals(1, 24, 1), Exec::Sequential).unwrap();
        assert!(r.doubling.holds(), "{:?}", r.doubling);
        assert!(r.increasing.holds());
    }

    #[test]
    fn doubling_q3_steps() {
        let r = verify_corollary_61(3, 0.9, &dyadic_reals(1, 24, 1), Exec::Sequential).unwrap();
        assert!(r.doubling.holds());
        assert!(r.steps.iter().all(Link::holds), "{:?}", r.steps);
    }

    #[test]
    fn separating_q3() {
        let r = verify_corollary_62(3, &separating_grid(3), false, Exec::Sequential).unwrap();
        assert!(r.level_q.diverging, "{:?}", r.level_q.dim);
        assert!(r.level_next.vanishing);
        let lit = verify_corollary_62(3, &dyadic_reals(4, 400, 4), true, Exec::Sequential).unwrap();
        assert!(!lit.level_q.diverging);
    }
}
