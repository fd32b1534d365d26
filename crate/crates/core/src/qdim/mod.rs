//! The hierarchy `Φ_α^q` of comparison functions and q-dimension estimates.
//!
//! ```text
//! Φ_α^1(n) = α
//! Φ_α^2(n) = n^α
//! Φ_α^3(n) = exp(n^{α/(α+1)})
//! Φ_α^q(n) = exp(n / (ln^{(q-3)} n)^{1/α})      q >= 4
//! ```
//!
//! Arguments `n` are [`Real`]s so that grids can run far past `2^64`.

mod corollary;
mod estimate;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::real::Real;

pub use corollary::{
    separating_grid, verify_corollaries, verify_corollary_61, verify_corollary_62, Cor61Report, Cor62Report,
    CorollaryReport, LayerTrace, Link,
};
pub use estimate::{
    dim_estimate, dim_estimate_series, formula_trace, DimEstimate, TracePoint, DEFAULT_TAIL, MIN_TAIL_SAMPLES,
};

/// `ln^{(k)} n`; every intermediate value must be positive.
pub fn iter_log(k: u32, n: &Real) -> Result<Real> {
    let mut x = n.clone();
    for i in 0..k {
        if !x.is_positive() {
            return Err(Error::Domain(format!("ln^({i}) n = {x} is not positive")));
        }
        x = x.ln();
    }
    if k > 0 && !x.is_positive() {
        return Err(Error::Domain(format!("ln^({k}) n = {x} is not positive")));
    }
    Ok(x)
}

/// Smallest admissible integer argument: 2 for `q <= 3`, otherwise the
/// smallest `n` with `ln^{(q-3)} n > 1`.
pub fn n_min(q: u32) -> Result<Real> {
    if q == 0 {
        return Err(Error::Argument("levels start at q = 1".into()));
    }
    if q <= 3 {
        return Ok(Real::from_u64(2));
    }
    // ln^{(k)} n > 1  ⇔  n > exp^{(k)}(1)
    let mut x = Real::one();
    for _ in 0..q - 3 {
        x = x.exp();
    }
    Ok(&x.floor() + &Real::one())
}

fn check_domain(q: u32, alpha: &Real, n: &Real) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::Domain(format!("α = {alpha} must be positive")));
    }
    if q == 0 {
        return Err(Error::Argument("levels start at q = 1".into()));
    }
    if n < &n_min(q)? {
        return Err(Error::Domain(format!("n = {n} is below n_min({q})")));
    }
    Ok(())
}

/// `ln Φ_α^q(n)`.
pub fn phi_ln(q: u32, alpha: &Real, n: &Real) -> Result<Real> {
    check_domain(q, alpha, n)?;
    Ok(match q {
        1 => alpha.ln(),
        2 => alpha * &n.ln(),
        3 => {
            let e = alpha / &(alpha + &Real::one());
            n.powf(&e)
        }
        _ => {
            let l = iter_log(q - 3, n)?;
            n / &l.powf(&(&Real::one() / alpha))
        }
    })
}

/// `Φ_α^q(n)`; may be astronomically large.
pub fn phi(q: u32, alpha: &Real, n: &Real) -> Result<Real> {
    Ok(phi_ln(q, alpha, n)?.exp())
}

/// `ln φ_α^q(n) = ln ⌈Φ_α^q(n)⌉`.
pub fn phi_ceil_ln(q: u32, alpha: &Real, n: &Real) -> Result<Real> {
    let l = phi_ln(q, alpha, n)?;
    Ok(if l < Real::from_f64(88.0) { l.exp().ceil().ln() } else { l })
}

/// `ln f_q(n)` for the functions separating level `q` from level `q+1`.
///
/// `q = 2` is `n^{ln n}`. For `q >= 3` the default is
/// `f_q(n) = exp(n / (ln^{(q-2)} n)^{ln^{(q-1)} n})`, which has `Dim^q = ∞`
/// and `Dim^{q+1} = 0`. With `literal` the exponent is `ln n` instead; that
/// function tends to 1 (its `ln f_q` is `n^{1 - ln ln^{(q-2)} n}`-like) and is
/// kept only for comparison.
pub fn separating_ln(q: u32, n: &Real, literal: bool) -> Result<Real> {
    if q < 2 {
        return Err(Error::Argument("separating examples start at q = 2".into()));
    }
    let l1 = iter_log(1, n)?;
    if q == 2 {
        return Ok(&l1 * &l1);
    }
    let base = iter_log(q - 2, n)?;
    let exponent = if literal { l1.clone() } else { iter_log(q - 1, n)? };
    // n / base^exponent, evaluated through logs
    Ok((&l1 - &(&exponent * &base.ln())).exp())
}

/// `α̂`: the `α` with `Φ_α^q(n) = f(n)`, or a signal that `f(n)` lies
/// outside the range of the level.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaHat {
    Value(Real),
    /// `f(n)` at or above every `Φ_α^q(n)`: `α̂ = +∞`.
    AboveLayer,
    /// `f(n)` at or below every `Φ_α^q(n)`: `α̂ = 0`.
    BelowLayer,
}

impl AlphaHat {
    /// `+∞` and `0` for the signals.
    pub fn to_f64(&self) -> f64 {
        match self {
            AlphaHat::Value(v) => v.to_f64(),
            AlphaHat::AboveLayer => f64::INFINITY,
            AlphaHat::BelowLayer => 0.0,
        }
    }

    pub fn value(&self) -> Option<&Real> {
        match self {
            AlphaHat::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for AlphaHat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaHat::Value(v) => write!(f, "{}", v.to_f64()),
            AlphaHat::AboveLayer => write!(f, "above-layer"),
            AlphaHat::BelowLayer => write!(f, "below-layer"),
        }
    }
}

impl Serialize for AlphaHat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AlphaHat::Value(v) => s.serialize_f64(v.to_f64()),
            other => s.collect_str(other),
        }
    }
}

/// Inverts `Φ_α^q(n) = f(n)` for `α`, given `ln f(n)`.
pub fn alpha_hat(q: u32, ln_f: &Real, n: &Real) -> Result<AlphaHat> {
    check_domain(q, &Real::one(), n)?;
    let ln_n = n.ln();
    Ok(match q {
        1 => AlphaHat::Value(ln_f.exp()),
        2 => {
            if !ln_f.is_positive() {
                AlphaHat::BelowLayer
            } else {
                AlphaHat::Value(ln_f / &ln_n)
            }
        }
        3 => {
            // Φ ranges over (e, e^n)
            if ln_f <= &Real::one() {
                return Ok(AlphaHat::BelowLayer);
            }
            let r = &ln_f.ln() / &ln_n;
            if r >= Real::one() {
                AlphaHat::AboveLayer
            } else {
                AlphaHat::Value(&r / &(&Real::one() - &r))
            }
        }
        _ => {
            // Φ ranges over (1, e^n)
            if !ln_f.is_positive() {
                return Ok(AlphaHat::BelowLayer);
            }
            if ln_f >= n {
                return Ok(AlphaHat::AboveLayer);
            }
            let l = iter_log(q - 3, n)?;
            AlphaHat::Value(&l.ln() / &(n / ln_f).ln())
        }
    })
}

/// `2^{k0}, 2^{k0+step}, …` up to `2^{k1}`.
pub fn dyadic_reals(k0: i64, k1: i64, step: usize) -> Vec<Real> {
    (k0..=k1).step_by(step.max(1)).map(Real::pow2).collect()
}

/// `exp(exp(s))` for `count` evenly spaced `s` in `[s0, s1]`.
pub fn double_exponential(s0: f64, s1: f64, count: usize) -> Vec<Real> {
    if count < 2 {
        return vec![Real::from_f64(s0).exp().exp()];
    }
    (0..count)
        .map(|i| {
            let s = s0 + (s1 - s0) * i as f64 / (count - 1) as f64;
            Real::from_f64(s).exp().exp()
        })
        .collect()
}
