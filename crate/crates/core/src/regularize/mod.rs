//! Growth functions sampled on finite grids: the preorder `f ≼ g`,
//! submultiplicativity, and the regularizing transform `f ↦ f′`.
//!
//! Values are kept as natural logarithms in [`Real`]s so that series such
//! as `2^n` on a dyadic grid up to `2^30` stay representable. Every
//! comparison allows the slack [`EPSILON`] on the log scale.

mod formula;
mod preorder;
mod transform;

use std::collections::BTreeMap;
use std::io::{Read, Write};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::real::Real;

pub use formula::Formula;
pub use preorder::{
    check_dyadic_submultiplicative, check_submultiplicative, preceq_witness, preceq_witness_with, Violation,
    DEFAULT_CMAX, DEFAULT_DMAX,
};
pub use transform::{
    check_conditions, f_prime, select_t, ConditionTrace, ConditionsReport, ProductTrace, TSelection, DEFAULT_TMAX,
};

/// Comparison slack on the log scale.
pub const EPSILON: f64 = 1e-9;

pub(crate) fn eps() -> Real {
    Real::from_f64(EPSILON)
}

/// One sampled value.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// `ln f(n)`
    pub ln: Real,
    /// The exact value when the series is integer-valued and known exactly.
    pub exact: Option<BigUint>,
}

/// A positive function sampled at finitely many `n >= 1`, optionally backed
/// by a closed form that answers lookups off the sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSeries {
    pub label: String,
    samples: BTreeMap<u64, Sample>,
    formula: Option<Formula>,
    /// Set on the output of [`f_prime`].
    pub transform_t: Option<usize>,
}

fn ln_of_biguint(x: &BigUint) -> Real {
    Real::parse(&x.to_string()).expect("decimal integer").ln()
}

impl GrowthSeries {
    pub fn empty(label: impl Into<String>) -> Self {
        GrowthSeries { label: label.into(), samples: BTreeMap::new(), formula: None, transform_t: None }
    }

    /// Exact integer samples; zero values are rejected.
    pub fn from_integers<I, V>(label: impl Into<String>, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, V)>,
        V: Into<BigUint>,
    {
        let mut s = GrowthSeries::empty(label);
        for (n, v) in values {
            s.insert_exact(n, v.into())?;
        }
        Ok(s)
    }

    /// Samples given by their natural logarithms.
    pub fn from_ln<I>(label: impl Into<String>, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Real)>,
    {
        let mut s = GrowthSeries::empty(label);
        for (n, ln) in values {
            s.insert_ln(n, ln)?;
        }
        Ok(s)
    }

    /// A closed form evaluated at `points`; other points are computed on demand.
    pub fn from_formula(formula: Formula, points: &[u64]) -> Result<Self> {
        let mut s = GrowthSeries::empty(formula.name());
        for &n in points {
            let ln = formula.ln_eval(&Real::from_u64(n))?;
            s.insert_ln(n, ln)?;
        }
        s.formula = Some(formula);
        Ok(s)
    }

    fn check_point(n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::Argument("sample points start at n = 1".into()));
        }
        Ok(())
    }

    pub fn insert_exact(&mut self, n: u64, v: BigUint) -> Result<()> {
        Self::check_point(n)?;
        if v.is_zero() {
            return Err(Error::Argument(format!("growth value at n = {n} must be positive")));
        }
        let ln = ln_of_biguint(&v);
        self.samples.insert(n, Sample { ln, exact: Some(v) });
        Ok(())
    }

    pub fn insert_ln(&mut self, n: u64, ln: Real) -> Result<()> {
        Self::check_point(n)?;
        if !ln.is_finite() {
            return Err(Error::Argument(format!("non-finite value at n = {n}")));
        }
        self.samples.insert(n, Sample { ln, exact: None });
        Ok(())
    }

    pub fn formula(&self) -> Option<&Formula> {
        self.formula.as_ref()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sorted sample points.
    pub fn points(&self) -> Vec<u64> {
        self.samples.keys().copied().collect()
    }

    pub fn points_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        self.samples.range(lo..=hi).map(|(&n, _)| n).collect()
    }

    pub fn sample(&self, n: u64) -> Option<&Sample> {
        self.samples.get(&n)
    }

    /// `ln f(n)` from the samples or the closed form.
    pub fn ln_at(&self, n: u64) -> Option<Real> {
        if let Some(s) = self.samples.get(&n) {
            return Some(s.ln.clone());
        }
        let f = self.formula.as_ref()?;
        f.ln_eval(&Real::from_u64(n)).ok()
    }

    pub fn is_defined(&self, n: u64) -> bool {
        self.samples.contains_key(&n) || self.formula.as_ref().is_some_and(|f| f.ln_eval(&Real::from_u64(n)).is_ok())
    }

    /// `f(n) <= f(n')` for consecutive sample points, up to the slack.
    pub fn is_increasing(&self) -> bool {
        let e = eps();
        let vals: Vec<&Real> = self.samples.values().map(|s| &s.ln).collect();
        vals.windows(2).all(|w| w[0] <= &(w[1] + &e))
    }

    /// `(n, ln f(n))` pairs in order.
    pub fn ln_trace(&self) -> Vec<(u64, Real)> {
        self.samples.iter().map(|(&n, s)| (n, s.ln.clone())).collect()
    }

    /// CSV with columns `n,value,ln_value`. `value` is exact for integer
    /// samples and a rounded float otherwise; `ln_value` carries the full
    /// precision.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "value", "ln_value"])?;
        for (n, s) in &self.samples {
            let value = match &s.exact {
                Some(v) => v.to_string(),
                None => format!("{:e}", s.ln.exp().to_f64()),
            };
            out.write_record([n.to_string(), value, s.ln.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads `n,value` or `n,value,ln_value`, with a header row; lines
    /// starting with `#` are skipped. Integer values are kept exact;
    /// `ln_value`, when present and nonempty, wins over a non-integer `value`.
    pub fn read_csv<R: Read>(label: impl Into<String>, r: R) -> Result<Self> {
        let mut rdr =
            csv::ReaderBuilder::new().has_headers(true).comment(Some(b'#')).trim(csv::Trim::All).from_reader(r);
        let mut s = GrowthSeries::empty(label);
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            let n: u64 =
                rec.get(0).and_then(|x| x.parse().ok()).ok_or_else(|| Error::Parse(format!("line {line}: bad n")))?;
            let value = rec.get(1).unwrap_or("");
            if let Ok(v) = value.parse::<BigUint>() {
                s.insert_exact(n, v)?;
                continue;
            }
            let ln = match rec.get(2).filter(|x| !x.is_empty()) {
                Some(lv) => Real::parse(lv).ok_or_else(|| Error::Parse(format!("line {line}: bad ln_value")))?,
                None => {
                    let v = Real::parse(value).ok_or_else(|| Error::Parse(format!("line {line}: bad value")))?;
                    if !v.is_positive() {
                        return Err(Error::Parse(format!("line {line}: value must be positive")));
                    }
                    v.ln()
                }
            };
            s.insert_ln(n, ln)?;
        }
        if s.is_empty() {
            return Err(Error::InsufficientSamples("series file has no rows".into()));
        }
        Ok(s)
    }
}

/// Index of the first point of the shortest tail on which every predicate
/// holds, provided that tail starts within the first half of the points.
pub(crate) fn tail_onset(holds: &[bool]) -> Option<usize> {
    let start = holds.iter().rposition(|h| !h).map_or(0, |i| i + 1);
    (start < holds.len() && 2 * start <= holds.len()).then_some(start)
}

/// `lo, lo+1, …, hi` (starting at 1 at the earliest).
pub fn dense_grid(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(1)..=hi).collect()
}

/// `2^k0, …, 2^k1`.
pub fn dyadic_grid(k0: u32, k1: u32) -> Vec<u64> {
    (k0..=k1).map(|k| 1u64 << k).collect()
}
