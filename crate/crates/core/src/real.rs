//! 128-bit binary floating point reals backed by `astro-float`.
//!
//! Growth values such as `2^(2^30)` or `exp(n^{1/2})` at `n = 2^4000` do not fit
//! into `f64`; callers keep them in log space as `Real`s and only convert to
//! `f64` for reporting.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

/// Mantissa precision in bits.
pub const PRECISION: usize = 128;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Self {
        Real(BigFloat::from_u8(0, PRECISION))
    }

    pub fn one() -> Self {
        Real(BigFloat::from_u8(1, PRECISION))
    }

    pub fn from_f64(x: f64) -> Self {
        Real(BigFloat::from_f64(x, PRECISION))
    }

    pub fn from_u64(x: u64) -> Self {
        Real(BigFloat::from_u64(x, PRECISION))
    }

    pub fn from_i64(x: i64) -> Self {
        Real(BigFloat::from_i64(x, PRECISION))
    }

    /// Exact `2^k`.
    pub fn pow2(k: i64) -> Self {
        let two = BigFloat::from_u8(2, PRECISION);
        let p = two.powi(k.unsigned_abs() as usize, PRECISION, RM);
        if k >= 0 {
            Real(p)
        } else {
            Real(BigFloat::from_u8(1, PRECISION).div(&p, PRECISION, RM))
        }
    }

    pub fn ln2() -> Self {
        Real::from_u64(2).ln()
    }

    /// Parses decimal notation, including exponents far outside the `f64` range.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let v = with_consts(|cc| BigFloat::parse(s, astro_float::Radix::Dec, PRECISION, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(Real(v))
        }
    }

    /// Natural logarithm; `-inf` at zero and NaN for negative input.
    pub fn ln(&self) -> Self {
        Real(with_consts(|cc| self.0.ln(PRECISION, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        Real(with_consts(|cc| self.0.exp(PRECISION, RM, cc)))
    }

    /// `self^e` for `self > 0`, computed as `exp(e ln self)`.
    pub fn powf(&self, e: &Real) -> Self {
        (e * &self.ln()).exp()
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(PRECISION, RM))
    }

    pub fn ceil(&self) -> Self {
        Real(self.0.ceil())
    }

    pub fn floor(&self) -> Self {
        Real(self.0.floor())
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_nan() && !self.0.is_zero() && self.0.is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64`; saturates to `±inf` outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _, sign, exponent, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        // value = 0.top... * 2^exponent; fold in the second word for rounding.
        let lower = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
        let mantissa = top as f64 / 18446744073709551616.0 + lower as f64 / 3.402823669209385e38;
        let e = exponent as i64;
        let magnitude = if e > 1025 {
            f64::INFINITY
        } else if e < -1100 {
            0.0
        } else {
            let half = (e / 2) as i32;
            mantissa * 2f64.powi(half) * 2f64.powi(e as i32 - half)
        };
        if matches!(sign, Sign::Neg) {
            -magnitude
        } else {
            magnitude
        }
    }

    /// `ln(Σ exp(x_i))` without leaving log space.
    pub fn log_sum_exp(xs: &[Real]) -> Real {
        let Some(m) = xs.iter().cloned().reduce(Real::max) else {
            return Real::from_f64(f64::NEG_INFINITY);
        };
        let s = xs.iter().fold(Real::zero(), |acc, x| &acc + &(x - &m).exp());
        &m + &s.ln()
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::from_f64(x)
    }
}

impl From<u64> for Real {
    fn from(x: u64) -> Self {
        Real::from_u64(x)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: &'a Real) -> Real {
                Real(self.0.$m(&rhs.0, PRECISION, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                Real(self.0.$m(&rhs.0, PRECISION, RM))
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &'a Real) -> Real {
                Real(self.0.$m(&rhs.0, PRECISION, RM))
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                Real(self.0.$m(&rhs.0, PRECISION, RM))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, 3.0, 0.1, -2.5, 1e300, 1e-300, 123456.789] {
            assert_eq!(Real::from_f64(x).to_f64(), x);
        }
        assert_eq!(Real::zero().to_f64(), 0.0);
        assert_eq!(Real::pow2(5000).to_f64(), f64::INFINITY);
    }

    #[test]
    fn precision_beats_double() {
        // exp(ln 3) recovers 3 far below f64 resolution.
        let three = Real::from_u64(3);
        let err = (&three.ln().exp() - &three).abs();
        assert!(err < Real::pow2(-100), "{err}");
        let x = Real::from_u64(1_000_000);
        let y = (&x.ln() * &Real::from_f64(0.5)).exp();
        assert!((&(&y * &y) - &x).abs() < Real::pow2(-90));
    }

    #[test]
    fn huge_exponents_stay_finite() {
        let n = Real::pow2(4400);
        let l = n.ln();
        let expected = &Real::from_u64(4400) * &Real::ln2();
        assert!((&l - &expected).abs() < Real::pow2(-100));
    }

    #[test]
    fn log_sum_exp_matches_direct() {
        let xs: Vec<Real> = [1.0, 2.0, 3.0].iter().map(|&x| Real::from_f64(x)).collect();
        let direct = (1f64.exp() + 2f64.exp() + 3f64.exp()).ln();
        assert!((Real::log_sum_exp(&xs).to_f64() - direct).abs() < 1e-14);
    }

    #[test]
    fn parse_large() {
        let v = Real::parse("1.5e+4000").unwrap();
        let l = v.ln().to_f64();
        assert!((l - (1.5f64.ln() + 4000.0 * 10f64.ln())).abs() < 1e-9);
        assert!(Real::parse("abc").is_none());
    }
}
