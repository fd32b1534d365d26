//! Grid notation shared by the subcommands.
//!
//! * `dyadic:k0:k1[:step]`: `2^k0, 2^{k0+step}, …, 2^k1`
//! * `dense:lo:hi`: every integer in `lo..=hi`
//! * `double-exp:s0:s1:count`: `exp(exp(s))` for `count` equally spaced `s`

use liegrowth::qdim::{double_exponential, dyadic_reals};
use liegrowth::regularize::{dense_grid, dyadic_grid};
use liegrowth::Real;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Dyadic { k0: i64, k1: i64, step: usize },
    Dense { lo: u64, hi: u64 },
    DoubleExp { s0: f64, s1: f64, count: usize },
}

fn bad(s: &str) -> CliError {
    CliError::Validation(format!("bad grid {s:?}; use dyadic:k0:k1[:step], dense:lo:hi or double-exp:s0:s1:count"))
}

impl std::str::FromStr for GridSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let int = |x: &str| x.parse::<i64>().map_err(|_| bad(s));
        let uint = |x: &str| x.parse::<u64>().map_err(|_| bad(s));
        let float = |x: &str| x.parse::<f64>().map_err(|_| bad(s));
        let g = match parts.as_slice() {
            ["dyadic", a, b] => GridSpec::Dyadic { k0: int(a)?, k1: int(b)?, step: 1 },
            ["dyadic", a, b, c] => GridSpec::Dyadic { k0: int(a)?, k1: int(b)?, step: uint(c)? as usize },
            ["dense", a, b] => GridSpec::Dense { lo: uint(a)?, hi: uint(b)? },
            ["double-exp", a, b, c] => GridSpec::DoubleExp { s0: float(a)?, s1: float(b)?, count: uint(c)? as usize },
            _ => return Err(bad(s)),
        };
        match g {
            GridSpec::Dyadic { k0, k1, step } if k0 > k1 || step == 0 => Err(bad(s)),
            GridSpec::Dense { lo, hi } if lo > hi => Err(bad(s)),
            GridSpec::DoubleExp { s0, s1, count }
                if s0.partial_cmp(&s1) != Some(std::cmp::Ordering::Less) || count < 2 =>
            {
                Err(bad(s))
            }
            g => Ok(g),
        }
    }
}

impl GridSpec {
    pub fn reals(&self) -> Vec<Real> {
        match *self {
            GridSpec::Dyadic { k0, k1, step } => dyadic_reals(k0, k1, step),
            GridSpec::Dense { lo, hi } => (lo.max(1)..=hi).map(Real::from_u64).collect(),
            GridSpec::DoubleExp { s0, s1, count } => double_exponential(s0, s1, count),
        }
    }

    /// Integer sample points, for the growth-series commands.
    pub fn integers(&self) -> CliResult<Vec<u64>> {
        match *self {
            GridSpec::Dyadic { k0, k1, step } => {
                if k0 < 0 || k1 > 62 {
                    return Err(CliError::Validation("integer dyadic grids need 0 <= k <= 62".into()));
                }
                Ok(dyadic_grid(k0 as u32, k1 as u32).into_iter().step_by(step).collect())
            }
            GridSpec::Dense { lo, hi } => Ok(dense_grid(lo, hi)),
            GridSpec::DoubleExp { .. } => Err(CliError::Validation("double-exp grids are not integer grids".into())),
        }
    }
}
