use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qdim;
use crate::real::Real;

/// Closed-form growth functions, evaluated in log space.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    /// `n^a`
    Power { exponent: f64 },
    /// `b^n`
    Exponential { base: f64 },
    /// `n^{ln n}`
    NPowLnN,
    /// `c`
    Constant { value: f64 },
    /// `Φ_α^q(n)`
    Phi { q: u32, alpha: f64 },
    /// The level-`q` example separating `Dim^q` from `Dim^{q+1}`; see
    /// [`qdim::separating_ln`].
    Separating { q: u32, literal: bool },
    /// `⌈g(n)⌉`
    Ceil(Box<Formula>),
}

/// Below this `ln g`, `⌈g⌉` is computed exactly; above it the ceiling moves
/// `ln g` by less than the working precision.
const CEIL_EXACT_BELOW: f64 = 88.0;

impl Formula {
    pub fn ceil(self) -> Formula {
        Formula::Ceil(Box::new(self))
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    /// `ln g(n)`.
    pub fn ln_eval(&self, n: &Real) -> Result<Real> {
        if !n.is_positive() {
            return Err(Error::Domain(format!("n = {n} must be positive")));
        }
        Ok(match self {
            Formula::Power { exponent } => &Real::from_f64(*exponent) * &n.ln(),
            Formula::Exponential { base } => {
                if *base <= 0.0 {
                    return Err(Error::Domain("base must be positive".into()));
                }
                n * &Real::from_f64(*base).ln()
            }
            Formula::NPowLnN => {
                let l = n.ln();
                &l * &l
            }
            Formula::Constant { value } => {
                if *value <= 0.0 {
                    return Err(Error::Domain("constant must be positive".into()));
                }
                Real::from_f64(*value).ln()
            }
            Formula::Phi { q, alpha } => qdim::phi_ln(*q, &Real::from_f64(*alpha), n)?,
            Formula::Separating { q, literal } => qdim::separating_ln(*q, n, *literal)?,
            Formula::Ceil(inner) => {
                let l = inner.ln_eval(n)?;
                if l < Real::from_f64(CEIL_EXACT_BELOW) {
                    l.exp().ceil().ln()
                } else {
                    l
                }
            }
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Power { exponent } => write!(f, "power:{exponent}"),
            Formula::Exponential { base } => write!(f, "exp:{base}"),
            Formula::NPowLnN => write!(f, "n-pow-ln-n"),
            Formula::Constant { value } => write!(f, "const:{value}"),
            Formula::Phi { q, alpha } => write!(f, "phi:{q}:{alpha}"),
            Formula::Separating { q, literal: false } => write!(f, "separating:{q}"),
            Formula::Separating { q, literal: true } => write!(f, "separating-literal:{q}"),
            Formula::Ceil(inner) => write!(f, "ceil:{inner}"),
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) notation, e.g. `ceil:n-pow-ln-n`
    /// or `phi:3:0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown formula {s:?}"));
        let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
        let int = |x: &str| x.parse::<u32>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("ceil:") {
            return Ok(rest.parse::<Formula>()?.ceil());
        }
        if s == "n-pow-ln-n" {
            return Ok(Formula::NPowLnN);
        }
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        Ok(match head {
            "power" => Formula::Power { exponent: num(rest)? },
            "exp" => Formula::Exponential { base: num(rest)? },
            "const" => Formula::Constant { value: num(rest)? },
            "phi" => {
                let (q, a) = rest.split_once(':').ok_or_else(bad)?;
                Formula::Phi { q: int(q)?, alpha: num(a)? }
            }
            "separating" => Formula::Separating { q: int(rest)?, literal: false },
            "separating-literal" => Formula::Separating { q: int(rest)?, literal: true },
            _ => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluations() {
        let n = Real::from_u64(8);
        let close = |f: Formula, v: f64| {
            let got = f.ln_eval(&n).unwrap().to_f64();
            assert!((got - v).abs() < 1e-12, "{f}: {got} vs {v}");
        };
        close(Formula::Power { exponent: 2.0 }, 64f64.ln());
        close(Formula::Exponential { base: 2.0 }, 256f64.ln());
        close(Formula::NPowLnN, 8f64.ln().powi(2));
        close(Formula::Constant { value: 7.0 }, 7f64.ln());
        // 8^{ln 8} = 75.5…
        close(Formula::NPowLnN.ceil(), 76f64.ln());
        assert!(Formula::Exponential { base: -1.0 }.ln_eval(&n).is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        for f in [
            Formula::Power { exponent: 2.5 },
            Formula::Exponential { base: 2.0 },
            Formula::NPowLnN.ceil(),
            Formula::Constant { value: 7.0 },
            Formula::Phi { q: 3, alpha: 0.5 },
            Formula::Separating { q: 4, literal: true },
        ] {
            assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
        }
        assert!("bogus".parse::<Formula>().is_err());
    }
}
