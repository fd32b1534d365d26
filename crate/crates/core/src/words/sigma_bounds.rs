use serde::Serialize;

use super::FactorLanguage;
use crate::error::{Error, Result};

/// Both complexity comparisons between a word over `d` letters and its
/// binary reduction at one length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaBoundRow {
    pub n: usize,
    pub c_w: usize,
    /// `c_{w'}((d+1) n)`
    pub c_reduced_scaled: usize,
    pub lower_holds: bool,
    pub c_reduced: usize,
    /// `(d+1)^2 Σ_{p=0}^{2d+2} c_w(n+p)`
    pub upper_bound: usize,
    pub upper_holds: bool,
}

/// Checks `c_w(n) <= c_{w'}((d+1)n)` and
/// `c_{w'}(n) <= (d+1)^2 Σ_{p=0}^{2d+2} c_w(n+p)` for `n = 1..=max_n`.
pub fn sigma_bounds(original: &FactorLanguage, reduced: &FactorLanguage, max_n: usize) -> Result<Vec<SigmaBoundRow>> {
    let d = original.alphabet_size();
    if reduced.alphabet_size() != 2 {
        return Err(Error::Argument("reduced word must be binary".into()));
    }
    let need_orig = max_n + 2 * d + 2;
    let need_red = (d + 1) * max_n;
    if original.horizon() < need_orig {
        return Err(Error::Horizon { requested: need_orig, horizon: original.horizon() });
    }
    if reduced.horizon() < need_red {
        return Err(Error::Horizon { requested: need_red, horizon: reduced.horizon() });
    }
    (1..=max_n)
        .map(|n| {
            let c_w = original.complexity(n)?;
            let c_reduced_scaled = reduced.complexity((d + 1) * n)?;
            let c_reduced = reduced.complexity(n)?;
            let sum: usize = (0..=2 * d + 2).map(|p| original.complexity(n + p)).sum::<Result<usize>>()?;
            let upper_bound = (d + 1) * (d + 1) * sum;
            Ok(SigmaBoundRow {
                n,
                c_w,
                c_reduced_scaled,
                lower_holds: c_w <= c_reduced_scaled,
                c_reduced,
                upper_bound,
                upper_holds: c_reduced <= upper_bound,
            })
        })
        .collect()
}
