use super::{FiniteWord, WordSource};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Distinct factors of lengths `0..=horizon` of a scanned prefix.
///
/// The result is exact for the infinite word only once the prefix is long
/// enough; `stable` records whether doubling the prefix was checked to leave
/// every factor set unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorLanguage {
    pub(crate) alphabet_size: usize,
    pub(crate) horizon: usize,
    pub(crate) prefix: Vec<u8>,
    /// `factors[n]` is the sorted list of length-`n` factors; `factors[0] = [ε]`.
    pub(crate) factors: Vec<Vec<FiniteWord>>,
    pub(crate) stable: Option<bool>,
    pub(crate) source: String,
}

impl FactorLanguage {
    /// Builds the language of an arbitrary finite word (used for explicit data
    /// and by tests).
    pub fn from_prefix(prefix: Vec<u8>, alphabet_size: usize, horizon: usize, exec: Exec) -> Result<Self> {
        if horizon == 0 || horizon > prefix.len() {
            return Err(Error::Argument(format!(
                "need 1 <= horizon <= prefix length, got horizon {horizon} and prefix length {}",
                prefix.len()
            )));
        }
        FiniteWord::from(prefix.as_slice()).check_alphabet(alphabet_size)?;
        let mut factors = vec![vec![FiniteWord::empty()]];
        factors.extend(par::map_range(exec, 1..horizon + 1, |n| scan_windows(&prefix, n)));
        Ok(FactorLanguage { alphabet_size, horizon, prefix, factors, stable: None, source: String::from("explicit") })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// `Some(true)` when a run at twice the prefix length gave the same sets.
    pub fn stable(&self) -> Option<bool> {
        self.stable
    }

    /// Sorted factors of length `n`.
    pub fn factors(&self, n: usize) -> Result<&[FiniteWord]> {
        self.factors.get(n).map(Vec::as_slice).ok_or(Error::Horizon { requested: n, horizon: self.horizon })
    }

    /// `c(n)`.
    pub fn complexity(&self, n: usize) -> Result<usize> {
        self.factors(n).map(<[FiniteWord]>::len)
    }

    /// `c(1..=horizon)`.
    pub fn complexities(&self) -> Vec<usize> {
        self.factors[1..].iter().map(Vec::len).collect()
    }

    /// Position of `w` in the sorted factor list of its length.
    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        let list = self.factors.get(w.len())?;
        list.binary_search_by(|f| f.symbols().cmp(w)).ok()
    }

    /// Membership; words longer than the horizon are reported as an error.
    pub fn contains(&self, w: &[u8]) -> Result<bool> {
        if w.len() > self.horizon {
            return Err(Error::Horizon { requested: w.len(), horizon: self.horizon });
        }
        Ok(self.index_of(w).is_some())
    }

    /// Same factor sets on every length (prefix length and stability flag ignored).
    pub fn same_factors(&self, other: &FactorLanguage) -> bool {
        let h = self.horizon.min(other.horizon);
        self.factors[..=h] == other.factors[..=h]
    }
}

fn scan_windows(prefix: &[u8], n: usize) -> Vec<FiniteWord> {
    let mut ws: Vec<&[u8]> = prefix.windows(n).collect();
    ws.sort_unstable();
    ws.dedup();
    ws.into_iter().map(FiniteWord::from).collect()
}

/// Factor language of `prefix(len)` up to length `horizon`.
pub fn factor_language(source: &WordSource, horizon: usize, prefix_len: usize) -> Result<FactorLanguage> {
    factor_language_with(source, horizon, prefix_len, Exec::default())
}

pub fn factor_language_with(
    source: &WordSource,
    horizon: usize,
    prefix_len: usize,
    exec: Exec,
) -> Result<FactorLanguage> {
    if horizon == 0 {
        return Err(Error::Argument("horizon must be at least 1".into()));
    }
    if prefix_len < horizon {
        return Err(Error::Argument(format!("prefix length {prefix_len} is shorter than the horizon {horizon}")));
    }
    let prefix = source.prefix(prefix_len)?;
    let mut lang = FactorLanguage::from_prefix(prefix.into_symbols(), source.alphabet_size(), horizon, exec)?;
    lang.source = source.describe();
    Ok(lang)
}

/// Like [`factor_language`], additionally comparing against a scan of twice
/// the prefix and recording the outcome in [`FactorLanguage::stable`].
pub fn factor_language_stable(
    source: &WordSource,
    horizon: usize,
    prefix_len: usize,
    exec: Exec,
) -> Result<FactorLanguage> {
    let mut lang = factor_language_with(source, horizon, prefix_len, exec)?;
    let stable = match factor_language_with(source, horizon, 2 * prefix_len, exec) {
        Ok(doubled) => lang.same_factors(&doubled),
        // finite explicit words cannot be doubled
        Err(Error::Argument(_)) => false,
        Err(e) => return Err(e),
    };
    lang.stable = Some(stable);
    Ok(lang)
}

/// Smallest window length in which `prefix` always shows `u`, including the
/// constraint that no window may fit after the last occurrence.
fn window_constant(prefix: &[u8], u: &[u8]) -> Option<usize> {
    let occ: Vec<usize> = prefix.windows(u.len()).enumerate().filter(|(_, w)| *w == u).map(|(i, _)| i).collect();
    let (&first, &last) = (occ.first()?, occ.last()?);
    let gaps = occ.windows(2).map(|p| p[1] - p[0] - 1 + u.len()).max().unwrap_or(0);
    Some((first + u.len()).max(gaps).max(prefix.len() - last))
}

/// Smallest `C` such that every length-`C` window of the scanned prefix
/// contains `u`.
///
/// The value is reported only when it is already attained on the first half
/// of the prefix (or `u` does not occur there at all); a constant that still
/// grows between half and full prefix is returned as `None`, which is
/// evidence against uniform recurrence and not a proof.
pub fn recurrence_constant(lang: &FactorLanguage, u: &FiniteWord) -> Result<Option<usize>> {
    if u.is_empty() {
        return Ok(Some(0));
    }
    if !lang.contains(u.symbols())? {
        return Err(Error::Argument(format!("{u} is not a factor")));
    }
    let Some(full) = window_constant(&lang.prefix, u.symbols()) else {
        return Err(Error::Argument(format!("{u} does not occur in the scanned prefix")));
    };
    let half = &lang.prefix[..lang.prefix.len() / 2];
    Ok(match window_constant(half, u.symbols()) {
        None => Some(full),
        Some(h) if h == full => Some(full),
        Some(_) => None,
    })
}
