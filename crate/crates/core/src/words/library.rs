//! Built-in words. The substitution fixed points here are uniformly recurrent,
//! the remaining entries are periodic or non-recurrent counterexamples.

use super::WordSource;
use crate::error::{Error, Result};

fn subst(rules: &[&[u8]], seed: u8) -> WordSource {
    WordSource::substitution(rules.iter().map(|r| r.to_vec()).collect(), seed)
        .expect("library substitution is prolongable")
}

/// `0 → 01, 1 → 0`.
pub fn fibonacci() -> WordSource {
    subst(&[&[0, 1], &[0]], 0)
}

/// `0 → 01, 1 → 10`.
pub fn thue_morse() -> WordSource {
    subst(&[&[0, 1], &[1, 0]], 0)
}

/// `0 → 01, 1 → 00`.
pub fn period_doubling() -> WordSource {
    subst(&[&[0, 1], &[0, 0]], 0)
}

/// Binary Chacon word, `0 → 0010, 1 → 1`.
pub fn chacon() -> WordSource {
    subst(&[&[0, 0, 1, 0], &[1]], 0)
}

/// Three-letter Tribonacci word, `0 → 01, 1 → 02, 2 → 0`.
pub fn tribonacci() -> WordSource {
    subst(&[&[0, 1], &[0, 2], &[0]], 0)
}

/// `000…`
pub fn constant() -> WordSource {
    subst(&[&[0, 0]], 0)
}

/// `(01)^∞`.
pub fn periodic_01() -> WordSource {
    WordSource::periodic(2, vec![0, 1]).expect("valid period")
}

/// `0111…`: the letter 0 never recurs.
pub fn non_recurrent() -> WordSource {
    subst(&[&[0, 1], &[1, 1]], 0)
}

/// `0 1 00 1 000 1 …` truncated to `len` letters: recurrent but the gaps
/// between ones grow without bound.
pub fn sparse_ones(len: usize) -> WordSource {
    let mut v = Vec::with_capacity(len);
    let mut gap = 1;
    while v.len() < len {
        v.extend(std::iter::repeat_n(0, gap));
        v.push(1);
        gap += 1;
    }
    v.truncate(len);
    WordSource::explicit(2, v).expect("binary word")
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] =
    &["fibonacci", "thue-morse", "period-doubling", "chacon", "tribonacci", "constant", "periodic-01", "non-recurrent"];

/// Looks up a library word, or parses one of
/// `subst:0>01,1>0@0`, `periodic:<d>:<digits>`, `sigma:<spec>`.
pub fn by_name(spec: &str) -> Result<WordSource> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix("sigma:") {
        return Ok(super::sigma_reduce(by_name(inner)?));
    }
    if let Some(rest) = spec.strip_prefix("subst:") {
        return parse_substitution(rest);
    }
    if let Some(rest) = spec.strip_prefix("periodic:") {
        let (d, digits) = rest.split_once(':').ok_or_else(|| Error::Parse("expected periodic:<d>:<digits>".into()))?;
        let d: usize = d.parse().map_err(|_| Error::Parse(format!("bad alphabet size {d:?}")))?;
        let w = super::FiniteWord::parse_digits(digits)?;
        return WordSource::periodic(d, w.into_symbols());
    }
    Ok(match spec {
        "fibonacci" => fibonacci(),
        "thue-morse" => thue_morse(),
        "period-doubling" => period_doubling(),
        "chacon" => chacon(),
        "tribonacci" => tribonacci(),
        "constant" => constant(),
        "periodic-01" => periodic_01(),
        "non-recurrent" => non_recurrent(),
        other => return Err(Error::Config(format!("unknown word source {other:?}; known: {}", NAMES.join(", ")))),
    })
}

/// `0>01,1>0@0`: rules for letters 0, 1, … in order, seed after `@`.
fn parse_substitution(s: &str) -> Result<WordSource> {
    let (rules, seed) = s.split_once('@').unwrap_or((s, "0"));
    let mut parsed: Vec<(u8, Vec<u8>)> = Vec::new();
    for rule in rules.split(',') {
        let (lhs, rhs) = rule.split_once('>').ok_or_else(|| Error::Parse(format!("rule {rule:?} lacks '>'")))?;
        let lhs = super::FiniteWord::parse_digits(lhs.trim())?;
        if lhs.len() != 1 {
            return Err(Error::Parse(format!("rule {rule:?} must map a single letter")));
        }
        let rhs = super::FiniteWord::parse_digits(rhs.trim())?;
        parsed.push((lhs.symbols()[0], rhs.into_symbols()));
    }
    parsed.sort_by_key(|(a, _)| *a);
    for (i, (a, _)) in parsed.iter().enumerate() {
        if *a as usize != i {
            return Err(Error::Parse("rules must cover letters 0..d exactly once".into()));
        }
    }
    let seed = super::FiniteWord::parse_digits(seed.trim())?;
    if seed.len() != 1 {
        return Err(Error::Parse("seed must be one letter".into()));
    }
    WordSource::substitution(parsed.into_iter().map(|(_, r)| r).collect(), seed.symbols()[0])
}
