//! On-disk cache of factor languages.
//!
//! One text file per `(source, horizon, prefix length)`:
//!
//! ```text
//! liegrowth-factors v1
//! source subst[0>01,1>0@0]
//! alphabet 2
//! horizon 3
//! prefix_len 100
//! stable unknown
//! prefix 0100101001001…
//! len 1 2
//! 0
//! 1
//! len 2 3
//! …
//! ```
//!
//! Letters are base-36 digits and every length block is sorted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{factor_language_stable, FactorLanguage, FiniteWord, WordSource};
use crate::error::{Error, Result};
use crate::par::Exec;

pub const CACHE_ENV: &str = "LIEGROWTH_CACHE_DIR";
const MAGIC: &str = "liegrowth-factors v1";

#[derive(Debug, Clone)]
pub struct FactorCache {
    dir: PathBuf,
}

impl FactorCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FactorCache { dir: dir.into() }
    }

    /// Cache rooted at `$LIEGROWTH_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(FactorCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, source: &str, horizon: usize, prefix_len: usize) -> PathBuf {
        let hash = Sha256::digest(source.as_bytes());
        let hex: String = hash.iter().take(12).map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("factors-v1-{hex}-N{horizon}-L{prefix_len}.txt"))
    }

    pub fn load(&self, source: &WordSource, horizon: usize, prefix_len: usize) -> Result<Option<FactorLanguage>> {
        let desc = source.describe();
        let path = self.path_for(&desc, horizon, prefix_len);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)?;
        let lang = decode(&text)?;
        if lang.source != desc || lang.horizon != horizon || lang.prefix.len() != prefix_len {
            return Err(Error::Parse(format!("cache entry {} does not match its key", path.display())));
        }
        Ok(Some(lang))
    }

    pub fn store(&self, lang: &FactorLanguage) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(&lang.source, lang.horizon, lang.prefix.len());
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(encode(lang)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads the entry or computes (with the stability check) and stores it.
    pub fn get_or_compute(
        &self,
        source: &WordSource,
        horizon: usize,
        prefix_len: usize,
        exec: Exec,
    ) -> Result<FactorLanguage> {
        if let Some(lang) = self.load(source, horizon, prefix_len)? {
            return Ok(lang);
        }
        let lang = factor_language_stable(source, horizon, prefix_len, exec)?;
        self.store(&lang)?;
        Ok(lang)
    }
}

fn digits(w: &[u8]) -> Result<String> {
    w.iter()
        .map(|&s| {
            std::char::from_digit(s as u32, 36)
                .ok_or_else(|| Error::Argument("cache format supports at most 36 letters".into()))
        })
        .collect()
}

pub fn encode(lang: &FactorLanguage) -> Result<String> {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("source {}\n", lang.source));
    out.push_str(&format!("alphabet {}\n", lang.alphabet_size));
    out.push_str(&format!("horizon {}\n", lang.horizon));
    out.push_str(&format!("prefix_len {}\n", lang.prefix.len()));
    let stable = match lang.stable {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    out.push_str(&format!("stable {stable}\n"));
    out.push_str(&format!("prefix {}\n", digits(&lang.prefix)?));
    for n in 1..=lang.horizon {
        out.push_str(&format!("len {n} {}\n", lang.factors[n].len()));
        for w in &lang.factors[n] {
            out.push_str(&digits(w.symbols())?);
            out.push('\n');
        }
    }
    Ok(out)
}

fn field<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<String> {
    let bad = |what: &str| Error::Parse(format!("factor cache: {what}"));
    let line = lines.next().ok_or_else(|| bad("truncated header"))?;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(' ').or(if r.is_empty() { Some("") } else { None }))
        .map(str::to_string)
        .ok_or_else(|| bad(&format!("expected {key}")))
}

pub fn decode(text: &str) -> Result<FactorLanguage> {
    let bad = |what: &str| Error::Parse(format!("factor cache: {what}"));
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(bad("unknown header"));
    }
    let source = field(&mut lines, "source")?;
    let alphabet_size: usize = field(&mut lines, "alphabet")?.parse().map_err(|_| bad("alphabet"))?;
    let horizon: usize = field(&mut lines, "horizon")?.parse().map_err(|_| bad("horizon"))?;
    let prefix_len: usize = field(&mut lines, "prefix_len")?.parse().map_err(|_| bad("prefix_len"))?;
    let stable = match field(&mut lines, "stable")?.as_str() {
        "yes" => Some(true),
        "no" => Some(false),
        "unknown" => None,
        _ => return Err(bad("stable")),
    };
    let prefix = FiniteWord::parse_digits(&field(&mut lines, "prefix")?)?.into_symbols();
    if prefix.len() != prefix_len {
        return Err(bad("prefix length mismatch"));
    }
    let mut factors = vec![vec![FiniteWord::empty()]];
    for n in 1..=horizon {
        let head = field(&mut lines, "len")?;
        let mut it = head.split_whitespace();
        let len: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("len"))?;
        let count: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("count"))?;
        if len != n {
            return Err(bad("length blocks out of order"));
        }
        let mut block = Vec::with_capacity(count);
        for _ in 0..count {
            let line = lines.next().ok_or_else(|| bad("truncated block"))?;
            let w = FiniteWord::parse_digits(line)?;
            if w.len() != n {
                return Err(bad("word of wrong length"));
            }
            block.push(w);
        }
        if block.windows(2).any(|p| p[0] >= p[1]) {
            return Err(bad("block not sorted"));
        }
        factors.push(block);
    }
    Ok(FactorLanguage { alphabet_size, horizon, prefix, factors, stable, source })
}
