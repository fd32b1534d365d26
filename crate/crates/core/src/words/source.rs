use sha2::{Digest, Sha256};

use super::{biinfinite, FiniteWord};
use crate::error::{Error, Result};

/// A non-erasing substitution with a seed letter on which it is prolongable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    rules: Vec<Vec<u8>>,
    seed: u8,
}

impl Substitution {
    /// `rules[a]` is the image of letter `a`.
    pub fn new(rules: Vec<Vec<u8>>, seed: u8) -> Result<Self> {
        let d = rules.len();
        if d == 0 {
            return Err(Error::Config("substitution needs at least one rule".into()));
        }
        if seed as usize >= d {
            return Err(Error::Config(format!("seed {seed} outside alphabet of size {d}")));
        }
        for (a, img) in rules.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Config(format!("rule for {a} is erasing")));
            }
            if let Some(b) = img.iter().find(|&&b| b as usize >= d) {
                return Err(Error::Config(format!("rule for {a} uses letter {b} outside alphabet")));
            }
        }
        let img = &rules[seed as usize];
        if img[0] != seed || img.len() < 2 {
            return Err(Error::Config(format!(
                "substitution is not prolongable on seed {seed}: its image must start with the seed and have length >= 2"
            )));
        }
        Ok(Substitution { rules, seed })
    }

    pub fn alphabet_size(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[Vec<u8>] {
        &self.rules
    }

    pub fn seed(&self) -> u8 {
        self.seed
    }

    pub fn apply(&self, w: &[u8]) -> Vec<u8> {
        w.iter().flat_map(|&a| self.rules[a as usize].iter().copied()).collect()
    }

    /// First `n` letters of the fixed point starting with the seed.
    pub fn fixed_point_prefix(&self, n: usize) -> Vec<u8> {
        let mut w = vec![self.seed];
        // The image of a prefix of the fixed point is again a prefix of it,
        // so truncating every round is safe.
        while w.len() < n {
            w = self.apply(&w);
            w.truncate(n);
        }
        w.truncate(n);
        w
    }
}

/// Deterministic generator of prefixes of an infinite word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSource {
    Substitution(Substitution),
    /// A finite known prefix; asking beyond it is an error.
    Explicit {
        alphabet_size: usize,
        prefix: Vec<u8>,
    },
    /// `period^∞`.
    Periodic {
        alphabet_size: usize,
        period: Vec<u8>,
    },
    /// Letterwise image under `x_i ↦ x y^i` (letters `x = 0`, `y = 1`).
    Sigma(Box<WordSource>),
    /// Nonnegative half of the bi-infinite word built by nested recurrences
    /// of the inner word; `search_len` bounds each recurrence search.
    BiInfinite {
        inner: Box<WordSource>,
        search_len: usize,
    },
}

impl WordSource {
    pub fn substitution(rules: Vec<Vec<u8>>, seed: u8) -> Result<Self> {
        Substitution::new(rules, seed).map(WordSource::Substitution)
    }

    pub fn explicit(alphabet_size: usize, prefix: Vec<u8>) -> Result<Self> {
        FiniteWord::new(prefix.clone()).check_alphabet(alphabet_size)?;
        Ok(WordSource::Explicit { alphabet_size, prefix })
    }

    pub fn periodic(alphabet_size: usize, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Config("period must be nonempty".into()));
        }
        FiniteWord::new(period.clone()).check_alphabet(alphabet_size)?;
        Ok(WordSource::Periodic { alphabet_size, period })
    }

    pub fn biinfinite(inner: WordSource, search_len: usize) -> Self {
        WordSource::BiInfinite { inner: Box::new(inner), search_len }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            WordSource::Substitution(s) => s.alphabet_size(),
            WordSource::Explicit { alphabet_size, .. } | WordSource::Periodic { alphabet_size, .. } => *alphabet_size,
            WordSource::Sigma(_) => 2,
            WordSource::BiInfinite { inner, .. } => inner.alphabet_size(),
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Result<FiniteWord> {
        let symbols = match self {
            WordSource::Substitution(s) => s.fixed_point_prefix(n),
            WordSource::Explicit { prefix, .. } => {
                if n > prefix.len() {
                    return Err(Error::Argument(format!(
                        "explicit word has only {} known letters, {n} requested",
                        prefix.len()
                    )));
                }
                prefix[..n].to_vec()
            }
            WordSource::Periodic { period, .. } => period.iter().copied().cycle().take(n).collect(),
            WordSource::Sigma(inner) => {
                // every letter expands to at least two symbols
                let inner_prefix = inner.prefix(n / 2 + 1)?;
                let mut v = sigma_image(inner_prefix.symbols());
                v.truncate(n);
                v
            }
            WordSource::BiInfinite { inner, search_len } => biinfinite::right_half(inner, n, *search_len)?,
        };
        Ok(FiniteWord::new(symbols))
    }

    /// Canonical text description, used as the cache key.
    pub fn describe(&self) -> String {
        match self {
            WordSource::Substitution(s) => {
                let rules: Vec<String> = s
                    .rules()
                    .iter()
                    .enumerate()
                    .map(|(a, img)| format!("{}>{}", digit(a as u8), FiniteWord::new(img.clone())))
                    .collect();
                format!("subst[{}@{}]", rules.join(","), digit(s.seed()))
            }
            WordSource::Explicit { alphabet_size, prefix } => {
                let hash = Sha256::digest(prefix);
                let hex: String = hash.iter().take(8).map(|b| format!("{b:02x}")).collect();
                format!("explicit[d={alphabet_size};len={};sha={hex}]", prefix.len())
            }
            WordSource::Periodic { alphabet_size, period } => {
                format!("periodic[d={alphabet_size};{}]", FiniteWord::new(period.clone()))
            }
            WordSource::Sigma(inner) => format!("sigma({})", inner.describe()),
            WordSource::BiInfinite { inner, search_len } => {
                format!("biinf[{search_len}]({})", inner.describe())
            }
        }
    }
}

fn digit(a: u8) -> char {
    std::char::from_digit(a as u32, 36).unwrap_or('?')
}

/// Applies `x_i ↦ x y^i` letterwise, where letter index `k` is `x_{k+1}`.
pub fn sigma_image(w: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &a in w {
        out.push(0);
        out.extend(std::iter::repeat_n(1, a as usize + 1));
    }
    out
}

/// The binary word obtained by the reduction `x_i ↦ x y^i`.
pub fn sigma_reduce(source: WordSource) -> WordSource {
    WordSource::Sigma(Box::new(source))
}
