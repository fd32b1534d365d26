//! Infinite words over finite alphabets, their factor languages and the
//! binary-alphabet reduction.

mod biinfinite;
pub mod cache;
mod language;
pub mod library;
mod sigma_bounds;
mod source;

use std::fmt;

use crate::error::{Error, Result};

pub use biinfinite::{biinfinite_extend, BiInfiniteApprox};
pub use language::{
    factor_language, factor_language_stable, factor_language_with, recurrence_constant, FactorLanguage,
};
pub use sigma_bounds::{sigma_bounds, SigmaBoundRow};
pub use source::{sigma_image, sigma_reduce, Substitution, WordSource};

/// An ordered set of distinct letters. Letters are addressed by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: Vec<char>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Argument("alphabet must be nonempty".into()));
        }
        for (i, a) in letters.iter().enumerate() {
            if letters[..i].contains(a) {
                return Err(Error::Argument(format!("duplicate letter {a:?}")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// `{0, 1, ..., d-1}` written as base-36 digits.
    pub fn digits(d: usize) -> Result<Self> {
        if d == 0 || d > 36 {
            return Err(Error::Argument(format!("digit alphabet size {d} not in 1..=36")));
        }
        Alphabet::new((0..d as u32).map(|i| std::char::from_digit(i, 36).unwrap()).collect())
    }

    /// The target alphabet `{x, y}` of the binary reduction.
    pub fn xy() -> Self {
        Alphabet { letters: vec!['x', 'y'] }
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.letters.iter().position(|&l| l == c).map(|i| i as u8)
    }

    pub fn parse_word(&self, s: &str) -> Result<FiniteWord> {
        s.chars()
            .map(|c| self.index_of(c).ok_or_else(|| Error::Parse(format!("letter {c:?} not in alphabet"))))
            .collect::<Result<Vec<u8>>>()
            .map(FiniteWord::from)
    }

    pub fn render(&self, w: &FiniteWord) -> String {
        w.symbols().iter().map(|&i| self.letters[i as usize]).collect()
    }
}

/// A finite word stored as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FiniteWord(Vec<u8>);

impl FiniteWord {
    pub fn new(symbols: Vec<u8>) -> Self {
        FiniteWord(symbols)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        FiniteWord(v)
    }

    /// Checks every letter is below `d`.
    pub fn check_alphabet(&self, d: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s as usize >= d) {
            Some(s) => Err(Error::Argument(format!("letter {s} outside alphabet of size {d}"))),
            None => Ok(()),
        }
    }

    /// Parses base-36 digit notation (`"0110"`).
    pub fn parse_digits(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| c.to_digit(36).map(|d| d as u8).ok_or_else(|| Error::Parse(format!("bad letter {c:?}"))))
            .collect::<Result<Vec<u8>>>()
            .map(FiniteWord)
    }
}

impl From<Vec<u8>> for FiniteWord {
    fn from(v: Vec<u8>) -> Self {
        FiniteWord(v)
    }
}

impl From<&[u8]> for FiniteWord {
    fn from(v: &[u8]) -> Self {
        FiniteWord(v.to_vec())
    }
}

impl fmt::Display for FiniteWord {
    /// Base-36 digits; the empty word prints as `ε`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for &s in &self.0 {
            match std::char::from_digit(s as u32, 36) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "<{s}>")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(Alphabet::new(vec!['a', 'b', 'a']).is_err());
        assert!(Alphabet::new(vec![]).is_err());
        let a = Alphabet::new(vec!['a', 'b']).unwrap();
        assert_eq!(a.size(), 2);
        let w = a.parse_word("abba").unwrap();
        assert_eq!(w.symbols(), &[0, 1, 1, 0]);
        assert_eq!(a.render(&w), "abba");
        assert!(a.parse_word("abc").is_err());
    }

    #[test]
    fn word_display_and_parse() {
        let w = FiniteWord::parse_digits("0120").unwrap();
        assert_eq!(w.to_string(), "0120");
        assert_eq!(FiniteWord::empty().to_string(), "ε");
        assert!(w.check_alphabet(3).is_ok());
        assert!(w.check_alphabet(2).is_err());
    }
}
