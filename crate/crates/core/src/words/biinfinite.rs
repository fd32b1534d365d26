use super::{FiniteWord, WordSource};
use crate::error::{Error, Result};

/// Nested central words `u_1 ⊂ u_2 ⊂ …` with `u_{t+1} = p_{t+1} u_t q_{t+1}`.
///
/// Every `u_t` is a prefix `w[1, |u_t|]` of the source word. Positions in
/// `occurrences` are 1-indexed to match the `w[i, j]` notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiInfiniteApprox {
    pub words: Vec<FiniteWord>,
    /// `(p_t, q_t)` for `t = 2..`.
    pub paddings: Vec<(FiniteWord, FiniteWord)>,
    /// `l_t` for `t = 2..`: 1-indexed start of the recurrence of `u_{t-1}`.
    pub occurrences: Vec<usize>,
    /// 0-indexed offset of the original first letter inside the last word.
    pub anchor: usize,
}

impl BiInfiniteApprox {
    pub fn center(&self) -> &FiniteWord {
        self.words.last().expect("at least u_1")
    }

    /// Letters at coordinates `lo..=hi`, coordinate 0 being the anchor.
    pub fn window(&self, lo: i64, hi: i64) -> Option<FiniteWord> {
        let c = self.center().symbols();
        let start = self.anchor as i64 + lo;
        let end = self.anchor as i64 + hi;
        if start < 0 || end >= c.len() as i64 || lo > hi {
            return None;
        }
        Some(FiniteWord::from(&c[start as usize..=end as usize]))
    }

    /// Letters from the anchor to the right end.
    pub fn right_half(&self) -> &[u8] {
        &self.center().symbols()[self.anchor..]
    }
}

/// Runs `t - 1` extension steps starting from `u_1 = w[1, 1]`.
///
/// The first recurrence is taken at the smallest `l_2 >= 2`, later ones at the
/// smallest `l_{t+1} >= 2|u_t| + 1`, with `u_{t+1} = w[1, 2 l_{t+1} + |u_t| - 2]`
/// required to fit in the first `search_len` letters.
pub fn biinfinite_extend(source: &WordSource, t: usize, search_len: usize) -> Result<BiInfiniteApprox> {
    if t == 0 {
        return Err(Error::Argument("need at least one step".into()));
    }
    let w = source.prefix(search_len)?;
    let w = w.symbols();
    if w.is_empty() {
        return Err(Error::InsufficientPrefix { step: 1, detail: "empty prefix".into() });
    }
    let mut approx = BiInfiniteApprox {
        words: vec![FiniteWord::from(&w[..1])],
        paddings: Vec::new(),
        occurrences: Vec::new(),
        anchor: 0,
    };
    for step in 2..=t {
        extend_once(&mut approx, w, step)?;
    }
    Ok(approx)
}

fn extend_once(approx: &mut BiInfiniteApprox, w: &[u8], step: usize) -> Result<()> {
    let u = approx.center().symbols().to_vec();
    let c = u.len();
    let min_l = if step == 2 { 2 } else { 2 * c + 1 };
    // 1-indexed l with w[l, l+c-1] = u and 2l + c - 2 <= |w|
    let mut l = min_l;
    let found = loop {
        if 2 * l + c - 2 > w.len() {
            break None;
        }
        if w[l - 1..l - 1 + c] == u[..] {
            break Some(l);
        }
        l += 1;
    };
    let Some(l) = found else {
        return Err(Error::InsufficientPrefix {
            step,
            detail: format!(
                "no recurrence of u_{} (length {c}) at l >= {min_l} within the first {} letters; raise the search length",
                step - 1,
                w.len()
            ),
        });
    };
    let next = &w[..2 * l + c - 2];
    let p = FiniteWord::from(&next[..l - 1]);
    let q = FiniteWord::from(&next[l - 1 + c..]);
    debug_assert_eq!(p.len(), q.len());
    approx.anchor += l - 1;
    approx.occurrences.push(l);
    approx.paddings.push((p, q));
    approx.words.push(FiniteWord::from(next));
    Ok(())
}

/// First `n` letters to the right of the anchor, extending as far as needed.
pub(crate) fn right_half(inner: &WordSource, n: usize, search_len: usize) -> Result<Vec<u8>> {
    let w = inner.prefix(search_len)?;
    let w = w.symbols();
    if w.is_empty() {
        return Err(Error::InsufficientPrefix { step: 1, detail: "empty prefix".into() });
    }
    let mut approx = BiInfiniteApprox {
        words: vec![FiniteWord::from(&w[..1])],
        paddings: Vec::new(),
        occurrences: Vec::new(),
        anchor: 0,
    };
    let mut step = 2;
    while approx.right_half().len() < n {
        extend_once(&mut approx, w, step)?;
        step += 1;
    }
    Ok(approx.right_half()[..n].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{factor_language, library};

    #[test]
    fn constant_word_two_steps() {
        let a = biinfinite_extend(&library::constant(), 2, 10).unwrap();
        assert_eq!(a.center().to_string(), "000");
        assert_eq!(a.paddings[0].0.to_string(), "0");
        assert_eq!(a.paddings[0].1.to_string(), "0");
        assert_eq!(a.anchor, 1);
    }

    #[test]
    fn non_recurrent_fails() {
        let e = biinfinite_extend(&library::non_recurrent(), 2, 1_000_000).unwrap_err();
        assert!(matches!(e, Error::InsufficientPrefix { step: 2, .. }), "{e}");
    }

    #[test]
    fn fibonacci_nested_words() {
        let a = biinfinite_extend(&library::fibonacci(), 3, 10_000).unwrap();
        assert_eq!(a.words.len(), 3);
        for t in 1..3 {
            let (p, q) = &a.paddings[t - 1];
            assert!(!p.is_empty() && p.len() == q.len());
            assert_eq!(p.concat(&a.words[t - 1]).concat(q), a.words[t]);
        }
        let lang = factor_language(&library::fibonacci(), 12, 10_000).unwrap();
        let u3 = a.center().symbols();
        for n in 1..=u3.len().min(12) {
            for f in u3.windows(n) {
                assert!(lang.contains(f).unwrap());
            }
        }
        assert_eq!(a.window(0, 0).unwrap().symbols(), &[0]);
    }

    #[test]
    fn right_half_is_consistent_across_lengths() {
        let src = WordSource::biinfinite(library::thue_morse(), 100_000);
        let a = src.prefix(50).unwrap();
        let b = src.prefix(300).unwrap();
        assert_eq!(&b.symbols()[..50], a.symbols());
        let lang = factor_language(&library::thue_morse(), 8, 10_000).unwrap();
        for f in b.symbols().windows(8) {
            assert!(lang.contains(f).unwrap());
        }
    }
}
