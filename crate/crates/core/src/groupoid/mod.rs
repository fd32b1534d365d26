//! The convolution algebra `F[𝔊_w]` of the groupoid of germs of the subshift
//! generated by `w`.
//!
//! A point of the subshift is a bi-infinite sequence `x` all of whose finite
//! windows are factors of `w`. The shift acts by `x^m[i] = x[i − m]` and the
//! germ `(m, x)` goes from `x` to `x^m`. With this direction
//! `φ(v) = D_{v_1}T ⋯ D_{v_k}T` is the cylinder "`x[−k..=−1] = v`" at shift
//! `k`, so `φ` is multiplicative on the nose.
//!
//! Elements are stored per shift class `m` as a function of the window
//! `x[lo..=hi]`, listing only language words with nonzero coefficient.

mod filtration;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::{FactorLanguage, FiniteWord};

pub use filtration::{
    filtration_basis, filtration_growth, phi_commutator_dim, phi_commutator_dims, phi_injectivity_check,
    phi_multiplicativity_failures, phi_rank, sandwich_bounds, sandwich_constant, truncated_center_check, Coordinates,
    FiltrationBasis, FiltrationGrowth, FiltrationRow, SANDWICH_CMAX,
};

/// Finitely many coordinate constraints `i ↦ letter`; no constraints is the
/// whole unit space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CylinderPattern {
    constraints: BTreeMap<i64, u8>,
}

impl CylinderPattern {
    pub fn full() -> Self {
        CylinderPattern::default()
    }

    /// Fails if one coordinate is given two different letters.
    pub fn new(constraints: impl IntoIterator<Item = (i64, u8)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (i, a) in constraints {
            if let Some(b) = out.insert(i, a) {
                if a != b {
                    return Err(Error::Argument(format!("coordinate {i} constrained to both {b} and {a}")));
                }
            }
        }
        Ok(CylinderPattern { constraints: out })
    }

    /// `x[lo + k] = word[k]`.
    pub fn word_at(lo: i64, word: &[u8]) -> Self {
        CylinderPattern { constraints: word.iter().enumerate().map(|(k, &a)| (lo + k as i64, a)).collect() }
    }

    pub fn constraints(&self) -> &BTreeMap<i64, u8> {
        &self.constraints
    }

    pub fn is_full(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Smallest `[lo, hi]` covering the constraints.
    pub fn window(&self) -> Option<(i64, i64)> {
        let lo = *self.constraints.keys().next()?;
        let hi = *self.constraints.keys().next_back()?;
        Some((lo, hi))
    }

    /// Every constraint moved from `i` to `i + by`.
    pub fn shifted(&self, by: i64) -> Self {
        CylinderPattern { constraints: self.constraints.iter().map(|(&i, &a)| (i + by, a)).collect() }
    }

    /// `None` when the two patterns conflict.
    pub fn intersect(&self, other: &CylinderPattern) -> Option<Self> {
        let mut out = self.constraints.clone();
        for (&i, &a) in &other.constraints {
            match out.entry(i) {
                Entry::Vacant(e) => {
                    e.insert(a);
                }
                Entry::Occupied(e) => {
                    if *e.get() != a {
                        return None;
                    }
                }
            }
        }
        Some(CylinderPattern { constraints: out })
    }

    /// Whether `word`, read as `x[lo..]`, satisfies every constraint.
    pub fn matches(&self, lo: i64, word: &[u8]) -> bool {
        self.constraints.iter().all(|(&i, &a)| {
            let k = i - lo;
            k >= 0 && (k as usize) < word.len() && word[k as usize] == a
        })
    }
}

impl fmt::Display for CylinderPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.constraints.iter().map(|(i, a)| format!("{i}↦{a}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn horizon_check(lang: &FactorLanguage, len: usize) -> Result<()> {
    if len > lang.horizon() {
        return Err(Error::Horizon { requested: len, horizon: lang.horizon() });
    }
    Ok(())
}

/// Does some point of the subshift satisfy `p`? Exact once the language is
/// stable at the window length.
pub fn pattern_nonempty(p: &CylinderPattern, lang: &FactorLanguage) -> Result<bool> {
    let Some((lo, hi)) = p.window() else {
        return Ok(true);
    };
    let len = (hi - lo + 1) as usize;
    horizon_check(lang, len)?;
    Ok(lang.factors(len)?.iter().any(|w| p.matches(lo, w.symbols())))
}

/// The compact open bisection `{(m, x) : x ∈ C}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bisection {
    pub shift: i64,
    pub pattern: CylinderPattern,
}

impl Bisection {
    pub fn new(shift: i64, pattern: CylinderPattern) -> Self {
        Bisection { shift, pattern }
    }
}

/// `ab = {gh : g ∈ a, h ∈ b}`: the germs `(m_a + m_b, x)` with `x ∈ C_b` and
/// `x^{m_b} ∈ C_a`. `None` is the zero function.
pub fn bisection_product(a: &Bisection, b: &Bisection, lang: &FactorLanguage) -> Result<Option<Bisection>> {
    // x^m[i] = x[i − m], so x^m ∈ C iff x matches C moved by −m
    let Some(p) = b.pattern.intersect(&a.pattern.shifted(-b.shift)) else {
        return Ok(None);
    };
    if !pattern_nonempty(&p, lang)? {
        return Ok(None);
    }
    Ok(Some(Bisection { shift: a.shift + b.shift, pattern: p }))
}

/// Window `[lo, lo + len − 1]`; `len = 0` is the empty window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    lo: i64,
    len: usize,
}

impl Span {
    const EMPTY: Span = Span { lo: 0, len: 0 };

    fn hi(self) -> i64 {
        self.lo + self.len as i64 - 1
    }

    fn hull(self, other: Span) -> Span {
        if self.len == 0 {
            return other;
        }
        if other.len == 0 {
            return self;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        Span { lo, len: (hi - lo + 1) as usize }
    }

    fn contains(self, inner: Span) -> bool {
        inner.len == 0 || (self.len > 0 && self.lo <= inner.lo && inner.hi() <= self.hi())
    }

    /// The part of `w` (read on `self`) lying on `inner`.
    fn slice(self, inner: Span, w: &[u8]) -> &[u8] {
        if inner.len == 0 {
            return &[];
        }
        let off = (inner.lo - self.lo) as usize;
        &w[off..off + inner.len]
    }
}

/// One shift class: a function of `x[lo..lo+len]` given on language words.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    span: Span,
    coeffs: BTreeMap<Vec<u8>, BigRational>,
}

impl Block {
    fn value(&self, on: Span, w: &[u8]) -> Option<&BigRational> {
        self.coeffs.get(on.slice(self.span, w))
    }
}

/// A finite linear combination of bisections, in canonical form: per shift
/// class one window, full language words over it with nonzero coefficients,
/// and the window shrunk while the coefficients ignore an edge coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupoidElement {
    terms: BTreeMap<i64, Block>,
}

/// One term of a [`GroupoidElement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub shift: i64,
    /// `None` for the empty window (the whole unit space).
    pub window: Option<(i64, i64)>,
    pub word: FiniteWord,
    pub coefficient: BigRational,
}

impl GroupoidElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shift classes with a nonzero part.
    pub fn shifts(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Window of the shift class `m`.
    pub fn window(&self, m: i64) -> Option<Option<(i64, i64)>> {
        self.terms.get(&m).map(|b| (b.span.len > 0).then(|| (b.span.lo, b.span.hi())))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|b| b.coeffs.len()).sum()
    }

    pub fn terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .flat_map(|(&m, b)| {
                b.coeffs.iter().map(move |(w, c)| Term {
                    shift: m,
                    window: (b.span.len > 0).then(|| (b.span.lo, b.span.hi())),
                    word: FiniteWord::from(w.as_slice()),
                    coefficient: c.clone(),
                })
            })
            .collect()
    }
}

/// Debug dump, one term per line: `m | window [lo,hi] | word | coefficient`.
impl fmt::Display for GroupoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for t in self.terms() {
            let window = match t.window {
                Some((lo, hi)) => format!("[{lo},{hi}]"),
                None => "[]".to_string(),
            };
            let word = if t.word.is_empty() { "ε".to_string() } else { t.word.to_string() };
            writeln!(f, "{} | window {window} | {word} | {}", t.shift, t.coefficient)?;
        }
        Ok(())
    }
}

fn add_into(map: &mut BTreeMap<Vec<u8>, BigRational>, w: Vec<u8>, c: BigRational) {
    match map.entry(w) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Arithmetic in `F[𝔊_w]` over ℚ, relative to a factor language.
#[derive(Debug, Clone)]
pub struct Groupoid {
    lang: FactorLanguage,
}

impl Groupoid {
    pub fn new(lang: FactorLanguage) -> Self {
        Groupoid { lang }
    }

    pub fn language(&self) -> &FactorLanguage {
        &self.lang
    }

    pub fn horizon(&self) -> usize {
        self.lang.horizon()
    }

    pub fn letters(&self) -> usize {
        self.lang.alphabet_size()
    }

    fn words(&self, len: usize) -> Result<&[FiniteWord]> {
        horizon_check(&self.lang, len)?;
        self.lang.factors(len)
    }

    pub fn zero(&self) -> GroupoidElement {
        GroupoidElement::default()
    }

    pub fn one(&self) -> GroupoidElement {
        self.shift_unit(0)
    }

    /// `T = (1, 𝔛_w)`.
    pub fn t(&self) -> GroupoidElement {
        self.shift_unit(1)
    }

    /// `T^{-1} = (−1, 𝔛_w)`.
    pub fn t_inv(&self) -> GroupoidElement {
        self.shift_unit(-1)
    }

    fn shift_unit(&self, m: i64) -> GroupoidElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Vec::new(), BigRational::one());
        GroupoidElement { terms: BTreeMap::from([(m, Block { span: Span::EMPTY, coeffs })]) }
    }

    /// `D_a`: the characteristic function of `{x : x[0] = a}` at shift 0.
    pub fn d(&self, letter: u8) -> Result<GroupoidElement> {
        if letter as usize >= self.letters() {
            return Err(Error::Argument(format!("letter {letter} outside the alphabet")));
        }
        self.from_bisection(&Bisection::new(0, CylinderPattern::word_at(0, &[letter])))
    }

    /// `D_0, …, D_{d−1}, T, T^{-1}`.
    pub fn generators(&self) -> Result<Vec<GroupoidElement>> {
        let mut g = (0..self.letters() as u8).map(|a| self.d(a)).collect::<Result<Vec<_>>>()?;
        g.push(self.t());
        g.push(self.t_inv());
        Ok(g)
    }

    pub fn from_bisection(&self, b: &Bisection) -> Result<GroupoidElement> {
        let span = match b.pattern.window() {
            Some((lo, hi)) => Span { lo, len: (hi - lo + 1) as usize },
            None => Span::EMPTY,
        };
        let coeffs = self
            .words(span.len)?
            .iter()
            .filter(|w| b.pattern.matches(span.lo, w.symbols()))
            .map(|w| (w.symbols().to_vec(), BigRational::one()))
            .collect();
        self.canonical_element(BTreeMap::from([(b.shift, Block { span, coeffs })]))
    }

    /// The same function written on the larger window `to`.
    fn refine(&self, b: &Block, to: Span) -> Result<BTreeMap<Vec<u8>, BigRational>> {
        debug_assert!(to.contains(b.span));
        if to == b.span {
            return Ok(b.coeffs.clone());
        }
        Ok(self
            .words(to.len)?
            .iter()
            .filter_map(|w| b.value(to, w.symbols()).map(|c| (w.symbols().to_vec(), c.clone())))
            .collect())
    }

    fn add_blocks(&self, a: &Block, b: &Block) -> Result<Block> {
        let span = a.span.hull(b.span);
        let mut coeffs = self.refine(a, span)?;
        for (w, c) in self.refine(b, span)? {
            add_into(&mut coeffs, w, c);
        }
        Ok(Block { span, coeffs })
    }

    /// Shrinks the window while the coefficients do not depend on an edge.
    fn shrink(&self, mut b: Block) -> Result<Block> {
        loop {
            if b.coeffs.is_empty() || b.span.len == 0 {
                break;
            }
            if let Some(next) = self.drop_edge(&b, true)? {
                b = next;
                continue;
            }
            match self.drop_edge(&b, false)? {
                Some(next) => b = next,
                None => break,
            }
        }
        if b.span.len == 0 {
            b.span = Span::EMPTY;
        }
        Ok(b)
    }

    fn drop_edge(&self, b: &Block, left: bool) -> Result<Option<Block>> {
        let len = b.span.len;
        let zero = BigRational::zero();
        let mut reduced: BTreeMap<&[u8], &BigRational> = BTreeMap::new();
        for w in self.words(len)? {
            let s = w.symbols();
            let rest = if left { &s[1..] } else { &s[..len - 1] };
            let c = b.coeffs.get(s).unwrap_or(&zero);
            match reduced.entry(rest) {
                Entry::Vacant(e) => {
                    e.insert(c);
                }
                Entry::Occupied(e) => {
                    if *e.get() != c {
                        return Ok(None);
                    }
                }
            }
        }
        let span = Span { lo: if left { b.span.lo + 1 } else { b.span.lo }, len: len - 1 };
        let coeffs = reduced.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w.to_vec(), c.clone())).collect();
        Ok(Some(Block { span, coeffs }))
    }

    fn canonical_element(&self, terms: BTreeMap<i64, Block>) -> Result<GroupoidElement> {
        let mut out = BTreeMap::new();
        for (m, mut b) in terms {
            // keep language words only; anything else is an empty cylinder
            let words = self.words(b.span.len)?;
            b.coeffs.retain(|w, c| !c.is_zero() && words.binary_search_by(|f| f.symbols().cmp(w)).is_ok());
            let b = self.shrink(b)?;
            if !b.coeffs.is_empty() {
                out.insert(m, b);
            }
        }
        Ok(GroupoidElement { terms: out })
    }

    /// Brings an element into canonical form; idempotent.
    pub fn canonicalize(&self, e: &GroupoidElement) -> Result<GroupoidElement> {
        self.canonical_element(e.terms.clone())
    }

    pub fn add(&self, a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
        let mut terms = a.terms.clone();
        for (&m, blk) in &b.terms {
            let merged = match terms.get(&m) {
                Some(x) => self.add_blocks(x, blk)?,
                None => blk.clone(),
            };
            terms.insert(m, merged);
        }
        self.canonical_element(terms)
    }

    pub fn scale(&self, e: &GroupoidElement, c: &BigRational) -> GroupoidElement {
        if c.is_zero() {
            return self.zero();
        }
        let terms = e
            .terms
            .iter()
            .map(|(&m, b)| {
                let coeffs = b.coeffs.iter().map(|(w, x)| (w.clone(), x * c)).collect();
                (m, Block { span: b.span, coeffs })
            })
            .collect();
        GroupoidElement { terms }
    }

    pub fn sub(&self, a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
        self.add(a, &self.scale(b, &-BigRational::one()))
    }

    /// Convolution: the part `(m_a, A)·(m_b, B)` is `x ↦ B(x) A(x^{m_b})` at
    /// shift `m_a + m_b`.
    pub fn multiply(&self, a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
        let mut terms: BTreeMap<i64, Block> = BTreeMap::new();
        for (&ma, ba) in &a.terms {
            for (&mb, bb) in &b.terms {
                let moved = if ba.span.len == 0 { Span::EMPTY } else { Span { lo: ba.span.lo - mb, len: ba.span.len } };
                let span = moved.hull(bb.span);
                let mut coeffs = BTreeMap::new();
                for w in self.words(span.len)? {
                    let s = w.symbols();
                    let (Some(x), Some(y)) =
                        (bb.coeffs.get(span.slice(bb.span, s)), ba.coeffs.get(span.slice(moved, s)))
                    else {
                        continue;
                    };
                    coeffs.insert(s.to_vec(), x * y);
                }
                let part = Block { span, coeffs };
                let merged = match terms.get(&(ma + mb)) {
                    Some(x) => self.add_blocks(x, &part)?,
                    None => part,
                };
                terms.insert(ma + mb, merged);
            }
        }
        self.canonical_element(terms)
    }

    /// `ab − ba`.
    pub fn commutator(&self, a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
        self.sub(&self.multiply(a, b)?, &self.multiply(b, a)?)
    }

    /// Equality as functions on the groupoid.
    pub fn equal(&self, a: &GroupoidElement, b: &GroupoidElement) -> Result<bool> {
        Ok(self.sub(a, b)?.is_zero())
    }

    /// `φ(v) = φ(v_1) ⋯ φ(v_k)` with `φ(a) = D_a T`.
    pub fn phi(&self, v: &[u8]) -> Result<GroupoidElement> {
        let t = self.t();
        let mut acc = self.one();
        for &a in v {
            let g = self.multiply(&self.d(a)?, &t)?;
            acc = self.multiply(&acc, &g)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// The closed form of `φ(v)`: the cylinder `x[−|v|..=−1] = v` at shift `|v|`.
    pub fn phi_bisection(v: &[u8]) -> Bisection {
        Bisection::new(v.len() as i64, CylinderPattern::word_at(-(v.len() as i64), v))
    }

    /// Coordinates of `e` after refining every shift class to `coords`.
    pub fn vector(&self, e: &GroupoidElement, coords: &Coordinates) -> Result<Vec<(usize, BigRational)>> {
        let target = Span { lo: coords.lo, len: coords.window_len() };
        let words = self.words(target.len)?;
        let mut out = Vec::new();
        for (&m, b) in &e.terms {
            let Some(base) = coords.shift_offset(m) else {
                return Err(Error::Argument(format!("shift {m} outside the coordinate range")));
            };
            if !target.contains(b.span) {
                return Err(Error::Argument(format!(
                    "window [{}, {}] outside the coordinate window [{}, {}]",
                    b.span.lo,
                    b.span.hi(),
                    coords.lo,
                    coords.hi
                )));
            }
            for (i, w) in words.iter().enumerate() {
                if let Some(c) = b.value(target, w.symbols()) {
                    out.push((base * words.len() + i, c.clone()));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Exec;
    use crate::words::{factor_language, library};

    fn fib() -> Groupoid {
        Groupoid::new(factor_language(&library::fibonacci(), 24, 2000).unwrap())
    }

    fn tm() -> Groupoid {
        Groupoid::new(factor_language(&library::thue_morse(), 24, 4000).unwrap())
    }

    #[test]
    fn pattern_examples() {
        let t = tm();
        let cube = CylinderPattern::new([(0, 0), (1, 0), (2, 0)]).unwrap();
        assert!(!pattern_nonempty(&cube, t.language()).unwrap());
        assert!(pattern_nonempty(&CylinderPattern::full(), t.language()).unwrap());
        let f = fib();
        let gap = CylinderPattern::new([(0, 0), (2, 0)]).unwrap();
        assert!(pattern_nonempty(&gap, f.language()).unwrap());
        assert!(CylinderPattern::new([(0, 0), (0, 1)]).is_err());
        let wide = CylinderPattern::new([(0, 0), (40, 0)]).unwrap();
        assert!(matches!(pattern_nonempty(&wide, f.language()), Err(Error::Horizon { .. })));
    }

    #[test]
    fn bisection_examples() {
        let f = fib();
        let lang = f.language();
        let t = Bisection::new(1, CylinderPattern::full());
        let ti = Bisection::new(-1, CylinderPattern::full());
        assert_eq!(bisection_product(&t, &ti, lang).unwrap(), Some(Bisection::new(0, CylinderPattern::full())));
        let dx = Bisection::new(0, CylinderPattern::word_at(0, &[0]));
        let dy = Bisection::new(0, CylinderPattern::word_at(0, &[1]));
        assert_eq!(bisection_product(&dx, &dy, lang).unwrap(), None);
        assert_eq!(bisection_product(&dx, &dx, lang).unwrap(), Some(dx.clone()));
        // D_y T D_y T needs "11"
        let yt = bisection_product(&dy, &t, lang).unwrap().unwrap();
        assert_eq!(bisection_product(&yt, &yt, lang).unwrap(), None);
    }

    #[test]
    fn partition_and_units() {
        for g in [fib(), tm()] {
            let one = g.one();
            assert_eq!(g.add(&g.d(0).unwrap(), &g.d(1).unwrap()).unwrap(), one);
            assert_eq!(g.multiply(&g.t(), &g.t_inv()).unwrap(), one);
            assert_eq!(g.multiply(&g.t_inv(), &g.t()).unwrap(), one);
            let e = g.add(&g.phi(&[0, 1]).unwrap(), &g.t_inv()).unwrap();
            assert_eq!(g.multiply(&one, &e).unwrap(), e);
            assert_eq!(g.multiply(&e, &one).unwrap(), e);
            let sum = g.add(&g.phi(&[0]).unwrap(), &g.phi(&[1]).unwrap()).unwrap();
            assert_eq!(sum, g.t());
        }
    }

    #[test]
    fn phi_examples() {
        let t = tm();
        assert!(t.phi(&[0, 0, 0]).unwrap().is_zero());
        assert_eq!(t.phi(&[]).unwrap(), t.one());
        let f = fib();
        let xx = f.phi(&[0, 0]).unwrap();
        assert_eq!(xx.shifts(), vec![2]);
        assert_eq!(xx.window(2), Some(Some((-2, -1))));
        assert_eq!(xx.num_terms(), 1);
        // every y is preceded by x, so φ(xy) only needs x[−1] = y
        let xy = f.phi(&[0, 1]).unwrap();
        assert_eq!(xy.window(2), Some(Some((-1, -1))));
        for v in [&[0u8, 1, 0, 0][..], &[1, 0, 1], &[1, 1]] {
            let direct = f.from_bisection(&Groupoid::phi_bisection(v)).unwrap();
            assert_eq!(f.phi(v).unwrap(), direct);
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_unique() {
        let f = fib();
        let e = f.add(&f.phi(&[0, 1, 0]).unwrap(), &f.multiply(&f.d(0).unwrap(), &f.t_inv()).unwrap()).unwrap();
        assert_eq!(f.canonicalize(&e).unwrap(), e);
        // the same function reached through a wider window
        let wide = f.from_bisection(&Bisection::new(0, CylinderPattern::word_at(-1, &[1, 0]))).unwrap();
        let other = f.from_bisection(&Bisection::new(0, CylinderPattern::word_at(-1, &[0, 0]))).unwrap();
        assert_eq!(f.add(&wide, &other).unwrap(), f.d(0).unwrap());
        assert!(f.equal(&f.sub(&e, &e).unwrap(), &f.zero()).unwrap());
    }

    #[test]
    fn display_dump() {
        let f = fib();
        let s = f.phi(&[0, 0]).unwrap().to_string();
        assert_eq!(s, "2 | window [-2,-1] | 00 | 1\n");
        assert_eq!(f.one().to_string(), "0 | window [] | ε | 1\n");
        assert_eq!(f.zero().to_string(), "0\n");
    }

    #[test]
    fn generators_of_small_level() {
        let f = fib();
        let b = filtration_basis(&f, 1, Default::default(), Exec::Sequential).unwrap();
        assert_eq!(b.dims, vec![1, 4]);
    }

    use proptest::prelude::*;

    fn bisection() -> impl Strategy<Value = Bisection> {
        (-2i64..=2, -2i64..=1, proptest::collection::vec(0u8..2, 0..4))
            .prop_map(|(m, lo, w)| Bisection::new(m, CylinderPattern::word_at(lo, &w)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Characteristic functions multiply like their bisections, and the
        /// canonical form is stable under the ring operations.
        #[test]
        fn bisections_and_elements_agree(a in bisection(), b in bisection(), k in -3i64..4) {
            let g = tm();
            let (ea, eb) = (g.from_bisection(&a).unwrap(), g.from_bisection(&b).unwrap());
            let prod = g.multiply(&ea, &eb).unwrap();
            let via = match bisection_product(&a, &b, g.language()).unwrap() {
                Some(c) => g.from_bisection(&c).unwrap(),
                None => g.zero(),
            };
            prop_assert_eq!(&prod, &via);
            let c = BigRational::from_integer(k.into());
            let sum = g.add(&g.scale(&ea, &c), &eb).unwrap();
            prop_assert_eq!(g.canonicalize(&sum).unwrap(), sum.clone());
            prop_assert_eq!(g.sub(&sum, &eb).unwrap(), g.scale(&ea, &c));
        }
    }
}
