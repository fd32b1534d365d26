mod common;

use liegrowth::words::{
    biinfinite_extend, factor_language, factor_language_stable, library, recurrence_constant, sigma_bounds,
    sigma_reduce, FactorLanguage, FiniteWord, WordSource,
};
use liegrowth::{Error, Exec};
use proptest::prelude::*;

#[test]
fn library_prefixes_match_iteration() {
    let fib = library::fibonacci().prefix(500).unwrap();
    assert_eq!(fib.symbols(), common::fibonacci(500).as_slice());
    assert_eq!(library::fibonacci().prefix(6).unwrap().symbols(), &[0, 1, 0, 0, 1, 0]);
    let tm = library::thue_morse().prefix(1024).unwrap();
    assert_eq!(tm.symbols(), common::thue_morse(1024).as_slice());
    assert_eq!(library::thue_morse().prefix(8).unwrap().symbols(), &[0, 1, 1, 0, 1, 0, 0, 1]);
    assert!(library::chacon().prefix(0).unwrap().is_empty());
}

#[test]
fn complexity_against_window_scan() {
    let fib = factor_language_stable(&library::fibonacci(), 30, 10_000, Exec::Parallel).unwrap();
    assert_eq!(fib.stable(), Some(true));
    let w = common::fibonacci(10_000);
    for n in 1..=30 {
        assert_eq!(fib.complexity(n).unwrap(), n + 1);
        assert_eq!(fib.complexity(n).unwrap(), common::windows(&w, n).len());
    }
    let tm = factor_language_stable(&library::thue_morse(), 20, 10_000, Exec::Parallel).unwrap();
    assert_eq!(tm.stable(), Some(true));
    let w = common::thue_morse(10_000);
    for n in 1..=20 {
        let oracle: Vec<FiniteWord> = common::windows(&w, n).into_iter().map(FiniteWord::new).collect();
        assert_eq!(tm.factors(n).unwrap(), oracle.as_slice(), "n = {n}");
    }
    assert_eq!(&tm.complexities()[..4], &[2, 4, 6, 10]);
}

#[test]
fn parallel_scan_is_identical() {
    let w = common::thue_morse(3000);
    let a = FactorLanguage::from_prefix(w.clone(), 2, 40, Exec::Sequential).unwrap();
    let b = FactorLanguage::from_prefix(w, 2, 40, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}

/// Smallest `C` such that every length-`C` window of `w` contains `u`.
fn recurrence_oracle(w: &[u8], u: &[u8]) -> Option<usize> {
    (u.len()..=w.len()).find(|&c| w.windows(c).all(|win| win.windows(u.len()).any(|x| x == u)))
}

#[test]
fn recurrence_constants() {
    let lang = factor_language(&library::fibonacci(), 8, 1000).unwrap();
    let w = common::fibonacci(1000);
    assert_eq!(recurrence_constant(&lang, &FiniteWord::new(vec![0])).unwrap(), Some(2));
    for n in 1..=5 {
        for u in lang.factors(n).unwrap() {
            let got = recurrence_constant(&lang, u).unwrap();
            assert_eq!(got, recurrence_oracle(&w, u.symbols()), "{u}");
        }
    }
    let sparse = factor_language(&library::sparse_ones(2000), 3, 2000).unwrap();
    assert_eq!(recurrence_constant(&sparse, &FiniteWord::new(vec![1])).unwrap(), None);
    let missing = recurrence_constant(&lang, &FiniteWord::new(vec![1, 1]));
    assert!(matches!(missing, Err(Error::Argument(_))));
}

#[test]
fn sigma_reduction_examples() {
    let w = WordSource::explicit(3, vec![1, 0, 2, 0, 1]).unwrap();
    let r = sigma_reduce(w).prefix(9).unwrap();
    assert_eq!(r.symbols(), &[0, 1, 1, 0, 1, 0, 1, 1, 1]);
    let one = WordSource::periodic(1, vec![0]).unwrap();
    assert_eq!(sigma_reduce(one).prefix(6).unwrap().symbols(), &[0, 1, 0, 1, 0, 1]);
}

#[test]
fn sigma_bounds_three_letters() {
    let d = 3;
    let max_n = 15;
    let src = library::tribonacci();
    let orig = factor_language(&src, max_n + 2 * d + 2, 40_000).unwrap();
    let red = factor_language(&sigma_reduce(src.clone()), (d + 1) * max_n, 80_000).unwrap();
    let rows = sigma_bounds(&orig, &red, max_n).unwrap();
    let w = src.prefix(40_000).unwrap().into_symbols();
    let wr = sigma_reduce(src).prefix(80_000).unwrap().into_symbols();
    for r in &rows {
        let n = r.n;
        let cw = |k: usize| common::windows(&w, k).len();
        let cr = |k: usize| common::windows(&wr, k).len();
        assert_eq!(r.c_w, cw(n));
        assert_eq!(r.c_reduced_scaled, cr((d + 1) * n));
        let sum: usize = (0..=2 * d + 2).map(|p| cw(n + p)).sum();
        assert_eq!(r.upper_bound, (d + 1) * (d + 1) * sum);
        assert!(r.lower_holds && r.upper_holds, "{r:?}");
    }
}

#[test]
fn biinfinite_extension() {
    let fib = library::fibonacci();
    let ap = biinfinite_extend(&fib, 3, 10_000).unwrap();
    assert_eq!(ap.words.len(), 3);
    let w = common::fibonacci(10_000);
    for (t, (p, q)) in ap.paddings.iter().enumerate() {
        assert_eq!(p.len(), q.len());
        assert!(!p.is_empty());
        let inner = &ap.words[t];
        let outer = &ap.words[t + 1];
        assert_eq!(&p.concat(inner).concat(q), outer);
    }
    let center = ap.center().symbols();
    for n in 1..=center.len().min(40) {
        let scan = common::windows(&w, n);
        assert!(common::windows(center, n).is_subset(&scan));
    }
    let c = biinfinite_extend(&library::constant(), 2, 10).unwrap();
    assert_eq!(c.words[1].symbols(), &[0, 0, 0]);
    let e = biinfinite_extend(&library::non_recurrent(), 2, 1_000_000).unwrap_err();
    assert!(matches!(e, Error::InsufficientPrefix { .. }));
}

fn substitution() -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (proptest::collection::vec(0u8..2, 1..4), proptest::collection::vec(0u8..2, 1..5)).prop_map(|(tail, r1)| {
        let mut r0 = vec![0];
        r0.extend(tail);
        (r0, r1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prefixes_are_monotone((r0, r1) in substitution(), n in 0usize..200, extra in 0usize..200) {
        let src = WordSource::substitution(vec![r0.clone(), r1.clone()], 0).unwrap();
        let short = src.prefix(n).unwrap();
        let long = src.prefix(n + extra).unwrap();
        prop_assert_eq!(short.symbols(), &long.symbols()[..n]);
        let oracle = common::iterate(&[&r0, &r1], 0, n + extra);
        prop_assert_eq!(long.symbols(), oracle.as_slice());
    }

    #[test]
    fn factor_sets_are_closed(w in proptest::collection::vec(0u8..3, 30..200), h in 1usize..12) {
        let lang = FactorLanguage::from_prefix(w.clone(), 3, h, Exec::Sequential).unwrap();
        for n in 1..=h {
            prop_assert_eq!(lang.complexity(n).unwrap(), common::windows(&w, n).len());
        }
        for n in 1..h {
            prop_assert!(lang.complexity(n).unwrap() <= lang.complexity(n + 1).unwrap() + 1);
            prop_assert!(lang.complexity(n + 1).unwrap() <= 3 * lang.complexity(n).unwrap());
            for f in lang.factors(n + 1).unwrap() {
                let s = f.symbols();
                prop_assert!(lang.contains(&s[1..]).unwrap());
                prop_assert!(lang.contains(&s[..n]).unwrap());
            }
        }
    }
}
