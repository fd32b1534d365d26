use liegrowth::regularize::{
    check_conditions, check_submultiplicative, dense_grid, dyadic_grid, f_prime, preceq_witness_with, select_t,
    Formula, GrowthSeries, DEFAULT_TMAX,
};
use liegrowth::Error;
use proptest::prelude::*;

/// Lexicographically least `(C, D)` by exhaustive exact comparison.
fn preceq_oracle(f: &[u128], g: &[u128], cmax: u128, dmax: usize, lo: usize, hi: usize) -> Option<(u128, usize)> {
    for c in 1..=cmax {
        for d in 1..=dmax {
            if (lo..=hi).all(|n| f[n] <= c * g[d * n]) {
                return Some((c, d));
            }
        }
    }
    None
}

fn series(label: &str, v: &[u128]) -> GrowthSeries {
    GrowthSeries::from_integers(label, v.iter().enumerate().skip(1).map(|(n, &x)| (n as u64, x as u64))).unwrap()
}

#[test]
fn preceq_examples_against_oracle() {
    let sq: Vec<u128> = (0..=800).map(|n| n * n).collect();
    let three: Vec<u128> = (0..=800).map(|n| 3 * n * n).collect();
    let (f, g) = (series("n^2", &sq), series("3n^2", &three));
    assert_eq!(preceq_witness_with(&f, &g, 8, 8, 1, 100).unwrap(), Some((1, 1)));
    assert_eq!(
        preceq_witness_with(&g, &f, 8, 8, 1, 100).unwrap(),
        preceq_oracle(&three, &sq, 8, 8, 1, 100).map(|(c, d)| (c as u64, d as u64))
    );
    let e = preceq_witness_with(&g, &f, 8, 8, 1, 500).unwrap_err();
    assert!(matches!(e, Error::InsufficientSamples(_)), "{e}");
}

#[test]
fn ceil_n_pow_ln_n_submultiplicativity() {
    let f = GrowthSeries::from_formula(Formula::NPowLnN.ceil(), &dense_grid(1, 50)).unwrap();
    let vals: Vec<f64> =
        (0..=50).map(|n: i32| if n == 0 { 0.0 } else { (n as f64).powf((n as f64).ln()).ceil() }).collect();
    let mut oracle = Vec::new();
    for m in 3..=50usize {
        for n in m..=50 - m {
            if vals[m + n] > vals[m] * vals[n] {
                oracle.push((m as u64, n as u64));
            }
        }
    }
    let got: Vec<(u64, u64)> = check_submultiplicative(&f, 3, 50).iter().map(|v| (v.m, v.n)).collect();
    assert_eq!(got, oracle);
    assert!(!got.is_empty());
    assert!(check_submultiplicative(&f, 6, 50).is_empty());
}

#[test]
fn f_prime_against_direct_sum() {
    let grid = dense_grid(1, 4096);
    let f = GrowthSeries::from_integers("p", grid.iter().map(|&n| (n, n * n + 1))).unwrap();
    let t = 3;
    let fp = f_prime(&f, t).unwrap();
    for n in [1u64, 5, 17, 300, 1024] {
        let direct: f64 = (0..t)
            .map(|i| {
                let m = n << i;
                (n as f64).powf(-(i as f64) / t as f64) * (m * m + 1) as f64
            })
            .sum();
        let got = fp.ln_at(n).unwrap().to_f64();
        assert!((got - direct.ln()).abs() < 1e-12, "n = {n}");
    }
    // points whose doubled arguments are missing are dropped
    assert!(fp.ln_at(2048).is_none());
}

#[test]
fn theorem_conditions_for_n_pow_ln_n() {
    let f = GrowthSeries::from_formula(Formula::NPowLnN.ceil(), &dyadic_grid(0, 30)).unwrap();
    let sel = select_t(&f, 1, 1 << 30, DEFAULT_TMAX).unwrap();
    assert_eq!(sel.t, 1);
    let fp = f_prime(&f, 1).unwrap();
    let r = check_conditions(&fp, 1).unwrap();
    // oracle for (a): ln f(2n) − ln f(n) >= ln n − ln 2, in f64
    let ln_f = |n: f64| {
        let l = n.ln() * n.ln();
        if l < 30.0 {
            l.exp().ceil().ln()
        } else {
            l
        }
    };
    let holds: Vec<bool> = (0..30)
        .map(|k| {
            let n = (1u64 << k) as f64;
            ln_f(2.0 * n) - ln_f(n) >= n.ln() - 2f64.ln() - 1e-9
        })
        .collect();
    let start = holds.iter().rposition(|h| !h).map_or(0, |i| i + 1);
    assert_eq!(r.a.onset, Some(1u64 << start));
    assert!(r.a.onset.unwrap() <= 64);
    assert!(r.b.holds());
    assert!(r.c.cauchy_stable && r.c.tail_spread <= 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn preceq_matches_oracle(
        f in proptest::collection::vec(1u128..50, 41),
        g in proptest::collection::vec(1u128..50, 161),
        cmax in 1u128..6,
        dmax in 1usize..4,
    ) {
        let got = preceq_witness_with(&series("f", &f), &series("g", &g), cmax as u64, dmax as u64, 1, 40).unwrap();
        let want = preceq_oracle(&f, &g, cmax, dmax, 1, 40).map(|(c, d)| (c as u64, d as u64));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn submultiplicative_matches_oracle(v in proptest::collection::vec(1u128..30, 31)) {
        let s = series("v", &v);
        let got: Vec<(u64, u64)> = check_submultiplicative(&s, 1, 30).iter().map(|x| (x.m, x.n)).collect();
        let mut want = Vec::new();
        for m in 1..=30usize {
            for n in m..=30 - m {
                if v[m + n] > v[m] * v[n] {
                    want.push((m as u64, n as u64));
                }
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn csv_round_trip(v in proptest::collection::vec(1u64..u64::MAX, 1..40)) {
        let s = GrowthSeries::from_integers("v", v.iter().enumerate().map(|(i, &x)| (i as u64 + 1, x))).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let back = GrowthSeries::read_csv("v", buf.as_slice()).unwrap();
        prop_assert_eq!(back, s);
    }
}
