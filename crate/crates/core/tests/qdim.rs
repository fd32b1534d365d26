use liegrowth::qdim::{
    alpha_hat, dim_estimate, double_exponential, dyadic_reals, formula_trace, phi_ln, separating_grid,
    verify_corollary_61, verify_corollary_62, AlphaHat, DEFAULT_TAIL,
};
use liegrowth::regularize::Formula;
use liegrowth::{Exec, Real};
use proptest::prelude::*;

/// `ln Φ_α^q(n)` in plain f64.
fn phi_ln_f64(q: u32, a: f64, n: f64) -> f64 {
    match q {
        2 => a * n.ln(),
        3 => n.powf(a / (a + 1.0)),
        4 => n / n.ln().powf(1.0 / a),
        5 => n / n.ln().ln().powf(1.0 / a),
        _ => unreachable!(),
    }
}

#[test]
fn alpha_hat_round_trip_against_f64() {
    for q in 2..=5 {
        for a in [0.3, 0.5, 1.0, 2.5] {
            for k in [5, 10, 20, 40, 60] {
                let n = (k as f64).exp2();
                let lf = phi_ln_f64(q, a, n);
                let got = alpha_hat(q, &Real::from_f64(lf), &Real::from_f64(n)).unwrap().to_f64();
                assert!(((got - a) / a).abs() < 1e-9, "q={q} a={a} k={k}: {got}");
                let lib = phi_ln(q, &Real::from_f64(a), &Real::from_f64(n)).unwrap().to_f64();
                assert!(((lib - lf) / lf).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn doubling_inequality_on_dyadic_grids() {
    let grid = dyadic_reals(1, 24, 1);
    for (q, sigma) in [(3, 1.0), (3, 2.0), (4, 0.5), (4, 1.0), (5, 1.0)] {
        let r = verify_corollary_61(q, sigma, &grid, Exec::Parallel).unwrap();
        assert!(r.doubling.holds(), "q={q} σ={sigma}: {:?}", r.doubling);
        assert!(r.doubling.onset_log2_n.is_some());
        assert!(r.increasing.holds());
    }
    // at q = 3, σ = 0.5 the inequality (2^{1/3} − 1) n^{1/3} >= ln n starts at
    // n = 2^17, too late in a grid ending at 2^24 but early in one ending at 2^40
    let short = verify_corollary_61(3, 0.5, &grid, Exec::Parallel).unwrap();
    assert!(!short.doubling.holds());
    let long = verify_corollary_61(3, 0.5, &dyadic_reals(1, 40, 1), Exec::Parallel).unwrap();
    assert_eq!(long.doubling.onset_log2_n, Some(17.0));
}

#[test]
fn separating_functions_change_layer() {
    for q in [2, 3, 4] {
        let r = verify_corollary_62(q, &separating_grid(q), false, Exec::Parallel).unwrap();
        assert!(r.level_q.diverging, "q={q}");
        assert!(r.level_next.vanishing, "q={q}");
    }
}

#[test]
fn n_pow_ln_n_dimensions() {
    let grid = dyadic_reals(4, 4400, 8);
    let tr = formula_trace(&Formula::NPowLnN, &grid, Exec::Parallel).unwrap();
    let d2 = dim_estimate(2, &tr, DEFAULT_TAIL, Exec::Parallel).unwrap();
    let d3 = dim_estimate(3, &tr, DEFAULT_TAIL, Exec::Parallel).unwrap();
    assert!(d2.trace.last().unwrap().alpha.to_f64() > 100.0);
    assert!(d3.dim < 0.01, "{}", d3.dim);
    // f64 oracle at the last grid point: α̂₂ = ln n, α̂₃ = r / (1 − r), r = 2 ln ln n / ln n
    let ln_n = d2.trace.last().unwrap().log2_n * 2f64.ln();
    assert!((d2.trace.last().unwrap().alpha.to_f64() - ln_n).abs() < 1e-9);
    let r = 2.0 * ln_n.ln() / ln_n;
    assert!((d3.trace.last().unwrap().alpha.to_f64() - r / (1.0 - r)).abs() < 1e-12);
}

#[test]
fn layer_signals() {
    let n = Real::from_u64(1 << 20);
    assert_eq!(alpha_hat(4, &Real::from_f64(-1.0), &n).unwrap(), AlphaHat::BelowLayer);
    assert_eq!(alpha_hat(4, &Real::from_u64(1 << 21), &n).unwrap(), AlphaHat::AboveLayer);
    assert!(alpha_hat(5, &Real::one(), &Real::from_u64(3)).is_err());
    assert_eq!(double_exponential(0.0, 1.0, 3).len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_hat_inverts_phi(q in 1u32..7, a in 0.05f64..8.0, k in 22i64..400) {
        let n = Real::pow2(k);
        let alpha = Real::from_f64(a);
        let lf = phi_ln(q, &alpha, &n).unwrap();
        let got = alpha_hat(q, &lf, &n).unwrap();
        let v = got.value().expect("inside the layer").to_f64();
        prop_assert!(((v - a) / a).abs() < 1e-9, "q={} a={} got {}", q, a, v);
    }
}
