mod common;

use liegrowth::liecomm::{
    commutator_dim, commutator_dims, lie_growth_proxy, verify_quarter_bound, CommutatorRankProblem,
};
use liegrowth::linalg::FieldDescriptor;
use liegrowth::monomial::MonomialAlgebra;
use liegrowth::words::{factor_language, library, FactorLanguage, FiniteWord};
use liegrowth::{Error, Exec};
use proptest::prelude::*;

fn algebra(src: &liegrowth::words::WordSource, h: usize) -> (MonomialAlgebra, Vec<u8>) {
    let lang = factor_language(src, h, 10_000).unwrap();
    let w = lang.prefix().to_vec();
    (MonomialAlgebra::new(lang), w)
}

#[test]
fn commutator_dims_match_dense_oracle() {
    let gf = FieldDescriptor::prime(32003).unwrap();
    for src in [library::fibonacci(), library::thue_morse()] {
        let (alg, w) = algebra(&src, 12);
        let q = commutator_dims(&alg, 12, FieldDescriptor::Rationals, Exec::Parallel).unwrap();
        let p = commutator_dims(&alg, 12, gf, Exec::Sequential).unwrap();
        assert_eq!(q, p);
        for n in 2..=9 {
            let rows = common::commutator_rows(&w, n);
            assert_eq!(q[n - 1], common::rank_q(&rows), "n = {n}");
            assert_eq!(p[n - 1], common::rank_mod(&rows, 32003), "n = {n}");
        }
    }
}

#[test]
fn quarter_bound_holds() {
    for src in [library::fibonacci(), library::thue_morse()] {
        let (alg, _) = algebra(&src, 12);
        for n in 4..=12 {
            let r = verify_quarter_bound(&alg, n, FieldDescriptor::Rationals).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(4 * r.comm_dim >= r.dim_a_n_minus_2, r.pass);
            assert!(r.half_holds);
            assert!(r.chosen_j.is_some());
        }
        assert!(matches!(verify_quarter_bound(&alg, 2, FieldDescriptor::Rationals), Err(Error::Argument(_))));
    }
}

#[test]
fn centers_match_oracle() {
    for src in [library::fibonacci(), library::thue_morse()] {
        let (alg, w) = algebra(&src, 10);
        for n in 1..=8 {
            assert_eq!(alg.center_component(n).unwrap(), 0);
            assert_eq!(alg.center_component_by_kernels(n).unwrap(), 0);
            assert_eq!(common::center_dim(&w, n, 2), 0);
        }
    }
    let (per, w) = algebra(&library::periodic_01(), 10);
    let dims: Vec<usize> = (1..=4).map(|n| per.center_component(n).unwrap()).collect();
    let oracle: Vec<usize> = (1..=4).map(|n| common::center_dim(&w, n, 2)).collect();
    assert_eq!(dims, oracle);
    assert!(dims.iter().any(|&d| d > 0));
}

#[test]
fn growth_and_proxy() {
    let (alg, _) = algebra(&library::fibonacci(), 12);
    let rows = alg.growth_table();
    for r in &rows {
        assert_eq!(r.dim, r.n + 1);
        assert_eq!(r.growth, (1..=r.n).map(|k| k + 1).sum::<usize>());
        // f <= γ <= n c(n)
        assert!(r.dim <= r.growth && r.growth <= r.n * r.dim);
    }
    let proxy = lie_growth_proxy(&alg, 12, FieldDescriptor::Rationals, Exec::Parallel).unwrap();
    assert!(proxy.iter().all(|p| p.holds));
}

#[test]
fn monomial_products() {
    let (alg, _) = algebra(&library::fibonacci(), 8);
    let x = FiniteWord::new(vec![0]);
    let y = FiniteWord::new(vec![1]);
    assert_eq!(alg.multiply(&x, &y).unwrap(), Some(FiniteWord::new(vec![0, 1])));
    assert_eq!(alg.multiply(&y, &y).unwrap(), None);
    assert_eq!(alg.nilpotency_degree(1).unwrap(), 2);
    assert_eq!(alg.nilpotency_degree(0).unwrap(), 3);
    assert!(matches!(alg.center_component(8), Err(Error::Horizon { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ranks_agree_across_fields(w in proptest::collection::vec(0u8..2, 40..120), n in 2usize..7) {
        let lang = FactorLanguage::from_prefix(w.clone(), 2, 8, Exec::Sequential).unwrap();
        let alg = MonomialAlgebra::new(lang);
        let q = commutator_dim(&alg, n, FieldDescriptor::Rationals).unwrap();
        let p = commutator_dim(&alg, n, FieldDescriptor::prime(32003).unwrap()).unwrap();
        prop_assert_eq!(q, p);
        prop_assert_eq!(q, common::rank_q(&common::commutator_rows(&w, n)));
        let prob = CommutatorRankProblem::build(&alg, n).unwrap();
        prop_assert_eq!(prob.rank_half(FieldDescriptor::Rationals).unwrap(), q);
        prop_assert_eq!(alg.center_component(n).unwrap(), alg.center_component_by_kernels(n).unwrap());
    }
}
