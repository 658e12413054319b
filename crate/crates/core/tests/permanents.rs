mod common;

use common::*;
use permlab_core::algos::{
    permanent, permanent_value, repetition_report, store_zechin_with, Algorithm,
};
use permlab_core::cost::{count_formula, AddsVariant};
use permlab_core::{BigInt, BigRational, Complex64, Limits, OpCounter, Ring, SquareMatrix};
use proptest::prelude::*;

fn int_matrix_strategy(max_n: usize) -> impl Strategy<Value = SquareMatrix<BigInt>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-12i64..=12, n * n).prop_map(move |v| {
            SquareMatrix::new(n, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn per(a: &SquareMatrix<BigInt>, alg: Algorithm) -> BigInt {
    permanent_value(a, alg, &Limits::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn all_algorithms_match_brute_force(a in int_matrix_strategy(7)) {
        let oracle = brute_force_permanent(&a);
        for alg in Algorithm::ALL {
            prop_assert_eq!(per(&a, alg), oracle.clone());
        }
    }

    #[test]
    fn invariant_under_row_and_column_permutations(
        (a, rp, cp) in int_matrix_strategy(6).prop_flat_map(|a| {
            let n = a.order();
            (Just(a), perm_strategy(n), perm_strategy(n))
        })
    ) {
        let b = a.permute(&rp, &cp).unwrap();
        for alg in Algorithm::ALL {
            prop_assert_eq!(per(&b, alg), per(&a, alg));
        }
    }

    #[test]
    fn invariant_under_transpose(a in int_matrix_strategy(6)) {
        prop_assert_eq!(per(&a.transpose(), Algorithm::StoreZechin), per(&a, Algorithm::Ryser));
        prop_assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn scaling_a_row_scales_the_permanent(a in int_matrix_strategy(6), s in -7i64..=7, r in 0usize..6) {
        let r = r % a.order();
        let s = BigInt::from(s);
        let scaled = a.scale_row(r, &s).unwrap();
        prop_assert_eq!(per(&scaled, Algorithm::StoreZechin), &s * per(&a, Algorithm::StoreZechin));
    }

    #[test]
    fn development_along_first_row(a in int_matrix_strategy(6)) {
        prop_assume!(a.order() >= 2);
        let developed = (0..a.order()).fold(BigInt::from(0), |acc, j| {
            acc + a.get(0, j) * per(&a.remove_rows_cols(&[0], &[j]).unwrap(), Algorithm::Naive)
        });
        prop_assert_eq!(developed, per(&a, Algorithm::StoreZechin));
    }

    #[test]
    fn minor_preserves_relative_order(a in int_matrix_strategy(6), r in 0usize..6, c in 0usize..6) {
        let n = a.order();
        prop_assume!(n >= 2);
        let (r, c) = (r % n, c % n);
        let m = a.remove_rows_cols(&[r], &[c]).unwrap();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let src_i = if i < r { i } else { i + 1 };
                let src_j = if j < c { j } else { j + 1 };
                prop_assert_eq!(m.get(i, j), a.get(src_i, src_j));
            }
        }
    }

    #[test]
    fn rational_scaling_is_exact(a in int_matrix_strategy(5), p in -9i64..=9, q in 1i64..=9) {
        let rat = a.map(|x| BigRational::from_integer(x.clone()));
        let s = BigRational::new(BigInt::from(p), BigInt::from(q));
        let base = permanent_value(&rat, Algorithm::Ryser, &Limits::default()).unwrap();
        let scaled = permanent_value(&rat.scale_row(0, &s).unwrap(), Algorithm::StoreZechin, &Limits::default()).unwrap();
        prop_assert_eq!(scaled, base * s);
    }
}

#[test]
fn counts_do_not_depend_on_entries() {
    let mut rng = rng(99);
    for n in 2..=8 {
        let a = random_int_matrix(&mut rng, n, -3, 3);
        let b = random_int_matrix(&mut rng, n, -100, 100);
        for alg in Algorithm::ALL {
            let ca = permanent(&a, alg, &Limits::default()).unwrap().counts;
            let cb = permanent(&b, alg, &Limits::default()).unwrap().counts;
            assert_eq!(ca, cb, "{alg} n={n}");
            assert_eq!(
                ca,
                count_formula(alg, n, AddsVariant::Exact).unwrap().counts,
                "{alg} n={n}"
            );
        }
    }
}

#[test]
fn complex_ryser_and_store_zechin_agree() {
    let mut rng = rng(3);
    for n in 1..=12 {
        let a = random_complex_matrix(&mut rng, n);
        let r = permanent_value(&a, Algorithm::Ryser, &Limits::default()).unwrap();
        let s = permanent_value(&a, Algorithm::StoreZechin, &Limits::default()).unwrap();
        assert!(close(r, s, 1e-9), "n={n}: {r} vs {s}");
        if n <= 7 {
            assert!(close(brute_force_permanent(&a), s, 1e-9));
        }
    }
}

#[test]
fn published_examples() {
    let a = int_matrix(&[&[7, 0, 1, 2], &[5, 3, 4, 5], &[3, 5, 6, 7], &[1, 7, 8, 9]]);
    let r = permanent(&a, Algorithm::Naive, &Limits::default()).unwrap();
    assert_eq!(r.value, BigInt::from(9722));
    assert_eq!(r.counts.multiplications, 72);

    let id3 = SquareMatrix::<BigInt>::identity(3).unwrap();
    assert_eq!(per(&id3, Algorithm::Naive), BigInt::from(1));
    let ones3 = SquareMatrix::from_fn(3, |_, _| BigInt::from(1)).unwrap();
    assert_eq!(per(&ones3, Algorithm::Ryser), BigInt::from(6));

    let z = |re: f64| Complex64::new(re, 0.0);
    let c = SquareMatrix::new(2, vec![z(1.0), z(2.0), z(3.0), z(4.0)]).unwrap();
    let v = permanent_value(&c, Algorithm::StoreZechin, &Limits::default()).unwrap();
    assert!(v.approx_eq(&z(10.0)));
}

#[test]
fn zero_row_kills_the_permanent() {
    let mut rng = rng(1);
    let a = random_int_matrix(&mut rng, 5, -9, 9);
    let z = a.scale_row(3, &BigInt::from(0)).unwrap();
    for alg in Algorithm::ALL {
        assert_eq!(per(&z, alg), BigInt::from(0));
    }
}

#[test]
fn large_entries_do_not_overflow() {
    let big = BigInt::from(i64::MAX);
    let a = SquareMatrix::from_fn(6, |_, _| big.clone()).unwrap();
    let expected = BigInt::from(720) * num_traits::pow(big.clone(), 6);
    for alg in Algorithm::ALL {
        assert_eq!(per(&a, alg), expected);
    }
}

#[test]
fn memo_keys_computed_at_most_once() {
    let mut rng = rng(8);
    for n in 3..=14 {
        let a = random_complex_matrix(&mut rng, n);
        let (_, stats) = store_zechin_with(&a, &OpCounter::new(), &Limits::default()).unwrap();
        assert!(stats.computed <= stats.distinct_keys);
        // every subset of size 2..n-1 is needed by the full expansion
        assert_eq!(stats.computed, stats.distinct_keys);
    }
}

#[test]
fn repetition_layers_follow_binomials() {
    for n in 4..=10 {
        let report = repetition_report(n).unwrap();
        assert_eq!(report.per_layer.len(), n - 3);
        for (layer, rep) in &report.per_layer {
            assert_eq!(rep.order, n - layer);
        }
    }
}
