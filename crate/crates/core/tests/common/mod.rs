//! Test-only oracles, written independently of the library algorithms.
#![allow(dead_code)]

use permlab_core::{BigInt, Complex64, Ring, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Permanent by direct enumeration of all permutations (row-by-row choice of
/// an unused column), no sharing of partial results.
pub fn brute_force_permanent<R: Ring>(a: &SquareMatrix<R>) -> R {
    fn go<R: Ring>(
        a: &SquareMatrix<R>,
        row: usize,
        used: &mut Vec<bool>,
        prefix: &mut Vec<usize>,
        acc: &mut R,
    ) {
        let n = a.order();
        if row == n {
            let mut p = R::one();
            for (i, &j) in prefix.iter().enumerate() {
                p = p.mul(a.get(i, j));
            }
            *acc = acc.add(&p);
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                prefix.push(j);
                go(a, row + 1, used, prefix, acc);
                prefix.pop();
                used[j] = false;
            }
        }
    }
    let mut acc = R::zero();
    go(a, 0, &mut vec![false; a.order()], &mut Vec::new(), &mut acc);
    acc
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> SquareMatrix<BigInt> {
    SquareMatrix::from_fn(n, |_, _| BigInt::from(rng.random_range(lo..=hi))).unwrap()
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix<Complex64> {
    SquareMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
    .unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

pub fn int_matrix(rows: &[&[i64]]) -> SquareMatrix<BigInt> {
    SquareMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
    .unwrap()
}

/// Relative comparison for complex values.
pub fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1e-300)
}
