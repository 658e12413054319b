use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::Interferometer;
use crate::matrix::SquareMatrix;

/// Haar-random `m x m` unitary, deterministic in `seed`.
///
/// Entries of a complex Ginibre matrix are drawn row-major (real part, then
/// imaginary part) from a ChaCha8 stream seeded with `seed`. The columns
/// are orthonormalized by modified Gram-Schmidt, run twice for numerical
/// stability. Gram-Schmidt leaves the triangular factor with a real positive
/// diagonal, which is the phase convention that makes the result Haar
/// distributed.
pub fn haar_unitary(m: usize, seed: u64) -> Interferometer {
    assert!(m >= 1, "an interferometer needs at least one mode");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || -> f64 { StandardNormal.sample(&mut rng) };
    let mut cols: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for col in cols.iter_mut() {
            let re = gauss();
            let im = gauss();
            col[i] = Complex64::new(re, im);
        }
    }

    for _ in 0..2 {
        for j in 0..m {
            let (done, rest) = cols.split_at_mut(j);
            let col = &mut rest[0];
            for q in done.iter() {
                let proj: Complex64 = q.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
                for (c, a) in col.iter_mut().zip(q) {
                    *c -= proj * a;
                }
            }
            let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in col.iter_mut() {
                *c /= norm;
            }
        }
    }

    let u = SquareMatrix::from_fn(m, |i, j| cols[j][i]).expect("m >= 1");
    Interferometer::new(u).expect("Gram-Schmidt output is unitary")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_for_many_sizes() {
        for m in 1..=16 {
            for seed in 0..5 {
                let u = haar_unitary(m, seed);
                assert_eq!(u.modes(), m);
                assert!(u.unitarity_deviation() < 1e-10);
            }
        }
    }

    #[test]
    fn one_mode_is_a_phase() {
        let u = haar_unitary(1, 42);
        assert!((u.unitary().get(0, 0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = haar_unitary(6, 7);
        let b = haar_unitary(6, 7);
        let c = haar_unitary(6, 8);
        let bits = |u: &Interferometer| {
            u.unitary()
                .entries()
                .iter()
                .map(|z| (z.re.to_bits(), z.im.to_bits()))
                .collect::<Vec<_>>()
        };
        assert_eq!(bits(&a), bits(&b));
        assert_ne!(bits(&a), bits(&c));
    }

    #[test]
    fn first_column_moments_look_haar() {
        // |U_00|^2 of a Haar unitary has mean 1/m.
        let m = 4;
        let trials = 4000;
        let mean: f64 = (0..trials)
            .map(|s| haar_unitary(m, s).unitary().get(0, 0).norm_sqr())
            .sum::<f64>()
            / trials as f64;
        assert!((mean - 0.25).abs() < 0.02, "mean {mean}");
    }
}
