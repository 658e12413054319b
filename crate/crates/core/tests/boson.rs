mod common;

use common::brute_force_permanent;
use permlab_core::algos::Algorithm;
use permlab_core::boson::{
    enumerate_patterns, extract_submatrix, full_distribution, full_distribution_with, haar_unitary,
    outcome_probability, outcome_probability_with, sample, total_variation, Interferometer,
    OutputPattern,
};
use permlab_core::{Complex64, Limits, SquareMatrix};

/// Two-photon amplitude by summing over which input photon reaches which
/// detector, written without any permanent routine.
fn two_photon_probability(
    u: &SquareMatrix<Complex64>,
    inputs: [usize; 2],
    outputs: [usize; 2],
) -> f64 {
    let [a, b] = inputs;
    let [x, y] = outputs;
    let amp = u.get(x, a) * u.get(y, b) + u.get(x, b) * u.get(y, a);
    let divisor = if x == y { 2.0 } else { 1.0 };
    amp.norm_sqr() / divisor
}

#[test]
fn bunched_coupler_probability_matches_two_photon_oracle() {
    let u = Interferometer::balanced_coupler();
    let p = outcome_probability(&u, &[0, 1], &OutputPattern::new(vec![2, 0])).unwrap();
    let oracle = two_photon_probability(u.unitary(), [0, 1], [0, 0]);
    assert!((p - oracle).abs() < 1e-15);
    assert!((p - 0.5).abs() < 1e-15);
}

#[test]
fn two_photon_oracle_on_haar_unitaries() {
    for seed in 0..5 {
        let u = haar_unitary(4, seed);
        for pattern in enumerate_patterns(4, 2) {
            let det = pattern.detected_modes();
            let p = outcome_probability(&u, &[1, 3], &pattern).unwrap();
            let oracle = two_photon_probability(u.unitary(), [1, 3], [det[0], det[1]]);
            assert!((p - oracle).abs() < 1e-14, "{pattern:?}");
        }
    }
}

#[test]
fn engines_agree_on_every_pattern() {
    let limits = Limits::default();
    for (n, m) in [(2, 3), (3, 4), (4, 5), (5, 5)] {
        let u = haar_unitary(m, (n * 10 + m) as u64);
        let input: Vec<usize> = (0..n).collect();
        for pattern in enumerate_patterns(m, n) {
            let sz =
                outcome_probability_with(&u, &input, &pattern, Algorithm::StoreZechin, &limits)
                    .unwrap();
            for alg in [Algorithm::Naive, Algorithm::Ryser] {
                let other = outcome_probability_with(&u, &input, &pattern, alg, &limits).unwrap();
                assert!(
                    (sz - other).abs() <= 1e-9 * sz.max(other) + 1e-15,
                    "{alg} {pattern:?}: {sz} vs {other}"
                );
            }
        }
    }
}

#[test]
fn three_photon_haar_cross_checked_with_brute_force() {
    let u = haar_unitary(6, 31);
    let dist = full_distribution(&u, &[0, 2, 4], &Limits::default()).unwrap();
    assert_eq!(dist.entries.len(), 56);
    assert!((dist.total_probability() - 1.0).abs() < 1e-9);
    for (pattern, p) in &dist.entries {
        let sub = extract_submatrix(&u, &[0, 2, 4], pattern).unwrap();
        let oracle = brute_force_permanent(&sub).norm_sqr() / pattern.multiplicity();
        assert!((p - oracle).abs() < 1e-12);
    }
}

#[test]
fn single_photon_distribution_is_a_column() {
    let u = haar_unitary(2, 4);
    let dist = full_distribution(&u, &[0], &Limits::default()).unwrap();
    assert_eq!(dist.entries.len(), 2);
    assert!((dist.entries[0].1 - u.unitary().get(0, 0).norm_sqr()).abs() < 1e-15);
    assert!((dist.entries[1].1 - u.unitary().get(1, 0).norm_sqr()).abs() < 1e-15);
    assert!((dist.total_probability() - 1.0).abs() < 1e-12);
}

#[test]
fn relabeling_outputs_permutes_the_distribution() {
    let limits = Limits::default();
    let u = haar_unitary(5, 77);
    let relabel = [3, 0, 4, 1, 2];
    // row i of the relabeled unitary is row relabel[i] of the original
    let v = Interferometer::new(u.unitary().permute(&relabel, &[0, 1, 2, 3, 4]).unwrap()).unwrap();
    let input = [0, 1, 2];
    let du = full_distribution(&u, &input, &limits).unwrap();
    let dv = full_distribution(&v, &input, &limits).unwrap();
    for (pattern, p) in &dv.entries {
        let mut moved = vec![0; 5];
        for (i, &t) in pattern.occupancy().iter().enumerate() {
            moved[relabel[i]] = t;
        }
        let q = du.probability_of(&OutputPattern::new(moved)).unwrap();
        assert!((p - q).abs() < 1e-12);
    }
}

#[test]
fn sampling_is_deterministic_per_seed() {
    let limits = Limits::default();
    let u = haar_unitary(5, 12);
    let a = sample(&u, &[0, 1, 2], 500, 42, &limits).unwrap();
    let b = sample(&u, &[0, 1, 2], 500, 42, &limits).unwrap();
    let c = sample(&u, &[0, 1, 2], 500, 43, &limits).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.iter().all(|p| p.total() == 3));
}

#[test]
fn sampler_converges() {
    let limits = Limits::default();
    let u = haar_unitary(4, 5);
    let dist = full_distribution_with(&u, &[0, 1], Algorithm::Ryser, &limits).unwrap();
    let draws = sample(&u, &[0, 1], 50_000, 8, &limits).unwrap();
    assert!(total_variation(&dist, &draws) < 0.02);
}
