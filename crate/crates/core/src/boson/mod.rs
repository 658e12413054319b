//! Boson sampling on small interferometers.
//!
//! `n` single photons enter distinct input modes of an `m`-mode unitary `U`.
//! The probability of detecting the output occupancy `t` is
//!
//! ```text
//! P(t) = |per(U_{t,in})|^2 / prod_j t_j!
//! ```
//!
//! where `U_{t,in}` keeps the columns of the input modes and repeats row `j`
//! of `U` `t_j` times. Mode indices are 0-based in this API.

mod haar;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use haar::haar_unitary;

use crate::algos::{permanent_value, Algorithm};
use crate::error::{Error, Result};
use crate::io::{json_text, matrix_from_json, matrix_to_json, AnyMatrix};
use crate::limits::Limits;
use crate::matrix::SquareMatrix;

/// Entrywise tolerance on `U^dagger U - I`.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Largest photon number accepted by [`full_distribution`].
pub const MAX_PHOTONS: usize = 6;

/// An `m`-mode linear-optical network described by its unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Interferometer {
    unitary: SquareMatrix<Complex64>,
}

impl Interferometer {
    /// Rejects matrices that are not unitary within [`UNITARITY_TOL`].
    pub fn new(unitary: SquareMatrix<Complex64>) -> Result<Self> {
        let (row, col, deviation) = max_unitarity_error(&unitary);
        if deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary {
                row,
                col,
                deviation,
            });
        }
        Ok(Interferometer { unitary })
    }

    pub fn modes(&self) -> usize {
        self.unitary.order()
    }

    pub fn unitary(&self) -> &SquareMatrix<Complex64> {
        &self.unitary
    }

    pub fn unitarity_deviation(&self) -> f64 {
        max_unitarity_error(&self.unitary).2
    }

    /// Balanced two-mode coupler `(1/sqrt 2) [[1, 1], [1, -1]]`.
    pub fn balanced_coupler() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let c = |x: f64| Complex64::new(x, 0.0);
        Interferometer {
            unitary: SquareMatrix::new(2, vec![c(s), c(s), c(s), c(-s)]).expect("2x2"),
        }
    }

    /// Reads the complex-matrix JSON form with an extra `"modes"` key.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let unitary = matrix_from_json(&value)?.into_complex()?;
        match value.get("modes").map(Value::as_u64) {
            Some(Some(m)) if m as usize == unitary.order() => {}
            Some(Some(m)) => {
                return Err(Error::Parse(format!(
                    "`modes` is {m} but the matrix has order {}",
                    unitary.order()
                )))
            }
            _ => {
                return Err(Error::Parse(
                    "interferometer file needs an integer `modes`".into(),
                ))
            }
        }
        Self::new(unitary)
    }

    pub fn to_json(&self) -> String {
        let mut value = matrix_to_json(&AnyMatrix::Complex(self.unitary.clone()))
            .expect("unitary entries are finite");
        value
            .as_object_mut()
            .expect("object")
            .insert("modes".into(), Value::from(self.modes()));
        json_text(&value)
    }
}

fn max_unitarity_error(u: &SquareMatrix<Complex64>) -> (usize, usize, f64) {
    let m = u.order();
    let mut worst = (0, 0, 0.0);
    for i in 0..m {
        for j in 0..m {
            let dot: Complex64 = (0..m).map(|k| u.get(k, i).conj() * u.get(k, j)).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            let dev = (dot - target).norm();
            if dev > worst.2 || dev.is_nan() {
                worst = (i, j, if dev.is_nan() { f64::INFINITY } else { dev });
            }
        }
    }
    worst
}

/// Photon count in each output mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OutputPattern {
    occupancy: Vec<usize>,
}

impl OutputPattern {
    pub fn new(occupancy: Vec<usize>) -> Self {
        OutputPattern { occupancy }
    }

    /// Pattern with one photon per listed mode (repeats allowed).
    pub fn from_modes(modes: usize, detected: &[usize]) -> Result<Self> {
        let mut occupancy = vec![0; modes];
        for &d in detected {
            if d >= modes {
                return Err(Error::IndexOutOfRange {
                    index: d,
                    order: modes,
                });
            }
            occupancy[d] += 1;
        }
        Ok(OutputPattern { occupancy })
    }

    pub fn occupancy(&self) -> &[usize] {
        &self.occupancy
    }

    pub fn modes(&self) -> usize {
        self.occupancy.len()
    }

    pub fn total(&self) -> usize {
        self.occupancy.iter().sum()
    }

    pub fn is_collision_free(&self) -> bool {
        self.occupancy.iter().all(|&t| t <= 1)
    }

    /// `prod_j t_j!`.
    pub fn multiplicity(&self) -> f64 {
        self.occupancy
            .iter()
            .map(|&t| (1..=t).map(|k| k as f64).product::<f64>())
            .product()
    }

    /// Output mode of each detected photon, ascending, with repeats.
    pub fn detected_modes(&self) -> Vec<usize> {
        self.occupancy
            .iter()
            .enumerate()
            .flat_map(|(j, &t)| std::iter::repeat_n(j, t))
            .collect()
    }
}

fn check_inputs(itf: &Interferometer, input_modes: &[usize]) -> Result<()> {
    let m = itf.modes();
    if input_modes.is_empty() {
        return Err(Error::PhotonMismatch {
            inputs: 0,
            outputs: 0,
        });
    }
    let mut seen = vec![false; m];
    for &i in input_modes {
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, order: m });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    Ok(())
}

/// The `n x n` matrix whose permanent is the transition amplitude: columns
/// of `U` at the input modes, rows of `U` at the output modes repeated by
/// occupancy.
pub fn extract_submatrix(
    itf: &Interferometer,
    input_modes: &[usize],
    out: &OutputPattern,
) -> Result<SquareMatrix<Complex64>> {
    check_inputs(itf, input_modes)?;
    if out.modes() != itf.modes() {
        return Err(Error::PatternWidth {
            found: out.modes(),
            modes: itf.modes(),
        });
    }
    if out.total() != input_modes.len() {
        return Err(Error::PhotonMismatch {
            inputs: input_modes.len(),
            outputs: out.total(),
        });
    }
    let rows = out.detected_modes();
    let u = itf.unitary();
    SquareMatrix::from_fn(rows.len(), |r, c| *u.get(rows[r], input_modes[c]))
}

/// Probability of `out`, with Store-zechin as the permanent engine.
pub fn outcome_probability(
    itf: &Interferometer,
    input_modes: &[usize],
    out: &OutputPattern,
) -> Result<f64> {
    outcome_probability_with(
        itf,
        input_modes,
        out,
        Algorithm::StoreZechin,
        &Limits::default(),
    )
}

pub fn outcome_probability_with(
    itf: &Interferometer,
    input_modes: &[usize],
    out: &OutputPattern,
    engine: Algorithm,
    limits: &Limits,
) -> Result<f64> {
    let sub = extract_submatrix(itf, input_modes, out)?;
    let amplitude = permanent_value(&sub, engine, limits)?;
    Ok(amplitude.norm_sqr() / out.multiplicity())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub input: Vec<usize>,
    /// Every output pattern with its probability, in enumeration order.
    pub entries: Vec<(OutputPattern, f64)>,
}

impl OutcomeDistribution {
    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    pub fn probability_of(&self, pattern: &OutputPattern) -> Option<f64> {
        self.entries
            .iter()
            .find(|(p, _)| p == pattern)
            .map(|(_, p)| *p)
    }
}

/// `C(m + n - 1, n)`, the number of ways to place `n` photons in `m` modes.
pub fn outcome_count(modes: usize, photons: usize) -> u128 {
    let top = (modes + photons) as u128 - 1;
    let mut acc: u128 = 1;
    for i in 0..photons as u128 {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// All output multisets of `n` photons in `m` modes. Patterns are ordered
/// lexicographically by their ascending list of detected modes, so for two
/// photons in two modes: `(2,0)`, `(1,1)`, `(0,2)`.
pub fn enumerate_patterns(modes: usize, photons: usize) -> Vec<OutputPattern> {
    fn extend(
        modes: usize,
        left: usize,
        from: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<OutputPattern>,
    ) {
        if left == 0 {
            out.push(OutputPattern::from_modes(modes, cur).expect("modes in range"));
            return;
        }
        for j in from..modes {
            cur.push(j);
            extend(modes, left - 1, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(
        modes,
        photons,
        0,
        &mut Vec::with_capacity(photons),
        &mut out,
    );
    out
}

pub fn full_distribution(
    itf: &Interferometer,
    input_modes: &[usize],
    limits: &Limits,
) -> Result<OutcomeDistribution> {
    full_distribution_with(itf, input_modes, Algorithm::StoreZechin, limits)
}

pub fn full_distribution_with(
    itf: &Interferometer,
    input_modes: &[usize],
    engine: Algorithm,
    limits: &Limits,
) -> Result<OutcomeDistribution> {
    check_inputs(itf, input_modes)?;
    let n = input_modes.len();
    if n > MAX_PHOTONS {
        return Err(Error::TooManyPhotons(n));
    }
    let outcomes = outcome_count(itf.modes(), n);
    if outcomes > limits.enumeration_cap {
        return Err(Error::EnumerationCap {
            photons: n,
            outcomes,
            cap: limits.enumeration_cap,
        });
    }
    let entries = enumerate_patterns(itf.modes(), n)
        .into_iter()
        .map(|pattern| {
            let p = outcome_probability_with(itf, input_modes, &pattern, engine, limits)?;
            Ok((pattern, p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OutcomeDistribution {
        input: input_modes.to_vec(),
        entries,
    })
}

/// Draws `count` patterns by inverse-CDF lookup over the enumerated
/// distribution, using a ChaCha8 stream seeded with `seed`.
pub fn sample_distribution(
    dist: &OutcomeDistribution,
    count: usize,
    seed: u64,
) -> Vec<OutputPattern> {
    let mut cumulative = Vec::with_capacity(dist.entries.len());
    let mut acc = 0.0;
    for (_, p) in &dist.entries {
        acc += p;
        cumulative.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u: f64 = rng.random::<f64>() * acc;
            let idx = cumulative
                .partition_point(|&c| c <= u)
                .min(cumulative.len() - 1);
            dist.entries[idx].0.clone()
        })
        .collect()
}

pub fn sample(
    itf: &Interferometer,
    input_modes: &[usize],
    count: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<OutputPattern>> {
    let dist = full_distribution(itf, input_modes, limits)?;
    Ok(sample_distribution(&dist, count, seed))
}

/// Half the L1 distance between empirical frequencies of `draws` and `dist`.
pub fn total_variation(dist: &OutcomeDistribution, draws: &[OutputPattern]) -> f64 {
    let mut tallies = std::collections::HashMap::new();
    for d in draws {
        *tallies.entry(d).or_insert(0usize) += 1;
    }
    let n = draws.len().max(1) as f64;
    let listed: f64 = dist
        .entries
        .iter()
        .map(|(pattern, p)| (tallies.get(pattern).copied().unwrap_or(0) as f64 / n - p).abs())
        .sum();
    let unlisted: usize = tallies
        .iter()
        .filter(|(pattern, _)| dist.probability_of(pattern).is_none())
        .map(|(_, c)| c)
        .sum();
    0.5 * (listed + unlisted as f64 / n)
}
