//! Store-zechin: row expansion with every sub-permanent stored and reused.
//!
//! `per(S)` denotes the permanent of the leading `|S|` rows restricted to the
//! columns in `S`. Developing along the last of those rows gives
//!
//! ```text
//! per(S) = sum_{j in S} a[|S|-1][j] * per(S \ {j})
//! ```
//!
//! The recursion stops at order 2, evaluated directly with two
//! multiplications and one addition. Every distinct column subset is
//! evaluated once and then read back from a flat table of `2^n` slots indexed
//! by the subset's bitmask.
//!
//! Operation counts (derived, not tabulated beyond n = 5): a subset of size
//! `k >= 2` costs `k` multiplications and `k - 1` additions the first time it
//! is needed, which sums to `n * 2^(n-1) - n` multiplications and
//! `n * 2^(n-1) - 2^n + 1` additions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::count::{OpCount, OpCounter, Tally};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::{ColumnSubset, SquareMatrix};
use crate::ring::Ring;

/// Memo-table activity of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StoreZechinStats {
    /// Sub-permanents computed (cache misses).
    pub computed: u64,
    /// Sub-permanents served from the table.
    pub reused: u64,
    /// Number of distinct memoizable subsets, sizes `2..n-1`.
    pub distinct_keys: u64,
}

/// Cost of each layer-1 term `a[n][j] * per(A_{n;j})`, attributed to the term
/// that first demanded each shared sub-permanent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributionReport {
    pub order: usize,
    pub per_term: Vec<OpCount>,
    /// Additions that combine the `n` layer-1 terms.
    pub final_combination_adds: u64,
    pub totals: OpCount,
}

struct Engine<'a, R, T> {
    a: &'a SquareMatrix<R>,
    tally: &'a T,
    memo: Vec<Option<R>>,
    stats: StoreZechinStats,
}

impl<R: Ring, T: Tally> Engine<'_, R, T> {
    fn subpermanent(&mut self, cols: ColumnSubset) -> R {
        let a = self.a;
        if cols.len() == 1 {
            return a.get(0, cols.iter().next().expect("nonempty")).clone();
        }
        let slot = cols.mask() as usize;
        if let Some(v) = &self.memo[slot] {
            self.stats.reused += 1;
            return v.clone();
        }

        let value = if cols.len() == 2 {
            let mut it = cols.iter();
            let (p, q) = (it.next().expect("two"), it.next().expect("two"));
            let x = self.tally.mul(a.get(0, p), a.get(1, q));
            let y = self.tally.mul(a.get(0, q), a.get(1, p));
            self.tally.add(&x, &y)
        } else {
            let row = cols.len() - 1;
            let mut acc: Option<R> = None;
            for j in cols.iter() {
                let minor = self.subpermanent(cols.without(j));
                let term = self.tally.mul(a.get(row, j), &minor);
                acc = Some(match acc {
                    None => term,
                    Some(s) => self.tally.add(&s, &term),
                });
            }
            acc.expect("at least three columns")
        };

        debug_assert!(
            self.memo[slot].is_none(),
            "subset {slot:#b} evaluated twice"
        );
        self.stats.computed += 1;
        self.memo[slot] = Some(value.clone());
        value
    }
}

/// Evaluates the permanent, calling `after_term(j)` once the layer-1 term for
/// column `j` (0-based) is complete and before any term is combined.
fn evaluate<R: Ring, T: Tally>(
    a: &SquareMatrix<R>,
    tally: &T,
    limits: &Limits,
    mut after_term: impl FnMut(usize),
) -> Result<(R, StoreZechinStats)> {
    let n = a.order();
    if n > limits.subset_order_limit {
        return Err(Error::OrderLimit {
            what: "subset order",
            order: n,
            limit: limits.subset_order_limit,
        });
    }
    if n == 1 {
        after_term(0);
        return Ok((a.get(0, 0).clone(), StoreZechinStats::default()));
    }

    let needed = (1u128 << n) * std::mem::size_of::<Option<R>>() as u128;
    if needed > limits.memo_budget_bytes {
        return Err(Error::MemoBudget {
            order: n,
            needed,
            budget: limits.memo_budget_bytes,
        });
    }
    let distinct_keys = if n >= 3 {
        (1u64 << n) - n as u64 - 2
    } else {
        0
    };
    let mut engine = Engine {
        a,
        tally,
        memo: vec![None; 1 << n],
        stats: StoreZechinStats {
            distinct_keys,
            ..Default::default()
        },
    };

    let full = ColumnSubset::full(n);
    let mut terms = Vec::with_capacity(n);
    for j in 0..n {
        let minor = engine.subpermanent(full.without(j));
        terms.push(tally.mul(a.get(n - 1, j), &minor));
        after_term(j);
    }
    let mut terms = terms.into_iter();
    let first = terms.next().expect("n >= 2");
    let value = terms.fold(first, |acc, t| tally.add(&acc, &t));
    Ok((value, engine.stats))
}

/// Store-zechin permanent under an arbitrary tally.
pub fn store_zechin_with<R: Ring, T: Tally>(
    a: &SquareMatrix<R>,
    tally: &T,
    limits: &Limits,
) -> Result<(R, StoreZechinStats)> {
    evaluate(a, tally, limits, |_| {})
}

/// Per-term breakdown of the Store-zechin cost, terms taken left to right.
pub fn store_zechin_attributed<R: Ring>(
    a: &SquareMatrix<R>,
    limits: &Limits,
) -> Result<(R, AttributionReport)> {
    let counter = OpCounter::new();
    let mut marks = Vec::with_capacity(a.order());
    let (value, _) = evaluate(a, &counter, limits, |_| marks.push(counter.snapshot()))?;
    let totals = counter.snapshot();

    let mut per_term = Vec::with_capacity(marks.len());
    let mut previous = OpCount::ZERO;
    for mark in marks {
        per_term.push(mark - previous);
        previous = mark;
    }
    let final_combination_adds = (totals - previous).additions;
    debug_assert_eq!((totals - previous).multiplications, 0);
    Ok((
        value,
        AttributionReport {
            order: a.order(),
            per_term,
            final_combination_adds,
            totals,
        },
    ))
}

/// Repetition of the sub-permanents of one order in the fully unfolded
/// expansion tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRepetition {
    /// Order `k` of the sub-permanents at this layer.
    pub order: usize,
    /// `C(n, k)`.
    pub distinct_subterms: u64,
    /// `(n - k)!`: how often each one appears when nothing is stored.
    pub fold: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionReport {
    pub order: usize,
    /// Keyed by layer `l = n - k`; only layers whose terms repeat (`2 <= k <= n - 2`).
    pub per_layer: BTreeMap<usize, LayerRepetition>,
}

pub fn repetition_report(n: usize) -> Result<RepetitionReport> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    let mut per_layer = BTreeMap::new();
    for k in (2..=n.saturating_sub(2)).rev() {
        let distinct_subterms = binomial(n as u64, k as u64).ok_or(Error::CountOverflow(n))?;
        let fold = (1..=(n - k) as u64)
            .try_fold(1u64, |acc, x| acc.checked_mul(x))
            .ok_or(Error::CountOverflow(n))?;
        per_layer.insert(
            n - k,
            LayerRepetition {
                order: k,
                distinct_subterms,
                fold,
            },
        );
    }
    Ok(RepetitionReport {
        order: n,
        per_layer,
    })
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).ok()
}
