//! Resource guards for the exponential algorithms.

use crate::error::{Error, Result};

/// Environment variable read by [`Limits::from_env`].
pub const LIMITS_ENV: &str = "PERMLAB_LIMITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest order accepted by the naive `n!` enumeration.
    pub naive_order_limit: usize,
    /// Largest order accepted by Ryser and Store-zechin.
    pub subset_order_limit: usize,
    /// Largest number of outcomes a boson-sampling distribution may enumerate.
    pub enumeration_cap: u128,
    /// Upper bound, in bytes, on the Store-zechin memo table.
    pub memo_budget_bytes: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            naive_order_limit: 12,
            subset_order_limit: 30,
            enumeration_cap: 1_000_000,
            memo_budget_bytes: 1 << 30,
        }
    }
}

impl Limits {
    /// Parses overrides of the form `key=value[,key=value...]` on top of the
    /// defaults. Keys: `naive_order_limit`, `subset_order_limit`,
    /// `enumeration_cap`, `memo_budget_bytes`.
    pub fn parse_overrides(spec: &str) -> Result<Self> {
        let mut limits = Limits::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("limit override `{item}` is not key=value")))?;
            let bad = || Error::Parse(format!("limit `{key}` has invalid value `{value}`"));
            let value = value.trim();
            match key.trim() {
                "naive_order_limit" => {
                    limits.naive_order_limit = value.parse().map_err(|_| bad())?
                }
                "subset_order_limit" => {
                    let v: usize = value.parse().map_err(|_| bad())?;
                    if v > crate::matrix::ColumnSubset::MAX_WIDTH {
                        return Err(bad());
                    }
                    limits.subset_order_limit = v;
                }
                "enumeration_cap" => limits.enumeration_cap = value.parse().map_err(|_| bad())?,
                "memo_budget_bytes" => {
                    limits.memo_budget_bytes = value.parse().map_err(|_| bad())?
                }
                other => return Err(Error::Parse(format!("unknown limit `{other}`"))),
            }
        }
        Ok(limits)
    }

    /// Defaults, overridden by `PERMLAB_LIMITS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_ENV) {
            Ok(spec) => Self::parse_overrides(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply_on_top_of_defaults() {
        let l = Limits::parse_overrides("naive_order_limit=9, enumeration_cap=50").unwrap();
        assert_eq!(l.naive_order_limit, 9);
        assert_eq!(l.enumeration_cap, 50);
        assert_eq!(l.subset_order_limit, 30);
        assert_eq!(Limits::parse_overrides("").unwrap(), Limits::default());
    }

    #[test]
    fn bad_overrides_are_rejected() {
        assert!(Limits::parse_overrides("naive_order_limit").is_err());
        assert!(Limits::parse_overrides("colour=blue").is_err());
        assert!(Limits::parse_overrides("subset_order_limit=x").is_err());
        assert!(Limits::parse_overrides("subset_order_limit=64").is_err());
    }
}
