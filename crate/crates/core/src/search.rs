//! Exhaustive enumeration of the differences `P(m) - L(n)` over an index
//! window, and comparison of the multiply-represented values against the
//! published list of 41.
//!
//! Both sequences repeat values at their start (`P(0) = P(1) = P(2) = 1`,
//! `P(3) = P(4) = 2`), so the notion of "two representations" depends on
//! where the indices begin. The canonical convention starts the Padovan
//! index at 4 and the Lucas index at 0, which makes every sequence value
//! appear under exactly one admissible index; the bookkeeping convention
//! starting at `m = 1`, `n = 2` is also provided, and shows how duplicated
//! sequence values inflate the multiply-represented count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::seq::RecurrenceDef;

/// Errors from search configuration.
#[derive(Debug, Error)]
pub enum SearchError {
    #[error("empty index window: {0}")]
    EmptyWindow(String),
}

/// Where the two sequence indices begin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexConvention {
    pub padovan_min: u32,
    pub lucas_min: u32,
}

impl IndexConvention {
    /// One admissible index per sequence value: `m >= 4`, `n >= 0`.
    pub fn canonical() -> Self {
        IndexConvention { padovan_min: 4, lucas_min: 0 }
    }

    /// The bookkeeping convention `m >= 1`, `n >= 2`, which keeps the
    /// duplicated small Padovan values and drops the first two Lucas
    /// values.
    pub fn bookkeeping() -> Self {
        IndexConvention { padovan_min: 1, lucas_min: 2 }
    }
}

impl Default for IndexConvention {
    fn default() -> Self {
        Self::canonical()
    }
}

/// Inclusive index rectangle to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchWindow {
    pub m_min: u32,
    pub m_max: u32,
    pub n_min: u32,
    pub n_max: u32,
}

impl SearchWindow {
    pub fn new(convention: IndexConvention, m_max: u32, n_max: u32) -> Result<Self, SearchError> {
        if m_max < convention.padovan_min || n_max < convention.lucas_min {
            return Err(SearchError::EmptyWindow(format!(
                "m in {}..={m_max}, n in {}..={n_max}",
                convention.padovan_min, convention.lucas_min
            )));
        }
        Ok(SearchWindow {
            m_min: convention.padovan_min,
            m_max,
            n_min: convention.lucas_min,
            n_max,
        })
    }

    /// The published window: `m < 190`, `n <= 300`, canonical convention.
    pub fn published() -> Self {
        SearchWindow { m_min: 4, m_max: 189, n_min: 0, n_max: 300 }
    }
}

/// Every difference in the window, keyed by value, with the representations
/// `(m, n)` sorted ascending.
pub fn enumerate_differences(
    window: &SearchWindow,
) -> Result<BTreeMap<BigInt, Vec<(u32, u32)>>, SearchError> {
    let pad = RecurrenceDef::padovan().terms_through(u64::from(window.m_max));
    let luc = RecurrenceDef::lucas().terms_through(u64::from(window.n_max));
    let mut merged = (window.m_min..=window.m_max)
        .into_par_iter()
        .fold(
            BTreeMap::<BigInt, Vec<(u32, u32)>>::new,
            |mut acc, m| {
                let p = &pad[m as usize];
                for n in window.n_min..=window.n_max {
                    acc.entry(p - &luc[n as usize]).or_default().push((m, n));
                }
                acc
            },
        )
        .reduce(BTreeMap::new, |mut a, b| {
            for (value, mut reps) in b {
                a.entry(value).or_default().append(&mut reps);
            }
            a
        });
    for reps in merged.values_mut() {
        reps.sort_unstable();
    }
    Ok(merged)
}

/// The values with at least two representations, in increasing order.
pub fn multi_represented(
    diffs: &BTreeMap<BigInt, Vec<(u32, u32)>>,
) -> Vec<(BigInt, Vec<(u32, u32)>)> {
    diffs
        .iter()
        .filter(|(_, reps)| reps.len() >= 2)
        .map(|(value, reps)| (value.clone(), reps.clone()))
        .collect()
}

/// The published list of all 41 integers with two or more representations.
pub const CLAIMED_DIFFERENCES: [i64; 41] = [
    -643, -310, -171, -74, -48, -27, -26, -13, -11, -9, -8, -6, -4, -2, -1, 0, 1, 2, 3, 4, 5, 6,
    8, 9, 10, 14, 17, 18, 19, 20, 26, 36, 38, 47, 64, 68, 75, 85, 189, 2864, 58269,
];

/// Itemised comparison of an enumerated window against the published list.
#[derive(Debug, Clone)]
pub struct TheoremComparison {
    /// Exactly the claimed set, nothing missing, nothing extra.
    pub matches: bool,
    /// Claimed values the window failed to produce twice.
    pub missing: Vec<BigInt>,
    /// Multiply-represented values outside the claimed list.
    pub extra: Vec<BigInt>,
    /// Everything found, with representations.
    pub found: Vec<(BigInt, Vec<(u32, u32)>)>,
}

/// Enumerates the window and compares its multiply-represented values with
/// the published 41.
pub fn verify_theorem(window: &SearchWindow) -> Result<TheoremComparison, SearchError> {
    let diffs = enumerate_differences(window)?;
    let found = multi_represented(&diffs);
    let claimed: Vec<BigInt> = CLAIMED_DIFFERENCES.iter().map(|&c| BigInt::from(c)).collect();
    let missing: Vec<BigInt> = claimed
        .iter()
        .filter(|c| !found.iter().any(|(v, _)| v == *c))
        .cloned()
        .collect();
    let extra: Vec<BigInt> = found
        .iter()
        .map(|(v, _)| v.clone())
        .filter(|v| !claimed.contains(v))
        .collect();
    let matches = missing.is_empty() && extra.is_empty();
    Ok(TheoremComparison { matches, missing, extra, found })
}
