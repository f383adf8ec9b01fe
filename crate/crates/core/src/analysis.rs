//! Closed-form transmission counts and energy benefit.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// `C(n, 2)`, zero for `n < 2`.
pub fn choose2(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("K must be >= 2, got {k}")));
    }
    Ok(())
}

/// Minimum routing transmissions per round: `3·C(K,2)`.
pub fn lemma1(k: u64) -> Result<u64> {
    check_k(k)?;
    Ok(3 * choose2(k))
}

/// Coding transmissions per round: `3·C(K+1,2) − 2·C(K−2,2)`.
pub fn lemma2(k: u64) -> Result<u64> {
    check_k(k)?;
    Ok(3 * choose2(k + 1) - 2 * choose2(k.saturating_sub(2)))
}

/// Routing over coding energy, exact and reduced.
pub fn benefit(k: u64) -> Result<Ratio<u64>> {
    Ok(Ratio::new(lemma1(k)?, lemma2(k)?))
}

pub fn node_count(k: u64) -> u64 {
    choose2(k + 1)
}

pub fn internal_count(k: u64) -> u64 {
    choose2(k.saturating_sub(2))
}
