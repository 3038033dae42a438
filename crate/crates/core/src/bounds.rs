//! State-count bounds for projected languages.
//!
//! `n` is the number of states and `m` the number of states incident to a
//! non-loop unobservable transition. Since such a transition joins two
//! distinct states, `m` is never 1.

use crate::error::{Error, Result};

fn pow2(exp: usize) -> Result<u128> {
    if exp >= 128 {
        return Err(Error::BoundOverflow(exp));
    }
    Ok(1u128 << exp)
}

/// Bound for permutation automata: `n` when `m = 0`, otherwise
/// `2^(n - ⌈m/2⌉) - 1`.
pub fn perm_bound(n: usize, m: usize) -> Result<u128> {
    let invalid = |reason| Error::InvalidBoundParams { n, m, reason };
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    if m > n {
        return Err(invalid("m cannot exceed n"));
    }
    if m == 1 {
        return Err(invalid("m = 1 is impossible"));
    }
    if m == 0 {
        return Ok(n as u128);
    }
    Ok(pow2(n - m.div_ceil(2))? - 1)
}

/// Bound for arbitrary DFAs: `2^(n-1) + 2^(n-m) - 1`, defined for `m >= 1`.
pub fn general_bound(n: usize, m: usize) -> Result<u128> {
    let invalid = |reason| Error::InvalidBoundParams { n, m, reason };
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    if m == 0 {
        return Err(invalid("m must be positive"));
    }
    if m > n {
        return Err(invalid("m cannot exceed n"));
    }
    Ok(pow2(n - 1)? + pow2(n - m)? - 1)
}
