//! Sieve for the set of sums of three positive cubes.

use crate::arith::icbrt;
use crate::error::{check_capacity, Result};

/// Bit per integer in `[1, X]` marking membership; optional saturating ordered-triple counts.
#[derive(Debug, Clone)]
pub struct CubeSumSieve {
    limit: u64,
    bits: Vec<u64>,
    counts: Option<Vec<u16>>,
    saturated: bool,
}

/// Default memory budget for sieves and bitsets, in bytes.
pub const DEFAULT_MEMORY_BUDGET: u128 = 1 << 30;

pub fn sieve_cube_sums(limit: u64, with_counts: bool, budget_bytes: u128) -> Result<CubeSumSieve> {
    let words = limit / 64 + 1;
    let mut bytes = words as u128 * 8;
    if with_counts {
        bytes += (limit as u128 + 1) * 2;
    }
    check_capacity("cube-sum sieve bytes", bytes, budget_bytes)?;

    let mut bits = vec![0u64; words as usize];
    let mut counts = with_counts.then(|| vec![0u16; limit as usize + 1]);
    let mut saturated = false;
    let top = icbrt(limit);
    for x1 in 1..=top {
        let c1 = x1 * x1 * x1;
        for x2 in x1..=top {
            let c12 = c1 + x2 * x2 * x2;
            if c12 >= limit {
                break;
            }
            for x3 in x2..=top {
                let n = c12 + x3 * x3 * x3;
                if n > limit {
                    break;
                }
                bits[(n / 64) as usize] |= 1 << (n % 64);
                if let Some(c) = counts.as_mut() {
                    let perms: u16 = if x1 == x2 && x2 == x3 {
                        1
                    } else if x1 == x2 || x2 == x3 {
                        3
                    } else {
                        6
                    };
                    let slot = &mut c[n as usize];
                    match slot.checked_add(perms) {
                        Some(v) => *slot = v,
                        None => {
                            *slot = u16::MAX;
                            saturated = true;
                        }
                    }
                }
            }
        }
    }
    Ok(CubeSumSieve {
        limit,
        bits,
        counts,
        saturated,
    })
}

impl CubeSumSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.limit && self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Ordered representation count `r3(n)`, when counts were requested.
    pub fn r3(&self, n: u64) -> Option<u16> {
        self.counts.as_ref().map(|c| if n <= self.limit { c[n as usize] } else { 0 })
    }

    /// True if any `r3` count hit the 16-bit ceiling.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }

    /// `|C ∩ [1, X]|`.
    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }
}
