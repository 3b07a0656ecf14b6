//! Smooth (friable) integers: the sets `A(Y, R)` of integers in `[1, Y]` with no prime
//! factor above `R`, and the finite-scale density estimate `|A(P, R)| / P`.

use serde::{Deserialize, Serialize};

use crate::arith::largest_prime_factor_table;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothSet {
    pub limit: u64,
    pub bound: u64,
    /// Ascending, no duplicates; always contains 1 when `limit >= 1`.
    pub members: Vec<u64>,
}

impl SmoothSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.members.binary_search(&m).is_ok()
    }
}

/// All `R`-smooth integers in `[1, Y]`, ascending.
pub fn enumerate_smooth(limit: u64, bound: u64) -> SmoothSet {
    let members = if limit == 0 {
        Vec::new()
    } else if bound as u128 >= limit as u128 {
        (1..=limit).collect()
    } else {
        let lpf = largest_prime_factor_table(limit as usize);
        (1..=limit)
            .filter(|&m| lpf[m as usize] as u64 <= bound)
            .collect()
    };
    SmoothSet {
        limit,
        bound,
        members,
    }
}

/// `|A(P, R)| / P`, the working-scale stand-in for the density constant `c_eta`.
pub fn estimate_c_eta(p: u64, bound: u64) -> f64 {
    assert!(p >= 1, "c_eta estimate needs P >= 1");
    enumerate_smooth(p, bound).len() as f64 / p as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division_smooth(m: u64, bound: u64) -> bool {
        let mut n = m;
        let mut d = 2;
        while d * d <= n {
            while n.is_multiple_of(d) {
                if d > bound {
                    return false;
                }
                n /= d;
            }
            d += 1;
        }
        n == 1 || n <= bound
    }

    #[test]
    fn small_examples() {
        assert_eq!(enumerate_smooth(10, 2).members, vec![1, 2, 4, 8]);
        assert_eq!(enumerate_smooth(10, 3).members, vec![1, 2, 3, 4, 6, 8, 9]);
        assert_eq!(enumerate_smooth(1, 2).members, vec![1]);
    }

    #[test]
    fn c_eta_examples() {
        assert_eq!(estimate_c_eta(10, 10), 1.0);
        assert_eq!(estimate_c_eta(10, 2), 0.4);
    }

    #[test]
    fn c_eta_at_a_million_with_sqrt_bound() {
        // Oracle: 1 - #{n <= 10^6 with a prime factor p > 1000} / 10^6, counted by the
        // standard identity sum over primes 1000 < p <= 10^6 of floor(10^6 / p)
        // (at most one such prime divides n).
        let p = 1_000_000u64;
        let non_smooth: u64 = crate::arith::primes_up_to(p)
            .into_iter()
            .filter(|&q| q > 1000)
            .map(|q| p / q)
            .sum();
        let oracle = (p - non_smooth) as f64 / p as f64;
        let c = estimate_c_eta(p, 1000);
        assert_eq!(c, oracle);
        // the asymptotic density rho(2) = 0.3069 is approached slowly
        assert!((c - 0.344299).abs() < 1e-9, "{c}");
    }

    proptest! {
        #[test]
        fn members_match_trial_division(limit in 1u64..400, bound in 2u64..40) {
            let set = enumerate_smooth(limit, bound);
            let oracle: Vec<u64> = (1..=limit).filter(|&m| trial_division_smooth(m, bound)).collect();
            prop_assert_eq!(set.members, oracle);
        }

        #[test]
        fn monotone_in_both_arguments(limit in 1u64..300, bound in 2u64..30) {
            let base = enumerate_smooth(limit, bound);
            let wider = enumerate_smooth(limit, bound + 1);
            let longer = enumerate_smooth(limit + 1, bound);
            prop_assert!(base.members.iter().all(|m| wider.contains(*m)));
            prop_assert!(base.members.iter().all(|m| longer.contains(*m)));
        }
    }
}
