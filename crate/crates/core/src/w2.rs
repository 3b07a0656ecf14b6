//! The multiplicative weight `w2(q)` used in the major-arc majorant.
//!
//! On prime powers `w2(p^k) = p^{-s(k)/6}` with `s(1) = 3`, `s(k) = 6` for `2 <= k <= 6`
//! and `s(k) = k` for `k >= 7`. Values are kept in this exact exponent form so that
//! comparisons reduce to integer arithmetic on `w2(q)^{-6} = prod p^{s(k)}`.

use serde::{Deserialize, Serialize};

use crate::arith::factorize;

/// `6 * (-log_p w2(p^k))`.
pub fn sixths(k: u32) -> u32 {
    match k {
        0 => 0,
        1 => 3,
        2..=6 => 6,
        _ => k,
    }
}

/// `(p, s)` pairs with `w2(q) = prod p^{-s/6}`.
pub fn w2_exponents(q: u64) -> Vec<(u64, u32)> {
    assert!(q >= 1, "w2 is defined for q >= 1");
    factorize(q).into_iter().map(|(p, k)| (p, sixths(k))).collect()
}

pub fn w2(q: u64) -> f64 {
    w2_exponents(q)
        .into_iter()
        .map(|(p, s)| (p as f64).powf(-(s as f64) / 6.0))
        .product()
}

/// `w2(q)^{-6}`, an integer; `None` on overflow.
pub fn w2_inverse_sixth(q: u64) -> Option<u128> {
    w2_exponents(q)
        .into_iter()
        .try_fold(1u128, |acc, (p, s)| acc.checked_mul((p as u128).checked_pow(s)?))
}

/// Every prime-power exponent of `q` is at least 6, the equality case of the majorant.
pub fn is_majorant_equality_case(q: u64) -> bool {
    factorize(q).into_iter().all(|(_, k)| k >= 6)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MajorantReport {
    pub q_max: u64,
    /// `q` with `w2(q) > q^{-1/6}`.
    pub violations: Vec<u64>,
    /// `q` with `w2(q) = q^{-1/6}`, ascending.
    pub equality_cases: Vec<u64>,
    /// Equality occurs exactly at the `q` whose prime-power exponents are all `>= 6`.
    pub equality_matches_rule: bool,
}

/// Exact check of `w2(q) <= q^{-1/6}` for `q <= q_max`, i.e. `w2(q)^{-6} >= q`.
pub fn check_majorant(q_max: u64) -> MajorantReport {
    let mut violations = Vec::new();
    let mut equality_cases = Vec::new();
    let mut matches = true;
    for q in 1..=q_max {
        let d = w2_inverse_sixth(q).expect("w2^{-6} <= q^3 fits 128 bits");
        if d < q as u128 {
            violations.push(q);
        }
        let equal = d == q as u128;
        if equal {
            equality_cases.push(q);
        }
        matches &= equal == is_majorant_equality_case(q);
    }
    MajorantReport {
        q_max,
        violations,
        equality_cases,
        equality_matches_rule: matches,
    }
}

/// `sum_{q <= Q} w2(q)^2` at each requested `Q` (ascending), in one pass.
pub fn summatory_w2_squared(checkpoints: &[u64]) -> Vec<(u64, f64)> {
    let top = checkpoints.iter().copied().max().unwrap_or(0);
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut acc = 0.0;
    let mut sorted = checkpoints.to_vec();
    sorted.sort_unstable();
    let mut next = sorted.iter().peekable();
    for q in 1..=top {
        acc += w2(q).powi(2);
        while next.peek().is_some_and(|&&c| c == q) {
            out.push((q, acc));
            next.next();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(w2(1), 1.0);
        assert!((w2(2) - 2f64.powf(-0.5)).abs() < 1e-15);
        assert!((w2(128) - 2f64.powf(-7.0 / 6.0)).abs() < 1e-15);
        assert!((w2(12) - 0.5 * 3f64.powf(-0.5)).abs() < 1e-15);
        assert!((w2(64) - 0.5).abs() < 1e-15);
        assert_eq!(w2_inverse_sixth(2), Some(8));
        assert_eq!(w2_inverse_sixth(64), Some(64));
    }

    #[test]
    fn majorant_small_range() {
        let r = check_majorant(5000);
        assert!(r.violations.is_empty());
        assert!(r.equality_matches_rule);
        assert_eq!(r.equality_cases, vec![1, 64, 128, 256, 512, 729, 1024, 2048, 2187, 4096]);
    }

    #[test]
    fn summatory_checkpoints() {
        let s = summatory_w2_squared(&[1, 2, 10]);
        assert_eq!(s[0], (1, 1.0));
        assert!((s[1].1 - 1.5).abs() < 1e-15);
        assert_eq!(s.len(), 3);
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_pairs(a in 1u64..5000, b in 1u64..5000) {
            prop_assume!(gcd(a, b) == 1);
            prop_assert_eq!(
                w2_inverse_sixth(a * b),
                Some(w2_inverse_sixth(a).unwrap() * w2_inverse_sixth(b).unwrap())
            );
        }
    }
}
