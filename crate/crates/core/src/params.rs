//! Size parameters derived from the target size `N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smooth::estimate_c_eta;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n_target: u128,
    /// `floor(N^{1/6})`.
    pub p: u64,
    /// `P^{2/5}` unless overridden; always satisfies `M^3 H = P^3`.
    pub m: f64,
    pub h: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub eta: f64,
    /// Smoothness bound for the `y2, y3` coordinates.
    pub r: u64,
    /// `|A(P, R)| / P` at the working scale.
    pub c_eta: f64,
}

/// Integer sixth root, exact.
pub fn sixth_root(n: u128) -> u64 {
    let mut r = (n as f64).powf(1.0 / 6.0) as u64;
    let pow6 = |x: u64| -> Option<u128> {
        let x = x as u128;
        let x3 = x.checked_mul(x)?.checked_mul(x)?;
        x3.checked_mul(x3)
    };
    while r > 0 && pow6(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while pow6(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// `P`, `M`, `H`, `H1..H3` and the smoothness bound for target size `N`.
///
/// `R` defaults to `ceil(P^eta)` clamped to at least 2.
pub fn derive_params(n_target: u128, eta: f64, r_override: Option<u64>) -> Result<Params> {
    if n_target < 64 {
        return Err(Error::DegenerateParams(format!(
            "N = {n_target} < 64 gives P = 1 and empty ranges"
        )));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::DegenerateParams(format!("eta = {eta} outside (0, 1)")));
    }
    let p = sixth_root(n_target);
    let r = match r_override {
        Some(r) if r < 2 => {
            return Err(Error::DegenerateParams(format!("smoothness bound R = {r} < 2")));
        }
        Some(r) => r,
        None => ((p as f64).powf(eta).ceil() as u64).max(2),
    };
    let m = (p as f64).powf(0.4);
    let mut params = Params {
        n_target,
        p,
        m,
        h: 0.0,
        h1: 0.0,
        h2: 0.0,
        h3: 0.0,
        eta,
        r,
        c_eta: estimate_c_eta(p, r),
    };
    params.set_scales(m, (p as f64).powf(1.8));
    Ok(params)
}

impl Params {
    /// Replace `M`, recomputing `H = P^3 / M^3` and the `H_i`.
    ///
    /// At desk scale the window `(H1, H2]` is empty for the default `M = P^{2/5}` whenever
    /// `P < 25`; `with_m(1.0)` gives `H = P^3`, a nonempty window, and multiplier set `{1}`.
    pub fn with_m(mut self, m: f64) -> Result<Self> {
        if !(m >= 1.0 && m.is_finite()) {
            return Err(Error::DegenerateParams(format!("M = {m} must be >= 1")));
        }
        let h = (self.p as f64).powi(3) / (m * m * m);
        self.set_scales(m, h);
        Ok(self)
    }

    fn set_scales(&mut self, m: f64, h: f64) {
        self.m = m;
        self.h = h;
        self.h1 = (self.h / 2.0).cbrt();
        self.h2 = (2.0 * self.h / 3.0).cbrt();
        self.h3 = (self.h / 6.0).cbrt();
    }

    pub fn with_r(mut self, r: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::DegenerateParams(format!("smoothness bound R = {r} < 2")));
        }
        self.r = r;
        self.c_eta = estimate_c_eta(self.p, r);
        Ok(self)
    }

    /// Primes in `[M/2, M]`.
    pub fn prime_window(&self) -> Vec<u64> {
        crate::arith::primes_in_range(self.m / 2.0, self.m)
    }

    /// Relative deviation of `M^3 H` from `P^3`.
    pub fn balance_defect(&self) -> f64 {
        let p3 = (self.p as f64).powi(3);
        (self.m.powi(3) * self.h - p3).abs() / p3
    }

    /// `P^6` as a float, the natural scale of `n`.
    pub fn p6(&self) -> f64 {
        (self.p as f64).powi(6)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_admissible_target() {
        let params = derive_params(64, 0.1, None).unwrap();
        assert_eq!(params.p, 2);
        assert!((params.m - 2f64.powf(0.4)).abs() < 1e-15);
        assert!((params.h - 2f64.powf(1.8)).abs() < 1e-15);
        assert_eq!(params.r, 2);
    }

    #[test]
    fn trillion() {
        let params = derive_params(1_000_000_000_000, 0.1, None).unwrap();
        assert_eq!(params.p, 100);
        // 100^1.8 = 10^3.6
        assert!((params.h - 3981.0717055349733).abs() < 1e-9);
        assert!(params.balance_defect() < 1e-9);
        assert_eq!(params.r, 2); // ceil(100^0.1) = ceil(1.585)
    }

    #[test]
    fn rejects_degenerate_targets() {
        assert!(matches!(derive_params(63, 0.1, None), Err(Error::DegenerateParams(_))));
        assert!(derive_params(1000, 0.0, None).is_err());
        assert!(derive_params(1000, 1.0, None).is_err());
        assert!(derive_params(1000, 0.5, Some(1)).is_err());
    }

    #[test]
    fn invariants_hold_across_scales() {
        for n in [64u128, 65, 728, 729, 4095, 4096, 10u128.pow(12), 10u128.pow(24), u128::MAX] {
            let params = derive_params(n, 0.3, None).unwrap();
            let p = params.p as u128;
            assert!(p.pow(6) <= n);
            assert!((p + 1).checked_pow(6).is_none_or(|v| v > n));
            assert!(params.balance_defect() < 1e-9);
            assert!(params.h1 < params.h2);
            assert!((2.0 * params.h1.powi(3) - params.h).abs() <= 1e-12 * params.h);
            assert!((params.h2.powi(3) - 2.0 * params.h / 3.0).abs() <= 1e-12 * params.h);
            assert!((params.h3.powi(3) - params.h / 6.0).abs() <= 1e-12 * params.h);
            assert!(params.r >= 2);
        }
    }

    #[test]
    fn m_override_keeps_balance() {
        let params = derive_params(16u128.pow(6), 0.5, Some(16)).unwrap().with_m(1.0).unwrap();
        assert_eq!(params.h, 4096.0);
        assert!(params.balance_defect() < 1e-12);
        assert_eq!(crate::arith::integers_in(params.h1, params.h2).collect::<Vec<_>>(), vec![13]);
        assert!(params.prime_window().is_empty());
    }
}
