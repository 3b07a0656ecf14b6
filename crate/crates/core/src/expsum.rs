//! Complete exponential sums and the singular-series coefficients.
//!
//! `S(q, a)` is evaluated from the distribution of `T(r)^2 mod q`, so each value costs one
//! pass over the distinct residues instead of `q^3` terms.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::residue::{t_squared_distribution, ResidueDistribution};

/// Tolerance on the imaginary part of the (mathematically real) coefficients `S_n(q)`.
pub const SN_IMAG_TOLERANCE: f64 = 1e-8;

/// `e(x) = exp(2 pi i x)`.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let (s, c) = (TAU * x).sin_cos();
    Complex64::new(c, s)
}

/// Compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: Complex64,
    carry: Complex64,
}

impl KahanSum {
    #[inline]
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// `e(k / q)` for `k = 0..q`.
#[derive(Debug, Clone)]
pub struct RootTable {
    q: u64,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(q: u64) -> Self {
        let roots = (0..q).map(|k| e(k as f64 / q as f64)).collect();
        RootTable { q, roots }
    }

    /// `e(k / q)` for any integer `k`.
    #[inline]
    pub fn at(&self, k: i128) -> Complex64 {
        self.roots[k.rem_euclid(self.q as i128) as usize]
    }
}

/// Everything needed to evaluate `S(q, a)` for one modulus and all `a`.
#[derive(Debug, Clone)]
pub struct CompleteSums {
    q: u64,
    squares: Vec<(u64, f64)>,
    roots: RootTable,
}

impl CompleteSums {
    pub fn new(q: u64) -> Result<Self> {
        let dist: ResidueDistribution = t_squared_distribution(q)?;
        let squares = dist.support().map(|(u, c)| (u, c as f64)).collect();
        Ok(CompleteSums {
            q,
            squares,
            roots: RootTable::new(q),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// `S(q, a) = sum_{r in [1,q]^3} e_q(a T(r)^2)`.
    pub fn sum(&self, a: i64) -> Complex64 {
        let q = self.q as i128;
        let a = (a as i128).rem_euclid(q);
        let mut acc = KahanSum::default();
        for &(u, c) in &self.squares {
            acc.add(self.roots.at(a * u as i128) * c);
        }
        acc.value()
    }

    /// `S_n(q) = sum_{(a,q)=1} (q^{-3} S(q,a))^4 e_q(-n a)`, real part; errors if the
    /// imaginary residue exceeds [`SN_IMAG_TOLERANCE`].
    pub fn coefficient(&self, n: i128) -> Result<f64> {
        let powers = self.normalized_fourth_powers();
        self.coefficient_from(&powers, n)
    }

    /// `(a, (q^{-3} S(q,a))^4)` for all `a` coprime to `q`.
    pub fn normalized_fourth_powers(&self) -> Vec<(u64, Complex64)> {
        let scale = (self.q as f64).powi(3);
        (1..=self.q)
            .filter(|&a| gcd(a, self.q) == 1)
            .map(|a| (a, (self.sum(a as i64) / scale).powi(4)))
            .collect()
    }

    pub fn coefficient_from(&self, powers: &[(u64, Complex64)], n: i128) -> Result<f64> {
        let mut acc = KahanSum::default();
        for &(a, w) in powers {
            acc.add(w * self.roots.at(-n * a as i128));
        }
        let v = acc.value();
        if v.im.abs() >= SN_IMAG_TOLERANCE {
            return Err(Error::Verification(format!(
                "S_n(q) for q = {} has imaginary part {:e}",
                self.q, v.im
            )));
        }
        Ok(v.re)
    }
}

pub fn complete_sum_s(q: u64, a: i64) -> Result<Complex64> {
    Ok(CompleteSums::new(q)?.sum(a))
}

/// Quadratic Gauss sum `S_2(q, a) = sum_{r=1}^{q} e_q(a r^2)`; requires `(a, q) = 1`.
pub fn gauss_sum_s2(q: u64, a: i64) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::Contract("modulus must be positive".into()));
    }
    let a_red = (a as i128).rem_euclid(q as i128) as u64;
    if gcd(a_red, q) != 1 {
        return Err(Error::Contract(format!("gcd({a}, {q}) != 1")));
    }
    let qq = q as u128;
    let mut acc = KahanSum::default();
    for r in 1..=qq {
        let k = (a_red as u128 * (r * r % qq)) % qq;
        acc.add(e(k as f64 / q as f64));
    }
    Ok(acc.value())
}

pub fn coefficient_sn(q: u64, n: i128) -> Result<f64> {
    CompleteSums::new(q)?.coefficient(n)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesReport {
    pub n: i128,
    pub q_max: u64,
    /// `sum_{q <= Q} S_n(q)`.
    pub value: f64,
    /// `S_n(q)` for `q = 1..=Q`.
    pub terms: Vec<f64>,
    /// `(lo, hi, sum_{lo < q <= hi} |S_n(q)|)` for `hi = Q, Q/2, Q/4, ...`.
    pub dyadic_tails: Vec<(u64, u64, f64)>,
}

impl SeriesReport {
    /// `sum_{lo < q <= hi} |S_n(q)|`.
    pub fn tail(&self, lo: u64, hi: u64) -> f64 {
        self.terms[lo as usize..hi.min(self.q_max) as usize]
            .iter()
            .map(|x| x.abs())
            .sum()
    }
}

/// Truncated singular series `S(n; Q)` for several targets, sharing the per-`q` work.
pub fn truncated_singular_series_many(ns: &[i128], q_max: u64) -> Result<Vec<SeriesReport>> {
    assert!(q_max >= 1);
    let mut terms: Vec<Vec<f64>> = vec![Vec::with_capacity(q_max as usize); ns.len()];
    for q in 1..=q_max {
        let sums = CompleteSums::new(q)?;
        let powers = sums.normalized_fourth_powers();
        for (slot, &n) in terms.iter_mut().zip(ns) {
            slot.push(sums.coefficient_from(&powers, n)?);
        }
    }
    Ok(ns
        .iter()
        .zip(terms)
        .map(|(&n, terms)| {
            let mut acc = 0.0;
            let mut carry = 0.0;
            for &t in &terms {
                let y = t - carry;
                let s = acc + y;
                carry = (s - acc) - y;
                acc = s;
            }
            let mut dyadic_tails = Vec::new();
            let mut hi = q_max;
            while hi >= 2 {
                let lo = hi / 2;
                let tail = terms[lo as usize..hi as usize].iter().map(|x| x.abs()).sum();
                dyadic_tails.push((lo, hi, tail));
                hi = lo;
            }
            SeriesReport {
                n,
                q_max,
                value: acc,
                terms,
                dyadic_tails,
            }
        })
        .collect())
}

pub fn truncated_singular_series(n: i128, q_max: u64) -> Result<SeriesReport> {
    Ok(truncated_singular_series_many(&[n], q_max)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct `q^3`-term evaluation.
    pub(crate) fn brute_s(q: u64, a: i64) -> Complex64 {
        let qq = q as u128;
        let a = (a as i128).rem_euclid(q as i128) as u128;
        let mut acc = Complex64::new(0.0, 0.0);
        for r1 in 1..=qq {
            for r2 in 1..=qq {
                for r3 in 1..=qq {
                    let t = (r1 * r1 * r1 + r2 * r2 * r2 + r3 * r3 * r3) % qq;
                    let k = a * (t * t % qq) % qq;
                    acc += e(k as f64 / q as f64);
                }
            }
        }
        acc
    }

    #[test]
    fn trivial_and_vanishing_sums() {
        assert!((complete_sum_s(1, 0).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(complete_sum_s(2, 1).unwrap().norm() < 1e-12);
        let s9 = complete_sum_s(9, 1).unwrap();
        assert!((s9 - brute_s(9, 1)).norm() < 1e-6);
    }

    #[test]
    fn matches_brute_force_small_moduli() {
        for q in 1..=12u64 {
            let sums = CompleteSums::new(q).unwrap();
            for a in 0..=q as i64 {
                let d = (sums.sum(a) - brute_s(q, a)).norm();
                assert!(d < 1e-6 * (q as f64).powi(3), "q={q} a={a} diff={d}");
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let s = gauss_sum_s2(3, 1).unwrap();
        let expected = e(1.0 / 3.0) * 2.0 + Complex64::new(1.0, 0.0);
        assert!((s - expected).norm() < 1e-12);
        assert!((s.norm() - 3f64.sqrt()).abs() < 1e-12);
        assert!((gauss_sum_s2(1, 0).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((gauss_sum_s2(997, 5).unwrap().norm() - 997f64.sqrt()).abs() < 1e-6);
        assert!(matches!(gauss_sum_s2(9, 3), Err(Error::Contract(_))));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient_sn(1, 12345).unwrap(), 1.0);
        assert!(coefficient_sn(2, 0).unwrap().abs() < 1e-15);
        let lhs = coefficient_sn(15, 7).unwrap();
        let rhs = coefficient_sn(3, 7).unwrap() * coefficient_sn(5, 7).unwrap();
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn series_with_q_one_is_one() {
        let r = truncated_singular_series(64, 1).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.dyadic_tails.is_empty());
    }

    #[test]
    fn series_values_at_100() {
        let reports = truncated_singular_series_many(&[64, 36], 100).unwrap();
        let s64 = reports[0].value;
        let s36 = reports[1].value;
        assert!(s64 > 0.0, "S(64; 100) = {s64}");
        assert!(s36 > s64, "S(36; 100) = {s36} should exceed S(64; 100) = {s64}");
    }
}
