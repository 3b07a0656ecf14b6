//! Local solution counts modulo prime powers and the solubility certificates behind the
//! lower bounds for the Euler factors.
//!
//! `M_n(p^h)` counts `Y in [1, p^h]^12` with `sum_i T(y_i)^2 = n mod p^h`. It is computed as
//! `(Q * Q * Q * Q)[n]` where `Q` is the distribution of `T(y)^2 mod p^h`; only the pair
//! convolution `Q * Q` is materialised, the last step is a dot product.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, pow_mod};
use crate::error::{check_capacity, Error, Result};
use crate::expsum::CompleteSums;
use crate::residue::{cube_residue_counts, t_squared_distribution, ResidueDistribution};

/// Default budget for `p^h` (entries of one residue vector).
pub const DEFAULT_LOCAL_BUDGET: u128 = 1_000_000;
pub const DEFAULT_SIGMA_TOL: f64 = 1e-4;
pub const DEFAULT_SIGMA_HMAX: u32 = 3;

fn prime_power(p: u64, h: u32, budget: u128) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Contract(format!("{p} is not prime")));
    }
    let q = (p as u128).checked_pow(h).unwrap_or(u128::MAX);
    check_capacity("prime power modulus", q, budget)?;
    Ok(q as u64)
}

/// Pair distribution `Q * Q` for one modulus; answers `M_n(q)` for any `n` in `O(q)`.
#[derive(Debug, Clone)]
pub struct LocalCounts {
    q: u64,
    pairs: Vec<u128>,
}

impl LocalCounts {
    pub fn new(p: u64, h: u32, budget: u128) -> Result<Self> {
        let q = prime_power(p, h, budget)?;
        Self::for_modulus(q)
    }

    /// Any modulus, not only prime powers.
    pub fn for_modulus(q: u64) -> Result<Self> {
        let squares: ResidueDistribution = t_squared_distribution(q)?;
        let pairs = squares.convolve(&squares)?.counts;
        Ok(LocalCounts { q, pairs })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn count(&self, n: i128) -> BigUint {
        let q = self.q as usize;
        let target = n.rem_euclid(q as i128) as usize;
        let fits_u128 = (self.q as f64).powi(12) < 2f64.powi(126);
        if fits_u128 {
            let mut acc = 0u128;
            for t in 0..q {
                let s = if target >= t { target - t } else { target + q - t };
                acc += self.pairs[t] * self.pairs[s];
            }
            BigUint::from(acc)
        } else {
            let mut acc = BigUint::zero();
            for t in 0..q {
                let s = if target >= t { target - t } else { target + q - t };
                if self.pairs[t] != 0 && self.pairs[s] != 0 {
                    acc += BigUint::from(self.pairs[t]) * BigUint::from(self.pairs[s]);
                }
            }
            acc
        }
    }

    /// `q^{-11} M_n(q)` when `q = p^h` (i.e. `p^{-11h} M_n(p^h)`).
    pub fn normalized(&self, n: i128) -> f64 {
        let m = self.count(n).to_f64().unwrap_or(f64::INFINITY);
        m / (self.q as f64).powi(11)
    }
}

/// `M_n(p^h)`, exact.
pub fn local_count_mn(p: u64, h: u32, n: i128, budget: u128) -> Result<BigUint> {
    Ok(LocalCounts::new(p, h, budget)?.count(n))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EulerFactorEstimate {
    pub p: u64,
    pub n: i128,
    /// Deepest `h` evaluated.
    pub h: u32,
    /// `p^{-11h} M_n(p^h)` at the deepest `h`.
    pub value: f64,
    /// `values[h-1] = p^{-11h} M_n(p^h)` for `h = 1..`.
    pub values: Vec<f64>,
    /// `|value(h) - value(h-1)|`, with `value(0) = 1`.
    pub deltas: Vec<f64>,
    pub converged: bool,
    /// `(1 - value) p^{3/2}` when `p > 3` and `p` does not divide `n`; an empirical
    /// constant, reported only.
    pub implied_constant: Option<f64>,
}

/// Truncations of the Euler factor `sigma(p)` via the local counts.
pub fn sigma_p(p: u64, n: i128, h_max: u32, tol: f64, budget: u128) -> Result<EulerFactorEstimate> {
    if h_max == 0 {
        return Err(Error::Contract("h_max must be positive".into()));
    }
    prime_power(p, h_max, budget)?;
    let mut values = Vec::new();
    let mut deltas = Vec::new();
    let mut prev = 1.0;
    let mut converged = false;
    for h in 1..=h_max {
        let v = LocalCounts::new(p, h, budget)?.normalized(n);
        let d = (v - prev).abs();
        values.push(v);
        deltas.push(d);
        prev = v;
        if h >= 2 && d < tol {
            converged = true;
            break;
        }
    }
    let value = *values.last().unwrap();
    let implied_constant = (p > 3 && n.rem_euclid(p as i128) != 0)
        .then(|| ((1.0 - value) * (p as f64).powf(1.5)).max(0.0));
    Ok(EulerFactorEstimate {
        p,
        n,
        h: values.len() as u32,
        value,
        values,
        deltas,
        converged,
        implied_constant,
    })
}

/// `sum_{l=0}^{h} S_n(p^l)`, the exponential-sum side of the local-count identity.
pub fn partial_euler_sum(p: u64, h: u32, n: i128) -> Result<f64> {
    let mut total = 1.0;
    let mut q = 1u64;
    for _ in 1..=h {
        q *= p;
        total += CompleteSums::new(q)?.coefficient(n)?;
    }
    Ok(total)
}

/// `M_{3,3}(p^h) = { T(x) : x in (Z/p^hZ)^3, (x_1, p) = 1 }`, ascending.
pub fn m33_set(p: u64, h: u32, budget: u128) -> Result<Vec<u64>> {
    let q = prime_power(p, h, budget)?;
    let cubes = cube_residue_counts(q);
    let unit_cubes: BTreeSet<u64> = (1..=q)
        .filter(|r| r % p != 0)
        .map(|r| ((r as u128).pow(3) % q as u128) as u64)
        .collect();
    let all_cubes: Vec<u64> = cubes.support().map(|(t, _)| t).collect();
    let mut two = vec![false; q as usize];
    for &a in &all_cubes {
        for &b in &all_cubes {
            two[((a + b) % q) as usize] = true;
        }
    }
    let mut out = vec![false; q as usize];
    for &u in &unit_cubes {
        for (s, &hit) in two.iter().enumerate() {
            if hit {
                out[((u + s as u64) % q) as usize] = true;
            }
        }
    }
    Ok((0..q).filter(|&t| out[t as usize]).collect())
}

pub const EXPECTED_SET_A: [u64; 8] = [0, 1, 4, 9, 10, 13, 19, 22];
pub const EXPECTED_SET_A_PLUS_B: [u64; 15] = [1, 2, 4, 5, 8, 10, 11, 13, 14, 17, 19, 20, 22, 23, 26];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSets {
    pub m33_27: Vec<u64>,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub a_plus_b: Vec<u64>,
}

/// Recompute `A = {x^2 mod 27 : x in M_{3,3}(27)}`, `B = {y in A : 3 does not divide y}` and
/// `A + B mod 27`, and check them against the expected sets.
pub fn paper_sets_a_b() -> Result<ResidueSets> {
    let m33_27 = m33_set(3, 3, DEFAULT_LOCAL_BUDGET)?;
    let a: BTreeSet<u64> = m33_27.iter().map(|x| x * x % 27).collect();
    let b: BTreeSet<u64> = a.iter().copied().filter(|y| y % 3 != 0).collect();
    let a_plus_b: BTreeSet<u64> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x + y) % 27))
        .collect();
    let sets = ResidueSets {
        m33_27,
        a: a.into_iter().collect(),
        b: b.into_iter().collect(),
        a_plus_b: a_plus_b.into_iter().collect(),
    };
    let expected_m33: Vec<u64> = (0..27).filter(|t| t % 9 != 4 && t % 9 != 5).collect();
    if sets.m33_27 != expected_m33 {
        return Err(Error::Verification(format!(
            "M_33(27) = {:?}, expected residues not 4, 5 mod 9",
            sets.m33_27
        )));
    }
    if sets.a != EXPECTED_SET_A {
        return Err(Error::Verification(format!("A = {:?}", sets.a)));
    }
    if sets.a_plus_b != EXPECTED_SET_A_PLUS_B {
        return Err(Error::Verification(format!("A + B = {:?}", sets.a_plus_b)));
    }
    Ok(sets)
}

/// Solubility witness: `Y in [1, modulus]^12` with `sum T(y_i)^2 = n mod modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenselCertificate {
    pub p: u64,
    pub n: i128,
    pub modulus: u64,
    pub witness: Vec<u64>,
    /// The congruence and the branch's nonsingularity conditions were re-verified.
    pub condition_checked: bool,
    /// `M_n(p^h) >= p^{11 (h - lift_offset)}` for every `h >= lift_offset`.
    pub lift_offset: u32,
}

impl HenselCertificate {
    /// The lower bound the certificate implies for `M_n(p^h)`.
    pub fn count_lower_bound(&self, h: u32) -> BigUint {
        if h < self.lift_offset {
            return BigUint::zero();
        }
        BigUint::from(self.p).pow(11 * (h - self.lift_offset))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum LocalCertificate {
    Nonsingular(HenselCertificate),
    TwoAdic(TwoAdicProfile),
}

/// Meet-in-the-middle search for nonsingular witnesses modulo one `p^k`.
///
/// `p >= 5` works modulo `p`; `p = 3` modulo 27; `p = 2` modulo 8.
#[derive(Debug, Clone)]
pub struct HenselSearch {
    p: u64,
    modulus: u64,
    lift_offset: u32,
    /// `T(y)^2 mod q -> y`, any triple.
    any: HashMap<u64, [u64; 3]>,
    /// Same, restricted to `p ∤ y_1` and `p ∤ T(y)`.
    nonsingular: HashMap<u64, [u64; 3]>,
}

impl HenselSearch {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Contract(format!("{p} is not prime")));
        }
        let (modulus, lift_offset) = match p {
            2 => (8, 3),
            3 => (27, 3),
            _ => (p, 1),
        };
        let q = modulus as u128;
        let mut any = HashMap::new();
        let mut nonsingular = HashMap::new();
        for y1 in 1..=modulus {
            for y2 in 1..=modulus {
                for y3 in 1..=modulus {
                    let t = (y1 as u128).pow(3) + (y2 as u128).pow(3) + (y3 as u128).pow(3);
                    let t = t % q;
                    let s = (t * t % q) as u64;
                    any.entry(s).or_insert([y1, y2, y3]);
                    if y1 % p != 0 && !t.is_multiple_of(p as u128) {
                        nonsingular.entry(s).or_insert([y1, y2, y3]);
                    }
                }
            }
        }
        Ok(HenselSearch {
            p,
            modulus,
            lift_offset,
            any,
            nonsingular,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// A witness for `n`, or `None` when the residue class is not reachable.
    pub fn find(&self, n: i128) -> Option<HenselCertificate> {
        let q = self.modulus;
        let target = n.rem_euclid(q as i128) as u64;
        let mut singles: Vec<u64> = self.any.keys().copied().collect();
        singles.sort_unstable();
        let mut firsts: Vec<u64> = self.nonsingular.keys().copied().collect();
        firsts.sort_unstable();
        let mut pairs: HashMap<u64, (u64, u64)> = HashMap::new();
        for &a in &singles {
            for &b in &singles {
                pairs.entry((a + b) % q).or_insert((a, b));
            }
        }
        for &s1 in &firsts {
            for &s2 in &singles {
                let rest = (2 * q + target - s1 - s2) % q;
                if let Some(&(s3, s4)) = pairs.get(&rest) {
                    let mut witness = Vec::with_capacity(12);
                    witness.extend_from_slice(&self.nonsingular[&s1]);
                    for s in [s2, s3, s4] {
                        witness.extend_from_slice(&self.any[&s]);
                    }
                    let cert = HenselCertificate {
                        p: self.p,
                        n,
                        modulus: q,
                        condition_checked: verify_witness(self.p, q, target, &witness, true),
                        witness,
                        lift_offset: self.lift_offset,
                    };
                    return Some(cert);
                }
            }
        }
        None
    }
}

/// Re-check `sum T(y_i)^2 = target mod q` and, if asked, `p ∤ y_{1,1}` and `p ∤ T(y_1)`.
pub fn verify_witness(p: u64, q: u64, target: u64, witness: &[u64], nonsingular: bool) -> bool {
    if witness.len() != 12 {
        return false;
    }
    let qq = q as u128;
    let t = |y: &[u64]| -> u128 { y.iter().map(|&v| (v as u128 % qq).pow(3) % qq).sum::<u128>() % qq };
    let total: u128 = witness.chunks(3).map(|y| t(y).pow(2) % qq).sum::<u128>() % qq;
    let mut ok = total == target as u128 % qq;
    if nonsingular {
        ok &= !witness[0].is_multiple_of(p) && t(&witness[..3]) % p as u128 != 0;
    }
    ok
}

/// Local solubility certificate at `p`: nonsingular witness, or the 2-adic analysis when
/// `p = 2` and `8 | n`.
pub fn hensel_certificate(p: u64, n: i128) -> Result<LocalCertificate> {
    if p == 2 && n.rem_euclid(8) == 0 {
        if n <= 0 {
            return Err(Error::Contract("2-adic analysis needs n >= 1".into()));
        }
        let gamma = n.trailing_zeros();
        let profile = two_adic_profile(n as u128, gamma + 2, 0)?;
        return Ok(LocalCertificate::TwoAdic(profile));
    }
    let search = HenselSearch::new(p)?;
    match search.find(n) {
        Some(cert) => Ok(LocalCertificate::Nonsingular(cert)),
        None => Err(Error::Verification(format!(
            "no nonsingular witness modulo {} for n = {n}",
            search.modulus()
        ))),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoAdicProfile {
    pub n: u128,
    /// `2^gamma || n`.
    pub gamma: u32,
    /// `floor((gamma - 1) / 2)` for `gamma >= 1`, else 0.
    pub theta: u32,
    /// Working precision: solutions are exhibited modulo `2^h`.
    pub h: u32,
    /// `x_i mod 2^h` with `sum x_i^2 = n mod 2^h`.
    pub squares_solution: [u128; 4],
    /// 12 positive integers with `T(y_i) = x_i mod 2^h`.
    pub witness: Vec<u128>,
    pub condition_checked: bool,
    /// Certified shape of the lower bound for `sigma(2)`.
    pub lower_bound: f64,
    /// `log2` of the certified lower bound for `M_n(2^h)`.
    pub count_bound_log2: i64,
    /// `M_n(2^h)` when `2^h` fits the budget.
    pub checked_count: Option<String>,
    pub bound_holds: Option<bool>,
}

/// Square root of an odd `c = 1 mod 8` modulo `2^k`.
fn sqrt_mod_pow2(c: u128, k: u32) -> Option<u128> {
    let modulus = 1u128 << k;
    let c = c % modulus;
    if k <= 3 {
        return (1..modulus).step_by(2).find(|x| x * x % modulus == c);
    }
    if c % 8 != 1 {
        return None;
    }
    let mut x = 1u128;
    for j in 3..k {
        let m = 1u128 << (j + 1);
        if x.wrapping_mul(x) % m != c % m {
            x += 1 << (j - 1);
        }
    }
    debug_assert_eq!(x.wrapping_mul(x) % modulus, c);
    Some(x)
}

/// Positive `(z1, z2, z3)` with `z1^3 + z2^3 + z3^3 = t mod 2^h`.
fn cube_triple_mod_pow2(t: u128, h: u32) -> [u128; 3] {
    let modulus = 1u128 << h;
    let t = t % modulus;
    let (odd, z2) = if t % 2 == 1 { (t, modulus) } else { ((t + modulus - 1) % modulus, 1) };
    // cubing permutes the odd residues; invert with 3^{-1} mod 2^{h-1}
    let z1 = if h <= 3 {
        (1..=modulus).find(|z| z.pow(3) % modulus == odd).unwrap()
    } else {
        let order = 1u64 << (h - 1);
        let d = pow_mod(3, order / 2 - 1, order) as u128; // 3^{-1} since 3^{order/2} = 1
        mod_pow_u128(odd, d, modulus)
    };
    [z1, z2, modulus]
}

fn mod_pow_u128(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// 2-adic valuation data for `n` with an exhibited solution of `x1^2 + ... + x4^2 = n mod 2^h`.
///
/// For `gamma >= 3` the solution is `x_i = 2^theta y_i` with `y_1` odd, lifted from a
/// solution modulo 8; this needs `h >= gamma + 2`. The count bound
/// `M_n(2^h) >= 2^{11h - gamma - 16}` is cross-checked against [`local_count_mn`] when
/// `2^h <= budget`.
pub fn two_adic_profile(n: u128, h: u32, budget: u128) -> Result<TwoAdicProfile> {
    if n == 0 {
        return Err(Error::Contract("n must be positive".into()));
    }
    if h == 0 || h > 60 {
        return Err(Error::Contract(format!("h = {h} outside 1..=60")));
    }
    let gamma = n.trailing_zeros();
    let theta = if gamma >= 1 { (gamma - 1) / 2 } else { 0 };
    if gamma >= 3 && h < gamma + 2 {
        return Err(Error::Contract(format!("h = {h} < gamma + 2 = {}", gamma + 2)));
    }
    let modulus = 1u128 << h;
    let squares_solution = if gamma <= 2 {
        let k = h.max(3);
        let m = n % (1u128 << k);
        solve_squares_odd_first(m, k).map(|y| y.map(|v| v % modulus))
    } else {
        let m = n >> (2 * theta);
        let k = h - 2 * theta;
        solve_squares_odd_first(m % (1u128 << k), k)
            .map(|y| y.map(|v| (v << theta) % modulus))
    }
    .ok_or_else(|| Error::Verification(format!("no 2-adic solution for n = {n}")))?;

    let sum: u128 = squares_solution.iter().map(|&x| x * x % modulus).sum::<u128>() % modulus;
    let mut condition_checked = sum == n % modulus;
    let mut witness = Vec::with_capacity(12);
    for &x in &squares_solution {
        witness.extend_from_slice(&cube_triple_mod_pow2(x, h));
    }
    let t_of = |y: &[u128]| y.iter().map(|&z| mod_pow_u128(z, 3, modulus)).sum::<u128>() % modulus;
    let total: u128 = witness.chunks(3).map(|y| t_of(y).pow(2) % modulus).sum::<u128>() % modulus;
    condition_checked &= total == n % modulus;

    let (lower_bound, count_bound_log2) = if gamma <= 2 {
        (2f64.powi(-33), 11 * (h as i64 - 3))
    } else {
        (2f64.powi(-(gamma as i32) - 16), 11 * h as i64 - gamma as i64 - 16)
    };
    let (checked_count, bound_holds) = if modulus <= budget {
        let m = LocalCounts::for_modulus(modulus as u64)?.count((n % modulus) as i128);
        let holds = count_bound_log2 <= 0 || m >= BigUint::from(2u8).pow(count_bound_log2 as u32);
        (Some(m.to_string()), Some(holds))
    } else {
        (None, None)
    };
    Ok(TwoAdicProfile {
        n,
        gamma,
        theta,
        h,
        squares_solution,
        witness,
        condition_checked,
        lower_bound,
        count_bound_log2,
        checked_count,
        bound_holds,
    })
}

/// `y in (Z/2^k)^4` with `y_1` odd and `sum y_i^2 = m mod 2^k` (`k >= 3`).
fn solve_squares_odd_first(m: u128, k: u32) -> Option<[u128; 4]> {
    let modulus = 1u128 << k;
    for y2 in 0..8u128 {
        for y3 in 0..8u128 {
            for y4 in 0..8u128 {
                let used = (y2 * y2 + y3 * y3 + y4 * y4) % modulus;
                let rest = (m % modulus + modulus - used) % modulus;
                if rest % 8 == 1 {
                    if let Some(y1) = sqrt_mod_pow2(rest, k) {
                        return Some([y1, y2, y3, y4]);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_partition_of_all_tuples() {
        let even = local_count_mn(2, 1, 0, DEFAULT_LOCAL_BUDGET).unwrap();
        let odd = local_count_mn(2, 1, 1, DEFAULT_LOCAL_BUDGET).unwrap();
        assert_eq!(even + odd, BigUint::from(4096u32));
    }

    #[test]
    fn counts_sum_to_all_tuples() {
        for (p, h) in [(2u64, 3u32), (3, 2), (5, 1), (7, 1)] {
            let lc = LocalCounts::new(p, h, DEFAULT_LOCAL_BUDGET).unwrap();
            let q = lc.modulus();
            let total: BigUint = (0..q as i128).map(|n| lc.count(n)).sum();
            assert_eq!(total, BigUint::from(q).pow(12));
        }
    }

    #[test]
    fn brute_force_count_mod_3() {
        // 3^12 tuples; T(y)^2 mod 3 depends on y through T mod 3
        let mut per_triple = [0u64; 3];
        for a in 1..=3u64 {
            for b in 1..=3u64 {
                for c in 1..=3u64 {
                    let t = (a.pow(3) + b.pow(3) + c.pow(3)) % 3;
                    per_triple[(t * t % 3) as usize] += 1;
                }
            }
        }
        for n in 0..3i128 {
            let mut m = 0u64;
            for s1 in 0..3 {
                for s2 in 0..3 {
                    for s3 in 0..3 {
                        for s4 in 0..3 {
                            if (s1 + s2 + s3 + s4) % 3 == n as usize {
                                m += per_triple[s1] * per_triple[s2] * per_triple[s3] * per_triple[s4];
                            }
                        }
                    }
                }
            }
            assert_eq!(local_count_mn(3, 1, n, DEFAULT_LOCAL_BUDGET).unwrap(), BigUint::from(m));
            let lhs = partial_euler_sum(3, 1, n).unwrap();
            let rhs = LocalCounts::new(3, 1, DEFAULT_LOCAL_BUDGET).unwrap().normalized(n);
            assert!((lhs - rhs).abs() < 1e-6);
        }
    }

    #[test]
    fn capacity_error_for_large_modulus() {
        assert!(matches!(
            local_count_mn(101, 3, 1, DEFAULT_LOCAL_BUDGET),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(local_count_mn(4, 1, 1, DEFAULT_LOCAL_BUDGET), Err(Error::Contract(_))));
    }

    #[test]
    fn sigma_examples() {
        let est = sigma_p(5, 1, 2, DEFAULT_SIGMA_TOL, DEFAULT_LOCAL_BUDGET).unwrap();
        assert!((est.value - 1.0).abs() < 0.2, "{est:?}");
        let s7 = sigma_p(7, 10, 1, DEFAULT_SIGMA_TOL, DEFAULT_LOCAL_BUDGET).unwrap();
        let direct = 1.0 + coefficient(7, 10);
        assert!((s7.values[0] - direct).abs() < 1e-9);
        assert!(s7.implied_constant.is_some());
    }

    fn coefficient(q: u64, n: i128) -> f64 {
        crate::expsum::coefficient_sn(q, n).unwrap()
    }

    #[test]
    fn m33_examples() {
        let s = m33_set(3, 3, DEFAULT_LOCAL_BUDGET).unwrap();
        assert_eq!(s.len(), 21);
        assert!(s.iter().all(|t| t % 9 != 4 && t % 9 != 5));
        assert_eq!(m33_set(2, 3, DEFAULT_LOCAL_BUDGET).unwrap(), (0..8).collect::<Vec<_>>());
        assert_eq!(m33_set(5, 1, DEFAULT_LOCAL_BUDGET).unwrap(), (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn residue_sets_reproduce() {
        let sets = paper_sets_a_b().unwrap();
        assert_eq!(sets.b, vec![1, 4, 10, 13, 19, 22]);
    }

    #[test]
    fn generic_certificates() {
        for (p, n) in [(5u64, 0i128), (7, 3)] {
            match hensel_certificate(p, n).unwrap() {
                LocalCertificate::Nonsingular(c) => {
                    assert!(c.condition_checked);
                    assert_eq!(c.witness.len(), 12);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
        let search = HenselSearch::new(11).unwrap();
        for n in 0..11 {
            assert!(search.find(n).unwrap().condition_checked);
        }
    }

    #[test]
    fn certificates_bound_small_counts() {
        for (p, n, hs) in [(5u64, 3i128, 1..=2u32), (3, 7, 3..=4), (2, 6, 3..=6)] {
            let cert = match hensel_certificate(p, n).unwrap() {
                LocalCertificate::Nonsingular(c) => c,
                other => panic!("unexpected {other:?}"),
            };
            for h in hs {
                let m = local_count_mn(p, h, n, DEFAULT_LOCAL_BUDGET).unwrap();
                assert!(m >= cert.count_lower_bound(h), "p={p} h={h}");
            }
        }
    }

    #[test]
    fn two_adic_examples() {
        let prof = two_adic_profile(64, 8, 1 << 10).unwrap();
        assert_eq!((prof.gamma, prof.theta), (6, 2));
        assert!(prof.condition_checked);
        assert_eq!(prof.bound_holds, Some(true));
        assert_eq!(prof.squares_solution[0] % 4, 0);
        assert_eq!((prof.squares_solution[0] >> 2) % 2, 1);

        let prof = two_adic_profile(36, 4, 1 << 10).unwrap();
        assert_eq!((prof.gamma, prof.theta), (2, 0));
        assert_eq!(prof.lower_bound, 2f64.powi(-33));
        assert!(prof.condition_checked);

        assert_eq!(two_adic_profile(7, 3, 0).unwrap().gamma, 0);
        assert!(two_adic_profile(64, 7, 0).is_err());
    }

    #[test]
    fn two_adic_branch_from_certificate() {
        match hensel_certificate(2, 64).unwrap() {
            LocalCertificate::TwoAdic(p) => assert!(p.condition_checked),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn square_roots_mod_powers_of_two() {
        for k in 3..20 {
            let m = 1u128 << k;
            for c in (1..m.min(4000)).step_by(8) {
                let x = sqrt_mod_pow2(c, k).unwrap();
                assert_eq!(x * x % m, c);
            }
        }
    }
}
