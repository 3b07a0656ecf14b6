//! Exact representation counts `R(n) = sum a_{x1} a_{x2} b_{h1} b_{h2}` over
//! `x1^2 + x2^2 + p1^6 h1^2 + p2^6 h2^2 = n`.
//!
//! Three routes: exact integer convolution of the coefficient sequences (transform with a
//! residue check), a windowed sparse sum used for large `n`, and the Fourier coefficient
//! of `h^2 W^2` on a DFT grid.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{check_capacity, Error, Result};
use crate::ntt::convolve_exact;
use crate::weights::WeightTable;

/// Default cap on dense sequence length.
pub const DEFAULT_RN_BUDGET: u128 = 1 << 26;

/// `(x^2, a_x)` pairs.
pub fn square_terms(table: &WeightTable) -> Vec<(u64, u64)> {
    table.iter().map(|(x, a)| (x * x, a)).collect()
}

/// `(p^6 h^2, b_h)` pairs merged over the primes.
pub fn scaled_square_terms(table: &WeightTable, primes: &[u64]) -> Vec<(u64, u64)> {
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for &p in primes {
        let p6 = p.pow(6);
        for (h, b) in table.iter() {
            *out.entry(p6 * h * h).or_insert(0) += b;
        }
    }
    out.into_iter().collect()
}

fn dense(terms: &[(u64, u64)], len: usize) -> Vec<u64> {
    let mut v = vec![0u64; len];
    for &(i, m) in terms {
        v[i as usize] += m;
    }
    v
}

fn mass(terms: &[(u64, u64)]) -> u128 {
    terms.iter().map(|&(_, m)| m as u128).sum()
}

fn max_index(terms: &[(u64, u64)]) -> u64 {
    terms.iter().map(|&(i, _)| i).max().unwrap_or(0)
}

/// Largest `n` with possibly nonzero `R(n)`.
pub fn support_max(table_a: &WeightTable, table_b: &WeightTable, primes: &[u64]) -> u64 {
    2 * max_index(&square_terms(table_a)) + 2 * max_index(&scaled_square_terms(table_b, primes))
}

/// `R(m)` for every `m in 0..=support_max`, by exact integer convolution.
pub fn exact_rn_all(table_a: &WeightTable, table_b: &WeightTable, primes: &[u64], budget: u128) -> Result<Vec<u128>> {
    let a = square_terms(table_a);
    let b = scaled_square_terms(table_b, primes);
    if a.is_empty() || b.is_empty() {
        return Ok(vec![0]);
    }
    let top = support_max(table_a, table_b, primes);
    check_capacity("dense R(n) sequence", top as u128 + 1, budget)?;
    let da = dense(&a, max_index(&a) as usize + 1);
    let db = dense(&b, max_index(&b) as usize + 1);
    let (ma, mb) = (mass(&a), mass(&b));
    let a2 = convolve_exact(&da, &da, ma * ma)?;
    let b2 = convolve_exact(&db, &db, mb * mb)?;
    let narrow = |v: Vec<u128>| -> Result<Vec<u64>> {
        v.into_iter()
            .map(|x| u64::try_from(x).map_err(|_| Error::Verification("pair count exceeds 64 bits".into())))
            .collect()
    };
    let bound = (ma * ma).checked_mul(mb * mb).ok_or(Error::Capacity {
        what: "R(n) total mass",
        needed: u128::MAX,
        budget: u128::MAX,
    })?;
    convolve_exact(&narrow(a2)?, &narrow(b2)?, bound)
}

/// Sorted pairwise sums `u + v` of a term list with multiplicities.
fn pair_sums(terms: &[(u64, u64)], budget: u128) -> Result<Vec<(u64, u128)>> {
    let n = terms.len() as u128;
    check_capacity("pairwise sums", n * (n + 1) / 2, budget)?;
    let mut sums: Vec<(u64, u128)> = Vec::with_capacity((n * (n + 1) / 2) as usize);
    for (i, &(u, m)) in terms.iter().enumerate() {
        for &(v, k) in &terms[i..] {
            let w = if u == v { 1 } else { 2 };
            sums.push((u + v, w * m as u128 * k as u128));
        }
    }
    sums.sort_unstable_by_key(|&(s, _)| s);
    sums.dedup_by(|later, kept| {
        if later.0 == kept.0 {
            kept.1 += later.1;
            true
        } else {
            false
        }
    });
    Ok(sums)
}

/// `R(n)` for `n in [lo, hi]`: both pair-sum sets are built sparsely and the window is
/// filled by range queries, so memory does not scale with `n`.
pub fn windowed_rn(
    lo: u64,
    hi: u64,
    table_a: &WeightTable,
    table_b: &WeightTable,
    primes: &[u64],
    budget: u128,
) -> Result<Vec<u128>> {
    if hi < lo {
        return Err(Error::Contract(format!("empty window [{lo}, {hi}]")));
    }
    check_capacity("R(n) window", (hi - lo) as u128 + 1, budget)?;
    let a2 = pair_sums(&square_terms(table_a), budget)?;
    let b2 = pair_sums(&scaled_square_terms(table_b, primes), budget)?;
    let mut out = vec![0u128; (hi - lo + 1) as usize];
    for &(w, c) in &b2 {
        if w > hi {
            break;
        }
        let (from, to) = (lo.saturating_sub(w), hi - w);
        let start = a2.partition_point(|&(s, _)| s < from);
        for &(s, m) in a2[start..].iter().take_while(|&&(s, _)| s <= to) {
            out[(s + w - lo) as usize] += c * m;
        }
    }
    Ok(out)
}

/// `R(n)` for one `n`.
pub fn exact_rn(n: u64, table_a: &WeightTable, table_b: &WeightTable, primes: &[u64], budget: u128) -> Result<u128> {
    Ok(windowed_rn(n, n, table_a, table_b, primes, budget)?[0])
}

/// Grid length for the Fourier route: smallest power of two above the support.
pub fn dft_grid_len(table_a: &WeightTable, table_b: &WeightTable, primes: &[u64]) -> usize {
    (support_max(table_a, table_b, primes) as usize + 1).next_power_of_two()
}

/// `R(m) = L^{-1} sum_k h(k/L)^2 W(k/L)^2 e(-k m / L)` for all `m`, rounded to integers.
///
/// Both sequences share one complex transform (`a` in the real part, `b` in the imaginary
/// part); the rounding residue must stay below 0.25 or the result is rejected.
pub fn dft_rn_all(table_a: &WeightTable, table_b: &WeightTable, primes: &[u64], budget: u128) -> Result<Vec<u128>> {
    let a = square_terms(table_a);
    let b = scaled_square_terms(table_b, primes);
    if a.is_empty() || b.is_empty() {
        return Ok(vec![0]);
    }
    let top = support_max(table_a, table_b, primes) as usize;
    let len = dft_grid_len(table_a, table_b, primes);
    check_capacity("DFT grid", len as u128, budget)?;
    let mut z = vec![Complex64::new(0.0, 0.0); len];
    for &(i, m) in &a {
        z[i as usize].re += m as f64;
    }
    for &(i, m) in &b {
        z[i as usize].im += m as f64;
    }
    let mut planner = FftPlanner::<f64>::new();
    // rustfft's forward transform uses e(-k m / L): it evaluates h and W at alpha = -k/L
    planner.plan_fft_forward(len).process(&mut z);
    let mut prod = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..len {
        let zk = z[k];
        let zc = z[(len - k) % len].conj();
        let ha = (zk + zc) * 0.5;
        let wb = (zk - zc) * Complex64::new(0.0, -0.5);
        prod[k] = ha * ha * wb * wb;
    }
    planner.plan_fft_inverse(len).process(&mut prod);
    let scale = 1.0 / len as f64;
    let mut out = Vec::with_capacity(top + 1);
    let mut worst: f64 = 0.0;
    for v in prod.iter().take(top + 1) {
        let x = v.re * scale;
        let r = x.round();
        worst = worst.max((x - r).abs()).max((v.im * scale).abs());
        out.push(r.max(0.0) as u128);
    }
    if worst > 0.25 {
        return Err(Error::Verification(format!("DFT rounding residue {worst} too large")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Role;

    #[test]
    fn single_configuration_example() {
        let a = WeightTable::from_pairs(Role::A, [(3, 1)]);
        let b = WeightTable::from_pairs(Role::B, [(3, 1)]);
        // 2 * 3^2 + 2 * 2^6 * 3^2
        assert_eq!(exact_rn(1170, &a, &b, &[2], DEFAULT_RN_BUDGET).unwrap(), 1);
        assert_eq!(exact_rn(663570, &a, &b, &[2], DEFAULT_RN_BUDGET).unwrap(), 0);
        assert_eq!(exact_rn(1, &a, &b, &[2], DEFAULT_RN_BUDGET).unwrap(), 0);
        assert_eq!(exact_rn(0, &a, &b, &[2], DEFAULT_RN_BUDGET).unwrap(), 0);
        let all = exact_rn_all(&a, &b, &[2], DEFAULT_RN_BUDGET).unwrap();
        assert_eq!(all.len(), 1171);
        assert_eq!(all.iter().sum::<u128>(), 1);
        assert_eq!(all[1170], 1);
    }

    #[test]
    fn three_routes_agree_on_small_toy() {
        let a = WeightTable::from_pairs(Role::A, [(3, 2), (10, 1), (17, 3)]);
        let b = WeightTable::from_pairs(Role::B, [(2, 1), (3, 2)]);
        let primes = [2, 3];
        let conv = exact_rn_all(&a, &b, &primes, DEFAULT_RN_BUDGET).unwrap();
        let dft = dft_rn_all(&a, &b, &primes, DEFAULT_RN_BUDGET).unwrap();
        assert_eq!(conv, dft);
        let top = conv.len() as u64 - 1;
        let win = windowed_rn(0, top, &a, &b, &primes, DEFAULT_RN_BUDGET).unwrap();
        assert_eq!(conv, win);
        // mass_a = 6, and each prime carries mass_b = 3
        assert_eq!(conv.iter().sum::<u128>(), 36 * 36);
    }
}
