//! Exact integer convolution.
//!
//! Small inputs go through a direct (sparse) double loop in overflow-checked `u128`.
//! Large inputs use number-theoretic transforms over two 62-bit primes, reconstructed
//! with CRT, and a third prime as a residue check on every output coefficient.

use crate::arith::{mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Prime `c * 2^k + 1` with a known primitive root.
#[derive(Debug, Clone, Copy)]
pub struct NttPrime {
    pub modulus: u64,
    pub two_adicity: u32,
    pub generator: u64,
}

pub const NTT_PRIMES: [NttPrime; 3] = [
    NttPrime {
        modulus: 4179340454199820289,
        two_adicity: 57,
        generator: 3,
    },
    NttPrime {
        modulus: 2485986994308513793,
        two_adicity: 55,
        generator: 5,
    },
    NttPrime {
        modulus: 2936346957045563393,
        two_adicity: 54,
        generator: 3,
    },
];

/// Cut-over length from direct to transform-based convolution.
pub const DIRECT_LIMIT: usize = 4096;

fn bit_reverse_permute(a: &mut [u64]) {
    let n = a.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
}

fn transform(a: &mut [u64], prime: &NttPrime, inverse: bool) {
    let n = a.len();
    let p = prime.modulus;
    debug_assert!(n.is_power_of_two());
    bit_reverse_permute(a);
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(prime.generator, (p - 1) / len as u64, p);
        if inverse {
            w = pow_mod(w, p - 2, p);
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut t = 1u64;
        for _ in 0..half {
            twiddles.push(t);
            t = mul_mod(t, w, p);
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = mul_mod(hi[k], twiddles[k], p);
                lo[k] = if u + v >= p { u + v - p } else { u + v };
                hi[k] = if u >= v { u - v } else { u + p - v };
            }
        }
        len <<= 1;
    }
    if inverse {
        let inv_n = pow_mod(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, inv_n, p);
        }
    }
}

fn convolve_mod(a: &[u64], b: &[u64], len: usize, prime: &NttPrime) -> Vec<u64> {
    let p = prime.modulus;
    let mut fa = vec![0u64; len];
    let mut fb = vec![0u64; len];
    for (dst, &src) in fa.iter_mut().zip(a) {
        *dst = src % p;
    }
    for (dst, &src) in fb.iter_mut().zip(b) {
        *dst = src % p;
    }
    transform(&mut fa, prime, false);
    transform(&mut fb, prime, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mul_mod(*x, *y, p);
    }
    transform(&mut fa, prime, true);
    fa
}

/// Linear convolution of two nonnegative sequences, exact.
///
/// `bound` must dominate every output coefficient (e.g. the product of the input totals);
/// it has to stay below the product of the two reconstruction primes.
pub fn convolve_exact(a: &[u64], b: &[u64], bound: u128) -> Result<Vec<u128>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let p0 = NTT_PRIMES[0].modulus as u128;
    let p1 = NTT_PRIMES[1].modulus as u128;
    if bound >= p0 * p1 {
        return Err(Error::Capacity {
            what: "exact transform convolution (coefficient bound)",
            needed: bound,
            budget: p0 * p1 - 1,
        });
    }
    let out_len = a.len() + b.len() - 1;
    let len = out_len.next_power_of_two();
    let r0 = convolve_mod(a, b, len, &NTT_PRIMES[0]);
    let r1 = convolve_mod(a, b, len, &NTT_PRIMES[1]);
    let r2 = convolve_mod(a, b, len, &NTT_PRIMES[2]);
    let inv_p0_mod_p1 = pow_mod((p0 % p1) as u64, (p1 - 2) as u64, p1 as u64) as u128;
    let p2 = NTT_PRIMES[2].modulus as u128;
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        // Garner: x = r0 + p0 * ((r1 - r0) * p0^{-1} mod p1)
        let x0 = r0[i] as u128;
        let diff = (r1[i] as u128 + p1 - x0 % p1) % p1;
        let k = mul_mod(diff as u64, inv_p0_mod_p1 as u64, p1 as u64) as u128;
        let x = x0 + p0 * k;
        if x % p2 != r2[i] as u128 {
            return Err(Error::Verification(format!(
                "transform convolution residue check failed at index {i}"
            )));
        }
        out.push(x);
    }
    Ok(out)
}

/// Cyclic convolution modulo `a.len()` (both inputs must have the same length).
///
/// Exact: direct overflow-checked accumulation for short inputs, transform path otherwise.
pub fn cyclic_convolve(a: &[u128], b: &[u128]) -> Result<Vec<u128>> {
    assert_eq!(a.len(), b.len(), "cyclic convolution needs equal lengths");
    let q = a.len();
    if q == 0 {
        return Ok(Vec::new());
    }
    if q <= DIRECT_LIMIT {
        return cyclic_direct(a, b);
    }
    let total_a: u128 = a.iter().try_fold(0u128, |s, &x| s.checked_add(x)).ok_or_else(overflow)?;
    let total_b: u128 = b.iter().try_fold(0u128, |s, &x| s.checked_add(x)).ok_or_else(overflow)?;
    let bound = total_a.checked_mul(total_b).ok_or_else(overflow)?;
    let narrow = |v: &[u128]| -> Result<Vec<u64>> {
        v.iter()
            .map(|&x| u64::try_from(x).map_err(|_| overflow()))
            .collect()
    };
    let linear = convolve_exact(&narrow(a)?, &narrow(b)?, bound)?;
    let mut out = vec![0u128; q];
    for (i, x) in linear.into_iter().enumerate() {
        out[i % q] += x;
    }
    Ok(out)
}

fn cyclic_direct(a: &[u128], b: &[u128]) -> Result<Vec<u128>> {
    let q = a.len();
    let mut out = vec![0u128; q];
    let nz_b: Vec<(usize, u128)> = b
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for &(j, y) in &nz_b {
            let k = if i + j >= q { i + j - q } else { i + j };
            let prod = x.checked_mul(y).ok_or_else(overflow)?;
            out[k] = out[k].checked_add(prod).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

fn overflow() -> Error {
    Error::Capacity {
        what: "128-bit convolution accumulator",
        needed: u128::MAX,
        budget: u128::MAX,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;
    use proptest::prelude::*;

    #[test]
    fn transform_primes_are_valid() {
        for p in NTT_PRIMES {
            assert!(is_prime(p.modulus));
            let odd = (p.modulus - 1) >> p.two_adicity;
            assert_eq!(odd << p.two_adicity, p.modulus - 1);
            assert_eq!(odd & 1, 1);
            // generator has full order: g^((p-1)/2) = -1
            assert_eq!(pow_mod(p.generator, (p.modulus - 1) / 2, p.modulus), p.modulus - 1);
        }
    }

    fn naive_cyclic(a: &[u128], b: &[u128]) -> Vec<u128> {
        let q = a.len();
        let mut out = vec![0u128; q];
        for i in 0..q {
            for j in 0..q {
                out[(i + j) % q] += a[i] * b[j];
            }
        }
        out
    }

    #[test]
    fn transform_path_matches_naive_above_cutover() {
        let q = DIRECT_LIMIT + 17;
        let a: Vec<u128> = (0..q as u128).map(|i| (i * 7919 + 3) % 1000).collect();
        let b: Vec<u128> = (0..q as u128).map(|i| (i * i + 11) % 977).collect();
        assert_eq!(cyclic_convolve(&a, &b).unwrap(), naive_cyclic(&a, &b));
    }

    #[test]
    fn large_coefficients_survive_reconstruction() {
        let a = vec![1u64 << 50; 300];
        let b = vec![(1u64 << 50) + 12345; 300];
        let prod = (1u128 << 50) * ((1u128 << 50) + 12345);
        let out = convolve_exact(&a, &b, 300 * prod).unwrap();
        assert_eq!(out[299], 300 * prod);
        assert_eq!(out[0], prod);
        assert_eq!(out[598], prod);
    }

    #[test]
    fn oversized_bound_is_a_capacity_error() {
        let a = vec![1u64 << 59; 300];
        let bound = 300u128 * (1u128 << 118);
        assert!(matches!(convolve_exact(&a, &a, bound), Err(Error::Capacity { .. })));
    }

    proptest! {
        #[test]
        fn linear_convolution_is_exact(
            a in proptest::collection::vec(0u64..1_000_000, 1..60),
            b in proptest::collection::vec(0u64..1_000_000, 1..60),
        ) {
            let out = convolve_exact(&a, &b, 1u128 << 90).unwrap();
            for (k, &v) in out.iter().enumerate() {
                let mut s = 0u128;
                for i in 0..a.len() {
                    if k >= i && k - i < b.len() {
                        s += a[i] as u128 * b[k - i] as u128;
                    }
                }
                prop_assert_eq!(v, s);
            }
        }

        #[test]
        fn cyclic_total_is_product_of_totals(
            a in proptest::collection::vec(0u128..1000, 1..40),
        ) {
            let b: Vec<u128> = a.iter().rev().cloned().collect();
            let c = cyclic_convolve(&a, &b).unwrap();
            let ta: u128 = a.iter().sum();
            let tb: u128 = b.iter().sum();
            prop_assert_eq!(c.iter().sum::<u128>(), ta * tb);
        }
    }
}
