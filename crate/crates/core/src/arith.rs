//! Small integer helpers shared by the sieves, the local computations and the census.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest prime factor of every integer in `0..=limit` (0 and 1 map to 1).
pub fn largest_prime_factor_table(limit: usize) -> Vec<u32> {
    let mut lpf = vec![1u32; limit + 1];
    for p in 2..=limit {
        if lpf[p] == 1 {
            let mut m = p;
            while m <= limit {
                lpf[m] = p as u32;
                m += p;
            }
        }
    }
    lpf
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes `p` with `lo <= p <= hi` for real endpoints.
pub fn primes_in_range(lo: f64, hi: f64) -> Vec<u64> {
    if hi < 2.0 {
        return Vec::new();
    }
    primes_up_to(hi.floor() as u64)
        .into_iter()
        .filter(|&p| p as f64 >= lo)
        .collect()
}

/// 2-adic valuation; `None` for zero.
pub fn two_adic_valuation(n: u64) -> Option<u32> {
    if n == 0 {
        None
    } else {
        Some(n.trailing_zeros())
    }
}

pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn icbrt(n: u64) -> u64 {
    let mut r = (n as f64).cbrt() as u64;
    let cube = |x: u64| x.checked_mul(x).and_then(|y| y.checked_mul(x));
    while r > 0 && cube(r).is_none_or(|c| c > n) {
        r -= 1;
    }
    while cube(r + 1).is_some_and(|c| c <= n) {
        r += 1;
    }
    r
}

/// Number of integers in the half-open real interval `(lo, hi]`.
pub fn integers_in(lo: f64, hi: f64) -> std::ops::RangeInclusive<u64> {
    let start = if lo < 0.0 { 0 } else { lo.floor() as u64 + 1 };
    let end = if hi < 0.0 { 0 } else { hi.floor() as u64 };
    if hi < 0.0 || end < start {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    start..=end
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_up_to(10_000);
        let mr: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime(4179340454199820289));
        assert!(!is_prime(4179340454199820289 - 2));
    }

    #[test]
    fn factorize_roundtrip() {
        for n in 1..5000u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, k)| p.pow(k)).product();
            assert_eq!(prod, n);
        }
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
    }

    #[test]
    fn integer_roots() {
        for n in 0..100_000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
            let c = icbrt(n);
            assert!(c * c * c <= n && (c + 1).pow(3) > n);
        }
        assert_eq!(icbrt(u64::MAX), 2642245);
    }

    #[test]
    fn half_open_integer_ranges() {
        assert_eq!(integers_in(1.5, 4.0).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(integers_in(2.0, 4.0).collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(integers_in(4.19, 4.61).count(), 0);
        assert_eq!(integers_in(0.0, 0.83).count(), 0);
    }
}
