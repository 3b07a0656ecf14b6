//! Exceptional-set census: integers `n <= N` that are not `c1^2 + c2^2 + c3^2 + c4^2` with
//! every `c_i` a sum of three positive cubes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{isqrt, pow_mod, two_adic_valuation};
use crate::cubes::{sieve_cube_sums, CubeSumSieve};
use crate::error::{check_capacity, Error, Result};
use crate::ntt::convolve_exact;

/// Cap on listed exceptional values; counts are always exact.
pub const E_LIST_CAP: usize = 100_000;

/// Fixed-length bitset over `[0, len)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    len: u64,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: u64) -> Self {
        Bitset { len, words: vec![0; len.div_ceil(64) as usize] }
    }

    #[inline]
    pub fn set(&mut self, i: u64) {
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        i < self.len && self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
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

    /// Word `k` of `self << shift` (bits shifted towards higher indices).
    #[inline]
    fn shifted_word(&self, k: usize, shift: u64) -> u64 {
        let (ws, bs) = ((shift / 64) as usize, (shift % 64) as u32);
        if k < ws {
            return 0;
        }
        let hi = self.words.get(k - ws).copied().unwrap_or(0);
        if bs == 0 {
            return hi;
        }
        let lo = if k > ws { self.words.get(k - ws - 1).copied().unwrap_or(0) } else { 0 };
        (hi << bs) | (lo >> (64 - bs))
    }

    fn clear_tail(&mut self) {
        let extra = self.words.len() as u64 * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

/// How `S2 + S2` is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumsetMethod {
    /// Word-level shifted OR of `S2` by each of its elements up to `N/2`.
    Pairing,
    /// Exact integer convolution of the indicator with itself.
    Transform,
    /// Per-`n` search over `s in S2`, `s <= n/2`, with early exit.
    Scan,
    /// `Pairing` when its word operations stay below `4e9`, otherwise `Scan`.
    Auto,
}

/// Sieve, squares and the two-fold sumset.
#[derive(Debug, Clone)]
pub struct Census {
    pub limit: u64,
    sieve: CubeSumSieve,
    /// Members of `C` up to `sqrt(N)`.
    members: Vec<u64>,
    s2: Bitset,
    s4: Bitset,
    pub method: SumsetMethod,
}

fn square_sums(members: &[u64], limit: u64) -> Bitset {
    let mut s2 = Bitset::new(limit + 1);
    for (i, &a) in members.iter().enumerate() {
        let a2 = a * a;
        for &b in &members[i..] {
            let s = a2 + b * b;
            if s > limit {
                break;
            }
            s2.set(s);
        }
    }
    s2
}

fn sumset_pairing(s2: &Bitset, limit: u64) -> Bitset {
    let shifts: Vec<u64> = s2.ones().take_while(|&s| 2 * s <= limit).collect();
    let mut out = Bitset::new(limit + 1);
    const BLOCK: usize = 1024;
    out.words.par_chunks_mut(BLOCK).enumerate().for_each(|(b, chunk)| {
        let base = b * BLOCK;
        for &s in &shifts {
            for (j, w) in chunk.iter_mut().enumerate() {
                *w |= s2.shifted_word(base + j, s);
            }
        }
    });
    out.clear_tail();
    out
}

fn sumset_transform(s2: &Bitset, limit: u64, budget_bytes: u128) -> Result<Bitset> {
    let len = limit + 1;
    // three residue vectors of the padded length plus the u128 output
    let padded = (2 * len - 1).next_power_of_two() as u128;
    check_capacity("sumset transform bytes", padded * 24 + (2 * len as u128) * 16, budget_bytes)?;
    let ind: Vec<u64> = (0..len).map(|i| s2.get(i) as u64).collect();
    let counts = convolve_exact(&ind, &ind, s2.count_ones() as u128)?;
    let mut out = Bitset::new(len);
    for (i, &c) in counts.iter().enumerate().take(len as usize) {
        if c > 0 {
            out.set(i as u64);
        }
    }
    Ok(out)
}

fn sumset_scan(s2: &Bitset, limit: u64) -> Bitset {
    let list: Vec<u64> = s2.ones().collect();
    let mut out = Bitset::new(limit + 1);
    out.words.par_iter_mut().enumerate().for_each(|(k, word)| {
        for bit in 0..64u64 {
            let n = k as u64 * 64 + bit;
            if n > limit {
                break;
            }
            if list.iter().take_while(|&&s| 2 * s <= n).any(|&s| s2.get(n - s)) {
                *word |= 1 << bit;
            }
        }
    });
    out
}

impl Census {
    pub fn new(limit: u64, method: SumsetMethod, budget_bytes: u128) -> Result<Self> {
        if limit < 1 {
            return Err(Error::Contract("census needs N >= 1".into()));
        }
        check_capacity("census bitset bytes", 3 * (limit as u128 / 8 + 8), budget_bytes)?;
        let root = isqrt(limit);
        let sieve = sieve_cube_sums(root.max(1), false, budget_bytes)?;
        let members: Vec<u64> = sieve.members().filter(|&c| c >= 1 && c <= root).collect();
        let s2 = square_sums(&members, limit);
        let method = match method {
            SumsetMethod::Auto => {
                let shifts = s2.ones().take_while(|&s| 2 * s <= limit).count() as f64;
                if shifts * (limit as f64 / 64.0) <= 4e9 {
                    SumsetMethod::Pairing
                } else {
                    SumsetMethod::Scan
                }
            }
            m => m,
        };
        let s4 = match method {
            SumsetMethod::Pairing => sumset_pairing(&s2, limit),
            SumsetMethod::Transform => sumset_transform(&s2, limit, budget_bytes)?,
            SumsetMethod::Scan | SumsetMethod::Auto => sumset_scan(&s2, limit),
        };
        Ok(Census { limit, sieve, members, s2, s4, method })
    }

    /// Members of `C` up to `sqrt(N)`.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn in_c(&self, c: u64) -> bool {
        self.sieve.contains(c)
    }

    pub fn is_two_square_sum(&self, n: u64) -> bool {
        self.s2.get(n)
    }

    pub fn representable(&self, n: u64) -> bool {
        assert!(n <= self.limit, "n = {n} beyond census range {}", self.limit);
        self.s4.get(n)
    }

    /// `E(N)` in increasing order.
    pub fn exceptional(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.limit).filter(|&n| !self.s4.get(n))
    }

    pub fn exceptional_count(&self) -> u64 {
        // index 0 is a sum of zero terms only, never set
        self.limit + 1 - self.s4.count_ones() - 1
    }

    fn two_square_witness(&self, m: u64) -> Option<(u64, u64)> {
        for &a in &self.members {
            let a2 = a * a;
            if 2 * a2 > m {
                break;
            }
            let b2 = m - a2;
            let b = isqrt(b2);
            if b * b == b2 && self.sieve.contains(b) {
                return Some((a, b));
            }
        }
        None
    }

    /// A sorted quadruple from `C` with squares summing to `n`.
    pub fn witness(&self, n: u64) -> Option<[u64; 4]> {
        if n > self.limit || !self.s4.get(n) {
            return None;
        }
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i..] {
                let u = a * a + b * b;
                if u > n {
                    break;
                }
                if self.s2.get(n - u) {
                    let (c, d) = self.two_square_witness(n - u)?;
                    let mut w = [a, b, c, d];
                    w.sort_unstable();
                    return Some(w);
                }
            }
        }
        None
    }

    pub fn record(&self, n: u64) -> CensusRecord {
        let witness = self.witness(n);
        let tag = is_family_member(n as u128).then_some(FamilyTag::TwoAdicFamily);
        CensusRecord {
            n,
            representable: witness.is_some(),
            witness,
            tag,
            gamma: two_adic_valuation(n).unwrap_or(0),
        }
    }

    /// Summary with the density curve at `t = N/10, 2N/10, ..., N`.
    pub fn summary(&self) -> Result<CensusSummary> {
        let mut e_list = Vec::new();
        let mut truncated = false;
        let marks: Vec<u64> = (1..=10u64).map(|i| (self.limit * i / 10).max(1)).collect();
        let mut density_curve = Vec::with_capacity(10);
        let mut count = 0u64;
        let mut next = 0;
        for n in 1..=self.limit {
            if !self.s4.get(n) {
                count += 1;
                if e_list.len() < E_LIST_CAP {
                    e_list.push(n);
                } else {
                    truncated = true;
                }
            }
            while next < marks.len() && marks[next] == n {
                density_curve.push((n, count));
                next += 1;
            }
        }
        let mut family_hits = Vec::new();
        for n in family_members(self.limit as u128) {
            let n = n as u64;
            if self.s4.get(n) {
                return Err(Error::Verification(format!("family value {n} found representable")));
            }
            family_hits.push(n);
        }
        Ok(CensusSummary {
            n_max: self.limit,
            e_count: count,
            family_hits,
            density_curve,
            method: self.method,
            e_list,
            e_list_truncated: truncated,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    TwoAdicFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: u64,
    pub representable: bool,
    pub witness: Option<[u64; 4]>,
    pub tag: Option<FamilyTag>,
    pub gamma: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusSummary {
    #[serde(rename = "N")]
    pub n_max: u64,
    #[serde(rename = "E_count")]
    pub e_count: u64,
    pub family_hits: Vec<u64>,
    pub density_curve: Vec<(u64, u64)>,
    pub method: SumsetMethod,
    #[serde(skip)]
    pub e_list: Vec<u64>,
    pub e_list_truncated: bool,
}

pub fn run_census(limit: u64, budget_bytes: u128) -> Result<Census> {
    Census::new(limit, SumsetMethod::Auto, budget_bytes)
}

/// Exceptional flags for `n in 0..=limit` by a direct loop over sorted quadruples.
pub fn brute_force_exceptional(limit: u64) -> Vec<bool> {
    let root = isqrt(limit);
    let c: Vec<u64> = (1..=root).filter(|&m| is_cube_sum(m)).collect();
    let mut hit = vec![false; limit as usize + 1];
    for (i, &a) in c.iter().enumerate() {
        for (j, &b) in c.iter().enumerate().skip(i) {
            let ab = a * a + b * b;
            if ab > limit {
                break;
            }
            for (k, &x) in c.iter().enumerate().skip(j) {
                let abx = ab + x * x;
                if abx > limit {
                    break;
                }
                for &y in &c[k..] {
                    let s = abx + y * y;
                    if s > limit {
                        break;
                    }
                    hit[s as usize] = true;
                }
            }
        }
    }
    hit.iter().enumerate().map(|(n, &h)| n >= 1 && !h).collect()
}

/// Direct test that `m` is a sum of three positive cubes.
pub fn is_cube_sum(m: u64) -> bool {
    let mut x = 1;
    while 3 * x * x * x <= m {
        let mut y = x;
        while x * x * x + 2 * y * y * y <= m {
            let rest = m - x * x * x - y * y * y;
            let z = crate::arith::icbrt(rest);
            if z >= y && z * z * z == rest {
                return true;
            }
            y += 1;
        }
        x += 1;
    }
    false
}

/// `2^{6 + 12 j}` for `j <= j_max`.
pub fn family_value(j: u32) -> u128 {
    1u128 << (6 + 12 * j)
}

pub fn is_family_member(n: u128) -> bool {
    n.is_power_of_two() && n.trailing_zeros() >= 6 && (n.trailing_zeros() - 6).is_multiple_of(12)
}

pub fn family_members(limit: u128) -> Vec<u128> {
    (0..10).map(family_value).take_while(|&v| v <= limit).collect()
}

/// `floor((log2 N - 6) / 12) + 1` for `N >= 64`, else 0.
pub fn family_count_formula(limit: u128) -> u64 {
    if limit < 64 {
        return 0;
    }
    let log2 = 127 - limit.leading_zeros() as u64;
    (log2 - 6) / 12 + 1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub j: u32,
    pub n: u128,
    /// Number of halvings `x -> x/2` forced by `8 | sum of squares`.
    pub descent_steps: u32,
    /// The forced common value `2^{2+6j}`.
    pub forced_x: u128,
    pub forced_x_mod_9: u64,
    pub obstructed: bool,
    /// Census verdict when `n` is within the census range.
    pub census_agrees: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyReport {
    /// Every solution of `x1^2 + ... + x4^2 = 0 (mod 8)` has all `x_i` even.
    pub evenness_mod_8: bool,
    /// The positive solutions of `x1^2 + ... + x4^2 = 4`.
    pub base_solutions: Vec<[u64; 4]>,
    /// Residues of sums of three cubes modulo 9.
    pub cube_sum_residues_mod_9: Vec<u64>,
    pub checks: Vec<FamilyCheck>,
    pub all_obstructed: bool,
}

/// Confirms `2^{6+12j}` is never a sum of four squares of members of `C`, for `j <= j_max`.
///
/// The argument is replayed by finite checks: squares modulo 8 force every `x_i` even while
/// `8 | n`, the descent ends at `4 = 1 + 1 + 1 + 1`, so `x_i = 2^{2+6j}`, which is `4 mod 9`,
/// a residue no sum of three cubes attains.
pub fn verify_obstruction_family(j_max: u32, census: Option<&Census>) -> Result<FamilyReport> {
    if j_max > 9 {
        return Err(Error::Contract(format!("j_max = {j_max} exceeds 128-bit range")));
    }
    let evenness_mod_8 = (0..8u64 * 8 * 8 * 8).all(|code| {
        let x = [code % 8, code / 8 % 8, code / 64 % 8, code / 512 % 8];
        x.iter().map(|v| v * v).sum::<u64>() % 8 != 0 || x.iter().all(|v| v % 2 == 0)
    });
    let mut base_solutions = Vec::new();
    for a in 1..=2u64 {
        for b in 1..=2u64 {
            for c in 1..=2u64 {
                for d in 1..=2u64 {
                    if a * a + b * b + c * c + d * d == 4 {
                        base_solutions.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let mut cube_sum_residues_mod_9: Vec<u64> = (0..729u64)
        .map(|code| (code % 9).pow(3) + (code / 9 % 9).pow(3) + (code / 81).pow(3))
        .map(|s| s % 9)
        .collect();
    cube_sum_residues_mod_9.sort_unstable();
    cube_sum_residues_mod_9.dedup();

    let mut checks = Vec::new();
    for j in 0..=j_max {
        let n = family_value(j);
        let mut m = n;
        let mut steps = 0;
        while m.is_multiple_of(8) {
            m /= 4;
            steps += 1;
        }
        let forced_x = 1u128 << steps;
        let forced_x_mod_9 = pow_mod(2, steps as u64, 9);
        let obstructed = evenness_mod_8
            && m == 4
            && base_solutions == vec![[1, 1, 1, 1]]
            && !cube_sum_residues_mod_9.contains(&forced_x_mod_9);
        let census_agrees = census
            .filter(|c| n <= c.limit as u128)
            .map(|c| !c.representable(n as u64) == obstructed);
        checks.push(FamilyCheck { j, n, descent_steps: steps, forced_x, forced_x_mod_9, obstructed, census_agrees });
    }
    let all_obstructed = checks.iter().all(|c| c.obstructed && c.census_agrees != Some(false));
    Ok(FamilyReport { evenness_mod_8, base_solutions, cube_sum_residues_mod_9, checks, all_obstructed })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UpsilonFilter {
    #[serde(rename = "N")]
    pub n_max: u64,
    pub upsilon: f64,
    /// `(ln N)^upsilon`; the logarithm is natural.
    pub threshold: f64,
    /// Least `k` with `2^k >= threshold`.
    pub k: u32,
    pub count: u64,
    /// Count from a direct scan, when `N` is small enough to scan.
    pub scanned_count: Option<u64>,
    /// `N / (ln N)^upsilon + 1`.
    pub bound: f64,
    pub members: Vec<u64>,
    pub members_truncated: bool,
}

/// The `n <= N` with `2^{gamma(n)} >= (ln N)^upsilon`, i.e. `2^k | n`.
///
/// `upsilon = 0` is accepted as the vacuous threshold 1; every positive `upsilon` already
/// excludes the odd numbers once `ln N > 1`.
pub fn filter_a_upsilon(limit: u64, upsilon: f64) -> Result<UpsilonFilter> {
    if !(upsilon >= 0.0 && upsilon.is_finite()) || limit < 2 {
        return Err(Error::Contract(format!("need upsilon >= 0 and N >= 2, got {upsilon}, {limit}")));
    }
    let threshold = (limit as f64).ln().powf(upsilon);
    let mut k = 0u32;
    while k < 64 && ((1u128 << k) as f64) < threshold {
        k += 1;
    }
    let step = 1u64.checked_shl(k).unwrap_or(0);
    let count = limit.checked_div(step).unwrap_or(0);
    let scanned_count = (limit <= 1 << 24).then(|| {
        (1..=limit)
            .filter(|&n| (1u128 << two_adic_valuation(n).unwrap()) as f64 >= threshold)
            .count() as u64
    });
    if scanned_count.is_some_and(|s| s != count) {
        return Err(Error::Verification(format!("A_upsilon count {count} disagrees with scan {scanned_count:?}")));
    }
    let bound = limit as f64 / threshold + 1.0;
    if count as f64 > bound {
        return Err(Error::Verification(format!("A_upsilon count {count} exceeds N/(ln N)^upsilon + 1 = {bound}")));
    }
    let members: Vec<u64> = if step == 0 { Vec::new() } else { (1..=count.min(E_LIST_CAP as u64)).map(|i| i * step).collect() };
    Ok(UpsilonFilter {
        n_max: limit,
        upsilon,
        threshold,
        k,
        count,
        scanned_count,
        bound,
        members_truncated: (members.len() as u64) < count,
        members,
    })
}
