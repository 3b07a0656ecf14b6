//! The singular integral `J(n) = sum_p int_Y J_{Y,p}(n) dY`.
//!
//! `J_{Y,p}(n) = int V_{Y,p}(beta) e(-n beta) d beta` is the density at `n` of
//! `gamma_1 + ... + gamma_4`, each `gamma_i` the pushforward of Lebesgue measure on a first
//! coordinate through its kernel. The default route samples that density by Monte Carlo;
//! [`fourier_jy`] evaluates the defining `beta` integral for one fixed `(Y, p)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expsum::e;
use crate::oscillatory::{Kernel, OscKind, OscRegion};
use crate::params::Params;
use crate::quad::{integrate, QuadOptions};
use crate::smooth::enumerate_smooth;

/// Samples per RNG stream.
const CHUNK: u64 = 4096;
/// Streams evaluated between convergence checks.
const ROUND: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    /// Every prime pair and every smooth tuple.
    Full,
    /// Primes within 2% of the smallest window prime and `y3, y4` pairs with entries `<= P/2`.
    Restricted,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JOptions {
    pub seed: u64,
    /// Maximum number of samples; at least 1000.
    pub budget: u64,
    /// Stop once `stderr <= rel_target * |estimate|`.
    pub rel_target: f64,
    pub sampler: Sampler,
}

impl Default for JOptions {
    fn default() -> Self {
        JOptions { seed: 0x5eed, budget: 1 << 22, rel_target: 0.01, sampler: Sampler::Full }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JEstimate {
    pub n: f64,
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    /// Samples with a nonzero integrand.
    pub hits: u64,
    /// Budget ran out before the target; `stderr` is doubled.
    pub flagged: bool,
}

/// Kernels for every admissible `(p, y-pair)` and `y-pair`, and the measure normalization.
#[derive(Debug, Clone)]
pub struct JModel {
    /// `w[i][j]`: prime `i`, pair `j`.
    w: Vec<Vec<Kernel>>,
    v: Vec<Kernel>,
    total_weight: f64,
    w_range: (f64, f64),
    v_range: (f64, f64),
}

fn pairs(members: &[u64], cap: f64) -> Vec<(f64, f64)> {
    let kept: Vec<f64> = members.iter().map(|&y| y as f64).filter(|&y| y <= cap).collect();
    kept.iter().flat_map(|&a| kept.iter().map(move |&b| (a, b))).collect()
}

impl JModel {
    pub fn new(params: &Params, primes: &[u64], sampler: Sampler) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::DegeneratePrimeRange { lo: params.m / 2.0, hi: params.m });
        }
        let primes: Vec<u64> = match sampler {
            Sampler::Full => primes.to_vec(),
            Sampler::Restricted => {
                let least = *primes.iter().min().unwrap() as f64;
                primes.iter().copied().filter(|&p| p as f64 <= 1.02 * least).collect()
            }
        };
        let p = params.p as f64;
        let v_cap = match sampler {
            Sampler::Full => p,
            Sampler::Restricted => p / 2.0,
        };
        let w_pairs = pairs(&enumerate_smooth(params.h3.max(0.0).floor() as u64, params.r).members, f64::MAX);
        let v_pairs = pairs(&enumerate_smooth(params.p, params.r).members, v_cap);
        if w_pairs.is_empty() || v_pairs.is_empty() || params.h2 <= params.h1 {
            return Err(Error::DegenerateParams("empty smooth or first-coordinate range".into()));
        }
        let v_region = OscRegion::of(params, OscKind::V);
        let v: Vec<Kernel> = v_pairs.iter().map(|&(a, b)| v_region.kernel(a, b)).collect();
        let w: Vec<Vec<Kernel>> = primes
            .iter()
            .map(|&q| {
                let region = OscRegion::of(params, OscKind::Vp { p: q });
                w_pairs.iter().map(|&(a, b)| region.kernel(a, b)).collect()
            })
            .collect();
        let (np, nw, nv) = (primes.len() as f64, w_pairs.len() as f64, v_pairs.len() as f64);
        let total_weight = np * np * nw * nw * nv * nv * (params.h2 - params.h1).powi(2) * (p / 2.0);
        Ok(JModel {
            w,
            v,
            total_weight,
            w_range: (params.h1, params.h2),
            v_range: (p / 2.0, p),
        })
    }

    /// One integrand draw: three first coordinates sampled, the fourth integrated out.
    fn draw(&self, n: f64, rng: &mut ChaCha8Rng) -> f64 {
        let np = self.w.len();
        let k1 = &self.w[rng.random_range(0..np)][rng.random_range(0..self.w[0].len())];
        let k2 = &self.w[rng.random_range(0..np)][rng.random_range(0..self.w[0].len())];
        let k3 = &self.v[rng.random_range(0..self.v.len())];
        let k4 = &self.v[rng.random_range(0..self.v.len())];
        let t1 = rng.random_range(self.w_range.0..self.w_range.1);
        let t2 = rng.random_range(self.w_range.0..self.w_range.1);
        let t3 = rng.random_range(self.v_range.0..self.v_range.1);
        k4.density(n - k1.at(t1) - k2.at(t2) - k3.at(t3))
    }

    fn chunk(&self, n: f64, seed: u64, stream: u64) -> (f64, f64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let (mut s1, mut s2, mut hits) = (0.0, 0.0, 0);
        for _ in 0..CHUNK {
            let f = self.draw(n, &mut rng);
            if f != 0.0 {
                hits += 1;
            }
            s1 += f;
            s2 += f * f;
        }
        (s1, s2, hits)
    }

    /// Monte Carlo estimate of `J(n)`; reproducible for a given seed at any thread count.
    pub fn estimate(&self, n: f64, opts: &JOptions) -> Result<JEstimate> {
        if opts.budget < 1000 {
            return Err(Error::Contract(format!("J(n) budget {} below 1000 samples", opts.budget)));
        }
        let max_chunks = opts.budget.div_ceil(CHUNK);
        let (mut s1, mut s2, mut hits, mut done) = (0.0, 0.0, 0u64, 0u64);
        let mut converged = false;
        while done < max_chunks {
            let upto = (done + ROUND).min(max_chunks);
            let parts: Vec<(f64, f64, u64)> =
                (done..upto).into_par_iter().map(|i| self.chunk(n, opts.seed, i)).collect();
            for (a, b, h) in parts {
                s1 += a;
                s2 += b;
                hits += h;
            }
            done = upto;
            let (value, stderr) = self.moments(s1, s2, done * CHUNK);
            if stderr <= opts.rel_target * value.abs() || hits == 0 && done >= 4 {
                converged = true;
                break;
            }
        }
        let samples = done * CHUNK;
        let (value, mut stderr) = self.moments(s1, s2, samples);
        if !converged {
            stderr *= 2.0;
        }
        Ok(JEstimate { n, value, stderr, samples, hits, flagged: !converged })
    }

    fn moments(&self, s1: f64, s2: f64, k: u64) -> (f64, f64) {
        let k = k as f64;
        let mean = s1 / k;
        let var = (s2 / k - mean * mean).max(0.0);
        (self.total_weight * mean, self.total_weight * (var / k).sqrt())
    }

    /// Kernels of one fixed configuration, for the Fourier cross-check.
    pub fn configuration(&self, prime_idx: [usize; 2], w_idx: [usize; 2], v_idx: [usize; 2]) -> [Kernel; 4] {
        [
            self.w[prime_idx[0]][w_idx[0]],
            self.w[prime_idx[1]][w_idx[1]],
            self.v[v_idx[0]],
            self.v[v_idx[1]],
        ]
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }
}

/// `J(n)` over the primes given (normally the window `[M/2, M]`).
pub fn singular_integral_j(n: f64, params: &Params, primes: &[u64], opts: &JOptions) -> Result<JEstimate> {
    JModel::new(params, primes, opts.sampler)?.estimate(n, opts)
}

/// `J_{Y,p}(n)` for one configuration by Monte Carlo over the first three coordinates.
pub fn density_jy(n: f64, kernels: &[Kernel; 4], samples: u64, seed: u64) -> JEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ranges: Vec<(f64, f64)> = kernels.iter().map(Kernel::first_range).collect();
    let weight: f64 = ranges[..3].iter().map(|(a, b)| b - a).product();
    let (mut s1, mut s2, mut hits) = (0.0, 0.0, 0);
    for _ in 0..samples {
        let mut rest = n;
        for (k, &(a, b)) in kernels[..3].iter().zip(&ranges) {
            rest -= k.at(rng.random_range(a..b));
        }
        let f = kernels[3].density(rest);
        if f != 0.0 {
            hits += 1;
        }
        s1 += f;
        s2 += f * f;
    }
    let k = samples as f64;
    let mean = s1 / k;
    let var = (s2 / k - mean * mean).max(0.0);
    JEstimate {
        n,
        value: weight * mean,
        stderr: weight * (var / k).sqrt(),
        samples,
        hits,
        flagged: false,
    }
}

/// `J_{Y,p}(n) = 2 Re int_0^{beta_max} prod v_i(beta) e(-n beta) d beta`.
///
/// `beta_max = cutoff / min width`; each `v_i` decays like `1/beta` past its width, so the
/// product tail beyond the cutoff is `O(cutoff^{-3})` relative.
pub fn fourier_jy(n: f64, kernels: &[Kernel; 4], cutoff: f64, tol: f64) -> Result<f64> {
    let widths: Vec<f64> = kernels.iter().map(|k| k.hi - k.lo).collect();
    let w_min = widths.iter().cloned().fold(f64::INFINITY, f64::min);
    let beta_max = cutoff / w_min;
    // shift each kernel to its midpoint so the phase left over is n - sum of midpoints
    let mids: Vec<f64> = kernels.iter().map(|k| 0.5 * (k.lo + k.hi)).collect();
    let offset = n - mids.iter().sum::<f64>();
    let spread = offset.abs() + widths.iter().sum::<f64>() / 2.0;
    let inner_tol = tol * 1e-3;
    let mut ok = true;
    let integrand = |beta: f64| -> Complex64 {
        let mut prod = e(-offset * beta);
        for (k, &m) in kernels.iter().zip(&mids) {
            let (v, converged) = k.transform(beta, inner_tol);
            ok &= converged;
            prod *= v * e(-m * beta);
        }
        prod
    };
    let panels = ((beta_max * spread).ceil() as usize).clamp(1, 1 << 16);
    let r = integrate(integrand, 0.0, beta_max, QuadOptions::with_tol(tol, 1e-10).panels(panels).evals(50_000_000));
    if !(r.converged && ok) {
        return Err(Error::NonConvergence {
            estimate_re: 2.0 * r.value.re,
            estimate_im: 0.0,
            error: 2.0 * r.error,
            evaluations: r.evaluations,
        });
    }
    Ok(2.0 * r.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;

    fn p8() -> Params {
        derive_params(8u128.pow(6), 0.5, Some(2)).unwrap()
    }

    #[test]
    fn kernel_sampling_helpers() {
        let params = p8();
        let k = OscRegion::of(&params, OscKind::V).kernel(1.0, 2.0);
        let (a, b) = k.first_range();
        assert!((a - 4.0).abs() < 1e-9 && (b - 8.0).abs() < 1e-9);
        assert!((k.at(a) - k.lo).abs() < 1e-6 * k.lo);
        let kp = OscRegion::of(&params, OscKind::Vp { p: 2 }).kernel(1.0, 1.0);
        assert!((kp.scale() - 2.0).abs() < 1e-12);
        assert!((kp.mass() - (params.h2 - params.h1)).abs() < 1e-9);
    }

    #[test]
    fn small_budget_is_rejected() {
        let opts = JOptions { budget: 999, ..Default::default() };
        assert!(matches!(singular_integral_j(1e5, &p8(), &[2], &opts), Err(Error::Contract(_))));
    }

    #[test]
    fn vanishes_beyond_support() {
        let params = p8();
        let n = 36.0 * params.p6() + 1.0;
        let j = singular_integral_j(n, &params, &[2], &JOptions { budget: 20_000, ..Default::default() }).unwrap();
        assert_eq!(j.value, 0.0);
        assert_eq!(j.hits, 0);
    }

    #[test]
    fn deterministic_and_nonnegative() {
        let params = p8();
        let opts = JOptions { budget: 50_000, rel_target: 0.0, ..Default::default() };
        let n = 4.0 * params.p6();
        let a = singular_integral_j(n, &params, &[2], &opts).unwrap();
        let b = singular_integral_j(n, &params, &[2], &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.value > 0.0 && a.flagged);
    }

    #[test]
    fn fourier_matches_density_for_fixed_configuration() {
        let params = derive_params(4u128.pow(6), 0.5, Some(2)).unwrap().with_m(1.0).unwrap();
        let model = JModel::new(&params, &[2], Sampler::Full).unwrap();
        let ks = model.configuration([0, 0], [0, 0], [0, 0]);
        let centre: f64 = ks.iter().map(|k| 0.5 * (k.lo + k.hi)).sum();
        let mc = density_jy(centre, &ks, 400_000, 7);
        let ft = fourier_jy(centre, &ks, 30.0, 1e-3 * mc.value).unwrap();
        assert!((ft - mc.value).abs() < 4.0 * mc.stderr + 1e-3 * mc.value, "{ft} vs {mc:?}");
    }
}
