//! Comparison of the exact count `R(n)` with the main-term prediction `S(n; Q) J(n)` over a
//! window of consecutive `n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expsum::truncated_singular_series_many;
use crate::genfn::{model_v, ModelSettings};
use crate::params::Params;
use crate::rn::{scaled_square_terms, square_terms, windowed_rn, DEFAULT_RN_BUDGET};
use crate::singular_integral::{JEstimate, JModel, JOptions};
use crate::weights::{build_weight_table, generating_set_size, Role, WeightTable};

/// One row of the comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTermReport {
    pub n: u64,
    #[serde(rename = "R_exact")]
    pub r_exact: u128,
    #[serde(rename = "S_trunc")]
    pub s_trunc: f64,
    #[serde(rename = "J_est")]
    pub j_est: f64,
    #[serde(rename = "J_stderr")]
    pub j_stderr: f64,
    pub predicted: f64,
    /// `R / predicted`, absent when the prediction is not positive.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MainTermConfig {
    pub params: Params,
    pub primes: Vec<u64>,
    /// Inclusive window; `None` centres a window of `width` on the mean of `n`.
    pub window: Option<(u64, u64)>,
    pub width: u64,
    pub q_max: u64,
    /// Number of `J` evaluations across the window (interpolated in between).
    pub j_points: usize,
    pub j_options: JOptions,
}

impl MainTermConfig {
    /// The desk-scale setting `P = 16`, `M = 2.2`, `R = 4`, primes `{2}`.
    pub fn desk_p16() -> Result<Self> {
        let params = crate::params::derive_params(16u128.pow(6), 0.4, None)?.with_m(2.2)?;
        let primes = params.prime_window();
        Ok(MainTermConfig {
            params,
            primes,
            window: None,
            width: 1 << 15,
            q_max: 32,
            j_points: 5,
            j_options: JOptions { budget: 1 << 23, rel_target: 0.005, ..Default::default() },
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MainTermSummary {
    pub p: u64,
    pub window: (u64, u64),
    pub q_max: u64,
    pub j_samples: Vec<JEstimate>,
    /// `sum R / sum predicted` over the window.
    pub ratio: f64,
    /// The ratio rescaled by the continuous-to-integer measure of the first coordinates.
    pub discretization_factor: f64,
    pub corrected_ratio: f64,
    pub total_r: u128,
    pub total_predicted: f64,
    pub rows: Vec<MainTermReport>,
}

fn mean_square_sum(terms: &[(u64, u64)]) -> f64 {
    let mass: f64 = terms.iter().map(|&(_, m)| m as f64).sum();
    terms.iter().map(|&(v, m)| v as f64 * m as f64).sum::<f64>() / mass
}

/// Integer first coordinates in `(lo, hi]` per unit length of `[lo, hi]`.
fn lattice_density(lo: f64, hi: f64) -> f64 {
    crate::arith::integers_in(lo, hi).count() as f64 / (hi - lo)
}

fn interpolate(points: &[JEstimate], n: f64) -> (f64, f64) {
    if points.len() == 1 {
        return (points[0].value, points[0].stderr);
    }
    let i = points.partition_point(|j| j.n <= n).clamp(1, points.len() - 1);
    let (a, b) = (&points[i - 1], &points[i]);
    let t = ((n - a.n) / (b.n - a.n)).clamp(0.0, 1.0);
    (a.value + t * (b.value - a.value), a.stderr.max(b.stderr))
}

pub fn main_term_comparison(cfg: &MainTermConfig) -> Result<MainTermSummary> {
    if cfg.primes.is_empty() {
        return Err(Error::DegeneratePrimeRange { lo: cfg.params.m / 2.0, hi: cfg.params.m });
    }
    let table_a = build_weight_table(&cfg.params, Role::A);
    let table_b = build_weight_table(&cfg.params, Role::B);
    if table_a.is_empty() || table_b.is_empty() {
        let p = &cfg.params;
        return Err(Error::DegenerateParams(format!(
            "empty weight table at P = {}: (H1, H2] = ({:.3}, {:.3}], |A| = {}, |B| = {}",
            p.p,
            p.h1,
            p.h2,
            table_a.len(),
            table_b.len()
        )));
    }
    let (lo, hi) = match cfg.window {
        Some(w) => w,
        None => {
            let centre = 2.0 * mean_square_sum(&square_terms(&table_a))
                + 2.0 * mean_square_sum(&scaled_square_terms(&table_b, &cfg.primes));
            let lo = (centre as u64).saturating_sub(cfg.width / 2);
            (lo, lo + cfg.width.max(1) - 1)
        }
    };
    let r = windowed_rn(lo, hi, &table_a, &table_b, &cfg.primes, DEFAULT_RN_BUDGET)?;
    let ns: Vec<i128> = (lo..=hi).map(|n| n as i128).collect();
    let series = truncated_singular_series_many(&ns, cfg.q_max)?;

    let model = JModel::new(&cfg.params, &cfg.primes, cfg.j_options.sampler)?;
    let k = cfg.j_points.max(1);
    let mut j_samples = Vec::with_capacity(k);
    for i in 0..k {
        let n = if k == 1 { (lo + hi) as f64 / 2.0 } else { lo as f64 + (hi - lo) as f64 * i as f64 / (k - 1) as f64 };
        j_samples.push(model.estimate(n, &cfg.j_options)?);
    }

    let mut rows = Vec::with_capacity(ns.len());
    let (mut total_r, mut total_predicted) = (0u128, 0.0);
    for ((n, r_exact), s) in (lo..=hi).zip(r).zip(&series) {
        let (j_est, j_stderr) = interpolate(&j_samples, n as f64);
        let predicted = s.value * j_est;
        total_r += r_exact;
        total_predicted += predicted;
        rows.push(MainTermReport {
            n,
            r_exact,
            s_trunc: s.value,
            j_est,
            j_stderr,
            predicted,
            ratio: (predicted > 0.0).then(|| r_exact as f64 / predicted),
        });
    }
    let p = &cfg.params;
    let discretization_factor = (lattice_density(p.h1, p.h2) * lattice_density(p.p as f64 / 2.0, p.p as f64)).powi(2);
    let ratio = total_r as f64 / total_predicted;
    Ok(MainTermSummary {
        p: p.p,
        window: (lo, hi),
        q_max: cfg.q_max,
        j_samples,
        ratio,
        discretization_factor,
        corrected_ratio: ratio / discretization_factor,
        total_r,
        total_predicted,
        rows,
    })
}

/// `h(0)` against its model `V(0, 1, 0) = c_eta^2 P^3 / 2`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ZeroFrequencyCheck {
    pub p: u64,
    pub h0: f64,
    pub v0: f64,
    pub ratio: f64,
}

/// `h(0) = |H|` is taken from the counting identity, so no table is built.
pub fn zero_frequency_check(params: &Params) -> Result<ZeroFrequencyCheck> {
    let h0 = generating_set_size(params, Role::A) as f64;
    let v0 = model_v(0.0, 0, 1, &ModelSettings::new(params))?.re;
    Ok(ZeroFrequencyCheck { p: params.p, h0, v0, ratio: h0 / v0 })
}

/// As [`zero_frequency_check`] but summing an explicit table.
pub fn zero_frequency_from_table(params: &Params, table: &WeightTable) -> Result<ZeroFrequencyCheck> {
    let h0 = crate::genfn::eval_h(0.0, table).re;
    let v0 = model_v(0.0, 0, 1, &ModelSettings::new(params))?.re;
    Ok(ZeroFrequencyCheck { p: params.p, h0, v0, ratio: h0 / v0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;

    #[test]
    fn zero_frequency_matches_table_sum() {
        let params = derive_params(20u128.pow(6), 0.5, None).unwrap();
        let table = build_weight_table(&params, Role::A);
        let a = zero_frequency_check(&params).unwrap();
        let b = zero_frequency_from_table(&params, &table).unwrap();
        assert!((a.h0 - b.h0).abs() < 1e-9);
        assert!((a.ratio - 1.0).abs() < 1e-6, "{a:?}");
    }

    #[test]
    fn interpolation_is_linear() {
        let mk = |n: f64, value: f64| JEstimate { n, value, stderr: 1.0, samples: 1, hits: 1, flagged: false };
        let pts = [mk(0.0, 0.0), mk(10.0, 20.0), mk(20.0, 0.0)];
        assert_eq!(interpolate(&pts, 5.0).0, 10.0);
        assert_eq!(interpolate(&pts, 15.0).0, 10.0);
        assert_eq!(interpolate(&pts, 25.0).0, 0.0);
    }
}
