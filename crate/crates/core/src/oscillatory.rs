//! The oscillatory integrals `v(beta)` and `v_p(beta)`.
//!
//! `v(beta) = int_S e(beta T(x)^2) dx` over `S = [P/2, P] x [0, P]^2`, and `v_p` is the same
//! with `T(p x)` over `[H1, H2] x [0, H3]^2`. Two independent routes are provided:
//! iterated adaptive cubature in `x`, and the outer 2D integral of the 1D kernel transforms
//! `v_y(beta) = int B_y(gamma) e(beta gamma) d gamma`.

use std::cell::Cell;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expsum::e;
use crate::params::Params;
use crate::quad::{integrate, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OscMethod {
    Cubature3d,
    Kernel1d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OscKind {
    V,
    Vp { p: u64 },
}

/// `[lo, hi] x [0, side]^2` with the coordinates scaled by `scale` inside `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscRegion {
    pub lo: f64,
    pub hi: f64,
    pub side: f64,
    pub scale: f64,
}

impl OscRegion {
    pub fn of(params: &Params, kind: OscKind) -> Self {
        match kind {
            OscKind::V => {
                let p = params.p as f64;
                OscRegion { lo: p / 2.0, hi: p, side: p, scale: 1.0 }
            }
            OscKind::Vp { p } => OscRegion {
                lo: params.h1,
                hi: params.h2,
                side: params.h3,
                scale: p as f64,
            },
        }
    }

    pub fn volume(&self) -> f64 {
        (self.hi - self.lo) * self.side * self.side
    }

    /// The kernel for the fixed pair `(y1, y2)` of trailing coordinates.
    pub fn kernel(&self, y1: f64, y2: f64) -> Kernel {
        let s3 = self.scale.powi(3);
        let c = s3 * (y1.powi(3) + y2.powi(3));
        Kernel {
            c,
            weight: 1.0 / (6.0 * self.scale),
            lo: (s3 * self.lo.powi(3) + c).powi(2),
            hi: (s3 * self.hi.powi(3) + c).powi(2),
        }
    }
}

/// `B(gamma) = weight * gamma^{-1/2} (gamma^{1/2} - c)^{-2/3}` on `[lo, hi]`: the density of
/// `gamma = (s^3 t^3 + c)^2` as `t` runs over the first coordinate interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    pub c: f64,
    pub weight: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Kernel {
    #[inline]
    pub fn density(&self, gamma: f64) -> f64 {
        if gamma < self.lo || gamma > self.hi {
            return 0.0;
        }
        let r = gamma.sqrt();
        self.weight / (r * (r - self.c).powf(2.0 / 3.0))
    }

    /// Scale `s` recovered from the weight `1 / (6 s)`.
    pub fn scale(&self) -> f64 {
        1.0 / (6.0 * self.weight)
    }

    /// The first-coordinate interval `[t_lo, t_hi]` whose image is `[lo, hi]`.
    pub fn first_range(&self) -> (f64, f64) {
        let s3 = self.scale().powi(3);
        let t = |g: f64| ((g.sqrt() - self.c) / s3).cbrt();
        (t(self.lo), t(self.hi))
    }

    /// Total mass, equal to the length of the first-coordinate interval.
    pub fn mass(&self) -> f64 {
        let (a, b) = self.first_range();
        b - a
    }

    /// `gamma = (s^3 t^3 + c)^2`.
    #[inline]
    pub fn at(&self, t: f64) -> f64 {
        let s = self.scale();
        let r = s * s * s * t * t * t + self.c;
        r * r
    }

    /// `v_y(beta) = int_lo^hi B(gamma) e(beta gamma) d gamma`.
    pub fn transform(&self, beta: f64, abs_tol: f64) -> (Complex64, bool) {
        let cycles = beta.abs() * (self.hi - self.lo);
        let opts = QuadOptions::with_tol(abs_tol, 1e-12).panels((cycles / 2.0).ceil() as usize + 1);
        let r = integrate(|g| e(beta * g) * self.density(g), self.lo, self.hi, opts);
        (r.value, r.converged)
    }
}

/// Result of an oscillatory integral with its accumulated quadrature error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OscValue {
    pub re: f64,
    pub im: f64,
    pub evaluations: usize,
}

impl OscValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn finish(value: Complex64, ok: bool, evals: usize, tol: f64) -> Result<Complex64> {
    if ok {
        Ok(value)
    } else {
        Err(Error::NonConvergence {
            estimate_re: value.re,
            estimate_im: value.im,
            error: tol,
            evaluations: evals,
        })
    }
}

/// `v(beta)` or `v_p(beta)` to absolute tolerance `tol`.
pub fn osc_integral(beta: f64, params: &Params, kind: OscKind, method: OscMethod, tol: f64) -> Result<Complex64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Contract(format!("tolerance {tol} must be positive")));
    }
    let region = OscRegion::of(params, kind);
    match method {
        OscMethod::Cubature3d => cubature3d(beta, &region, tol),
        OscMethod::Kernel1d => kernel1d(beta, &region, tol),
    }
}

/// `v(beta)` (the unscaled kind).
pub fn osc_integral_v(beta: f64, params: &Params, method: OscMethod, tol: f64) -> Result<Complex64> {
    osc_integral(beta, params, OscKind::V, method, tol)
}

fn panels_for(cycles: f64) -> usize {
    ((cycles.abs() / 2.0).ceil() as usize).clamp(1, 4096)
}

/// Initial split for the outer levels. The phase span is a worst case that the integrated
/// inner levels rarely reach, so start coarse and let the adaptive refinement split further.
fn outer_panels_for(cycles: f64) -> usize {
    ((cycles.abs() / 16.0).ceil() as usize).clamp(1, 512)
}

pub fn cubature3d(beta: f64, region: &OscRegion, tol: f64) -> Result<Complex64> {
    let side = region.side;
    if side <= 0.0 || region.hi <= region.lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let s6 = region.scale.powi(6);
    let b = beta * s6;
    let ok = Cell::new(true);
    let evals = Cell::new(0usize);
    let (lo3, hi3) = (region.lo.powi(3), region.hi.powi(3));
    let max_c = 2.0 * side.powi(3);
    // cycles in each coordinate are bounded by the total phase range
    let span = b.abs() * ((hi3 + max_c).powi(2) - lo3.powi(2));
    let inner_tol = tol / (4.0 * side * side);
    let mid_tol = tol / (2.0 * side);

    let inner = |c: f64| -> Complex64 {
        let cycles = b.abs() * ((hi3 + c).powi(2) - (lo3 + c).powi(2));
        let opts = QuadOptions::with_tol(inner_tol, 1e-13).panels(panels_for(cycles));
        let r = integrate(|x1| e(b * (x1.powi(3) + c).powi(2)), region.lo, region.hi, opts);
        ok.set(ok.get() && r.converged);
        evals.set(evals.get() + r.evaluations);
        r.value
    };
    let middle = |x2: f64| -> Complex64 {
        let c2 = x2.powi(3);
        let opts = QuadOptions::with_tol(mid_tol, 1e-13).panels(outer_panels_for(span));
        let r = integrate(|x3| inner(c2 + x3.powi(3)), 0.0, side, opts);
        ok.set(ok.get() && r.converged);
        r.value
    };
    let opts = QuadOptions::with_tol(tol, 1e-13).panels(outer_panels_for(span));
    let r = integrate(middle, 0.0, side, opts);
    finish(r.value, ok.get() && r.converged, evals.get(), tol)
}

pub fn kernel1d(beta: f64, region: &OscRegion, tol: f64) -> Result<Complex64> {
    let side = region.side;
    if side <= 0.0 || region.hi <= region.lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ok = Cell::new(true);
    let inner_tol = tol / (4.0 * side * side);
    let mid_tol = tol / (2.0 * side);
    let s3 = region.scale.powi(3);
    let span = beta.abs()
        * ((s3 * (region.hi.powi(3) + 2.0 * side.powi(3))).powi(2) - (s3 * region.lo.powi(3)).powi(2));
    let vy = |y1: f64, y2: f64| -> Complex64 {
        let (v, converged) = region.kernel(y1, y2).transform(beta, inner_tol);
        ok.set(ok.get() && converged);
        v
    };
    let middle = |y1: f64| -> Complex64 {
        let opts = QuadOptions::with_tol(mid_tol, 1e-13).panels(outer_panels_for(span));
        let r = integrate(|y2| vy(y1, y2), 0.0, side, opts);
        ok.set(ok.get() && r.converged);
        r.value
    };
    let opts = QuadOptions::with_tol(tol, 1e-13).panels(outer_panels_for(span));
    let r = integrate(middle, 0.0, side, opts);
    finish(r.value, ok.get() && r.converged, r.evaluations, tol)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayRow {
    pub beta: f64,
    pub re_v: f64,
    pub im_v: f64,
    /// `|v(beta)| (1 + n |beta|) / scale`, the empirical constant at this `beta`.
    pub envelope: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayReport {
    pub n: f64,
    pub scale: f64,
    pub rows: Vec<DecayRow>,
    /// Largest envelope value over the grid.
    pub k_max: f64,
}

impl DecayReport {
    pub fn write_tsv<W: std::io::Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "beta\tre_v\tim_v\tenvelope")?;
        for r in &self.rows {
            writeln!(out, "{:e}\t{:e}\t{:e}\t{:e}", r.beta, r.re_v, r.im_v, r.envelope)?;
        }
        Ok(())
    }
}

/// `|v(beta)| <= K scale / (1 + n |beta|)` on a grid; `scale` is `P^3` for `v` and `H` for
/// `v_p`.
pub fn decay_envelope(
    params: &Params,
    kind: OscKind,
    n: f64,
    betas: &[f64],
    method: OscMethod,
    tol: f64,
) -> Result<DecayReport> {
    let scale = match kind {
        OscKind::V => (params.p as f64).powi(3),
        OscKind::Vp { .. } => params.h,
    };
    let mut rows = Vec::with_capacity(betas.len());
    let mut k_max: f64 = 0.0;
    for &beta in betas {
        let v = osc_integral(beta, params, kind, method, tol)?;
        let envelope = v.norm() * (1.0 + n * beta.abs()) / scale;
        k_max = k_max.max(envelope);
        rows.push(DecayRow { beta, re_v: v.re, im_v: v.im, envelope });
    }
    Ok(DecayReport { n, scale, rows, k_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;

    fn params(p: u64) -> Params {
        derive_params((p as u128).pow(6), 0.5, Some(2)).unwrap()
    }

    #[test]
    fn volumes_at_zero() {
        for p in [4u64, 8] {
            let params = params(p);
            let vol = (p as f64).powi(3) / 2.0;
            for method in [OscMethod::Cubature3d, OscMethod::Kernel1d] {
                let v = osc_integral_v(0.0, &params, method, 1e-9 * vol).unwrap();
                assert!((v.re - vol).abs() < 1e-6 * vol && v.im.abs() < 1e-9 * vol, "{method:?} {v}");
            }
        }
    }

    #[test]
    fn vp_volume() {
        let params = params(16).with_m(2.2).unwrap();
        let region = OscRegion::of(&params, OscKind::Vp { p: 2 });
        let vol = (params.h2 - params.h1) * params.h3 * params.h3;
        assert!((region.volume() - vol).abs() < 1e-12);
        for method in [OscMethod::Cubature3d, OscMethod::Kernel1d] {
            let v = osc_integral(0.0, &params, OscKind::Vp { p: 2 }, method, 1e-9 * vol).unwrap();
            assert!((v.re - vol).abs() < 1e-6 * vol, "{method:?} {v}");
        }
    }

    #[test]
    fn kernel_is_the_pushforward_density() {
        // int B over [lo, hi] equals the length of the first-coordinate interval
        let params = params(8);
        let region = OscRegion::of(&params, OscKind::V);
        let k = region.kernel(1.5, 3.0);
        assert!(k.c < k.lo.sqrt());
        let (mass, ok) = k.transform(0.0, 1e-12);
        assert!(ok);
        assert!((mass.re - 4.0).abs() < 1e-9, "{mass}");
    }

    #[test]
    fn methods_agree_small_beta() {
        let params = params(8);
        let n = (8f64).powi(6);
        let vol = 256.0;
        for bn in [1e-6 * n, 1.0, -3.0] {
            let beta = bn / n;
            let a = osc_integral_v(beta, &params, OscMethod::Cubature3d, 1e-8 * vol).unwrap();
            let b = osc_integral_v(beta, &params, OscMethod::Kernel1d, 1e-8 * vol).unwrap();
            assert!((a - b).norm() < 1e-5 * vol, "beta n = {bn}: {a} vs {b}");
        }
    }
}
