//! The generating sums `h(alpha)`, `W(alpha)`, their major-arc models and the difference
//! `F(alpha) = h^2 W^2 - h*^2 W*^2`.
//!
//! Phases are reduced exactly: `alpha` is fixed to `A / 2^64` and `alpha x^2 mod 1` is
//! `A * x^2 mod 2^64`, so large `x` lose no precision.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arcs::{fixed_point, ArcClass, ArcDissection};
use crate::error::{Error, Result};
use crate::expsum::{CompleteSums, KahanSum};
use crate::oscillatory::{osc_integral, OscKind, OscMethod};
use crate::params::Params;
use crate::weights::WeightTable;

const TWO_64: f64 = 18446744073709551616.0;

/// `e(A m / 2^64)` with exact reduction of the phase.
#[inline]
pub fn phase(fixed: u64, m: u64) -> Complex64 {
    let t = fixed.wrapping_mul(m) as f64 / TWO_64;
    crate::expsum::e(t)
}

/// `h(alpha) = sum_x a_x e(alpha x^2)`.
pub fn eval_h(alpha: f64, table: &WeightTable) -> Complex64 {
    eval_h_fixed(fixed_point(alpha), table)
}

pub fn eval_h_fixed(fixed: u64, table: &WeightTable) -> Complex64 {
    let mut acc = KahanSum::default();
    for (x, a) in table.iter() {
        acc.add(phase(fixed, x.wrapping_mul(x)) * a as f64);
    }
    acc.value()
}

/// `W(alpha) = sum_p sum_h b_h e(alpha p^6 h^2)`; an empty prime list is an error.
pub fn eval_w(alpha: f64, table: &WeightTable, primes: &[u64]) -> Result<Complex64> {
    if primes.is_empty() {
        return Err(Error::DegeneratePrimeRange { lo: f64::NAN, hi: f64::NAN });
    }
    Ok(eval_w_fixed(fixed_point(alpha), table, primes))
}

/// As [`eval_w`] but an empty prime list gives `W = 0`.
pub fn eval_w_allow_empty(alpha: f64, table: &WeightTable, primes: &[u64]) -> Complex64 {
    eval_w_fixed(fixed_point(alpha), table, primes)
}

pub fn eval_w_fixed(fixed: u64, table: &WeightTable, primes: &[u64]) -> Complex64 {
    let mut acc = KahanSum::default();
    for &p in primes {
        let p6 = p.wrapping_pow(6);
        for (h, b) in table.iter() {
            acc.add(phase(fixed, p6.wrapping_mul(h.wrapping_mul(h))) * b as f64);
        }
    }
    acc.value()
}

/// Settings shared by the major-arc models.
#[derive(Debug, Clone)]
pub struct ModelSettings {
    pub params: Params,
    pub c_eta: f64,
    pub method: OscMethod,
    /// Absolute quadrature tolerance relative to the region volume.
    pub rel_tol: f64,
}

impl ModelSettings {
    pub fn new(params: &Params) -> Self {
        ModelSettings {
            params: params.clone(),
            c_eta: params.c_eta,
            method: OscMethod::Kernel1d,
            rel_tol: 1e-8,
        }
    }
}

fn check_pair(a: i64, q: u64) -> Result<()> {
    if q == 0 || crate::arith::gcd(a.rem_euclid(q as i64) as u64, q) != 1 {
        return Err(Error::Contract(format!("model needs (a, q) = 1, got a = {a}, q = {q}")));
    }
    Ok(())
}

/// `V(alpha, q, a) = q^{-3} S(q, a) c_eta^2 v(alpha - a/q)`.
pub fn model_v(alpha: f64, a: i64, q: u64, s: &ModelSettings) -> Result<Complex64> {
    check_pair(a, q)?;
    let sum = CompleteSums::new(q)?.sum(a);
    let beta = alpha - a as f64 / q as f64;
    let vol = crate::oscillatory::OscRegion::of(&s.params, OscKind::V).volume();
    let v = osc_integral(beta, &s.params, OscKind::V, s.method, s.rel_tol * vol)?;
    Ok(sum / (q as f64).powi(3) * s.c_eta * s.c_eta * v)
}

/// `W(alpha, q, a) = sum_p q^{-3} S(q, a) c_eta^2 v_p(alpha - a/q)`.
pub fn model_w(alpha: f64, a: i64, q: u64, primes: &[u64], s: &ModelSettings) -> Result<Complex64> {
    check_pair(a, q)?;
    if primes.is_empty() {
        return Err(Error::DegeneratePrimeRange { lo: s.params.m / 2.0, hi: s.params.m });
    }
    let sum = CompleteSums::new(q)?.sum(a);
    let beta = alpha - a as f64 / q as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for &p in primes {
        let kind = OscKind::Vp { p };
        let vol = crate::oscillatory::OscRegion::of(&s.params, kind).volume();
        total += osc_integral(beta, &s.params, kind, s.method, s.rel_tol * vol.max(1e-300))?;
    }
    Ok(sum / (q as f64).powi(3) * s.c_eta * s.c_eta * total)
}

/// True and model values at one `alpha`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FSample {
    pub alpha: f64,
    pub class: ArcClass,
    pub h: (f64, f64),
    pub w: (f64, f64),
    pub h_model: (f64, f64),
    pub w_model: (f64, f64),
    pub f: (f64, f64),
}

fn pair(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

/// `F(alpha) = h^2 W^2 - h*^2 W*^2`, with `h* = W* = 0` on the minor arcs.
pub fn f_diagnostic(
    alpha: f64,
    dissection: &ArcDissection,
    table_a: &WeightTable,
    table_b: &WeightTable,
    primes: &[u64],
    s: &ModelSettings,
) -> Result<FSample> {
    let h = eval_h(alpha, table_a);
    let w = eval_w(alpha, table_b, primes)?;
    let class = dissection.classify(alpha);
    let (hm, wm) = match class {
        ArcClass::Major { a, q, .. } => {
            // arcs are centred at a/q with a possibly equal to q; the models see alpha - a/q
            (model_v(alpha, a as i64, q, s)?, model_w(alpha, a as i64, q, primes, s)?)
        }
        ArcClass::Minor => (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
    };
    let f = h * h * w * w - hm * hm * wm * wm;
    Ok(FSample {
        alpha,
        class,
        h: pair(h),
        w: pair(w),
        h_model: pair(hm),
        w_model: pair(wm),
        f: pair(f),
    })
}

/// One row of an `alpha` sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub h: (f64, f64),
    pub w: (f64, f64),
    pub class: ArcClass,
}

pub fn alpha_sweep(
    alphas: &[f64],
    dissection: &ArcDissection,
    table_a: &WeightTable,
    table_b: &WeightTable,
    primes: &[u64],
) -> Vec<SweepRow> {
    alphas
        .iter()
        .map(|&alpha| SweepRow {
            alpha,
            h: pair(eval_h(alpha, table_a)),
            w: pair(eval_w_allow_empty(alpha, table_b, primes)),
            class: dissection.classify(alpha),
        })
        .collect()
}

pub fn write_sweep_tsv<W: std::io::Write>(rows: &[SweepRow], out: &mut W) -> Result<()> {
    writeln!(out, "alpha\tre_h\tim_h\tre_W\tim_W\tclass\tq")?;
    for r in rows {
        let (class, q) = match r.class {
            ArcClass::Major { q, .. } => ("major", q.to_string()),
            ArcClass::Minor => ("minor", "-".to_string()),
        };
        writeln!(
            out,
            "{}\t{:e}\t{:e}\t{:e}\t{:e}\t{class}\t{q}",
            r.alpha, r.h.0, r.h.1, r.w.0, r.w.1
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;
    use crate::weights::{build_weight_table, Role};

    fn toy() -> WeightTable {
        WeightTable::from_pairs(Role::A, [(10, 1), (17, 2), (24, 1)])
    }

    #[test]
    fn h_examples() {
        let t = toy();
        assert!((eval_h(0.0, &t) - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert!((eval_h(0.25, &t) - Complex64::new(2.0, 2.0)).norm() < 1e-12);
        // alpha = 1/2: parity
        let expected: f64 = t.iter().map(|(x, a)| if x % 2 == 0 { a as f64 } else { -(a as f64) }).sum();
        assert!((eval_h(0.5, &t).re - expected).abs() < 1e-12);
    }

    #[test]
    fn h_conjugate_symmetry() {
        let params = derive_params(10u128.pow(6), 0.5, Some(3)).unwrap();
        let t = build_weight_table(&params, Role::A);
        for alpha in [0.1, 0.123456, 0.377] {
            let a = eval_h(alpha, &t);
            let b = eval_h(1.0 - alpha, &t);
            assert!((a - b.conj()).norm() < 1e-9 * t.mass() as f64);
        }
    }

    #[test]
    fn w_examples() {
        let t = WeightTable::from_pairs(Role::B, [(7, 1), (9, 3)]);
        assert!((eval_w(0.0, &t, &[2, 3]).unwrap().re - 8.0).abs() < 1e-12);
        let one = WeightTable::from_pairs(Role::B, [(5, 1)]);
        let alpha = 0.3141;
        let direct = crate::expsum::e(alpha * 64.0 * 25.0);
        assert!((eval_w(alpha, &one, &[2]).unwrap() - direct).norm() < 1e-9);
        assert!((eval_w(1.0, &t, &[2]).unwrap() - eval_w(0.0, &t, &[2]).unwrap()).norm() < 1e-12);
        assert!(matches!(eval_w(0.1, &t, &[]), Err(Error::DegeneratePrimeRange { .. })));
        assert_eq!(eval_w_allow_empty(0.1, &t, &[]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn model_examples() {
        let params = derive_params(4u128.pow(6), 0.5, Some(2)).unwrap();
        let s = ModelSettings::new(&params);
        let v = model_v(0.0, 0, 1, &s).unwrap();
        let expected = params.c_eta.powi(2) * 32.0;
        assert!((v.re - expected).abs() < 1e-6 * expected);
        assert!(model_v(0.5, 1, 2, &s).unwrap().norm() < 1e-9);
        assert!(model_v(0.0, 2, 4, &s).is_err());
    }

    #[test]
    fn f_on_minor_arcs_is_h2w2() {
        let params = derive_params(4u128.pow(6), 0.5, Some(2)).unwrap();
        let s = ModelSettings::new(&params);
        let a = build_weight_table(&params, Role::A);
        let b = WeightTable::from_pairs(Role::B, [(10, 1)]);
        let d = ArcDissection::new(2.0, 1e6);
        let f = f_diagnostic(0.4999, &d, &a, &b, &[2], &s).unwrap();
        assert_eq!(f.class, ArcClass::Minor);
        let h = Complex64::new(f.h.0, f.h.1);
        let w = Complex64::new(f.w.0, f.w.1);
        assert!((Complex64::new(f.f.0, f.f.1) - h * h * w * w).norm() < 1e-9);
    }
}
