//! Farey-type dissection of `[0, 1)` into major arcs `|alpha - a/q| <= X / (q n)` and the
//! minor-arc remainder.
//!
//! `alpha` is fixed to a 64-bit binary fraction `A / 2^64` before classification, so the
//! continued fraction and all membership tests run in exact integer arithmetic.

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::params::Params;
use crate::w2::w2;

/// Exponent in the narrow cutoff `(log P)^tau`.
pub const TAU: f64 = 18.0 / 31.0;

const TWO_64: f64 = 18446744073709551616.0;

/// `round(alpha * 2^64)` for `alpha in [0, 1)`, saturating just below 1.
pub fn fixed_point(alpha: f64) -> u64 {
    let a = alpha.rem_euclid(1.0);
    let scaled = (a * TWO_64).round();
    if scaled >= TWO_64 {
        u64::MAX
    } else {
        scaled as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcDissection {
    /// Denominator cutoff and width numerator.
    pub x: f64,
    /// Target integer scaling the widths.
    pub n: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ArcClass {
    Major { a: u64, q: u64, beta: f64 },
    Minor,
}

impl ArcClass {
    pub fn is_major(&self) -> bool {
        matches!(self, ArcClass::Major { .. })
    }

    pub fn denominator(&self) -> Option<u64> {
        match *self {
            ArcClass::Major { q, .. } => Some(q),
            ArcClass::Minor => None,
        }
    }
}

impl ArcDissection {
    pub fn new(x: f64, n: f64) -> Self {
        assert!(x >= 1.0 && n >= 1.0, "need X >= 1 and n >= 1");
        ArcDissection { x, n, tau: TAU }
    }

    /// The wide arcs, `X = P^{4/5}`.
    pub fn wide(params: &Params, n: f64) -> Self {
        Self::new((params.p as f64).powf(0.8).max(1.0), n)
    }

    /// The narrow arcs, `X = (log P)^tau`.
    pub fn narrow(params: &Params, n: f64) -> Self {
        Self::new((params.p as f64).ln().powf(TAU).max(1.0), n)
    }

    pub fn half_width(&self, q: u64) -> f64 {
        self.x / (q as f64 * self.n)
    }

    fn q_max(&self) -> u64 {
        self.x.floor() as u64
    }

    /// Candidate convergents `a/q` (reduced, `q <= X`) of `A / 2^64`.
    fn convergents(&self, fixed: u64) -> Vec<(u64, u64)> {
        let q_max = self.q_max();
        let mut out = vec![(0, 1), (1, 1)];
        let (mut num, mut den) = (fixed as u128, 1u128 << 64);
        let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
        while den != 0 {
            let t = num / den;
            let (p2, q2) = (t * p1 + p0, t * q1 + q0);
            if q2 > q_max as u128 {
                break;
            }
            if q2 >= 1 {
                out.push((p2 as u64, q2 as u64));
            }
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            (num, den) = (den, num - t * den);
        }
        out
    }

    /// Nearest numerators for every `q <= X`.
    fn all_denominators(&self, fixed: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for q in 1..=self.q_max() {
            let lo = ((fixed as u128 * q as u128) >> 64) as u64;
            for a in [lo, lo + 1] {
                if a <= q && gcd(a, q) == 1 {
                    out.push((a, q));
                }
            }
        }
        out
    }

    /// Arc containing `alpha`: smallest `q`, then smallest distance; or minor.
    ///
    /// When `2 X^2 < n` every admissible `a/q` satisfies `|alpha - a/q| < 1/(2 q^2)` and is
    /// therefore a convergent; otherwise all denominators up to `X` are scanned.
    pub fn classify(&self, alpha: f64) -> ArcClass {
        let fixed = fixed_point(alpha);
        let candidates = if 2.0 * self.x * self.x < self.n {
            self.convergents(fixed)
        } else {
            self.all_denominators(fixed)
        };
        let mut best: Option<(u64, u64, f64)> = None;
        for (a, q) in candidates {
            if q as f64 > self.x || gcd(a, q) != 1 || a > q {
                continue;
            }
            let signed = fixed as i128 * q as i128 - ((a as i128) << 64);
            let dist = signed.unsigned_abs() as f64 / (q as f64 * TWO_64);
            if dist > self.half_width(q) {
                continue;
            }
            let beta = signed as f64 / (q as f64 * TWO_64);
            let better = match best {
                None => true,
                Some((_, bq, bb)) => q < bq || (q == bq && dist < bb.abs()),
            };
            if better {
                best = Some((a, q, beta));
            }
        }
        match best {
            Some((a, q, beta)) => ArcClass::Major { a, q, beta },
            None => ArcClass::Minor,
        }
    }

    /// `q^eps w2(q) / (1 + n |beta|)` on the arcs, 0 on the minor arcs.
    pub fn upsilon(&self, alpha: f64, eps: f64) -> f64 {
        match self.classify(alpha) {
            ArcClass::Major { q, beta, .. } => {
                (q as f64).powf(eps) * w2(q) / (1.0 + self.n * beta.abs())
            }
            ArcClass::Minor => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = ArcDissection::new(2.0, 1e6);
        assert_eq!(d.classify(0.0), ArcClass::Major { a: 0, q: 1, beta: 0.0 });
        assert_eq!(d.classify(0.5), ArcClass::Major { a: 1, q: 2, beta: 0.0 });
        assert_eq!(d.classify(0.4999), ArcClass::Minor);
        assert_eq!(d.upsilon(0.0, 0.3), 1.0);
        assert!((d.upsilon(0.5, 0.0) - 2f64.powf(-0.5)).abs() < 1e-15);
        assert_eq!(d.upsilon(0.4999, 0.0), 0.0);
    }

    #[test]
    fn near_one_belongs_to_one_over_one() {
        let d = ArcDissection::new(3.0, 1e3);
        match d.classify(1.0 - 1e-4) {
            ArcClass::Major { a, q, beta } => {
                assert_eq!((a, q), (1, 1));
                assert!((beta + 1e-4).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn overlapping_arcs_prefer_small_q() {
        // width X/(qn) = 0.25/q: 0.2 lies in the arcs of 0/1, 1/4 and 1/5
        let d = ArcDissection::new(5.0, 20.0);
        assert!(matches!(d.classify(0.2), ArcClass::Major { a: 0, q: 1, .. }));
        // 0.3 is outside 0/1 but inside 1/3 (distance 1/30 <= 1/12) and 1/4 (1/20 <= 1/16)
        assert!(matches!(d.classify(0.3), ArcClass::Major { a: 1, q: 3, .. }));
    }
}
