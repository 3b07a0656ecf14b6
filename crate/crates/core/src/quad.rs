//! Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

use std::collections::BinaryHeap;
use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cap on integrand evaluations.
    pub max_evals: usize,
    /// Initial uniform split, useful for oscillatory integrands.
    pub initial_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_evals: 2_000_000,
            initial_panels: 1,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    pub fn panels(mut self, n: usize) -> Self {
        self.initial_panels = n.max(1);
        self
    }

    pub fn evals(mut self, n: usize) -> Self {
        self.max_evals = n;
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    /// The value, or [`Error::NonConvergence`] carrying the partial estimate.
    pub fn into_result(self) -> Result<Complex64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence {
                estimate_re: self.value.re,
                estimate_im: self.value.im,
                error: self.error,
                evaluations: self.evaluations,
            })
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// `int_a^b f`, adaptive; never fails, reports convergence in the result.
pub fn integrate<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> QuadResult {
    if a == b {
        return QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    let panels = opts.initial_panels.max(1);
    let step = (b - a) / panels as f64;
    for i in 0..panels {
        let lo = a + step * i as f64;
        let hi = if i + 1 == panels { b } else { lo + step };
        let (value, error) = gk15(&mut f, lo, hi);
        evals += 15;
        heap.push(Panel { a: lo, b: hi, value, error });
    }
    let (mut total, mut err) = sum_panels(&heap);
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        let done = err <= target;
        if done || evals + 30 > opts.max_evals {
            let (value, error) = sum_panels(&heap);
            let converged = done || error <= opts.abs_tol.max(opts.rel_tol * value.norm());
            return QuadResult { value, error, evaluations: evals, converged };
        }
        let worst = heap.pop().unwrap();
        total -= worst.value;
        err -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine precision
            total += worst.value;
            heap.push(Panel { error: 0.0, ..worst });
            continue;
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(&mut f, lo, hi);
            total += value;
            err += error;
            heap.push(Panel { a: lo, b: hi, value, error });
        }
        evals += 30;
        if heap.len() % 256 == 0 {
            (total, err) = sum_panels(&heap);
        }
    }
}

fn sum_panels(heap: &BinaryHeap<Panel>) -> (Complex64, f64) {
    // order-independent within rounding; sort for determinism
    let mut parts: Vec<&Panel> = heap.iter().collect();
    parts.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for p in parts {
        total += p.value;
        err += p.error;
    }
    (total, err)
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> QuadResult {
    integrate(|x| Complex64::new(f(x), 0.0), a, b, opts)
}
